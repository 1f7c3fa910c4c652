"""Named channel constructors and structural classifiers.

The constructors cover the channels used throughout the experiments:
depolarizing and Pauli channels, the completely depolarizing channel in any
dimension, the 50% two-qubit erasure channel, the 4-dimensional Horodecki
channel, the entanglement-breaking {X, Y} mixture, flagged convex
combinations, and seeded random conjugate channel pairs.  The classifiers
test the positive-partial-transpose criterion and run a heuristic
degradability witness.
"""

from dataclasses import dataclass

import numpy as np

from .channels import KrausChannel, choi, complementary, validate_cptp
from .numerics import (
    DEFAULT_TOL,
    I2,
    Tolerances,
    X,
    Y,
    Z,
    haar_unitary,
    ket,
    rng_from_seed,
)

__all__ = [
    "ChannelClassReport",
    "depolarizing",
    "completely_depolarizing",
    "pauli_channel",
    "erasure_50_two_qubit",
    "horodecki_4d",
    "eb_xy",
    "flagged_mix",
    "random_conjugate_pair",
    "is_ppt",
    "degradability_witness",
    "classify_channel",
    "parse_channel_spec",
]


def depolarizing(q: float, tol: Tolerances = DEFAULT_TOL) -> KrausChannel:
    """Qubit depolarizing channel (1-q) rho + (q/3)(X rho X + Y rho Y + Z rho Z)."""
    if not 0.0 <= q <= 1.0:
        raise ValueError(f"depolarizing parameter must be in [0, 1], got {q}")
    ops = [
        np.sqrt(1.0 - q) * I2,
        np.sqrt(q / 3.0) * X,
        np.sqrt(q / 3.0) * Y,
        np.sqrt(q / 3.0) * Z,
    ]
    return validate_cptp(ops, 2, 2, label=f"dep(q={q:g})", tol=tol)


def _clock_shift(d: int):
    """Weyl-Heisenberg unitaries U_{ab} = shift^a clock^b, a, b in 0..d-1."""
    omega = np.exp(2j * np.pi / d)
    clock = np.diag(omega ** np.arange(d))
    shift = np.zeros((d, d), dtype=np.complex128)
    for i in range(d):
        shift[(i + 1) % d, i] = 1.0
    return [
        np.linalg.matrix_power(shift, a) @ np.linalg.matrix_power(clock, b)
        for a in range(d)
        for b in range(d)
    ]


def completely_depolarizing(d: int, tol: Tolerances = DEFAULT_TOL) -> KrausChannel:
    """Constant channel rho -> I/d as the uniform mixture of d^2 orthogonal unitaries.

    Kraus operators are U_i / d over the Weyl-Heisenberg (clock-and-shift)
    family, which satisfies Tr(U_i^dag U_j) = d delta_ij exactly.
    """
    if d < 2:
        raise ValueError(f"dimension must be at least 2, got {d}")
    ops = [u / d for u in _clock_shift(d)]
    return validate_cptp(ops, d, d, label=f"cd(d={d})", tol=tol)


def pauli_channel(p_i: float, p_x: float, p_y: float, p_z: float,
                  tol: Tolerances = DEFAULT_TOL) -> KrausChannel:
    """Qubit Pauli channel with Kraus {sqrt(pI) I, sqrt(pX) X, sqrt(pY) Y, sqrt(pZ) Z}."""
    probs = np.array([p_i, p_x, p_y, p_z], dtype=float)
    if probs.min() < 0 or abs(probs.sum() - 1.0) > 1e-12:
        raise ValueError(f"Pauli probabilities must lie on the simplex, got {probs}")
    ops = [np.sqrt(p) * sigma for p, sigma in zip(probs, (I2, X, Y, Z))]
    return validate_cptp(ops, 2, 2,
                         label=f"pauli({p_i:g},{p_x:g},{p_y:g},{p_z:g})", tol=tol)


def erasure_50_two_qubit(tol: Tolerances = DEFAULT_TOL) -> KrausChannel:
    """50% two-qubit erasure channel, rho -> (1/2) rho (+) (1/2) |e><e|.

    Four input levels map into the first four of five output levels; the
    fifth level is the erasure flag.  Kraus operators: the scaled embedding
    V/sqrt(2) plus the four flag operators |e><i|/sqrt(2).
    """
    v = np.zeros((5, 4), dtype=np.complex128)
    v[:4, :4] = np.eye(4)
    ops = [v / np.sqrt(2.0)]
    for i in range(4):
        f = np.zeros((5, 4), dtype=np.complex128)
        f[4, i] = 1.0
        ops.append(f / np.sqrt(2.0))
    return validate_cptp(ops, 4, 5, label="erasure50", tol=tol)


def horodecki_4d(q: float, tol: Tolerances = DEFAULT_TOL) -> KrausChannel:
    """4-dimensional Horodecki channel with six Kraus operators.

    The family is sqrt(q/2) I (x) |0><0|, sqrt(q/2) Z (x) |1><1|,
    sqrt(q/4) Z (x) Y, sqrt(q/4) I (x) X, sqrt(1-q) X (x) M0,
    sqrt(1-q) Y (x) M1 with M0 = diag(sqrt(2+sqrt2), sqrt(2-sqrt2))/2 and
    M1 the swapped diagonal.  Completeness follows from M0^2 + M1^2 = I.
    Its Choi state is positive under partial transposition for the
    parameter range used in the superactivation experiment; that check is
    recorded per run, not assumed.
    """
    if not 0.0 < q < 1.0:
        raise ValueError(f"Horodecki parameter must be in (0, 1), got {q}")
    m0 = np.diag([np.sqrt(2.0 + np.sqrt(2.0)) / 2.0,
                  np.sqrt(2.0 - np.sqrt(2.0)) / 2.0]).astype(np.complex128)
    m1 = np.diag([np.sqrt(2.0 - np.sqrt(2.0)) / 2.0,
                  np.sqrt(2.0 + np.sqrt(2.0)) / 2.0]).astype(np.complex128)
    p0 = np.outer(ket(2, 0), ket(2, 0).conj())
    p1 = np.outer(ket(2, 1), ket(2, 1).conj())
    ops = [
        np.sqrt(q / 2.0) * np.kron(I2, p0),
        np.sqrt(q / 2.0) * np.kron(Z, p1),
        np.sqrt(q / 4.0) * np.kron(Z, Y),
        np.sqrt(q / 4.0) * np.kron(I2, X),
        np.sqrt(1.0 - q) * np.kron(X, m0),
        np.sqrt(1.0 - q) * np.kron(Y, m1),
    ]
    return validate_cptp(ops, 4, 4, label=f"horodecki(q={q:g})", tol=tol)


def eb_xy(tol: Tolerances = DEFAULT_TOL) -> KrausChannel:
    """Entanglement-breaking qubit channel (X rho X + Y rho Y) / 2."""
    ops = [X / np.sqrt(2.0), Y / np.sqrt(2.0)]
    return validate_cptp(ops, 2, 2, label="ebxy", tol=tol)


def flagged_mix(p: float, a: KrausChannel, b: KrausChannel,
                tol: Tolerances = DEFAULT_TOL) -> KrausChannel:
    """Flagged convex combination p a(rho) (x) |0><0| + (1-p) b(rho) (x) |1><1|.

    When the factor output dimensions differ, both outputs are embedded in
    their direct sum before the flag qubit is attached, so the Kraus family
    is {sqrt(p) A_i (+) 0 (x) |0>, sqrt(1-p) 0 (+) B_j (x) |1>}.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"mixing parameter must be in [0, 1], got {p}")
    if a.dim_in != b.dim_in:
        raise ValueError(
            f"flagged factors need equal input dimensions, "
            f"got {a.dim_in} and {b.dim_in}"
        )
    if a.dim_out == b.dim_out:
        d_sum = a.dim_out
        embed_a = np.eye(d_sum, dtype=np.complex128)
        embed_b = embed_a
    else:
        d_sum = a.dim_out + b.dim_out
        embed_a = np.zeros((d_sum, a.dim_out), dtype=np.complex128)
        embed_a[: a.dim_out] = np.eye(a.dim_out)
        embed_b = np.zeros((d_sum, b.dim_out), dtype=np.complex128)
        embed_b[a.dim_out:] = np.eye(b.dim_out)
    flag0 = ket(2, 0).reshape(2, 1)
    flag1 = ket(2, 1).reshape(2, 1)
    ops = []
    if p > 0.0:
        ops += [np.sqrt(p) * np.kron(embed_a @ ai, flag0) for ai in a.kraus]
    if p < 1.0:
        ops += [np.sqrt(1.0 - p) * np.kron(embed_b @ bj, flag1) for bj in b.kraus]
    label = f"flagged(p={p:g};{a.label};{b.label})"
    return validate_cptp(ops, a.dim_in, 2 * d_sum, label=label, tol=tol)


def random_conjugate_pair(d: int, k: int, seed: int,
                          tol: Tolerances = DEFAULT_TOL):
    """Seeded pair of random-unitary channels that are complex conjugates.

    N(rho) = sum_i p_i U_i^dag rho U_i with Haar unitaries and a uniform
    simplex point; the partner channel uses the conjugated unitaries.  Same
    seed, same channels, bit for bit.
    """
    if d < 2 or k < 1:
        raise ValueError(f"need dimension >= 2 and at least one unitary, got ({d}, {k})")
    rng = rng_from_seed(int(seed))
    probs = rng.dirichlet(np.ones(k))
    us = [haar_unitary(rng, d) for _ in range(k)]
    ops = [np.sqrt(p) * u.conj().T for p, u in zip(probs, us)]
    ops_bar = [np.sqrt(p) * u.T for p, u in zip(probs, us)]
    n = validate_cptp(ops, d, d, label=f"conj(d={d},k={k},seed={seed})", tol=tol)
    nbar = validate_cptp(ops_bar, d, d,
                         label=f"conjbar(d={d},k={k},seed={seed})", tol=tol)
    return n, nbar


# -- classifiers --------------------------------------------------------------

def is_ppt(ch: KrausChannel, tol: Tolerances = DEFAULT_TOL):
    """Partial-transpose test of the Choi state on the reference factor.

    Returns (verdict, min_eigenvalue); the verdict is True when the minimum
    eigenvalue of the partially transposed Choi state is >= -psd_tol.
    """
    c = choi(ch)
    dout, din = ch.dim_out, ch.dim_in
    pt = (
        c.state.reshape(dout, din, dout, din)
        .transpose(0, 3, 2, 1)
        .reshape(dout * din, dout * din)
    )
    mineig = float(np.linalg.eigvalsh(0.5 * (pt + pt.conj().T))[0])
    return mineig >= -tol.psd_tol, mineig


@dataclass(frozen=True)
class ChannelClassReport:
    """Structural classification: PPT verdict, EB hint, degradability witness."""

    ppt: bool
    ppt_min_eig: float
    entanglement_breaking_hint: bool
    degradability: str
    degradability_residual: float


def _superop(ch: KrausChannel) -> np.ndarray:
    """Column-stacking superoperator: vec(N(rho)) = S vec(rho)."""
    s = np.zeros((ch.dim_out ** 2, ch.dim_in ** 2), dtype=np.complex128)
    for a in ch.kraus:
        s += np.kron(a.conj(), a)
    return s


def _superop_to_choi(s: np.ndarray, dim_in: int, dim_out: int) -> np.ndarray:
    """Reshuffle a column-stacking superoperator into the (normalized) Choi state."""
    s4 = s.reshape(dim_out, dim_out, dim_in, dim_in)
    c = s4.transpose(1, 3, 0, 2).reshape(dim_out * dim_in, dim_out * dim_in)
    return c / dim_in


def _choi_to_superop(c: np.ndarray, dim_in: int, dim_out: int) -> np.ndarray:
    """Inverse reshuffle of _superop_to_choi."""
    c4 = c.reshape(dim_out, dim_in, dim_out, dim_in)
    return dim_in * c4.transpose(2, 0, 3, 1).reshape(dim_out ** 2, dim_in ** 2)


def _witness_residuals(s_omega: np.ndarray, s_from: np.ndarray,
                       s_to: np.ndarray, dim_mid: int, dim_end: int):
    """(equation, complete-positivity, trace-preservation) norms for Omega."""
    eq_res = float(np.linalg.norm(s_omega @ s_from - s_to))
    c = _superop_to_choi(s_omega, dim_mid, dim_end)
    c = 0.5 * (c + c.conj().T)
    cp_res = float(max(0.0, -np.linalg.eigvalsh(c)[0]))
    marg = np.trace(
        (c * dim_mid).reshape(dim_end, dim_mid, dim_end, dim_mid),
        axis1=0, axis2=2,
    )
    tp_res = float(np.linalg.norm(marg - np.eye(dim_mid)))
    return eq_res, cp_res, tp_res


_POCS_MAX_ITERS = 2000


def _solve_postprocessing(s_from: np.ndarray, s_to: np.ndarray,
                          dim_mid: int, dim_end: int, tol: Tolerances):
    """CPTP witness for a post-processing Omega with Omega o From = To.

    The minimum-norm superoperator solution is accepted directly when it is
    already CPTP.  Otherwise the solution is refined by alternating
    projections between the affine solution set of the equation, the cone of
    positive Choi operators, and the trace-preservation affine set; the
    refined map is accepted only when all three residuals sit within
    10 * cptp_tol.  Returns (ok, residual).
    """
    budget = 10.0 * tol.cptp_tol
    sol, *_ = np.linalg.lstsq(s_from.T, s_to.T, rcond=None)
    s_omega = sol.T
    residuals = _witness_residuals(s_omega, s_from, s_to, dim_mid, dim_end)
    if max(residuals) <= budget:
        return True, max(residuals)

    pinv_from = np.linalg.pinv(s_from)
    eye_mid = np.eye(dim_mid) / dim_mid
    for _ in range(_POCS_MAX_ITERS):
        s_omega = s_omega - (s_omega @ s_from - s_to) @ pinv_from
        c = _superop_to_choi(s_omega, dim_mid, dim_end)
        c = 0.5 * (c + c.conj().T)
        marg = np.trace(
            c.reshape(dim_end, dim_mid, dim_end, dim_mid), axis1=0, axis2=2)
        c -= np.kron(np.eye(dim_end) / dim_end, marg - eye_mid)
        vals, vecs = np.linalg.eigh(c)
        if vals[0] < 0.0:
            c = (vecs * np.clip(vals, 0.0, None)) @ vecs.conj().T
        s_omega = _choi_to_superop(c, dim_mid, dim_end)
        residuals = _witness_residuals(s_omega, s_from, s_to, dim_mid, dim_end)
        if max(residuals) <= 0.1 * budget:
            break
    return max(residuals) <= budget, max(residuals)


def degradability_witness(ch: KrausChannel, tol: Tolerances = DEFAULT_TOL):
    """Heuristic degradability verdict: degradable, antidegradable or undetermined.

    A channel is degradable when some CPTP map turns the receiver output
    into the environment output, and antidegradable in the mirrored case.
    Both directions are attempted by a least-squares solve on the operator
    span; a clean CPTP solution within 10 * cptp_tol yields a verdict, and
    anything else is reported as undetermined with the best residual.  This
    is a one-sided witness, not a proof of non-degradability.

    Returns (verdict, residual).
    """
    comp = complementary(ch, tol=tol)
    s_n = _superop(ch)
    s_c = _superop(comp)
    anti_ok, anti_res = _solve_postprocessing(
        s_c, s_n, dim_mid=comp.dim_out, dim_end=ch.dim_out, tol=tol)
    if anti_ok:
        return "antidegradable", anti_res
    deg_ok, deg_res = _solve_postprocessing(
        s_n, s_c, dim_mid=ch.dim_out, dim_end=comp.dim_out, tol=tol)
    if deg_ok:
        return "degradable", deg_res
    return "undetermined", min(anti_res, deg_res)


def parse_channel_spec(spec: str, tol: Tolerances = DEFAULT_TOL) -> KrausChannel:
    """Build a named channel from a CLI address like dep:q=0.19 or erasure50.

    Grammar: name[:key=value[,key=value...]].  Known names: dep (q),
    horodecki (q), cd (d), pauli (pi, px, py, pz), erasure50, ebxy.
    """
    name, _, tail = spec.partition(":")
    name = name.strip().lower()
    params = {}
    if tail:
        for item in tail.split(","):
            key, eq, value = item.partition("=")
            if not eq:
                raise ValueError(f"malformed channel parameter {item!r} in {spec!r}")
            params[key.strip().lower()] = value.strip()

    def take_float(key: str, default=None) -> float:
        if key not in params and default is not None:
            return default
        if key not in params:
            raise ValueError(f"channel {name!r} needs parameter {key!r}, got {spec!r}")
        try:
            return float(params.pop(key))
        except ValueError:
            raise ValueError(f"parameter {key!r} in {spec!r} is not a number") from None

    if name == "dep":
        ch = depolarizing(take_float("q"), tol=tol)
    elif name == "horodecki":
        ch = horodecki_4d(take_float("q", default=0.5), tol=tol)
    elif name == "cd":
        d = take_float("d")
        if d != int(d):
            raise ValueError(f"cd dimension must be an integer, got {d}")
        ch = completely_depolarizing(int(d), tol=tol)
    elif name == "pauli":
        ch = pauli_channel(take_float("pi"), take_float("px"),
                           take_float("py"), take_float("pz"), tol=tol)
    elif name == "erasure50":
        ch = erasure_50_two_qubit(tol=tol)
    elif name == "ebxy":
        ch = eb_xy(tol=tol)
    else:
        raise ValueError(
            f"unknown channel name {name!r}; "
            "known: dep, horodecki, cd, pauli, erasure50, ebxy"
        )
    if params:
        raise ValueError(f"unused channel parameters {sorted(params)} in {spec!r}")
    return ch


def classify_channel(ch: KrausChannel, tol: Tolerances = DEFAULT_TOL) -> ChannelClassReport:
    """Combined PPT, entanglement-breaking hint and degradability report.

    The hint flags the case where the Choi state lives on a 2x2 or 2x3
    system, so positivity under partial transposition already certifies a
    separable Choi state and hence an entanglement-breaking channel.
    """
    ppt, mineig = is_ppt(ch, tol=tol)
    hint = bool(ppt and ch.dim_in * ch.dim_out <= 6)
    verdict, residual = degradability_witness(ch, tol=tol)
    return ChannelClassReport(
        ppt=ppt,
        ppt_min_eig=mineig,
        entanglement_breaking_hint=hint,
        degradability=verdict,
        degradability_residual=residual,
    )
