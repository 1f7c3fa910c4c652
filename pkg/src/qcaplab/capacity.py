"""One-shot capacity optimizers and the three classical-placement experiments.

Covers the multi-restart maximization of coherent information and Holevo
information, the depolarizing single-use closed form and its threshold, the
three-use repetition-code coherent information in two independent routes
(syndrome formula and brute-force density-matrix evolution), finite-n
multi-copy lower bounds, the superactivation search on the Horodecki x
erasure pair, and the two-shot non-convexity identity for flagged mixtures.

Every reported value is a feasible-point evaluation: the entropic
functional re-evaluated at the returned argmax reproduces it, so results
are certified lower bounds on the true maxima.
"""

import math
from dataclasses import dataclass

import numpy as np

from ._ascent import ascend
from .backend import kernels
from .channels import (
    KrausChannel,
    apply_with_reference,
    tensor,
    validate_cptp,
)
from .entropics import Ensemble, coherent_information, holevo_information
from .numerics import (
    DEFAULT_TOL,
    Tolerances,
    eigh,
    ket,
    max_entangled,
    maximally_mixed,
    partial_trace,
    proj,
)
from .zoo import depolarizing, erasure_50_two_qubit, flagged_mix, horodecki_4d, is_ppt

__all__ = [
    "OptimizerOptions",
    "CapacityEstimate",
    "SyndromeTable",
    "RepetitionResult",
    "SuperactivationEntry",
    "SuperactivationReport",
    "maximize_coherent_information",
    "maximize_holevo",
    "depolarizing_ic_closed_form",
    "depolarizing_threshold",
    "repetition_syndrome_table",
    "repetition_coherent_information",
    "repetition_brute_force_oracle",
    "multi_copy_ic",
    "tensor_power",
    "superactivation_search",
    "nonconvexity_two_shot",
]

FD_STEP = 1e-5


@dataclass(frozen=True)
class OptimizerOptions:
    """Knobs for the multi-restart finite-difference ascent."""

    restarts: int = 32
    max_iters: int = 2000
    step_init: float = 0.1
    conv_tol: float = 1e-8
    seed: int = 0

    def __post_init__(self):
        if self.restarts < 1:
            raise ValueError(f"restarts must be >= 1, got {self.restarts}")
        if self.conv_tol <= 0:
            raise ValueError(f"conv_tol must be positive, got {self.conv_tol}")
        if self.max_iters < 1:
            raise ValueError(f"max_iters must be >= 1, got {self.max_iters}")
        if self.step_init <= 0:
            raise ValueError(f"step_init must be positive, got {self.step_init}")


DEFAULT_OPTS = OptimizerOptions()


@dataclass(frozen=True)
class CapacityEstimate:
    """Best feasible value found, with the input achieving it.

    value is exact at argmax_state (re-evaluated at full precision), hence
    a certified lower bound on the true maximum.
    """

    value: float
    argmax_state: object
    restarts_used: int
    converged: bool


@dataclass(frozen=True)
class SyndromeTable:
    """Measurement-branch bookkeeping for the three-qubit repetition code.

    For each syndrome (s1, s2) with nonzero probability: p(s) and the
    residual Pauli distribution (I, X, Y, Z) on the surviving qubit after
    the conditional correction.
    """

    syndromes: tuple
    probs: np.ndarray
    residuals: np.ndarray

    def __post_init__(self):
        probs = np.asarray(self.probs, dtype=np.float64)
        residuals = np.asarray(self.residuals, dtype=np.float64)
        if len(self.syndromes) != probs.size or residuals.shape != (probs.size, 4):
            raise ValueError("syndromes, probs and residuals disagree in length")
        if abs(probs.sum() - 1.0) > 1e-12 or probs.min() < 0:
            raise ValueError(f"branch probabilities must sum to 1, got {probs.sum()!r}")
        rowsums = residuals.sum(axis=1)
        if residuals.min() < -1e-12 or np.abs(rowsums - 1.0).max() > 1e-12:
            raise ValueError("each residual Pauli vector must lie on the simplex")
        object.__setattr__(self, "probs", probs)
        object.__setattr__(self, "residuals", residuals)


class RepetitionResult(float):
    """Three-use coherent information; .rate carries the per-use value/3."""

    __slots__ = ("rate",)

    def __new__(cls, value: float):
        obj = super().__new__(cls, value)
        obj.rate = value / 3.0
        return obj


# -- generic drivers ----------------------------------------------------------

def _params_from_density(rho: np.ndarray, tol: Tolerances) -> np.ndarray:
    """Pack rho = L L^dag exactly into ascent parameters via its square root."""
    vals, vecs = eigh(rho, tol=tol)
    root = (vecs * np.sqrt(np.clip(vals, 0.0, None))) @ vecs.conj().T
    return np.concatenate([root.real.ravel(), root.imag.ravel()])


def maximize_coherent_information(ch: KrausChannel,
                                  opts: OptimizerOptions = DEFAULT_OPTS,
                                  extra_inits=(),
                                  tol: Tolerances = DEFAULT_TOL) -> CapacityEstimate:
    """Best I_c(rho, ch) over optimized inputs rho = L L^dag / Tr(L L^dag).

    Restart 0 starts at the maximally mixed state, restarts 1..len(extra_inits)
    at the supplied density matrices, the rest at random complex factors.
    """
    d = ch.dim_in
    stack, stack_h = ch.stacks()
    clip = tol.eig_clip
    extras = [_params_from_density(np.asarray(r, dtype=np.complex128), tol)
              for r in extra_inits]

    def objective(params):
        return kernels.ic_from_params(stack, stack_h, params, d, clip)

    def gradient(params):
        return kernels.ic_fd_gradient(stack, stack_h, params, d, FD_STEP, clip)

    def init(r, rng):
        if r == 0:
            return np.concatenate([np.eye(d).ravel(), np.zeros(d * d)])
        if r - 1 < len(extras):
            return extras[r - 1]
        return rng.standard_normal(2 * d * d)

    _, params, converged = ascend(
        objective, gradient, init, opts.restarts, opts.max_iters,
        opts.step_init, opts.conv_tol, opts.seed)
    rho = kernels.rho_from_params(params, d)
    exact = float(kernels.ic_value(stack, stack_h, rho, clip))
    return CapacityEstimate(
        value=exact,
        argmax_state=rho,
        restarts_used=opts.restarts,
        converged=bool(converged),
    )


def maximize_holevo(ch: KrausChannel, m: int = 0,
                    opts: OptimizerOptions = DEFAULT_OPTS,
                    tol: Tolerances = DEFAULT_TOL) -> CapacityEstimate:
    """Best chi over ensembles of m pure states (default m = dim_in^2).

    Probabilities come from squared weights renormalized onto the simplex,
    state vectors are normalized on evaluation, so every iterate is
    feasible.  Restart 0 is the uniform ensemble over cycled basis states.
    """
    d = ch.dim_in
    if m == 0:
        m = d * d
    if m < 2:
        raise ValueError(f"ensemble size must be >= 2, got {m}")
    stack, stack_h = ch.stacks()
    clip = tol.eig_clip

    def objective(params):
        return kernels.holevo_from_params(stack, stack_h, params, m, d, clip)

    def gradient(params):
        return kernels.holevo_fd_gradient(stack, stack_h, params, m, d, FD_STEP, clip)

    def init(r, rng):
        if r == 0:
            params = np.zeros(m + 2 * m * d)
            params[:m] = 1.0
            for j in range(m):
                params[m + j * d + (j % d)] = 1.0
            return params
        return rng.standard_normal(m + 2 * m * d)

    _, params, converged = ascend(
        objective, gradient, init, opts.restarts, opts.max_iters,
        opts.step_init, opts.conv_tol, opts.seed)
    probs, vectors = kernels.ensemble_from_params(params, m, d)
    ens = Ensemble(probs=probs, states=tuple(proj(v) for v in vectors))
    exact = holevo_information(ens, ch, tol=tol)
    return CapacityEstimate(
        value=exact,
        argmax_state=ens,
        restarts_used=opts.restarts,
        converged=bool(converged),
    )


# -- depolarizing closed forms -------------------------------------------------

def _pauli_vector(q: float) -> np.ndarray:
    return np.array([1.0 - q, q / 3.0, q / 3.0, q / 3.0])


def _entropy_bits(p: np.ndarray) -> float:
    p = p[p > 1e-15]
    return float(-(p * np.log2(p)).sum())


def depolarizing_ic_closed_form(q: float) -> float:
    """Single-use depolarizing coherent information max(0, 1 - H(q_vec))."""
    if not 0.0 <= q <= 1.0:
        raise ValueError(f"depolarizing parameter must be in [0, 1], got {q}")
    return max(0.0, 1.0 - _entropy_bits(_pauli_vector(q)))


def depolarizing_threshold(lo: float = 0.0, hi: float = 0.25,
                           tol: float = 1e-12) -> float:
    """Bisection root of 1 - H(q_vec): where single-use I_c hits zero."""

    def f(q):
        return 1.0 - _entropy_bits(_pauli_vector(q))

    flo, fhi = f(lo), f(hi)
    if flo <= 0 or fhi >= 0:
        raise ValueError(f"no sign change on [{lo}, {hi}]")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if f(mid) > 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


# -- repetition code: syndrome route -------------------------------------------

# Pauli symplectic bits (x, z): I, X, Y, Z
_PAULI_BITS = ((0, 0), (1, 0), (1, 1), (0, 1))
_BITS_TO_PAULI = {(0, 0): 0, (1, 0): 1, (1, 1): 2, (0, 1): 3}


def repetition_syndrome_table(q: float) -> SyndromeTable:
    """Enumerate all 64 three-use Pauli patterns through the fixed decoder.

    Decoder: controlled-NOTs from qubit 3 onto qubits 1 and 2, measure
    qubits 1-2 for the syndrome (s1, s2), then X on qubit 3 iff s1 = s2 = 1.
    A pattern with per-qubit bits (x_i, z_i) lands in syndrome
    s1 = x1 xor x3, s2 = x2 xor x3 and leaves the surviving qubit carrying
    x = x3 xor (s1 and s2), z = z1 xor z2 xor z3.  The all-X pattern
    therefore shows up in syndrome (0, 0) with residual X: this code
    records what the fixed circuit produces for each branch rather than
    renaming branches after the correction.
    """
    if not 0.0 <= q <= 1.0:
        raise ValueError(f"depolarizing parameter must be in [0, 1], got {q}")
    pvec = _pauli_vector(q)
    mass = {(s1, s2): np.zeros(4) for s1 in (0, 1) for s2 in (0, 1)}
    for p1 in range(4):
        for p2 in range(4):
            for p3 in range(4):
                weight = pvec[p1] * pvec[p2] * pvec[p3]
                if weight == 0.0:
                    continue
                (x1, z1), (x2, z2), (x3, z3) = (
                    _PAULI_BITS[p1], _PAULI_BITS[p2], _PAULI_BITS[p3])
                s1 = x1 ^ x3
                s2 = x2 ^ x3
                x = x3 ^ (s1 & s2)
                z = z1 ^ z2 ^ z3
                mass[(s1, s2)][_BITS_TO_PAULI[(x, z)]] += weight
    syndromes, probs, residuals = [], [], []
    for s in sorted(mass):
        ps = mass[s].sum()
        if ps <= 0.0:
            continue
        syndromes.append(s)
        probs.append(ps)
        residuals.append(mass[s] / ps)
    return SyndromeTable(
        syndromes=tuple(syndromes),
        probs=np.array(probs),
        residuals=np.array(residuals),
    )


def repetition_coherent_information(q: float) -> RepetitionResult:
    """Three-use repetition-code value sum_s p(s) (1 - H(q_vec_s)).

    Branch terms are not clamped at zero; the sum is the coherent
    information of the overall encode-noise-decode channel.  The returned
    float carries the per-channel-use rate (value / 3) as .rate.
    """
    table = repetition_syndrome_table(q)
    value = 0.0
    for ps, res in zip(table.probs, table.residuals):
        value += ps * (1.0 - _entropy_bits(res))
    return RepetitionResult(value)


# -- repetition code: brute-force oracle ----------------------------------------

def _repetition_decoder(tol: Tolerances) -> KrausChannel:
    """Decoder as a channel: CNOTs, dephasing measurement, correction.

    Kraus operators K_s = (P_s (x) C_s) V over the four syndromes, with V
    the two controlled-NOTs, P_s the projector onto qubits 1-2 reading s,
    and C_s the conditional X on qubit 3.
    """
    v = np.zeros((8, 8), dtype=np.complex128)
    for b1 in (0, 1):
        for b2 in (0, 1):
            for b3 in (0, 1):
                v[(b1 ^ b3) * 4 + (b2 ^ b3) * 2 + b3, b1 * 4 + b2 * 2 + b3] = 1.0
    ops = []
    for s1 in (0, 1):
        for s2 in (0, 1):
            block = np.zeros((8, 8), dtype=np.complex128)
            flip = 1 if (s1 == 1 and s2 == 1) else 0
            for b3 in (0, 1):
                block[s1 * 4 + s2 * 2 + (b3 ^ flip), s1 * 4 + s2 * 2 + b3] = 1.0
            ops.append(block @ v)
    return validate_cptp(ops, 8, 8, label="repetition-decoder", tol=tol)


def repetition_brute_force_oracle(q: float, tol: Tolerances = DEFAULT_TOL) -> float:
    """Repetition-code coherent information by explicit state evolution.

    Evolves the encoded half of (|0000> + |1111>)/sqrt(2) through three
    depolarizing uses and the decoder channel, then evaluates
    S(B) - S(B A') on the joint output.  Independent of the syndrome
    bookkeeping; the two routes must agree.
    """
    dep = depolarizing(q, tol=tol)
    dep3 = tensor(tensor(dep, dep), dep)
    phi = (ket(16, 0) + ket(16, 15)) / np.sqrt(2.0)
    noisy = apply_with_reference(dep3, proj(phi), 2)
    out = apply_with_reference(_repetition_decoder(tol), noisy, 2)
    out_b = partial_trace(out, (8, 2), keep=(0,))
    return float(kernels.state_entropy(np.ascontiguousarray(out_b), tol.eig_clip)
                 - kernels.state_entropy(np.ascontiguousarray(out), tol.eig_clip))


# -- multi-copy lower bounds ----------------------------------------------------

def tensor_power(ch: KrausChannel, n: int) -> KrausChannel:
    """ch (x) ch (x) ... (x) ch, n factors."""
    if n < 1:
        raise ValueError(f"need at least one copy, got {n}")
    out = ch
    for _ in range(n - 1):
        out = tensor(out, ch)
    return out


def multi_copy_ic(ch: KrausChannel, n: int,
                  opts: OptimizerOptions = DEFAULT_OPTS,
                  tol: Tolerances = DEFAULT_TOL) -> CapacityEstimate:
    """(1/n) max I_c over entangled inputs of n channel copies.

    A finite-n lower bound on the regularized quantum capacity; the
    argmax_state lives on the n-copy input space.
    """
    if ch.dim_in ** n > 64:
        raise ValueError(
            f"total input dimension {ch.dim_in ** n} exceeds the guard (64)")
    inner = maximize_coherent_information(tensor_power(ch, n), opts=opts, tol=tol)
    return CapacityEstimate(
        value=inner.value / n,
        argmax_state=inner.argmax_state,
        restarts_used=inner.restarts_used,
        converged=inner.converged,
    )


# -- superactivation -------------------------------------------------------------

@dataclass(frozen=True)
class SuperactivationEntry:
    """Per-q record: PPT certificate, individual ceilings, joint best."""

    q: float
    ppt: bool
    ppt_min_eig: float
    horodecki_ceiling: float
    erasure_ceiling: float
    joint: CapacityEstimate


@dataclass(frozen=True)
class SuperactivationReport:
    entries: tuple
    best_q: float
    best_value: float
    best_state: np.ndarray
    best_certified: bool


def _pair_state(d: int, pairing, phases=None) -> np.ndarray:
    """Pure state sum_i w_i |i>|pairing(i)> / norm on d x d."""
    vec = np.zeros(d * d, dtype=np.complex128)
    for i, j in enumerate(pairing):
        vec[i * d + j] = 1.0 if phases is None else phases[i]
    vec /= np.linalg.norm(vec)
    return proj(vec)


def superactivation_inits() -> tuple:
    """Structured 16-dim probe states for the joint Horodecki x erasure search.

    Entangled pairings between the two 4-dim inputs: the maximally
    entangled state, phase-twisted and permuted variants, Bell pairs on the
    first qubit of each side with pinned or mixed second qubits, and the
    maximally mixed state.  The known activating inputs are highly
    structured, so these seeds matter more than random restarts.
    """
    states = [max_entangled(4)]
    for k in (1, 2, 3):
        w = np.exp(2j * np.pi * k / 4)
        states.append(_pair_state(4, (0, 1, 2, 3), phases=[w ** i for i in range(4)]))
    for pairing in ((1, 0, 3, 2), (2, 3, 0, 1), (3, 2, 1, 0)):
        states.append(_pair_state(4, pairing))
    # Bell pair on qubit one of each side, second qubits pinned
    vec = (np.kron(ket(4, 0), ket(4, 0)) + np.kron(ket(4, 2), ket(4, 2)))
    bell_00 = proj(vec / np.linalg.norm(vec))
    vec = (np.kron(ket(4, 1), ket(4, 1)) + np.kron(ket(4, 3), ket(4, 3)))
    bell_11 = proj(vec / np.linalg.norm(vec))
    states += [bell_00, bell_11, 0.5 * bell_00 + 0.5 * bell_11]
    states.append(0.5 * max_entangled(4) + 0.5 * np.kron(maximally_mixed(4),
                                                         maximally_mixed(4)))
    states.append(np.kron(maximally_mixed(4), maximally_mixed(4)))
    return tuple(states)


def superactivation_search(q_grid, opts: OptimizerOptions = DEFAULT_OPTS,
                           tol: Tolerances = DEFAULT_TOL) -> SuperactivationReport:
    """Joint coherent-information search on Horodecki (x) 50% erasure.

    For each q: record the PPT certificate of the Horodecki factor, verify
    both individual ceilings by optimization, then maximize I_c of the
    product channel over 16-dim inputs with the structured restarts
    prepended.  The headline is the best (q, value, state) triple.
    """
    erasure = erasure_50_two_qubit(tol=tol)
    factor_opts = OptimizerOptions(
        restarts=min(opts.restarts, 8), max_iters=opts.max_iters,
        step_init=opts.step_init, conv_tol=opts.conv_tol, seed=opts.seed)
    erasure_ceiling = maximize_coherent_information(
        erasure, opts=factor_opts, tol=tol).value
    entries = []
    best = None
    for q in q_grid:
        hor = horodecki_4d(q, tol=tol)
        ppt, mineig = is_ppt(hor, tol=tol)
        hor_ceiling = maximize_coherent_information(
            hor, opts=factor_opts, tol=tol).value
        joint = maximize_coherent_information(
            tensor(hor, erasure), opts=opts,
            extra_inits=superactivation_inits(), tol=tol)
        entry = SuperactivationEntry(
            q=float(q), ppt=ppt, ppt_min_eig=mineig,
            horodecki_ceiling=hor_ceiling, erasure_ceiling=erasure_ceiling,
            joint=joint)
        entries.append(entry)
        if ppt and (best is None or joint.value > best.joint.value):
            best = entry
    certified = best is not None
    if best is None:
        # no PPT-certified q: fall back to the best joint value, flagged
        best = max(entries, key=lambda e: e.joint.value)
    return SuperactivationReport(
        entries=tuple(entries),
        best_q=best.q,
        best_value=best.joint.value,
        best_state=best.joint.argmax_state,
        best_certified=certified,
    )


# -- non-convexity ---------------------------------------------------------------

def nonconvexity_two_shot(p: float, rho: np.ndarray, q: float = 0.5,
                          tol: Tolerances = DEFAULT_TOL):
    """Two-shot coherent information of the flagged mixture, both routes.

    direct evaluates I_c(rho, M_p (x) M_p) on the flagged channel itself;
    expansion evaluates the four-term combination
    p^2 I_c(rho, H(x)H) + p(1-p) I_c(rho, H(x)E) + p(1-p) I_c(rho, E(x)H)
    + (1-p)^2 I_c(rho, E(x)E).  The flags are orthogonal, so the two routes
    agree identically; both are returned for the cross-check.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"mixing parameter must be in [0, 1], got {p}")
    hor = horodecki_4d(q, tol=tol)
    erasure = erasure_50_two_qubit(tol=tol)
    mp = flagged_mix(p, hor, erasure, tol=tol)
    direct = coherent_information(rho, tensor(mp, mp), tol=tol)
    weights = ((p * p, hor, hor), (p * (1 - p), hor, erasure),
               ((1 - p) * p, erasure, hor), ((1 - p) * (1 - p), erasure, erasure))
    expansion = 0.0
    for w, left, right in weights:
        if w == 0.0:
            continue
        expansion += w * coherent_information(rho, tensor(left, right), tol=tol)
    return float(direct), float(expansion)
