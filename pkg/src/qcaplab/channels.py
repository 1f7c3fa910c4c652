"""Quantum-channel algebra on Kraus representations.

A channel is a completely positive trace-preserving (CPTP) map stored as a
list of Kraus operators, N(rho) = sum_i A_i rho A_i^dag with
sum_i A_i^dag A_i = I.  This module provides validation, application, the
Choi state, Kraus extraction from a Choi state, the isometric extension,
the complementary channel, composition and tensor products, plus a JSON
wire format used by the CLI.
"""

import json
from dataclasses import dataclass, field

import numpy as np

from .backend import kernels
from .numerics import DEFAULT_TOL, Tolerances, as_complex, kron, partial_trace

__all__ = [
    "KrausChannel",
    "ChoiState",
    "assert_density_matrix",
    "validate_cptp",
    "apply",
    "apply_with_reference",
    "choi",
    "kraus_from_choi",
    "isometric_extension",
    "complementary",
    "compose",
    "tensor",
    "channel_to_json_dict",
    "channel_from_json_dict",
    "save_channel",
    "load_channel",
    "matrix_to_json",
    "matrix_from_json",
]


def assert_density_matrix(rho, tol: Tolerances = DEFAULT_TOL, what="state"):
    """Validate Hermiticity, positivity and unit trace of a density matrix."""
    rho = as_complex(rho)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError(f"{what} must be square, got shape {rho.shape}")
    dev = float(np.max(np.abs(rho - rho.conj().T)))
    if dev > tol.hermiticity_tol:
        raise ValueError(f"{what} is not Hermitian: max deviation {dev:.3e}")
    tr = complex(np.trace(rho))
    if abs(tr - 1.0) > tol.psd_tol:
        raise ValueError(f"{what} has trace {tr}, expected 1")
    mineig = float(np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))[0])
    if mineig < -tol.psd_tol:
        raise ValueError(f"{what} has negative eigenvalue {mineig:.3e}")
    return rho


@dataclass(frozen=True, eq=False)
class KrausChannel:
    """Immutable CPTP map given by Kraus operators of shape dim_out x dim_in.

    Construct through :func:`validate_cptp`, which checks the completeness
    relation; the constructors in :mod:`qcaplab.zoo` do this for you.  The
    stacked operator arrays used by the hot kernels are cached at creation.
    """

    dim_in: int
    dim_out: int
    kraus: tuple
    label: str = ""
    cptp_residual: float = 0.0
    _stack: np.ndarray = field(repr=False, default=None)
    _stack_h: np.ndarray = field(repr=False, default=None)

    def __post_init__(self):
        ops = tuple(as_complex(a) for a in self.kraus)
        if not ops:
            raise ValueError("channel needs at least one Kraus operator")
        stack = np.ascontiguousarray(np.stack(ops))
        stack_h = np.ascontiguousarray(stack.conj().transpose(0, 2, 1))
        object.__setattr__(self, "kraus", ops)
        object.__setattr__(self, "_stack", stack)
        object.__setattr__(self, "_stack_h", stack_h)

    @property
    def n_kraus(self) -> int:
        return len(self.kraus)

    def stacks(self):
        """(kraus, kraus_h) contiguous stacks for the kernel layer."""
        return self._stack, self._stack_h

    def __call__(self, rho, tol: Tolerances = DEFAULT_TOL):
        return apply(self, rho, tol)


@dataclass(frozen=True, eq=False)
class ChoiState:
    """Choi state (N (x) I)(Phi) with output factor first, reference second."""

    dim_in: int
    dim_out: int
    state: np.ndarray

    @property
    def channel_dims(self):
        return (self.dim_in, self.dim_out)

    def marginal_residual(self) -> float:
        """Frobenius distance of the reference marginal from I/dim_in."""
        marg = partial_trace(self.state, [self.dim_out, self.dim_in], {1})
        return float(
            np.linalg.norm(marg - np.eye(self.dim_in) / self.dim_in)
        )


def validate_cptp(kraus, dim_in: int, dim_out: int, label: str = "",
                  tol: Tolerances = DEFAULT_TOL) -> KrausChannel:
    """Check the completeness relation and build a channel.

    Parameters
    ----------
    kraus : sequence of arrays, each dim_out x dim_in
    dim_in, dim_out : channel dimensions
    label : human-readable tag carried through reports

    Returns
    -------
    KrausChannel with the measured completeness residual recorded.

    Raises
    ------
    ValueError on a shape mismatch (naming the offending operator) or when
    ||sum A^dag A - I||_F exceeds cptp_tol.
    """
    ops = [as_complex(a) for a in kraus]
    for idx, a in enumerate(ops):
        if a.shape != (dim_out, dim_in):
            raise ValueError(
                f"Kraus operator {idx} has shape {a.shape}, "
                f"expected ({dim_out}, {dim_in})"
            )
    acc = np.zeros((dim_in, dim_in), dtype=np.complex128)
    for a in ops:
        acc += a.conj().T @ a
    residual = float(np.linalg.norm(acc - np.eye(dim_in)))
    if residual > tol.cptp_tol:
        raise ValueError(
            f"Kraus family is not trace preserving: "
            f"||sum A^dag A - I|| = {residual:.3e} exceeds {tol.cptp_tol:.1e}"
        )
    return KrausChannel(dim_in=dim_in, dim_out=dim_out, kraus=tuple(ops),
                        label=label, cptp_residual=residual)


def apply(ch: KrausChannel, rho, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """N(rho) = sum_i A_i rho A_i^dag."""
    rho = as_complex(rho)
    if rho.shape != (ch.dim_in, ch.dim_in):
        raise ValueError(
            f"state has shape {rho.shape}, channel input dimension is {ch.dim_in}"
        )
    stack, stack_h = ch.stacks()
    return kernels.apply_stack(stack, stack_h, rho)


def apply_with_reference(ch: KrausChannel, joint, ref_dim: int,
                         tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """(N (x) I_ref)(joint) with the channel acting on the first factor."""
    joint = as_complex(joint)
    expected = ch.dim_in * ref_dim
    if joint.shape != (expected, expected):
        raise ValueError(
            f"joint state has shape {joint.shape}, expected "
            f"({expected}, {expected}) = dim_in {ch.dim_in} x ref {ref_dim}"
        )
    eye = np.eye(ref_dim, dtype=np.complex128)
    big = np.stack([np.kron(a, eye) for a in ch.kraus])
    big = np.ascontiguousarray(big)
    big_h = np.ascontiguousarray(big.conj().transpose(0, 2, 1))
    return kernels.apply_stack(big, big_h, joint)


def choi(ch: KrausChannel) -> ChoiState:
    """Choi state (N (x) I)(Phi) on output (x) reference.

    Equals (1/d) sum_i vec(A_i) vec(A_i)^dag with row-major vectorization,
    which orders the joint index as (output, reference).
    """
    d = ch.dim_in
    dim = ch.dim_out * d
    state = np.zeros((dim, dim), dtype=np.complex128)
    for a in ch.kraus:
        v = a.reshape(-1)
        state += np.outer(v, v.conj())
    return ChoiState(dim_in=d, dim_out=ch.dim_out, state=state / d)


def kraus_from_choi(c: ChoiState, tol: Tolerances = DEFAULT_TOL,
                    label: str = "") -> KrausChannel:
    """Extract a canonical minimal Kraus family from a Choi state.

    Each eigenpair (lam, v) with lam > eig_clip yields the operator
    sqrt(lam * dim_in) * unvec(v).  The reference marginal must equal
    I/dim_in; anything else is rejected with the deviation norm.
    """
    dev = c.marginal_residual()
    if dev > 1e-9:
        raise ValueError(
            f"Choi reference marginal deviates from I/d by {dev:.3e}"
        )
    m = 0.5 * (c.state + c.state.conj().T)
    vals, vecs = np.linalg.eigh(m)
    ops = []
    for lam, v in zip(vals, vecs.T):
        if lam > tol.eig_clip:
            ops.append(np.sqrt(lam * c.dim_in) * v.reshape(c.dim_out, c.dim_in))
    return validate_cptp(ops, c.dim_in, c.dim_out, label=label, tol=tol)


def isometric_extension(ch: KrausChannel) -> np.ndarray:
    """Stinespring isometry U = sum_i A_i (x) |i>_E, output (x) environment.

    Shape is (dim_out * k) x dim_in with k Kraus operators; the environment
    basis follows the Kraus list order.
    """
    k = ch.n_kraus
    u = np.zeros((ch.dim_out * k, ch.dim_in), dtype=np.complex128)
    for i, a in enumerate(ch.kraus):
        e = np.zeros((k, 1), dtype=np.complex128)
        e[i, 0] = 1.0
        u += np.kron(a, e)
    return u


def complementary(ch: KrausChannel, tol: Tolerances = DEFAULT_TOL) -> KrausChannel:
    """Channel to the environment, N^c(rho) = Tr_B(U rho U^dag).

    The output dimension equals the number of Kraus operators of ``ch``;
    entry (i, j) of the output is Tr(A_i rho A_j^dag).
    """
    u = isometric_extension(ch)
    k = ch.n_kraus
    ops = [u[b * k:(b + 1) * k, :] for b in range(ch.dim_out)]
    return validate_cptp(ops, ch.dim_in, k,
                         label=f"complement({ch.label})" if ch.label else "",
                         tol=tol)


def compose(m: KrausChannel, n: KrausChannel,
            tol: Tolerances = DEFAULT_TOL) -> KrausChannel:
    """Sequential map applying ``n`` first, then ``m``; Kraus set {M_j N_i}."""
    if n.dim_out != m.dim_in:
        raise ValueError(
            f"cannot compose: first channel outputs dimension {n.dim_out}, "
            f"second expects {m.dim_in}"
        )
    ops = [mj @ ni for mj in m.kraus for ni in n.kraus]
    label = f"({m.label} after {n.label})" if m.label and n.label else ""
    return validate_cptp(ops, n.dim_in, m.dim_out, label=label, tol=tol)


def tensor(a: KrausChannel, b: KrausChannel,
           tol: Tolerances = DEFAULT_TOL) -> KrausChannel:
    """Parallel map a (x) b; Kraus set {A_i (x) B_j}."""
    ops = [kron(ai, bj) for ai in a.kraus for bj in b.kraus]
    label = f"({a.label} x {b.label})" if a.label and b.label else ""
    return validate_cptp(ops, a.dim_in * b.dim_in, a.dim_out * b.dim_out,
                         label=label, tol=tol)


# -- JSON wire format --------------------------------------------------------

def matrix_to_json(m) -> list:
    """Matrix as rows of [re, im] pairs."""
    m = as_complex(m)
    return [[[float(x.real), float(x.imag)] for x in row] for row in m]


def matrix_from_json(rows) -> np.ndarray:
    """Inverse of matrix_to_json."""
    return np.array(
        [[complex(e[0], e[1]) for e in row] for row in rows],
        dtype=np.complex128,
    )


def channel_to_json_dict(ch: KrausChannel) -> dict:
    return {
        "label": ch.label,
        "dim_in": ch.dim_in,
        "dim_out": ch.dim_out,
        "kraus": [matrix_to_json(a) for a in ch.kraus],
    }


def channel_from_json_dict(doc: dict, tol: Tolerances = DEFAULT_TOL) -> KrausChannel:
    for key in ("dim_in", "dim_out", "kraus"):
        if key not in doc:
            raise ValueError(f"channel document missing field {key!r}")
    ops = [matrix_from_json(rows) for rows in doc["kraus"]]
    return validate_cptp(ops, int(doc["dim_in"]), int(doc["dim_out"]),
                         label=str(doc.get("label", "")), tol=tol)


def save_channel(ch: KrausChannel, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(channel_to_json_dict(ch), fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_channel(path, tol: Tolerances = DEFAULT_TOL) -> KrausChannel:
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    return channel_from_json_dict(doc, tol=tol)
