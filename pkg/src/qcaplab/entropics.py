"""Entropic functionals, all in bits.

von Neumann and Shannon entropy, Holevo information of an ensemble through
a channel, coherent information S(B) - S(E), entropy of exchange, quantum
mutual information, and a multi-restart search for the minimum output
entropy.  Coherent information runs through the environment Gram matrix
[N^c(rho)]_ij = Tr(A_i rho A_j^dag) by default; the purification route is
kept as an independent cross-check.
"""

from dataclasses import dataclass

import numpy as np

from ._ascent import ascend
from .backend import kernels
from .channels import KrausChannel, apply_with_reference, assert_density_matrix
from .numerics import DEFAULT_TOL, Tolerances, eigh, ket

__all__ = [
    "Ensemble",
    "MinOutputEntropyResult",
    "von_neumann_entropy",
    "shannon_entropy",
    "holevo_information",
    "coherent_information",
    "purify",
    "entropy_of_exchange",
    "quantum_mutual_information",
    "min_output_entropy",
]

SIMPLEX_TOL = 1e-12


@dataclass(frozen=True)
class Ensemble:
    """Finite ensemble {p_x, rho_x} of equal-dimension density matrices."""

    probs: np.ndarray
    states: tuple

    def __post_init__(self):
        probs = np.asarray(self.probs, dtype=np.float64)
        states = tuple(np.asarray(s, dtype=np.complex128) for s in self.states)
        if probs.ndim != 1 or len(states) != probs.size or probs.size < 1:
            raise ValueError(
                f"need one probability per state, "
                f"got {probs.size} probabilities and {len(states)} states"
            )
        if probs.min() < -SIMPLEX_TOL or abs(probs.sum() - 1.0) > SIMPLEX_TOL:
            raise ValueError(
                f"ensemble probabilities must lie on the simplex within "
                f"{SIMPLEX_TOL:g}: min {probs.min():.3e}, sum {probs.sum():.15f}"
            )
        dims = {s.shape for s in states}
        if len(dims) != 1:
            raise ValueError(f"ensemble states have mixed shapes {sorted(dims)}")
        object.__setattr__(self, "probs", probs)
        object.__setattr__(self, "states", states)

    @property
    def dim(self) -> int:
        return self.states[0].shape[0]

    def average_state(self) -> np.ndarray:
        rho = np.zeros_like(self.states[0])
        for p, s in zip(self.probs, self.states):
            rho = rho + p * s
        return rho


@dataclass(frozen=True)
class MinOutputEntropyResult:
    """Searched minimum output entropy with the pure state achieving it."""

    value: float
    argmin_state: np.ndarray
    restarts_used: int
    converged: bool


def von_neumann_entropy(rho: np.ndarray, tol: Tolerances = DEFAULT_TOL,
                        what: str = "rho") -> float:
    """S(rho) = -Tr(rho log2 rho), computed on the clipped spectrum."""
    rho = assert_density_matrix(rho, tol=tol, what=what)
    return float(kernels.state_entropy(rho, tol.eig_clip))


def shannon_entropy(p, tol: Tolerances = DEFAULT_TOL) -> float:
    """H(p) = -sum p_x log2 p_x with 0 log 0 = 0."""
    p = np.asarray(p, dtype=np.float64).ravel()
    if p.min() < -SIMPLEX_TOL or abs(p.sum() - 1.0) > SIMPLEX_TOL:
        raise ValueError(
            f"probability vector must lie on the simplex within "
            f"{SIMPLEX_TOL:g}: min {p.min():.3e}, sum {p.sum():.15f}"
        )
    return float(kernels.entropy_bits(p, tol.eig_clip))


def holevo_information(ens: Ensemble, ch: KrausChannel,
                       tol: Tolerances = DEFAULT_TOL) -> float:
    """chi = S(N(rho_bar)) - sum_x p_x S(N(rho_x))."""
    if ens.dim != ch.dim_in:
        raise ValueError(
            f"ensemble dimension {ens.dim} does not match "
            f"channel input dimension {ch.dim_in}"
        )
    stack, stack_h = ch.stacks()
    for i, s in enumerate(ens.states):
        assert_density_matrix(s, tol=tol, what=f"ensemble state {i}")
    average = np.ascontiguousarray(ens.average_state())
    chi = kernels.state_entropy(
        kernels.apply_stack(stack, stack_h, average), tol.eig_clip)
    for p, s in zip(ens.probs, ens.states):
        if p <= 0.0:
            continue
        out = kernels.apply_stack(stack, stack_h, np.ascontiguousarray(s))
        chi -= p * kernels.state_entropy(out, tol.eig_clip)
    return float(chi)


def purify(rho: np.ndarray, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Purification sum_i sqrt(lam_i) |v_i>|i> of rho, system factor first.

    The reference factor has the same dimension as rho; tracing it out
    returns rho exactly.
    """
    vals, vecs = eigh(rho, tol=tol)
    d = rho.shape[0]
    phi = np.zeros(d * d, dtype=np.complex128)
    for i, lam in enumerate(vals):
        if lam > tol.eig_clip:
            phi += np.sqrt(lam) * np.kron(vecs[:, i], ket(d, i))
    return phi


def coherent_information(rho: np.ndarray, ch: KrausChannel,
                         tol: Tolerances = DEFAULT_TOL,
                         route: str = "environment") -> float:
    """I_c(rho, N) = S(B) - S(E).

    route="environment" evaluates S(E) on the Gram matrix
    [Tr(A_i rho A_j^dag)]_ij; route="purification" computes the equivalent
    -S(A'|B) = S(B) - S(BA') on the joint output of N (x) id applied to a
    purification of rho.
    """
    rho = assert_density_matrix(rho, tol=tol)
    if rho.shape[0] != ch.dim_in:
        raise ValueError(
            f"state dimension {rho.shape[0]} does not match "
            f"channel input dimension {ch.dim_in}"
        )
    stack, stack_h = ch.stacks()
    if route == "environment":
        return float(kernels.ic_value(stack, stack_h, rho, tol.eig_clip))
    if route == "purification":
        phi = purify(rho, tol=tol)
        joint = apply_with_reference(ch, np.outer(phi, phi.conj()), rho.shape[0])
        s_b = kernels.state_entropy(
            kernels.apply_stack(stack, stack_h, rho), tol.eig_clip)
        s_ba = kernels.state_entropy(joint, tol.eig_clip)
        return float(s_b - s_ba)
    raise ValueError(f"unknown route {route!r}; use 'environment' or 'purification'")


def entropy_of_exchange(rho: np.ndarray, ch: KrausChannel,
                        tol: Tolerances = DEFAULT_TOL) -> float:
    """S((N (x) id)(|phi><phi|)) for a purification phi of rho.

    Equals the entropy the channel hands to its environment, S(N^c(rho)).
    """
    rho = assert_density_matrix(rho, tol=tol)
    if rho.shape[0] != ch.dim_in:
        raise ValueError(
            f"state dimension {rho.shape[0]} does not match "
            f"channel input dimension {ch.dim_in}"
        )
    phi = purify(rho, tol=tol)
    joint = apply_with_reference(ch, np.outer(phi, phi.conj()), rho.shape[0])
    return float(kernels.state_entropy(joint, tol.eig_clip))


def quantum_mutual_information(rho: np.ndarray, ch: KrausChannel,
                               tol: Tolerances = DEFAULT_TOL) -> float:
    """I(A':B) = S(A) + S(B) - S(E) on the channel output."""
    rho = assert_density_matrix(rho, tol=tol)
    stack, stack_h = ch.stacks()
    s_a = kernels.state_entropy(rho, tol.eig_clip)
    s_b = kernels.state_entropy(
        kernels.apply_stack(stack, stack_h, rho), tol.eig_clip)
    return float(s_a + s_b - entropy_of_exchange(rho, ch, tol=tol))


def min_output_entropy(ch: KrausChannel, restarts: int = 8, seed: int = 0,
                       max_iters: int = 2000, step_init: float = 0.1,
                       conv_tol: float = 1e-8,
                       tol: Tolerances = DEFAULT_TOL) -> MinOutputEntropyResult:
    """Search min_psi S(N(|psi><psi|)) over optimized pure inputs.

    Pure states suffice by concavity of the entropy.  The result is an
    upper bound on the true minimum; the first restart starts from |0> and
    the rest from seeded random vectors.
    """
    if restarts < 1:
        raise ValueError(f"need at least one restart, got {restarts}")
    stack, stack_h = ch.stacks()
    d = ch.dim_in
    clip = tol.eig_clip

    def objective(params):
        return -kernels.output_entropy_from_params(stack, stack_h, params, d, clip)

    def gradient(params):
        return -kernels.output_entropy_fd_gradient(
            stack, stack_h, params, d, 1e-5, clip)

    def init(r, rng):
        if r == 0:
            params = np.zeros(2 * d)
            params[0] = 1.0
            return params
        return rng.standard_normal(2 * d)

    value, params, converged = ascend(
        objective, gradient, init, restarts, max_iters, step_init,
        conv_tol, seed)
    vec = params[:d] + 1j * params[d:]
    norm = np.linalg.norm(vec)
    vec = vec / norm if norm > 0 else ket(d, 0)
    state = np.outer(vec, vec.conj())
    exact = float(kernels.state_entropy(
        kernels.apply_stack(stack, stack_h, np.ascontiguousarray(state)), clip))
    return MinOutputEntropyResult(
        value=exact,
        argmin_state=state,
        restarts_used=restarts,
        converged=bool(converged),
    )
