"""Dense complex linear algebra shared by every other module."""

from dataclasses import dataclass
from math import prod

import numpy as np


@dataclass(frozen=True)
class Tolerances:
    """Numeric thresholds used across validation and entropy clipping."""

    hermiticity_tol: float = 1e-10
    psd_tol: float = 1e-10
    cptp_tol: float = 1e-9
    eig_clip: float = 1e-12

    def __post_init__(self):
        for name in ("hermiticity_tol", "psd_tol", "cptp_tol", "eig_clip"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be strictly positive")


DEFAULT_TOL = Tolerances()

# Pauli matrices and qubit identity
I2 = np.eye(2, dtype=np.complex128)
X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
PAULIS = (I2, X, Y, Z)


def as_complex(m) -> np.ndarray:
    """View input as a C-contiguous complex128 array."""
    return np.ascontiguousarray(m, dtype=np.complex128)


def dagger(m) -> np.ndarray:
    """Conjugate transpose."""
    return as_complex(m).conj().T


def kron(a, b) -> np.ndarray:
    """Tensor product a (x) b."""
    return np.kron(as_complex(a), as_complex(b))


def partial_trace(m, dims, keep) -> np.ndarray:
    """Trace out the subsystems of ``m`` not listed in ``keep``.

    ``dims`` factorizes the square matrix into subsystems; ``keep`` is a set
    of subsystem indices to retain.  Keeping nothing returns the 1x1 matrix
    holding Tr(m).
    """
    m = as_complex(m)
    dims = [int(d) for d in dims]
    n = len(dims)
    total = prod(dims)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"partial_trace needs a square matrix, got {m.shape}")
    if m.shape[0] != total:
        raise ValueError(
            f"dimension mismatch: dims {dims} give product {total}, "
            f"matrix has {m.shape[0]} rows"
        )
    keep = sorted(set(int(i) for i in keep))
    if any(i < 0 or i >= n for i in keep):
        raise ValueError(f"keep indices {keep} out of range for {n} subsystems")

    letters = "abcdefghijklmnopqrstuvwxyz"
    if 2 * n > len(letters):
        raise ValueError("too many subsystems")
    rows = list(letters[:n])
    cols = [letters[n + i] if i in keep else letters[i] for i in range(n)]
    out_sub = "".join(rows[i] for i in keep) + "".join(cols[i] for i in keep)
    spec = "".join(rows) + "".join(cols) + "->" + out_sub
    reduced = np.einsum(spec, m.reshape(dims + dims))
    dk = prod(dims[i] for i in keep) if keep else 1
    return reduced.reshape(dk, dk)


def eigh(h, tol: Tolerances = DEFAULT_TOL):
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending.

    Symmetrizes drift below ``hermiticity_tol`` and rejects anything worse.
    """
    h = as_complex(h)
    dev = float(np.max(np.abs(h - h.conj().T))) if h.size else 0.0
    if dev > tol.hermiticity_tol:
        raise ValueError(f"matrix is not Hermitian: max |h - h^dag| = {dev:.3e}")
    vals, vecs = np.linalg.eigh(0.5 * (h + h.conj().T))
    return vals, vecs


def hermitize(m) -> np.ndarray:
    """Symmetrize floating-point drift: (m + m^dag) / 2."""
    m = as_complex(m)
    return 0.5 * (m + m.conj().T)


def ket(d: int, i: int) -> np.ndarray:
    """Computational basis column vector |i> in dimension d."""
    v = np.zeros(d, dtype=np.complex128)
    v[i] = 1.0
    return v


def proj(v) -> np.ndarray:
    """Rank-one projector |v><v| for a unit vector."""
    v = np.asarray(v, dtype=np.complex128).reshape(-1)
    return np.outer(v, v.conj())


def max_entangled(d: int) -> np.ndarray:
    """Maximally entangled density matrix on d x d."""
    v = np.zeros(d * d, dtype=np.complex128)
    for i in range(d):
        v[i * d + i] = 1.0
    v /= np.sqrt(d)
    return np.outer(v, v.conj())


def maximally_mixed(d: int) -> np.ndarray:
    """pi = I/d."""
    return np.eye(d, dtype=np.complex128) / d


# -- seeded randomness ------------------------------------------------------

def rng_from_seed(seed) -> np.random.Generator:
    """Deterministic generator for a seed or seed tuple."""
    return np.random.default_rng(np.random.SeedSequence(seed))


def spawn_rngs(seed, n: int):
    """n independent generators derived deterministically from one seed.

    The first k generators of spawn_rngs(seed, 2k) equal spawn_rngs(seed, k),
    which keeps restart prefixes comparable across budget sizes.
    """
    children = np.random.SeedSequence(seed).spawn(n)
    return [np.random.default_rng(c) for c in children]


def ginibre(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    """Complex Gaussian matrix."""
    return rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))


def random_density(rng: np.random.Generator, d: int, rank=None) -> np.ndarray:
    """Random density matrix G G^dag / Tr from a Ginibre factor."""
    g = ginibre(rng, d, rank or d)
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_pure(rng: np.random.Generator, d: int) -> np.ndarray:
    """Haar-random unit vector."""
    v = ginibre(rng, d, 1).reshape(-1)
    return v / np.linalg.norm(v)


def haar_unitary(rng: np.random.Generator, d: int) -> np.ndarray:
    """Haar-distributed unitary via QR with phase-fixed R diagonal."""
    q, r = np.linalg.qr(ginibre(rng, d, d))
    phases = np.diagonal(r).copy()
    phases /= np.abs(phases)
    return q * phases
