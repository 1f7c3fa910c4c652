"""Pure-numpy reference kernels.

Mirror of ``_kernels_numba``: same function names, signatures and float64
semantics, with vectorized numpy in place of jitted loops.  Selected at
import time by :mod:`qcaplab.backend` when numba is unavailable or when
``QCAP_BACKEND=numpy`` is set.

All kernels assume validated inputs: Kraus stacks are C-contiguous
complex128 arrays of shape (k, dim_out, dim_in), states are Hermitian with
spectrum >= -psd_tol.  Eigenvalues at or below ``clip`` contribute zero
entropy.
"""

import numpy as np

_INV_LN2 = 1.0 / np.log(2.0)


def apply_stack(kraus, kraus_h, rho):
    """Channel action sum_i A_i rho A_i^dag for a stacked Kraus family."""
    return np.einsum("iab,bc,icd->ad", kraus, rho, kraus_h, optimize=True)


def env_matrix(kraus, rho):
    """Environment state [Tr(A_i rho A_j^dag)]_ij of the complementary channel."""
    b = kraus @ rho
    return np.einsum("iab,jab->ij", b, kraus.conj(), optimize=True)


def entropy_bits(vals, clip):
    """-sum(v log2 v) over eigenvalues above clip."""
    v = vals[vals > clip]
    if v.size == 0:
        return 0.0
    return float(-np.sum(v * np.log(v)) * _INV_LN2)


def state_entropy(m, clip):
    """von Neumann entropy in bits of a Hermitian matrix."""
    return entropy_bits(np.linalg.eigvalsh(m), clip)


def ic_value(kraus, kraus_h, rho, clip):
    """Coherent information S(B) - S(E) at the input rho."""
    s_out = state_entropy(apply_stack(kraus, kraus_h, rho), clip)
    s_env = state_entropy(env_matrix(kraus, rho), clip)
    return s_out - s_env


def rho_from_params(params, d):
    """Density matrix L L^dag / Tr(L L^dag) from packed real parameters."""
    n = d * d
    l = (params[:n] + 1j * params[n:]).reshape(d, d)
    rho = l @ l.conj().T
    tr = np.trace(rho).real
    if tr <= 0.0:
        rho = np.eye(d, dtype=np.complex128)
        tr = float(d)
    return rho / tr

def ic_from_params(kraus, kraus_h, params, d, clip):
    """Coherent information as a function of the factor parameters."""
    return ic_value(kraus, kraus_h, rho_from_params(params, d), clip)


def ic_fd_gradient(kraus, kraus_h, params, d, step, clip):
    """Central finite-difference gradient of ic_from_params."""
    n = params.shape[0]
    grad = np.empty(n)
    work = params.copy()
    for i in range(n):
        orig = work[i]
        work[i] = orig + step
        fp = ic_from_params(kraus, kraus_h, work, d, clip)
        work[i] = orig - step
        fm = ic_from_params(kraus, kraus_h, work, d, clip)
        work[i] = orig
        grad[i] = (fp - fm) / (2.0 * step)
    return grad


def ensemble_from_params(params, m, d):
    w = params[:m]
    wsq = w * w
    tot = wsq.sum()
    if tot <= 0.0:
        probs = np.full(m, 1.0 / m)
    else:
        probs = wsq / tot
    re = params[m : m + m * d].reshape(m, d)
    im = params[m + m * d :].reshape(m, d)
    psi = re + 1j * im
    for x in range(m):
        nrm = np.linalg.norm(psi[x])
        if nrm <= 0.0:
            psi[x] = 0.0
            psi[x, 0] = 1.0
        else:
            psi[x] /= nrm
    return probs, psi


def holevo_from_params(kraus, kraus_h, params, m, d, clip):
    """Holevo information of an ensemble of m pure states, packed real."""
    probs, psi = ensemble_from_params(params, m, d)
    dout = kraus.shape[1]
    mix = np.zeros((dout, dout), dtype=np.complex128)
    avg_entropy = 0.0
    for x in range(m):
        rho = np.outer(psi[x], psi[x].conj())
        out = apply_stack(kraus, kraus_h, rho)
        mix += probs[x] * out
        avg_entropy += probs[x] * state_entropy(out, clip)
    return state_entropy(mix, clip) - avg_entropy


def holevo_fd_gradient(kraus, kraus_h, params, m, d, step, clip):
    """Central finite-difference gradient of holevo_from_params."""
    n = params.shape[0]
    grad = np.empty(n)
    work = params.copy()
    for i in range(n):
        orig = work[i]
        work[i] = orig + step
        fp = holevo_from_params(kraus, kraus_h, work, m, d, clip)
        work[i] = orig - step
        fm = holevo_from_params(kraus, kraus_h, work, m, d, clip)
        work[i] = orig
        grad[i] = (fp - fm) / (2.0 * step)
    return grad


def output_entropy_from_params(kraus, kraus_h, params, d, clip):
    """Output entropy S(N(|psi><psi|)) for a packed unnormalized vector."""
    v = params[:d] + 1j * params[d:]
    nrm = np.linalg.norm(v)
    if nrm <= 0.0:
        v = np.zeros(d, dtype=np.complex128)
        v[0] = 1.0
    else:
        v = v / nrm
    rho = np.outer(v, v.conj())
    return state_entropy(apply_stack(kraus, kraus_h, rho), clip)


def output_entropy_fd_gradient(kraus, kraus_h, params, d, step, clip):
    """Central finite-difference gradient of output_entropy_from_params."""
    n = params.shape[0]
    grad = np.empty(n)
    work = params.copy()
    for i in range(n):
        orig = work[i]
        work[i] = orig + step
        fp = output_entropy_from_params(kraus, kraus_h, work, d, clip)
        work[i] = orig - step
        fm = output_entropy_from_params(kraus, kraus_h, work, d, clip)
        work[i] = orig
        grad[i] = (fp - fm) / (2.0 * step)
    return grad
