"""Numba-jitted hot kernels.

Same function names and signatures as ``_kernels_numpy``; the backend module
picks one of the two at import time.  These loops dominate the optimizer
runtime (every finite-difference gradient costs thousands of channel
applications), so they are compiled with ``@njit(cache=True)`` and written
against the numba-supported numpy subset: explicit loops, contiguous
complex128 arrays, no einsum.
"""

import numpy as np
from numba import njit

_INV_LN2 = 1.0 / np.log(2.0)


@njit(cache=True)
def apply_stack(kraus, kraus_h, rho):
    k = kraus.shape[0]
    dout = kraus.shape[1]
    out = np.zeros((dout, dout), dtype=np.complex128)
    for i in range(k):
        out += np.dot(np.dot(kraus[i], rho), kraus_h[i])
    return out


@njit(cache=True)
def env_matrix(kraus, rho):
    k = kraus.shape[0]
    dout = kraus.shape[1]
    din = kraus.shape[2]
    env = np.empty((k, k), dtype=np.complex128)
    prod = np.empty((k, dout, din), dtype=np.complex128)
    for i in range(k):
        prod[i] = np.dot(kraus[i], rho)
    for i in range(k):
        for j in range(i, k):
            acc = 0.0 + 0.0j
            for a in range(dout):
                for b in range(din):
                    acc += prod[i, a, b] * np.conj(kraus[j, a, b])
            env[i, j] = acc
            env[j, i] = np.conj(acc)
    return env


@njit(cache=True)
def entropy_bits(vals, clip):
    s = 0.0
    for i in range(vals.shape[0]):
        v = vals[i]
        if v > clip:
            s -= v * np.log(v)
    return s * _INV_LN2


@njit(cache=True)
def state_entropy(m, clip):
    return entropy_bits(np.linalg.eigvalsh(m), clip)


@njit(cache=True)
def ic_value(kraus, kraus_h, rho, clip):
    s_out = state_entropy(apply_stack(kraus, kraus_h, rho), clip)
    s_env = state_entropy(env_matrix(kraus, rho), clip)
    return s_out - s_env


@njit(cache=True)
def rho_from_params(params, d):
    n = d * d
    l = np.empty((d, d), dtype=np.complex128)
    for r in range(d):
        for c in range(d):
            idx = r * d + c
            l[r, c] = complex(params[idx], params[n + idx])
    rho = np.dot(l, np.ascontiguousarray(l.conj().T))
    tr = np.trace(rho).real
    if tr <= 0.0:
        rho = np.eye(d, dtype=np.complex128)
        tr = float(d)
    return rho / tr


@njit(cache=True)
def ic_from_params(kraus, kraus_h, params, d, clip):
    return ic_value(kraus, kraus_h, rho_from_params(params, d), clip)


@njit(cache=True)
def ic_fd_gradient(kraus, kraus_h, params, d, step, clip):
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


@njit(cache=True)
def ensemble_from_params(params, m, d):
    w2 = np.empty(m)
    tot = 0.0
    for x in range(m):
        w2[x] = params[x] * params[x]
        tot += w2[x]
    probs = np.empty(m)
    if tot <= 0.0:
        for x in range(m):
            probs[x] = 1.0 / m
    else:
        for x in range(m):
            probs[x] = w2[x] / tot
    psi = np.empty((m, d), dtype=np.complex128)
    for x in range(m):
        nrm = 0.0
        for c in range(d):
            re = params[m + x * d + c]
            im = params[m + m * d + x * d + c]
            psi[x, c] = complex(re, im)
            nrm += re * re + im * im
        nrm = np.sqrt(nrm)
        if nrm <= 0.0:
            for c in range(d):
                psi[x, c] = 0.0
            psi[x, 0] = 1.0
        else:
            for c in range(d):
                psi[x, c] /= nrm
    return probs, psi


@njit(cache=True)
def holevo_from_params(kraus, kraus_h, params, m, d, clip):
    probs, psi = ensemble_from_params(params, m, d)
    dout = kraus.shape[1]
    mix = np.zeros((dout, dout), dtype=np.complex128)
    avg_entropy = 0.0
    rho = np.empty((d, d), dtype=np.complex128)
    for x in range(m):
        for a in range(d):
            for b in range(d):
                rho[a, b] = psi[x, a] * np.conj(psi[x, b])
        out = apply_stack(kraus, kraus_h, rho)
        mix += probs[x] * out
        avg_entropy += probs[x] * state_entropy(out, clip)
    return state_entropy(mix, clip) - avg_entropy


@njit(cache=True)
def holevo_fd_gradient(kraus, kraus_h, params, m, d, step, clip):
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


@njit(cache=True)
def output_entropy_from_params(kraus, kraus_h, params, d, clip):
    v = np.empty(d, dtype=np.complex128)
    nrm = 0.0
    for c in range(d):
        re = params[c]
        im = params[d + c]
        v[c] = complex(re, im)
        nrm += re * re + im * im
    nrm = np.sqrt(nrm)
    if nrm <= 0.0:
        for c in range(d):
            v[c] = 0.0
        v[0] = 1.0
    else:
        for c in range(d):
            v[c] /= nrm
    rho = np.empty((d, d), dtype=np.complex128)
    for a in range(d):
        for b in range(d):
            rho[a, b] = v[a] * np.conj(v[b])
    return state_entropy(apply_stack(kraus, kraus_h, rho), clip)


@njit(cache=True)
def output_entropy_fd_gradient(kraus, kraus_h, params, d, step, clip):
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
