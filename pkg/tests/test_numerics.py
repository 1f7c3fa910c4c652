"""Linear-algebra substrate: states, partial trace, seeded randomness."""

import numpy as np
import pytest

from qcaplab.numerics import (DEFAULT_TOL, Tolerances, X, Y, Z, eigh, ginibre,
                              haar_unitary, hermitize, ket, kron,
                              max_entangled, maximally_mixed, partial_trace,
                              proj, random_density, random_pure, rng_from_seed,
                              spawn_rngs)


def test_tolerance_defaults():
    tol = Tolerances()
    assert tol.hermiticity_tol == 1e-10
    assert tol.psd_tol == 1e-10
    assert tol.cptp_tol == 1e-9
    assert tol.eig_clip == 1e-12


def test_ket_and_proj():
    v = ket(4, 2)
    assert v.shape == (4,)
    assert v[2] == 1.0 and abs(np.linalg.norm(v) - 1.0) < 1e-15
    p = proj(v)
    assert np.allclose(p, p @ p)
    assert abs(np.trace(p) - 1.0) < 1e-15


def test_maximally_mixed_and_entangled():
    pi = maximally_mixed(3)
    assert np.allclose(pi, np.eye(3) / 3)
    phi = max_entangled(2)
    assert abs(np.trace(phi) - 1.0) < 1e-14
    # both marginals of the maximally entangled state are maximally mixed
    for keep in (0, 1):
        marg = partial_trace(phi, (2, 2), (keep,))
        assert np.allclose(marg, np.eye(2) / 2, atol=1e-14)


def test_partial_trace_factorizes_products():
    rng = rng_from_seed(11)
    for _ in range(10):
        a = random_density(rng, 2)
        b = random_density(rng, 3)
        joint = kron(a, b)
        assert np.allclose(partial_trace(joint, (2, 3), (0,)), a, atol=1e-13)
        assert np.allclose(partial_trace(joint, (2, 3), (1,)), b, atol=1e-13)


def test_partial_trace_preserves_trace_and_hermiticity():
    rng = rng_from_seed(5)
    rho = random_density(rng, 6)
    marg = partial_trace(rho, (2, 3), (1,))
    assert abs(np.trace(marg) - 1.0) < 1e-13
    assert np.allclose(marg, marg.conj().T, atol=1e-13)


def test_partial_trace_three_factor():
    rng = rng_from_seed(7)
    a, b, c = (random_density(rng, 2) for _ in range(3))
    joint = kron(a, kron(b, c))
    got = partial_trace(joint, (2, 2, 2), (0, 2))
    assert np.allclose(got, kron(a, c), atol=1e-13)


def test_eigh_returns_ascending_real_spectrum():
    rng = rng_from_seed(3)
    h = hermitize(ginibre(rng, 4, 4))
    vals, vecs = eigh(h)
    assert np.all(np.diff(vals) >= 0)
    assert np.allclose((vecs * vals) @ vecs.conj().T, h, atol=1e-12)


def test_hermitize_idempotent():
    rng = rng_from_seed(9)
    m = ginibre(rng, 5, 5)
    h = hermitize(m)
    assert np.allclose(h, h.conj().T)
    assert np.allclose(hermitize(h), h)


def test_paulis_square_to_identity():
    for p in (X, Y, Z):
        assert np.allclose(p @ p, np.eye(2))


def test_haar_unitary_is_unitary():
    rng = rng_from_seed(21)
    for d in (2, 3, 5):
        u = haar_unitary(rng, d)
        assert np.allclose(u @ u.conj().T, np.eye(d), atol=1e-12)


def test_random_density_is_density():
    rng = rng_from_seed(13)
    for d in (2, 4):
        rho = random_density(rng, d)
        assert abs(np.trace(rho) - 1.0) < 1e-13
        assert np.allclose(rho, rho.conj().T, atol=1e-13)
        assert np.linalg.eigvalsh(rho)[0] > -1e-13


def test_random_pure_normalized():
    rng = rng_from_seed(17)
    v = random_pure(rng, 6)
    assert abs(np.linalg.norm(v) - 1.0) < 1e-13


def test_rng_from_seed_reproducible():
    a = rng_from_seed(42).standard_normal(8)
    b = rng_from_seed(42).standard_normal(8)
    assert np.array_equal(a, b)


def test_spawn_rngs_prefix_property():
    # the first k streams do not depend on how many streams are spawned
    short = [r.standard_normal(4) for r in spawn_rngs(7, 2)]
    long = [r.standard_normal(4) for r in spawn_rngs(7, 5)]
    for a, b in zip(short, long):
        assert np.array_equal(a, b)


def test_spawn_rngs_streams_differ():
    a, b = spawn_rngs(0, 2)
    assert not np.array_equal(a.standard_normal(6), b.standard_normal(6))


def test_partial_trace_rejects_bad_dims():
    with pytest.raises(ValueError):
        partial_trace(np.eye(6) / 6, (2, 2), (0,))
