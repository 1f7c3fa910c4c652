"""Entropy functionals: frozen values, route agreement, invariants."""

import numpy as np
import pytest

from qcaplab.channels import compose, validate_cptp
from qcaplab.entropics import (Ensemble, coherent_information,
                               entropy_of_exchange, holevo_information,
                               min_output_entropy, purify,
                               quantum_mutual_information, shannon_entropy,
                               von_neumann_entropy)
from qcaplab.numerics import (ket, maximally_mixed, partial_trace, proj,
                              random_density, rng_from_seed)
from qcaplab.zoo import depolarizing, eb_xy, erasure_50_two_qubit

# S(diag(5/8, 3/8)), frozen from -sum(p log2 p)
ENTROPY_5_8 = 0.954434002924965
# 1 - H2(1/15): Holevo quantity of dep(0.1) fed the uniform basis ensemble,
# whose conditional output entropy is H2(2*0.1/3) = H2(1/15)
CHI_DEP01_BASIS = 0.6466406649785786


def test_von_neumann_entropy_frozen_diagonal():
    rho = np.diag([5 / 8, 3 / 8]).astype(complex)
    assert abs(von_neumann_entropy(rho) - ENTROPY_5_8) < 1e-12


def test_von_neumann_entropy_pure_state_zero():
    rng = rng_from_seed(1)
    v = rng.standard_normal(3) + 1j * rng.standard_normal(3)
    v /= np.linalg.norm(v)
    assert abs(von_neumann_entropy(np.outer(v, v.conj()))) < 1e-10


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_von_neumann_entropy_maximally_mixed(d):
    assert abs(von_neumann_entropy(maximally_mixed(d)) - np.log2(d)) < 1e-12


def test_von_neumann_entropy_rejects_nondensity():
    with pytest.raises(ValueError):
        von_neumann_entropy(np.diag([0.7, 0.7]).astype(complex))
    with pytest.raises(ValueError):
        von_neumann_entropy(np.array([[0.5, 0.8], [0.8, 0.5]], dtype=complex))


def test_shannon_entropy_basics():
    assert abs(shannon_entropy([0.5, 0.5]) - 1.0) < 1e-14
    assert abs(shannon_entropy([1.0, 0.0])) < 1e-14
    assert abs(shannon_entropy([5 / 8, 3 / 8]) - ENTROPY_5_8) < 1e-12
    with pytest.raises(ValueError):
        shannon_entropy([0.5, 0.6])
    with pytest.raises(ValueError):
        shannon_entropy([1.2, -0.2])


def test_ensemble_validation_and_average():
    states = (proj(ket(2, 0)), proj(ket(2, 1)))
    ens = Ensemble(np.array([0.25, 0.75]), states)
    assert abs(ens.dim - 2) == 0
    assert np.allclose(ens.average_state(), np.diag([0.25, 0.75]), atol=1e-15)
    with pytest.raises(ValueError):
        Ensemble(np.array([0.5, 0.6]), states)
    with pytest.raises(ValueError):
        Ensemble(np.array([0.5, 0.5]), (proj(ket(2, 0)), proj(ket(3, 0))))


def test_holevo_frozen_depolarizing_basis_ensemble():
    ens = Ensemble(np.array([0.5, 0.5]), (proj(ket(2, 0)), proj(ket(2, 1))))
    chi = holevo_information(ens, depolarizing(0.1))
    assert abs(chi - CHI_DEP01_BASIS) < 1e-12


def test_holevo_identity_channel_basis_ensemble_is_one_bit():
    ident = validate_cptp([np.eye(2)], 2, 2, label="id")
    ens = Ensemble(np.array([0.5, 0.5]), (proj(ket(2, 0)), proj(ket(2, 1))))
    assert abs(holevo_information(ens, ident) - 1.0) < 1e-12


def test_holevo_rejects_dimension_mismatch():
    ens = Ensemble(np.array([1.0]), (maximally_mixed(3),))
    with pytest.raises(ValueError):
        holevo_information(ens, depolarizing(0.1))


def test_purify_marginals_recover_input():
    rng = rng_from_seed(9)
    for d in (2, 3, 4):
        rho = random_density(rng, d)
        psi = purify(rho)
        assert psi.shape == (d * d,)
        full = np.outer(psi, psi.conj())
        assert np.allclose(partial_trace(full, (d, d), keep=(0,)), rho,
                           atol=1e-10)
        env = partial_trace(full, (d, d), keep=(1,))
        assert np.allclose(np.sort(np.linalg.eigvalsh(env)),
                           np.sort(np.linalg.eigvalsh(rho)), atol=1e-10)


@pytest.mark.parametrize("make", [lambda: depolarizing(0.15), eb_xy,
                                  erasure_50_two_qubit])
def test_coherent_information_routes_agree(make):
    ch = make()
    rng = rng_from_seed(13)
    for _ in range(4):
        rho = random_density(rng, ch.dim_in)
        a = coherent_information(rho, ch, route="environment")
        b = coherent_information(rho, ch, route="purification")
        assert abs(a - b) < 1e-10


def test_coherent_information_rejects_unknown_route():
    with pytest.raises(ValueError):
        coherent_information(maximally_mixed(2), depolarizing(0.1), route="x")


def test_coherent_information_depolarizing_uniform_frozen():
    got = coherent_information(maximally_mixed(2), depolarizing(0.1))
    assert abs(got - 0.3725081563386031) < 1e-12


def test_entropy_of_exchange_is_complementary_output_entropy():
    from qcaplab.channels import complementary
    rng = rng_from_seed(17)
    for make in (lambda: depolarizing(0.2), eb_xy):
        ch = make()
        comp = complementary(ch)
        rho = random_density(rng, ch.dim_in)
        assert abs(entropy_of_exchange(rho, ch)
                   - von_neumann_entropy(comp(rho))) < 1e-10


def test_quantum_mutual_information_identity_channel():
    ident = validate_cptp([np.eye(2)], 2, 2, label="id")
    assert abs(quantum_mutual_information(maximally_mixed(2), ident) - 2.0) < 1e-12


def test_quantum_mutual_information_splits_into_ic_plus_entropy():
    rng = rng_from_seed(19)
    ch = depolarizing(0.25)
    rho = random_density(rng, 2)
    lhs = quantum_mutual_information(rho, ch)
    rhs = von_neumann_entropy(rho) + coherent_information(rho, ch)
    assert abs(lhs - rhs) < 1e-10


def test_min_output_entropy_identity_is_zero():
    ident = validate_cptp([np.eye(2)], 2, 2, label="id")
    res = min_output_entropy(ident, restarts=3, seed=0)
    assert res.value < 1e-7
    assert res.converged


def test_min_output_entropy_depolarizing_frozen():
    # optimum is any pure input; output spectrum (1 - 2q/3, 2q/3)
    res = min_output_entropy(depolarizing(0.1), restarts=4, seed=1)
    want = shannon_entropy([1 / 15, 14 / 15])
    assert abs(res.value - want) < 1e-9
    # argmin re-evaluates to the reported value
    ch = depolarizing(0.1)
    again = von_neumann_entropy(ch(res.argmin_state))
    assert abs(again - res.value) < 1e-9


def test_min_output_entropy_completely_depolarizing_is_log_d():
    from qcaplab.zoo import completely_depolarizing
    res = min_output_entropy(completely_depolarizing(2), restarts=2, seed=2)
    assert abs(res.value - 1.0) < 1e-9
