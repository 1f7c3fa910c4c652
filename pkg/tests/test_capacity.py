"""Capacity optimizers, closed forms, repetition analysis, activation search."""

import numpy as np
import pytest

from qcaplab.capacity import (CapacityEstimate, OptimizerOptions,
                              depolarizing_ic_closed_form,
                              depolarizing_threshold, maximize_coherent_information,
                              maximize_holevo, multi_copy_ic,
                              nonconvexity_two_shot,
                              repetition_brute_force_oracle,
                              repetition_coherent_information,
                              repetition_syndrome_table, superactivation_inits,
                              superactivation_search, tensor_power)
from qcaplab.channels import validate_cptp
from qcaplab.entropics import coherent_information, holevo_information
from qcaplab.entropics import assert_density_matrix
from qcaplab.numerics import maximally_mixed, random_density, rng_from_seed
from qcaplab.zoo import depolarizing

# bisection root of the single-use rate, frozen
THRESHOLD = 0.18928962491509083

# repetition-code rates frozen from the syndrome decomposition; each agrees
# with the 8-dimensional brute-force evaluation to ~1e-15
REPETITION_FROZEN = {
    0.05: 0.6237698383222,
    0.1: 0.3627999965068935,
    0.15: 0.14897689298181943,
    0.19: 0.0004559903775950905,
    0.2: -0.03418692942451189,
}


def test_optimizer_options_validation():
    with pytest.raises(ValueError):
        OptimizerOptions(restarts=0)
    with pytest.raises(ValueError):
        OptimizerOptions(max_iters=0)
    with pytest.raises(ValueError):
        OptimizerOptions(step_init=-0.1)


def test_closed_form_endpoints_and_value():
    assert abs(depolarizing_ic_closed_form(0.0) - 1.0) < 1e-15
    # clamped to the zero floor past the threshold
    assert depolarizing_ic_closed_form(0.25) == 0.0
    assert abs(depolarizing_ic_closed_form(0.1) - 0.3725081563386031) < 1e-12
    for bad in (-0.01, 1.1):
        with pytest.raises(ValueError):
            depolarizing_ic_closed_form(bad)


def test_threshold_frozen_and_bracketed():
    got = depolarizing_threshold()
    assert abs(got - THRESHOLD) < 1e-9
    assert 0.1888 < got < 0.1898
    assert depolarizing_ic_closed_form(got - 1e-4) > 0
    assert depolarizing_ic_closed_form(got + 1e-4) == 0.0


def test_syndrome_table_structure():
    table = repetition_syndrome_table(0.1)
    assert abs(float(np.sum(table.probs)) - 1.0) < 1e-12
    assert np.all(table.probs >= -1e-15)
    assert table.residuals.shape == (len(table.syndromes), 4)
    for row in table.residuals:
        assert abs(float(np.sum(row)) - 1.0) < 1e-12


def test_syndrome_table_noiseless_limit():
    table = repetition_syndrome_table(0.0)
    assert len(table.syndromes) == 1
    assert table.syndromes[0] == (0, 0)
    assert np.allclose(table.residuals[0], [1.0, 0.0, 0.0, 0.0], atol=1e-15)


@pytest.mark.parametrize("q", [0.05, 0.12, 0.19])
def test_syndrome_rate_matches_brute_force(q):
    fast = repetition_coherent_information(q)
    slow = repetition_brute_force_oracle(q)
    assert abs(float(fast) - slow) < 1e-10


def test_repetition_frozen_values_and_rate_field():
    for q, want in REPETITION_FROZEN.items():
        res = repetition_coherent_information(q)
        assert abs(float(res) - want) < 1e-12
        assert abs(res.rate - want / 3.0) < 1e-12


def test_repetition_outlives_single_use_threshold():
    # at q = 0.19 the single-use rate has hit its zero floor but the
    # three-use block still protects a residual amount
    assert 0.19 > depolarizing_threshold()
    assert depolarizing_ic_closed_form(0.19) == 0.0
    assert float(repetition_coherent_information(0.19)) > 0


def test_repetition_rejects_out_of_domain():
    for bad in (-0.1, 1.2):
        with pytest.raises(ValueError):
            repetition_coherent_information(bad)


def test_maximize_coherent_information_depolarizing():
    opts = OptimizerOptions(restarts=4, max_iters=500, seed=3)
    est = maximize_coherent_information(depolarizing(0.1), opts)
    assert isinstance(est, CapacityEstimate)
    assert abs(est.value - depolarizing_ic_closed_form(0.1)) < 1e-6
    # the reported state is feasible and re-evaluates to the reported value
    assert_density_matrix(est.argmax_state, what="argmax")
    again = coherent_information(est.argmax_state, depolarizing(0.1))
    assert abs(again - est.value) < 1e-9


def test_maximize_coherent_information_restart_monotonicity():
    ch = depolarizing(0.15)
    lo = maximize_coherent_information(
        ch, OptimizerOptions(restarts=2, max_iters=300, seed=5))
    hi = maximize_coherent_information(
        ch, OptimizerOptions(restarts=6, max_iters=300, seed=5))
    assert hi.value >= lo.value - 1e-12


def test_maximize_holevo_identity_channel():
    ident = validate_cptp([np.eye(2)], 2, 2, label="id")
    est = maximize_holevo(ident, m=2,
                          opts=OptimizerOptions(restarts=3, max_iters=400, seed=1))
    assert abs(est.value - 1.0) < 1e-6
    again = holevo_information(est.argmax_state, ident)
    assert abs(again - est.value) < 1e-9


def test_maximize_holevo_rejects_degenerate_ensemble():
    with pytest.raises(ValueError):
        maximize_holevo(depolarizing(0.1), m=1)


def test_multi_copy_ic_beats_or_matches_single():
    opts = OptimizerOptions(restarts=3, max_iters=300, seed=7)
    single = maximize_coherent_information(depolarizing(0.1), opts)
    pair = multi_copy_ic(depolarizing(0.1), 2, opts)
    assert pair.value >= single.value - 1e-9


def test_multi_copy_ic_rejects_oversized_block():
    with pytest.raises(ValueError):
        multi_copy_ic(depolarizing(0.1), 7)


def test_tensor_power_shapes_and_guard():
    p3 = tensor_power(depolarizing(0.1), 3)
    assert (p3.dim_in, p3.dim_out) == (8, 8)
    assert p3.cptp_residual < 1e-12
    with pytest.raises(ValueError):
        tensor_power(depolarizing(0.1), 0)


def test_nonconvexity_identity_on_random_inputs():
    rng = rng_from_seed(23)
    for _ in range(3):
        p = float(rng.uniform(0.05, 0.95))
        rho = random_density(rng, 16)
        direct, expansion = nonconvexity_two_shot(p, rho)
        assert abs(direct - expansion) < 1e-12


def test_nonconvexity_rejects_out_of_range_weight():
    with pytest.raises(ValueError):
        nonconvexity_two_shot(1.5, maximally_mixed(16))


def test_superactivation_inits_are_densities():
    inits = superactivation_inits()
    assert len(inits) >= 8
    for rho in inits:
        assert rho.shape == (16, 16)
        assert_density_matrix(rho, what="init")


def test_superactivation_search_reports_honestly():
    opts = OptimizerOptions(restarts=2, max_iters=120, seed=2)
    report = superactivation_search([0.5], opts)
    assert len(report.entries) == 1
    entry = report.entries[0]
    assert entry.q == 0.5
    # single-copy ceilings hold at this parameter
    assert entry.horodecki_ceiling < 1e-6
    assert entry.erasure_ceiling < 1e-6
    # the printed operator family never passes the partial-transpose test,
    # so the report must say so rather than certify
    assert not entry.ppt
    assert entry.ppt_min_eig < 0
    assert not report.best_certified
    assert report.best_q == 0.5
    assert report.best_value == entry.joint.value
