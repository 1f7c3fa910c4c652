"""Kernel backend parity and environment-driven dispatch."""

import os
import subprocess
import sys

import numpy as np
import pytest

from qcaplab import _kernels_numba as knb
from qcaplab import _kernels_numpy as knp
from qcaplab.numerics import rng_from_seed
from qcaplab.zoo import depolarizing, erasure_50_two_qubit, horodecki_4d

CLIP = 1e-12

CHANNELS = [depolarizing(0.1), horodecki_4d(0.5), erasure_50_two_qubit()]


def _params(rng, d):
    return rng.standard_normal(2 * d * d)


@pytest.mark.parametrize("ch", CHANNELS, ids=lambda c: c.label)
def test_ic_objective_parity(ch):
    kraus, kraus_h = ch.stacks()
    rng = rng_from_seed(100)
    for _ in range(5):
        p = _params(rng, ch.dim_in)
        a = knp.ic_from_params(kraus, kraus_h, p, ch.dim_in, CLIP)
        b = knb.ic_from_params(kraus, kraus_h, p, ch.dim_in, CLIP)
        assert abs(a - b) < 1e-12


@pytest.mark.parametrize("ch", CHANNELS, ids=lambda c: c.label)
def test_ic_gradient_parity(ch):
    kraus, kraus_h = ch.stacks()
    rng = rng_from_seed(101)
    p = _params(rng, ch.dim_in)
    a = knp.ic_fd_gradient(kraus, kraus_h, p, ch.dim_in, 1e-5, CLIP)
    b = knb.ic_fd_gradient(kraus, kraus_h, p, ch.dim_in, 1e-5, CLIP)
    assert np.max(np.abs(a - b)) < 1e-10


def test_holevo_parity():
    ch = depolarizing(0.2)
    kraus, kraus_h = ch.stacks()
    rng = rng_from_seed(102)
    m, d = 4, 2
    for _ in range(5):
        p = rng.standard_normal(m + 2 * m * d)
        a = knp.holevo_from_params(kraus, kraus_h, p, m, d, CLIP)
        b = knb.holevo_from_params(kraus, kraus_h, p, m, d, CLIP)
        assert abs(a - b) < 1e-12


def test_output_entropy_parity():
    ch = horodecki_4d(0.3)
    kraus, kraus_h = ch.stacks()
    rng = rng_from_seed(103)
    for _ in range(5):
        p = rng.standard_normal(2 * ch.dim_in)
        a = knp.output_entropy_from_params(kraus, kraus_h, p, ch.dim_in, CLIP)
        b = knb.output_entropy_from_params(kraus, kraus_h, p, ch.dim_in, CLIP)
        assert abs(a - b) < 1e-12


def test_env_matrix_parity():
    ch = erasure_50_two_qubit()
    kraus, kraus_h = ch.stacks()
    rng = rng_from_seed(104)
    rho = knp.rho_from_params(rng.standard_normal(32), 4)
    a = knp.env_matrix(kraus, rho)
    b = knb.env_matrix(kraus, rho)
    assert np.max(np.abs(a - b)) < 1e-13


def test_state_entropy_parity():
    rng = rng_from_seed(105)
    rho = knp.rho_from_params(rng.standard_normal(18), 3)
    assert abs(knp.state_entropy(rho, CLIP) - knb.state_entropy(rho, CLIP)) < 1e-13


def test_ensemble_from_params_parity():
    rng = rng_from_seed(106)
    m, d = 3, 2
    p = rng.standard_normal(m + 2 * m * d)
    pa, va = knp.ensemble_from_params(p, m, d)
    pb, vb = knb.ensemble_from_params(p, m, d)
    assert np.max(np.abs(pa - pb)) < 1e-14
    assert np.max(np.abs(np.asarray(va) - np.asarray(vb))) < 1e-14


def test_backends_share_public_interface():
    names = lambda mod: {n for n in dir(mod) if not n.startswith("_")}
    missing = {"apply_stack", "env_matrix", "state_entropy", "ic_value",
               "rho_from_params", "ic_from_params", "ic_fd_gradient",
               "ensemble_from_params", "holevo_from_params",
               "holevo_fd_gradient", "output_entropy_from_params",
               "output_entropy_fd_gradient", "entropy_bits"}
    assert missing <= names(knp)
    assert missing <= names(knb)


def _backend_in_subprocess(env_value):
    env = dict(os.environ)
    if env_value is None:
        env.pop("QCAP_BACKEND", None)
    else:
        env["QCAP_BACKEND"] = env_value
    out = subprocess.run(
        [sys.executable, "-c",
         "import qcaplab; print(qcaplab.backend_name())"],
        capture_output=True, text=True, env=env)
    return out


def test_dispatch_numpy():
    out = _backend_in_subprocess("numpy")
    assert out.returncode == 0
    assert out.stdout.strip() == "numpy"


def test_dispatch_numba():
    out = _backend_in_subprocess("numba")
    assert out.returncode == 0
    assert out.stdout.strip() == "numba"


def test_dispatch_rejects_unknown():
    out = _backend_in_subprocess("cuda")
    assert out.returncode != 0
    assert "QCAP_BACKEND" in out.stderr
