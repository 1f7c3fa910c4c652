"""Quantum switch: channels in a coherent superposition of causal orders.

The switch of two same-dimension channels N, M with a control qubit has
Kraus operators S_ij = N_i M_j (x) |0><0|_c + M_j N_i (x) |1><1|_c acting on
system (x) control.  With the control pinned to a fixed state rho_c the
effective channel maps the d-dim system input to the 2d-dim system-control
output.  This module builds that channel, the closed forms it must match
for the completely depolarizing and entanglement-breaking factor pairs, and
a placement comparison (sequential orders vs switch).
"""

from dataclasses import dataclass

import numpy as np

from .backend import kernels
from .channels import (
    KrausChannel,
    assert_density_matrix,
    choi,
    compose,
    kraus_from_choi,
    validate_cptp,
)
from .entropics import Ensemble, coherent_information, holevo_information
from .numerics import DEFAULT_TOL, Tolerances, ket, proj
from .zoo import eb_xy

__all__ = [
    "SwitchedChannel",
    "BottleneckReport",
    "control_state",
    "quantum_switch",
    "switched_cd_output_formula",
    "switched_cd_holevo_closed_form",
    "switched_cd_min_output_spectrum",
    "switched_eb_effective",
    "switched_eb_closed_form",
    "bottleneck_comparison",
]


@dataclass(frozen=True)
class SwitchedChannel:
    """Switch of two channels: full supermap output plus the pinned channel.

    base holds the Kraus family {S_ij} on system (x) control (input and
    output dimension 2d); effective is the d -> 2d channel obtained by
    feeding the fixed control state, with its Kraus family compressed to
    canonical rank when the raw pair count is redundant.
    """

    base: KrausChannel
    effective: KrausChannel
    n_kraus_pairs: int
    control: np.ndarray
    factors: tuple


def control_state(p: float) -> np.ndarray:
    """Control qubit sqrt(p)|0> + sqrt(1-p)|1> as a density matrix."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"control parameter must be in [0, 1], got {p}")
    return proj(np.sqrt(p) * ket(2, 0) + np.sqrt(1.0 - p) * ket(2, 1))


def quantum_switch(n: KrausChannel, m: KrausChannel, rho_c: np.ndarray,
                   tol: Tolerances = DEFAULT_TOL) -> SwitchedChannel:
    """Build the switched channel of n and m with the control in rho_c.

    The effective map is rho -> sum_ij S_ij (rho (x) rho_c) S_ij^dag with
    output on system (x) control.  Its action is independent of the Kraus
    representations chosen for the factors.
    """
    if n.dim_in != n.dim_out or m.dim_in != m.dim_out or n.dim_in != m.dim_in:
        raise ValueError(
            f"switch factors must share one square dimension, got "
            f"{n.dim_in}x{n.dim_out} and {m.dim_in}x{m.dim_out}"
        )
    rho_c = assert_density_matrix(rho_c, tol=tol, what="control state")
    if rho_c.shape[0] != 2:
        raise ValueError(f"control must be a qubit state, got dim {rho_c.shape[0]}")
    d = n.dim_in
    p0 = np.zeros((2, 2), dtype=np.complex128)
    p0[0, 0] = 1.0
    p1 = np.zeros((2, 2), dtype=np.complex128)
    p1[1, 1] = 1.0
    pairs = []
    for ni in n.kraus:
        for mj in m.kraus:
            pairs.append(np.kron(ni @ mj, p0) + np.kron(mj @ ni, p1))
    label = f"switch({n.label or 'n'};{m.label or 'm'})"
    base = validate_cptp(pairs, 2 * d, 2 * d, label=label + ":base", tol=tol)

    vals, vecs = np.linalg.eigh(rho_c)
    effective_ops = []
    for lam, v in zip(vals, vecs.T):
        if lam <= tol.eig_clip:
            continue
        pin = np.kron(np.eye(d, dtype=np.complex128), v.reshape(2, 1))
        effective_ops += [np.sqrt(lam) * (s @ pin) for s in pairs]
    effective = validate_cptp(effective_ops, d, 2 * d, label=label, tol=tol)
    if effective.n_kraus > effective.dim_in * effective.dim_out:
        effective = kraus_from_choi(choi(effective), tol=tol, label=label)
    return SwitchedChannel(
        base=base,
        effective=effective,
        n_kraus_pairs=len(pairs),
        control=rho_c,
        factors=(n, m),
    )


def switched_cd_output_formula(rho: np.ndarray, p: float, d: int,
                               tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Closed-form switch output for two completely depolarizing factors.

    I/d (x) (p|0><0| + (1-p)|1><1|) + rho/d^2 (x) sqrt(p(1-p)) (|0><1|+|1><0|):
    the input survives only in the control-coherence block, attenuated by
    1/d^2.
    """
    rho = assert_density_matrix(rho, tol=tol)
    if rho.shape[0] != d:
        raise ValueError(f"state dimension {rho.shape[0]} does not match d={d}")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"control parameter must be in [0, 1], got {p}")
    diag = np.diag([p, 1.0 - p]).astype(np.complex128)
    offdiag = np.zeros((2, 2), dtype=np.complex128)
    offdiag[0, 1] = offdiag[1, 0] = np.sqrt(p * (1.0 - p))
    return (np.kron(np.eye(d, dtype=np.complex128) / d, diag)
            + np.kron(rho / (d * d), offdiag))


def switched_cd_min_output_spectrum(d: int) -> np.ndarray:
    """Output spectrum of the switched completely depolarizing pair at p = 1/2.

    For any pure input: a coherence-split pair (d +/- 1)/(2 d^2) plus
    2(d-1) flat levels at 1/(2d).
    """
    if d < 2:
        raise ValueError(f"dimension must be at least 2, got {d}")
    levels = [(d + 1) / (2.0 * d * d), (d - 1) / (2.0 * d * d)]
    levels += [1.0 / (2.0 * d)] * (2 * d - 2)
    return np.array(levels)


def switched_cd_holevo_closed_form(d: int) -> float:
    """Holevo information of the switched completely depolarizing pair.

    log2(d) + S(rho_c~) - H_min at p = 1/2, with rho_c~ the dressed control
    of eigenvalues 1/2 +/- 1/(2 d^2) and H_min the entropy of the pure-input
    output spectrum.  Strictly positive for every d >= 2.
    """
    if d < 2:
        raise ValueError(f"dimension must be at least 2, got {d}")
    lam = 0.5 + 1.0 / (2.0 * d * d)
    dressed = np.array([lam, 1.0 - lam])
    h_min = kernels.entropy_bits(switched_cd_min_output_spectrum(d), 1e-15)
    return float(np.log2(d) + kernels.entropy_bits(dressed, 1e-15) - h_min)


def switched_eb_effective(rho: np.ndarray,
                          tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Constructed-switch output for two {X, Y} mixture factors at p = 1/2."""
    sw = quantum_switch(eb_xy(tol=tol), eb_xy(tol=tol), control_state(0.5), tol=tol)
    return sw.effective(rho)


def switched_eb_closed_form(rho: np.ndarray,
                            tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """(1/2) rho (x) |+><+| + (1/2) Z rho Z (x) |-><-|.

    The switched {X, Y} mixture collapses to a flagged mixture of the
    identity and the phase flip: reading the control in the +/- basis hands
    the receiver a perfect copy in either branch, so the coherent
    information reaches 1 full bit.
    """
    rho = assert_density_matrix(rho, tol=tol)
    if rho.shape[0] != 2:
        raise ValueError(f"need a qubit state, got dim {rho.shape[0]}")
    z = np.diag([1.0, -1.0]).astype(np.complex128)
    plus = proj((ket(2, 0) + ket(2, 1)) / np.sqrt(2.0))
    minus = proj((ket(2, 0) - ket(2, 1)) / np.sqrt(2.0))
    return 0.5 * np.kron(rho, plus) + 0.5 * np.kron(z @ rho @ z, minus)


@dataclass(frozen=True)
class BottleneckReport:
    """Placement comparison at fixed probes: one channel order per row.

    Probes: coherent information at the maximally mixed input, Holevo
    information of the uniform computational-basis ensemble.  The violation
    flags mark a switched value exceeding both sequential orders, the
    signature of causal activation.
    """

    ic_n_single: float
    ic_m_single: float
    ic_m_then_n: float
    ic_n_then_m: float
    ic_switched: float
    chi_n_single: float
    chi_m_single: float
    chi_m_then_n: float
    chi_n_then_m: float
    chi_switched: float
    quantum_violation: bool
    classical_violation: bool


def _basis_ensemble(d: int) -> Ensemble:
    return Ensemble(
        probs=np.full(d, 1.0 / d),
        states=tuple(proj(ket(d, i)) for i in range(d)),
    )


def bottleneck_comparison(n: KrausChannel, m: KrausChannel, rho: np.ndarray,
                          p: float = 0.5,
                          tol: Tolerances = DEFAULT_TOL) -> BottleneckReport:
    """Compare channel placements: single uses, both orders, the switch.

    Evaluates deterministic probes (no optimizer): I_c at the supplied
    input and chi of the uniform basis ensemble, for n alone, m alone,
    both sequential orders, and the switched channel with control
    parameter p.
    """
    if n.dim_in != n.dim_out or m.dim_in != m.dim_out or n.dim_in != m.dim_in:
        raise ValueError(
            f"placement comparison needs square same-dimension factors, got "
            f"{n.dim_in}x{n.dim_out} and {m.dim_in}x{m.dim_out}"
        )
    d = n.dim_in
    rho = assert_density_matrix(rho, tol=tol)
    if rho.shape[0] != d:
        raise ValueError(
            f"probe state dimension {rho.shape[0]} does not match {d}")
    m_then_n = compose(n, m)
    n_then_m = compose(m, n)
    switched = quantum_switch(n, m, control_state(p), tol=tol).effective
    ens = _basis_ensemble(d)

    def ic(ch):
        return coherent_information(rho, ch, tol=tol)

    def chi(ch):
        return holevo_information(ens, ch, tol=tol)

    ic_mn, ic_nm, ic_sw = ic(m_then_n), ic(n_then_m), ic(switched)
    chi_mn, chi_nm, chi_sw = chi(m_then_n), chi(n_then_m), chi(switched)
    margin = 1e-9
    return BottleneckReport(
        ic_n_single=ic(n),
        ic_m_single=ic(m),
        ic_m_then_n=ic_mn,
        ic_n_then_m=ic_nm,
        ic_switched=ic_sw,
        chi_n_single=chi(n),
        chi_m_single=chi(m),
        chi_m_then_n=chi_mn,
        chi_n_then_m=chi_nm,
        chi_switched=chi_sw,
        quantum_violation=bool(ic_sw > ic_mn + margin and ic_sw > ic_nm + margin),
        classical_violation=bool(chi_sw > chi_mn + margin
                                 and chi_sw > chi_nm + margin),
    )
