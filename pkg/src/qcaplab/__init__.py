"""qcaplab: a finite-dimensional quantum-channel capacity laboratory.

Channels as Kraus families with Choi/Stinespring conversions, entropic
functionals in bits, multi-restart capacity optimizers, a zoo of named
channels, and the quantum switch.  Numerical hot paths run on numba when
available; set QCAP_BACKEND=numpy to force the pure-numpy kernels.
"""

from .backend import NUMBA_ENABLED, backend_name
from .capacity import (
    CapacityEstimate,
    OptimizerOptions,
    SyndromeTable,
    depolarizing_ic_closed_form,
    depolarizing_threshold,
    maximize_coherent_information,
    maximize_holevo,
    multi_copy_ic,
    nonconvexity_two_shot,
    repetition_brute_force_oracle,
    repetition_coherent_information,
    repetition_syndrome_table,
    superactivation_search,
    tensor_power,
)
from .channels import (
    ChoiState,
    KrausChannel,
    apply_with_reference,
    assert_density_matrix,
    channel_from_json_dict,
    channel_to_json_dict,
    choi,
    complementary,
    compose,
    isometric_extension,
    kraus_from_choi,
    load_channel,
    save_channel,
    tensor,
    validate_cptp,
)
from .entropics import (
    Ensemble,
    MinOutputEntropyResult,
    coherent_information,
    entropy_of_exchange,
    holevo_information,
    min_output_entropy,
    purify,
    quantum_mutual_information,
    shannon_entropy,
    von_neumann_entropy,
)
from .numerics import DEFAULT_TOL, Tolerances
from .switch import (
    BottleneckReport,
    SwitchedChannel,
    bottleneck_comparison,
    control_state,
    quantum_switch,
    switched_cd_holevo_closed_form,
    switched_cd_output_formula,
    switched_eb_closed_form,
    switched_eb_effective,
)
from .zoo import (
    ChannelClassReport,
    classify_channel,
    completely_depolarizing,
    degradability_witness,
    depolarizing,
    eb_xy,
    erasure_50_two_qubit,
    flagged_mix,
    horodecki_4d,
    is_ppt,
    pauli_channel,
    parse_channel_spec,
    random_conjugate_pair,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "NUMBA_ENABLED",
    "backend_name",
    "DEFAULT_TOL",
    "Tolerances",
    "KrausChannel",
    "ChoiState",
    "validate_cptp",
    "assert_density_matrix",
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
    "OptimizerOptions",
    "CapacityEstimate",
    "SyndromeTable",
    "maximize_coherent_information",
    "maximize_holevo",
    "depolarizing_ic_closed_form",
    "depolarizing_threshold",
    "repetition_syndrome_table",
    "repetition_coherent_information",
    "repetition_brute_force_oracle",
    "multi_copy_ic",
    "tensor_power",
    "superactivation_search",
    "nonconvexity_two_shot",
    "ChannelClassReport",
    "depolarizing",
    "completely_depolarizing",
    "pauli_channel",
    "erasure_50_two_qubit",
    "horodecki_4d",
    "eb_xy",
    "flagged_mix",
    "random_conjugate_pair",
    "is_ppt",
    "degradability_witness",
    "classify_channel",
    "parse_channel_spec",
    "SwitchedChannel",
    "BottleneckReport",
    "control_state",
    "quantum_switch",
    "switched_cd_output_formula",
    "switched_cd_holevo_closed_form",
    "switched_eb_effective",
    "switched_eb_closed_form",
    "bottleneck_comparison",
]
