"""Support recovery of sparse signals from one-bit measurements.

The package builds list-disjunct and list union-free designs, turns them
into sensing matrices, and decodes supports from sign measurements.
"""

from .analysis import (
    BudgetQuery,
    adversarial_pair,
    cauchy_root_radius,
    descartes_positive_root_bound,
    measurement_budget,
)
from .designs import (
    BinaryDesign,
    DesignParams,
    construct_list_disjunct,
    construct_list_union_free,
    verify_list_disjunct,
    verify_list_union_free,
)
from .harness import ExperimentConfig, SignalFamily, generate_signal_family, run_experiment
from .recovery import (
    RecoveryReport,
    decode_approximate,
    decode_l0_bruteforce,
    decode_superset,
    decode_superset_bounded_range,
    decode_superset_same_sign,
    superset_to_approximate,
)
from .sensing import (
    SensingMatrix,
    build_gaussian_matrix,
    build_thm1_matrix,
    build_thm3_matrix,
    build_thm4_matrix,
    build_thm5_matrix,
    measure,
)
from .signals import SparseSignal

__version__ = "0.1.0"

__all__ = [
    "ExperimentConfig",
    "SignalFamily",
    "generate_signal_family",
    "run_experiment",
    "BinaryDesign",
    "BudgetQuery",
    "DesignParams",
    "RecoveryReport",
    "SensingMatrix",
    "SparseSignal",
    "adversarial_pair",
    "build_gaussian_matrix",
    "build_thm1_matrix",
    "build_thm3_matrix",
    "build_thm4_matrix",
    "build_thm5_matrix",
    "cauchy_root_radius",
    "construct_list_disjunct",
    "construct_list_union_free",
    "decode_approximate",
    "decode_l0_bruteforce",
    "decode_superset",
    "decode_superset_bounded_range",
    "decode_superset_same_sign",
    "descartes_positive_root_bound",
    "measure",
    "measurement_budget",
    "superset_to_approximate",
    "verify_list_disjunct",
    "verify_list_union_free",
]
