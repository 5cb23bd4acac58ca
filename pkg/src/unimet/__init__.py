"""Eigenphase-based measures on unitary matrices.

The package computes weighted sums of unitary eigenphases and the
distances, global-phase minimized variants, and non-commutativity
measures built from them; extracts minimal-spread generators and energy
statistics on the Hamiltonian side; and ships a reproducible Haar-measure
experiment harness with a structural property suite.
"""

__version__ = "0.1.0"

from .unitary import (  # noqa: E402
    TAU_UNITARY,
    EigenphaseSpectrum,
    UnitaryMatrix,
    WeightVector,
    adjoint,
    compose,
    eigenphase_spectrum,
    identity,
    kron,
    matrix_power,
    principal_arg,
    validate_unitary,
    weight_vector,
    wrap_angle,
)
from .haar import RNG_ALGORITHM, SeededRng, ginibre, haar_unitary, random_state  # noqa: E402
from .metrics import (  # noqa: E402
    PhaseShiftMinimum,
    PhaseShiftMinimizer,
    construct_equality_pair,
    emetric,
    enorm,
    group_commutator,
    lambda_basis,
    minimal_rotation_unitary,
    nemetric,
    nenorm,
    noncommutativity,
)
from .resources import (  # noqa: E402
    TAU_HERMITIAN,
    AmplitudeProfile,
    HermitianMatrix,
    MedianInterval,
    amplitude_profile,
    curvature_check_comm,
    derivative_check_enorm,
    evolution_unitary,
    generalized_spectral_norm,
    generator_from_unitary,
    mean_abs_dev_from_median,
    median_energy,
    random_hermitian,
    rearrangement_max,
    resource_R,
    validate_hermitian,
)
from .matrixio import (  # noqa: E402
    load_hermitian,
    load_matrix,
    load_unitary,
    matrix_from_dict,
    matrix_to_dict,
    write_matrix,
)
from .experiments import (  # noqa: E402
    ExperimentConfig,
    ScatterRecord,
    ScatterResult,
    records_to_csv,
    run_scatter,
)
from .verification import (  # noqa: E402
    INVARIANTS,
    SuiteReport,
    invariant_names,
    replay_counterexample,
    run_property_suite,
)

__all__ = [
    "TAU_UNITARY",
    "TAU_HERMITIAN",
    "RNG_ALGORITHM",
    "UnitaryMatrix",
    "EigenphaseSpectrum",
    "WeightVector",
    "PhaseShiftMinimum",
    "PhaseShiftMinimizer",
    "SeededRng",
    "HermitianMatrix",
    "AmplitudeProfile",
    "MedianInterval",
    "ExperimentConfig",
    "ScatterRecord",
    "ScatterResult",
    "SuiteReport",
    "INVARIANTS",
    "wrap_angle",
    "principal_arg",
    "validate_unitary",
    "identity",
    "eigenphase_spectrum",
    "matrix_power",
    "adjoint",
    "compose",
    "kron",
    "weight_vector",
    "ginibre",
    "haar_unitary",
    "random_state",
    "random_hermitian",
    "lambda_basis",
    "enorm",
    "emetric",
    "nenorm",
    "nemetric",
    "noncommutativity",
    "group_commutator",
    "construct_equality_pair",
    "minimal_rotation_unitary",
    "validate_hermitian",
    "amplitude_profile",
    "median_energy",
    "mean_abs_dev_from_median",
    "rearrangement_max",
    "generator_from_unitary",
    "evolution_unitary",
    "resource_R",
    "generalized_spectral_norm",
    "derivative_check_enorm",
    "curvature_check_comm",
    "matrix_to_dict",
    "matrix_from_dict",
    "write_matrix",
    "load_matrix",
    "load_unitary",
    "load_hermitian",
    "records_to_csv",
    "run_scatter",
    "invariant_names",
    "run_property_suite",
    "replay_counterexample",
]
