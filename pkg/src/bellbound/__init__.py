"""Entanglement and Bell-bound analysis of multi-qubit pure states."""

from .bell import (
    BellSettings,
    BoundReport,
    GammaSandwich,
    bell_bound,
    bell_operator_value,
    maximize_bell,
    theorem_gamma,
    theorem_state,
)
from .errors import BellBoundError
from .family7 import (
    ConcurrenceTriple,
    FamilyAngles,
    FamilyCoeffs,
    classify_critical_point,
    coeffs_from_angles,
    coeffs_from_concurrences,
    concurrences_from_coeffs,
    independence_locus_check,
    rtr_diagonal,
    state_from_coeffs,
    sweep,
)
from .pauli import RMatrix, r_matrix
from .state import (
    Bipartition,
    DensityMatrix,
    PureState,
    concurrence,
    flat_spectrum_report,
    generalized_concurrence,
    make_state,
    purity,
    reduced_density,
    renyi_entropy,
    von_neumann_entropy,
)
from .toric7 import build_hamiltonian, stabilizer_expectations, verify_toric_ground

__version__ = "0.1.0"

__all__ = [
    "BellSettings",
    "BoundReport",
    "GammaSandwich",
    "bell_bound",
    "bell_operator_value",
    "maximize_bell",
    "theorem_gamma",
    "theorem_state",
    "BellBoundError",
    "ConcurrenceTriple",
    "FamilyAngles",
    "FamilyCoeffs",
    "classify_critical_point",
    "coeffs_from_angles",
    "coeffs_from_concurrences",
    "concurrences_from_coeffs",
    "independence_locus_check",
    "rtr_diagonal",
    "state_from_coeffs",
    "sweep",
    "RMatrix",
    "r_matrix",
    "Bipartition",
    "DensityMatrix",
    "PureState",
    "concurrence",
    "flat_spectrum_report",
    "generalized_concurrence",
    "make_state",
    "purity",
    "reduced_density",
    "renyi_entropy",
    "von_neumann_entropy",
    "build_hamiltonian",
    "stabilizer_expectations",
    "verify_toric_ground",
]
