"""Gaussian coherent states as phase-space geometry.

Represents Gaussian pure states by their Fermi ellipsoids, quantum blobs and
microlocal pairs, converts freely between the four pictures, and computes
symplectic capacities (single values and Ekeland-Hofer sequences) together
with uncertainty-principle checks.
"""

__version__ = "0.1.0"

from .capacities import (
    CapacityReport,
    EHEntry,
    QuantumConditionReport,
    analyze_ellipsoid,
    analyze_state,
    cmax_product,
    eh_capacities,
    ellipsoid_capacity,
    fermi_capacity,
    quantum_condition,
)
from .geometry import (
    CarriedEllipsoid,
    Ellipsoid,
    LagrangianFrame,
    MicrolocalPair,
    QuantumBlob,
    blob_from_state,
    blob_inside_fermi,
    fermi_from_state,
    john_ellipsoid_of_pair,
    lagrangian_polar_dual,
    micro_from_state,
    oblique_projection_shapes,
    polar_dual,
    state_from_blob,
    state_from_fermi,
    state_from_micro,
)
from .matrices import (
    HermitianMatrix,
    PositiveDefiniteMatrix,
    SymmetricMatrix,
    eig_sym,
    is_psd,
    sym_sqrt,
)
from .states import (
    GaussianState,
    WignerData,
    apply_generator,
    fermi_matrix,
    fermi_symbol,
    wigner_covariance,
    wigner_eval,
)
from .symplectic import (
    PreIwasawaFactors,
    SymplecticMatrix,
    pre_iwasawa,
    random_symplectic,
    standard_generators,
    symplectic_eigenvalues,
    symplectic_form,
    verify_symplectic,
)

__all__ = [
    "__version__",
    "CapacityReport",
    "CarriedEllipsoid",
    "EHEntry",
    "Ellipsoid",
    "GaussianState",
    "HermitianMatrix",
    "LagrangianFrame",
    "MicrolocalPair",
    "PositiveDefiniteMatrix",
    "PreIwasawaFactors",
    "QuantumBlob",
    "QuantumConditionReport",
    "SymmetricMatrix",
    "SymplecticMatrix",
    "WignerData",
    "analyze_ellipsoid",
    "analyze_state",
    "apply_generator",
    "blob_from_state",
    "blob_inside_fermi",
    "cmax_product",
    "eh_capacities",
    "eig_sym",
    "ellipsoid_capacity",
    "fermi_capacity",
    "fermi_from_state",
    "fermi_matrix",
    "fermi_symbol",
    "is_psd",
    "john_ellipsoid_of_pair",
    "lagrangian_polar_dual",
    "micro_from_state",
    "oblique_projection_shapes",
    "polar_dual",
    "pre_iwasawa",
    "quantum_condition",
    "random_symplectic",
    "standard_generators",
    "state_from_blob",
    "state_from_fermi",
    "state_from_micro",
    "sym_sqrt",
    "symplectic_eigenvalues",
    "symplectic_form",
    "verify_symplectic",
    "wigner_covariance",
    "wigner_eval",
]
