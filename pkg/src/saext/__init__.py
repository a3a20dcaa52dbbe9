"""saext: self-adjoint extensions of 1D quantum operators, made executable.

Deficiency indices, von Neumann extension parameters mapped to physical
boundary conditions, the resulting spectra (bound, scattering, discretized),
the domain-induced scale anomaly, and numerical demonstrations of the
textbook operator paradoxes.
"""

from __future__ import annotations

from . import (
    anomaly,
    classical,
    core,
    deficiency,
    discrete,
    errors,
    extension,
    geometry,
    spectral,
)
from .anomaly import (
    AnomalyReport,
    anomaly_quadrature,
    apply_dilatation,
    classical_symmetry_check,
    heisenberg_correction,
)
from .classical import (
    DriftReport,
    MonomialObservable,
    PowerLawPotential,
    dilatation,
    dilatation_drift,
    dilatation_drift_report,
    hamiltonian_observable,
    integrate_flow,
    poisson_bracket,
    scale_condition_residual,
    total_time_derivative,
)
from .core import (
    BoundaryCondition,
    GridFunction,
    Interval,
    OperatorSpec,
    UnitSystem,
    boundary_form_hamiltonian,
    boundary_form_momentum,
    derivative,
    inner_product,
    norm,
)
from .deficiency import (
    DeficiencyReport,
    solve_deficiency,
    verify_deficiency_numerically,
)
from .discrete import (
    commuting_observables_demo,
    cosine_basis_momentum_matrix,
    eigenvector_commutator_demo,
    hermiticity_defect_demo,
    trace_commutator_check,
)
from .errors import SaextError
from .extension import (
    ExtensionParameter,
    assemble_domain_element,
    halfline_bc_from_unitary,
    momentum_bc_from_unitary,
)
from .geometry import (
    MeasureSpec,
    commutator_preservation_check,
    connection_condition,
    radial_symmetry_defect,
)
from .spectral import (
    BoundState,
    SpectrumResult,
    bound_state,
    bound_state_shooting,
    discretized_momentum_eigs,
    halfline_robin_spectrum,
    momentum_spectrum,
    reflection_coefficient,
    scattering_state,
    well_spectrum,
)

__version__ = "0.1.0"

__all__ = [
    "AnomalyReport",
    "BoundState",
    "BoundaryCondition",
    "DeficiencyReport",
    "DriftReport",
    "ExtensionParameter",
    "GridFunction",
    "Interval",
    "MeasureSpec",
    "MonomialObservable",
    "OperatorSpec",
    "PowerLawPotential",
    "SaextError",
    "SpectrumResult",
    "UnitSystem",
    "anomaly",
    "anomaly_quadrature",
    "apply_dilatation",
    "assemble_domain_element",
    "bound_state",
    "bound_state_shooting",
    "boundary_form_hamiltonian",
    "boundary_form_momentum",
    "classical",
    "classical_symmetry_check",
    "commutator_preservation_check",
    "commuting_observables_demo",
    "connection_condition",
    "core",
    "cosine_basis_momentum_matrix",
    "deficiency",
    "derivative",
    "dilatation",
    "dilatation_drift",
    "dilatation_drift_report",
    "discrete",
    "discretized_momentum_eigs",
    "eigenvector_commutator_demo",
    "errors",
    "extension",
    "geometry",
    "halfline_bc_from_unitary",
    "halfline_robin_spectrum",
    "hamiltonian_observable",
    "heisenberg_correction",
    "hermiticity_defect_demo",
    "inner_product",
    "integrate_flow",
    "momentum_bc_from_unitary",
    "momentum_spectrum",
    "norm",
    "poisson_bracket",
    "radial_symmetry_defect",
    "reflection_coefficient",
    "scale_condition_residual",
    "scattering_state",
    "solve_deficiency",
    "spectral",
    "total_time_derivative",
    "trace_commutator_check",
    "verify_deficiency_numerically",
    "well_spectrum",
]
