"""Bound states of neutral atoms in a static screened Coulomb potential.

Third-order analytic shell binding energies, the radial wavefunction
machinery behind them, a direct Numerov eigensolver for cross-validation,
bundled reference tables, and a command-line front end.
"""

from .perturbation import (
    AtomicSystem,
    EnergyBreakdown,
    QuantumState,
    ScreeningLaw,
    ScreeningModel,
    UnitSystem,
    coulomb_energy,
    energy_breakdown,
    first_order_shift,
    screening_delta,
    second_order_shift,
    third_order_shift,
    to_kev,
    total_energy,
)
from .wavefunctions import (
    CoulombRadial,
    LaguerreSpec,
    ModeratedRadial,
    QuadratureError,
    SuperpotentialPoly,
    correction_via_quadrature,
    coulomb_chi,
    full_wavefunction,
    laguerre_eval,
    moderated_radial,
    moderating_u,
    superpotential_w1,
    superpotential_w2,
)
from .oracle import (
    ComparisonRecord,
    NoBoundState,
    NonConvergence,
    OracleResult,
    RadialGrid,
    breakdown_report,
    numerov_backend,
    solve_bound_state,
)
from .refdata import (
    ComparisonReport,
    DuplicateKey,
    MissingReference,
    ParseError,
    ReferenceDataset,
    ReferenceRow,
    ReferenceSource,
    SignViolation,
    compare,
    load_reference,
    serialize_reference,
)
from .cli import RunConfig

__version__ = "0.1.0"

__all__ = [
    "AtomicSystem",
    "EnergyBreakdown",
    "QuantumState",
    "ScreeningLaw",
    "ScreeningModel",
    "UnitSystem",
    "coulomb_energy",
    "energy_breakdown",
    "first_order_shift",
    "screening_delta",
    "second_order_shift",
    "third_order_shift",
    "to_kev",
    "total_energy",
    "CoulombRadial",
    "LaguerreSpec",
    "ModeratedRadial",
    "QuadratureError",
    "SuperpotentialPoly",
    "correction_via_quadrature",
    "coulomb_chi",
    "full_wavefunction",
    "laguerre_eval",
    "moderated_radial",
    "moderating_u",
    "superpotential_w1",
    "superpotential_w2",
    "ComparisonRecord",
    "NoBoundState",
    "NonConvergence",
    "OracleResult",
    "RadialGrid",
    "breakdown_report",
    "numerov_backend",
    "solve_bound_state",
    "ComparisonReport",
    "DuplicateKey",
    "MissingReference",
    "ParseError",
    "ReferenceDataset",
    "ReferenceRow",
    "ReferenceSource",
    "SignViolation",
    "compare",
    "load_reference",
    "serialize_reference",
    "RunConfig",
    "__version__",
]
