"""Continuously driven three-level heat engine: exact stationary
thermodynamics, heat-current decomposition, counting statistics and
transient dynamics of the dressed-basis master equation."""

from .errors import (BoundaryError, ConfigError, EngineError, InvariantViolation,
                     NotAnEngineError, ParameterError, StepSizeError,
                     ZeroCouplingError)
from .model import (CouplingTable, EngineParams, SpectralData, hamiltonian,
                    instantaneous_eigenvectors, spectrum, validate, validated)
from .dissipator import SCHEMES, DissipatorRates, build_table, rates
from .stationary import (DomainVerdict, StationaryCore, StationaryState,
                         ThermoReport, efficiency, engine_domain, generator,
                         heat_fluxes, liouvillian, optimal_frequency, power,
                         stationary_state, thermo_report)
from .stationary import solve as stationary_core
from .decomposition import (DecompositionReport, DensityEigensystem,
                            classify_flow_pattern, decompose_heat,
                            density_eigensystem, inverse_eta_nd)
from .fcs import (FcsReport, TiltedLiouvillian, entropy_production, fcs_report,
                  power_variance, tilted_liouvillian, tur_product, variance_parts)
from .dynamics import (Trajectory, aux_block, bare_from_vars, integrate,
                       rotating_generator, vars_from_bare)

__version__ = "0.1.0"

__all__ = [
    "BoundaryError", "ConfigError", "EngineError", "InvariantViolation",
    "NotAnEngineError", "ParameterError", "StepSizeError", "ZeroCouplingError",
    "CouplingTable", "EngineParams", "SpectralData", "hamiltonian",
    "instantaneous_eigenvectors", "spectrum", "validate", "validated",
    "SCHEMES", "DissipatorRates", "build_table", "rates",
    "DomainVerdict", "StationaryCore", "StationaryState", "ThermoReport",
    "efficiency", "engine_domain", "generator", "heat_fluxes", "liouvillian",
    "optimal_frequency", "power", "stationary_core", "stationary_state",
    "thermo_report",
    "DecompositionReport", "DensityEigensystem", "classify_flow_pattern",
    "decompose_heat", "density_eigensystem", "inverse_eta_nd",
    "FcsReport", "TiltedLiouvillian", "entropy_production", "fcs_report",
    "power_variance", "tilted_liouvillian", "tur_product", "variance_parts",
    "Trajectory", "aux_block", "bare_from_vars", "integrate",
    "rotating_generator", "vars_from_bare",
    "__version__",
]
