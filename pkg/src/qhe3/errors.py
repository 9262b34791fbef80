"""Exception types shared across the package."""


class EngineError(Exception):
    """Base class for physics-level failures."""


class ParameterError(EngineError):
    """Model parameters violate a structural constraint."""


class ZeroCouplingError(EngineError):
    """A dressed transition is completely decoupled from both reservoirs."""


class InvariantViolation(EngineError):
    """A runtime numerical cross-check failed (closed form vs. direct solve)."""


class BoundaryError(EngineError):
    """Quantity undefined on or outside the engine-domain boundary."""


class NotAnEngineError(EngineError):
    """Efficiency requested where no heat is absorbed from the hot reservoir."""


class StepSizeError(EngineError):
    """Integrator step too large for the stiffest decay rate."""


class ConfigError(Exception):
    """Malformed run configuration (bad file, field, or combination)."""
