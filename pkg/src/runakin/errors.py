"""Exception types shared across the solver."""


class ConfigurationError(ValueError):
    """Invalid grid/run configuration (bad parity, sign, unknown key, ...)."""


class DegenerateStateError(ValueError):
    """Moments requested from a distribution with non-positive mass."""


class GridMismatchError(ValueError):
    """Binary operation on distributions living on different grids."""


class SimulationAbort(RuntimeError):
    """Time integration hit a non-recoverable state (NaN/Inf, T <= 0, regrid failure)."""
