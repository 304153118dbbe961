"""Exception types shared across the package."""


class CurveClustError(Exception):
    """Base class for package-specific errors."""


class DataFormatError(CurveClustError):
    """Raised when a dataset file or directory cannot be parsed/validated."""


class SolverDivergenceError(CurveClustError):
    """Raised when an iterative solver produces non-finite values."""

    def __init__(self, message, iteration=None, residual=None):
        super().__init__(message)
        self.iteration = iteration
        self.residual = residual


class AntipodalError(CurveClustError):
    """Raised for antipodal points on the hypersphere (log map undefined)."""

    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair
