"""Exception hierarchy shared by every stage of the toolkit."""

from typing import List, Optional


class SelfMeasureError(Exception):
    """Base class for all toolkit errors."""
    pass


class LinalgError(SelfMeasureError):
    """Dimension mismatch or a spectral precondition that does not hold."""
    pass


class StateError(SelfMeasureError):
    """Invalid quantum state data (normalisation, probabilities, specs)."""
    pass


class AlgebraError(SelfMeasureError):
    """Operator algebra precondition failure."""
    pass


class MeasurementError(SelfMeasureError):
    """Invalid measuring-system model or MS-specific operation input."""
    pass


class StochasticError(SelfMeasureError):
    """Invalid ensemble run or statistical test input."""
    pass


class ConfigError(SelfMeasureError):
    """Experiment document error, carrying every field-level message found."""

    def __init__(self, message: str, errors: Optional[List[str]] = None):
        super().__init__(message)
        self.errors: List[str] = list(errors) if errors else [message]
