"""Exception types shared across the package."""


class HomaloidalError(Exception):
    """Base class for all package errors."""


class InvalidField(HomaloidalError, ValueError):
    pass


class PolySyntaxError(HomaloidalError, ValueError):
    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        pointer = f"\n  {text}\n  {' ' * position}^" if text else ""
        super().__init__(f"{message} at position {position}{pointer}")


class NotDivisible(HomaloidalError, ArithmeticError):
    pass


class NotZeroDimensional(HomaloidalError):
    pass


class NotDeterminantal(HomaloidalError):
    pass


class UndefinedMap(HomaloidalError):
    """All partial derivatives vanish identically."""


class Inconclusive(HomaloidalError):
    pass


class InconsistencyError(HomaloidalError):
    """Two independent methods disagreed; carries both certificates."""

    def __init__(self, message: str, certificates=None):
        self.certificates = certificates or {}
        super().__init__(message)


class ConcurrentArrangement(HomaloidalError):
    pass


class FieldTooSmall(HomaloidalError):
    pass


class BudgetExceeded(HomaloidalError):
    pass
