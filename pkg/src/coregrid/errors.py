"""Exception types shared across the library."""


class CoregridError(Exception):
    """Base class for all coregrid errors."""


class EmptyInput(CoregridError):
    pass


class NonPositiveSide(CoregridError):
    pass


class NonPositiveEps(CoregridError):
    pass


class NonPositiveGamma(CoregridError):
    pass


class LambdaTooSmall(CoregridError):
    pass


class BadRange(CoregridError):
    pass


class BoxTooSmall(CoregridError):
    pass


class CapExceeded(CoregridError):
    """Instance is larger than the exact solver's configured cap."""


class BudgetExceeded(CoregridError):
    """Exact search hit its node budget before proving optimality."""


class Infeasible(CoregridError):
    """No feasible solution exists (e.g. an undominated target)."""


class FileFormatError(CoregridError):
    """Base for instance-file errors; carries a 1-based line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class ParseError(FileFormatError):
    pass


class InvalidWeight(FileFormatError):
    pass


class SideOutOfRange(CoregridError):
    """Rectangle side outside [1, lambda]. Carries line=0 when not file-sourced."""

    def __init__(self, message: str, line: int = 0):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line
