"""Exception hierarchy shared by every dimerlab module."""


class DimerlabError(Exception):
    """Base class; the CLI maps each subclass to its own exit code."""

    exit_code = 1


class GraphFormatError(DimerlabError, ValueError):
    """Graph text could not be parsed."""

    exit_code = 3


class GraphValidationError(DimerlabError, ValueError):
    """Graph parsed but violates an invariant (disconnected, crossing edges, ...)."""

    exit_code = 4


class PolynomialError(DimerlabError, ValueError):
    exit_code = 5


class SizeCapError(DimerlabError):
    """Input is larger than an exact or brute-force routine accepts."""

    exit_code = 6


class RoundingError(DimerlabError, ArithmeticError):
    """A floating computation did not round cleanly to an integer."""

    exit_code = 7


class ConvergenceError(DimerlabError):
    """Quadrature refinement budget exhausted; ``best`` holds the last estimate."""

    exit_code = 8

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class SigningError(DimerlabError):
    """No valid Kasteleyn signing or sign combination was found."""

    exit_code = 9


class ConfigError(DimerlabError, ValueError):
    """Command-line options are missing, conflicting or out of range."""

    exit_code = 2
