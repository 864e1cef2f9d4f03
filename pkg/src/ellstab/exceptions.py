"""Exceptions raised by ellstab.

Every exception also derives from a builtin so that callers catching ``ValueError``
or ``ArithmeticError`` keep working.

"""


class EllstabError(Exception):
    """Base class for all errors raised by ellstab."""


class ConfigurationError(EllstabError, ValueError):
    """Invalid configuration, parameters or violated parameter relations."""


class TruncationError(EllstabError, ArithmeticError):
    """The answer depends on coefficients beyond the known truncation order."""


class ZeroDivisorError(EllstabError, ZeroDivisionError):
    """Division by the zero series."""


class ExtensionError(EllstabError, ArithmeticError):
    """Arithmetic would leave the single quadratic extension."""


class KernelClassError(EllstabError, ValueError):
    """The central charge of a class vanishes (kernel class)."""


class PhaseBranchError(EllstabError, ValueError):
    """A phase does not lie in the branch interval it is required to lie in."""


class NoSolutionError(EllstabError, ValueError):
    """The patching relations have no solution for the given inputs."""


class UnderdeterminedError(EllstabError, ValueError):
    """The patching relations do not determine the unknowns."""


class VerificationError(EllstabError, AssertionError):
    """An identity that has to hold exactly failed."""
