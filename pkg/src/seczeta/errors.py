"""Exception hierarchy.

Every error carries an ``exit_code`` so the command-line front end can map a
failure to a stable process status without a lookup table of its own.
"""


class SecZetaError(Exception):
    exit_code = 1


class UsageError(SecZetaError, ValueError):
    exit_code = 2


class PoleAtOne(SecZetaError, ValueError):
    exit_code = 10


class PoleAtNonPositiveInteger(SecZetaError, ValueError):
    exit_code = 11


class InvalidShift(SecZetaError, ValueError):
    exit_code = 12


class PrecisionExhausted(SecZetaError, ArithmeticError):
    exit_code = 13


class NonConvergentQuadrature(SecZetaError, ArithmeticError):
    exit_code = 14


class BranchWindingDetected(SecZetaError, ArithmeticError):
    exit_code = 15


class ImaginaryResidueTooLarge(SecZetaError, ArithmeticError):
    exit_code = 16


class TableTooShort(SecZetaError, ValueError):
    exit_code = 17


class NotAFixture(SecZetaError, KeyError):
    exit_code = 18


class NegativeResult(SecZetaError, ArithmeticError):
    """A quantity that must be positive came out non-positive (cancellation)."""

    exit_code = 19


class SelfCancellation(SecZetaError, ArithmeticError):
    exit_code = 20


class LadderViolation(SecZetaError, ValueError):
    exit_code = 21


class NegativeRadicand(SecZetaError, ArithmeticError):
    exit_code = 22


class NegativeLogArgument(SecZetaError, ArithmeticError):
    exit_code = 23


class InsufficientZ4Precision(SecZetaError, ArithmeticError):
    exit_code = 24


class InsufficientZeroPrecision(SecZetaError, ValueError):
    exit_code = 25


class NoConvergence(SecZetaError, ArithmeticError):
    exit_code = 26


class BasinEscape(SecZetaError, ArithmeticError):
    exit_code = 27


class TargetInfeasible(SecZetaError, ValueError):
    exit_code = 28


class AmbiguousRounding(SecZetaError, ArithmeticError):
    exit_code = 29


class TruncationDominates(SecZetaError, ArithmeticError):
    exit_code = 30
