"""High-precision secondary zeta functions and recurrences for the zeros of zeta."""

from .errors import SecZetaError
from .kernel import PrecisionContext, dirichlet_beta, hurwitz_zeta, zeta
from .secondary import SecondaryValue
from .zeros import ZeroRecord, ZeroStore, reference_store

__version__ = "0.1.0"

__all__ = [
    "PrecisionContext",
    "SecZetaError",
    "SecondaryValue",
    "ZeroRecord",
    "ZeroStore",
    "dirichlet_beta",
    "hurwitz_zeta",
    "reference_store",
    "zeta",
]
