"""Exact arithmetic for quantum boson algebras and their bosonic extensions."""

from .foundations import (CartanError, CartanMatrix, LaurentPoly, RatScalar,
                          q_binom, q_fact, q_int, q_power_i)
from .freealg import AlgElement, ZLetter

__version__ = "0.1.0"

__all__ = [
    "CartanError", "CartanMatrix", "LaurentPoly", "RatScalar", "AlgElement",
    "ZLetter", "q_binom", "q_fact", "q_int", "q_power_i", "__version__",
]
