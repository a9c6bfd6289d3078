"""
The additive envelope R·C⁺ of a base category.

Matrix morphisms with R-linear combinations of base morphisms as entries,
biproducts, duals, and linear systems whose unknowns are envelope morphisms.
"""

from .envelope import AddCat, AddMor, AddObj, Combination, envelope
from .functor import AdditiveFunctor
from .system import LinearSystem, factor_left, factor_right

__all__ = [
    "AddCat",
    "AddMor",
    "AddObj",
    "AdditiveFunctor",
    "Combination",
    "LinearSystem",
    "envelope",
    "factor_left",
    "factor_right",
]
