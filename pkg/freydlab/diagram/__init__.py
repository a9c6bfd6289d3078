"""
Diagrams and finite categories.

Quivers with their path categories, finite categories (given directly or as
quotients of path categories), the category of pairs with its triples and
∂-cubes, and the Nori diagram over a degree window.
"""

from .fincat import Decoration, FinCat, fincat_from_decoration, identity_name
from .nori import NoriDiagram, check_window, nori_diagram, vertex_name
from .pairs import (
    Cube,
    Pair,
    PairCat,
    PairMorphism,
    Triple,
    enumerate_cubes,
    enumerate_triples,
    find_triple,
    pairs_category,
)
from .quiver import Edge, Path, PathCategory, Quiver, path_category

__all__ = [
    "Cube",
    "Decoration",
    "Edge",
    "FinCat",
    "NoriDiagram",
    "Pair",
    "PairCat",
    "PairMorphism",
    "Path",
    "PathCategory",
    "Quiver",
    "Triple",
    "check_window",
    "enumerate_cubes",
    "enumerate_triples",
    "fincat_from_decoration",
    "find_triple",
    "identity_name",
    "nori_diagram",
    "pairs_category",
    "path_category",
    "vertex_name",
]
