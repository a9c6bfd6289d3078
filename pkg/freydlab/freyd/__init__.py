"""
The free abelian category Ab(A) of an additive envelope.

Two-layer presentations, decidable morphism equality, kernels, cokernels and
images, hom modules, the dual description, the flat part, and the hieratic
specifics over the one point category.
"""

from .category import AbCat, DirectSum, HomModule, Image, Witnesses, free_abelian
from .duality import OppositeView, op_view
from .flat import FlatAnswer, flat_membership, is_projective_against
from .point import (
    base_change_to_rationals,
    evaluate_at_ring,
    multiplication,
    point_category,
    representable,
    representable_map,
    simple_candidate,
    universal_object,
)
from .presentation import AbMor, OneLayer, Presentation

__all__ = [
    "AbCat",
    "AbMor",
    "DirectSum",
    "FlatAnswer",
    "HomModule",
    "Image",
    "OneLayer",
    "OppositeView",
    "Presentation",
    "Witnesses",
    "base_change_to_rationals",
    "evaluate_at_ring",
    "flat_membership",
    "free_abelian",
    "is_projective_against",
    "multiplication",
    "op_view",
    "point_category",
    "representable",
    "representable_map",
    "simple_candidate",
    "universal_object",
]
