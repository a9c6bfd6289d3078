"""
Universal homology categories.

A(C) as a graded free abelian category with the point, k-projection and
additivity quotients; A_∂(C) over the Nori diagram with its generator
families, purity certificates and restriction to H_i(X, 0); user relative
homologies with their axiom check and universal category A(K); universal
representations of finite monoids.
"""

from .additivity import CoproductRow, additivity_generators, canonical_map, coproduct_row, verify_coproduct
from .axioms import (
    AxiomReport,
    RelHomologyData,
    UniversalFromData,
    almost_trivial,
    check_axioms,
    realize_homology,
    universal_from,
)
from .graded import (
    CrossDegreeHom,
    GradedAbCat,
    GradedKProjection,
    GradedMorphism,
    GradedObject,
    GradedQuotient,
    GradedRealization,
    KProjection,
    graded_additive_quotient,
    graded_k_projection,
    point_quotient,
    realization_agrees,
    universal_homology,
)
from .monoid import MonoidUniversal, monoid_universal
from .relative import (
    PairSequence,
    RelCohomology,
    RelUniversalCat,
    RestrictedHomology,
    additive_quotient,
    complex_homology,
    k_projection,
    pair_sequence,
    purity_certificate,
    relative_k_projection,
    restricted_homology,
    universal_cohomology,
    universal_relative,
)

__all__ = [
    "AxiomReport",
    "CoproductRow",
    "CrossDegreeHom",
    "GradedAbCat",
    "GradedKProjection",
    "GradedMorphism",
    "GradedObject",
    "GradedQuotient",
    "GradedRealization",
    "KProjection",
    "MonoidUniversal",
    "PairSequence",
    "RelCohomology",
    "RelHomologyData",
    "RelUniversalCat",
    "RestrictedHomology",
    "UniversalFromData",
    "additive_quotient",
    "additivity_generators",
    "almost_trivial",
    "canonical_map",
    "check_axioms",
    "complex_homology",
    "coproduct_row",
    "graded_additive_quotient",
    "graded_k_projection",
    "k_projection",
    "monoid_universal",
    "pair_sequence",
    "point_quotient",
    "purity_certificate",
    "realization_agrees",
    "realize_homology",
    "relative_k_projection",
    "restricted_homology",
    "universal_cohomology",
    "universal_from",
    "universal_homology",
    "universal_relative",
    "verify_coproduct",
]
