"""
The universal homology A(C) of a finite category as a graded free abelian category.

A(C) is a window of copies of Ab(RC⁺), one per degree, with no morphisms
between different degrees. H_i(X) is Δ(X) placed in degree i.
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from ..additive import AdditiveFunctor, envelope
from ..coeff import FPModule, ModuleMap, Ring
from ..config import Bounds
from ..diagram import FinCat, check_window
from ..errors import FormalModeUnsupported, NoFinalObject, OutOfWindow, ShapeMismatch
from ..freyd import AbCat, AbMor, HomModule, Presentation, free_abelian, point_category, universal_object
from ..freyd.point import STAR
from ..quotient import (
    YES,
    Answer,
    Generator,
    InducedRealization,
    ModuleRealization,
    SerreQuotient,
    quotient_by_gens,
    realization_quotient,
    realize,
)
from .additivity import CoproductRow, additivity_generators, verify_coproduct

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GradedObject:
    obj: Presentation
    degree: int


@dataclass(frozen=True, eq=False)
class GradedMorphism:
    src: GradedObject
    dst: GradedObject
    mor: AbMor


class CrossDegreeHom:
    """Hom between objects of different degrees: always zero."""

    generators: List[AbMor] = []

    def __init__(self, src: GradedObject, dst: GradedObject):
        self.src, self.dst = src, dst

    def describe(self) -> str:
        return "0"

    def is_zero(self) -> bool:
        return True


class GradedAbCat:
    """A(C) on a degree window, with one shared component Ab(RC⁺)."""

    def __init__(self, category: FinCat, ring: Ring, window: Tuple[int, int]):
        self.category = category
        self.ring = ring
        self.window = check_window(window)
        self.component: AbCat = free_abelian(envelope(category, ring))

    def __repr__(self) -> str:
        a, b = self.window
        return f"GradedAbCat({self.category.name}, {self.ring}, [{a}, {b}])"

    @property
    def degrees(self) -> range:
        return range(self.window[0], self.window[1] + 1)

    def check_degree(self, degree: int) -> None:
        a, b = self.window
        if not a <= degree <= b:
            raise OutOfWindow(f"degree {degree} is outside the window [{a}, {b}]")

    # ------------------------------------------------------------------
    # the universal homology
    # ------------------------------------------------------------------
    def H(self, x: str, degree: int) -> GradedObject:
        """H_i(x) = (Δ(x), i)."""
        self.check_degree(degree)
        return GradedObject(self.component.delta(x), degree)

    def H_morphism(self, m: str, degree: int) -> GradedMorphism:
        self.check_degree(degree)
        C = self.category
        f = self.component.delta_morphism(m)
        return GradedMorphism(self.H(C.source(m), degree), self.H(C.target(m), degree), f)

    def obj(self, X: Presentation, degree: int) -> GradedObject:
        self.check_degree(degree)
        if X.cat != self.component.envelope:
            raise ShapeMismatch("object does not live in the component category")
        return GradedObject(X, degree)

    def mor(self, f: AbMor, degree: int) -> GradedMorphism:
        return GradedMorphism(self.obj(f.src, degree), self.obj(f.dst, degree), f)

    # ------------------------------------------------------------------
    # abelian structure, degreewise
    # ------------------------------------------------------------------
    @staticmethod
    def _same_degree(*objs: GradedObject) -> int:
        degrees = {X.degree for X in objs}
        if len(degrees) != 1:
            raise ShapeMismatch(f"objects of different degrees: {sorted(degrees)}")
        return degrees.pop()

    def hom(self, X: GradedObject, Y: GradedObject) -> Union[HomModule, CrossDegreeHom]:
        if X.degree != Y.degree:
            return CrossDegreeHom(X, Y)
        return self.component.hom(X.obj, Y.obj)

    def identity(self, X: GradedObject) -> GradedMorphism:
        return GradedMorphism(X, X, self.component.identity(X.obj))

    def compose(self, g: GradedMorphism, f: GradedMorphism) -> GradedMorphism:
        self._same_degree(f.src, g.src)
        return GradedMorphism(f.src, g.dst, self.component.compose(g.mor, f.mor))

    def equal(self, f: GradedMorphism, g: GradedMorphism) -> bool:
        return f.src == g.src and f.dst == g.dst and self.component.equal(f.mor, g.mor)

    def is_zero(self, X: GradedObject) -> bool:
        return self.component.is_zero(X.obj)

    def kernel(self, f: GradedMorphism) -> Tuple[GradedObject, GradedMorphism]:
        K, k = self.component.kernel(f.mor)
        KX = GradedObject(K, f.src.degree)
        return KX, GradedMorphism(KX, f.src, k)

    def cokernel(self, f: GradedMorphism) -> Tuple[GradedObject, GradedMorphism]:
        C, c = self.component.cokernel(f.mor)
        CX = GradedObject(C, f.dst.degree)
        return CX, GradedMorphism(f.dst, CX, c)

    def direct_sum(self, objs: Sequence[GradedObject]) -> GradedObject:
        if not objs:
            raise ShapeMismatch("a graded direct sum needs its degree; pass at least one summand")
        degree = self._same_degree(*objs)
        return GradedObject(self.component.direct_sum([X.obj for X in objs]).obj, degree)

    # ------------------------------------------------------------------
    # realizations of user homologies
    # ------------------------------------------------------------------
    def realize(
        self,
        values: Mapping[int, Mapping[str, FPModule]],
        maps: Optional[Mapping[int, Mapping[str, ModuleMap]]] = None,
        name: str = "",
    ) -> "GradedRealization":
        """
        r_K for a homology K given by modules per degree and object and maps per degree and morphism.

        Degrees missing from ``values`` are realized by the zero representation.

        Raises:
            RelationViolation: When some degree is not a representation of C
        """
        maps = maps or {}
        parts: Dict[int, ModuleRealization] = {}
        for i in self.degrees:
            if i in values:
                parts[i] = realize(self.component, values[i], morphisms=maps.get(i), name=f"{name or 'K'}_{i}")
            else:
                zero = FPModule.zero(self.ring)
                parts[i] = realize(self.component, {x: zero for x in self.category.objects},
                                   morphisms={m: zero.identity() for m in self.category.morphisms},
                                   name=f"{name or 'K'}_{i}")
        return GradedRealization(self, parts, {i: dict(maps.get(i, {})) for i in self.degrees}, name=name)

    def k_projection(self, k: int) -> "GradedKProjection":
        return graded_k_projection(self, k)


class GradedRealization:
    """A realization of A(C) given degreewise."""

    def __init__(self, graded: GradedAbCat, parts: Mapping[int, ModuleRealization],
                 maps: Mapping[int, Mapping[str, ModuleMap]], name: str = ""):
        self.graded = graded
        self.parts = dict(parts)
        self.maps = {i: dict(m) for i, m in maps.items()}
        self.name = name

    def obj(self, X: GradedObject) -> FPModule:
        return self.parts[X.degree].obj(X.obj)

    def mor(self, f: GradedMorphism) -> ModuleMap:
        return self.parts[f.src.degree].mor(f.mor)

    def agrees(self) -> bool:
        """r_K(H_i) equals K on every object and on every given morphism, in every degree."""
        return all(realization_agrees(self.parts[i], self.maps.get(i, {})) for i in self.graded.degrees)


def realization_agrees(F: ModuleRealization, maps: Mapping[Any, ModuleMap]) -> bool:
    """
    True iff F(Δ(x)) is the given module for every vertex x and F(Δ(m)) the given map for every m in ``maps``.

    F(Δ(x)) comes with an inclusion into the vertex module; it must be an isomorphism
    and the given maps must commute with these identifications.
    """
    ab = F.source
    inclusions: Dict[str, ModuleMap] = {}
    for v in ab.base.objects:
        _, inc = F.object_with_inclusion(ab.delta(v))
        if not inc.is_iso():
            logger.debug(f"F(Δ({v})) is not the given module")
            return False
        inclusions[v] = inc
    for m, value in maps.items():
        s, t = ab.base.source(m), ab.base.target(m)
        lhs = inclusions[t].compose(F.mor(ab.delta_morphism(m)))
        if not lhs.equals(value.compose(inclusions[s])):
            logger.debug(f"F(Δ({m})) differs from the given map")
            return False
    return True


def universal_homology(category: FinCat, ring: Ring, window: Tuple[int, int]) -> GradedAbCat:
    """
    The universal homology A(C) on ``window``.

    Raises:
        EmptyWindow: When the window is empty
    """
    G = GradedAbCat(category, ring, window)
    logger.info(f"Universal homology of {category.name} over {ring} on [{G.window[0]}, {G.window[1]}]")
    return G


# ----------------------------------------------------------------------
# quotients taken degree by degree
# ----------------------------------------------------------------------
class GradedQuotient:
    """One Serre quotient of the component per degree."""

    def __init__(self, graded: GradedAbCat, quotients: Mapping[int, SerreQuotient], name: str = ""):
        self.graded = graded
        self.quotients: Dict[int, SerreQuotient] = dict(quotients)
        self.name = name

    def __repr__(self) -> str:
        return f"GradedQuotient({self.name or self.graded.category.name}, {len(self.quotients)} degrees)"

    def at(self, degree: int) -> SerreQuotient:
        self.graded.check_degree(degree)
        return self.quotients[degree]

    def is_zero(self, X: GradedObject) -> Answer:
        return self.at(X.degree).is_zero(X.obj)

    def hom(self, X: GradedObject, Y: GradedObject) -> Union[HomModule, CrossDegreeHom]:
        """
        Hom in the quotient, available where the degree's quotient has no generators.

        Raises:
            FormalModeUnsupported: When the degree carries a formal quotient with generators
        """
        if X.degree != Y.degree:
            return CrossDegreeHom(X, Y)
        if len(self.at(X.degree).gens):
            raise FormalModeUnsupported(f"hom in degree {X.degree} needs a realization of the quotient")
        return self.graded.hom(X, Y)


def point_quotient(G: GradedAbCat, points: Iterable[str], bounds: Optional[Bounds] = None) -> GradedQuotient:
    """
    The quotient imposing the point axiom: H_i(p) = 0 for i ≠ 0 and every point p.

    Raises:
        ValueError: When no point is given
        ShapeMismatch: When a point is not an object of C
    """
    points = list(dict.fromkeys(str(p) for p in points))
    if not points:
        raise ValueError("the point axiom needs at least one point")
    unknown = [p for p in points if p not in G.category.objects]
    if unknown:
        raise ShapeMismatch(f"points are not objects: {', '.join(unknown)}")
    quotients = {}
    for i in G.degrees:
        gens = [] if i == 0 else [
            Generator.of(G.component.delta(p), f"H_{i}({p})", kind="point", degree=i) for p in points
        ]
        quotients[i] = quotient_by_gens(G.component, gens, bounds=bounds)
    logger.info(f"Point quotient of {G.category.name} at {', '.join(points)}")
    return GradedQuotient(G, quotients, name=f"point({', '.join(points)})")


# ----------------------------------------------------------------------
# k-projection onto Ab_R
# ----------------------------------------------------------------------
class KProjection:
    """π_k: a realization-mode quotient onto Ab_R, with the section ι_k."""

    def __init__(self, k: int, source: AbCat, projection: AdditiveFunctor, section: AdditiveFunctor,
                 point: AbCat, bounds: Optional[Bounds] = None):
        self.k = k
        self.source = source
        self.point = point
        self.projection = InducedRealization(projection, source, point, name=f"π_{k}")
        self.section = InducedRealization(section, point, source, name=f"ι_{k}")
        self.quotient = realization_quotient(self.projection, bounds=bounds)

    def project(self, X: Any) -> Any:
        return self.projection.obj(X) if isinstance(X, Presentation) else self.projection.mor(X)

    def include(self, X: Any) -> Any:
        return self.section.obj(X) if isinstance(X, Presentation) else self.section.mor(X)

    def section_isomorphism(self, X: Optional[Presentation] = None) -> Optional[AbMor]:
        """An isomorphism X ≅ π_k(ι_k(X)) in Ab_R, found by search; X defaults to |R|."""
        X = universal_object(self.point) if X is None else X
        return self.point.iso_search(X, self.project(self.include(X)))

    def check_section(self, X: Optional[Presentation] = None) -> bool:
        return self.section_isomorphism(X) is not None


class GradedKProjection(KProjection):
    """π_k on A(C): kills every degree other than k."""

    def __init__(self, graded: GradedAbCat, k: int, projection: AdditiveFunctor, section: AdditiveFunctor,
                 point: AbCat):
        super().__init__(k, graded.component, projection, section, point)
        self.graded = graded

    def project(self, X: Any) -> Any:
        if isinstance(X, GradedObject):
            return super().project(X.obj) if X.degree == self.k else self.point.zero_object()
        if isinstance(X, GradedMorphism):
            if X.src.degree != self.k:
                zero = self.point.zero_object()
                return self.point.zero_morphism(zero, zero)
            return super().project(X.mor)
        return super().project(X)

    def include(self, X: Any) -> Any:
        value = super().include(X)
        if isinstance(X, Presentation):
            return GradedObject(value, self.k)
        return GradedMorphism(GradedObject(value.src, self.k), GradedObject(value.dst, self.k), value)

    def is_zero(self, X: GradedObject) -> Answer:
        if X.degree != self.k:
            return Answer(YES, evidence={"realization": self.projection.name, "degree": X.degree})
        return self.quotient.is_zero(X.obj)


def graded_k_projection(G: GradedAbCat, k: int) -> GradedKProjection:
    """
    π_k: A(C) → Ab_R collapsing C onto its final object, with section ι_k = H_k(1).

    Raises:
        NoFinalObject: When C has no final object
        OutOfWindow: When k is outside the window
    """
    G.check_degree(k)
    C = G.category
    finals = C.final_objects()
    if not finals:
        raise NoFinalObject(f"{C.name} has no final object")
    final = finals[0]
    point = point_category(G.ring)
    P, E = point.envelope, G.component.envelope
    collapse = AdditiveFunctor(
        E, P, {x: STAR for x in C.objects},
        morphisms={m: P.identity(STAR) for m in C.morphisms},
    )
    section = AdditiveFunctor(P, E, {"*": (final,)}, morphisms={"id_*": E.identity((final,))})
    logger.info(f"k-projection onto degree {k} through final object {final}")
    return GradedKProjection(G, k, collapse, section, point)


def graded_additive_quotient(G: GradedAbCat, rows: Sequence[CoproductRow],
                             bounds: Optional[Bounds] = None) -> GradedQuotient:
    """
    A(C) modulo the failure of each H_i to send the listed coproducts to direct sums.

    Raises:
        NotACoproduct: When a row fails the universal property in C
    """
    for row in rows:
        verify_coproduct(G.category, row)
    ab = G.component
    quotients = {
        i: quotient_by_gens(
            ab, [g for row in rows for g in additivity_generators(ab, row, ab.delta, ab.delta_morphism, i)],
            bounds=bounds,
        )
        for i in G.degrees
    }
    logger.info(f"Additive quotient of {G.category.name} by {len(rows)} coproduct rows")
    return GradedQuotient(G, quotients, name="additive")
