"""
The universal relative homology A_∂(C) over a degree window.

The base is Ab of the envelope of the Nori diagram. A relative homology is an
exact functor out of it that kills four families of objects: images of the
functoriality and ∂-naturality differences (already zero in the decorated
base), images of the chain composites βα, ∂β and α∂ of every triple, and the
homology of every triple's long sequence at the spots whose neighbours lie in
the window.
"""

import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Union

from ..additive import AdditiveFunctor, envelope
from ..coeff import Ring
from ..config import Bounds
from ..diagram import FinCat, NoriDiagram, PairCat, Triple, find_triple, nori_diagram, pairs_category
from ..errors import NoFinalObject, NoInitial, OutOfWindow
from ..freyd import AbCat, AbMor, OppositeView, Presentation, free_abelian, op_view, point_category
from ..freyd.point import STAR
from ..quotient import Certificate, Generator, SerreQuotient, ThickGens, quotient_by_gens
from .additivity import CoproductRow, additivity_generators, verify_coproduct
from .graded import GradedAbCat, GradedKProjection, KProjection, graded_k_projection

logger = logging.getLogger(__name__)


def complex_homology(ab: AbCat, prev: AbMor, nxt: AbMor) -> Presentation:
    """ker(nxt) / (ker(nxt) ∩ im(prev)) for X --prev--> Y --nxt--> Z, whether or not nxt∘prev = 0."""
    K, k = ab.kernel(nxt)
    both = ab.copair([prev, ab.neg(k)], dst=nxt.src)
    P, p = ab.kernel(both)
    S = ab.direct_sum([prev.src, K])
    return ab.cokernel(ab.compose(S.projections[1], p))[0]


class RelUniversalCat:
    """Ab(Nori diagram) with the generators of the relative homology axioms."""

    def __init__(self, nori: NoriDiagram, ring: Ring, bounds: Optional[Bounds] = None):
        self.nori = nori
        self.pairs: PairCat = nori.pairs
        self.ring = ring
        self.window = nori.window
        self.category: FinCat = nori.category()
        self.base: AbCat = free_abelian(envelope(self.category, ring))
        self.gens = ThickGens(self.base, self._generators())
        self._index = {g.name: k for k, g in enumerate(self.gens)}
        self.quotient: SerreQuotient = quotient_by_gens(self.base, self.gens, bounds=bounds)
        counts: Dict[str, int] = {}
        for g in self.gens:
            counts[g.kind] = counts.get(g.kind, 0) + 1
        logger.info(f"Universal relative homology of {self.pairs.base.name}: "
                    + ", ".join(f"{n} {kind}" for kind, n in counts.items()))

    def __repr__(self) -> str:
        a, b = self.window
        return f"RelUniversalCat({self.pairs.base.name}, {self.ring}, [{a}, {b}])"

    @property
    def degrees(self) -> range:
        return self.nori.degrees

    # ------------------------------------------------------------------
    # H and its structure maps
    # ------------------------------------------------------------------
    def pair_name(self, key: str) -> str:
        return self.pairs.pair_name(key)

    def H(self, pair: str, degree: int) -> Presentation:
        """H_i(X,Y) = Δ of the Nori vertex."""
        return self.base.delta(self.nori.vertex(self.pair_name(pair), degree))

    def gamma(self, square: str, degree: int) -> AbMor:
        return self.base.delta_morphism(self.nori.gamma_morphism(square, degree))

    def boundary(self, triple: str, degree: int) -> AbMor:
        return self.base.delta_morphism(self.nori.boundary_morphism(triple, degree))

    def generator(self, name: str) -> Generator:
        return self.gens[self.index(name)]

    def index(self, name: str) -> int:
        return self._index[name]

    # ------------------------------------------------------------------
    # generator families
    # ------------------------------------------------------------------
    def _image(self, m: str) -> Presentation:
        if self.category.is_identity(m):
            return self.base.delta(self.category.source(m))
        return self.base.image(self.base.delta_morphism(m)).obj

    def _difference_image(self, lhs: Sequence[str], rhs: Sequence[str]) -> Presentation:
        ab, cat = self.base, self.category
        f = ab.sub(ab.delta_morphism(cat.compose_all(lhs)), ab.delta_morphism(cat.compose_all(rhs)))
        return ab.image(f).obj

    def _generators(self) -> List[Generator]:
        nori, pairs, cat = self.nori, self.pairs, self.category
        a, b = self.window
        gens: List[Generator] = []

        for i in self.degrees:
            for f in pairs.morphisms:
                if pairs.is_identity(f.name):
                    continue
                for g in pairs.category.outgoing(f.target):
                    if pairs.is_identity(g):
                        continue
                    lhs = [nori.gamma_morphism(f.name, i), nori.gamma_morphism(g, i)]
                    rhs = [nori.gamma_morphism(pairs.compose(g, f.name), i)]
                    gens.append(Generator(
                        f"functoriality {g}∘{f.name}@{i}", kind="functoriality", degree=i,
                        detail={"squares": [g, f.name]}, trivially_zero=True,
                        factory=lambda lhs=lhs, rhs=rhs: self._difference_image(lhs, rhs),
                    ))
        for i in range(a + 1, b + 1):
            for cube in nori.cubes:
                lhs = [nori.boundary_morphism(cube.source, i), nori.gamma_morphism(cube.gamma, i - 1)]
                rhs = [nori.gamma_morphism(cube.delta, i), nori.boundary_morphism(cube.target, i)]
                gens.append(Generator(
                    f"naturality {cube.source}=>{cube.target} ({cube.gamma},{cube.delta})@{i}",
                    kind="naturality", degree=i, trivially_zero=True,
                    detail={"cube": [cube.source, cube.target], "squares": [cube.gamma, cube.delta]},
                    factory=lambda lhs=lhs, rhs=rhs: self._difference_image(lhs, rhs),
                ))

        for t in nori.triples:
            for i in self.degrees:
                m = nori.gamma_morphism(t.beta_alpha, i)
                gens.append(Generator(f"chain βα {t.name}@{i}", kind="chain", degree=i,
                                      detail={"triple": t.name, "composite": "βα"},
                                      factory=lambda m=m: self._image(m)))
            for i in range(a + 1, b + 1):
                d = nori.boundary_morphism(t.name, i)
                db = cat.compose(d, nori.gamma_morphism(t.beta, i))
                ad = cat.compose(nori.gamma_morphism(t.alpha, i - 1), d)
                gens.append(Generator(f"chain ∂β {t.name}@{i}", kind="chain", degree=i,
                                      detail={"triple": t.name, "composite": "∂β"},
                                      factory=lambda m=db: self._image(m)))
                gens.append(Generator(f"chain α∂ {t.name}@{i}", kind="chain", degree=i,
                                      detail={"triple": t.name, "composite": "α∂"},
                                      factory=lambda m=ad: self._image(m)))

        for t in nori.triples:
            for spot, i, prev, nxt in self.exactness_spots(t):
                gens.append(Generator(
                    f"exactness {t.name} {spot}@{i}", kind="exactness", degree=i,
                    detail={"triple": t.name, "spot": spot},
                    factory=lambda p=prev, n=nxt: complex_homology(self.base, self.base.delta_morphism(p),
                                                                   self.base.delta_morphism(n)),
                ))
        return gens

    def exactness_spots(self, t: Triple):
        """(spot, degree, incoming, outgoing) for every in-window spot of the triple's long sequence."""
        nori = self.nori
        a, b = self.window
        spots = []
        for i in self.degrees:
            if i < b:
                spots.append(("lower", i, nori.boundary_morphism(t.name, i + 1), nori.gamma_morphism(t.alpha, i)))
            spots.append(("middle", i, nori.gamma_morphism(t.alpha, i), nori.gamma_morphism(t.beta, i)))
            if i > a:
                spots.append(("upper", i, nori.gamma_morphism(t.beta, i), nori.boundary_morphism(t.name, i)))
        return spots

    def generators_of(self, kind: str) -> List[Generator]:
        return [g for g in self.gens if g.kind == kind]


def universal_relative(
    category: FinCat,
    distinguished: Union[str, Iterable[str]],
    ring: Ring,
    window: Sequence[int],
    bounds: Optional[Bounds] = None,
) -> RelUniversalCat:
    """
    A_∂(C) for the given distinguished subcategory on ``window``.

    Raises:
        NotSubcategory: When the distinguished morphisms are not closed
        EmptyWindow: When the window is empty
    """
    pairs = pairs_category(category, distinguished)
    return RelUniversalCat(nori_diagram(pairs, (window[0], window[1])), ring, bounds=bounds)


# ----------------------------------------------------------------------
# purity
# ----------------------------------------------------------------------
def purity_certificate(RU: RelUniversalCat, pair: str, degree: int) -> Certificate:
    """
    A certificate that H_i(X,Y) vanishes for a distinguished isomorphism Y → X.

    The identity case is the chain generator of the identity triple. For an
    isomorphism m: Y → X the square (id_X, m): m → id_X is invertible in the
    decorated base, so H_i(m) is isomorphic to H_i(X,X).

    Raises:
        OutOfWindow: When the degree is outside the window
        ValueError: When the pair is not an isomorphism
    """
    RU.nori.check_degree(degree)
    name = RU.pair_name(pair)
    C = RU.pairs.base
    X = RU.H(name, degree)
    if C.is_identity(name):
        return Certificate.gen(RU.index(f"chain βα <{name},{name}>@{degree}"), X)
    if not C.is_iso(name):
        raise ValueError(f"{RU.pairs.describe(name)} is not a pair along an isomorphism")
    top = RU.pairs.pair(name).top
    identity = C.identity(top)
    square = RU.pairs.square(name, identity, identity, name)
    child = purity_certificate(RU, identity, degree)
    return Certificate.iso_to(X, RU.gamma(square, degree), child)


# ----------------------------------------------------------------------
# restriction along X ↦ (X, 0)
# ----------------------------------------------------------------------
@dataclass(frozen=True, eq=False)
class PairSequence:
    """α, β and ∂ of the triple 0 → Y → X in one degree; ∂ is None at the bottom of the window."""

    triple: str
    alpha: AbMor
    beta: AbMor
    boundary: Optional[AbMor]


class RestrictedHomology:
    """H_i(X) ↦ H_i(X, 0) for a strictly initial object 0 with every (X, 0) distinguished."""

    def __init__(self, RU: RelUniversalCat):
        self.RU = RU
        C = RU.pairs.base
        initial = C.strictly_initial_objects()
        if not initial:
            raise NoInitial(f"{C.name} has no strictly initial object")
        self.zero = initial[0]
        self._pairs: Dict[str, str] = {}
        for X in C.objects:
            found = RU.pairs.find_pair(X, self.zero)
            if not found:
                raise NoInitial(f"({X},{self.zero}) is not distinguished")
            self._pairs[X] = found[0]

    def pair_of(self, X: str) -> str:
        return self._pairs[X]

    def obj(self, X: str, degree: int) -> Presentation:
        return self.RU.H(self.pair_of(X), degree)

    def mor(self, m: str, degree: int) -> AbMor:
        """H_i(m, id_0): H_i(X, 0) → H_i(X′, 0)."""
        C = self.RU.pairs.base
        square = self.RU.pairs.square(
            self.pair_of(C.source(m)), self.pair_of(C.target(m)), m, C.identity(self.zero)
        )
        return self.RU.gamma(square, degree)

    def zero_certificate(self, degree: int) -> Certificate:
        """r_∂(H_i(0)) = H_i(0, 0) = 0."""
        return purity_certificate(self.RU, self.pair_of(self.zero), degree)


def restricted_homology(RU: RelUniversalCat) -> RestrictedHomology:
    """
    The restriction r_∂ along C → C^□.

    Raises:
        NoInitial: When C has no strictly initial object 0 or some (X, 0) is not distinguished
    """
    return RestrictedHomology(RU)


def pair_sequence(RU: RelUniversalCat, g: str, degree: int) -> PairSequence:
    """
    The long sequence of the pair g: Y → X, as the triple (0 → Y, g) in degree i.

    Raises:
        ValueError: When g is not distinguished
    """
    R = restricted_homology(RU)
    C = RU.pairs.base
    t = find_triple(RU.nori.triples, R.pair_of(C.source(g)), g)
    if t is None:
        raise ValueError(f"'{g}' is not a distinguished morphism")
    a, _ = RU.window
    boundary = RU.boundary(t.name, degree) if degree > a else None
    return PairSequence(t.name, RU.gamma(t.alpha, degree), RU.gamma(t.beta, degree), boundary)


# ----------------------------------------------------------------------
# k-projection
# ----------------------------------------------------------------------
def relative_k_projection(RU: RelUniversalCat, k: int) -> KProjection:
    """
    π_k: A_∂(C) → Ab_R sending H_k(X, 0) to R for X not initial, everything else to 0.

    Raises:
        NoFinalObject: When C has no final object
        NoInitial: When C has no strictly initial object
        OutOfWindow: When k is outside the window
    """
    RU.nori.check_degree(k)
    C, pairs, nori = RU.pairs.base, RU.pairs, RU.nori
    finals = C.final_objects()
    if not finals:
        raise NoFinalObject(f"{C.name} has no final object")
    R = restricted_homology(RU)
    initials = set(C.initial_objects())

    def alive(pair: str, degree: int) -> bool:
        p = pairs.pair(pair)
        return degree == k and p.bottom in initials and p.top not in initials

    point = point_category(RU.ring)
    P, E = point.envelope, RU.base.envelope
    objects = {}
    for i in nori.degrees:
        for p in pairs.pairs:
            objects[nori.vertex(p.name, i)] = STAR if alive(p.name, i) else ()
    edges = {}
    for i in nori.degrees:
        for pm in pairs.morphisms:
            if pairs.is_identity(pm.name):
                continue
            src, dst = objects[nori.vertex(pm.source, i)], objects[nori.vertex(pm.target, i)]
            edges[nori.gamma_label(pm.name, i)] = P.identity(STAR) if src and dst else P.zero(src, dst)
    for i in range(RU.window[0] + 1, RU.window[1] + 1):
        for t in nori.triples:
            src, dst = objects[nori.vertex(t.upper, i)], objects[nori.vertex(t.lower, i - 1)]
            edges[nori.boundary_label(t.name, i)] = P.zero(src, dst)
    projection = AdditiveFunctor(E, P, objects, edges=edges)
    top = nori.vertex(R.pair_of(finals[0]), k)
    section = AdditiveFunctor(P, E, {"*": (top,)}, morphisms={"id_*": E.identity((top,))})
    logger.info(f"Relative k-projection onto degree {k} through ({finals[0]},{R.zero})")
    return KProjection(k, RU.base, projection, section, point, bounds=RU.quotient.bounds)


def k_projection(handle: Union[GradedAbCat, RelUniversalCat], k: int) -> Union[GradedKProjection, KProjection]:
    """π_k with its section ι_k, for A(C) or A_∂(C)."""
    if isinstance(handle, RelUniversalCat):
        return relative_k_projection(handle, k)
    return graded_k_projection(handle, k)


# ----------------------------------------------------------------------
# additivity and duality
# ----------------------------------------------------------------------
def additive_quotient(RU: RelUniversalCat, rows: Sequence[CoproductRow],
                      bounds: Optional[Bounds] = None) -> SerreQuotient:
    """
    A_∂(C) with H_i(−, 0) made finitely additive on the listed coproducts.

    Raises:
        NotACoproduct: When a row fails the universal property in C
        NoInitial: When the restriction to H_i(X, 0) is not available
    """
    R = restricted_homology(RU)
    for row in rows:
        verify_coproduct(RU.pairs.base, row)
    extra: List[Generator] = []
    for i in RU.degrees:
        for row in rows:
            extra.extend(additivity_generators(
                RU.base, row,
                lambda x, i=i: R.obj(x, i),
                lambda m, i=i: R.mor(m, i),
                i,
            ))
    logger.info(f"Additive quotient adds {len(extra)} generators for {len(rows)} coproduct rows")
    return quotient_by_gens(RU.base, RU.gens.extend(extra), bounds=bounds or RU.quotient.bounds)


class RelCohomology:
    """The opposite of A_∂(C): H^i(X,Y) is the dual of H_i(X,Y) in Ab of the opposite Nori base."""

    def __init__(self, RU: RelUniversalCat):
        self.RU = RU
        self.view: OppositeView = op_view(RU.base)
        self.category: AbCat = self.view.category

    def H(self, pair: str, degree: int) -> Presentation:
        return self.view.dual_object(self.RU.H(pair, degree))

    def gamma(self, square: str, degree: int) -> AbMor:
        """H^i of a square, running from the target pair to the source pair."""
        return self.view.dual_morphism(self.RU.gamma(square, degree))

    def boundary(self, triple: str, degree: int) -> AbMor:
        """δ: H^{i-1}(lower) → H^i(upper)."""
        if not self.RU.window[0] < degree <= self.RU.window[1]:
            raise OutOfWindow(f"no coboundary reaches degree {degree}")
        return self.view.dual_morphism(self.RU.boundary(triple, degree))


def universal_cohomology(RU: RelUniversalCat) -> RelCohomology:
    return RelCohomology(RU)
