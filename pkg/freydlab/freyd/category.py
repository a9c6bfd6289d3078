"""The abelian category Ab(A) generated by an additive envelope A.

Every operation reduces to linear systems over the coefficient ring: a
morphism is valid when compatibility witnesses exist, zero when it factors
through the defining map of its source, and hom-sets are computed as
finitely presented R-modules.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Any, Dict, Iterator, List, NamedTuple, Optional, Sequence, Tuple

from ..additive import AddCat, AddMor, AddObj, LinearSystem, factor_right
from ..coeff import Mat, ModuleSummary, hstack, inverse, kernel_gens, smith_form, solve_right
from ..coeff.ring import RATIONALS
from ..config import get_config
from ..errors import MalformedPresentation, NotAMorphism, ShapeMismatch, UnsupportedBase
from .presentation import AbMor, OneLayer, Presentation

logger = logging.getLogger(__name__)


class Witnesses(NamedTuple):
    """b: R_P -> R_P', gb: R_Q -> R_Q', v: G_P -> R_Q' certifying a morphism."""

    b: AddMor
    gb: AddMor
    v: AddMor


@dataclass(frozen=True)
class DirectSum:
    obj: Presentation
    injections: Tuple[AbMor, ...]
    projections: Tuple[AbMor, ...]


@dataclass(frozen=True)
class Image:
    """im f with ``inclusion``: im f -> Y and ``factor``: X -> im f."""

    obj: Presentation
    inclusion: AbMor
    factor: AbMor


class AbCat:
    """Ab(A) for an additive envelope A."""

    def __init__(self, envelope: AddCat):
        self.envelope = envelope
        self.ring = envelope.ring
        self.base = envelope.base
        self._homs: Dict[Tuple[Presentation, Presentation], "HomModule"] = {}

    @property
    def name(self) -> str:
        return f"Ab({self.envelope.name})"

    def __repr__(self) -> str:
        return f"AbCat({self.name})"

    # ------------------------------------------------------------------
    # objects
    # ------------------------------------------------------------------
    def one_layer(self, relations: AddMor) -> OneLayer:
        return OneLayer(relations)

    def free_layer(self, obj: AddObj) -> OneLayer:
        return OneLayer(self.envelope.zero((), tuple(obj)))

    def presentation(self, p: OneLayer, q: OneLayer, phi: AddMor, check: bool = True) -> Presentation:
        """
        The object ker(φ: P -> Q).

        Raises:
            MalformedPresentation: When φ does not map the relations of P into those of Q
        """
        if phi.src != p.generators or phi.dst != q.generators:
            raise MalformedPresentation(f"φ maps {phi.src} -> {phi.dst}, expected {p.generators} -> {q.generators}")
        if check and factor_right(phi @ p.matrix, q.matrix) is None:
            raise MalformedPresentation("φ does not carry the relations of P into the relations of Q")
        return Presentation(p, q, phi)

    def delta_object(self, obj: AddObj) -> Presentation:
        """The generators ``obj`` seen as an object (no relations, nothing killed)."""
        obj = tuple(obj)
        return Presentation(self.free_layer(obj), self.free_layer(()), self.envelope.zero(obj, ()))

    def delta(self, vertex: str) -> Presentation:
        """Δ(v): the universal object attached to a base vertex."""
        return self.delta_object(self.envelope.obj([vertex]))

    def delta_morphism(self, m: Any) -> AbMor:
        """Δ of an envelope morphism (or of a base morphism)."""
        if not isinstance(m, AddMor):
            m = self.envelope.embed(m)
        return AbMor(self.delta_object(m.src), self.delta_object(m.dst), m, self.envelope.zero((), ()))

    def zero_object(self) -> Presentation:
        return self.delta_object(())

    def cokernel_object(self, r: AddMor) -> Presentation:
        """coker Δ(r)."""
        return Presentation(OneLayer(r), self.free_layer(()), self.envelope.zero(r.dst, ()))

    def kernel_object(self, r: AddMor) -> Presentation:
        """ker Δ(r)."""
        return Presentation(self.free_layer(r.src), self.free_layer(r.dst), r)

    # ------------------------------------------------------------------
    # morphisms
    # ------------------------------------------------------------------
    def morphism(self, src: Presentation, dst: Presentation, a: AddMor, g: AddMor, check: bool = True) -> AbMor:
        """
        Build a morphism from its actions on generators.

        Raises:
            NotAMorphism: When no compatibility witnesses exist
        """
        f = AbMor(src, dst, a, g)
        self._check_shapes(f)
        if check and self.witnesses(f) is None:
            raise NotAMorphism("the given generator maps are not compatible with the presentations")
        return f

    @staticmethod
    def _check_shapes(f: AbMor) -> None:
        X, Y = f.src, f.dst
        if (f.a.src, f.a.dst) != (X.p.generators, Y.p.generators):
            raise NotAMorphism(f"a maps {f.a.src} -> {f.a.dst}, expected {X.p.generators} -> {Y.p.generators}")
        if (f.g.src, f.g.dst) != (X.q.generators, Y.q.generators):
            raise NotAMorphism(f"g maps {f.g.src} -> {f.g.dst}, expected {X.q.generators} -> {Y.q.generators}")

    def witnesses(self, f: AbMor) -> Optional[Witnesses]:
        """Compatibility witnesses of ``f``, or None when ``f`` is not a morphism."""
        self._check_shapes(f)
        X, Y = f.src, f.dst
        s = LinearSystem(self.envelope)
        b = s.unknown(X.p.relations, Y.p.relations, "b")
        gb = s.unknown(X.q.relations, Y.q.relations, "gb")
        v = s.unknown(X.p.generators, Y.q.relations, "v")
        s.equation([(1, Y.p.matrix, b, None)], f.a @ X.p.matrix)
        s.equation([(1, Y.q.matrix, gb, None)], f.g @ X.q.matrix)
        s.equation([(1, Y.q.matrix, v, None)], Y.phi @ f.a - f.g @ X.phi)
        solution = s.solve()
        return None if solution is None else Witnesses(*solution)

    def is_valid(self, f: AbMor) -> bool:
        try:
            return self.witnesses(f) is not None
        except NotAMorphism:
            return False

    def identity(self, X: Presentation) -> AbMor:
        E = self.envelope
        return AbMor(X, X, E.identity(X.p.generators), E.identity(X.q.generators))

    def zero_morphism(self, X: Presentation, Y: Presentation) -> AbMor:
        E = self.envelope
        return AbMor(X, Y, E.zero(X.p.generators, Y.p.generators), E.zero(X.q.generators, Y.q.generators))

    def compose(self, h: AbMor, f: AbMor) -> AbMor:
        """h ∘ f."""
        if f.dst != h.src:
            raise ShapeMismatch("morphisms are not composable")
        return AbMor(f.src, h.dst, h.a @ f.a, h.g @ f.g)

    def compose_all(self, chain: Sequence[AbMor]) -> AbMor:
        """Composite of morphisms listed in the order they are traversed."""
        result = chain[0]
        for f in chain[1:]:
            result = self.compose(f, result)
        return result

    def _parallel(self, f: AbMor, g: AbMor) -> None:
        if f.src != g.src or f.dst != g.dst:
            raise ShapeMismatch("morphisms are not parallel")

    def add(self, f: AbMor, g: AbMor) -> AbMor:
        self._parallel(f, g)
        return AbMor(f.src, f.dst, f.a + g.a, f.g + g.g)

    def sub(self, f: AbMor, g: AbMor) -> AbMor:
        self._parallel(f, g)
        return AbMor(f.src, f.dst, f.a - g.a, f.g - g.g)

    def neg(self, f: AbMor) -> AbMor:
        return AbMor(f.src, f.dst, -f.a, -f.g)

    def scale(self, f: AbMor, c: Any) -> AbMor:
        return AbMor(f.src, f.dst, f.a.scale(c), f.g.scale(c))

    def linear_combination(self, X: Presentation, Y: Presentation, terms: Sequence[Tuple[Any, AbMor]]) -> AbMor:
        total = self.zero_morphism(X, Y)
        for c, f in terms:
            if c != 0:
                total = self.add(total, self.scale(f, c))
        return total

    # ------------------------------------------------------------------
    # zero tests
    # ------------------------------------------------------------------
    def is_zero_morphism(self, f: AbMor) -> bool:
        """True iff ``f`` factors through the defining map of its source."""
        X, Y = f.src, f.dst
        s = LinearSystem(self.envelope)
        h = s.unknown(X.q.generators, Y.p.generators, "h")
        u = s.unknown(X.p.generators, Y.p.relations, "u")
        w = s.unknown(X.q.relations, Y.p.relations, "w")
        s.equation([(1, None, h, X.phi), (1, Y.p.matrix, u, None)], f.a)
        s.equation([(1, None, h, X.q.matrix), (-1, Y.p.matrix, w, None)])
        return s.is_solvable()

    def equal(self, f: AbMor, g: AbMor) -> bool:
        return self.is_zero_morphism(self.sub(f, g))

    def is_zero(self, X: Presentation) -> bool:
        return self.is_zero_morphism(self.identity(X))

    # ------------------------------------------------------------------
    # biproducts
    # ------------------------------------------------------------------
    def direct_sum(self, objs: Sequence[Presentation]) -> DirectSum:
        E = self.envelope
        gp = [X.p.generators for X in objs]
        gq = [X.q.generators for X in objs]
        total = Presentation(
            OneLayer(E.block_diagonal([X.p.matrix for X in objs])),
            OneLayer(E.block_diagonal([X.q.matrix for X in objs])),
            E.block_diagonal([X.phi for X in objs]),
        )
        inj = tuple(AbMor(X, total, E.injection(gp, k), E.injection(gq, k)) for k, X in enumerate(objs))
        proj = tuple(AbMor(total, X, E.projection(gp, k), E.projection(gq, k)) for k, X in enumerate(objs))
        return DirectSum(total, inj, proj)

    def copair(self, morphisms: Sequence[AbMor], dst: Optional[Presentation] = None) -> AbMor:
        """[f_1 ... f_n]: ⊕ X_k -> Y."""
        E = self.envelope
        Y = dst if dst is not None else morphisms[0].dst
        total = self.direct_sum([f.src for f in morphisms]).obj
        return AbMor(total, Y, E.hstack(Y.p.generators, [f.a for f in morphisms]),
                     E.hstack(Y.q.generators, [f.g for f in morphisms]))

    def pair(self, morphisms: Sequence[AbMor], src: Optional[Presentation] = None) -> AbMor:
        """(f_1; ...; f_n): X -> ⊕ Y_k."""
        E = self.envelope
        X = src if src is not None else morphisms[0].src
        total = self.direct_sum([f.dst for f in morphisms]).obj
        return AbMor(X, total, E.vstack(X.p.generators, [f.a for f in morphisms]),
                     E.vstack(X.q.generators, [f.g for f in morphisms]))

    # ------------------------------------------------------------------
    # kernels, cokernels, images
    # ------------------------------------------------------------------
    def kernel(self, f: AbMor) -> Tuple[Presentation, AbMor]:
        """ker f with its inclusion into the source."""
        E = self.envelope
        X, Y = f.src, f.dst
        K = Presentation(
            X.p,
            OneLayer(E.block_diagonal([X.q.matrix, Y.p.matrix])),
            E.vstack(X.p.generators, [X.phi, f.a]),
        )
        k = AbMor(K, X, E.identity(X.p.generators), E.projection([X.q.generators, Y.p.generators], 0))
        return K, k

    def _cokernel_layer(self, f: AbMor) -> Tuple[OneLayer, AddMor, AddMor]:
        """P-layer of coker f with the inclusions of G_Y0 and G_X1 into its generators."""
        E = self.envelope
        X, Y = f.src, f.dst
        gy0, gx1 = Y.p.generators, X.q.generators
        relations = E.from_blocks(
            [Y.p.relations, X.q.relations, X.p.generators],
            [gy0, gx1],
            [[Y.p.matrix, None, f.a], [None, X.q.matrix, -X.phi]],
        )
        return OneLayer(relations), E.injection([gy0, gx1], 0), E.injection([gy0, gx1], 1)

    def cokernel(self, f: AbMor) -> Tuple[Presentation, AbMor]:
        """coker f with the projection from the target."""
        E = self.envelope
        Y = f.dst
        layer, iota, _ = self._cokernel_layer(f)
        gens = layer.generators
        psi = E.hstack(Y.q.generators, [Y.phi, f.g])
        killed = OneLayer(E.hstack(gens, [layer.matrix, iota]))
        C = Presentation(
            layer,
            OneLayer(E.block_diagonal([Y.q.matrix, killed.matrix])),
            E.vstack(gens, [psi, E.identity(gens)]),
        )
        c = AbMor(Y, C, iota, E.vstack(Y.q.generators, [E.identity(Y.q.generators), E.zero(Y.q.generators, gens)]))
        return C, c

    def image(self, f: AbMor) -> Image:
        E = self.envelope
        _, c = self.cokernel(f)
        I, inclusion = self.kernel(c)
        _, _, j = self._cokernel_layer(f)
        factor = AbMor(f.src, I, f.a, E.vstack(f.src.q.generators, [f.g, j]))
        return Image(I, inclusion, factor)

    def is_mono(self, f: AbMor) -> bool:
        return self.is_zero(self.kernel(f)[0])

    def is_epi(self, f: AbMor) -> bool:
        return self.is_zero(self.cokernel(f)[0])

    def is_iso(self, f: AbMor) -> bool:
        return self.is_mono(f) and self.is_epi(f)

    # ------------------------------------------------------------------
    # factorization
    # ------------------------------------------------------------------
    def _morphism_unknowns(self, s: LinearSystem, T: Presentation, K: Presentation) -> Tuple[int, int]:
        """Unknown morphism T -> K with its validity equations."""
        ua = s.unknown(T.p.generators, K.p.generators, "ua")
        ug = s.unknown(T.q.generators, K.q.generators, "ug")
        b = s.unknown(T.p.relations, K.p.relations, "b")
        gb = s.unknown(T.q.relations, K.q.relations, "gb")
        v = s.unknown(T.p.generators, K.q.relations, "v")
        s.equation([(1, None, ua, T.p.matrix), (-1, K.p.matrix, b, None)])
        s.equation([(1, None, ug, T.q.matrix), (-1, K.q.matrix, gb, None)])
        s.equation([(1, K.phi, ua, None), (-1, None, ug, T.phi), (-1, K.q.matrix, v, None)])
        return ua, ug

    def lift(self, k: AbMor, t: AbMor) -> Optional[AbMor]:
        """Some u: T -> K with k ∘ u = t, or None."""
        if k.dst != t.dst:
            raise ShapeMismatch("lift needs a common target")
        K, Y, T = k.src, k.dst, t.src
        s = LinearSystem(self.envelope)
        ua, ug = self._morphism_unknowns(s, T, K)
        h = s.unknown(T.q.generators, Y.p.generators, "h")
        z = s.unknown(T.p.generators, Y.p.relations, "z")
        w = s.unknown(T.q.relations, Y.p.relations, "w")
        s.equation([(1, k.a, ua, None), (-1, None, h, T.phi), (-1, Y.p.matrix, z, None)], t.a)
        s.equation([(1, None, h, T.q.matrix), (-1, Y.p.matrix, w, None)])
        solution = s.solve()
        if solution is None:
            return None
        return AbMor(T, K, solution[ua], solution[ug])

    def colift(self, c: AbMor, t: AbMor) -> Optional[AbMor]:
        """Some u: C -> T with u ∘ c = t, or None."""
        if c.src != t.src:
            raise ShapeMismatch("colift needs a common source")
        X, C, T = c.src, c.dst, t.dst
        s = LinearSystem(self.envelope)
        ua, ug = self._morphism_unknowns(s, C, T)
        h = s.unknown(X.q.generators, T.p.generators, "h")
        z = s.unknown(X.p.generators, T.p.relations, "z")
        w = s.unknown(X.q.relations, T.p.relations, "w")
        s.equation([(1, None, ua, c.a), (-1, None, h, X.phi), (-1, T.p.matrix, z, None)], t.a)
        s.equation([(1, None, h, X.q.matrix), (-1, T.p.matrix, w, None)])
        solution = s.solve()
        if solution is None:
            return None
        return AbMor(C, T, solution[ua], solution[ug])

    def inverse(self, f: AbMor) -> Optional[AbMor]:
        if not self.is_iso(f):
            return None
        return self.lift(f, self.identity(f.dst))

    # ------------------------------------------------------------------
    # hom modules
    # ------------------------------------------------------------------
    def hom(self, X: Presentation, Y: Presentation) -> "HomModule":
        """
        Hom(X, Y) as a finitely presented R-module.

        Raises:
            UnsupportedBase: When the base has infinite hom-sets
        """
        key = (X, Y)
        if key not in self._homs:
            self._homs[key] = HomModule(self, X, Y)
        return self._homs[key]

    def iso_search(self, X: Presentation, Y: Presentation) -> Optional[AbMor]:
        """An isomorphism X -> Y among small combinations of hom generators, or None."""
        x_zero, y_zero = self.is_zero(X), self.is_zero(Y)
        if x_zero or y_zero:
            return self.zero_morphism(X, Y) if x_zero and y_zero else None
        for f in self.hom(X, Y).candidates():
            if self.is_iso(f):
                return f
        return None


class HomModule:
    """Hom(X, Y) with a cyclic decomposition whose generators are morphisms."""

    def __init__(self, ab: AbCat, src: Presentation, dst: Presentation):
        E = ab.envelope
        if not E.is_finite:
            raise UnsupportedBase(f"hom-sets of {E.base.name} are not finitely generated")
        self.ab = ab
        self.src = src
        self.dst = dst
        ring = ab.ring
        X, Y = src, dst

        valid = LinearSystem(E)
        a = valid.unknown(X.p.generators, Y.p.generators, "a")
        g = valid.unknown(X.q.generators, Y.q.generators, "g")
        b = valid.unknown(X.p.relations, Y.p.relations, "b")
        gb = valid.unknown(X.q.relations, Y.q.relations, "gb")
        v = valid.unknown(X.p.generators, Y.q.relations, "v")
        valid.equation([(1, None, a, X.p.matrix), (-1, Y.p.matrix, b, None)])
        valid.equation([(1, None, g, X.q.matrix), (-1, Y.q.matrix, gb, None)])
        valid.equation([(1, Y.phi, a, None), (-1, None, g, X.phi), (-1, Y.q.matrix, v, None)])
        solutions = valid.kernel()
        everything = range(solutions.cols)
        self._keys_a = valid.unknowns[a].keys
        self._keys_g = valid.unknowns[g].keys
        self._va = solutions.submatrix(valid.block(a), everything)
        self._vg = solutions.submatrix(valid.block(g), everything)

        null = LinearSystem(E)
        na = null.unknown(X.p.generators, Y.p.generators, "a")
        h = null.unknown(X.q.generators, Y.p.generators, "h")
        u = null.unknown(X.p.generators, Y.p.relations, "u")
        w = null.unknown(X.q.relations, Y.p.relations, "w")
        null.equation([(1, None, na, None), (-1, None, h, X.phi), (-1, Y.p.matrix, u, None)])
        null.equation([(1, None, h, X.q.matrix), (-1, Y.p.matrix, w, None)])
        nulls = null.kernel()
        self._za = nulls.submatrix(null.block(na), range(nulls.cols))

        n = self._va.cols
        self._span = hstack(ring, len(self._keys_a), [self._va, self._za])
        self.relations: Mat = kernel_gens(self._span).top(n)
        smith = smith_form(self.relations)
        self._left = smith.left
        left_inverse = inverse(smith.left) if n else Mat.identity(ring, 0)
        invariants: List[Any] = []
        self._columns: List[int] = []
        self._orders: List[Any] = []
        for k in range(n):
            d = smith.diagonal[k] if k < smith.rank else ring.zero
            if ring.is_unit(d):
                continue
            invariants.append(d)
            self._columns.append(k)
            self._orders.append(d)
        self.summary = ModuleSummary(ring, tuple(invariants))
        self.generators: List[AbMor] = [self._element(left_inverse.column(k)) for k in self._columns]
        logger.debug(f"Hom module {self.summary.describe()} from {n} validity generators")

    @property
    def rank(self) -> int:
        """Number of raw generators (solutions of the validity system)."""
        return self._va.cols

    @property
    def orders(self) -> Tuple[Any, ...]:
        return tuple(self._orders)

    def describe(self) -> str:
        return self.summary.describe()

    def is_zero(self) -> bool:
        return self.summary.is_zero

    def _element(self, raw: Sequence[Any]) -> AbMor:
        ring = self.ab.ring
        column = Mat._raw(ring, len(raw), 1, [[x] for x in raw])
        E = self.ab.envelope
        a_coords = (self._va @ column).column(0) if self._va.rows else ()
        g_coords = (self._vg @ column).column(0) if self._vg.rows else ()
        X, Y = self.src, self.dst
        return AbMor(X, Y,
                     E.from_coordinates(X.p.generators, Y.p.generators, self._keys_a, a_coords),
                     E.from_coordinates(X.q.generators, Y.q.generators, self._keys_g, g_coords))

    def raw_coordinates(self, f: AbMor) -> Optional[List[Any]]:
        """Coordinates of ``f`` on the raw generators (defined up to ``relations``)."""
        ring = self.ab.ring
        try:
            target = self.ab.envelope.coordinates(f.a, self._keys_a)
        except ValueError:
            return None
        rhs = Mat._raw(ring, len(target), 1, [[x] for x in target])
        x = solve_right(self._span, rhs)
        if x is None:
            return None
        return list(x.column(0)[: self.rank])

    def coordinates(self, f: AbMor) -> List[Any]:
        """
        Coordinates of ``f`` on ``generators``, reduced modulo their orders.

        Raises:
            NotAMorphism: When ``f`` is not a morphism X -> Y
        """
        raw = self.raw_coordinates(f)
        if raw is None:
            raise NotAMorphism("not a morphism between these objects")
        ring = self.ab.ring
        n = self.rank
        cyclic = (self._left @ Mat._raw(ring, n, 1, [[x] for x in raw])).column(0) if n else ()
        out = []
        for k, d in zip(self._columns, self._orders):
            y = cyclic[k]
            if d != 0 and ring.kind != RATIONALS:
                y = ring.element(int(y) % int(d))
            out.append(y)
        return out

    def element(self, coefficients: Sequence[Any]) -> AbMor:
        """Σ c_k · generators[k]."""
        return self.ab.linear_combination(self.src, self.dst, list(zip(coefficients, self.generators)))

    def candidates(self, bound: Optional[int] = None) -> Iterator[AbMor]:
        """Generators first, then combinations with coefficients in [-bound, bound]."""
        bound = int(get_config().get("search.iso_coefficients", 1)) if bound is None else bound
        gens = self.generators
        yield from gens
        if not gens or bound < 1:
            return
        if len(gens) > 6:
            yield self.element([1] * len(gens))
            return
        ring = self.ab.ring
        for combo in itertools.product(range(-bound, bound + 1), repeat=len(gens)):
            support = [c for c in combo if c]
            if not support or (len(support) == 1 and support[0] == 1):
                continue
            yield self.element([ring.element(c) for c in combo])


def free_abelian(envelope: AddCat) -> AbCat:
    """Ab(A) for an additive envelope A."""
    ab = AbCat(envelope)
    logger.debug(f"Free abelian category {ab.name}")
    return ab
