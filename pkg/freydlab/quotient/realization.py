"""Realizations: exact functors out of Ab(A) induced by representations of the base.

A representation sends base vertices to finitely presented modules (or to
objects of another free abelian category) and base morphisms to maps that
respect the composition table. Its exact extension evaluates one-layer
objects as cokernels and presentations as kernels.
"""

import logging
from abc import ABC, abstractmethod
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

from ..additive import AddMor, AdditiveFunctor, AddObj
from ..coeff import FPModule, Mat, ModuleMap, ModuleSummary, column_span_contains, hstack, kernel_gens, solve_right
from ..errors import NotAMorphism, RelationViolation, ShapeMismatch, WrongBase
from ..freyd import AbCat, AbMor, OneLayer, Presentation
from ..freyd.point import is_point

logger = logging.getLogger(__name__)


class TargetHom(ABC):
    """A hom-set of the target category as a module of coordinate vectors modulo relations."""

    ring: Any
    relations: Mat

    @abstractmethod
    def vector(self, f: Any) -> List[Any]:
        """Coordinates of a target morphism."""
        pass

    @property
    def dimension(self) -> int:
        return self.relations.rows

    def _span(self, vectors: Sequence[Sequence[Any]]) -> Mat:
        cols = [list(v) for v in vectors]
        mat = Mat._raw(self.ring, self.dimension, len(cols), [[c[k] for c in cols] for k in range(self.dimension)])
        return hstack(self.ring, self.dimension, [mat, self.relations])

    def contains(self, vectors: Sequence[Sequence[Any]], others: Sequence[Sequence[Any]]) -> bool:
        """True iff every vector of ``others`` lies in span(vectors) + relations."""
        if not others:
            return True
        target = Mat._raw(self.ring, self.dimension, len(others), [[v[k] for v in others] for k in range(self.dimension)])
        return column_span_contains(self._span(vectors), target)

    def same_span(self, a: Sequence[Sequence[Any]], b: Sequence[Sequence[Any]]) -> bool:
        return self.contains(a, b) and self.contains(b, a)

    def submodule(self, vectors: Sequence[Sequence[Any]]) -> FPModule:
        """The submodule generated by ``vectors`` as a finitely presented module."""
        if not vectors:
            return FPModule.zero(self.ring)
        rel = kernel_gens(self._span(vectors)).top(len(vectors))
        return FPModule(self.ring, rel)


class ModuleHomSpace(TargetHom):
    """Hom(U, V) for finitely presented modules: matrices modulo relations of V."""

    def __init__(self, src: FPModule, dst: FPModule):
        self.src, self.dst = src, dst
        self.ring = src.ring
        n, m, r = dst.generators, src.generators, dst.relations.cols
        cols = []
        for s in range(m):
            for k in range(r):
                col = [self.ring.zero] * (n * m)
                for t in range(n):
                    col[t * m + s] = dst.relations[t, k]
                cols.append(col)
        self.relations = Mat._raw(self.ring, n * m, len(cols), [[c[x] for c in cols] for x in range(n * m)])

    def vector(self, f: ModuleMap) -> List[Any]:
        return [x for row in f.matrix.to_lists() for x in row]


class AbHomSpace(TargetHom):
    """Hom(U, V) in a target free abelian category, on the raw generators of its hom module."""

    def __init__(self, target: AbCat, src: Presentation, dst: Presentation):
        self.module = target.hom(src, dst)
        self.ring = target.ring
        self.relations = self.module.relations

    def vector(self, f: AbMor) -> List[Any]:
        raw = self.module.raw_coordinates(f)
        if raw is None:
            raise NotAMorphism("not a morphism of the target hom-set")
        return raw


class Realization(ABC):
    """An exact functor out of ``source``."""

    name: str = ""

    def __init__(self, source: AbCat, name: str = ""):
        self.source = source
        self.name = name

    @abstractmethod
    def obj(self, X: Presentation) -> Any:
        pass

    @abstractmethod
    def mor(self, f: AbMor) -> Any:
        pass

    @abstractmethod
    def value_is_zero(self, value: Any) -> bool:
        pass

    @abstractmethod
    def describe(self, value: Any) -> Any:
        pass

    @abstractmethod
    def target_hom(self, U: Any, V: Any) -> TargetHom:
        pass

    @abstractmethod
    def map_compose(self, g: Any, f: Any) -> Any:
        pass

    @abstractmethod
    def map_inverse(self, f: Any) -> Optional[Any]:
        pass

    @abstractmethod
    def map_is_iso(self, f: Any) -> bool:
        pass

    def kills(self, X: Presentation) -> bool:
        return self.value_is_zero(self.obj(X))


class ModuleRealization(Realization):
    """Exact extension of a representation of the base in finitely presented R-modules."""

    def __init__(
        self,
        source: AbCat,
        vertices: Mapping[str, FPModule],
        morphisms: Optional[Mapping[Any, ModuleMap]] = None,
        edges: Optional[Mapping[str, ModuleMap]] = None,
        name: str = "",
        check: bool = True,
    ):
        super().__init__(source, name)
        self.ring = source.ring
        self.vertices: Dict[str, FPModule] = dict(vertices)
        missing = [v for v in source.base.objects if v not in self.vertices]
        if missing:
            raise ShapeMismatch(f"no module for vertices: {', '.join(missing)}")
        self._morphisms: Dict[Any, ModuleMap] = dict(morphisms or {})
        self._edges: Dict[str, ModuleMap] = dict(edges or {})
        self._objects: Dict[Presentation, Tuple[FPModule, ModuleMap]] = {}
        if check:
            self.verify()

    # ------------------------------------------------------------------
    # the representation on the base
    # ------------------------------------------------------------------
    def on_morphism(self, m: Any) -> ModuleMap:
        if m in self._morphisms:
            return self._morphisms[m]
        base = self.source.base
        src = self.vertices[base.source(m)]
        if base.is_identity(m):
            value = src.identity()
        else:
            word = m.edges if hasattr(m, "edges") else base.word(m)
            if word is None or any(e not in self._edges for e in word):
                raise ShapeMismatch(f"no map for morphism '{m}'")
            value = src.identity()
            for label in word:
                value = self._edges[label].compose(value)
        self._morphisms[m] = value
        return value

    def verify(self) -> None:
        """
        Check that the given maps form a representation.

        Raises:
            RelationViolation: When a map is ill defined or the composition table is not respected
        """
        base = self.source.base
        given = list(self._morphisms.items())
        for label, value in self._edges.items():
            given.append((label, value))
        for m, value in given:
            if not value.is_well_defined():
                raise RelationViolation(f"map for '{m}' does not respect relations", relation=(m,))
        if not base.is_finite or hasattr(base, "quiver"):
            return
        for m in base.morphisms:
            value = self.on_morphism(m)
            want = (self.vertices[base.source(m)], self.vertices[base.target(m)])
            if (value.src, value.dst) != want:
                raise RelationViolation(f"map for '{m}' has the wrong modules", relation=(m,))
        for o in base.objects:
            if not self.on_morphism(base.identity(o)).equals(self.vertices[o].identity()):
                raise RelationViolation(f"identity of '{o}' is not preserved", relation=(base.identity(o),))
        for f in base.morphisms:
            for g in base.outgoing(base.target(f)):
                lhs = self.on_morphism(base.compose(g, f))
                rhs = self.on_morphism(g).compose(self.on_morphism(f))
                if not lhs.equals(rhs):
                    raise RelationViolation(f"composite '{g}' after '{f}' is not preserved", relation=(g, f))

    # ------------------------------------------------------------------
    # additive and exact extension
    # ------------------------------------------------------------------
    def add_object(self, obj: AddObj) -> FPModule:
        return FPModule.direct_sum(self.ring, [self.vertices[v] for v in obj])

    def add_morphism(self, f: AddMor) -> Mat:
        """Matrix of F(f) on generators (a map F(src) -> F(dst))."""
        ring = self.ring
        srcs = [self.vertices[v].generators for v in f.src]
        dsts = [self.vertices[v].generators for v in f.dst]
        rows = []
        for j, d in enumerate(dsts):
            blocks = []
            for i, s in enumerate(srcs):
                block = Mat.zeros(ring, d, s)
                for m, c in f.entries[j][i].terms:
                    block = block + self.on_morphism(m).matrix.scale(c)
                blocks.append(block)
            rows.append(hstack(ring, d, blocks))
        total_src = sum(srcs)
        if not rows:
            return Mat.zeros(ring, 0, total_src)
        data = [r for block in rows for r in block.to_lists()]
        return Mat._raw(ring, sum(dsts), total_src, data)

    def layer(self, layer: OneLayer) -> FPModule:
        """F(coker r) = coker F(r)."""
        gens = self.add_object(layer.generators)
        return FPModule(self.ring, hstack(self.ring, gens.generators,
                                          [gens.relations, self.add_morphism(layer.matrix)]))

    def object_with_inclusion(self, X: Presentation) -> Tuple[FPModule, ModuleMap]:
        if X not in self._objects:
            fp, fq = self.layer(X.p), self.layer(X.q)
            self._objects[X] = ModuleMap(fp, fq, self.add_morphism(X.phi)).kernel()
        return self._objects[X]

    def obj(self, X: Presentation) -> FPModule:
        return self.object_with_inclusion(X)[0]

    def mor(self, f: AbMor) -> ModuleMap:
        """
        F(f) as a map of the kernel modules.

        Raises:
            NotAMorphism: When the generator map does not restrict to the kernels
        """
        ring = self.ring
        kx, inc_x = self.object_with_inclusion(f.src)
        ky, inc_y = self.object_with_inclusion(f.dst)
        image = self.add_morphism(f.a) @ inc_x.matrix
        span = hstack(ring, inc_y.dst.generators, [inc_y.matrix, inc_y.dst.relations])
        x = solve_right(span, image)
        if x is None:
            raise NotAMorphism("generator map does not restrict to the kernels")
        return ModuleMap(kx, ky, x.top(ky.generators))

    def value_is_zero(self, value: FPModule) -> bool:
        return value.is_zero()

    def describe(self, value: FPModule) -> ModuleSummary:
        return value.summary()

    def target_hom(self, U: FPModule, V: FPModule) -> ModuleHomSpace:
        return ModuleHomSpace(U, V)

    def map_compose(self, g: ModuleMap, f: ModuleMap) -> ModuleMap:
        return g.compose(f)

    def map_inverse(self, f: ModuleMap) -> Optional[ModuleMap]:
        return f.inverse()

    def map_is_iso(self, f: ModuleMap) -> bool:
        return f.is_iso()


class InducedRealization(Realization):
    """Exact extension of an additive functor into another free abelian category."""

    def __init__(self, functor: AdditiveFunctor, source: AbCat, target: AbCat, name: str = ""):
        super().__init__(source, name)
        if functor.source != source.envelope or functor.target != target.envelope:
            raise ShapeMismatch("functor does not run between the given envelopes")
        self.functor = functor
        self.target = target

    def obj(self, X: Presentation) -> Presentation:
        F = self.functor
        return Presentation(OneLayer(F(X.p.matrix)), OneLayer(F(X.q.matrix)), F(X.phi))

    def mor(self, f: AbMor) -> AbMor:
        F = self.functor
        return AbMor(self.obj(f.src), self.obj(f.dst), F(f.a), F(f.g))

    def value_is_zero(self, value: Presentation) -> bool:
        return self.target.is_zero(value)

    def describe(self, value: Presentation) -> Dict[str, Any]:
        return {"zero": self.target.is_zero(value), "shape": list(value.shape)}

    def target_hom(self, U: Presentation, V: Presentation) -> AbHomSpace:
        return AbHomSpace(self.target, U, V)

    def map_compose(self, g: AbMor, f: AbMor) -> AbMor:
        return self.target.compose(g, f)

    def map_inverse(self, f: AbMor) -> Optional[AbMor]:
        return self.target.inverse(f)

    def map_is_iso(self, f: AbMor) -> bool:
        return self.target.is_iso(f)


def realize(
    source: AbCat,
    vertices: Mapping[str, FPModule],
    morphisms: Optional[Mapping[Any, ModuleMap]] = None,
    edges: Optional[Mapping[str, ModuleMap]] = None,
    name: str = "",
) -> ModuleRealization:
    """
    The exact functor Ab(A) -> R-mod extending a representation of the base.

    Raises:
        RelationViolation: When the data is not a representation
    """
    F = ModuleRealization(source, vertices, morphisms, edges, name=name)
    logger.debug(f"Realization '{name}' on {len(F.vertices)} vertices")
    return F


def evaluation(source: AbCat) -> ModuleRealization:
    """Evaluation at the ring over the one point category (* ↦ R)."""
    if not is_point(source):
        raise WrongBase(f"evaluation at the ring needs the one point category, not {source.base.name}")
    ring = source.ring
    vertices = {v: FPModule.free(ring, 1) for v in source.base.objects}
    return ModuleRealization(source, vertices, name=f"evaluation at {ring}")
