"""R-linear functors between additive envelopes."""

import logging
from typing import Any, Dict, Mapping, Optional

from ..errors import RelationViolation, ShapeMismatch
from .envelope import AddCat, AddMor, AddObj

logger = logging.getLogger(__name__)


class AdditiveFunctor:
    """
    An additive functor R·C⁺ → R·D⁺ determined by its values on C.

    Values on morphisms may be given directly, or only on the generating edges
    of a category that came from a quiver; other morphisms are then evaluated
    along their words.
    """

    def __init__(
        self,
        source: AddCat,
        target: AddCat,
        objects: Mapping[str, AddObj],
        morphisms: Optional[Mapping[Any, AddMor]] = None,
        edges: Optional[Mapping[str, AddMor]] = None,
        check: bool = True,
    ):
        self.source = source
        self.target = target
        self.objects: Dict[str, AddObj] = {str(v): tuple(o) for v, o in objects.items()}
        missing = [v for v in source.base.objects if v not in self.objects]
        if missing:
            raise ShapeMismatch(f"no value for objects: {', '.join(missing)}")
        self._morphisms: Dict[Any, AddMor] = dict(morphisms or {})
        self._edges: Dict[str, AddMor] = dict(edges or {})
        for label, value in self._edges.items():
            m = self._edge_morphism(label)
            self._check_shape(m, value)
        for m, value in self._morphisms.items():
            self._check_shape(m, value)
        if check:
            self.verify()

    def _edge_morphism(self, label: str) -> Any:
        base = self.source.base
        if hasattr(base, "quiver"):
            return base.quiver.path(base.quiver.edge(label).source, (label,))
        return base.edge_morphism(label)

    def _check_shape(self, m: Any, value: AddMor) -> None:
        base = self.source.base
        want = (self.objects[base.source(m)], self.objects[base.target(m)])
        if (value.src, value.dst) != want:
            raise ShapeMismatch(f"value of '{m}' maps {value.src} -> {value.dst}, expected {want[0]} -> {want[1]}")
        if value.cat != self.target:
            raise ShapeMismatch(f"value of '{m}' lives in {value.cat.name}, not {self.target.name}")

    def on_morphism(self, m: Any) -> AddMor:
        """F(m) for a base morphism of the source."""
        if m in self._morphisms:
            return self._morphisms[m]
        base = self.source.base
        if base.is_identity(m):
            value = self.target.identity(self.objects[base.source(m)])
        else:
            word = m.edges if hasattr(m, "edges") else base.word(m)
            if word is None or not self._edges or any(e not in self._edges for e in word):
                raise ShapeMismatch(f"no value for morphism '{m}'")
            value = self.target.identity(self.objects[base.source(m)])
            for label in word:
                value = self._edges[label] @ value
        self._morphisms[m] = value
        return value

    def on_object(self, obj: AddObj) -> AddObj:
        return AddCat.direct_sum([self.objects[v] for v in obj])

    def __call__(self, f: AddMor) -> AddMor:
        return self.apply(f)

    def apply(self, f: AddMor) -> AddMor:
        """F on an envelope morphism, block by block."""
        target = self.target
        srcs = [self.objects[v] for v in f.src]
        dsts = [self.objects[v] for v in f.dst]
        blocks = []
        for j, row in enumerate(f.entries):
            out = []
            for i, comb in enumerate(row):
                if not comb:
                    out.append(None)
                    continue
                out.append(target.linear_combination(srcs[i], dsts[j],
                                                     [(c, self.on_morphism(m)) for m, c in comb.terms]))
            blocks.append(out)
        return target.from_blocks(srcs, dsts, blocks)

    def verify(self) -> None:
        """
        Check the functor laws over a finite source.

        Raises:
            RelationViolation: When an identity or a composite is not preserved
        """
        base = self.source.base
        if not base.is_finite:
            return
        if hasattr(base, "quiver"):
            # free on its edges: nothing to check beyond the shapes
            return
        for o in base.objects:
            if self.on_morphism(base.identity(o)) != self.target.identity(self.objects[o]):
                raise RelationViolation(f"identity of '{o}' is not preserved", relation=(base.identity(o),))
        for f in base.morphisms:
            for g in base.outgoing(base.target(f)):
                lhs = self.on_morphism(base.compose(g, f))
                rhs = self.on_morphism(g) @ self.on_morphism(f)
                if lhs != rhs:
                    raise RelationViolation(f"composite '{g}' after '{f}' is not preserved", relation=(g, f))
        logger.debug(f"Verified additive functor {self.source.name} -> {self.target.name}")
