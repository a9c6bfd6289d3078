"""The Nori diagram of a category of pairs over a finite degree window."""

import logging
from typing import Dict, List, Optional, Tuple

from ..errors import EmptyWindow, OutOfWindow
from .fincat import Decoration, FinCat, fincat_from_decoration
from .pairs import Cube, PairCat, Triple, enumerate_cubes, enumerate_triples
from .quiver import Path, Quiver

logger = logging.getLogger(__name__)


def vertex_name(pair: str, degree: int) -> str:
    return f"{pair}@{degree}"


def check_window(window: Tuple[int, int]) -> Tuple[int, int]:
    a, b = int(window[0]), int(window[1])
    if a > b:
        raise EmptyWindow(f"empty degree window [{a}, {b}]")
    return a, b


class NoriDiagram:
    """Vertices (X,Y)@i, one γ-edge per non-identity square and degree, one ∂-edge per triple and degree.

    The decoration imposes composition of squares inside each degree and the
    ∂-naturality of every cube, so ``category()`` is the decorated base whose
    representations are exactly the relative homologies on the window.
    """

    def __init__(self, pairs: PairCat, window: Tuple[int, int]):
        self.pairs = pairs
        self.window = check_window(window)
        self.triples: List[Triple] = enumerate_triples(pairs)
        self.cubes: List[Cube] = enumerate_cubes(pairs, self.triples)
        self._triples = {t.name: t for t in self.triples}
        a, b = self.window

        self.vertices: List[str] = [vertex_name(p.name, i) for i in self.degrees for p in pairs.pairs]
        edges: List[Tuple[str, str, str]] = []
        for i in self.degrees:
            for pm in pairs.morphisms:
                if not pairs.is_identity(pm.name):
                    edges.append((self.gamma_label(pm.name, i), vertex_name(pm.source, i), vertex_name(pm.target, i)))
        for i in range(a + 1, b + 1):
            for t in self.triples:
                edges.append((self.boundary_label(t.name, i), vertex_name(t.upper, i), vertex_name(t.lower, i - 1)))
        self.quiver = Quiver(self.vertices, edges)
        self.decoration = Decoration(tuple(self._relations()))
        self._category: Optional[FinCat] = None
        logger.info(
            f"Nori diagram on [{a}, {b}]: {len(self.vertices)} vertices, {len(edges)} edges, "
            f"{len(self.decoration.relations)} relations"
        )

    @property
    def degrees(self) -> range:
        return range(self.window[0], self.window[1] + 1)

    @staticmethod
    def gamma_label(square: str, degree: int) -> str:
        return f"γ{square}@{degree}"

    @staticmethod
    def boundary_label(triple: str, degree: int) -> str:
        return f"∂{triple}@{degree}"

    def _gamma_word(self, square: str, degree: int) -> Tuple[str, ...]:
        return () if self.pairs.is_identity(square) else (self.gamma_label(square, degree),)

    def _relations(self) -> List[Tuple[Path, Path]]:
        pairs = self.pairs
        rels = []
        for i in self.degrees:
            for f in pairs.morphisms:
                if pairs.is_identity(f.name):
                    continue
                for g in pairs.morphisms:
                    if g.source != f.target or pairs.is_identity(g.name):
                        continue
                    gf = pairs.compose(g.name, f.name)
                    start = vertex_name(f.source, i)
                    lhs = self.quiver.path(start, (self.gamma_label(f.name, i), self.gamma_label(g.name, i)))
                    rhs = self.quiver.path(start, self._gamma_word(gf, i))
                    rels.append((lhs, rhs))
        a, b = self.window
        for i in range(a + 1, b + 1):
            for cube in self.cubes:
                t, u = self._triples[cube.source], self._triples[cube.target]
                start = vertex_name(t.upper, i)
                lhs = self.quiver.path(start, (self.boundary_label(t.name, i),) + self._gamma_word(cube.gamma, i - 1))
                rhs = self.quiver.path(start, self._gamma_word(cube.delta, i) + (self.boundary_label(u.name, i),))
                rels.append((lhs, rhs))
        return rels

    def category(self, bound: Optional[int] = None) -> FinCat:
        """The decorated base category (computed once)."""
        if self._category is None:
            a, b = self.window
            self._category = fincat_from_decoration(
                self.quiver, self.decoration, bound=bound, name=f"nori({self.pairs.base.name})[{a},{b}]"
            )
        return self._category

    def triple(self, name: str) -> Triple:
        return self._triples[name]

    def vertex(self, pair: str, degree: int) -> str:
        self.check_degree(degree)
        self.pairs.pair(pair)
        return vertex_name(pair, degree)

    def check_degree(self, degree: int) -> None:
        a, b = self.window
        if not a <= degree <= b:
            raise OutOfWindow(f"degree {degree} is outside the window [{a}, {b}]")

    def gamma_morphism(self, square: str, degree: int) -> str:
        """Morphism of ``category()`` carrying the square in the given degree."""
        self.check_degree(degree)
        cat = self.category()
        if self.pairs.is_identity(square):
            return cat.identity(vertex_name(self.pairs.morphism(square).source, degree))
        return cat.edge_morphism(self.gamma_label(square, degree))

    def boundary_morphism(self, triple: str, degree: int) -> str:
        """∂ of ``triple`` from degree ``degree`` to ``degree - 1``."""
        a, b = self.window
        if not a < degree <= b:
            raise OutOfWindow(f"no boundary leaves degree {degree} inside [{a}, {b}]")
        return self.category().edge_morphism(self.boundary_label(triple, degree))

    def to_dict(self) -> Dict[str, object]:
        return {
            "window": list(self.window),
            "vertices": list(self.vertices),
            "edges": [{"label": e.label, "source": e.source, "target": e.target} for e in self.quiver.edges],
            "triples": [t.name for t in self.triples],
        }


def nori_diagram(pairs: PairCat, window: Tuple[int, int]) -> NoriDiagram:
    """
    Build the Nori diagram of ``pairs`` over ``window``.

    Raises:
        EmptyWindow: When the window is empty
    """
    return NoriDiagram(pairs, window)
