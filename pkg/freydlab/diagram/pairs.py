"""The category of pairs of a category with distinguished morphisms, its triples and ∂-cubes."""

import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from ..errors import NotSubcategory
from .fincat import FinCat

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Pair:
    """A distinguished morphism ``name``: bottom → top, written (top, bottom)."""

    name: str
    top: str
    bottom: str

    @property
    def label(self) -> str:
        return f"({self.top},{self.bottom})"


@dataclass(frozen=True)
class PairMorphism:
    """A commuting square (h, k): m → m′ with h∘m = m′∘k."""

    name: str
    source: str
    target: str
    h: str
    k: str


@dataclass(frozen=True)
class Triple:
    """Composable distinguished f: Z → Y, g: Y → X.

    ``lower`` = (Y,Z) is f, ``middle`` = (X,Z) is g∘f, ``upper`` = (X,Y) is g;
    α: lower → middle, β: middle → upper, and ∂ runs from upper in degree i
    to lower in degree i−1.
    """

    name: str
    f: str
    g: str
    gf: str
    alpha: str
    beta: str
    beta_alpha: str

    @property
    def lower(self) -> str:
        return self.f

    @property
    def middle(self) -> str:
        return self.gf

    @property
    def upper(self) -> str:
        return self.g


@dataclass(frozen=True)
class Cube:
    """A ∂-cube: squares γ: t.lower → t′.lower and δ: t.upper → t′.upper with δ∘(βα)_t = (βα)_t′∘γ."""

    source: str
    target: str
    gamma: str
    delta: str


class PairCat:
    """Category of pairs: objects are distinguished morphisms, morphisms commuting squares."""

    def __init__(self, base: FinCat, distinguished: Sequence[str]):
        self.base = base
        self.distinguished: Tuple[str, ...] = tuple(sorted(set(distinguished), key=base.sort_key))
        self.pairs: Tuple[Pair, ...] = tuple(
            Pair(m, base.target(m), base.source(m)) for m in self.distinguished
        )
        self._pairs = {p.name: p for p in self.pairs}
        self.morphisms: Tuple[PairMorphism, ...] = tuple(self._squares())
        self._by_name = {pm.name: pm for pm in self.morphisms}
        self._by_hk = {(pm.source, pm.target, pm.h, pm.k): pm.name for pm in self.morphisms}
        self.category = self._as_fincat()

    def _squares(self) -> List[PairMorphism]:
        base = self.base
        found = []
        used: Dict[str, int] = {}
        for p in self.pairs:
            for q in self.pairs:
                for h in base.hom(p.top, q.top):
                    for k in base.hom(p.bottom, q.bottom):
                        if base.compose(h, p.name) != base.compose(q.name, k):
                            continue
                        name = f"({h},{k})"
                        if base.is_identity(h) and base.is_identity(k) and p == q:
                            name = f"id{p.label}"
                        n = used.get(name, 0)
                        used[name] = n + 1
                        if n:
                            name = f"{name}#{n}"
                        found.append(PairMorphism(name, p.name, q.name, h, k))
        return found

    def _as_fincat(self) -> FinCat:
        arrows = {pm.name: (pm.source, pm.target) for pm in self.morphisms}
        identities = {p.name: self.identity(p.name) for p in self.pairs}
        table = {}
        for f in self.morphisms:
            for g in self.morphisms:
                if f.target == g.source:
                    table[(g.name, f.name)] = self._compose_squares(g, f)
        return FinCat([p.name for p in self.pairs], arrows, identities, table,
                      name=f"pairs({self.base.name})", check=True)

    def _compose_squares(self, g: PairMorphism, f: PairMorphism) -> str:
        h = self.base.compose(g.h, f.h)
        k = self.base.compose(g.k, f.k)
        return self._by_hk[(f.source, g.target, h, k)]

    def pair(self, name: str) -> Pair:
        return self._pairs[name]

    def pair_name(self, key: str) -> str:
        """Accept a pair by its morphism name or by its ``(top,bottom)`` label."""
        for p in self.pairs:
            if key in (p.name, p.label):
                return p.name
        raise KeyError(f"no distinguished pair '{key}'")

    def morphism(self, name: str) -> PairMorphism:
        return self._by_name[name]

    def square(self, source: str, target: str, h: str, k: str) -> str:
        """Name of the square (h, k): source → target."""
        try:
            return self._by_hk[(source, target, h, k)]
        except KeyError:
            raise ValueError(f"({h},{k}) is not a morphism {source} -> {target} of pairs") from None

    def identity(self, pair: str) -> str:
        p = self._pairs[pair]
        return self._by_hk[(pair, pair, self.base.identity(p.top), self.base.identity(p.bottom))]

    def is_identity(self, name: str) -> bool:
        return self.category.is_identity(name)

    def compose(self, g: str, f: str) -> str:
        return self.category.compose(g, f)

    def hom(self, p: str, q: str) -> Tuple[str, ...]:
        return self.category.hom(p, q)

    def find_pair(self, top: str, bottom: str) -> List[str]:
        """Distinguished morphisms bottom → top."""
        return [p.name for p in self.pairs if p.top == top and p.bottom == bottom]

    def describe(self, name: str) -> str:
        return self._pairs[name].label


def pairs_category(base: FinCat, distinguished: Union[str, Iterable[str]] = "all") -> PairCat:
    """
    Build the category of pairs.

    Args:
        base: Finite category
        distinguished: ``"all"``, ``"monos"`` or an explicit list of morphism names

    Raises:
        NotSubcategory: When the list misses identities or composites
    """
    if distinguished == "all":
        names = list(base.morphisms)
    elif distinguished == "monos":
        names = base.monomorphisms()
    else:
        names = [str(m) for m in distinguished]
        unknown = [m for m in names if not base.has_morphism(m)]
        if unknown:
            raise NotSubcategory(f"unknown morphisms: {', '.join(unknown)}", unknown)
    missing = base.missing_composites(names)
    if missing:
        raise NotSubcategory(f"distinguished morphisms are not a subcategory; missing: {', '.join(missing)}", missing)
    pairs = PairCat(base, names)
    logger.info(f"Category of pairs: {len(pairs.pairs)} objects, {len(pairs.morphisms)} morphisms")
    return pairs


def enumerate_triples(pairs: PairCat) -> List[Triple]:
    """All composable pairs (f, g) of distinguished morphisms with their α, β."""
    base = pairs.base
    triples = []
    for f in pairs.distinguished:
        for g in pairs.distinguished:
            if base.target(f) != base.source(g):
                continue
            gf = base.compose(g, f)
            z = base.source(f)
            x = base.target(g)
            alpha = pairs.square(f, gf, g, base.identity(z))
            beta = pairs.square(gf, g, base.identity(x), f)
            triples.append(Triple(
                name=f"<{f},{g}>",
                f=f,
                g=g,
                gf=gf,
                alpha=alpha,
                beta=beta,
                beta_alpha=pairs.compose(beta, alpha),
            ))
    return triples


def enumerate_cubes(pairs: PairCat, triples: Sequence[Triple]) -> List[Cube]:
    """Non-trivial ∂-cubes between the given triples."""
    cubes = []
    for t in triples:
        for u in triples:
            for gamma in pairs.hom(t.lower, u.lower):
                for delta in pairs.hom(t.upper, u.upper):
                    if t == u and pairs.is_identity(gamma) and pairs.is_identity(delta):
                        continue
                    if pairs.compose(delta, t.beta_alpha) == pairs.compose(u.beta_alpha, gamma):
                        cubes.append(Cube(t.name, u.name, gamma, delta))
    return cubes


def find_triple(triples: Sequence[Triple], f: str, g: str) -> Optional[Triple]:
    for t in triples:
        if t.f == f and t.g == g:
            return t
    return None
