"""Finite categories with explicit composition tables.

A FinCat is either written down directly (points, ordinals, monoids, ...) or
computed from a quiver with relations by coset enumeration of the path
classes leaving each vertex.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

from ..config import get_config
from ..errors import InvalidCategory, NonFinite, ShapeMismatch
from .quiver import Path, Quiver

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Decoration:
    """Relations (pairs of parallel paths) plus distinguished vertices and edges."""

    relations: Tuple[Tuple[Path, Path], ...] = ()
    distinguished_vertices: FrozenSet[str] = field(default_factory=frozenset)
    distinguished_edges: FrozenSet[str] = field(default_factory=frozenset)

    def __post_init__(self):
        for lhs, rhs in self.relations:
            if lhs.source != rhs.source or lhs.target != rhs.target:
                raise ShapeMismatch(f"relation {lhs} = {rhs} is not between parallel paths")


def identity_name(obj: str) -> str:
    return f"id_{obj}"


class FinCat:
    """A finite category given by objects, named morphisms and a composition table.

    ``compose(g, f)`` is g∘f (first f, then g). Hom-sets are ordered by
    (source, target, word length, name), which fixes every basis downstream.
    """

    is_finite = True

    def __init__(
        self,
        objects: Iterable[str],
        arrows: Mapping[str, Tuple[str, str]],
        identities: Mapping[str, str],
        table: Mapping[Tuple[str, str], str],
        words: Optional[Mapping[str, Tuple[str, ...]]] = None,
        edges: Optional[Mapping[str, str]] = None,
        name: str = "",
        check: bool = True,
    ):
        self.objects: Tuple[str, ...] = tuple(objects)
        self.name = name
        self._index = {o: i for i, o in enumerate(self.objects)}
        if len(self._index) != len(self.objects):
            raise InvalidCategory("duplicate objects")
        self._arrows: Dict[str, Tuple[str, str]] = dict(arrows)
        self._identities: Dict[str, str] = dict(identities)
        self._table: Dict[Tuple[str, str], str] = dict(table)
        self._words: Dict[str, Tuple[str, ...]] = dict(words) if words is not None else {}
        self._edges: Dict[str, str] = dict(edges) if edges is not None else {}
        for m, (s, t) in self._arrows.items():
            if s not in self._index or t not in self._index:
                raise InvalidCategory(f"morphism '{m}' has an unknown endpoint")
        homs: Dict[Tuple[str, str], List[str]] = {}
        for m, (s, t) in self._arrows.items():
            homs.setdefault((s, t), []).append(m)
        self._hom = {k: tuple(sorted(v, key=self.sort_key)) for k, v in homs.items()}
        self._out: Dict[str, List[str]] = {o: [] for o in self.objects}
        for m in self.morphisms:
            self._out[self._arrows[m][0]].append(m)
        if check:
            self.verify()

    # ------------------------------------------------------------------
    # structure
    # ------------------------------------------------------------------
    @property
    def morphisms(self) -> Tuple[str, ...]:
        return tuple(sorted(self._arrows, key=self.sort_key))

    def sort_key(self, m: str):
        s, t = self._arrows[m]
        length = 0 if m == self._identities.get(s) else len(self._words.get(m, (m,)))
        return self._index[s], self._index[t], length, m

    def source(self, m: str) -> str:
        return self._arrows[m][0]

    def target(self, m: str) -> str:
        return self._arrows[m][1]

    def identity(self, obj: str) -> str:
        return self._identities[obj]

    def is_identity(self, m: str) -> bool:
        return self._identities.get(self.source(m)) == m

    def has_morphism(self, m: str) -> bool:
        return m in self._arrows

    def compose(self, g: str, f: str) -> str:
        """g ∘ f."""
        if self.target(f) != self.source(g):
            raise ShapeMismatch(f"cannot compose '{g}' after '{f}'")
        return self._table[(g, f)]

    def compose_all(self, chain: Sequence[str]) -> str:
        """Composite of morphisms listed in the order they are traversed."""
        result = chain[0]
        for m in chain[1:]:
            result = self.compose(m, result)
        return result

    def hom(self, x: str, y: str, max_length: Optional[int] = None) -> Tuple[str, ...]:
        return self._hom.get((x, y), ())

    def outgoing(self, x: str) -> List[str]:
        return self._out[x]

    def word(self, m: str) -> Optional[Tuple[str, ...]]:
        """Edge word representing ``m`` when the category came from a quiver."""
        return self._words.get(m)

    @property
    def edge_labels(self) -> Tuple[str, ...]:
        return tuple(self._edges)

    def edge_morphism(self, label: str) -> str:
        return self._edges[label]

    def reverse(self, m: str) -> str:
        return m

    def __len__(self) -> int:
        return len(self._arrows)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FinCat):
            return NotImplemented
        return (
            set(self.objects) == set(other.objects)
            and self._arrows == other._arrows
            and self._identities == other._identities
            and self._table == other._table
        )

    def __hash__(self) -> int:
        return hash((frozenset(self.objects), frozenset(self._arrows.items())))

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"FinCat{label}({len(self.objects)} objects, {len(self._arrows)} morphisms)"

    def verify(self) -> None:
        """Exhaustive unit and associativity check."""
        for o in self.objects:
            i = self._identities.get(o)
            if i is None or self._arrows.get(i) != (o, o):
                raise InvalidCategory(f"object '{o}' has no identity")
        for f in self._arrows:
            s, t = self._arrows[f]
            for g in self._out[t]:
                gf = self._table.get((g, f))
                if gf is None:
                    raise InvalidCategory(f"missing composite of '{g}' after '{f}'")
                if self._arrows.get(gf) != (s, self.target(g)):
                    raise InvalidCategory(f"composite of '{g}' after '{f}' has the wrong endpoints")
            if self._table[(self._identities[t], f)] != f or self._table[(f, self._identities[s])] != f:
                raise InvalidCategory(f"identity law fails at '{f}'")
        for f in self._arrows:
            for g in self._out[self.target(f)]:
                gf = self._table[(g, f)]
                for h in self._out[self.target(g)]:
                    if self._table[(h, gf)] != self._table[(self._table[(h, g)], f)]:
                        raise InvalidCategory(f"composition is not associative at ('{h}', '{g}', '{f}')")

    # ------------------------------------------------------------------
    # derived categories
    # ------------------------------------------------------------------
    def dual(self) -> "FinCat":
        arrows = {m: (t, s) for m, (s, t) in self._arrows.items()}
        table = {(f, g): gf for (g, f), gf in self._table.items()}
        words = {m: tuple(reversed(w)) for m, w in self._words.items()}
        name = self.name[:-3] if self.name.endswith("^op") else (f"{self.name}^op" if self.name else "")
        return FinCat(self.objects, arrows, self._identities, table, words, self._edges, name=name, check=False)

    def graded(self, window: Tuple[int, int]) -> "FinCat":
        """Product with the discrete category on the degrees of ``window``; objects are ``"x@i"``."""
        a, b = window
        objects, arrows, identities, table, words, edges = [], {}, {}, {}, {}, {}
        for i in range(a, b + 1):
            for o in self.objects:
                objects.append(f"{o}@{i}")
                identities[f"{o}@{i}"] = f"{self._identities[o]}@{i}"
            for m, (s, t) in self._arrows.items():
                arrows[f"{m}@{i}"] = (f"{s}@{i}", f"{t}@{i}")
                if m in self._words:
                    words[f"{m}@{i}"] = tuple(f"{e}@{i}" for e in self._words[m])
            for (g, f), gf in self._table.items():
                table[(f"{g}@{i}", f"{f}@{i}")] = f"{gf}@{i}"
            for label, m in self._edges.items():
                edges[f"{label}@{i}"] = f"{m}@{i}"
        return FinCat(objects, arrows, identities, table, words, edges, name=f"{self.name}[{a},{b}]", check=False)

    # ------------------------------------------------------------------
    # queries
    # ------------------------------------------------------------------
    def inverse(self, m: str) -> Optional[str]:
        s, t = self._arrows[m]
        for g in self.hom(t, s):
            if self._table[(g, m)] == self._identities[s] and self._table[(m, g)] == self._identities[t]:
                return g
        return None

    def is_iso(self, m: str) -> bool:
        return self.inverse(m) is not None

    def initial_objects(self) -> List[str]:
        return [x for x in self.objects if all(len(self.hom(x, y)) == 1 for y in self.objects)]

    def final_objects(self) -> List[str]:
        return [y for y in self.objects if all(len(self.hom(x, y)) == 1 for x in self.objects)]

    def strictly_initial_objects(self) -> List[str]:
        """Initial objects that only receive isomorphisms."""
        return [
            x for x in self.initial_objects()
            if all(self.is_iso(m) for y in self.objects for m in self.hom(y, x))
        ]

    def is_mono(self, m: str) -> bool:
        s = self.source(m)
        for a in self.objects:
            images = [self._table[(m, f)] for f in self.hom(a, s)]
            if len(set(images)) != len(images):
                return False
        return True

    def monomorphisms(self) -> List[str]:
        return [m for m in self.morphisms if self.is_mono(m)]

    def missing_composites(self, names: Iterable[str]) -> List[str]:
        """Identities and composites needed to close ``names`` into a subcategory."""
        chosen = set(names)
        missing = {self.identity(o) for o in self.objects} - chosen
        for f in chosen:
            for g in chosen:
                if self.target(f) == self.source(g) and self._table[(g, f)] not in chosen:
                    missing.add(self._table[(g, f)])
        return sorted(missing, key=self.sort_key)

    def to_dict(self) -> Dict[str, object]:
        return {
            "name": self.name,
            "objects": list(self.objects),
            "morphisms": [
                {"name": m, "source": self.source(m), "target": self.target(m)} for m in self.morphisms
            ],
        }

    # ------------------------------------------------------------------
    # constructors
    # ------------------------------------------------------------------
    @classmethod
    def point(cls) -> "FinCat":
        return cls(["*"], {"id_*": ("*", "*")}, {"*": "id_*"}, {("id_*", "id_*"): "id_*"}, name="1")

    @classmethod
    def ordinal(cls, n: int) -> "FinCat":
        """The poset 0 → 1 → … → n-1; the arrow i ≤ j is named ``"i->j"``."""
        objects = [str(i) for i in range(n)]

        def arrow(i: int, j: int) -> str:
            return identity_name(str(i)) if i == j else f"{i}->{j}"

        arrows = {arrow(i, j): (str(i), str(j)) for i in range(n) for j in range(i, n)}
        identities = {str(i): arrow(i, i) for i in range(n)}
        table = {
            (arrow(j, k), arrow(i, j)): arrow(i, k)
            for i in range(n) for j in range(i, n) for k in range(j, n)
        }
        return cls(objects, arrows, identities, table, name=str(n))

    @classmethod
    def discrete(cls, names: Sequence[str]) -> "FinCat":
        names = [str(x) for x in names]
        arrows = {identity_name(x): (x, x) for x in names}
        identities = {x: identity_name(x) for x in names}
        table = {(identity_name(x), identity_name(x)): identity_name(x) for x in names}
        return cls(names, arrows, identities, table, name="discrete")

    @classmethod
    def poset(cls, elements: Sequence[str], covers: Iterable[Tuple[str, str]], name: str = "") -> "FinCat":
        """The poset generated by ``covers`` (x ≤ y pairs); the arrow x < y is named ``"x->y"``."""
        elements = [str(x) for x in elements]
        below = {x: {x} for x in elements}
        for x, y in covers:
            if str(x) not in below or str(y) not in below:
                raise InvalidCategory(f"cover ({x}, {y}) uses an unknown element")
            below[str(y)].add(str(x))
        changed = True
        while changed:
            changed = False
            for y in elements:
                closure = set().union(*(below[x] for x in below[y]))
                if closure != below[y]:
                    below[y] = closure
                    changed = True
        for x in elements:
            for y in elements:
                if x != y and x in below[y] and y in below[x]:
                    raise InvalidCategory(f"covers contain a cycle through '{x}' and '{y}'")

        def arrow(x: str, y: str) -> str:
            return identity_name(x) if x == y else f"{x}->{y}"

        arrows = {arrow(x, y): (x, y) for y in elements for x in elements if x in below[y]}
        identities = {x: arrow(x, x) for x in elements}
        table = {
            (arrow(y, z), arrow(x, y)): arrow(x, z)
            for z in elements for y in below[z] for x in below[y]
        }
        return cls(elements, arrows, identities, table, name=name or "poset")

    @classmethod
    def from_monoid(cls, elements: Sequence[str], product: Mapping[str, Mapping[str, str]], unit: str,
                    name: str = "") -> "FinCat":
        """One-object category of a finite monoid; ``product[g][f]`` is g·f = g∘f."""
        elements = [str(e) for e in elements]
        if unit not in elements:
            raise InvalidCategory(f"unit '{unit}' is not an element")
        arrows = {e: ("*", "*") for e in elements}
        table = {}
        for g in elements:
            for f in elements:
                try:
                    table[(g, f)] = str(product[g][f])
                except KeyError:
                    raise InvalidCategory(f"product {g}·{f} is missing") from None
        return cls(["*"], arrows, {"*": unit}, table, name=name or "monoid")

    @classmethod
    def cyclic_group(cls, order: int) -> "FinCat":
        """C_n with elements ``"1"``, ``"g"``, ``"g^2"``, …"""
        def el(k: int) -> str:
            k %= order
            return "1" if k == 0 else ("g" if k == 1 else f"g^{k}")

        elements = [el(k) for k in range(order)]
        product = {el(a): {el(b): el(a + b) for b in range(order)} for a in range(order)}
        return cls.from_monoid(elements, product, "1", name=f"C{order}")


# ----------------------------------------------------------------------
# quotients of path categories
# ----------------------------------------------------------------------
class _ClassEnumeration:
    """Coset enumeration of path classes leaving one vertex."""

    def __init__(self, quiver: Quiver, relations_at: Mapping[str, List[Tuple[Tuple[str, ...], Tuple[str, ...]]]],
                 start: str, bound: int):
        self.quiver = quiver
        self.relations_at = relations_at
        self.start = start
        self.bound = bound
        self.parent: List[int] = []
        self.table: List[Dict[str, int]] = []
        self.target: List[str] = []
        self.word: List[Tuple[str, ...]] = []
        self._new(start, ())

    def _new(self, target: str, word: Tuple[str, ...]) -> int:
        if len(self.parent) >= self.bound:
            live = sorted(self.live(), key=lambda n: (-len(self.word[n]), self.word[n]))
            growing = [".".join(self.word[n]) for n in live[:3]]
            raise NonFinite(
                f"path classes from '{self.start}' exceed the rewrite bound {self.bound}; growing: {', '.join(growing)}",
                growing,
            )
        self.parent.append(len(self.parent))
        self.table.append({})
        self.target.append(target)
        self.word.append(word)
        return len(self.parent) - 1

    def find(self, n: int) -> int:
        root = n
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[n] != root:
            self.parent[n], n = root, self.parent[n]
        return root

    def live(self) -> List[int]:
        return [n for n in range(len(self.parent)) if self.parent[n] == n]

    def step(self, n: int, label: str, define: bool = True) -> Optional[int]:
        n = self.find(n)
        nxt = self.table[n].get(label)
        if nxt is not None:
            return self.find(nxt)
        if not define:
            return None
        edge = self.quiver.edge(label)
        m = self._new(edge.target, self.word[n] + (label,))
        self.table[n][label] = m
        return m

    def trace(self, n: int, labels: Sequence[str], define: bool = True) -> Optional[int]:
        for label in labels:
            n = self.step(n, label, define)
            if n is None:
                return None
        return self.find(n)

    def merge(self, a: int, b: int) -> None:
        pending = [(a, b)]
        while pending:
            x, y = pending.pop()
            x, y = self.find(x), self.find(y)
            if x == y:
                continue
            if y < x:
                x, y = y, x
            self.parent[y] = x
            wx, wy = self.word[x], self.word[y]
            if (len(wy), wy) < (len(wx), wx):
                self.word[x] = wy
            moved, self.table[y] = self.table[y], {}
            for label, t in moved.items():
                s = self.table[x].get(label)
                if s is None:
                    self.table[x][label] = t
                else:
                    pending.append((s, t))

    def run(self) -> "_ClassEnumeration":
        i = 0
        while i < len(self.parent):
            if self.find(i) == i:
                for lhs, rhs in self.relations_at.get(self.target[i], ()):
                    self.merge(self.trace(i, lhs), self.trace(i, rhs))
                    if self.find(i) != i:
                        break
                if self.find(i) == i:
                    for e in self.quiver.outgoing(self.target[i]):
                        self.step(i, e.label)
            i += 1
        return self


def _morphism_name(source: str, word: Tuple[str, ...]) -> str:
    return ".".join(word) if word else identity_name(source)


def fincat_from_decoration(quiver: Quiver, decoration: Optional[Decoration] = None,
                           bound: Optional[int] = None, name: str = "") -> FinCat:
    """
    The quotient of the path category of ``quiver`` by the relations of ``decoration``.

    Args:
        quiver: Underlying quiver
        decoration: Relations between parallel paths (none gives the path category itself)
        bound: Maximum number of path classes defined per source vertex

    Returns:
        The finite category with full composition table; morphisms are named by
        their shortlex-minimal representative word

    Raises:
        NonFinite: When enumeration from some vertex exceeds ``bound``
    """
    decoration = decoration or Decoration()
    bound = bound or get_config().get("bounds.rewrite", 1000)
    relations_at: Dict[str, List[Tuple[Tuple[str, ...], Tuple[str, ...]]]] = {}
    for lhs, rhs in decoration.relations:
        quiver.path(lhs.source, lhs.edges)
        quiver.path(rhs.source, rhs.edges)
        relations_at.setdefault(lhs.source, []).append((lhs.edges, rhs.edges))

    runs = {v: _ClassEnumeration(quiver, relations_at, v, bound).run() for v in quiver.vertices}

    arrows: Dict[str, Tuple[str, str]] = {}
    words: Dict[str, Tuple[str, ...]] = {}
    node_name: Dict[Tuple[str, int], str] = {}
    for v, run in runs.items():
        for n in run.live():
            m = _morphism_name(v, run.word[n])
            if m in arrows:
                m = f"{m}#{len(arrows)}"
            arrows[m] = (v, run.target[n])
            words[m] = run.word[n]
            node_name[(v, n)] = m
    identities = {v: node_name[(v, runs[v].find(0))] for v in quiver.vertices}

    table: Dict[Tuple[str, str], str] = {}
    for v, run in runs.items():
        for n in run.live():
            f = node_name[(v, n)]
            mid = run.target[n]
            for g_node in runs[mid].live():
                g = node_name[(mid, g_node)]
                end = run.trace(n, runs[mid].word[g_node], define=False)
                table[(g, f)] = node_name[(v, run.find(end))]
    edges = {e.label: node_name[(e.source, runs[e.source].trace(0, (e.label,), define=False))]
             for e in quiver.edges}
    logger.info(f"Closed quiver with {len(quiver.vertices)} vertices into {len(arrows)} morphisms")
    return FinCat(quiver.vertices, arrows, identities, table, words, edges, name=name)
