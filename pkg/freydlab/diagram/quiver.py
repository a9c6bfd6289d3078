"""Quivers, paths and free path categories."""

import logging
from collections import deque
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from ..errors import ShapeMismatch

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Edge:
    label: str
    source: str
    target: str


class Quiver:
    """Finite directed multigraph with labelled edges."""

    def __init__(self, vertices: Iterable[str], edges: Iterable[Tuple[str, str, str]] = ()):
        self.vertices: Tuple[str, ...] = tuple(str(v) for v in vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex labels")
        vset = set(self.vertices)
        parsed = []
        for label, source, target in edges:
            label, source, target = str(label), str(source), str(target)
            if source not in vset or target not in vset:
                raise ValueError(f"edge '{label}' references an unknown vertex")
            parsed.append(Edge(label, source, target))
        self.edges: Tuple[Edge, ...] = tuple(parsed)
        self._by_label: Dict[str, Edge] = {}
        for e in self.edges:
            if e.label in self._by_label:
                raise ValueError(f"duplicate edge label '{e.label}'")
            self._by_label[e.label] = e
        self._out: Dict[str, List[Edge]] = {v: [] for v in self.vertices}
        for e in self.edges:
            self._out[e.source].append(e)

    def edge(self, label: str) -> Edge:
        return self._by_label[label]

    def has_edge(self, label: str) -> bool:
        return label in self._by_label

    def outgoing(self, vertex: str) -> List[Edge]:
        return self._out[vertex]

    def is_acyclic(self) -> bool:
        indegree = {v: 0 for v in self.vertices}
        for e in self.edges:
            indegree[e.target] += 1
        queue = deque(v for v, d in indegree.items() if d == 0)
        seen = 0
        while queue:
            v = queue.popleft()
            seen += 1
            for e in self._out[v]:
                indegree[e.target] -= 1
                if indegree[e.target] == 0:
                    queue.append(e.target)
        return seen == len(self.vertices)

    def dual(self) -> "Quiver":
        return Quiver(self.vertices, [(e.label, e.target, e.source) for e in self.edges])

    def path(self, source: str, labels: Sequence[str]) -> "Path":
        """Path starting at ``source`` following ``labels`` (checked)."""
        here = source
        for label in labels:
            e = self._by_label.get(label)
            if e is None:
                raise ValueError(f"unknown edge '{label}'")
            if e.source != here:
                raise ShapeMismatch(f"edge '{label}' does not start at '{here}'")
            here = e.target
        return Path(source, here, tuple(labels))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Quiver):
            return NotImplemented
        return set(self.vertices) == set(other.vertices) and set(self.edges) == set(other.edges)

    def __hash__(self) -> int:
        return hash((frozenset(self.vertices), frozenset(self.edges)))

    def __repr__(self) -> str:
        return f"Quiver({len(self.vertices)} vertices, {len(self.edges)} edges)"


@dataclass(frozen=True)
class Path:
    """A composable string of edges; the empty string is the identity at ``source``."""

    source: str
    target: str
    edges: Tuple[str, ...] = ()

    def then(self, other: "Path") -> "Path":
        """This path followed by ``other``."""
        if self.target != other.source:
            raise ShapeMismatch(f"path ending at '{self.target}' cannot be followed by one from '{other.source}'")
        return Path(self.source, other.target, self.edges + other.edges)

    def __len__(self) -> int:
        return len(self.edges)

    @property
    def is_identity(self) -> bool:
        return not self.edges

    def sort_key(self) -> Tuple[int, Tuple[str, ...]]:
        return len(self.edges), self.edges

    def __str__(self) -> str:
        return ".".join(self.edges) if self.edges else f"id_{self.source}"


class PathCategory:
    """The free category on a quiver; hom-sets are enumerated by path length."""

    def __init__(self, quiver: Quiver, name: str = "paths"):
        self.quiver = quiver
        self.name = name

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PathCategory):
            return NotImplemented
        return self.quiver == other.quiver

    def __hash__(self) -> int:
        return hash(self.quiver)

    @property
    def objects(self) -> Tuple[str, ...]:
        return self.quiver.vertices

    @property
    def is_finite(self) -> bool:
        return self.quiver.is_acyclic()

    def identity(self, vertex: str) -> Path:
        return Path(vertex, vertex, ())

    def source(self, p: Path) -> str:
        return p.source

    def target(self, p: Path) -> str:
        return p.target

    def is_identity(self, p: Path) -> bool:
        return p.is_identity

    def compose(self, g: Path, f: Path) -> Path:
        """g ∘ f: first f, then g."""
        return f.then(g)

    def sort_key(self, p: Path):
        return (self.objects.index(p.source), self.objects.index(p.target)) + p.sort_key()

    def split(self, p: Path, left: Path, right: Path) -> Optional[Path]:
        """The path m with left ∘ m ∘ right = p, or None."""
        n, a, b = len(p.edges), len(right.edges), len(left.edges)
        if a + b > n or p.source != right.source or p.target != left.target:
            return None
        if p.edges[:a] != right.edges or p.edges[n - b:] != left.edges:
            return None
        middle = p.edges[a:n - b]
        if not middle and right.target != left.source:
            return None
        return Path(right.target, left.source, middle)

    def paths_from(self, source: str, max_length: Optional[int] = None) -> Iterator[Path]:
        """Breadth-first enumeration of paths starting at ``source``."""
        layer = [self.identity(source)]
        length = 0
        while layer:
            for p in layer:
                yield p
            if max_length is not None and length >= max_length:
                return
            nxt = []
            for p in layer:
                for e in self.quiver.outgoing(p.target):
                    nxt.append(Path(p.source, e.target, p.edges + (e.label,)))
            layer = nxt
            length += 1

    def hom(self, source: str, target: str, max_length: Optional[int] = None) -> Tuple[Path, ...]:
        """Paths source → target, all of them when acyclic, else those up to ``max_length``."""
        if max_length is None and not self.is_finite:
            raise ValueError("hom-set of a cyclic quiver needs a length bound")
        found = [p for p in self.paths_from(source, max_length) if p.target == target]
        return tuple(sorted(found, key=Path.sort_key))

    def dual(self) -> "PathCategory":
        name = self.name[:-3] if self.name.endswith("^op") else f"{self.name}^op"
        return PathCategory(self.quiver.dual(), name=name)

    def reverse(self, p: Path) -> Path:
        """The same morphism read in the dual category."""
        return Path(p.target, p.source, tuple(reversed(p.edges)))


def path_category(quiver: Quiver) -> PathCategory:
    return PathCategory(quiver)
