"""The R-linear additive envelope of a path category or a finite category.

Objects are finite tuples of base vertices (the empty tuple is the zero
object). A morphism is a matrix whose entry (j, i) is a finite R-linear
combination of base morphisms from ``src[i]`` to ``dst[j]``.
"""

import logging
from typing import Any, Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from ..coeff import Mat, Ring
from ..errors import RingMismatch, ShapeMismatch, UnsupportedBase

logger = logging.getLogger(__name__)

AddObj = Tuple[str, ...]
Key = Tuple[int, int, Any]


class Combination:
    """Finite R-linear combination of parallel base morphisms, terms in basis order."""

    __slots__ = ("terms",)

    def __init__(self, terms: Iterable[Tuple[Any, Any]] = ()):
        self.terms: Tuple[Tuple[Any, Any], ...] = tuple(terms)

    def __iter__(self):
        return iter(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Combination):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(self.terms)

    def coefficient(self, m: Any, default: Any = 0) -> Any:
        for n, c in self.terms:
            if n == m:
                return c
        return default

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*{m}" for m, c in self.terms)


ZERO = Combination()


class AddMor:
    """A morphism of the additive envelope; ``entries[j][i]`` maps ``src[i]`` to ``dst[j]``."""

    __slots__ = ("cat", "src", "dst", "entries")

    def __init__(self, cat: "AddCat", src: AddObj, dst: AddObj, entries: Sequence[Sequence[Combination]]):
        if len(entries) != len(dst) or any(len(row) != len(src) for row in entries):
            raise ShapeMismatch(f"entries do not form a {len(dst)}x{len(src)} matrix")
        self.cat = cat
        self.src = tuple(src)
        self.dst = tuple(dst)
        self.entries: Tuple[Tuple[Combination, ...], ...] = tuple(tuple(row) for row in entries)

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.dst), len(self.src)

    def __getitem__(self, ji: Tuple[int, int]) -> Combination:
        j, i = ji
        return self.entries[j][i]

    def __matmul__(self, other: "AddMor") -> "AddMor":
        return self.cat.compose(self, other)

    def __add__(self, other: "AddMor") -> "AddMor":
        return self.cat.add(self, other)

    def __neg__(self) -> "AddMor":
        return self.cat.scale(self, self.cat.ring.neg(self.cat.ring.one))

    def __sub__(self, other: "AddMor") -> "AddMor":
        return self.cat.add(self, -other)

    def scale(self, c: Any) -> "AddMor":
        return self.cat.scale(self, c)

    def is_zero(self) -> bool:
        return not any(e for row in self.entries for e in row)

    def op(self) -> "AddMor":
        return self.cat.op_morphism(self)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AddMor):
            return NotImplemented
        return (
            (self.cat is other.cat or self.cat == other.cat)
            and self.src == other.src
            and self.dst == other.dst
            and self.entries == other.entries
        )

    def __hash__(self) -> int:
        return hash((self.src, self.dst, self.entries))

    def __repr__(self) -> str:
        return f"AddMor({self.src} -> {self.dst}, {[list(map(repr, row)) for row in self.entries]})"


Entry = Union[Combination, Mapping[Any, Any], int, str, None]


class AddCat:
    """The additive envelope R·C⁺ of a base category C over a coefficient ring R."""

    def __init__(self, base: Any, ring: Ring):
        self.base = base
        self.ring = ring
        self._op: Optional["AddCat"] = None
        self._hom_cache: Dict[Tuple[str, str], Tuple[Any, ...]] = {}

    @property
    def name(self) -> str:
        return f"{self.ring}[{self.base.name}]+"

    @property
    def is_finite(self) -> bool:
        return bool(self.base.is_finite)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AddCat):
            return NotImplemented
        return self.ring == other.ring and (self.base is other.base or self.base == other.base)

    def __hash__(self) -> int:
        return hash((self.ring, self.base.name))

    def __repr__(self) -> str:
        return f"AddCat({self.name})"

    # ------------------------------------------------------------------
    # combinations
    # ------------------------------------------------------------------
    def combination(self, pairs: Iterable[Tuple[Any, Any]]) -> Combination:
        """Collect coefficients on equal morphisms, drop zeros, sort by the base order."""
        ring = self.ring
        acc: Dict[Any, Any] = {}
        for m, c in pairs:
            acc[m] = ring.add(acc.get(m, ring.zero), ring.element(c))
        return self._normalize(acc)

    def _normalize(self, acc: Mapping[Any, Any]) -> Combination:
        terms = [(m, c) for m, c in acc.items() if c != 0]
        if not terms:
            return ZERO
        terms.sort(key=lambda t: self.base.sort_key(t[0]))
        return Combination(terms)

    def _entry(self, value: Entry, source: str, target: str) -> Combination:
        if value is None:
            return ZERO
        if isinstance(value, Combination):
            pairs = list(value.terms)
        elif isinstance(value, Mapping):
            pairs = list(value.items())
        elif isinstance(value, int) and not isinstance(value, bool):
            if value == 0:
                return ZERO
            if source != target:
                raise ShapeMismatch(f"scalar entry between different vertices {source} -> {target}")
            pairs = [(self.base.identity(source), value)]
        else:
            pairs = [(value, 1)]
        for m, _ in pairs:
            if self.base.source(m) != source or self.base.target(m) != target:
                raise ShapeMismatch(f"'{m}' is not a morphism {source} -> {target}")
        return self.combination(pairs)

    def _combo_compose(self, g: Combination, f: Combination, acc: Dict[Any, Any]) -> None:
        ring, base = self.ring, self.base
        for m2, c2 in g.terms:
            for m1, c1 in f.terms:
                m = base.compose(m2, m1)
                acc[m] = ring.add(acc.get(m, ring.zero), ring.mul(c2, c1))

    # ------------------------------------------------------------------
    # objects and morphisms
    # ------------------------------------------------------------------
    def obj(self, vertices: Iterable[str]) -> AddObj:
        out = tuple(str(v) for v in vertices)
        known = set(self.base.objects)
        for v in out:
            if v not in known:
                raise ShapeMismatch(f"'{v}' is not an object of {self.base.name}")
        return out

    @property
    def zero_object(self) -> AddObj:
        return ()

    def morphism(self, src: Iterable[str], dst: Iterable[str], rows: Sequence[Sequence[Entry]]) -> AddMor:
        """
        Build a morphism from entries given as combinations, ``{morphism: coefficient}``
        mappings, single base morphisms, or integers (multiples of an identity).
        """
        src, dst = self.obj(src), self.obj(dst)
        if len(rows) != len(dst) or any(len(r) != len(src) for r in rows):
            raise ShapeMismatch(f"expected a {len(dst)}x{len(src)} matrix of entries")
        entries = [[self._entry(rows[j][i], src[i], dst[j]) for i in range(len(src))] for j in range(len(dst))]
        return AddMor(self, src, dst, entries)

    def embed(self, m: Any) -> AddMor:
        """The base morphism ``m`` as a 1x1 matrix."""
        return AddMor(self, (self.base.source(m),), (self.base.target(m),), [[self.combination([(m, 1)])]])

    def identity(self, obj: AddObj) -> AddMor:
        one = self.ring.one
        entries = [
            [self.combination([(self.base.identity(obj[j]), one)]) if i == j else ZERO for i in range(len(obj))]
            for j in range(len(obj))
        ]
        return AddMor(self, obj, obj, entries)

    def zero(self, src: AddObj, dst: AddObj) -> AddMor:
        return AddMor(self, src, dst, [[ZERO] * len(src) for _ in range(len(dst))])

    def scalar(self, src: AddObj, dst: AddObj, mat: Mat) -> AddMor:
        """Multiples of identities placed where ``src[i] == dst[j]``."""
        if mat.shape != (len(dst), len(src)):
            raise ShapeMismatch(f"scalar matrix {mat.shape} does not fit {len(src)} -> {len(dst)}")
        if mat.ring != self.ring:
            raise RingMismatch(f"{mat.ring} vs {self.ring}")
        entries = []
        for j in range(len(dst)):
            row = []
            for i in range(len(src)):
                c = mat[j, i]
                if c == 0:
                    row.append(ZERO)
                elif src[i] != dst[j]:
                    raise ShapeMismatch(f"scalar entry between different vertices {src[i]} -> {dst[j]}")
                else:
                    row.append(Combination([(self.base.identity(src[i]), c)]))
            entries.append(row)
        return AddMor(self, src, dst, entries)

    def as_scalar(self, f: AddMor) -> Optional[Mat]:
        """The coefficient matrix when every entry is a multiple of an identity."""
        rows = []
        for j in range(len(f.dst)):
            row = []
            for i in range(len(f.src)):
                e = f.entries[j][i]
                if not e:
                    row.append(self.ring.zero)
                elif len(e) == 1 and self.base.is_identity(e.terms[0][0]):
                    row.append(e.terms[0][1])
                else:
                    return None
            rows.append(row)
        return Mat._raw(self.ring, len(f.dst), len(f.src), rows)

    # ------------------------------------------------------------------
    # calculus
    # ------------------------------------------------------------------
    def compose(self, g: AddMor, f: AddMor) -> AddMor:
        """g ∘ f."""
        if f.dst != g.src:
            raise ShapeMismatch(f"cannot compose {g.src} -> {g.dst} after {f.src} -> {f.dst}")
        entries = []
        for j in range(len(g.dst)):
            row = []
            grow = g.entries[j]
            for i in range(len(f.src)):
                acc: Dict[Any, Any] = {}
                for k in range(len(f.dst)):
                    if grow[k] and f.entries[k][i]:
                        self._combo_compose(grow[k], f.entries[k][i], acc)
                row.append(self._normalize(acc))
            entries.append(row)
        return AddMor(self, f.src, g.dst, entries)

    def add(self, f: AddMor, g: AddMor) -> AddMor:
        if (f.src, f.dst) != (g.src, g.dst):
            raise ShapeMismatch(f"cannot add {f.src} -> {f.dst} and {g.src} -> {g.dst}")
        ring = self.ring
        entries = []
        for j in range(len(f.dst)):
            row = []
            for i in range(len(f.src)):
                a, b = f.entries[j][i], g.entries[j][i]
                if not a:
                    row.append(b)
                elif not b:
                    row.append(a)
                else:
                    acc = dict(a.terms)
                    for m, c in b.terms:
                        acc[m] = ring.add(acc.get(m, ring.zero), c)
                    row.append(self._normalize(acc))
            entries.append(row)
        return AddMor(self, f.src, f.dst, entries)

    def scale(self, f: AddMor, c: Any) -> AddMor:
        ring = self.ring
        c = ring.element(c) if isinstance(c, (int, str)) else c
        if c == 0:
            return self.zero(f.src, f.dst)
        entries = [[self._normalize({m: ring.mul(c, x) for m, x in e.terms}) if e else ZERO for e in row]
                   for row in f.entries]
        return AddMor(self, f.src, f.dst, entries)

    def linear_combination(self, src: AddObj, dst: AddObj, terms: Iterable[Tuple[Any, AddMor]]) -> AddMor:
        total = self.zero(src, dst)
        for c, f in terms:
            if c != 0:
                total = self.add(total, self.scale(f, c))
        return total

    # ------------------------------------------------------------------
    # biproducts
    # ------------------------------------------------------------------
    @staticmethod
    def direct_sum(objs: Sequence[AddObj]) -> AddObj:
        return tuple(v for o in objs for v in o)

    def injection(self, objs: Sequence[AddObj], k: int) -> AddMor:
        total = self.direct_sum(objs)
        offset = sum(len(o) for o in objs[:k])
        ident = self.identity(objs[k])
        entries = [[ZERO] * len(objs[k]) for _ in total]
        for j in range(len(objs[k])):
            entries[offset + j] = list(ident.entries[j])
        return AddMor(self, objs[k], total, entries)

    def projection(self, objs: Sequence[AddObj], k: int) -> AddMor:
        total = self.direct_sum(objs)
        offset = sum(len(o) for o in objs[:k])
        ident = self.identity(objs[k])
        entries = [[ZERO] * offset + list(ident.entries[j]) + [ZERO] * (len(total) - offset - len(objs[k]))
                   for j in range(len(objs[k]))]
        return AddMor(self, total, objs[k], entries)

    def from_blocks(self, srcs: Sequence[AddObj], dsts: Sequence[AddObj],
                    blocks: Sequence[Sequence[Optional[AddMor]]]) -> AddMor:
        """Assemble ``blocks[j][i]: srcs[i] -> dsts[j]`` (None is a zero block)."""
        src, dst = self.direct_sum(srcs), self.direct_sum(dsts)
        entries: List[List[Combination]] = []
        for j, d in enumerate(dsts):
            rows: List[List[Combination]] = [[] for _ in d]
            for i, s in enumerate(srcs):
                b = blocks[j][i]
                if b is None:
                    for r in rows:
                        r.extend([ZERO] * len(s))
                    continue
                if (b.src, b.dst) != (tuple(s), tuple(d)):
                    raise ShapeMismatch(f"block ({j},{i}) is {b.src} -> {b.dst}, expected {s} -> {d}")
                for r, brow in zip(rows, b.entries):
                    r.extend(brow)
            entries.extend(rows)
        return AddMor(self, src, dst, entries)

    def hstack(self, dst: AddObj, mors: Sequence[AddMor]) -> AddMor:
        """[f1 | f2 | ...]: src1 ⊕ src2 ⊕ ... -> dst."""
        return self.from_blocks([f.src for f in mors], [dst], [list(mors)])

    def vstack(self, src: AddObj, mors: Sequence[AddMor]) -> AddMor:
        """(f1; f2; ...): src -> dst1 ⊕ dst2 ⊕ ..."""
        return self.from_blocks([src], [f.dst for f in mors], [[f] for f in mors])

    def block_diagonal(self, mors: Sequence[AddMor]) -> AddMor:
        n = len(mors)
        return self.from_blocks([f.src for f in mors], [f.dst for f in mors],
                                [[mors[j] if i == j else None for i in range(n)] for j in range(n)])

    # ------------------------------------------------------------------
    # change of category
    # ------------------------------------------------------------------
    def op(self) -> "AddCat":
        """The envelope of the dual base; morphisms transpose."""
        if self._op is None:
            self._op = AddCat(self.base.dual(), self.ring)
            self._op._op = self
        return self._op

    def op_morphism(self, f: AddMor) -> AddMor:
        target = self.op()
        reverse = self.base.reverse
        entries = [[target._normalize({reverse(m): c for m, c in f.entries[j][i].terms})
                    for j in range(len(f.dst))] for i in range(len(f.src))]
        return AddMor(target, f.dst, f.src, entries)

    def change_ring(self, ring: Ring) -> "AddCat":
        return AddCat(self.base, ring)

    def map_coefficients(self, f: AddMor, target: "AddCat", fn: Optional[Callable[[Any], Any]] = None) -> AddMor:
        """Carry ``f`` into ``target`` (same base) applying ``fn`` to every coefficient."""
        fn = fn or target.ring.element
        entries = [[target._normalize({m: fn(c) for m, c in e.terms}) for e in row] for row in f.entries]
        return AddMor(target, f.src, f.dst, entries)

    # ------------------------------------------------------------------
    # hom bases
    # ------------------------------------------------------------------
    def base_hom(self, x: str, y: str) -> Tuple[Any, ...]:
        """
        Base morphisms x -> y.

        Raises:
            UnsupportedBase: When the base is a free category with cycles
        """
        key = (x, y)
        if key not in self._hom_cache:
            if not self.is_finite:
                raise UnsupportedBase(f"hom-sets of {self.base.name} are infinite")
            self._hom_cache[key] = tuple(self.base.hom(x, y))
        return self._hom_cache[key]

    def hom_keys(self, src: AddObj, dst: AddObj) -> List[Key]:
        """Coordinates (j, i, m) of the free R-module hom(src, dst), in basis order."""
        return [(j, i, m) for j in range(len(dst)) for i in range(len(src)) for m in self.base_hom(src[i], dst[j])]

    def hom_basis(self, src: AddObj, dst: AddObj) -> List[AddMor]:
        one = self.ring.one
        return [self.from_coordinates(src, dst, [key], [one]) for key in self.hom_keys(src, dst)]

    def hom_rank(self, src: AddObj, dst: AddObj) -> int:
        if not self.is_finite:
            raise UnsupportedBase(f"hom-sets of {self.base.name} are not finitely generated")
        return len(self.hom_keys(src, dst))

    def from_coordinates(self, src: AddObj, dst: AddObj, keys: Sequence[Key], values: Sequence[Any]) -> AddMor:
        acc: List[List[Dict[Any, Any]]] = [[{} for _ in src] for _ in dst]
        for (j, i, m), c in zip(keys, values):
            if c != 0:
                acc[j][i][m] = self.ring.add(acc[j][i].get(m, self.ring.zero), c)
        return AddMor(self, src, dst, [[self._normalize(e) for e in row] for row in acc])

    def coordinates(self, f: AddMor, keys: Sequence[Key]) -> List[Any]:
        """Coefficients of ``f`` on ``keys``; raises ValueError if ``f`` has support elsewhere."""
        index = {k: n for n, k in enumerate(keys)}
        out = [self.ring.zero] * len(keys)
        for j, row in enumerate(f.entries):
            for i, e in enumerate(row):
                for m, c in e.terms:
                    n = index.get((j, i, m))
                    if n is None:
                        raise ValueError(f"'{m}' at ({j},{i}) is outside the chosen hom basis")
                    out[n] = c
        return out

    # ------------------------------------------------------------------
    # text form
    # ------------------------------------------------------------------
    def format_morphism(self, m: Any) -> str:
        return str(m)

    def parse_morphism(self, text: str, source: str, target: str) -> Any:
        """Read a base morphism name (a FinCat name, or an edge word ``a.b`` / ``id_v`` for paths)."""
        if hasattr(self.base, "quiver"):
            if text == f"id_{source}" and source == target:
                return self.base.identity(source)
            path = self.base.quiver.path(source, text.split("."))
            if path.target != target:
                raise ShapeMismatch(f"path '{text}' ends at '{path.target}', not '{target}'")
            return path
        if not self.base.has_morphism(text):
            raise ShapeMismatch(f"unknown morphism '{text}'")
        if (self.base.source(text), self.base.target(text)) != (source, target):
            raise ShapeMismatch(f"'{text}' is not a morphism {source} -> {target}")
        return text


def envelope(base: Any, ring: Ring) -> AddCat:
    """
    The additive envelope of ``base`` over ``ring``.

    Args:
        base: A FinCat or a PathCategory
        ring: Coefficient ring

    Returns:
        The AddCat; base vertices embed as one-element tuples
    """
    cat = AddCat(base, ring)
    logger.debug(f"Additive envelope {cat.name} over {len(base.objects)} objects")
    return cat
