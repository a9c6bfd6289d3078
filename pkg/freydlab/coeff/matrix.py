"""Dense matrices over a coefficient ring and the exact linear algebra on them.

Smith-style diagonalization with tracked transforms drives ``solve_right`` and
``kernel_gens``; echelon forms (Hermite over Z, reduced row echelon over
fields, Howell over Z/n) canonicalize row spans.
"""

import logging
from dataclasses import dataclass
from typing import Any, Iterable, List, Optional, Sequence, Tuple

from ..errors import RingMismatch, ShapeMismatch
from .ring import INTEGERS, INTEGERS_MOD, Ring

logger = logging.getLogger(__name__)


class Mat:
    """Immutable rows × cols matrix over a Ring."""

    __slots__ = ("ring", "rows", "cols", "_data")

    def __init__(self, ring: Ring, rows: int, cols: int, entries: Optional[Sequence[Sequence[Any]]] = None):
        if rows < 0 or cols < 0:
            raise ShapeMismatch(f"negative shape {rows}x{cols}")
        self.ring = ring
        self.rows = rows
        self.cols = cols
        if entries is None:
            data = tuple(tuple(ring.zero for _ in range(cols)) for _ in range(rows))
        else:
            if len(entries) != rows or any(len(r) != cols for r in entries):
                raise ShapeMismatch(f"entries do not form a {rows}x{cols} matrix")
            data = tuple(tuple(ring.element(x) for x in r) for r in entries)
        self._data = data

    # ------------------------------------------------------------------
    # constructors
    # ------------------------------------------------------------------
    @classmethod
    def _raw(cls, ring: Ring, rows: int, cols: int, data: Iterable[Iterable[Any]]) -> "Mat":
        m = cls.__new__(cls)
        m.ring, m.rows, m.cols = ring, rows, cols
        m._data = tuple(tuple(r) for r in data)
        return m

    @classmethod
    def zeros(cls, ring: Ring, rows: int, cols: int) -> "Mat":
        return cls(ring, rows, cols)

    @classmethod
    def identity(cls, ring: Ring, n: int) -> "Mat":
        return cls._raw(ring, n, n, [[ring.one if i == j else ring.zero for j in range(n)] for i in range(n)])

    @classmethod
    def from_rows(cls, ring: Ring, rows: Sequence[Sequence[Any]], cols: Optional[int] = None) -> "Mat":
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(ring, len(rows), cols, rows)

    @classmethod
    def from_columns(cls, ring: Ring, columns: Sequence[Sequence[Any]], rows: int) -> "Mat":
        data = [[columns[j][i] for j in range(len(columns))] for i in range(rows)]
        return cls(ring, rows, len(columns), data)

    @classmethod
    def diagonal(cls, ring: Ring, entries: Sequence[Any]) -> "Mat":
        n = len(entries)
        return cls(ring, n, n, [[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])

    # ------------------------------------------------------------------
    # access
    # ------------------------------------------------------------------
    def __getitem__(self, ij: Tuple[int, int]) -> Any:
        i, j = ij
        return self._data[i][j]

    def row(self, i: int) -> Tuple[Any, ...]:
        return self._data[i]

    def column(self, j: int) -> Tuple[Any, ...]:
        return tuple(r[j] for r in self._data)

    def columns(self) -> List[Tuple[Any, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def to_lists(self) -> List[List[Any]]:
        return [list(r) for r in self._data]

    def to_strings(self) -> List[List[str]]:
        return [[self.ring.format(x) for x in r] for r in self._data]

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    def is_zero(self) -> bool:
        return all(x == 0 for r in self._data for x in r)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Mat):
            return NotImplemented
        return self.ring == other.ring and self.shape == other.shape and self._data == other._data

    def __hash__(self) -> int:
        return hash((self.ring, self.rows, self.cols, self._data))

    def __repr__(self) -> str:
        return f"Mat({self.ring}, {self.rows}x{self.cols}, {self.to_strings()})"

    # ------------------------------------------------------------------
    # arithmetic
    # ------------------------------------------------------------------
    def _check_ring(self, other: "Mat") -> None:
        if self.ring != other.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")

    def __add__(self, other: "Mat") -> "Mat":
        self._check_ring(other)
        if self.shape != other.shape:
            raise ShapeMismatch(f"cannot add {self.shape} and {other.shape}")
        add = self.ring.add
        return Mat._raw(self.ring, self.rows, self.cols,
                        [[add(a, b) for a, b in zip(r, s)] for r, s in zip(self._data, other._data)])

    def __neg__(self) -> "Mat":
        neg = self.ring.neg
        return Mat._raw(self.ring, self.rows, self.cols, [[neg(a) for a in r] for r in self._data])

    def __sub__(self, other: "Mat") -> "Mat":
        return self + (-other)

    def __matmul__(self, other: "Mat") -> "Mat":
        self._check_ring(other)
        if self.cols != other.rows:
            raise ShapeMismatch(f"cannot multiply {self.shape} by {other.shape}")
        ring = self.ring
        cols = other.columns()
        out = []
        for r in self._data:
            nz = [(k, a) for k, a in enumerate(r) if a != 0]
            row = []
            for c in cols:
                acc = ring.zero
                for k, a in nz:
                    b = c[k]
                    if b != 0:
                        acc = acc + a * b
                row.append(ring.element(acc) if ring.is_modular else acc)
            out.append(row)
        return Mat._raw(ring, self.rows, other.cols, out)

    def scale(self, c: Any) -> "Mat":
        mul = self.ring.mul
        return Mat._raw(self.ring, self.rows, self.cols, [[mul(c, a) for a in r] for r in self._data])

    def transpose(self) -> "Mat":
        return Mat._raw(self.ring, self.cols, self.rows, [list(c) for c in self.columns()])

    def submatrix(self, rows: Iterable[int], cols: Iterable[int]) -> "Mat":
        rows, cols = list(rows), list(cols)
        return Mat._raw(self.ring, len(rows), len(cols), [[self._data[i][j] for j in cols] for i in rows])

    def top(self, k: int) -> "Mat":
        return self.submatrix(range(k), range(self.cols))

    def bottom_from(self, k: int) -> "Mat":
        return self.submatrix(range(k, self.rows), range(self.cols))

    def map_entries(self, ring: Ring, fn) -> "Mat":
        return Mat._raw(ring, self.rows, self.cols, [[fn(a) for a in r] for r in self._data])


def hstack(ring: Ring, rows: int, mats: Sequence[Mat]) -> Mat:
    """Concatenate matrices side by side (all with ``rows`` rows)."""
    for m in mats:
        if m.rows != rows:
            raise ShapeMismatch(f"hstack expects {rows} rows, got {m.rows}")
        if m.ring != ring:
            raise RingMismatch(f"{m.ring} vs {ring}")
    data = [[x for m in mats for x in m.row(i)] for i in range(rows)]
    return Mat._raw(ring, rows, sum(m.cols for m in mats), data)


def vstack(ring: Ring, cols: int, mats: Sequence[Mat]) -> Mat:
    """Stack matrices vertically (all with ``cols`` columns)."""
    for m in mats:
        if m.cols != cols:
            raise ShapeMismatch(f"vstack expects {cols} columns, got {m.cols}")
        if m.ring != ring:
            raise RingMismatch(f"{m.ring} vs {ring}")
    data = [m.row(i) for m in mats for i in range(m.rows)]
    return Mat._raw(ring, sum(m.rows for m in mats), cols, data)


def block_diagonal(ring: Ring, mats: Sequence[Mat]) -> Mat:
    rows = sum(m.rows for m in mats)
    cols = sum(m.cols for m in mats)
    data = [[ring.zero] * cols for _ in range(rows)]
    r0 = c0 = 0
    for m in mats:
        for i in range(m.rows):
            for j in range(m.cols):
                data[r0 + i][c0 + j] = m[i, j]
        r0 += m.rows
        c0 += m.cols
    return Mat._raw(ring, rows, cols, data)


# ----------------------------------------------------------------------
# diagonalization
# ----------------------------------------------------------------------
@dataclass(frozen=True)
class SmithForm:
    """D = U·A·V with U, V invertible and D diagonal with a divisibility chain."""

    form: Mat
    left: Mat
    right: Mat
    diagonal: Tuple[Any, ...]

    @property
    def rank(self) -> int:
        return len(self.diagonal)


class _Diagonalizer:
    """In-place Smith elimination with optional companions.

    Row operations are mirrored on ``U`` and on the row-companion ``B``;
    column operations on ``V``.
    """

    def __init__(self, ring: Ring, a: Mat, track_left: bool, track_right: bool, companion: Optional[Mat] = None):
        self.ring = ring
        self.m, self.n = a.rows, a.cols
        self.d = a.to_lists()
        self.u = Mat.identity(ring, self.m).to_lists() if track_left else None
        self.v = Mat.identity(ring, self.n).to_lists() if track_right else None
        self.b = companion.to_lists() if companion is not None else None
        self.diagonal: List[Any] = []

    def _row_mats(self):
        return [x for x in (self.d, self.u, self.b) if x is not None]

    def _swap_rows(self, i: int, j: int) -> None:
        if i != j:
            for mat in self._row_mats():
                mat[i], mat[j] = mat[j], mat[i]

    def _swap_cols(self, i: int, j: int) -> None:
        if i != j:
            for mat in (self.d, self.v):
                if mat is None:
                    continue
                for r in mat:
                    r[i], r[j] = r[j], r[i]

    def _combine_rows(self, i: int, j: int, s, t, u, v) -> None:
        ring = self.ring
        for mat in self._row_mats():
            ri, rj = mat[i], mat[j]
            mat[i] = [ring.add(ring.mul(s, x), ring.mul(t, y)) for x, y in zip(ri, rj)]
            mat[j] = [ring.add(ring.mul(u, x), ring.mul(v, y)) for x, y in zip(ri, rj)]

    def _combine_cols(self, i: int, j: int, s, t, u, v) -> None:
        ring = self.ring
        for mat in (self.d, self.v):
            if mat is None:
                continue
            for r in mat:
                x, y = r[i], r[j]
                r[i] = ring.add(ring.mul(s, x), ring.mul(t, y))
                r[j] = ring.add(ring.mul(u, x), ring.mul(v, y))

    def _scale_row(self, i: int, c) -> None:
        ring = self.ring
        for mat in self._row_mats():
            mat[i] = [ring.mul(c, x) for x in mat[i]]

    def _add_row(self, target: int, source: int) -> None:
        ring = self.ring
        for mat in self._row_mats():
            mat[target] = [ring.add(x, y) for x, y in zip(mat[target], mat[source])]

    def _pivot(self, t: int) -> Optional[Tuple[int, int]]:
        best, where = None, None
        norm = self.ring.norm
        for i in range(t, self.m):
            row = self.d[i]
            for j in range(t, self.n):
                if row[j] != 0:
                    k = norm(row[j])
                    if best is None or k < best:
                        best, where = k, (i, j)
                        if k == 1:
                            return where
        return where

    def run(self) -> "_Diagonalizer":
        ring, d = self.ring, self.d
        t = 0
        while t < min(self.m, self.n):
            where = self._pivot(t)
            if where is None:
                break
            self._swap_rows(t, where[0])
            self._swap_cols(t, where[1])
            while True:
                for i in range(t + 1, self.m):
                    if d[i][t] != 0:
                        self._combine_rows(t, i, *ring.gcdex(d[t][t], d[i][t])[1:])
                for j in range(t + 1, self.n):
                    if d[t][j] != 0:
                        self._combine_cols(t, j, *ring.gcdex(d[t][t], d[t][j])[1:])
                if any(d[i][t] != 0 for i in range(t + 1, self.m)):
                    continue
                if not ring.is_field:
                    bad = next((i for i in range(t + 1, self.m)
                                if any(not ring.divides(d[t][t], d[i][j]) for j in range(t + 1, self.n))), None)
                    if bad is not None:
                        self._add_row(t, bad)
                        continue
                break
            unit, canonical = ring.unit_normal(d[t][t])
            if unit != ring.one:
                self._scale_row(t, unit)
            d[t][t] = canonical
            self.diagonal.append(canonical)
            t += 1
        return self


def smith_form(a: Mat) -> SmithForm:
    """Diagonalize ``a`` over its ring (Smith form over Z and Z/n, identity blocks over fields)."""
    ring = a.ring
    run = _Diagonalizer(ring, a, True, True).run()
    return SmithForm(
        form=Mat._raw(ring, a.rows, a.cols, run.d),
        left=Mat._raw(ring, a.rows, a.rows, run.u),
        right=Mat._raw(ring, a.cols, a.cols, run.v),
        diagonal=tuple(run.diagonal),
    )


# ----------------------------------------------------------------------
# echelon forms
# ----------------------------------------------------------------------
def _reduce_quotient(ring: Ring, x, d):
    if ring.kind in (INTEGERS, INTEGERS_MOD):
        return int(x) // int(d)
    return ring.quo(x, d)


def _echelon(ring: Ring, rows: List[List[Any]], ncols: int) -> List[List[Any]]:
    """Row echelon form with reduced entries above pivots.

    Over Z/n the annihilator multiple of every pivot row is appended, which
    makes the result a Howell form.
    """
    h = [list(r) for r in rows]
    p = 0
    for col in range(ncols):
        if p >= len(h):
            break
        for i in range(p + 1, len(h)):
            if h[i][col] == 0:
                continue
            if h[p][col] == 0:
                h[p], h[i] = h[i], h[p]
                continue
            _, s, t, u, v = ring.gcdex(h[p][col], h[i][col])
            rp, ri = h[p], h[i]
            h[p] = [ring.add(ring.mul(s, x), ring.mul(t, y)) for x, y in zip(rp, ri)]
            h[i] = [ring.add(ring.mul(u, x), ring.mul(v, y)) for x, y in zip(rp, ri)]
        if h[p][col] == 0:
            continue
        unit, _ = ring.unit_normal(h[p][col])
        h[p] = [ring.mul(unit, x) for x in h[p]]
        piv = h[p][col]
        for i in range(p):
            if h[i][col] == 0:
                continue
            q = _reduce_quotient(ring, h[i][col], piv)
            if q:
                h[i] = [ring.sub(x, ring.mul(q, y)) for x, y in zip(h[i], h[p])]
        if ring.kind == INTEGERS_MOD:
            ann = ring.annihilator(piv)
            if ann != 0:
                extra = [ring.mul(ann, x) for x in h[p]]
                if any(x != 0 for x in extra):
                    h.append(extra)
        p += 1
    return [r for r in h if any(x != 0 for x in r)]


def echelon_form(a: Mat) -> Mat:
    """Canonical generators of the row span: Hermite (Z), reduced echelon (fields), Howell (Z/n)."""
    rows = _echelon(a.ring, a.to_lists(), a.cols)
    return Mat._raw(a.ring, len(rows), a.cols, rows)


def howell_form(a: Mat) -> Mat:
    """Howell form of the row span of ``a`` over Z/n (reduced echelon over fields, Hermite over Z)."""
    return echelon_form(a)


def rref(a: Mat) -> Tuple[Mat, Mat]:
    """Reduced row echelon form over a field, padded with zero rows, and U with U·A = R."""
    ring = a.ring
    if not ring.is_field:
        raise RingMismatch(f"rref needs a field, not {ring}")
    full, ufull = _echelon_keep(ring, a.to_lists(), a.cols, Mat.identity(ring, a.rows).to_lists())
    return Mat._raw(ring, a.rows, a.cols, full), Mat._raw(ring, a.rows, a.rows, ufull)


def _echelon_keep(ring: Ring, rows, ncols, companion):
    """Field elimination keeping zero rows at the bottom (so U stays square and invertible)."""
    h = [list(r) for r in rows]
    comp = [list(r) for r in companion]
    p = 0
    for col in range(ncols):
        pivot = next((i for i in range(p, len(h)) if h[i][col] != 0), None)
        if pivot is None:
            continue
        h[p], h[pivot] = h[pivot], h[p]
        comp[p], comp[pivot] = comp[pivot], comp[p]
        inv = ring.inverse(h[p][col])
        h[p] = [ring.mul(inv, x) for x in h[p]]
        comp[p] = [ring.mul(inv, x) for x in comp[p]]
        for i in range(len(h)):
            if i != p and h[i][col] != 0:
                q = h[i][col]
                h[i] = [ring.sub(x, ring.mul(q, y)) for x, y in zip(h[i], h[p])]
                comp[i] = [ring.sub(x, ring.mul(q, y)) for x, y in zip(comp[i], comp[p])]
        p += 1
        if p == len(h):
            break
    return h, comp


@dataclass(frozen=True)
class NormalForm:
    """Normal form N of A with U·A·V = N."""

    form: Mat
    left: Mat
    right: Mat
    kind: str


def normal_form(a: Mat) -> NormalForm:
    """
    Canonical normal form with its change of basis.

    Over Z this is the Smith form; over fields the reduced row echelon form
    (with V the identity); over Z/n the Smith form over Z/n, whose diagonal
    entries are divisors of n. The Howell form of the row span is available
    separately from :func:`howell_form`.
    """
    ring = a.ring
    if ring.is_field:
        r, u = rref(a)
        return NormalForm(r, u, Mat.identity(ring, a.cols), "rref")
    s = smith_form(a)
    return NormalForm(s.form, s.left, s.right, "smith")


# ----------------------------------------------------------------------
# solving
# ----------------------------------------------------------------------
def solve_right(a: Mat, b: Mat) -> Optional[Mat]:
    """
    Solve A·X = B.

    Args:
        a: m×n matrix
        b: m×k matrix over the same ring

    Returns:
        The canonical solution X (free coordinates zero, minimal scalar
        solutions in the diagonal basis) or None if there is none
    """
    if a.ring != b.ring:
        raise RingMismatch(f"{a.ring} vs {b.ring}")
    if a.rows != b.rows:
        raise ShapeMismatch(f"solve_right: A has {a.rows} rows, B has {b.rows}")
    ring = a.ring
    run = _Diagonalizer(ring, a, False, True, companion=b).run()
    r = len(run.diagonal)
    y = [[ring.zero] * b.cols for _ in range(a.cols)]
    for c in range(b.cols):
        for i in range(r):
            sol = ring.solve_scalar(run.diagonal[i], run.b[i][c])
            if sol is None:
                return None
            y[i][c] = sol
        for i in range(r, a.rows):
            if run.b[i][c] != 0:
                return None
    v = Mat._raw(ring, a.cols, a.cols, run.v)
    return v @ Mat._raw(ring, a.cols, b.cols, y)


def kernel_gens(a: Mat) -> Mat:
    """Columns generating {x : A·x = 0} (lattice basis over Z, Howell-complete over Z/n)."""
    ring = a.ring
    run = _Diagonalizer(ring, a, False, True).run()
    r = len(run.diagonal)
    cols: List[List[Any]] = []
    v = run.v
    for i in range(r):
        ann = ring.annihilator(run.diagonal[i])
        if ann != 0:
            cols.append([ring.mul(ann, v[k][i]) for k in range(a.cols)])
    for j in range(r, a.cols):
        cols.append([v[k][j] for k in range(a.cols)])
    if ring.kind == INTEGERS:
        return Mat._raw(ring, a.cols, len(cols), [[c[k] for c in cols] for k in range(a.cols)])
    rows = _echelon(ring, cols, a.cols)
    return Mat._raw(ring, a.cols, len(rows), [[rw[k] for rw in rows] for k in range(a.cols)])


def inverse(a: Mat) -> Optional[Mat]:
    """Two-sided inverse of a square matrix, or None."""
    if a.rows != a.cols:
        raise ShapeMismatch("inverse of a non-square matrix")
    x = solve_right(a, Mat.identity(a.ring, a.rows))
    if x is None:
        return None
    if a.rows and not (x @ a) == Mat.identity(a.ring, a.rows):
        return None
    return x


def column_span_contains(a: Mat, b: Mat) -> bool:
    """True iff every column of ``b`` lies in the column span of ``a``."""
    return solve_right(a, b) is not None
