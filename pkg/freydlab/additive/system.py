"""Linear equations whose unknowns are morphisms of an additive envelope.

An equation is a sum of terms ``c · L ∘ X_k ∘ R`` equal to a fixed morphism,
where ``X_k`` ranges over the free R-module hom(src_k, dst_k). Expanding
every term in the base hom bases turns the system into one matrix equation
over the coefficient ring.

Over a free path category with cycles the hom bases are infinite. There an
unknown ranges over the paths m with ``l ∘ m ∘ r = P``, where l and r are
support paths of L and R and P is a path the equation reaches: a support
path of the right-hand side or of a term already in play. The paths grow
round by round until the system is solved or no new path appears.
"""

import logging
from dataclasses import dataclass, replace
from typing import Any, Dict, List, Optional, Sequence, Set, Tuple

from ..coeff import Mat, kernel_gens, solve_right
from ..config import get_config
from ..errors import NonFinite, ShapeMismatch, UnsupportedBase
from .envelope import AddCat, AddMor, AddObj, Key

logger = logging.getLogger(__name__)

Term = Tuple[Any, Optional[AddMor], int, Optional[AddMor]]
Row = Tuple[int, int, int, Any]


@dataclass(frozen=True)
class Unknown:
    index: int
    src: AddObj
    dst: AddObj
    keys: Tuple[Key, ...]
    offset: int
    name: str = ""

    @property
    def size(self) -> int:
        return len(self.keys)


class LinearSystem:
    """Collects unknown morphisms and equations, then assembles and solves them."""

    def __init__(self, cat: AddCat):
        self.cat = cat
        self.unknowns: List[Unknown] = []
        self._equations: List[Tuple[List[Term], AddObj, AddObj, Optional[AddMor]]] = []
        self._columns = 0
        self._assembled: Optional[Tuple[Mat, Mat]] = None
        self._rows: List[Row] = []

    @property
    def columns(self) -> int:
        return self._columns

    @property
    def is_free(self) -> bool:
        """True when unknown keys are found from the equations rather than enumerated."""
        return not self.cat.is_finite

    def unknown(self, src: AddObj, dst: AddObj, name: str = "") -> int:
        """Register an unknown morphism src -> dst and return its index."""
        src, dst = tuple(src), tuple(dst)
        keys = () if self.is_free else tuple(self.cat.hom_keys(src, dst))
        u = Unknown(len(self.unknowns), src, dst, keys, self._columns, name)
        self.unknowns.append(u)
        self._columns += len(keys)
        self._assembled = None
        return u.index

    def equation(self, terms: Sequence[Term], rhs: Optional[AddMor] = None) -> None:
        """
        Add ``Σ c · L ∘ X_k ∘ R = rhs``.

        Args:
            terms: ``(c, L, k, R)`` tuples; L or R None stands for an identity
            rhs: Right-hand side; None means zero
        """
        if not terms and rhs is None:
            return
        src = dst = None
        for c, left, k, right in terms:
            u = self.unknowns[k]
            if left is not None and left.src != u.dst:
                raise ShapeMismatch(f"left factor starts at {left.src}, unknown '{u.name}' ends at {u.dst}")
            if right is not None and right.dst != u.src:
                raise ShapeMismatch(f"right factor ends at {right.dst}, unknown '{u.name}' starts at {u.src}")
            s = right.src if right is not None else u.src
            d = left.dst if left is not None else u.dst
            if src is None:
                src, dst = s, d
            elif (s, d) != (src, dst):
                raise ShapeMismatch(f"terms of one equation map {src} -> {dst} and {s} -> {d}")
        if rhs is not None:
            if src is not None and (rhs.src, rhs.dst) != (src, dst):
                raise ShapeMismatch(f"right-hand side {rhs.src} -> {rhs.dst} does not match {src} -> {dst}")
            src, dst = rhs.src, rhs.dst
        self._equations.append((list(terms), src, dst, rhs))
        self._assembled = None

    def _factors(self, left: Optional[AddMor], k: int, right: Optional[AddMor]) -> Tuple[AddMor, AddMor]:
        u = self.unknowns[k]
        cat = self.cat
        return (left if left is not None else cat.identity(u.dst),
                right if right is not None else cat.identity(u.src))

    # ------------------------------------------------------------------
    # assembly
    # ------------------------------------------------------------------
    def _assemble(self) -> Tuple[Mat, Mat]:
        if self._assembled is not None:
            return self._assembled
        ring, base = self.cat.ring, self.cat.base
        columns: Dict[Row, Dict[int, Any]] = {}
        values: Dict[Row, Any] = {}

        def bump(row, col, c):
            slot = columns.setdefault(row, {})
            slot[col] = ring.add(slot.get(col, ring.zero), c)

        for e, (terms, src, dst, rhs) in enumerate(self._equations):
            for coeff, left, k, right in terms:
                coeff = ring.element(coeff)
                u = self.unknowns[k]
                left, right = self._factors(left, k, right)
                for n, (j, i, m) in enumerate(u.keys):
                    col = u.offset + n
                    for p in range(len(left.dst)):
                        lc = left.entries[p][j]
                        if not lc:
                            continue
                        for q in range(len(right.src)):
                            rc = right.entries[i][q]
                            if not rc:
                                continue
                            for ml, cl in lc.terms:
                                inner = base.compose(ml, m)
                                for mr, cr in rc.terms:
                                    bump((e, p, q, base.compose(inner, mr)), col, ring.mul(coeff, ring.mul(cl, cr)))
            if rhs is not None:
                for p, row in enumerate(rhs.entries):
                    for q, comb in enumerate(row):
                        for m, c in comb.terms:
                            values[(e, p, q, m)] = c
                            columns.setdefault((e, p, q, m), {})
        order = sorted(columns, key=lambda r: (r[0], r[1], r[2], base.sort_key(r[3])))
        zero = ring.zero
        a_rows = []
        b_rows = []
        for r in order:
            slot = columns[r]
            a_rows.append([slot.get(c, zero) for c in range(self._columns)])
            b_rows.append([values.get(r, zero)])
        a = Mat._raw(ring, len(order), self._columns, a_rows)
        b = Mat._raw(ring, len(order), 1, b_rows)
        self._rows = order
        self._assembled = (a, b)
        return self._assembled

    def coefficient_matrix(self) -> Mat:
        return self._assemble()[0]

    def rhs_matrix(self) -> Mat:
        return self._assemble()[1]

    # ------------------------------------------------------------------
    # free bases
    # ------------------------------------------------------------------
    def _grow(self) -> List[Key]:
        """Add every split of a reached path as a key of its unknown; return the new keys."""
        self._assemble()
        base = self.cat.base
        known: List[Set[Key]] = [set(u.keys) for u in self.unknowns]
        fresh: List[List[Key]] = [[] for _ in self.unknowns]
        for e, p, q, path in self._rows:
            for coeff, left, k, right in self._equations[e][0]:
                left, right = self._factors(left, k, right)
                for j, lc in enumerate(left.entries[p]):
                    if not lc:
                        continue
                    for i in range(len(right.dst)):
                        rc = right.entries[i][q]
                        if not rc:
                            continue
                        for ml, _ in lc.terms:
                            for mr, _ in rc.terms:
                                m = base.split(path, ml, mr)
                                if m is not None and (j, i, m) not in known[k]:
                                    known[k].add((j, i, m))
                                    fresh[k].append((j, i, m))
        added = [key for keys in fresh for key in keys]
        if not added:
            return added
        offset = 0
        for n, u in enumerate(self.unknowns):
            keys = tuple(sorted(known[n], key=lambda key: (key[0], key[1], base.sort_key(key[2]))))
            self.unknowns[n] = replace(u, keys=keys, offset=offset)
            offset += len(keys)
        self._columns = offset
        self._assembled = None
        return added

    def _solve_free(self) -> Optional[Mat]:
        limit = int(get_config().get("search.free_keys", 2000))
        rounds = 0
        tried = -1
        while True:
            # every path the current keys reach has its own row
            if tried < 0 or self._columns >= max(1, 2 * tried):
                tried = self._columns
                x = solve_right(*self._assemble())
                if x is not None:
                    logger.debug(f"Free-base system solved after {rounds} rounds with {tried} keys")
                    return x
            added = self._grow()
            rounds += 1
            if not added:
                x = None if tried == self._columns else solve_right(*self._assemble())
                if x is None:
                    logger.debug(f"Free-base system closed without a solution after {rounds} rounds")
                return x
            if self._columns > limit:
                growing = sorted({str(m) for _, _, m in added}, key=lambda s: (len(s), s))[:10]
                raise NonFinite(f"linear system over {self.cat.base.name} still growing past {limit} paths",
                                growing=growing)

    # ------------------------------------------------------------------
    # solving
    # ------------------------------------------------------------------
    def solve(self) -> Optional[List[AddMor]]:
        """
        One solution (a morphism per unknown), or None when inconsistent.

        Raises:
            NonFinite: When a free-base system neither closes nor solves within ``search.free_keys`` paths
        """
        if self.is_free:
            x = self._solve_free()
        else:
            a, b = self._assemble()
            x = solve_right(a, b)
        if x is None:
            return None
        return self.decode(x.column(0))

    def is_solvable(self) -> bool:
        return self.solve() is not None

    def kernel(self) -> Mat:
        """Generators (as columns) of the solutions of the homogeneous system."""
        if self.is_free:
            raise UnsupportedBase(f"solutions over {self.cat.base.name} are not finitely generated")
        return kernel_gens(self.coefficient_matrix())

    def decode(self, column: Sequence[Any]) -> List[AddMor]:
        return [self.cat.from_coordinates(u.src, u.dst, u.keys, column[u.offset:u.offset + u.size])
                for u in self.unknowns]

    def block(self, k: int) -> range:
        """Rows of a solution column belonging to unknown ``k``."""
        u = self.unknowns[k]
        return range(u.offset, u.offset + u.size)

    def encode(self, k: int, f: AddMor) -> List[Any]:
        u = self.unknowns[k]
        if (f.src, f.dst) != (u.src, u.dst):
            raise ShapeMismatch(f"{f.src} -> {f.dst} is not a value for unknown '{u.name}'")
        return self.cat.coordinates(f, u.keys)


def factor_right(f: AddMor, g: AddMor) -> Optional[AddMor]:
    """Some h with g ∘ h = f, or None."""
    if f.dst != g.dst:
        raise ShapeMismatch(f"{f.src} -> {f.dst} and {g.src} -> {g.dst} do not share a target")
    system = LinearSystem(f.cat)
    h = system.unknown(f.src, g.src, "h")
    system.equation([(1, g, h, None)], f)
    solution = system.solve()
    return None if solution is None else solution[h]


def factor_left(f: AddMor, g: AddMor) -> Optional[AddMor]:
    """Some h with h ∘ g = f, or None."""
    if f.src != g.src:
        raise ShapeMismatch(f"{f.src} -> {f.dst} and {g.src} -> {g.dst} do not share a source")
    system = LinearSystem(f.cat)
    h = system.unknown(g.dst, f.dst, "h")
    system.equation([(1, None, h, g)], f)
    solution = system.solve()
    return None if solution is None else solution[h]
