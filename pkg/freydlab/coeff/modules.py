"""Finitely presented modules over the supported rings and the maps between them."""

import logging
from collections import Counter
from dataclasses import dataclass
from typing import Any, Dict, Optional, Sequence, Tuple

from ..errors import RingMismatch, ShapeMismatch
from .matrix import Mat, block_diagonal, column_span_contains, hstack, kernel_gens, smith_form, solve_right
from .ring import INTEGERS, INTEGERS_MOD, RATIONALS, Ring

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ModuleSummary:
    """Isomorphism type of a finitely presented module.

    ``invariants`` lists the non-unit invariant factors in divisibility order;
    a zero entry stands for a free summand.
    """

    ring: Ring
    invariants: Tuple[Any, ...]

    @property
    def free_rank(self) -> int:
        return sum(1 for d in self.invariants if d == 0)

    @property
    def torsion(self) -> Tuple[Any, ...]:
        return tuple(d for d in self.invariants if d != 0)

    @property
    def is_zero(self) -> bool:
        return not self.invariants

    @property
    def order(self) -> Optional[int]:
        """Cardinality when finite, None otherwise."""
        total = 1
        for d in self.invariants:
            if d == 0:
                if not self.ring.is_modular:
                    return None
                total *= self.ring.modulus
            else:
                total *= int(d)
        return total

    def _part(self, d: Any) -> str:
        ring = self.ring
        if d != 0:
            return f"Z/{ring.format(d)}"
        if ring.kind == INTEGERS:
            return "Z"
        if ring.kind == RATIONALS:
            return "Q"
        if ring.kind == INTEGERS_MOD:
            return f"Z/{ring.modulus}"
        return f"F_{ring.modulus}"

    def describe(self) -> str:
        """Human readable form such as ``"0"``, ``"Z"``, ``"Z^2 + Z/2"``."""
        if not self.invariants:
            return "0"
        counts = Counter(self._part(d) for d in self.invariants)
        free = self._part(0)
        order = sorted(counts, key=lambda p: (p != free, p))
        return " + ".join(p if counts[p] == 1 else f"{p}^{counts[p]}" for p in order)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "description": self.describe(),
            "free_rank": self.free_rank,
            "torsion": [self.ring.format(d) for d in self.torsion],
        }


@dataclass(frozen=True)
class FPModule:
    """Cokernel of a relation matrix (generators × relations)."""

    ring: Ring
    relations: Mat

    def __post_init__(self):
        if self.relations.ring != self.ring:
            raise RingMismatch(f"{self.relations.ring} vs {self.ring}")

    @property
    def generators(self) -> int:
        return self.relations.rows

    @classmethod
    def free(cls, ring: Ring, n: int) -> "FPModule":
        return cls(ring, Mat.zeros(ring, n, 0))

    @classmethod
    def zero(cls, ring: Ring) -> "FPModule":
        return cls.free(ring, 0)

    @classmethod
    def cyclic(cls, ring: Ring, d: Any) -> "FPModule":
        """R/(d)."""
        return cls(ring, Mat(ring, 1, 1, [[d]]))

    @classmethod
    def direct_sum(cls, ring: Ring, modules: Sequence["FPModule"]) -> "FPModule":
        return cls(ring, block_diagonal(ring, [m.relations for m in modules]))

    def summary(self) -> ModuleSummary:
        s = smith_form(self.relations)
        ring = self.ring
        inv = [d for d in s.diagonal if not ring.is_unit(d)]
        inv.extend([ring.zero] * (self.generators - s.rank))
        return ModuleSummary(ring, tuple(inv))

    def is_zero(self) -> bool:
        return self.contains(Mat.identity(self.ring, self.generators))

    def contains(self, vectors: Mat) -> bool:
        """True iff every column of ``vectors`` is zero in this module."""
        if vectors.cols == 0:
            return True
        return column_span_contains(self.relations, vectors)

    def identity(self) -> "ModuleMap":
        return ModuleMap(self, self, Mat.identity(self.ring, self.generators))

    def zero_map(self, other: "FPModule") -> "ModuleMap":
        return ModuleMap(self, other, Mat.zeros(self.ring, other.generators, self.generators))


@dataclass(frozen=True)
class ModuleMap:
    """Module homomorphism given on generators by a (dst gens × src gens) matrix."""

    src: FPModule
    dst: FPModule
    matrix: Mat

    def __post_init__(self):
        if self.matrix.shape != (self.dst.generators, self.src.generators):
            raise ShapeMismatch(
                f"map matrix {self.matrix.shape} does not fit {self.src.generators} -> {self.dst.generators} generators"
            )

    @property
    def ring(self) -> Ring:
        return self.src.ring

    def is_well_defined(self) -> bool:
        return self.dst.contains(self.matrix @ self.src.relations)

    def compose(self, inner: "ModuleMap") -> "ModuleMap":
        """self ∘ inner."""
        return ModuleMap(inner.src, self.dst, self.matrix @ inner.matrix)

    def __add__(self, other: "ModuleMap") -> "ModuleMap":
        return ModuleMap(self.src, self.dst, self.matrix + other.matrix)

    def __neg__(self) -> "ModuleMap":
        return ModuleMap(self.src, self.dst, -self.matrix)

    def __sub__(self, other: "ModuleMap") -> "ModuleMap":
        return ModuleMap(self.src, self.dst, self.matrix - other.matrix)

    def scale(self, c: Any) -> "ModuleMap":
        return ModuleMap(self.src, self.dst, self.matrix.scale(c))

    def is_zero(self) -> bool:
        return self.dst.contains(self.matrix)

    def equals(self, other: "ModuleMap") -> bool:
        return (self - other).is_zero()

    def kernel(self) -> Tuple[FPModule, "ModuleMap"]:
        """Kernel module with its inclusion into the source."""
        ring = self.ring
        m = self.src.generators
        gens = kernel_gens(hstack(ring, self.dst.generators, [self.matrix, self.dst.relations]))
        k = gens.top(m)
        rel = kernel_gens(hstack(ring, m, [k, self.src.relations])).top(k.cols)
        module = FPModule(ring, rel)
        return module, ModuleMap(module, self.src, k)

    def cokernel(self) -> Tuple[FPModule, "ModuleMap"]:
        """Cokernel module with the projection from the target."""
        ring = self.ring
        module = FPModule(ring, hstack(ring, self.dst.generators, [self.dst.relations, self.matrix]))
        return module, ModuleMap(self.dst, module, Mat.identity(ring, self.dst.generators))

    def image(self) -> Tuple[FPModule, "ModuleMap"]:
        """Image submodule with its inclusion into the target."""
        ring = self.ring
        n = self.dst.generators
        rel = kernel_gens(hstack(ring, n, [self.matrix, self.dst.relations])).top(self.src.generators)
        module = FPModule(ring, rel)
        return module, ModuleMap(module, self.dst, self.matrix)

    def is_injective(self) -> bool:
        return self.kernel()[0].is_zero()

    def is_surjective(self) -> bool:
        return self.cokernel()[0].is_zero()

    def is_iso(self) -> bool:
        return self.is_injective() and self.is_surjective()

    def inverse(self) -> Optional["ModuleMap"]:
        """Two-sided inverse, or None when this map is not an isomorphism."""
        if not self.is_iso():
            return None
        ring = self.ring
        span = hstack(ring, self.dst.generators, [self.matrix, self.dst.relations])
        x = solve_right(span, Mat.identity(ring, self.dst.generators))
        if x is None:
            return None
        return ModuleMap(self.dst, self.src, x.top(self.src.generators))


def is_exact_at(f: ModuleMap, g: ModuleMap) -> bool:
    """Exactness of A --f--> B --g--> C at B."""
    if not g.compose(f).is_zero():
        return False
    _, inc = g.kernel()
    ring = f.ring
    span = hstack(ring, f.dst.generators, [f.matrix, f.dst.relations])
    return inc.matrix.cols == 0 or column_span_contains(span, inc.matrix)


def homology_module(f: ModuleMap, g: ModuleMap) -> FPModule:
    """ker g / im f for a composable pair with g∘f = 0."""
    ring = f.ring
    k_mod, inc = g.kernel()
    # express im f inside ker g: f = inc ∘ x
    span = hstack(ring, inc.dst.generators, [inc.matrix, inc.dst.relations])
    x = solve_right(span, f.matrix)
    if x is None:
        raise ShapeMismatch("homology_module needs g∘f = 0")
    lifted = x.top(inc.matrix.cols)
    return FPModule(ring, hstack(ring, k_mod.generators, [k_mod.relations, lifted]))
