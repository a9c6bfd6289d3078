"""Objects and morphisms of the free abelian category Ab(A).

A one-layer object is the cokernel of a single envelope morphism
``r: R -> G``. An object of Ab(A) is the kernel of a map ``φ: G_P -> G_Q``
between the generators of two one-layer objects P and Q, compatible with
their relations. A morphism is represented by its action on the generators
of P and of Q; witnesses for compatibility are recovered by solving.
"""

from dataclasses import dataclass
from typing import Tuple

from ..additive import AddCat, AddMor, AddObj


@dataclass(frozen=True)
class OneLayer:
    """coker(r) for an envelope morphism ``r``: relations -> generators."""

    matrix: AddMor

    @property
    def cat(self) -> AddCat:
        return self.matrix.cat

    @property
    def generators(self) -> AddObj:
        return self.matrix.dst

    @property
    def relations(self) -> AddObj:
        return self.matrix.src

    @property
    def is_free(self) -> bool:
        return not self.matrix.src


@dataclass(frozen=True)
class Presentation:
    """ker(φ: P -> Q) for one-layer objects P, Q."""

    p: OneLayer
    q: OneLayer
    phi: AddMor

    @property
    def cat(self) -> AddCat:
        return self.phi.cat

    @property
    def shape(self) -> Tuple[int, int, int, int]:
        """(|R_P|, |G_P|, |R_Q|, |G_Q|)."""
        return len(self.p.relations), len(self.p.generators), len(self.q.relations), len(self.q.generators)

    @property
    def size(self) -> int:
        return sum(self.shape)

    def __repr__(self) -> str:
        rp, gp, rq, gq = self.shape
        return f"Presentation(P: {rp}->{gp}, Q: {rq}->{gq})"


@dataclass(frozen=True, eq=False)
class AbMor:
    """
    A morphism X -> Y of Ab(A).

    ``a`` acts on the generators of P and ``g`` on the generators of Q.
    Equality of morphisms is the equivalence decided by ``AbCat.equal``;
    two AbMors compare by identity.
    """

    src: Presentation
    dst: Presentation
    a: AddMor
    g: AddMor

    def __repr__(self) -> str:
        return f"AbMor({self.src!r} -> {self.dst!r})"
