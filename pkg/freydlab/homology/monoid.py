"""Universal representations of a finite monoid N through A^point(N)."""

import logging
from typing import Mapping, Optional, Sequence, Tuple

from ..coeff import FPModule, ModuleMap, Ring
from ..config import Bounds
from ..diagram import FinCat
from ..errors import ShapeMismatch
from ..freyd import AbCat, AbMor, HomModule
from ..quotient import ModuleRealization, realize
from .graded import GradedObject, GradedQuotient, point_quotient, realization_agrees, universal_homology

logger = logging.getLogger(__name__)


class MonoidUniversal:
    """
    A^point(N) with its universal representation h: R[N] → End(H_0(*)).

    Degree 0 of the point quotient has no generators, so End(H_0(*)) is the
    endomorphism module of Δ(*) in Ab(R·N⁺).
    """

    def __init__(self, monoid: FinCat, ring: Ring, window: Tuple[int, int] = (-1, 1),
                 bounds: Optional[Bounds] = None):
        if len(monoid.objects) != 1:
            raise ShapeMismatch(f"{monoid.name} has {len(monoid.objects)} objects, not one")
        self.monoid = monoid
        self.ring = ring
        self.point = monoid.objects[0]
        self.graded = universal_homology(monoid, ring, window)
        self.quotient: GradedQuotient = point_quotient(self.graded, [self.point], bounds=bounds)

    @property
    def component(self) -> AbCat:
        return self.graded.component

    @property
    def unit(self) -> str:
        return self.monoid.identity(self.point)

    @property
    def elements(self) -> Sequence[str]:
        return self.monoid.morphisms

    @property
    def H(self) -> GradedObject:
        return self.graded.H(self.point, 0)

    def h(self, element: str) -> AbMor:
        """h(g) = Δ(g) ∈ End(H_0(*))."""
        return self.component.delta_morphism(element)

    def endomorphisms(self) -> HomModule:
        return self.quotient.hom(self.H, self.H)

    def check_relations(self) -> bool:
        """h(1) = id and h(g)∘h(f) = h(g·f) for all elements."""
        ab = self.component
        if not ab.equal(self.h(self.unit), ab.identity(self.H.obj)):
            return False
        for g in self.elements:
            for f in self.elements:
                if not ab.equal(ab.compose(self.h(g), self.h(f)), self.h(self.monoid.compose(g, f))):
                    logger.debug(f"h does not respect {g}·{f}")
                    return False
        return True

    def representation(self, module: FPModule, action: Mapping[str, ModuleMap], name: str = "ρ") -> ModuleRealization:
        """
        r_ρ: the exact functor out of A^point(N) induced by a representation ρ on ``module``.

        Raises:
            RelationViolation: When ``action`` is not a monoid action
        """
        return realize(self.component, {self.point: module}, morphisms=dict(action), name=name)

    def factors(self, module: FPModule, action: Mapping[str, ModuleMap]) -> bool:
        """ρ = r_ρ∘h on every element."""
        return realization_agrees(self.representation(module, action), action)


def monoid_universal(monoid: FinCat, ring: Ring, bounds: Optional[Bounds] = None) -> MonoidUniversal:
    """
    A^point(N) for a one-object category N.

    Raises:
        ShapeMismatch: When N has more than one object
    """
    U = MonoidUniversal(monoid, ring, bounds=bounds)
    logger.info(f"Universal representation of {monoid.name} over {ring}")
    return U
