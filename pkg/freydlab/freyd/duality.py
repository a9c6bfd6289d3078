"""The contravariant equivalence Ab(A)^op ≃ Ab(A^op)."""

import logging
from typing import Dict, Tuple

from ..additive import factor_right
from ..errors import NotAMorphism
from .category import AbCat
from .presentation import AbMor, Presentation

logger = logging.getLogger(__name__)


class OppositeView:
    """
    Ab(A)^op realized as Ab(A^op).

    A one-layer object coker(r) turns into ker(r^op); an object ker(φ: P -> Q)
    turns into the cokernel of the induced map between those kernels.
    """

    def __init__(self, source: AbCat):
        self.source = source
        self.category = AbCat(source.envelope.op())
        self._objects: Dict[Presentation, Tuple[Presentation, AbMor]] = {}

    def _relations_lift(self, a, r_src, r_dst):
        b = factor_right(a @ r_src.matrix, r_dst.matrix)
        if b is None:
            raise NotAMorphism("generator map does not respect relations")
        return b

    def _kernel_of_layer(self, layer) -> Presentation:
        return self.category.kernel_object(layer.matrix.op())

    def dual_object(self, X: Presentation) -> Presentation:
        return self._dual(X)[0]

    def _dual(self, X: Presentation) -> Tuple[Presentation, AbMor]:
        if X not in self._objects:
            T = self.category
            kp = self._kernel_of_layer(X.p)
            kq = self._kernel_of_layer(X.q)
            b = self._relations_lift(X.phi, X.p, X.q)
            m = AbMor(kq, kp, X.phi.op(), b.op())
            dual, projection = T.cokernel(m)
            self._objects[X] = (dual, projection)
        return self._objects[X]

    def dual_morphism(self, f: AbMor) -> AbMor:
        """f°: Y° -> X° for f: X -> Y."""
        T = self.category
        X, Y = f.src, f.dst
        _, pi_x = self._dual(X)
        dual_y, pi_y = self._dual(Y)
        b = self._relations_lift(f.a, X.p, Y.p)
        reversed_layer = AbMor(self._kernel_of_layer(Y.p), self._kernel_of_layer(X.p), f.a.op(), b.op())
        u = T.colift(pi_y, T.compose(pi_x, reversed_layer))
        if u is None:
            raise NotAMorphism("dual map does not descend to the cokernel")
        return u


def op_view(ab: AbCat) -> OppositeView:
    """The dual description of ``ab``; ``op_view(ab).category`` is Ab(A^op)."""
    view = OppositeView(ab)
    logger.debug(f"Opposite view {view.category.name} of {ab.name}")
    return view
