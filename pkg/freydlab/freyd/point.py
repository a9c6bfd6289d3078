"""Ab(R) for the one point category: the free abelian category on one object.

Here |m| is Δ of multiplication by m on the unique generator, and
ker|m| is the object representing the functor M ↦ M[m] of m-torsion.
"""

import logging
from typing import Tuple, Union

from ..additive import AddMor, envelope
from ..coeff import Mat, Ring
from ..coeff.ring import INTEGERS
from ..diagram import FinCat
from ..errors import ShapeMismatch, WrongBase, WrongRing
from .category import AbCat
from .presentation import AbMor, OneLayer, Presentation

logger = logging.getLogger(__name__)

STAR = ("*",)


def point_category(ring: Ring) -> AbCat:
    """Ab(R) over the one point category."""
    return AbCat(envelope(FinCat.point(), ring))


def is_point(ab: AbCat) -> bool:
    base = ab.base
    return isinstance(base, FinCat) and len(base.objects) == 1 and len(base) == 1


def _require_point(ab: AbCat) -> None:
    if not is_point(ab):
        raise WrongBase(f"{ab.name} is not over the one point category")


def _scalar(ab: AbCat, c) -> AddMor:
    return ab.envelope.scalar(STAR, STAR, Mat(ab.ring, 1, 1, [[c]]))


def universal_object(ab: AbCat) -> Presentation:
    """|R| = Δ(*)."""
    _require_point(ab)
    return ab.delta("*")


def multiplication(ab: AbCat, c) -> AbMor:
    """|c|: |R| -> |R|."""
    _require_point(ab)
    return ab.delta_morphism(_scalar(ab, c))


def representable(ab: AbCat, m) -> Presentation:
    """ker|m|."""
    _require_point(ab)
    return ab.kernel_object(_scalar(ab, m))


def representable_map(ab: AbCat, m, m2, c) -> AbMor:
    """
    ker|m2| -> ker|m| induced by R/m -> R/m2, 1 ↦ c.

    Needs m2 to divide m·c.
    """
    ring = ab.ring
    q = ring.quo(ring.mul(ring.element(m), ring.element(c)), ring.element(m2))
    if q is None:
        raise ShapeMismatch(f"{m2} does not divide {m}·{c}")
    return ab.morphism(representable(ab, m2), representable(ab, m), _scalar(ab, c), _scalar(ab, q))


def simple_candidate(ab: AbCat, p: int, n: int) -> Presentation:
    """
    The object S with S(Z/p^n) = F_p and S(Z/p^k) = 0 for k != n.

    It is ker|p^n| modulo the images of its radical: the maps from ker|p^n|
    (multiplication by p), from ker|p^(n+1)| and, for n >= 2, from ker|p^(n-1)|.

    Raises:
        WrongRing: Outside the integers
    """
    _require_point(ab)
    if ab.ring.kind != INTEGERS:
        raise WrongRing(f"simple objects are built over Z, not {ab.ring}")
    if n < 1:
        raise ValueError("n must be at least 1")
    top = p ** n
    radical = [representable_map(ab, top, top, p), representable_map(ab, top, p ** (n + 1), p)]
    if n >= 2:
        radical.append(representable_map(ab, top, p ** (n - 1), 1))
    S, _ = ab.cokernel(ab.copair(radical, representable(ab, top)))
    logger.debug(f"Simple candidate at Z/{p}^{n} from {len(radical)} radical maps")
    return S


def evaluate_at_ring(ab: AbCat, x: Union[Presentation, AbMor]):
    """The value at M = R (the forgetful functor), as an FPModule or a ModuleMap."""
    _require_point(ab)
    from ..quotient.realization import evaluation

    F = evaluation(ab)
    return F.mor(x) if isinstance(x, AbMor) else F.obj(x)


def base_change_to_rationals(ab: AbCat, x: Union[Presentation, AbMor]) -> Tuple[AbCat, Union[Presentation, AbMor]]:
    """
    Carry an object or morphism of Ab(Z) into Ab(Q).

    Raises:
        WrongRing: When ``ab`` is not over the integers
    """
    if ab.ring.kind != INTEGERS:
        raise WrongRing(f"base change to Q starts from Z, not {ab.ring}")
    E = ab.envelope
    target = AbCat(E.change_ring(Ring.rationals()))
    T = target.envelope

    def carry(f: AddMor) -> AddMor:
        return E.map_coefficients(f, T)

    def carry_object(X: Presentation) -> Presentation:
        return Presentation(OneLayer(carry(X.p.matrix)), OneLayer(carry(X.q.matrix)), carry(X.phi))

    if isinstance(x, AbMor):
        return target, AbMor(carry_object(x.src), carry_object(x.dst), carry(x.a), carry(x.g))
    return target, carry_object(x)
