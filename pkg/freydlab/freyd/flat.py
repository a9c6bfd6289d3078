"""The flat part of Ab(A): objects built from Δ-images by kernels, and projectivity."""

import itertools
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Iterator, Optional, Tuple

from ..additive import AddObj
from ..config import Bounds, get_config
from ..errors import NotEpi, UnsupportedBase
from .category import AbCat
from .presentation import AbMor, Presentation

logger = logging.getLogger(__name__)

IN_FLAT = "in_flat"
NOT_SHOWN = "not_shown"


@dataclass(frozen=True)
class FlatAnswer:
    status: str
    witness: Optional[Dict[str, Any]] = field(default=None)

    @property
    def in_flat(self) -> bool:
        return self.status == IN_FLAT


def _flat_constructions(ab: AbCat, size: int) -> Iterator[Tuple[AddObj, AddObj, int, Presentation]]:
    """ker Δ(f) for f among hom candidates Δ(A) -> Δ(B), A and B sums of at most ``size`` vertices."""
    vertices = ab.base.objects
    sums = [tuple(c) for n in range(size + 1) for c in itertools.combinations_with_replacement(vertices, n)]
    seen = set()
    for A in sums:
        if not A:
            continue
        for B in sums:
            if not B:
                yield A, B, 0, ab.delta_object(A)
                continue
            for n, f in enumerate(ab.hom(ab.delta_object(A), ab.delta_object(B)).candidates()):
                K = ab.kernel_object(f.a)
                if K not in seen:
                    seen.add(K)
                    yield A, B, n, K


def flat_membership(ab: AbCat, X: Presentation, bounds: Optional[Bounds] = None) -> FlatAnswer:
    """
    Try to exhibit X inside the closure of the Δ-images under kernels.

    Free presentations are kernels of Δ-maps as written. Otherwise X is compared,
    up to isomorphism, with ker Δ(f) for the small morphisms f between sums of at
    most ``bounds.size`` vertices. The answer InFlat carries the construction;
    NotShown only means that no construction was found.
    """
    if X.p.is_free and X.q.is_free:
        if not X.q.generators:
            return FlatAnswer(IN_FLAT, {"kind": "generator", "vertices": list(X.p.generators)})
        return FlatAnswer(IN_FLAT, {
            "kind": "kernel",
            "source": list(X.p.generators),
            "target": list(X.q.generators),
        })
    if ab.is_zero(X):
        return FlatAnswer(IN_FLAT, {"kind": "zero"})
    size = (bounds or get_config().bounds()).size
    try:
        for A, B, n, K in _flat_constructions(ab, size):
            if ab.iso_search(X, K) is not None:
                logger.debug(f"{X!r} is isomorphic to ker Δ({A} -> {B}), candidate {n}")
                return FlatAnswer(IN_FLAT, {"kind": "iso", "source": list(A), "target": list(B), "candidate": n})
    except UnsupportedBase:
        logger.debug(f"No flat search over {ab.name}")
        return FlatAnswer(NOT_SHOWN)
    logger.debug(f"No flat construction for {X!r} up to size {size}")
    return FlatAnswer(NOT_SHOWN)


def is_projective_against(ab: AbCat, X: Presentation, e: AbMor) -> bool:
    """
    True iff every morphism X -> cod(e) lifts along the epimorphism ``e``.

    Raises:
        NotEpi: When ``e`` is not an epimorphism
    """
    if not ab.is_epi(e):
        raise NotEpi("projectivity is tested against epimorphisms only")
    for f in ab.hom(X, e.dst).generators:
        if ab.lift(e, f) is None:
            return False
    return True
