"""Finite coproduct tables and the generators that make a universal homology additive."""

import itertools
import logging
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

from ..diagram import FinCat
from ..errors import NotACoproduct
from ..freyd import AbCat, AbMor, Presentation
from ..quotient import Generator

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CoproductRow:
    """``obj`` = ∐ ``summands`` with the given injections (an empty row states that obj is initial)."""

    obj: str
    summands: Tuple[str, ...] = ()
    injections: Tuple[str, ...] = ()


def coproduct_row(C: FinCat, obj: str, summands: Sequence[str], injections: Optional[Sequence[str]] = None) -> CoproductRow:
    """
    A table row, with injections looked up when each hom-set X_k → obj has exactly one element.

    Raises:
        NotACoproduct: When an injection cannot be determined or has the wrong endpoints
    """
    summands = tuple(str(x) for x in summands)
    if injections is None:
        found = []
        for x in summands:
            homs = C.hom(x, obj)
            if len(homs) != 1:
                raise NotACoproduct(f"no unique morphism {x} -> {obj}; give the injections explicitly")
            found.append(homs[0])
        injections = found
    row = CoproductRow(str(obj), summands, tuple(str(m) for m in injections))
    verify_coproduct(C, row)
    return row


def verify_coproduct(C: FinCat, row: CoproductRow) -> None:
    """
    Check the universal property of ∐ in C for one row.

    Raises:
        NotACoproduct: When some cocone does not factor uniquely through the row
    """
    if len(row.summands) != len(row.injections):
        raise NotACoproduct(f"row for {row.obj} has {len(row.summands)} summands and {len(row.injections)} injections")
    for x, m in zip(row.summands, row.injections):
        if not C.has_morphism(m) or C.source(m) != x or C.target(m) != row.obj:
            raise NotACoproduct(f"'{m}' is not a morphism {x} -> {row.obj}")
    for T in C.objects:
        for cocone in itertools.product(*[C.hom(x, T) for x in row.summands]):
            factors = [
                u for u in C.hom(row.obj, T)
                if all(C.compose(u, m) == f for m, f in zip(row.injections, cocone))
            ]
            if len(factors) != 1:
                legs = ", ".join(cocone) or "the empty cocone"
                raise NotACoproduct(
                    f"{row.obj} is not the coproduct of ({', '.join(row.summands)}): "
                    f"{legs} into {T} factors {len(factors)} times"
                )


def canonical_map(ab: AbCat, row: CoproductRow, delta_of: Callable[[str], Presentation],
                  morphism_of: Callable[[str], AbMor]) -> AbMor:
    """⊕_k H(X_k) → H(∐ X_k), the copair of the images of the injections."""
    target = delta_of(row.obj)
    if not row.summands:
        return ab.zero_morphism(ab.zero_object(), target)
    return ab.copair([morphism_of(m) for m in row.injections], dst=target)


def additivity_generators(ab: AbCat, row: CoproductRow, delta_of: Callable[[str], Presentation],
                          morphism_of: Callable[[str], AbMor], degree: int) -> List[Generator]:
    """ker and coker of the canonical map for one row in one degree."""
    label = f"{'+'.join(row.summands) or '0'}->{row.obj}@{degree}"
    detail = {"row": row.obj, "summands": list(row.summands)}

    def kernel() -> Presentation:
        return ab.kernel(canonical_map(ab, row, delta_of, morphism_of))[0]

    def cokernel() -> Presentation:
        return ab.cokernel(canonical_map(ab, row, delta_of, morphism_of))[0]

    return [
        Generator(f"ker {label}", kind="additivity", degree=degree, detail=detail, factory=kernel),
        Generator(f"coker {label}", kind="additivity", degree=degree, detail=detail, factory=cokernel),
    ]
