"""Membership certificates for thick subcategories.

A certificate is a proof tree whose leaves are generators or zero objects and
whose inner nodes close under isomorphisms, subobjects, quotients and
extensions. Every node carries the object it certifies and the morphisms that
witness its step, so a tree can be re-checked from scratch.
"""

import logging
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence, Tuple

from ..errors import FreydLabError
from ..freyd import AbCat, AbMor, Presentation

logger = logging.getLogger(__name__)

GEN = "gen"
ZERO = "zero"
ISO = "iso"
SUB = "sub"
QUOT = "quot"
EXT = "ext"

KINDS = (GEN, ZERO, ISO, SUB, QUOT, EXT)


@dataclass(frozen=True, eq=False)
class Certificate:
    """
    One node of a membership proof.

    ``iso``: witnesses = (f: obj -> child,)
    ``sub``: witnesses = (i: obj -> child,) with i mono
    ``quot``: witnesses = (p: child -> obj,) with p epi
    ``ext``: witnesses = (i: left -> obj, p: obj -> right), children = (left, right)
    """

    kind: str
    obj: Presentation
    index: Optional[int] = None
    witnesses: Tuple[AbMor, ...] = field(default=())
    children: Tuple["Certificate", ...] = field(default=())

    @classmethod
    def gen(cls, index: int, obj: Presentation) -> "Certificate":
        return cls(GEN, obj, index=index)

    @classmethod
    def zero(cls, obj: Presentation) -> "Certificate":
        return cls(ZERO, obj)

    @classmethod
    def iso_to(cls, obj: Presentation, f: AbMor, child: "Certificate") -> "Certificate":
        return cls(ISO, obj, witnesses=(f,), children=(child,))

    @classmethod
    def sub_of(cls, obj: Presentation, i: AbMor, child: "Certificate") -> "Certificate":
        return cls(SUB, obj, witnesses=(i,), children=(child,))

    @classmethod
    def quot_of(cls, obj: Presentation, p: AbMor, child: "Certificate") -> "Certificate":
        return cls(QUOT, obj, witnesses=(p,), children=(child,))

    @classmethod
    def ext_of(cls, obj: Presentation, i: AbMor, p: AbMor, left: "Certificate", right: "Certificate") -> "Certificate":
        return cls(EXT, obj, witnesses=(i, p), children=(left, right))

    def walk(self) -> Iterator["Certificate"]:
        yield self
        for child in self.children:
            yield from child.walk()

    @property
    def depth(self) -> int:
        return 1 + max((c.depth for c in self.children), default=0)

    @property
    def size(self) -> int:
        return sum(1 for _ in self.walk())

    def generators_used(self) -> Tuple[int, ...]:
        return tuple(sorted({node.index for node in self.walk() if node.kind == GEN}))

    def __repr__(self) -> str:
        if self.kind == GEN:
            return f"Gen({self.index})"
        if not self.children:
            return self.kind.capitalize()
        inner = ", ".join(repr(c) for c in self.children)
        return f"{self.kind.capitalize()}Of({inner})"


def _check_node(ab: AbCat, cert: Certificate, generators: Sequence[Presentation]) -> Optional[str]:
    """None when the node's own step verifies, otherwise the reason it fails."""
    kind, X = cert.kind, cert.obj
    arity = {GEN: (0, 0), ZERO: (0, 0), ISO: (1, 1), SUB: (1, 1), QUOT: (1, 1), EXT: (2, 2)}
    if kind not in arity:
        return f"unknown node kind '{kind}'"
    if (len(cert.witnesses), len(cert.children)) != arity[kind]:
        return f"{kind} node has the wrong number of witnesses or children"
    for f in cert.witnesses:
        if not ab.is_valid(f):
            return f"{kind} witness is not a morphism"

    if kind == GEN:
        if cert.index is None or not 0 <= cert.index < len(generators):
            return f"generator index {cert.index} out of range"
        return None if generators[cert.index] == X else f"object is not generator {cert.index}"
    if kind == ZERO:
        return None if ab.is_zero(X) else "object is not zero"

    if kind in (ISO, SUB):
        f, child = cert.witnesses[0], cert.children[0]
        if f.src != X or f.dst != child.obj:
            return f"{kind} witness has the wrong endpoints"
        ok = ab.is_iso(f) if kind == ISO else ab.is_mono(f)
        return None if ok else f"{kind} witness is not {'an isomorphism' if kind == ISO else 'mono'}"
    if kind == QUOT:
        p, child = cert.witnesses[0], cert.children[0]
        if p.src != child.obj or p.dst != X:
            return "quot witness has the wrong endpoints"
        return None if ab.is_epi(p) else "quot witness is not epi"

    i, p = cert.witnesses
    left, right = cert.children
    if i.src != left.obj or i.dst != X or p.src != X or p.dst != right.obj:
        return "ext witnesses have the wrong endpoints"
    if not ab.is_mono(i):
        return "ext inclusion is not mono"
    if not ab.is_epi(p):
        return "ext projection is not epi"
    if not ab.is_zero_morphism(ab.compose(p, i)):
        return "ext composite is not zero"
    _, k = ab.kernel(p)
    if ab.lift(i, k) is None:
        return "ext sequence is not exact in the middle"
    return None


def explain_certificate(ab: AbCat, cert: Certificate, generators: Sequence[Presentation]) -> Optional[str]:
    """The first failing step of ``cert`` in depth-first order, or None when it verifies."""
    for node in cert.walk():
        try:
            reason = _check_node(ab, node, generators)
        except FreydLabError as e:
            reason = f"{node.kind} node: {e}"
        if reason is not None:
            return reason
    return None


def verify_certificate(ab: AbCat, cert: Certificate, generators: Sequence[Presentation]) -> bool:
    """True iff every node of ``cert`` verifies in ``ab`` against ``generators``."""
    reason = explain_certificate(ab, cert, generators)
    if reason is not None:
        logger.debug(f"Certificate rejected: {reason}")
        return False
    return True
