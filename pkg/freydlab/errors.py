"""Error types raised across FreydLab.

Library code raises these; the command-line front end converts them into exit
codes and stderr diagnostics.
"""

from typing import Any, Dict, List, Optional, Sequence


class FreydLabError(Exception):
    """Base class for all FreydLab errors."""


class ShapeMismatch(FreydLabError, ValueError):
    """Matrices or morphisms with incompatible shapes were combined."""


class RingMismatch(FreydLabError, ValueError):
    """Values over different coefficient rings were combined."""


class InvalidRing(FreydLabError, ValueError):
    """A ring description is not one of the supported kinds."""


class NonFinite(FreydLabError):
    """Closure enumeration of a decorated quiver exceeded its bound."""

    def __init__(self, message: str, growing: Sequence[str] = ()):
        super().__init__(message)
        self.growing = list(growing)


class NotSubcategory(FreydLabError):
    """A distinguished morphism set is not closed under composition or identities."""

    def __init__(self, message: str, missing: Sequence[str] = ()):
        super().__init__(message)
        self.missing = list(missing)


class InvalidCategory(FreydLabError, ValueError):
    """Composition data that is not a category (missing composites, not associative or unital)."""


class EmptyWindow(FreydLabError, ValueError):
    """A degree window [a, b] with a > b."""


class OutOfWindow(FreydLabError, ValueError):
    """A degree outside the configured window was requested."""


class UnsupportedBase(FreydLabError):
    """The operation needs a finite base category."""


class MalformedPresentation(FreydLabError, ValueError):
    """A presentation fails its compatibility square."""


class NotAMorphism(MalformedPresentation):
    """Proposed morphism data does not define a morphism of presentations."""


class NotEpi(FreydLabError, ValueError):
    """A morphism required to be an epimorphism is not one."""


class WrongBase(FreydLabError, ValueError):
    """The operation is only defined over the one-point base."""


class WrongRing(FreydLabError, ValueError):
    """The operation is only defined over a specific coefficient ring."""


class RelationViolation(FreydLabError):
    """An assignment does not satisfy a relation of its base category."""

    def __init__(self, message: str, relation: Any = None):
        super().__init__(message)
        self.relation = relation


class FormalModeUnsupported(FreydLabError):
    """The operation needs a quotient in realization mode."""


class NonStabilized(FreydLabError):
    """Hom saturation did not stabilize within the configured number of stages."""

    def __init__(self, message: str, stage: int):
        super().__init__(message)
        self.stage = stage


class NoFinalObject(FreydLabError):
    """The category has no final object."""


class NoInitial(FreydLabError):
    """The category has no strictly initial object."""


class AxiomFailure(FreydLabError):
    """Relative homology data violates the axioms."""

    def __init__(self, message: str, violations: Optional[List[Dict[str, Any]]] = None):
        super().__init__(message)
        self.violations = violations or []


class NotACoproduct(FreydLabError):
    """A coproduct table row fails the universal property."""


class CertificateError(FreydLabError, ValueError):
    """A certificate cannot be decoded or references unknown generators."""


class SessionError(FreydLabError, ValueError):
    """A session file cannot be parsed or references unknown names."""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        if line is not None:
            message = f"line {line}, column {column or 1}: {message}"
        super().__init__(message)
        self.line = line
        self.column = column
