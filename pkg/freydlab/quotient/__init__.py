"""
Exact realizations of Ab(A), membership certificates and Serre quotients.
"""

from .certificate import Certificate, explain_certificate, verify_certificate
from .realization import (
    AbHomSpace,
    InducedRealization,
    ModuleHomSpace,
    ModuleRealization,
    Realization,
    TargetHom,
    evaluation,
    realize,
)
from .serre import (
    FORMAL,
    NO,
    REALIZATION,
    UNKNOWN,
    YES,
    Answer,
    Generator,
    QuotientHom,
    SerreQuotient,
    ThickGens,
    is_zero_in_quotient,
    quotient_by_gens,
    quotient_hom,
    realization_quotient,
)

__all__ = [
    "FORMAL",
    "NO",
    "REALIZATION",
    "UNKNOWN",
    "YES",
    "AbHomSpace",
    "Answer",
    "Certificate",
    "Generator",
    "InducedRealization",
    "ModuleHomSpace",
    "ModuleRealization",
    "QuotientHom",
    "Realization",
    "SerreQuotient",
    "TargetHom",
    "ThickGens",
    "evaluation",
    "explain_certificate",
    "is_zero_in_quotient",
    "quotient_by_gens",
    "quotient_hom",
    "realization_quotient",
    "realize",
    "verify_certificate",
]
