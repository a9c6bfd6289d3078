"""Exact linear algebra over Z, Q, Z/n and prime fields."""
from .matrix import (
    Mat,
    NormalForm,
    SmithForm,
    block_diagonal,
    column_span_contains,
    echelon_form,
    howell_form,
    hstack,
    inverse,
    kernel_gens,
    normal_form,
    smith_form,
    solve_right,
    vstack,
)
from .modules import FPModule, ModuleMap, ModuleSummary, homology_module, is_exact_at
from .ring import Ring

__all__ = [
    "Ring",
    "Mat",
    "NormalForm",
    "SmithForm",
    "normal_form",
    "smith_form",
    "echelon_form",
    "howell_form",
    "solve_right",
    "kernel_gens",
    "inverse",
    "hstack",
    "vstack",
    "block_diagonal",
    "column_span_contains",
    "FPModule",
    "ModuleMap",
    "ModuleSummary",
    "is_exact_at",
    "homology_module",
]
