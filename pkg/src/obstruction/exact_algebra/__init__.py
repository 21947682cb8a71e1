"""Exact arithmetic substrate: prime fields, cyclotomic fields, integer
Smith normal form and finitely generated abelian groups."""
from __future__ import annotations

from .abgroup import AbGroup, direct_sum, p_localize
from .cyclotomic import CycScalar, cyclotomic_eval, embed
from .errors import NonPrimeModulus, UnsupportedConductor
from .fp import Echelon, FpMatrix, fp_rank, fp_rank_kernel, is_prime, row_reduce, solve, span_basis
from .snf import (
    IntMatrix,
    cokernel_p_local,
    express_in_lattice,
    integer_kernel,
    local_invariants,
    smith_normal_form,
    smith_with_transforms,
)

__all__ = [
    "AbGroup", "CycScalar", "Echelon", "FpMatrix", "IntMatrix", "NonPrimeModulus",
    "UnsupportedConductor", "cokernel_p_local", "cyclotomic_eval", "direct_sum", "embed",
    "express_in_lattice", "fp_rank", "fp_rank_kernel", "integer_kernel", "is_prime",
    "local_invariants", "p_localize", "row_reduce", "smith_normal_form",
    "smith_with_transforms", "solve", "span_basis",
]
