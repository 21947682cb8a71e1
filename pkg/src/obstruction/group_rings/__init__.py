"""Curated (co)homology rings of BS1, BHt, BGt and BDt with restriction,
transfer, reduction and Bockstein maps."""
from __future__ import annotations

from .maps import (
    UnknownBocksteinImage,
    UnknownRestriction,
    UnknownTransfer,
    bockstein_reduce,
    gamma_classes,
    gamma_composite_consistent,
    gamma_pullback,
    gamma_transfer,
    integral_bockstein,
    mod_p_bockstein,
    reduce_mod_p,
    restrict,
    transfer_apply,
)
from .ring import DegreeAboveCap, GradedElement, RingError, TruncatedRing, UnknownProduct
from .tables import KINDS, MissingTable, load_maps, load_ring

__all__ = [
    "DegreeAboveCap", "GradedElement", "KINDS", "MissingTable", "RingError", "TruncatedRing",
    "UnknownBocksteinImage", "UnknownProduct", "UnknownRestriction", "UnknownTransfer",
    "bockstein_reduce", "gamma_classes", "gamma_composite_consistent", "gamma_pullback",
    "gamma_transfer", "integral_bockstein", "load_maps", "load_ring", "mod_p_bockstein",
    "reduce_mod_p", "restrict", "transfer_apply",
]
