"""Odd-primary Steenrod algebra, Thom-spectrum modules, minimal resolutions
and Ext charts."""
from __future__ import annotations

from .algebra import (
    BETA,
    AdmissibleMonomial,
    SteenrodElement,
    adem_reduce,
    admissible_basis,
    format_word,
    is_admissible,
    parse_word,
    word_degree,
)
from .boundaries import mdt_claims, sphere_claims, verify_claims
from .modules import ModuleWithAction, cartan_violations, sphere_module, thom_class_series, thom_module
from .resolution import (
    ChainMapSlice,
    FreeModule,
    LiftObstructed,
    Resolution,
    ResolutionSlice,
    WindowExhausted,
    augmentation,
    chain_map_commutes,
    chart_by_stem,
    chart_json,
    ext_chart,
    exactness_report,
    identity_map,
    induced_on_ext,
    lift_chain_map,
    minimal_resolution,
    minimality_violations,
    permanent_cycle_check,
)

__all__ = [
    "BETA", "AdmissibleMonomial", "ChainMapSlice", "FreeModule", "LiftObstructed",
    "ModuleWithAction", "Resolution", "ResolutionSlice", "SteenrodElement",
    "WindowExhausted", "adem_reduce", "admissible_basis", "augmentation",
    "cartan_violations", "chain_map_commutes", "chart_by_stem", "chart_json",
    "exactness_report", "ext_chart", "format_word", "identity_map", "induced_on_ext",
    "is_admissible", "lift_chain_map", "mdt_claims", "minimal_resolution",
    "minimality_violations", "parse_word", "permanent_cycle_check", "sphere_claims",
    "sphere_module", "thom_class_series", "thom_module", "verify_claims", "word_degree",
]
