"""Exact verification of the free action of the circle extension of the
order-27 extraspecial group on S^5 x S^5."""
from __future__ import annotations

from fractions import Fraction

from .checks import (
    A1,
    A2,
    A2_WITH_A2B2,
    fixed_line_profile,
    overlap_weights,
    su3_check,
    verify_alpha_equivariance,
    verify_disjointness,
    verify_freeness,
    verify_p_conjugation,
    verify_relations,
)
from .reps import build_Z, p_matrix, rep_matrix
from .symbolic import Mat3, ScaledMat, SymScalar, rewrite_steps, xi


def full_report(eps=Fraction(1, 8), numeric_points: int = 100, seed: int = 0) -> dict:
    """Every verdict at one eps, including the alternative conventions
    that are expected to fail."""
    from .numeric import cross_check

    eps = Fraction(eps)
    if not Fraction(0) < eps < Fraction(1, 4):
        raise ValueError("eps must lie in (0, 1/4)")
    equiv = {f"{g}/m={m}": verify_alpha_equivariance(g, m) for g in "abz" for m in (1, 2)}
    untransposed_z1 = verify_alpha_equivariance("b", 1, transposed=False)
    report = {
        "eps": str(eps),
        "relations": verify_relations(),
        "p_conjugation": verify_p_conjugation(),
        "su3": {f"Z{m}": su3_check(m) for m in (1, 2)},
        "equivariance": equiv,
        "untransposed_Z1_b_equivariance_ok": untransposed_z1["ok"],
        "freeness": verify_freeness(eps),
        "a2b2_variant_freeness_ok": verify_freeness(eps, A2_WITH_A2B2)["ok"],
        "disjointness": verify_disjointness(eps),
        "numeric": cross_check(float(eps), numeric_points, seed),
    }
    report["ok"] = (report["relations"]["ok"] and report["p_conjugation"]["ok"] and all(v["ok"] for v in report["su3"].values())
                    and all(v["ok"] for v in equiv.values()) and report["freeness"]["ok"]
                    and report["disjointness"]["disjoint"] and report["numeric"]["ok"])
    return report


__all__ = [
    "A1", "A2", "A2_WITH_A2B2", "Mat3", "ScaledMat", "SymScalar", "build_Z",
    "fixed_line_profile", "full_report", "overlap_weights", "p_matrix", "rep_matrix",
    "rewrite_steps", "su3_check", "verify_alpha_equivariance", "verify_disjointness",
    "verify_freeness", "verify_p_conjugation", "verify_relations", "xi",
]
