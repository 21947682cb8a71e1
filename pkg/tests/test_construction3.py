from __future__ import annotations

import math
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from obstruction.construction3 import (A2_WITH_A2B2, Mat3, SymScalar, build_Z, full_report,
                                       overlap_weights, su3_check, verify_alpha_equivariance,
                                       verify_disjointness, verify_freeness, verify_p_conjugation,
                                       verify_relations, xi)
from obstruction.construction3.numeric import cross_check, intersection_witness, z_numeric
from obstruction.construction3.reps import whole_matrix_det_exponent
from obstruction.construction3.symbolic import VARS, _normalize, is_normal, rewrite_steps

THRESHOLD = (1 - 1 / math.sqrt(3)) / 2


@pytest.fixture(scope="module")
def report():
    return full_report(Fraction(1, 8))


def test_full_report_ok(report):
    assert report["ok"]
    assert report["relations"]["ok"]
    assert report["p_conjugation"]["ok"]
    assert report["freeness"]["violations"] == []
    assert report["numeric"]["ok"]


@pytest.mark.parametrize("g", "abz")
@pytest.mark.parametrize("m", (1, 2))
def test_equivariance(g, m):
    assert verify_alpha_equivariance(g, m)["ok"]


@pytest.mark.parametrize("m", (1, 2))
def test_block_normalized_z_is_special_unitary(m):
    assert su3_check(m)["ok"]


def test_alternative_conventions_fail(report):
    assert report["untransposed_Z1_b_equivariance_ok"] is False
    assert report["a2b2_variant_freeness_ok"] is False
    assert not verify_freeness(Fraction(1, 8), A2_WITH_A2B2)["ok"]
    assert whole_matrix_det_exponent() == "(eps(1-eps))^(-1/2)"


def test_relations_and_conjugation():
    assert verify_relations()["first_failure"] is None
    assert verify_p_conjugation()["ok"]


def test_overlap_weights_uniform():
    assert overlap_weights() == [[Fraction(1, 3)] * 3 for _ in range(3)]


@pytest.mark.parametrize("eps,disjoint", [(Fraction(1, 8), True), (Fraction(1, 5), True),
                                          (Fraction(21, 100), True), (Fraction(11, 50), False),
                                          (Fraction(6, 25), False)])
def test_disjointness_threshold(eps, disjoint):
    v = verify_disjointness(eps)
    assert v["disjoint"] is disjoint
    assert (float(eps) < THRESHOLD) is disjoint
    assert (v["residual"] == []) is disjoint


def test_chain_argument_reported_separately():
    assert verify_disjointness(Fraction(1, 8))["chain"]["verdict"] == "disjoint"
    v = verify_disjointness(Fraction(2, 7))
    assert v["chain"]["verdict"] == "criterion inconclusive"
    assert v["chain"]["first_step_at_e1"]["holds"] is False


@pytest.mark.parametrize("eps", (0.125, 0.2, 0.22, 0.24))
def test_intersection_witness_matches_verdict(eps):
    w = intersection_witness(eps)
    both = w["margin_U1"] >= 0 and w["margin_U2"] >= 0
    assert both is (eps >= THRESHOLD)
    assert abs(np.linalg.norm(w["point"]) - 1) < 1e-12


def test_numeric_cross_check():
    res = cross_check(0.125, points=100, seed=1)
    assert res["ok"]
    assert max(res["worst"].values()) < 1e-10


def test_untransposed_z1_fails_numerically():
    rng = np.random.default_rng(3)
    from obstruction.construction3.numeric import equivariance_residual, sample_point
    z = sample_point(rng, 0.125)
    assert equivariance_residual("b", 1, 0, z, 0.125, transposed=False) > 1e-3
    assert equivariance_residual("b", 1, 0, z, 0.125) < 1e-10
    Z = z_numeric(1, z, 0.125)
    assert np.allclose(Z @ Z.conj().T, np.eye(3))


def test_rejects_eps_outside_open_quarter():
    for eps in (Fraction(0), Fraction(1, 4), Fraction(1, 3), Fraction(-1, 8)):
        with pytest.raises(ValueError):
            full_report(eps, numeric_points=1)


monomials = st.tuples(*[st.integers(0, 3)] * len(VARS))
coeffs = st.integers(-3, 3).filter(bool)


@given(st.dictionaries(monomials, coeffs, min_size=1, max_size=5), st.integers(0, 10 ** 6))
def test_random_rewrite_order_reaches_normal_form(terms, seed):
    via_steps = rewrite_steps(terms, random.Random(seed))
    direct = _normalize({m: SymScalar.const(c).terms[(0,) * len(VARS)] for m, c in terms.items()})
    assert {m: c for m, c in via_steps.items() if not c.is_zero()} == direct


@given(st.dictionaries(monomials, coeffs, min_size=1, max_size=4))
def test_conjugation_is_an_involution(terms):
    s = SymScalar({m: SymScalar.const(c).terms[(0,) * len(VARS)] for m, c in terms.items()})
    assert s.conj().conj() == s
    assert is_normal(s)


def test_cyclotomic_constants():
    assert xi(3) == xi(0)
    w = Mat3.diag([xi(1), xi(2), 1])
    assert (w * w * w - Mat3.identity()).is_zero()
    assert build_Z(1).det_residual().is_zero()
