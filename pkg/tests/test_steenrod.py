from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from obstruction.exact_algebra.errors import NonPrimeModulus
from obstruction.steenrod import (BETA, SteenrodElement, adem_reduce, admissible_basis, augmentation,
                                  cartan_violations, chain_map_commutes, chart_by_stem, ext_chart,
                                  exactness_report, format_word, identity_map, induced_on_ext,
                                  is_admissible, lift_chain_map, mdt_claims, minimal_resolution,
                                  minimality_violations, parse_word, permanent_cycle_check,
                                  sphere_claims, sphere_module, thom_module, verify_claims, word_degree)
from obstruction.steenrod.boundaries import literal_index_reading
from obstruction.steenrod.resolution import boundaries_compose_to_zero


def dual_poincare_counts(p: int, top: int) -> list:
    """dim A_n from the dual algebra E(tau_i) (x) P(xi_i), |tau_i| = 2p^i - 1,
    |xi_i| = 2(p^i - 1)."""
    series = [1] + [0] * top
    i = 0
    while 2 * p ** i - 1 <= top:
        d = 2 * p ** i - 1
        series = [series[n] + (series[n - d] if n >= d else 0) for n in range(top + 1)]
        i += 1
    i = 1
    while 2 * (p ** i - 1) <= top:
        d = 2 * (p ** i - 1)
        for n in range(d, top + 1):
            series[n] += series[n - d]
        i += 1
    return series


@pytest.mark.parametrize("p,top", [(3, 60), (5, 90), (7, 100)])
def test_admissible_basis_counts_match_dual_series(p, top):
    want = dual_poincare_counts(p, top)
    assert [len(admissible_basis(p, n)) for n in range(top + 1)] == want
    for n in range(top + 1):
        for w in admissible_basis(p, n):
            assert is_admissible(w, p) and word_degree(w, p) == n


words = st.lists(st.one_of(st.just(BETA), st.integers(1, 4)), min_size=1, max_size=4).map(tuple)


@given(st.sampled_from([3, 5]), words)
def test_adem_reduction_is_confluent(p, w):
    left = adem_reduce(w, p, "left")
    right = adem_reduce(w, p, "right")
    assert left == right
    assert all(is_admissible(x, p) and word_degree(x, p) == word_degree(w, p) for x in left)


@given(st.sampled_from([3, 5]), words, words, words)
def test_product_is_associative(p, a, b, c):
    A, B, C = (SteenrodElement(p, {x: 1}) for x in (a, b, c))
    assert (A * B) * C == A * (B * C)


def test_adem_relations_known_values():
    # b b = 0, P1 P1 = 2 P2 and P1 b P1 = b P2 + P2 b at p = 3
    assert adem_reduce("bb", 3) == {}
    assert adem_reduce("P1P1", 3) == {(2,): 2}
    assert adem_reduce("P1bP1", 3) == {(BETA, 2): 1, (2, BETA): 1}
    assert adem_reduce("P1P1P1", 3) == {}
    assert adem_reduce("P1P1", 5) == {(2,): 2}
    assert adem_reduce("P2P1", 5) == {(3,): 3}


def test_word_parsing():
    assert parse_word("bP1bP2") == (BETA, 1, BETA, 2)
    assert format_word((BETA, 1, BETA, 2)) == "bP1bP2"
    assert parse_word("1") == ()
    with pytest.raises(ValueError):
        parse_word("Q2")
    with pytest.raises(NonPrimeModulus):
        adem_reduce("P1", 9)


def _indecomposable_degrees(p: int, top: int) -> set:
    """Ext^1 of the sphere is dual to the indecomposables b, P^(p^i)."""
    out = {1}
    i = 0
    while 2 * (p - 1) * p ** i <= top:
        out.add(2 * (p - 1) * p ** i)
        i += 1
    return out


@pytest.mark.parametrize("p", (3, 5, 7))
def test_sphere_chart_low_stems(p):
    top = 4 * p + 2
    S = minimal_resolution(sphere_module(p), top, 4)
    chart = {stem: col for stem, col in chart_by_stem(S).items() if stem <= 4 * p - 3}
    assert chart == {0: {s: 1 for s in range(5)}, 2 * p - 3: {1: 1}, 4 * p - 5: {2: 1}}
    ext1 = {t for (s, t), n in ext_chart(S).items() if s == 1}
    assert ext1 == _indecomposable_degrees(p, top)


def test_sphere_chart_p3_full_window():
    S = minimal_resolution(sphere_module(3), 14, 4)
    assert chart_by_stem(S) == {0: {0: 1, 1: 1, 2: 1, 3: 1, 4: 1}, 3: {1: 1}, 7: {2: 1},
                                10: {2: 1, 3: 1}, 11: {1: 1, 2: 1, 3: 1}}


@pytest.mark.parametrize("p", (3, 5))
@pytest.mark.parametrize("kind", ("S", "Dt", "S1"))
def test_reverse_pivot_gives_same_chart(p, kind):
    mod = sphere_module(p) if kind == "S" else thom_module(kind, p, 1)
    a = minimal_resolution(mod, 4 * p + 2, 4)
    b = minimal_resolution(mod, 4 * p + 2, 4, reverse=True)
    assert ext_chart(a) == ext_chart(b)


@pytest.mark.parametrize("p", (3, 5))
@pytest.mark.parametrize("kind", ("S", "Dt", "Ht", "S1"))
def test_resolution_exact_minimal_and_dd(p, kind):
    mod = sphere_module(p) if kind == "S" else thom_module(kind, p, 1)
    res = minimal_resolution(mod, 4 * p + 2, 4)
    assert all(row[-1] for row in exactness_report(res))
    assert minimality_violations(res) == []
    assert boundaries_compose_to_zero(res) == []


@pytest.mark.parametrize("p", (3, 5, 7))
def test_mdt_generators(p):
    M = minimal_resolution(thom_module("Dt", p, 1), 4 * p + 2, 4)
    gens = sorted(d for d in M.slices[0].degrees if d <= 4 * p - 3)
    assert gens == [0, 1] + list(range(3, 2 * p - 2, 2)) + [4 * p - 3]


@pytest.mark.parametrize("p", (3, 5, 7))
@pytest.mark.parametrize("group", ("S1", "Dt", "Ht"))
def test_thom_modules_are_modules(p, group):
    mod = thom_module(group, p, 1)
    assert mod.adem_violations() == []
    assert cartan_violations(mod, group) == []


@pytest.mark.parametrize("p", (3, 5))
def test_stated_boundary_formulas(p):
    S = minimal_resolution(sphere_module(p), 4 * p + 2, 4)
    M = minimal_resolution(thom_module("Dt", p, 1), 4 * p + 2, 4)
    for label, v in verify_claims(S, sphere_claims(p)) + verify_claims(M, mdt_claims(p)):
        assert v["valid"] and v["generator_present"], label


def test_beta_formula_needs_half_coefficient_at_p5():
    S = minimal_resolution(sphere_module(5), 22, 4)
    label, s, t, terms = sphere_claims(5)[3]
    wrong = [(c if w != "bP1" else 2, w, d) for c, w, d in terms]
    (_, v), = verify_claims(S, [(label, s, t, wrong)])
    assert not v["valid"]


def test_literal_index_reading_only_first_is_homogeneous():
    assert literal_index_reading(5) == [("alpha_9", True), ("alpha_11", False),
                                        ("alpha_13", False), ("alpha_15", False)]


def test_identity_lift_is_identity_on_ext():
    S = minimal_resolution(sphere_module(3), 14, 4)
    f = identity_map(S.module)
    maps = lift_chain_map(f, S, S)
    assert chain_map_commutes(maps, S, S, f) == []
    for (s, t), n in ext_chart(S).items():
        m = induced_on_ext(maps, S, S, s, t)
        assert m == [[int(i == j) for j in range(n)] for i in range(n)], (s, t)


@pytest.mark.parametrize("p", (3, 5))
def test_thom_class_maps_nontrivially_in_stem_4p_minus_5(p):
    S = minimal_resolution(sphere_module(p), 4 * p + 2, 4)
    M = minimal_resolution(thom_module("Dt", p, 1), 4 * p + 2, 4)
    f = augmentation(M.module, S.module)
    maps = lift_chain_map(f, M, S)
    assert chain_map_commutes(maps, M, S, f) == []
    assert any(any(row) for row in induced_on_ext(maps, M, S, 2, 4 * p - 3))
    pc = permanent_cycle_check(M, 4 * p - 5, 2, literal_degree=4 * p - 5)
    assert pc["present"] and pc["window_complete"]
    assert pc["verdict"] == "no possible differential"


def test_ms1_stem_ten_class():
    S = minimal_resolution(sphere_module(3), 14, 4)
    X = minimal_resolution(thom_module("S1", 3, cap=12), 12, 3)
    maps = lift_chain_map(augmentation(X.module, S.module), X, S, 3)
    assert any(any(row) for row in induced_on_ext(maps, X, S, 2, 12))


def test_permanent_cycle_check_reports_possible_targets():
    S = minimal_resolution(sphere_module(3), 14, 4)
    pc = permanent_cycle_check(S, 11, 1)
    assert pc["present"]
    assert pc["outgoing_targets"] == [(3, 13)]
    assert pc["verdict"] == "differential possible"
