from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from obstruction.em_space import (InconsistentTables, OutOfRange, PrimeToPUnknown, TABLE_KINDS,
                                  apply_operation, bockstein_consistency, dual_homology,
                                  dump_table, homology_table, k_table, load_table, name_degree,
                                  names_consistent, parse_table, steenrod_closure, verify_facts)

PRIMES = (3, 5, 7)


@pytest.mark.parametrize("p", PRIMES)
def test_all_eleven_facts_hold(p):
    facts = verify_facts(p)
    assert len(facts) == 11
    bad = [(label, detail) for label, ok, detail in facts if not ok]
    assert bad == []


@pytest.mark.parametrize("p", PRIMES)
def test_group_shapes(p):
    z = load_table("K", p, "Z")
    fp = load_table("K", p, "Fp")
    n = 2 * p - 1
    assert z.group(n).orders == (0, 0)
    assert sorted(z.group(4 * p - 2).orders) == [0, p, p]
    assert fp.dim(4 * p - 2) == 3
    assert fp.names(4 * p - 3) == ("P1(zb1)", "P1(zb2)")
    for i in range(1, n):
        assert z.dim(i) == 0 and fp.dim(i) == 0
    assert z.free_rank(4 * p - 1) is None


@pytest.mark.parametrize("p", PRIMES)
def test_bockstein_count_and_derived_torsion(p):
    res = bockstein_consistency(load_table("K", p, "Fp"), load_table("K", p, "Z"))
    assert res["ok"]
    # the top F_p class count forces no p-torsion one degree up
    assert res["derived_p_torsion"][4 * p - 1] == 0


def test_bockstein_detects_inconsistency():
    fp = k_table("K", 3, "Fp")
    z = k_table("K", 3, "Z")
    del fp.groups[9]
    with pytest.raises(InconsistentTables):
        bockstein_consistency(fp, z)
    with pytest.raises(InconsistentTables):
        bockstein_consistency(k_table("K", 3, "Fp"), k_table("K", 5, "Z"))


@pytest.mark.parametrize("p", PRIMES)
@pytest.mark.parametrize("space,coeff", TABLE_KINDS)
def test_tables_closed_and_named_consistently(p, space, coeff):
    t = load_table(space, p, coeff)
    assert names_consistent(t) == []
    if coeff == "Fp":
        assert steenrod_closure(t) == []


@pytest.mark.parametrize("p", PRIMES)
@pytest.mark.parametrize("space,coeff", TABLE_KINDS)
def test_dump_parse_roundtrip(p, space, coeff):
    t = k_table(space, p, coeff)
    back = parse_table(dump_table(t))
    assert back == t
    assert load_table(space, p, coeff) == t


@pytest.mark.parametrize("p", PRIMES)
def test_dual_homology_matches_curated_homology(p):
    dual = dual_homology(load_table("K", p, "Z"))
    hom = homology_table(p)
    for i in range(hom.top + 1):
        assert dual.group(i).normalized() == hom.group(i).normalized(), i


def test_name_degree():
    assert name_degree("zb1", 3) == 5
    assert name_degree("P1(zb1)", 3) == 9
    assert name_degree("bP1(zb2)", 5) == 18
    assert name_degree("zb1*zb2", 7) == 26
    assert name_degree("d(P1(zb1))", 3) == 10
    with pytest.raises(ValueError):
        name_degree("w1", 3)
    with pytest.raises(ValueError):
        name_degree("Q(zb1)", 3)


@given(st.sampled_from(PRIMES), st.lists(st.sampled_from(["b", "P1"]), max_size=3),
       st.sampled_from(["i1", "i2"]))
def test_operations_shift_degree(p, ops, base):
    name = "".join(ops) + f"({base})" if ops else base
    expected = 2 * p - 1 + sum(2 * (p - 1) if o == "P1" else 1 for o in ops)
    assert name_degree(name, p) == expected


def test_apply_operation_rules():
    assert apply_operation("b", "zb1") == []
    assert apply_operation("b", "b(i1)") == []
    assert [n for _, n in apply_operation("b", "i1")] == ["b(i1)"]
    assert [n for _, n in apply_operation("P1", "zb2")] == ["P1(zb2)"]


def test_out_of_range_and_unknown_torsion():
    z = load_table("K", 3, "Z")
    with pytest.raises(OutOfRange):
        z.group(12)
    with pytest.raises(OutOfRange):
        z.group(-1)
    with pytest.raises(PrimeToPUnknown):
        z.prime_to_p_torsion(10)
    assert load_table("K", 3, "Fp").prime_to_p_torsion(10).orders == ()
    with pytest.raises(ValueError):
        k_table("K_p", 3, "Z")
