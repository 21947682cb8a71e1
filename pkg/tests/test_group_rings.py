from __future__ import annotations

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from obstruction.group_rings import (
    KINDS,
    MissingTable,
    RingError,
    UnknownTransfer,
    gamma_composite_consistent,
    gamma_transfer,
    integral_bockstein,
    load_ring,
    mod_p_bockstein,
    reduce_mod_p,
    restrict,
    transfer_apply,
)
from obstruction.group_rings import tables
from obstruction.group_rings.maps import projection_formula_instances
from obstruction.group_rings.ring import TruncatedRing

PRIMES = (3, 5, 7)


def basis_monomials(ring):
    return [m for d in range(ring.cap + 1) for m in ring.ring_basis(d)]


def _product_or_none(x, y):
    try:
        return x * y
    except RingError:
        return None


# ---- tables -------------------------------------------------------------------

@pytest.mark.parametrize("p", PRIMES)
@pytest.mark.parametrize("kind", KINDS)
def test_shipped_tables_match_builders(kind, p):
    shipped = (tables.data_dir() / tables.file_name(kind, p)).read_text()
    assert shipped == tables.dump_ring(tables.build_ring(kind, p))


@pytest.mark.parametrize("p", PRIMES)
def test_shipped_maps_match_builder(p):
    assert (tables.data_dir() / f"maps_p{p}.txt").read_text() == tables.dump_maps(tables.build_maps(p))


def test_missing_table_directory(tmp_path, monkeypatch):
    monkeypatch.setenv("OBSTRUCTION_DATA_DIR", str(tmp_path))
    with pytest.raises(MissingTable):
        load_ring("BGt", 3)


def test_data_dir_override(tmp_path, monkeypatch):
    tables.write_tables(tmp_path, primes=(3,))
    monkeypatch.setenv("OBSTRUCTION_DATA_DIR", str(tmp_path))
    (tmp_path / tables.file_name("BDt", 3)).unlink()
    assert load_ring("BHt", 3).rid == "BHt(3)"
    with pytest.raises(MissingTable):
        load_ring("BDt", 3)


@pytest.mark.parametrize("p", PRIMES)
@pytest.mark.parametrize("base", ["BGt", "BHt", "BS1", "BDt"])
def test_universal_coefficients(base, p):
    """dim H^n(F_p) = #(Z and p-torsion summands of H^n) + #(p-torsion summands of H^(n+1))."""
    Z, F = load_ring(base, p), load_ring(base + "/p", p)
    for n in range(Z.cap):
        here = sum(1 for _, o in Z.basis.get(n, []) if o == 0 or o % p == 0)
        above = sum(1 for _, o in Z.basis.get(n + 1, []) if o and o % p == 0)
        assert len(F.basis.get(n, [])) == here + above, n


# ---- ring axioms ----------------------------------------------------------------

@pytest.mark.parametrize("kind", ["BGt", "BGt/p", "BHt/p", "BDt/p"])
def test_graded_commutativity_and_associativity(kind):
    ring = load_ring(kind, 3)
    monos = basis_monomials(ring)
    rng = random.Random(7)
    for _ in range(300):
        a, b, c = (ring.element({rng.choice(monos): 1}) for _ in range(3))
        ab, ba = _product_or_none(a, b), _product_or_none(b, a)
        if ab is not None and ba is not None:
            da, db = ring.mono_degree(next(iter(a.terms))), ring.mono_degree(next(iter(b.terms)))
            assert ab == ba * ((-1) ** (da * db))
        left = _product_or_none(ab, c) if ab is not None else None
        bc = _product_or_none(b, c)
        right = _product_or_none(a, bc) if bc is not None else None
        if left is not None and right is not None:
            assert left == right


@pytest.mark.parametrize("kind", ["BGt", "BGt/p"])
@given(seed=st.integers(0, 10 ** 6))
def test_rewrite_order_does_not_change_normal_form(kind, seed):
    ring = load_ring(kind, 5)
    rng = random.Random(seed)
    shuffled = TruncatedRing(ring.rid, ring.p, ring.coeff, ring.cap, ring.gens, ring.basis,
                             rng.sample(ring.rewrites, len(ring.rewrites)))
    gens = len(ring.gens)
    m = tuple(rng.randrange(3) if ring.gens[i][1] % 2 == 0 else rng.randrange(2) for i in range(gens))
    assert ring.normal_form(m) == shuffled.normal_form(m)


def test_odd_square_vanishes():
    ring = load_ring("BGt/p", 3)
    y = ring.gen("y")
    assert (y * y).is_zero()
    assert ring.parse("x*yp") == ring.parse("xp*y")


@pytest.mark.parametrize("p", PRIMES)
def test_new_relation_follows_from_chern_relations(p):
    """x'^p y = x^(p-1) x' y = x^p y' in the mod-p ring."""
    ring = load_ring("BGt/p", p)
    assert ring.parse(f"xp^{p}*y") == ring.parse(f"x^{p - 1}*xp*y") == ring.parse(f"x^{p}*yp")


# ---- maps ---------------------------------------------------------------------------

@pytest.mark.parametrize("p", PRIMES)
def test_restriction_of_generators(p):
    G = load_ring("BGt", p)
    for t in range(p + 1):
        a, b = restrict(G.gen("a"), "BHt", t), restrict(G.gen("b"), "BHt", t)
        H = a.ring
        assert a == (H.gen("vp") if t < p else H.element())
        assert b == (H.gen("vp") * t if t < p else H.gen("vp"))


@pytest.mark.parametrize("p", PRIMES)
def test_restriction_is_multiplicative(p):
    G = load_ring("BGt/p", p)
    monos = basis_monomials(G)
    rng = random.Random(p)
    checked = 0
    for _ in range(200):
        a, b = (G.element({rng.choice(monos): 1}) for _ in range(2))
        ab = _product_or_none(a, b)
        if ab is None:
            continue
        t = rng.randrange(p + 1)
        try:
            lhs = restrict(ab, "BHt", t)
            rhs = restrict(a, "BHt", t) * restrict(b, "BHt", t)
        except RingError:
            continue
        assert lhs == rhs
        checked += 1
    assert checked > 50


@pytest.mark.parametrize("p", PRIMES)
def test_reduction_commutes_with_restriction(p):
    G = load_ring("BGt", p)
    for name in ("a", "b", "zeta"):
        for t in range(p + 1):
            x = G.gen(name)
            assert reduce_mod_p(restrict(x, "BHt", t)) == restrict(reduce_mod_p(x), "BHt", t)


@pytest.mark.parametrize("p", PRIMES)
def test_bocksteins(p):
    Gp, Hp = load_ring("BGt/p", p), load_ring("BHt/p", p)
    assert integral_bockstein(Gp.gen("y")) == load_ring("BGt", p).gen("a")
    assert mod_p_bockstein(Gp.gen("yp")) == Gp.gen("xp")
    assert mod_p_bockstein(Hp.parse("u*tb^2")) == Hp.parse("v*tb^2")
    for m in basis_monomials(Hp):
        x = Hp.element({m: 1})
        assert mod_p_bockstein(mod_p_bockstein(x)).is_zero()


@pytest.mark.parametrize("p", PRIMES)
def test_transfer_of_unit_is_the_index(p):
    H, S = load_ring("BHt", p), load_ring("BS1", p)
    assert transfer_apply(H.unit(), "BHt->BGt", 1) == load_ring("BGt", p).unit() * p
    assert transfer_apply(S.unit(), "BS1->BGt") == load_ring("BGt", p).unit() * (p * p)
    with pytest.raises(UnknownTransfer):
        transfer_apply(H.gen("vp"), "BHt->BGt", 1)


@pytest.mark.parametrize("p", PRIMES)
def test_projection_formula_on_all_tabled_pairs(p):
    records = projection_formula_instances(p)
    assert len(records) > 200
    assert [r for r in records if not r[-1]] == []


@pytest.mark.parametrize("p", PRIMES)
def test_gamma_transfers(p):
    for cov in ("tr1", "tr2", "tr"):
        assert gamma_transfer(p, cov)["ok"]
    assert gamma_composite_consistent(p)
