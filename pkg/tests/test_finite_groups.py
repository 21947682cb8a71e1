from __future__ import annotations

import itertools

import pytest
from hypothesis import given, strategies as st

from obstruction.exact_algebra.errors import NonPrimeModulus
from obstruction.finite_groups import (associativity_failures, build_extraspecial, class_sizes, collect,
                                       cyclic_subgroup, cyclic_subgroup_census, gl2_module,
                                       gl2_submodule_span, monomial, multiplication_mismatches,
                                       oliver_order, oliver_product, realization_mismatches,
                                       transfer_seed, unitriangular)

PRIMES = (3, 5, 7)


def matmul3(A, B, p):
    return tuple(tuple(sum(A[i][k] * B[k][j] for k in range(3)) % p for j in range(3)) for i in range(3))


def as_matrix(m):
    m12, m23, m13 = m
    return ((1, m12, m13), (0, 1, m23), (0, 0, 1))


@pytest.mark.parametrize("p", PRIMES)
def test_multiplication_formula(p):
    g = build_extraspecial(p)
    assert len(g.elements) == p ** 3
    assert multiplication_mismatches(g) == []
    assert realization_mismatches(g) == []
    samples = None if p == 3 else 2000
    assert associativity_failures(g, samples) == 0


@given(st.sampled_from(PRIMES), st.data())
def test_realization_against_explicit_matrices(p, data):
    g = build_extraspecial(p)
    x = data.draw(st.sampled_from(g.elements))
    y = data.draw(st.sampled_from(g.elements))
    lhs = as_matrix(unitriangular(g.mul(x, y), p))
    rhs = matmul3(as_matrix(unitriangular(x, p)), as_matrix(unitriangular(y, p)), p)
    assert lhs == rhs


@pytest.mark.parametrize("p", PRIMES)
def test_presentation(p):
    g = build_extraspecial(p)
    a, b, c = (1, 0, 0), (0, 1, 0), (0, 0, 1)
    assert g.commutator(a, b) == c
    assert g.center() == [(0, 0, k) for k in range(p)]
    assert all(g.power(x, p) == g.identity for x in g.elements)
    assert collect(list("abAB"), p) == (0, 0, 1)
    assert collect(list("ba"), p) == (1, 1, p - 1)
    with pytest.raises(ValueError):
        collect(["d"], p)


@pytest.mark.parametrize("p", PRIMES)
def test_class_equation(p):
    sizes = sorted(class_sizes(build_extraspecial(p)))
    assert sizes == [1] * p + [p] * (p * p - 1)


@pytest.mark.parametrize("p", PRIMES)
def test_cyclic_subgroup_census(p):
    g = build_extraspecial(p)
    census = cyclic_subgroup_census(g)
    assert len(census) == p + 3
    assert sorted(r.order for r in census) == [1] + [p] * (p + 2)
    # every subgroup of order p is counted once across its conjugacy class
    assert sum(r.class_size for r in census if r.order == p) == (p ** 3 - 1) // (p - 1)
    centre = set(g.center())
    for r in census:
        assert r.class_size * r.normalizer_order == p ** 3
        central = set(cyclic_subgroup(g, r.generators[0])) <= centre
        assert r.centralizer_order == (p ** 3 if central else p * p)


@pytest.mark.parametrize("p", PRIMES)
def test_oliver_order(p):
    g = build_extraspecial(p)
    census = cyclic_subgroup_census(g)
    total, factors = oliver_product(census, p ** 3)
    assert total == p ** 4
    assert oliver_order(p) == p * p
    centre = set(g.center())
    for rec, f in zip(census, factors):
        if not set(cyclic_subgroup(g, rec.generators[0])) <= centre:
            assert f == 1


def test_rejects_non_primes():
    for n in (2, 4, 9):
        with pytest.raises(NonPrimeModulus):
            build_extraspecial(n)


@pytest.mark.parametrize("p", PRIMES)
def test_gl2_module(p):
    m = gl2_module(p)
    assert len(m.group()) == (p * p - 1) * (p * p - p)
    assert m.homomorphism_failures() == 0


@pytest.mark.parametrize("p", PRIMES)
def test_gl2_spans(p):
    assert gl2_submodule_span(p, [transfer_seed(p)]) == p + 1
    # alpha^p and beta^p span a two-dimensional submodule (Frobenius twist)
    assert gl2_submodule_span(p, [monomial(p, 0), monomial(p, p)]) == 2
    assert gl2_submodule_span(p, [[0] * (p + 1)]) == 0
    assert gl2_submodule_span(p, [monomial(p, i) for i in range(p + 1)]) == p + 1


@pytest.mark.parametrize("p", (3, 5))
def test_gl2_span_by_brute_force(p):
    for seeds in ([transfer_seed(p)], [monomial(p, 0)], [monomial(p, 1)]):
        assert gl2_submodule_span(p, seeds, brute_force=True) == gl2_submodule_span(p, seeds)
