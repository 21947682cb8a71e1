from __future__ import annotations

import cmath
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st
from sympy import GF, Matrix
from sympy.matrices.normalforms import smith_normal_form as sympy_snf
from sympy.polys.matrices import DomainMatrix

from obstruction.exact_algebra import (
    AbGroup,
    CycScalar,
    Echelon,
    FpMatrix,
    IntMatrix,
    NonPrimeModulus,
    UnsupportedConductor,
    cokernel_p_local,
    cyclotomic_eval,
    embed,
    express_in_lattice,
    fp_rank,
    fp_rank_kernel,
    integer_kernel,
    is_prime,
    local_invariants,
    p_localize,
    smith_normal_form,
    smith_with_transforms,
    solve,
)

primes = st.sampled_from([2, 3, 5, 7])


def int_matrices(max_dim=5, bound=12):
    return st.integers(1, max_dim).flatmap(lambda r: st.integers(1, max_dim).flatmap(
        lambda c: st.lists(st.lists(st.integers(-bound, bound), min_size=c, max_size=c),
                           min_size=r, max_size=r)))


def oracle_rank_mod_p(rows, p):
    dm = DomainMatrix([[GF(p)(x) for x in row] for row in rows], (len(rows), len(rows[0])), GF(p))
    return dm.rank()


# ---- F_p linear algebra -----------------------------------------------------

@given(int_matrices(), primes)
def test_fp_rank_matches_sympy(rows, p):
    assert fp_rank(FpMatrix.from_dense(p, rows)) == oracle_rank_mod_p(rows, p)


@given(int_matrices(), primes)
def test_kernel_is_annihilated_and_has_complementary_dimension(rows, p):
    m = FpMatrix.from_dense(p, rows)
    rank, ker = fp_rank_kernel(m)
    assert rank + len(ker) == m.cols
    assert all(not any(m.apply(v)) for v in ker)
    assert fp_rank(FpMatrix.from_dense(p, ker, m.cols)) == len(ker) if ker else True


@given(int_matrices(), primes, st.data())
def test_solve_recovers_a_preimage(rows, p, data):
    m = FpMatrix.from_dense(p, rows)
    x = data.draw(st.lists(st.integers(0, p - 1), min_size=m.cols, max_size=m.cols))
    target = m.apply(x)
    cols = [[row[j] for row in rows] for j in range(m.cols)]
    y = solve(p, cols, target)
    assert y is not None and m.apply(y) == target


def test_solve_reports_inconsistency():
    assert solve(3, [[1, 0]], [0, 1]) is None


@given(st.lists(st.lists(st.integers(0, 4), min_size=4, max_size=4), max_size=8))
def test_echelon_length_is_rank(vectors):
    e = Echelon(5, 4)
    for v in vectors:
        e.add(v)
    expected = oracle_rank_mod_p(vectors, 5) if vectors else 0
    assert len(e) == expected


def test_nonprime_modulus_rejected():
    with pytest.raises(NonPrimeModulus):
        FpMatrix(4, 1, 1, {})
    assert is_prime(7) and not is_prime(9) and not is_prime(1)


# ---- Smith normal form --------------------------------------------------------

@given(int_matrices())
def test_smith_transforms_diagonalize(rows):
    m = IntMatrix.from_rows(rows)
    diag, U, V = smith_with_transforms(m)
    D = IntMatrix.from_rows(U) @ m @ IntMatrix.from_rows(V)
    lists = D.to_lists()
    for i in range(m.rows):
        for j in range(m.cols):
            assert lists[i][j] == (diag[i] if i == j and i < len(diag) else 0)
    nz = [d for d in diag if d]
    assert all(d > 0 for d in nz)
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert abs(Matrix(U).det()) == 1 and abs(Matrix(V).det()) == 1


@given(int_matrices())
def test_smith_invariants_match_sympy(rows):
    ours = [d for d in smith_normal_form(IntMatrix.from_rows(rows))[0] if d]
    snf = sympy_snf(Matrix(rows))
    theirs = [abs(snf[i, i]) for i in range(min(snf.shape)) if snf[i, i] != 0]
    assert sorted(ours) == sorted(theirs)


@given(int_matrices(), primes)
def test_local_route_agrees_with_integer_route(rows, p):
    m = IntMatrix.from_rows(rows)
    _, coker = smith_normal_form(m)
    assert cokernel_p_local(m, p) == p_localize(coker, p)
    assert local_invariants(m, p)[1] == Matrix(rows).rank()


@given(int_matrices())
def test_integer_kernel(rows):
    m = IntMatrix.from_rows(rows)
    ker = integer_kernel(m)
    assert len(ker) == m.cols - Matrix(rows).rank()
    assert all(not any(m.apply(v)) for v in ker)


def test_express_in_lattice():
    basis = [[2, 0], [1, 3]]
    assert express_in_lattice(basis, [5, 3]) == [2, 1]
    with pytest.raises(ValueError):
        express_in_lattice(basis, [1, 0])


def test_cokernel_example():
    # Z^2 / <(2, 0), (0, 6)> = Z/2 + Z/6
    assert smith_normal_form(IntMatrix.from_rows([[2, 0], [0, 6]]))[1] == AbGroup((2, 6))
    assert str(AbGroup((3, 0, 9))) == "Z/3 + Z/9 + Z"
    assert p_localize(AbGroup((6, 0)), 3) == AbGroup((3, 0))


# ---- cyclotomic fields ------------------------------------------------------

rationals = st.builds(Fraction, st.integers(-20, 20), st.integers(1, 5))
cyc9 = st.lists(rationals, min_size=6, max_size=6).map(lambda c: CycScalar(9, c))


@given(cyc9)
def test_conjugation_is_an_involution(x):
    assert x.conj().conj() == x


@given(cyc9, cyc9)
def test_conjugation_is_multiplicative(x, y):
    assert (x * y).conj() == x.conj() * y.conj()


@given(cyc9)
def test_inverse(x):
    if x.is_zero():
        with pytest.raises(ZeroDivisionError):
            x.inverse()
    else:
        assert x * x.inverse() == 1


@given(cyc9)
def test_complex_embedding_respects_conjugation(x):
    assert abs(x.conj().to_complex() - x.to_complex().conjugate()) < 1e-9


def test_roots_of_unity():
    z = CycScalar.zeta(9)
    assert z ** 9 == 1 and z ** 3 != 1
    w = CycScalar.zeta(3)
    assert w * w + w + 1 == 0
    assert embed(w, 9) == z ** 3
    assert cyclotomic_eval(3, {0: 1, 1: 1, 2: 1}).is_zero()
    assert abs(z.to_complex() - cmath.exp(2j * cmath.pi / 9)) < 1e-12
    with pytest.raises(UnsupportedConductor):
        CycScalar.zeta(5)
