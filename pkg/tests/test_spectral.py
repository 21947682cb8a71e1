from __future__ import annotations

import pytest

from obstruction.em_space import load_table
from obstruction.group_rings.tables import MissingTable
from obstruction.spectral import (NotComputed, Window, WindowError, build_e2, d_squared_zero,
                                  derive_fp_cohomology_of_k, filtration_report, homology_dual_run,
                                  homology_route, kernel_report, leibniz_violations, make_fibration,
                                  page_at, run)

# kernel generators of d on E^{0,2p-1} -> E^{2p,0} composed through the
# last page, recorded per fibration and prime
KERNELS = {
    ("G", 3): "3*z2*chi2", ("G", 5): "5*z2*chi4",
    ("H", 3): "3*z2*tp^2", ("H", 5): "5*z2*tp^4",
    ("S", 3): "z2*tau^2", ("S", 5): "z2*tau^4",
}


@pytest.mark.parametrize("fid,p", sorted(KERNELS))
def test_kernel_generator_and_surjectivity(fid, p):
    ts = range(p + 1) if fid == "H" else [None]
    for t in ts:
        rep = kernel_report(fid, p, t)
        assert rep["surjective"], (fid, p, t)
        assert rep["kernel"] == "Z"
        assert rep["kernel_generators"] == [KERNELS[(fid, p)]]


@pytest.mark.parametrize("fid,p,t", [("G", 3, None), ("G", 5, None), ("H", 3, 1), ("H", 5, 2),
                                     ("S", 3, None), ("S", 5, None), ("xp", 3, None), ("xp", 5, None)])
def test_pages_satisfy_dd_and_leibniz_and_agree_with_homology_route(fid, p, t):
    fib, pages = run(fid, p, t)
    assert d_squared_zero(pages) == []
    assert leibniz_violations(fib, pages) == []
    assert homology_route(pages, p) == []


@pytest.mark.parametrize("p", (3, 5))
def test_homology_run_e_infinity(p):
    rep = homology_dual_run("G", p)
    assert rep["E_inf"] == f"Z/{p}"
    assert rep["surjective"]


def test_filtration_in_degree_4p_minus_3():
    rep = filtration_report(3)
    assert rep["F^(2p-2)"] == "Z"
    assert rep["generator"] == ["3*z2*chi2"]
    assert rep["quotient_p_torsion"] == 0


@pytest.mark.parametrize("p,top", [(3, 10), (5, 18)])
def test_rederive_fp_cohomology_of_k(p, top):
    derived = derive_fp_cohomology_of_k(p, top)
    table = load_table("K", p, "Fp")
    for i in range(top + 1):
        assert derived[i]["dim"] == table.dim(i), i
        assert tuple(derived[i]["names"]) == table.names(i), i


def test_e2_is_tensor_product():
    fib = make_fibration("S", 3)
    e2 = build_e2(fib)
    assert str(e2.group(0, 5)) == "Z + Z"
    assert str(e2.group(6, 5)) == "Z + Z"
    assert str(e2.group(1, 5)) == "0"


def test_windows_and_lookups():
    with pytest.raises(WindowError):
        Window(-1, 3)
    with pytest.raises(WindowError):
        Window(3, 3, n_min=4)
    fib = make_fibration("S", 3)
    with pytest.raises(MissingTable):
        build_e2(fib, Window(4, 40))
    with pytest.raises(MissingTable):
        build_e2(fib, coefficients="Fp")
    fib, pages = run("S", 3)
    with pytest.raises(NotComputed):
        page_at(pages, 1, (0, 0))
    with pytest.raises(NotComputed):
        page_at([], "inf", (0, 0))
    with pytest.raises(NotComputed):
        pages[-1].group(100, 0)
    with pytest.raises(ValueError):
        make_fibration("H", 3)
    with pytest.raises(ValueError):
        make_fibration("Q", 3)
