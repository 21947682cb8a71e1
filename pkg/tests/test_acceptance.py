"""One test per acceptance criterion; each records a PASS/FAIL line that is
printed in the terminal summary and also echoed to stdout."""
from __future__ import annotations

import json
import random
import time
from fractions import Fraction

import numpy as np
import pytest

from conftest import ACCEPTANCE
from obstruction import em_space, spectral
from obstruction.char_class import (chern_total, decompose_restriction, phi_blocks_closed_form,
                                    pontrjagin_classes, psi_chern_closed_form, wu_q1, xi_chern)
from obstruction.construction3 import full_report
from obstruction.exact_algebra import IntMatrix, cokernel_p_local, p_localize, smith_normal_form
from obstruction.exact_algebra import smith_with_transforms
from obstruction.finite_groups import (build_extraspecial, cyclic_subgroup, cyclic_subgroup_census,
                                       gl2_submodule_span, oliver_order, oliver_product, transfer_seed)
from obstruction.group_rings import load_ring, reduce_mod_p
from obstruction.group_rings.maps import projection_formula_instances
from obstruction.steenrod import (adem_reduce, augmentation, chart_by_stem, exactness_report,
                                  induced_on_ext, lift_chain_map, minimal_resolution,
                                  minimality_violations, permanent_cycle_check, sphere_module,
                                  thom_module)
from obstruction.steenrod.resolution import boundaries_compose_to_zero
from obstruction.suites import mdt_generator_degrees


def record(n, ok: bool, detail: str = "") -> None:
    ACCEPTANCE[str(n)] = (ok, detail)
    print(f"criterion {n}: {'PASS' if ok else 'FAIL'}" + (f"  {detail}" if detail else ""))
    assert ok, detail


# Criteria 1-3 state identities in integral cohomology.  Integrally the
# product (1 + tp)^p keeps the terms C(p, j) tp^j, which are not zero since
# tp has infinite order, so the literal statements fail; the tests below are
# strict xfails that still print FAIL.  The same identities hold exactly in
# mod-p cohomology, which the "mod p" companions check.
INTEGRAL = pytest.mark.xfail(strict=True, reason="integral identity drops the binomial terms C(p, j) tp^j")


def _criterion_1(integral: bool):
    bad = []
    start = time.perf_counter()
    for p in (3, 5, 7):
        for t in range(p + 1):
            psi = chern_total(decompose_restriction("Psi", p, t)).total()
            want = psi_chern_closed_form(p)
            if (psi != want) if integral else (reduce_mod_p(psi) != reduce_mod_p(want)):
                bad.append(("psi", p, t))
            blocks = chern_total(decompose_restriction("phi_blocks", p, t)).total()
            if blocks != phi_blocks_closed_form(p, t):
                bad.append(("phi", p, t))
    return bad, time.perf_counter() - start


@INTEGRAL
def test_criterion_01_chern_classes_of_psi_and_phi_blocks():
    bad, elapsed = _criterion_1(integral=True)
    record(1, not bad and elapsed < 1.0, f"{elapsed:.2f}s integral mismatches={bad}")


def test_criterion_01_mod_p():
    bad, elapsed = _criterion_1(integral=False)
    record("1 mod p", not bad and elapsed < 1.0, f"{elapsed:.2f}s mismatches={bad}")


def _criterion_2(integral: bool):
    bad = []
    for p in (3, 5, 7):
        lead = load_ring("BHt" if integral else "BHt/p", p).parse(f"1 + vp^{p - 1}" if integral
                                                                  else f"1 + v^{p - 1}")
        for t in range(p + 1):
            x = xi_chern(p, t)
            prod = chern_total(decompose_restriction("psi_hat", p, t)) * x
            if str(prod[0]) != "1" or any(not prod[k].is_zero() for k in range(1, 2 * p)):
                bad.append(("product", p, t))
            head = lead.ring.element()
            for k in range(p):
                head = head + (x[k] if integral else reduce_mod_p(x[k]))
            if head != lead:
                bad.append(("lead", p, t))
    return bad


@INTEGRAL
def test_criterion_02_stable_inverse():
    bad = _criterion_2(integral=True)
    record(2, not bad, f"integral mismatches={bad[:4]}")


def test_criterion_02_mod_p():
    bad = _criterion_2(integral=False)
    record("2 mod p", not bad, f"mismatches={bad}")


def _criterion_3(integral: bool):
    bad = []
    for p in (3, 5, 7):
        r = (p - 1) // 2
        vtop = load_ring("BHt/p", p).parse(f"v^{p - 1}")
        target = load_ring("BHt", p).parse(f"vp^{p - 1}") * ((-1) ** r * 2)
        for t in range(p + 1):
            pont = pontrjagin_classes(xi_chern(p, t), r)
            low, top = pont[1:r], pont[r]
            if not integral:
                low, top, target_ = [reduce_mod_p(q) for q in low], reduce_mod_p(top), reduce_mod_p(target)
            else:
                target_ = target
            if any(not q.is_zero() for q in low) or top != target_:
                bad.append(("p", p, t))
            if wu_q1(pont, p) != vtop:
                bad.append(("q1", p, t))
    return bad


@INTEGRAL
def test_criterion_03_pontrjagin_and_wu():
    bad = _criterion_3(integral=True)
    record(3, not bad, f"integral mismatches={bad[:4]}")


def test_criterion_03_mod_p():
    bad = _criterion_3(integral=False)
    record("3 mod p", not bad, f"mismatches={bad}")


def test_criterion_04_serre_kernels():
    start = time.perf_counter()
    bad = []
    for p in (3, 5):
        want = {"G": f"{p}*z2*chi{p - 1}", "H": f"{p}*z2*tp^{p - 1}", "S": f"z2*tau^{p - 1}"}
        for fid in "GHS":
            ts = range(p + 1) if fid == "H" else [None]
            for t in ts:
                rep = spectral.kernel_report(fid, p, t)
                if not rep["surjective"] or rep["kernel"] != "Z" or rep["kernel_generators"] != [want[fid]]:
                    bad.append((fid, p, t, rep["kernel_generators"]))
    elapsed = time.perf_counter() - start
    record(4, not bad and elapsed < 30, f"{elapsed:.1f}s mismatches={bad}")


def test_criterion_05_homology_e_infinity():
    got = {p: spectral.homology_dual_run("G", p)["E_inf"] for p in (3, 5)}
    record(5, got == {3: "Z/3", 5: "Z/5"}, json.dumps(got))


def test_criterion_06_eilenberg_maclane_facts():
    bad = []
    for p in (3, 5, 7):
        facts = em_space.verify_facts(p)
        if len(facts) != 11:
            bad.append((p, "count", len(facts)))
        bad += [(p, label) for label, ok, _ in facts if not ok]
    derived = spectral.derive_fp_cohomology_of_k(3, 10)
    table = em_space.load_table("K", 3, "Fp")
    for i in range(11):
        if derived[i]["dim"] != table.dim(i) or tuple(derived[i]["names"]) != table.names(i):
            bad.append(("6b", i))
    record(6, not bad, f"failures={bad}")


def test_criterion_07_steenrod_charts():
    start = time.perf_counter()
    S = minimal_resolution(sphere_module(3), 14, 4)
    M = minimal_resolution(thom_module("Dt", 3, 1), 14, 4)
    chart = chart_by_stem(S)
    sphere_ok = (chart.get(0) == {s: 1 for s in range(5)} and chart.get(3) == {1: 1}
                 and chart.get(7) == {2: 1} and all(chart.get(k) is None for k in (1, 2, 4, 5, 6, 8, 9)))
    gens = sorted(d for d in M.slices[0].degrees if d <= 9)
    elapsed = time.perf_counter() - start
    ok = sphere_ok and gens == [0, 1, 3, 9] == mdt_generator_degrees(3) and elapsed < 60
    record(7, ok, f"{elapsed:.2f}s stems {sorted(chart)} MDt gens {gens}")


def test_criterion_08_natural_map_and_permanent_cycle():
    results = {}
    for p in (3, 5):
        S = minimal_resolution(sphere_module(p), 4 * p + 2, 4)
        M = minimal_resolution(thom_module("Dt", p, 1), 4 * p + 2, 4)
        maps = lift_chain_map(augmentation(M.module, S.module), M, S)
        nonzero = any(any(row) for row in induced_on_ext(maps, M, S, 2, 4 * p - 3))
        pc = permanent_cycle_check(M, 4 * p - 5, 2, literal_degree=4 * p - 5)
        results[p] = nonzero and pc["verdict"] == "no possible differential"
    S = minimal_resolution(sphere_module(3), 14, 4)
    X = minimal_resolution(thom_module("S1", 3, cap=12), 12, 3)
    mx = lift_chain_map(augmentation(X.module, S.module), X, S, 3)
    results["MS1"] = any(any(row) for row in induced_on_ext(mx, X, S, 2, 12))
    record(8, all(results.values()), json.dumps({str(k): v for k, v in results.items()}))


def test_criterion_09_oliver_order():
    got = {}
    ok = True
    for p in (3, 5, 7):
        got[p] = oliver_order(p)
        g = build_extraspecial(p)
        census = cyclic_subgroup_census(g)
        _, factors = oliver_product(census, p ** 3)
        centre = set(g.center())
        for rec, f in zip(census, factors):
            if not set(cyclic_subgroup(g, rec.generators[0])) <= centre and f != 1:
                ok = False
    record(9, ok and got == {3: 9, 5: 25, 7: 49}, json.dumps(got))


def test_criterion_10_gl2_span():
    got = {p: gl2_submodule_span(p, [transfer_seed(p)]) for p in (3, 5)}
    record(10, got == {3: 4, 5: 6}, json.dumps(got))


def test_criterion_11_construction():
    start = time.perf_counter()
    r = full_report(Fraction(1, 8), numeric_points=100)
    elapsed = time.perf_counter() - start
    worst = max(r["numeric"]["worst"].values())
    ok = r["ok"] and r["numeric"]["points"] == 100 and worst < 1e-10 and elapsed < 30
    record(11, ok, f"{elapsed:.1f}s worst numeric residual {worst:.1e}")


def _random_matrix(rng: random.Random) -> list:
    r, c = rng.randint(1, 5), rng.randint(1, 5)
    return [[rng.randint(-12, 12) for _ in range(c)] for _ in range(r)]


def test_criterion_12_property_suites():
    failures = []
    # Leibniz and d o d = 0 on every spectral sequence page
    for fid, p, t in (("G", 3, None), ("H", 3, 2), ("S", 5, None), ("xp", 3, None)):
        fib, pages = spectral.run(fid, p, t)
        if spectral.d_squared_zero(pages) or spectral.leibniz_violations(fib, pages):
            failures.append(("spectral", fid, p))
    # Adem reduction does not depend on rewrite order
    rng = random.Random(12)
    for _ in range(300):
        p = rng.choice((3, 5))
        w = tuple(rng.choice((0, 1, 2, 3, 4)) for _ in range(rng.randint(1, 4)))
        if adem_reduce(w, p, "left") != adem_reduce(w, p, "right"):
            failures.append(("adem", p, w))
    # resolutions are exact and minimal with d o d = 0
    for p in (3, 5):
        for mod in (sphere_module(p), thom_module("Dt", p, 1), thom_module("S1", p, 1)):
            res = minimal_resolution(mod, 4 * p + 2, 4)
            if (not all(row[-1] for row in exactness_report(res)) or minimality_violations(res)
                    or boundaries_compose_to_zero(res)):
                failures.append(("resolution", p, mod.name))
    # projection formula on every tabled transfer pair
    for p in (3, 5, 7):
        failures += [("projection", p, rec[:-1]) for rec in projection_formula_instances(p) if not rec[-1]]
    # Smith normal form: divisibility chain, unimodular transforms, local route
    for _ in range(200):
        rows = _random_matrix(rng)
        m = IntMatrix.from_rows(rows)
        diag, U, V = smith_with_transforms(m)
        D = (IntMatrix.from_rows(U) @ m @ IntMatrix.from_rows(V)).to_lists()
        nz = [d for d in diag if d]
        diagonal = all(D[i][j] == (diag[i] if i == j and i < len(diag) else 0)
                       for i in range(m.rows) for j in range(m.cols))
        unimodular = abs(round(np.linalg.det(np.array(U, dtype=float)))) == 1 == \
            abs(round(np.linalg.det(np.array(V, dtype=float))))
        chain = all(b % a == 0 for a, b in zip(nz, nz[1:]))
        p = rng.choice((2, 3, 5, 7))
        local = cokernel_p_local(m, p) == p_localize(smith_normal_form(m)[1], p)
        if not (diagonal and unimodular and chain and local):
            failures.append(("snf", rows))
    record(12, not failures, f"failures={failures[:5]}")
