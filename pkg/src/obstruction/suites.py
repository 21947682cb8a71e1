"""Verification suites: each returns a list of Check records comparing an
expected value with the computed one."""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from fractions import Fraction


@dataclass
class Check:
    name: str
    anchor: str
    expected: str
    computed: str
    residual: str = ""

    @property
    def verdict(self) -> str:
        return "pass" if not self.residual and self.expected == self.computed else "fail"

    def as_dict(self) -> dict:
        d = asdict(self)
        return {"name": d["name"], "anchor": d["anchor"], "expected": d["expected"],
                "computed": d["computed"], "verdict": self.verdict, "residual": d["residual"]}


def _eq(name: str, anchor: str, expected, computed, residual: str = "") -> Check:
    exp, got = str(expected), str(computed)
    if exp != got and not residual:
        residual = f"{got} != {exp}"
    return Check(name, anchor, exp, got, residual)


def _flag(name: str, anchor: str, ok: bool, detail="") -> Check:
    """A boolean check; detail is serialized into the residual on failure."""
    if not ok and not detail:
        detail = "failed"
    res = "" if ok else (detail if isinstance(detail, str) else json.dumps(detail, sort_keys=True, default=str))
    return Check(name, anchor, "true", "true" if ok else "false", res)


# ---- characteristic classes -------------------------------------------------

def chern_suite(p: int, t: int | None = None) -> list:
    from .char_class import (chern_total, decompose_restriction, phi_blocks_closed_form,
                             pontrjagin_classes, psi_binomial_correction, psi_chern_closed_form,
                             wu_q1, wu_shortcut, xi_chern)
    from .group_rings import load_ring, reduce_mod_p

    out = []
    ts = range(p + 1) if t is None else [t]
    modp = load_ring("BHt/p", p)
    lead = modp.parse(f"1 + v^{p - 1}")
    vtop = modp.parse(f"v^{p - 1}")
    r = (p - 1) // 2
    for tt in ts:
        tag = f"t={tt}"
        psi = chern_total(decompose_restriction("Psi", p, tt)).total()
        closed = psi_chern_closed_form(p)
        out.append(_eq(f"ch(psi) mod p, {tag}", "chern/psi", reduce_mod_p(closed), reduce_mod_p(psi)))
        out.append(_eq(f"ch(psi) integral = closed form + binomial terms, {tag}", "chern/psi-integral",
                       closed + psi_binomial_correction(p), psi))
        blocks = chern_total(decompose_restriction("phi_blocks", p, tt)).total()
        out.append(_eq(f"ch(phi blocks), {tag}", "chern/phi-blocks", phi_blocks_closed_form(p, tt), blocks))
        c = chern_total(decompose_restriction("psi_hat", p, tt))
        x = xi_chern(p, tt)
        prod = c * x
        through = " + ".join(str(prod[k]) for k in range(2 * p) if not prod[k].is_zero())
        out.append(_eq(f"ch(xi) ch(psi_hat) = 1 through degree {4 * p - 2}, {tag}", "chern/stable-inverse",
                       "1", through))
        head = modp.element()
        for k in range(p):
            head = head + reduce_mod_p(x[k])
        out.append(_eq(f"ch(xi) mod p through degree {2 * p - 2}, {tag}", "chern/stable-inverse-lead",
                       lead, head))
        pont = pontrjagin_classes(x, r)
        want = [str(modp.element())] * (r - 1) + [str(vtop * ((-1) ** r * 2))]
        got = [str(reduce_mod_p(q)) for q in pont[1:]]
        out.append(_eq(f"p_1..p_r mod p, {tag}", "chern/pontrjagin", want, got))
        out.append(_eq(f"q_1 from the multiplicative sequence, {tag}", "chern/wu", vtop, wu_q1(pont, p)))
        out.append(_eq(f"q_1 from the p_r shortcut, {tag}", "chern/wu-shortcut", vtop, wu_shortcut(pont, p)))
    return out


# ---- Serre spectral sequences ----------------------------------------------

def serre_suite(p: int, t: int | None = None) -> list:
    from . import spectral

    t = 1 if t is None else t
    out = []
    expected = {"G": f"{p}*z2*chi{p - 1}", "H": f"{p}*z2*tp^{p - 1}", "S": f"z2*tau^{p - 1}"}
    for fid in ("G", "H", "S"):
        rep = spectral.kernel_report(fid, p, t if fid == "H" else None)
        out.append(_flag(f"{fid}: d_{2 * p} onto ({4 * p - 2},0) is surjective", f"serre/{fid}/surjective",
                         rep["surjective"], rep))
        out.append(_eq(f"{fid}: kernel of d_{2 * p} at ({2 * p - 2},{2 * p - 1})", f"serre/{fid}/kernel",
                       f"Z on {expected[fid]}", f"{rep['kernel']} on {', '.join(rep['kernel_generators'])}"))
        fib, pages = spectral.run(fid, p, t if fid == "H" else None)
        out.append(_eq(f"{fid}: d o d = 0 on every page", "serre/d-squared", [], spectral.d_squared_zero(pages)))
        out.append(_eq(f"{fid}: Leibniz rule on every page", "serre/leibniz", [],
                       spectral.leibniz_violations(fib, pages)))
    hom = spectral.homology_dual_run("G", p)
    out.append(_eq(f"homology E_inf at ({4 * p - 3},0)", "serre/homology", f"Z/{p}", hom["E_inf"]))
    return out


# ---- Eilenberg-MacLane tables --------------------------------------------------

def emspace_suite(p: int, max_degree: int | None = None) -> list:
    from . import em_space, spectral

    out = [_flag(label, "em/fact", ok, detail) for label, ok, detail in em_space.verify_facts(p)]
    top = 4 * p - 2 if max_degree is None else max_degree
    derived = spectral.derive_fp_cohomology_of_k(p, top)
    table = em_space.load_table("K", p, "Fp")
    for i in range(top + 1):
        want = f"dim {table.dim(i)}: {', '.join(table.names(i))}"
        got = f"dim {derived[i]['dim']}: {', '.join(derived[i]['names'])}"
        out.append(_eq(f"H^{i}(K;F_{p}) from the x p fibration", "em/rederive", want, got))
    return out


# ---- Steenrod algebra -------------------------------------------------------

def mdt_generator_degrees(p: int) -> list:
    """Filtration-0 generators of U * H^*(BD_t; F_p) below 4p-2."""
    return [0, 1] + list(range(3, 2 * p - 2, 2)) + [4 * p - 3]


def steenrod_suite(p: int, max_degree: int | None = None) -> list:
    from .steenrod import (augmentation, chain_map_commutes, chart_by_stem, exactness_report,
                           induced_on_ext, lift_chain_map, minimal_resolution, minimality_violations,
                           permanent_cycle_check, sphere_module, thom_module)
    from .steenrod.modules import cartan_violations
    from .steenrod.resolution import boundaries_compose_to_zero

    max_t = 4 * p + 2 if max_degree is None else max_degree
    max_s = 4
    out = []
    S = minimal_resolution(sphere_module(p), max_t, max_s)
    M = minimal_resolution(thom_module("Dt", p, 1), max_t, max_s)

    chart = {stem: col for stem, col in chart_by_stem(S).items() if stem <= 4 * p - 3}
    want = {0: {s: 1 for s in range(max_s + 1)}, 2 * p - 3: {1: 1}, 4 * p - 5: {2: 1}}
    out.append(_eq(f"sphere Ext chart through stem {4 * p - 3}", "steenrod/sphere-chart",
                   json.dumps(want, sort_keys=True), json.dumps(chart, sort_keys=True)))
    gens = sorted(d for d in M.slices[0].degrees if d <= 4 * p - 3)
    out.append(_eq("MD_t filtration-0 generator degrees", "steenrod/mdt-generators",
                   mdt_generator_degrees(p), gens))

    f = augmentation(M.module, S.module)
    maps = lift_chain_map(f, M, S)
    out.append(_eq("lifted chain map commutes with boundaries", "steenrod/chain-map", [],
                   chain_map_commutes(maps, M, S, f)))
    ind = induced_on_ext(maps, M, S, 2, 4 * p - 3)
    out.append(_flag(f"induced map on Ext at (2, {4 * p - 3}) is nonzero", "steenrod/nat-injective",
                     any(any(row) for row in ind), {"matrix": ind}))
    pc = permanent_cycle_check(M, 4 * p - 5, 2, literal_degree=4 * p - 5)
    out.append(_eq(f"no differential on the stem {4 * p - 5} class of MD_t", "steenrod/permanent-cycle",
                   "no possible differential", pc["verdict"]))
    if p == 3:
        X = minimal_resolution(thom_module("S1", 3, cap=12), 12, 3)
        mx = lift_chain_map(augmentation(X.module, S.module), X, S, 3)
        ind = induced_on_ext(mx, X, S, 2, 12)
        out.append(_flag("MS1 stem-10 class maps nontrivially to the sphere", "steenrod/ms1",
                         any(any(row) for row in ind), {"matrix": ind}))
    for label, res in (("sphere", S), ("MD_t", M)):
        bad = [x[:2] for x in exactness_report(res) if not x[-1]]
        out.append(_eq(f"{label} resolution exact", "steenrod/exactness", [], bad))
        out.append(_eq(f"{label} resolution minimal", "steenrod/minimality", [], minimality_violations(res)))
        out.append(_eq(f"{label} boundaries compose to zero", "steenrod/dd", [],
                       boundaries_compose_to_zero(res)))
    for group in ("S1", "Dt", "Ht"):
        mod = thom_module(group, p, 1)
        out.append(_eq(f"Adem relations act as zero on M{group}", "steenrod/adem", [], mod.adem_violations()))
        out.append(_eq(f"Cartan formula for P^1 on M{group}", "steenrod/cartan", [], cartan_violations(mod, group)))
    return out


# ---- finite groups ----------------------------------------------------------------

def oliver_suite(p: int) -> list:
    from .finite_groups import (build_extraspecial, cyclic_subgroup, cyclic_subgroup_census, multiplication_mismatches,
                                oliver_order, oliver_product, realization_mismatches)

    g = build_extraspecial(p)
    census = cyclic_subgroup_census(g)
    _, factors = oliver_product(census, p ** 3)
    centre = set(g.center())
    noncentral = [f for rec, f in zip(census, factors)
                  if rec.order > 1 and not set(cyclic_subgroup(g, rec.generators[0])) <= centre]
    return [
        _eq("multiplication formula matches word collection", "groups/multiplication", [],
            multiplication_mismatches(g)),
        _eq("multiplication matches the unitriangular realization", "groups/realization", [],
            realization_mismatches(g)),
        _eq("no cyclic subgroup of order p^2", "groups/exponent", [1, p],
            sorted({rec.order for rec in census})),
        _eq("conjugacy classes of cyclic subgroups", "groups/census", p + 3, len(census)),
        _eq("non-central classes contribute factor 1", "groups/noncentral", ["1"] * (p + 1),
            [str(f) for f in noncentral]),
        _eq("|D(ZG)| from the census", "groups/oliver", p * p, oliver_order(p)),
    ]


def gl2_suite(p: int) -> list:
    from .finite_groups import gl2_module, gl2_submodule_span, transfer_seed

    m = gl2_module(p)
    out = [
        _eq("generated group is GL_2(p)", "gl2/order", (p * p - 1) * (p * p - p), len(m.group())),
        _eq("action is a homomorphism", "gl2/homomorphism", 0, m.homomorphism_failures()),
        _eq("span of beta^p - beta alpha^(p-1)", "gl2/span", p + 1, gl2_submodule_span(p, [transfer_seed(p)])),
    ]
    if p <= 5:
        out.append(_eq("span by closing under every group element", "gl2/span-brute", p + 1,
                       gl2_submodule_span(p, [transfer_seed(p)], brute_force=True)))
    return out


# ---- the p = 3 construction -------------------------------------------------

def construct3_suite(eps: Fraction = Fraction(1, 8), points: int = 100) -> list:
    from .construction3 import full_report

    r = full_report(eps, points)
    out = [
        _flag("representation relations", "construct/relations", r["relations"]["ok"],
              r["relations"]["first_failure"] or ""),
        _flag("P conjugation", "construct/p-conjugation", r["p_conjugation"]["ok"],
              r["p_conjugation"]["first_failure"] or ""),
    ]
    for name, v in r["su3"].items():
        out.append(_flag(f"{name} in SU(3), block-normalized", "construct/su3", v["ok"],
                         {"gram": v["gram_residual"], "det": v["det_residual"]}))
    for name, v in r["equivariance"].items():
        res = [s["residual"] for s in v["sheets"] if s["residual"]]
        out.append(_flag(f"equivariance {name}", "construct/equivariance", v["ok"], res))
    out.append(_eq("freeness trichotomy over the 9 word classes", "construct/freeness", [],
                   r["freeness"]["violations"]))
    d = r["disjointness"]
    out.append(_eq(f"tubes disjoint at eps={r['eps']}", "construct/disjointness", "disjoint", d["verdict"],
                   "" if d["disjoint"] else json.dumps(d["residual"], default=str)))
    worst = r["numeric"]["worst"]
    out.append(_flag(f"numeric cross-check at {r['numeric']['points']} points within 1e-10",
                     "construct/numeric", r["numeric"]["ok"], {k: f"{v:.3e}" for k, v in worst.items()}))
    return out


SUITES = ("chern", "serre", "emspace", "steenrod", "oliver", "gl2", "construct3")
