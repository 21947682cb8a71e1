"""Exact verdicts for the free action on S^5 x S^5: P-conjugation, SU(3)
membership of Z_1 and Z_2, equivariance of the gluing map, freeness and
disjointness of the two tubes.  Every verdict carries its residual."""
from __future__ import annotations

from fractions import Fraction

from ..exact_algebra import CycScalar
from .reps import REPS, build_Z, generator_matrix, p_matrix, rep_matrix, word_for
from .symbolic import N, Mat3, SymScalar, xi

A1 = ((0, 1), (0, 2))
A2 = ((2, 1), (1, 2))
A2_WITH_A2B2 = ((2, 1), (2, 2))


def _residual(m) -> list:
    """Nonzero entries of a residual matrix or scalar, as strings."""
    if isinstance(m, SymScalar):
        return [] if m.is_zero() else [repr(m)]
    return [f"[{i},{j}] {x!r}" for (i, j), x in sorted(m.nonzero_entries().items())]


def verify_relations() -> dict:
    """a^3 = b^3 = 1, z central, and a b a^-1 b^-1 acting as xi in phi and
    trivially in each psi_m."""
    one = Mat3.identity()
    out = {}
    for rep in REPS:
        comm = one * xi(1) if rep == "phi" else one
        checks = {
            "a^3 - 1": rep_matrix(rep, "aaa") - one,
            "b^3 - 1": rep_matrix(rep, "bbb") - one,
            "[a,b] - c": rep_matrix(rep, "abAB") - comm,
            "az - za": rep_matrix(rep, "az") - rep_matrix(rep, "za"),
            "bz - zb": rep_matrix(rep, "bz") - rep_matrix(rep, "zb"),
        }
        for name, r in checks.items():
            out[f"{rep}: {name}"] = _residual(r)
    failing = next((f"{name}: {res[0]}" for name, res in out.items() if res), None)
    return {"residuals": out, "first_failure": failing, "ok": failing is None}


def verify_p_conjugation() -> dict:
    """P phi(a) P^-1 = phi(a), P phi(b) P^-1 = phi(a^2 b) and P P^dagger = I,
    all checked on M = sqrt(3) P so the residuals are exact."""
    M = p_matrix()
    Md = M.dagger()
    checks = {
        "P phi(a) P^-1 - phi(a)": M * rep_matrix("phi", "a") * Md - rep_matrix("phi", "a") * 3,
        "P phi(b) P^-1 - phi(a^2 b)": M * rep_matrix("phi", "b") * Md - rep_matrix("phi", "aab") * 3,
        "P P^dagger - I": M * Md - Mat3.identity() * 3,
    }
    out = {name: _residual(r) for name, r in checks.items()}
    failing = next((f"{name}: {res[0]}" for name, res in out.items() if res), None)
    return {"residuals": out, "first_failure": failing, "ok": failing is None}


def su3_check(m: int, transposed: bool | None = None) -> dict:
    Z = build_Z(m, transposed)
    gram = Z.gram_residual()
    det = Z.det_residual()
    return {
        "m": m,
        "gram_residual": _residual(gram),
        "det_residual": _residual(det),
        "normalization": "1/sqrt(eps(1-eps)) on the 2x2 block only; on the whole matrix det = (eps(1-eps))^(-1/2)",
        "ok": gram.is_zero() and det.is_zero(),
    }


def _base_point_change(g: str, m: int, k: int):
    """For x = P^(m-1) phi(a^k) (z1, z2, z3), write phi(g) x as
    P^(m-1) phi(a^k') D (z1, z2, z3) with D diagonal; returns (k', D)."""
    M = p_matrix() if m == 2 else Mat3.identity()
    Minv = M.dagger() if m == 2 else Mat3.identity()
    s = 3 if m == 2 else 1
    lhs = generator_matrix("phi", g) * M * rep_matrix("phi", "a" * k)
    for k2 in range(3):
        D = rep_matrix("phi", "A" * k2) * Minv * lhs
        if D.is_diagonal():
            return k2, Mat3.diag([D[i, i] * Fraction(1, s) for i in range(3)])
    raise ArithmeticError(f"no diagonal base-point change for g={g}, m={m}, k={k}")


def _substitution(D: Mat3) -> dict:
    out = {}
    for i, (v, vb) in enumerate((("z1", "zb1"), ("z2", "zb2"), ("z3", "zb3"))):
        d = D[i, i]
        out[v] = d * SymScalar.var(v)
        out[vb] = d.conj() * SymScalar.var(vb)
    return out


def verify_alpha_equivariance(g: str, m: int, transposed: bool | None = None) -> dict:
    """Residual Z_m(z') psi_0(g) - psi_m(g) Z_m(z) for each sheet k, where z'
    is the base-point change induced by g.  The psi matrices are diagonal,
    so comparing unnormalized Z_m is exact (the block scale never mixes
    with the unit entry)."""
    Z = build_Z(m, transposed).mat
    psi0 = generator_matrix("psi0", g)
    psim = generator_matrix(f"psi{m}", g)
    if not (psi0.is_diagonal() and psim.is_diagonal()):
        raise ArithmeticError("block comparison needs diagonal psi matrices")
    rows = []
    for k in range(3):
        k2, D = _base_point_change(g, m, k)
        lhs = Z.subs(_substitution(D)) * psi0
        res = lhs - psim * Z
        rows.append({"k": k, "k_new": k2, "D": [repr(D[i, i]) for i in range(3)],
                     "residual": _residual(res)})
    return {"g": g, "m": m, "transposed": (m == 1) if transposed is None else transposed,
            "sheets": rows, "ok": all(not r["residual"] for r in rows)}


# ---- freeness -------------------------------------------------------------------

def _mu9(k: int) -> CycScalar:
    return CycScalar.zeta(N, k)


def _eigen_projectors(M: Mat3):
    """For M with M^3 = c I and three distinct eigenvalues: (lambda, Pi) with
    Pi = (M^2 + lambda M + lambda^2 I) / (3 lambda^2)."""
    cube = M * M * M
    c = cube[0, 0]
    if not (cube - Mat3.identity() * c).is_zero():
        raise ArithmeticError("cube is not scalar")
    cc = c.terms.get((0,) * 9)
    lams = [_mu9(r) for r in range(9) if (_mu9(r) ** 3) == cc]
    out = []
    M2 = M * M
    for lam in lams:
        Pi = (M2 + M * lam + Mat3.identity() * (lam * lam)) * SymScalar.const((lam * lam * 3).inverse())
        out.append((lam, Pi))
    return out


def _rational(s: SymScalar) -> Fraction:
    if not s.terms:
        return Fraction(0)
    if set(s.terms) != {(0,) * 9} or not s.terms[(0,) * 9].is_rational():
        raise ArithmeticError(f"expected a rational, got {s!r}")
    return s.terms[(0,) * 9].coeffs[0]


def _has_eigenvalue_one(D: Mat3) -> bool:
    return any(D[i, i] == 1 for i in range(3))


def fixed_line_profile(i: int, j: int) -> list:
    """For each eigenvalue lambda of phi(a^i b^j): the circle element
    z = lambda^-1 making a^i b^j z fix the line, and |v_q|^2 of a unit vector
    on that line in plain and P^-1 coordinates."""
    M = rep_matrix("phi", word_for(i, j))
    P = p_matrix()
    out = []
    total = Mat3([[0] * 3] * 3)
    for lam, Pi in _eigen_projectors(M):
        total = total + Pi
        if not (Pi * Pi - Pi).is_zero():
            raise ArithmeticError("projector is not idempotent")
        plain = [_rational(Pi[q, q]) for q in range(3)]
        rot = P.dagger() * Pi * P
        twisted = [_rational(rot[q, q]) / 3 for q in range(3)]
        if sum(plain) != 1:
            raise ArithmeticError("projector does not have rank one")
        out.append({"lambda": lam, "plain": plain, "p_coords": twisted})
    if not (total - Mat3.identity()).is_zero():
        raise ArithmeticError("projectors do not sum to the identity")
    return out


def _inside(weights: list, eps: Fraction) -> str:
    top = max(weights)
    if top > 1 - eps:
        return "interior"
    if top == 1 - eps:
        return "boundary"
    return "outside"


def verify_freeness(eps: Fraction = Fraction(1, 8), a2=A2) -> dict:
    """Trichotomy over the nine classes a^i b^j (times any circle element)."""
    eps = Fraction(eps)
    classes = []
    problems = []
    for i in range(3):
        for j in range(3):
            w = word_for(i, j)
            psi_fix = {r: _has_eigenvalue_one(rep_matrix(r, w)) for r in ("psi0", "psi1", "psi2")}
            rec = {"class": (i, j), "word": w or "1", "psi_has_eigenvalue_1": psi_fix}
            if (i, j) == (0, 0):
                rec["phi_lines"] = "phi(z) = z I: a fixed vector only for z = 1"
                classes.append(rec)
                continue
            lines = fixed_line_profile(i, j)
            rec["phi_lines"] = [{"plain": [str(x) for x in ln["plain"]],
                                 "p_coords": [str(x) for x in ln["p_coords"]],
                                 "U1": _inside(ln["plain"], eps), "U2": _inside(ln["p_coords"], eps)}
                                for ln in lines]
            in_a1, in_a2 = (i, j) in A1, (i, j) in a2
            # (a) non-free on X0 only inside A1 u A2
            if psi_fix["psi0"] and not (in_a1 or in_a2):
                problems.append(f"{w}: fixed points on X0 outside A1 u A2")
            if (in_a1 or in_a2) and not psi_fix["psi0"]:
                problems.append(f"{w}: listed in A but acts freely on X0")
            # (b) fixed lines of A_m strictly inside U_m
            for ln in rec["phi_lines"]:
                if in_a1 and ln["U1"] != "interior":
                    problems.append(f"{w}: fixed line not inside U1")
                if in_a2 and ln["U2"] != "interior":
                    problems.append(f"{w}: fixed line not inside U2")
            # (c) A_m free on X_m; others free on U_m
            for mm, inside_key, members in ((1, "U1", A1), (2, "U2", a2)):
                meets = any(ln[inside_key] != "outside" for ln in rec["phi_lines"])
                if (i, j) in members:
                    if psi_fix[f"psi{mm}"]:
                        problems.append(f"{w}: psi{mm} has eigenvalue 1")
                elif meets and psi_fix[f"psi{mm}"]:
                    problems.append(f"{w}: fixed points in U{mm} and psi{mm} not free")
            classes.append(rec)
    return {"eps": str(eps), "A1": [word_for(*c) for c in A1], "A2": [word_for(*c) for c in a2],
            "classes": classes, "violations": problems, "ok": not problems}


# ---- disjointness ----------------------------------------------------------------

def overlap_weights() -> list:
    """|<e_k, P e_l>|^2 for all k, l (all equal to 1/3)."""
    P = p_matrix()
    return [[_rational(P[k, l] * P[k, l].conj()) / 3 for l in range(3)] for k in range(3)]


def verify_disjointness(eps) -> dict:
    """U_1 and U_2 are the sets of unit vectors within Fubini-Study angle
    arccos sqrt(1-eps) of a coordinate axis e_k, resp. of a line P e_l.
    Every pair e_k, P e_l has |<e_k, P e_l>|^2 = 1/3, so by the triangle
    inequality a common point needs 1 - 2 eps <= 1/sqrt(3); the midpoint of
    e_k and P e_l shows this is sharp.  Hence disjoint iff
    (1 - 2 eps)^2 > 1/3 with 1 - 2 eps > 0.

    The three-line chain |z_q|^2 >= 1 - 3 eps, contradiction iff eps < 2/7,
    is reported alongside; its first step fails at z' = e_1."""
    eps = Fraction(eps)
    w = overlap_weights()
    c = w[0][0]
    uniform = all(x == c for row in w for x in row)
    s = 1 - 2 * eps
    sharp = s > 0 and s * s > c
    chain_bound = 1 - 3 * eps
    chain = 2 * chain_bound > eps
    # the chain's first step at z' = e_1: |z_q|^2 = 1/3 against the claimed bound 1
    step_lhs, step_rhs = c, Fraction(1)
    return {
        "eps": str(eps),
        "hypothesis_eps_below_quarter": Fraction(0) < eps < Fraction(1, 4),
        "overlap": str(c),
        "overlap_uniform": uniform,
        "threshold": "(1 - 1/sqrt(3))/2",
        "disjoint": sharp,
        "verdict": "disjoint" if sharp else "intersect",
        "chain": {"lower_bound": str(chain_bound), "pair_bound": str(2 * chain_bound),
                  "verdict": "disjoint" if chain else "criterion inconclusive",
                  "first_step_at_e1": {"min_abs_sq": str(step_lhs), "claimed": str(step_rhs),
                                       "holds": step_lhs >= step_rhs}},
        "residual": [] if sharp else [f"(1-2eps)^2 = {s * s} <= {c}"],
    }
