"""Curated cohomology tables of K = K(Z+Z, 2p-1) and K_p = K(Z/p+Z/p, 2p-1)
in degrees 0..4p-1, with Bockstein-sequence consistency checks.

Generator names are ASCII words: ``i1`` (fundamental class of K_p),
``z1`` (integral class of K), ``zb1`` (its reduction), operation prefixes
``b`` (mod-p Bockstein), ``P1`` (first reduced power), ``d`` (integral
Bockstein) wrapped around a base, and ``*`` for cup products, e.g.
``bP1(zb1)``, ``i1*b(i2)``, ``d(P1(zb2))``.

Integral tables are p-local: prime-to-p torsion is not recorded and asking
for it raises PrimeToPUnknown.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

from .exact_algebra import AbGroup


class OutOfRange(ValueError):
    pass


class InconsistentTables(ValueError):
    pass


class PrimeToPUnknown(LookupError):
    pass


_OPS = re.compile(r"P1|b|d")


def name_degree(name: str, p: int) -> int:
    """Degree of a generator name, from the fundamental degree 2p-1 and the
    operation shifts (b, d: +1; P1: +2(p-1))."""
    total = 0
    for factor in name.split("*"):
        factor = factor.strip()
        if "(" in factor:
            ops, inner = factor.split("(", 1)
            inner = inner.rstrip(")")
            deg = name_degree(inner, p)
            for op in _OPS.findall(ops):
                deg += 2 * (p - 1) if op == "P1" else 1
            if "".join(_OPS.findall(ops)) != ops:
                raise ValueError(f"bad operation prefix in {name!r}")
        elif re.fullmatch(r"(i|z|zb)[12]", factor):
            deg = 2 * p - 1
        else:
            raise ValueError(f"unknown generator {factor!r}")
        total += deg
    return total


@dataclass
class EMTable:
    space: str  # "K" or "K_p"
    p: int
    coeff: str  # "Fp" or "Z(p)"
    groups: dict = field(default_factory=dict)  # degree -> AbGroup with names
    unknown_free: set = field(default_factory=set)  # degrees with unknown free rank
    top: int = 0

    def group(self, degree: int) -> AbGroup:
        if degree < 0 or degree > self.top:
            raise OutOfRange(f"degree {degree} outside 0..{self.top}")
        return self.groups.get(degree, AbGroup())

    def dim(self, degree: int) -> int:
        return len(self.group(degree).orders)

    def free_rank(self, degree: int) -> int | None:
        if degree in self.unknown_free:
            return None
        return self.group(degree).free_rank

    def p_torsion_rank(self, degree: int) -> int:
        return self.group(degree).p_rank(self.p)

    def prime_to_p_torsion(self, degree: int):
        if self.coeff == "Fp":
            return AbGroup()
        raise PrimeToPUnknown(f"prime-to-{self.p} torsion of H^{degree}({self.space};Z) is not determined")

    def names(self, degree: int) -> tuple:
        return self.group(degree).names


def _g(*pairs) -> AbGroup:
    return AbGroup(tuple(o for _, o in pairs), tuple(n for n, _ in pairs))


def k_table(space: str, p: int, coefficients: str) -> EMTable:
    """The curated table for K or K_p with F_p or p-local integral coefficients."""
    top = 4 * p - 1
    n = 2 * p - 1
    if space == "K_p" and coefficients == "Fp":
        groups = {
            0: _g(("1", p)),
            n: _g(("i1", p), ("i2", p)),
            n + 1: _g(("b(i1)", p), ("b(i2)", p)),
            4 * p - 3: _g(("P1(i1)", p), ("P1(i2)", p)),
            4 * p - 2: _g(("i1*i2", p), ("bP1(i1)", p), ("P1b(i1)", p), ("bP1(i2)", p), ("P1b(i2)", p)),
            4 * p - 1: _g(("i1*b(i2)", p), ("i2*b(i1)", p), ("bP1b(i1)", p), ("i1*b(i1)", p),
                          ("bP1b(i2)", p), ("i2*b(i2)", p)),
        }
        return EMTable(space, p, "Fp", groups, set(), top)
    if space == "K" and coefficients == "Fp":
        groups = {
            0: _g(("1", p)),
            n: _g(("zb1", p), ("zb2", p)),
            4 * p - 3: _g(("P1(zb1)", p), ("P1(zb2)", p)),
            4 * p - 2: _g(("zb1*zb2", p), ("bP1(zb1)", p), ("bP1(zb2)", p)),
        }
        # degree 4p-1 of K with F_p coefficients is outside what is tabled
        return EMTable(space, p, "Fp", groups, set(), 4 * p - 2)
    if space == "K" and coefficients in ("Z", "Z(p)"):
        groups = {
            0: _g(("1", 0)),
            n: _g(("z1", 0), ("z2", 0)),
            4 * p - 2: _g(("z1*z2", 0), ("d(P1(zb1))", p), ("d(P1(zb2))", p)),
        }
        return EMTable(space, p, "Z(p)", groups, {4 * p - 1}, top)
    raise ValueError(f"no table for {space} with {coefficients} coefficients")


def homology_table(p: int) -> EMTable:
    """The curated p-local integral homology of K in degrees 0..4p-3."""
    n = 2 * p - 1
    groups = {
        0: _g(("[1]", 0)),
        n: _g(("[z1]", 0), ("[z2]", 0)),
        4 * p - 3: _g(("[P1(zb1)]", p), ("[P1(zb2)]", p)),
    }
    return EMTable("K", p, "Z(p)", groups, set(), 4 * p - 3)


def dual_homology(coh: EMTable) -> EMTable:
    """Universal-coefficient dual: free(H_i) = free(H^i), tors(H_i) = tors(H^(i+1))."""
    p = coh.p
    top = coh.top - 1
    groups = {}
    for i in range(top + 1):
        free = coh.free_rank(i)
        tors = coh.p_torsion_rank(i + 1)
        if free is None:
            raise InconsistentTables(f"free rank of H^{i} unknown")
        orders = (p,) * tors + (0,) * free
        if orders:
            groups[i] = AbGroup(orders)
    return EMTable(coh.space, p, "Z(p)", groups, set(), top)


# ---- consistency -----------------------------------------------------------

@dataclass
class ConsistencyRow:
    degree: int
    dim_fp: int
    free: int
    tors: int
    tors_next: int | None
    ok: bool


def bockstein_consistency(fp: EMTable, z: EMTable) -> dict:
    """dim H^i(F_p) = free(H^i) + p-tors(H^i) + p-tors(H^(i+1)) for every i
    up to the F_p table's top.  The p-torsion of the integral group one
    above the top is solved from the count and reported."""
    if fp.p != z.p or fp.space != z.space:
        raise InconsistentTables("tables disagree on space or prime")
    rows = []
    for i in range(fp.top + 1):
        free = z.free_rank(i)
        tors = z.p_torsion_rank(i)
        if i + 1 <= z.top and i + 1 > fp.top:
            # solve for the torsion one degree up
            tors_next = fp.dim(i) - free - tors
            ok = tors_next >= 0
        else:
            tors_next = z.p_torsion_rank(i + 1)
            ok = fp.dim(i) == free + tors + tors_next
        rows.append(ConsistencyRow(i, fp.dim(i), free, tors, tors_next, ok))
        if not ok:
            raise InconsistentTables(f"Bockstein count fails in degree {i}")
    derived = {r.degree + 1: r.tors_next for r in rows}
    return {"rows": rows, "derived_p_torsion": derived, "ok": all(r.ok for r in rows)}


# ---- Steenrod closure of the F_p table -------------------------------------

def apply_operation(op: str, name: str, integral_bases=("zb1", "zb2")) -> list:
    """Apply b or P1 to a generator name.  Returns a list of (sign, name);
    an empty list means zero.  Uses b b = 0, b(reduction of an integral
    class) = 0, and the Leibniz/Cartan rule on products (higher Cartan
    terms land above the window and are dropped by the caller's degree test)."""
    if "*" in name:
        a, b_ = name.split("*", 1)
        out = []
        for s, x in apply_operation(op, a, integral_bases):
            out.append((s, f"{x}*{b_}"))
        sign = -1 if op == "b" and _odd(a) else 1
        for s, x in apply_operation(op, b_, integral_bases):
            out.append((sign * s, f"{a}*{x}"))
        return out
    if "(" in name:
        ops, inner = name.split("(", 1)
        inner = inner.rstrip(")")
    else:
        ops, inner = "", name
    if op == "b":
        if ops.startswith("b"):
            return []
        if not ops and inner in integral_bases:
            return []
    return [(1, f"{op}{ops}({inner})")]


def _odd(name: str) -> bool:
    # every degree here is 2p-1 plus shifts: parity from the count of b/d plus factors
    count = 0
    for factor in name.split("*"):
        count += 1 + len(re.findall(r"b|d", factor.split("(")[0] if "(" in factor else ""))
    return count % 2 == 1


def _canonical(name: str) -> str:
    return "*".join(sorted(name.split("*")))


def steenrod_closure(table: EMTable, integral_bases=("zb1", "zb2")) -> list:
    """Names produced by b or P1 from tabled generators that land inside the
    window but are missing from the table.  Empty means closed."""
    p = table.p
    listed = {_canonical(n) for d in table.groups for n in table.names(d)}
    missing = []
    for d in sorted(table.groups):
        for nm in table.names(d):
            if nm == "1":
                continue
            for op in ("b", "P1"):
                for _, img in apply_operation(op, nm, integral_bases):
                    if name_degree(img, p) <= table.top and _canonical(img) not in listed:
                        missing.append((nm, op, img))
    return missing


def names_consistent(table: EMTable) -> list:
    """Generators whose name-derived degree disagrees with the tabled degree."""
    bad = []
    for d, g in table.groups.items():
        for nm in g.names:
            if nm != "1" and name_degree(nm, table.p) != d:
                bad.append((nm, d))
    return bad


# ---- plain-text format -----------------------------------------------------

def dump_table(t: EMTable) -> str:
    lines = [f"table {t.space} coeff={t.coeff} p={t.p} top={t.top} version=1"]
    for d in sorted(t.groups):
        g = t.groups[d]
        lines.append(f"group {d} | " + " ".join(f"{n}:{o}" for n, o in zip(g.names, g.orders)))
    for d in sorted(t.unknown_free):
        lines.append(f"unknown-free {d}")
    return "\n".join(lines) + "\n"


def parse_table(text: str) -> EMTable:
    head, *rest = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    parts = head.split()
    kv = dict(x.split("=") for x in parts[2:])
    t = EMTable(parts[1], int(kv["p"]), kv["coeff"], {}, set(), int(kv["top"]))
    for ln in rest:
        if ln.startswith("group "):
            h, _, body = ln.partition("|")
            pairs = [tok.rsplit(":", 1) for tok in body.split()]
            t.groups[int(h.split()[1])] = AbGroup(tuple(int(o) for _, o in pairs), tuple(n for n, _ in pairs))
        elif ln.startswith("unknown-free "):
            t.unknown_free.add(int(ln.split()[1]))
    return t


def em_data_dir() -> Path:
    from .group_rings.tables import data_dir
    return data_dir()


TABLE_KINDS = (("K_p", "Fp"), ("K", "Fp"), ("K", "Z(p)"))


def table_file(space: str, coeff: str, p: int) -> str:
    return f"em_{space}_{coeff.replace('(p)', 'p')}_p{p}.txt"


@lru_cache(maxsize=None)
def _load(directory: str, space: str, coeff: str, p: int) -> EMTable:
    path = Path(directory) / table_file(space, coeff, p)
    if not path.exists():
        raise FileNotFoundError(str(path))
    return parse_table(path.read_text())


def load_table(space: str, p: int, coefficients: str) -> EMTable:
    coeff = "Z(p)" if coefficients in ("Z", "Z(p)") else "Fp"
    return _load(str(em_data_dir()), space, coeff, p)


def write_tables(directory: Path, primes=(3, 5, 7)) -> None:
    for p in primes:
        for space, coeff in TABLE_KINDS:
            (directory / table_file(space, coeff, p)).write_text(dump_table(k_table(space, p, coeff)))


# ---- the eleven facts ------------------------------------------------------

def verify_facts(p: int) -> list:
    """Check each fact about K against the tables; returns (label, ok, detail)."""
    fp = load_table("K", p, "Fp")
    z = load_table("K", p, "Z")
    n = 2 * p - 1
    cons = bockstein_consistency(fp, z)
    out = []

    def add(label, ok, detail):
        out.append((label, bool(ok), detail))

    add("H^0 = R", z.group(0) == AbGroup((0,)) and fp.dim(0) == 1, str(z.group(0)))
    add("H^i = 0 for 1 <= i <= 2p-2",
        all(z.group(i).is_trivial() and fp.dim(i) == 0 for i in range(1, n)), "")
    add("H^(2p-1)(K;Z) = Z+Z on z1, z2",
        z.group(n) == AbGroup((0, 0)) and set(z.names(n)) == {"z1", "z2"}, str(z.group(n)))
    add("H^(2p-1)(K;F_p) = <zb1, zb2>",
        fp.dim(n) == 2 and set(fp.names(n)) == {"zb1", "zb2"}, "")
    add("H^i(K;Z) torsion for 2p <= i <= 4p-3",
        all(z.free_rank(i) == 0 for i in range(2 * p, 4 * p - 2)), "")
    add("p-local H^i = 0 for 2p <= i <= 4p-4",
        all(z.group(i).is_trivial() and fp.dim(i) == 0 for i in range(2 * p, 4 * p - 3)), "")
    add("p-local H^(4p-3)(K;Z) = 0", z.group(4 * p - 3).is_trivial(), "")
    add("H^(4p-3)(K;F_p) = <P1 zb1, P1 zb2>",
        set(fp.names(4 * p - 3)) == {"P1(zb1)", "P1(zb2)"}, "")
    add("p-local H^(4p-2)(K;Z) = Z + Z/p + Z/p",
        z.group(4 * p - 2) == AbGroup((0, p, p)), str(z.group(4 * p - 2)))
    add("H^(4p-2)(K;F_p) has dimension 3",
        fp.dim(4 * p - 2) == 3 and set(fp.names(4 * p - 2)) == {"zb1*zb2", "bP1(zb1)", "bP1(zb2)"}, "")
    add("H^(4p-1)(K;Z) has no p-torsion", cons["derived_p_torsion"].get(4 * p - 1) == 0,
        f"solved p-torsion rank {cons['derived_p_torsion'].get(4 * p - 1)}")
    if not cons["ok"]:
        out.append(("Bockstein consistency", False, "count mismatch"))
    return out
