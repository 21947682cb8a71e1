"""Curated ring tables: builders, plain-text serialization and loading.

File layout (one entry per line, ``#`` starts a comment line)::

    ring BGt(3) coeff=Z p=3 cap=12 version=1
    gens a:2 b:2 chi1:2 chi2:4 zeta:6
    basis 4 | a^2:3 a*b:3 b^2:3 chi2:0
    rewrite a*b^3 -> a^3*b
    10 | (a^3 - a^2*b + b^3) * chi2 -> a^5 + a^4*b + b^5
    5 | yp * c2 -> -xp^2*yp

A basis entry ``mono:order`` records the additive order of the monomial
(0 for infinite cyclic).  A parenthesised left factor marks an entry whose
left side is a whole element rather than a monomial.

The maps file ``maps_p<p>.txt`` carries reduction, Bockstein, restriction
and transfer images, one per line::

    reduce BGt(3) -> BGt(3;F3) | a -> x
    restrict BGt(3) -> BHt(3) t=1 | b -> vp
"""
from __future__ import annotations

import os
from functools import lru_cache
from pathlib import Path

from .ring import ParseError, TruncatedRing, format_terms, parse_terms

FORMAT_VERSION = 1
DATA_ENV = "OBSTRUCTION_DATA_DIR"
PRIMES = (3, 5, 7)


class MissingTable(FileNotFoundError):
    pass


def data_dir() -> Path:
    env = os.environ.get(DATA_ENV)
    if env:
        return Path(env)
    return Path(__file__).parent / "data"


def ring_ids(p: int) -> dict:
    return {
        "BS1": f"BS1({p})",
        "BS1/p": f"BS1({p};F{p})",
        "BHt": f"BHt({p})",
        "BHt/p": f"BHt({p};F{p})",
        "BGt": f"BGt({p})",
        "BGt/p": f"BGt({p};F{p})",
        "BDt": f"BDt({p})",
        "BDt/p": f"BDt({p};F{p})",
    }


def file_name(kind: str, p: int) -> str:
    return f"{kind.replace('/p', '_modp')}_p{p}.txt"


# ---- builders --------------------------------------------------------------

def _monos(ring_gens, spec: dict) -> tuple:
    names = [g for g, _ in ring_gens]
    m = [0] * len(names)
    for k, v in spec.items():
        m[names.index(k)] += v
    return tuple(m)


def _polynomial_basis(gens, cap: int, order_fn) -> dict:
    """All monomials of a graded-commutative free algebra up to cap."""
    basis: dict = {}

    def rec(i, mono, deg):
        if i == len(gens):
            basis.setdefault(deg, []).append((tuple(mono), order_fn(mono)))
            return
        d = gens[i][1]
        top = 1 if d % 2 else (cap - deg) // d
        for e in range(top + 1):
            if deg + e * d > cap:
                break
            mono.append(e)
            rec(i + 1, mono, deg + e * d)
            mono.pop()

    rec(0, [], 0)
    for deg in basis:
        basis[deg].sort(key=lambda mo: tuple(-e for e in mo[0]))
    return basis


def _ab_monos(n: int, p: int) -> list:
    """Normal-form monomials alpha^i beta^j with i + j = n."""
    if n <= p:
        return [(n - j, j) for j in range(n + 1)]
    return [(n - j, j) for j in range(p)] + [(0, n)]


def build_bgt(p: int) -> TruncatedRing:
    cap = 4 * p
    gens = [("a", 2), ("b", 2)] + [(f"chi{i}", 2 * i) for i in range(1, p)] + [("zeta", 2 * p)]
    chi = f"chi{p - 1}"

    def ab(i, j, **extra):
        return _monos(gens, {"a": i, "b": j, **extra})

    basis: dict = {0: [(ab(0, 0), 0)]}
    for n in range(1, 2 * p + 1):
        entries = [(ab(i, j), p) for i, j in _ab_monos(n, p)]
        if n <= p - 1:
            entries.append((ab(0, 0, **{f"chi{n}": 1}), 0))
        elif n == p:
            entries.append((ab(0, 0, zeta=1), 0))
        else:
            zi = gens.index(("zeta", 2 * p))
            for m, order in basis[2 * (n - p)]:
                zm = list(m)
                zm[zi] += 1
                entries.append((tuple(zm), order))
        basis[2 * n] = entries
    rewrites = [(ab(1, p), {ab(p, 1): 1})]
    ring = TruncatedRing(f"BGt({p})", p, "Z", cap, gens, basis, rewrites)
    theta2 = {ab(p, 0): 1, ab(p - 1, 1): -1, ab(0, p): 1}
    rhs = {ab(2 * p - 1, 0): 1, ab(2 * p - 2, 1): 1, ab(0, 2 * p - 1): 1}
    ring.composites.append((theta2, ab(0, 0, **{chi: 1}), rhs))
    ring.comments = [
        "integral cohomology of B(S^1 . G_p), curated",
        "alpha = a, beta = b; alpha^i beta^j with i >= 1, j >= p rewrites to alpha^(i+p-1) beta^(j-p+1)",
        "chi_i * alpha and chi_i * chi_j are deliberately absent",
    ]
    return ring


def build_bgt_modp(p: int) -> TruncatedRing:
    cap = 4 * p
    gens = ([("y", 1), ("yp", 1), ("x", 2), ("xp", 2)]
            + [(f"c{i}", 2 * i) for i in range(1, p)] + [("z", 2 * p)])

    def mono(**kw):
        return _monos(gens, kw)

    even: dict = {0: [mono()]}
    for n in range(1, 2 * p + 1):
        lst = [mono(x=i, xp=j) for i, j in _ab_monos(n, p)]
        if n <= p - 1:
            lst.append(mono(**{f"c{n}": 1}))
        elif n == p:
            lst.append(mono(z=1))
        elif n > p:
            zi = gens.index(("z", 2 * p))
            for m in even[n - p]:
                zm = list(m)
                zm[zi] += 1
                lst.append(tuple(zm))
        even[n] = lst
    basis: dict = {}
    for n, lst in even.items():
        basis[2 * n] = [(m, p) for m in lst]
    odd_lists: dict = {}
    for n in range(0, 2 * p):
        # x'^n y = x^(p-1) x'^(n-p+1) y once n >= p, so it leaves the basis
        odd = [mono(x=i, xp=j, y=1) for i, j in _ab_monos(n, p) if n < p or i > 0]
        odd.append(mono(xp=n, yp=1))
        if n >= p:
            zi = gens.index(("z", 2 * p))
            for m in odd_lists[n - p]:
                zm = list(m)
                zm[zi] += 1
                odd.append(tuple(zm))
        odd_lists[n] = odd
        basis[2 * n + 1] = [(m, p) for m in odd]
    rewrites = [
        (mono(x=1, yp=1), {mono(xp=1, y=1): 1}),
        (mono(x=1, xp=p), {mono(x=p, xp=1): 1}),
        (mono(xp=p, y=1), {mono(x=p - 1, xp=1, y=1): 1}),
    ]
    ring = TruncatedRing(f"BGt({p};F{p})", p, "Fp", cap, gens, basis, rewrites)
    ring.products[(mono(yp=1), mono(**{f"c{p - 1}": 1}))] = {mono(xp=p - 1, yp=1): -1}
    ring.comments = [
        "mod-p cohomology of B(S^1 . G_p), curated",
        "odd classes: x^i x'^j y, x'^n y' and their z multiples; x y' rewrites to x' y",
        "x'^p y rewrites to x^(p-1) x' y",
    ]
    return ring


def build_poly(kind: str, p: int) -> TruncatedRing:
    cap = 4 * p
    if kind == "BS1":
        gens = [("tau", 2)]
        order_fn = lambda m: 0
    elif kind == "BS1/p":
        gens = [("tb", 2)]
        order_fn = lambda m: p
    elif kind == "BHt":
        gens = [("tp", 2), ("vp", 2)]
        order_fn = lambda m: p if m[1] else 0
    elif kind == "BHt/p":
        gens = [("tb", 2), ("u", 1), ("v", 2)]
        order_fn = lambda m: p
    elif kind == "BDt":
        gens = [("vp", 2)]
        order_fn = lambda m: p if m[0] else 0
    elif kind == "BDt/p":
        gens = [("u", 1), ("v", 2)]
        order_fn = lambda m: p
    else:
        raise KeyError(kind)
    coeff = "Fp" if kind.endswith("/p") else "Z"
    ring = TruncatedRing(ring_ids(p)[kind], p, coeff, cap, gens, _polynomial_basis(gens, cap, order_fn))
    ring.comments = ["free graded-commutative ring, every monomial below the cap is a basis element"]
    return ring


def build_ring(kind: str, p: int) -> TruncatedRing:
    if kind == "BGt":
        return build_bgt(p)
    if kind == "BGt/p":
        return build_bgt_modp(p)
    return build_poly(kind, p)


KINDS = ("BS1", "BS1/p", "BHt", "BHt/p", "BGt", "BGt/p", "BDt", "BDt/p")


# ---- maps ------------------------------------------------------------------

def build_maps(p: int) -> list:
    """Generator-level map table as (kind, src, dst, t, lhs, rhs) string tuples."""
    ids = ring_ids(p)
    G, Gp, H, Hp = ids["BGt"], ids["BGt/p"], ids["BHt"], ids["BHt/p"]
    S, Sp, D, Dp = ids["BS1"], ids["BS1/p"], ids["BDt"], ids["BDt/p"]
    out = []

    def add(kind, src, dst, t, lhs, rhs):
        out.append((kind, src, dst, t, lhs, rhs))

    # integral -> mod p reduction
    for a, b in [("a", "x"), ("b", "xp"), ("zeta", "z")] + [(f"chi{i}", f"c{i}") for i in range(1, p)]:
        add("reduce", G, Gp, "", a, b)
    add("reduce", H, Hp, "", "tp", "tb")
    add("reduce", H, Hp, "", "vp", "v")
    add("reduce", S, Sp, "", "tau", "tb")
    add("reduce", D, Dp, "", "vp", "v")
    # Bockstein on odd generators
    add("bockstein", Gp, G, "", "y", "a")
    add("bockstein", Gp, G, "", "yp", "b")
    add("bockstein", Hp, H, "", "u", "vp")
    add("bockstein", Dp, D, "", "u", "vp")
    # restrictions
    theta1_h = f"tp^{p} - vp^{p - 1}*tp"
    for t in range(p + 1):
        a_img = "vp" if t < p else "0"
        b_img = (f"{t}*vp" if t > 1 else ("vp" if t == 1 else "0")) if t < p else "vp"
        add("restrict", G, H, str(t), "a", a_img)
        add("restrict", G, H, str(t), "b", b_img)
        add("restrict", G, H, str(t), "zeta", theta1_h)
        y_img = "u" if t < p else "0"
        yp_img = (f"{t}*u" if t > 1 else ("u" if t == 1 else "0")) if t < p else "u"
        x_img = "v" if t < p else "0"
        xp_img = (f"{t}*v" if t > 1 else ("v" if t == 1 else "0")) if t < p else "v"
        add("restrict", Gp, Hp, str(t), "y", y_img)
        add("restrict", Gp, Hp, str(t), "yp", yp_img)
        add("restrict", Gp, Hp, str(t), "x", x_img)
        add("restrict", Gp, Hp, str(t), "xp", xp_img)
        add("restrict", Gp, Hp, str(t), "z", f"tb^{p} - v^{p - 1}*tb")
    add("restrict", G, S, "", "a", "0")
    add("restrict", G, S, "", "b", "0")
    add("restrict", G, S, "", "zeta", f"tau^{p}")
    add("restrict", H, S, "", "tp", "tau")
    add("restrict", H, S, "", "vp", "0")
    # transfers (tabled monomial sources)
    add("transfer", H, G, "*", "1", str(p))
    add("transfer", S, H, "", "1", str(p))
    add("transfer", S, G, "", "1", str(p * p))
    add("transfer", H, G, "*", f"tp^{p - 1}", f"chi{p - 1} - a^{p - 1}")
    add("transfer", Hp, Gp, str(p), f"tb^{p - 1}", f"c{p - 1} + x^{p - 1}")
    yx = "x*xp*y" if p == 3 else f"x^{p - 2}*xp*y"
    add("transfer", Hp, Gp, str(p), f"tb^{p - 1}*u", f"-xp^{p - 1}*yp + {yx}")
    return out


# ---- serialization ---------------------------------------------------------

def dump_ring(ring: TruncatedRing) -> str:
    lines = [f"# {c}" for c in ring.comments]
    lines.append(f"ring {ring.rid} coeff={ring.coeff} p={ring.p} cap={ring.cap} version={FORMAT_VERSION}")
    lines.append("gens " + " ".join(f"{g}:{d}" for g, d in ring.gens))
    for deg in sorted(ring.basis):
        entries = " ".join(f"{ring.format_mono(m)}:{o}" for m, o in ring.basis[deg])
        lines.append(f"basis {deg} | {entries}")
    for lhs, rhs in ring.rewrites:
        lines.append(f"rewrite {ring.format_mono(lhs)} -> {format_terms(ring, rhs)}")
    for (m1, m2), res in ring.products.items():
        deg = ring.mono_degree(m1) + ring.mono_degree(m2)
        lines.append(f"{deg} | {ring.format_mono(m1)} * {ring.format_mono(m2)} -> {format_terms(ring, res)}")
    for lhs, m, res in ring.composites:
        deg = ring.mono_degree(next(iter(lhs))) + ring.mono_degree(m)
        lines.append(f"{deg} | ({format_terms(ring, lhs)}) * {ring.format_mono(m)} -> {format_terms(ring, res)}")
    return "\n".join(lines) + "\n"


def parse_ring(text: str) -> TruncatedRing:
    comments, header, gens = [], None, None
    basis: dict = {}
    body = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            comments.append(line[1:].strip())
        elif line.startswith("ring "):
            header = dict(kv.split("=") for kv in line.split()[2:])
            header["rid"] = line.split()[1]
        elif line.startswith("gens "):
            gens = [(g.split(":")[0], int(g.split(":")[1])) for g in line.split()[1:]]
        else:
            body.append(line)
    if header is None or gens is None:
        raise ParseError("missing ring header or generator line")
    if int(header["version"]) != FORMAT_VERSION:
        raise ParseError(f"unsupported table version {header['version']}")
    ring = TruncatedRing(header["rid"], int(header["p"]), header["coeff"], int(header["cap"]), gens)
    for line in body:
        if line.startswith("basis "):
            head, _, rest = line.partition("|")
            deg = int(head.split()[1])
            entries = []
            for tok in rest.split():
                m, _, o = tok.rpartition(":")
                entries.append((ring.parse_mono(m), int(o)))
            basis[deg] = entries
    ring.basis = basis
    ring.__post_init__()
    for line in body:
        if line.startswith("basis "):
            continue
        if line.startswith("rewrite "):
            lhs, _, rhs = line[len("rewrite "):].partition("->")
            ring.rewrites.append((ring.parse_mono(lhs), parse_terms(ring, rhs)))
            continue
        _, _, entry = line.partition("|")
        lhs, _, rhs = entry.partition("->")
        lhs = lhs.strip()
        res = parse_terms(ring, rhs)
        if lhs.startswith("("):
            close = lhs.index(")")
            left = parse_terms(ring, lhs[1:close])
            mono = ring.parse_mono(lhs[close + 1:].strip().lstrip("*"))
            ring.composites.append((left, mono, res))
        else:
            f1, _, f2 = lhs.partition(" * ")
            ring.products[(ring.parse_mono(f1), ring.parse_mono(f2))] = res
    ring.comments = comments
    return ring


def dump_maps(entries: list) -> str:
    lines = ["# generator images; monomials extend multiplicatively (restrict, reduce)",
             "# or through the even/odd factorization (bockstein); transfers are linear"]
    for kind, src, dst, t, lhs, rhs in entries:
        tpart = f" t={t}" if t else ""
        lines.append(f"{kind} {src} -> {dst}{tpart} | {lhs} -> {rhs}")
    return "\n".join(lines) + "\n"


def parse_maps(text: str) -> list:
    out = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        head, _, entry = line.partition("|")
        parts = head.split()
        kind, src, dst = parts[0], parts[1], parts[3]
        t = parts[4].split("=")[1] if len(parts) > 4 else ""
        lhs, _, rhs = entry.partition("->")
        out.append((kind, src, dst, t, lhs.strip(), rhs.strip()))
    return out


def write_tables(directory: Path, primes=PRIMES) -> list:
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for p in primes:
        for kind in KINDS:
            path = directory / file_name(kind, p)
            path.write_text(dump_ring(build_ring(kind, p)))
            written.append(path)
        path = directory / f"maps_p{p}.txt"
        path.write_text(dump_maps(build_maps(p)))
        written.append(path)
    return written


# ---- loading ---------------------------------------------------------------

def _read(name: str) -> str:
    path = data_dir() / name
    if not path.exists():
        raise MissingTable(str(path))
    return path.read_text()


@lru_cache(maxsize=None)
def _load_ring_cached(directory: str, kind: str, p: int) -> TruncatedRing:
    return parse_ring(_read(file_name(kind, p)))


def load_ring(kind: str, p: int) -> TruncatedRing:
    """Load a ring table; kind is one of BS1, BHt, BGt, BDt, optionally with '/p'."""
    if kind not in KINDS:
        raise KeyError(f"unknown ring kind {kind!r}")
    return _load_ring_cached(str(data_dir()), kind, p)


@lru_cache(maxsize=None)
def _load_maps_cached(directory: str, p: int) -> tuple:
    return tuple(parse_maps(_read(f"maps_p{p}.txt")))


def load_maps(p: int) -> tuple:
    return _load_maps_cached(str(data_dir()), p)


if __name__ == "__main__":
    for path in write_tables(Path(__file__).parent / "data"):
        print(path)
