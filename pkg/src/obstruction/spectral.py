"""First-quadrant Serre spectral sequences driven by transgressions.

Every entry E_2^{n,m} = H^n(base) (x) H^m(fiber) is spanned by labels
(base class, fiber class).  A page keeps, for each bidegree, two lattices in
E_2 coordinates: Z_r (classes surviving to page r) and B_r (classes already
hit, including the order relations of E_2).  d_r is given on E_2 labels by
the transgression of fiber generators and the Leibniz rule, so

    Z_(r+1) = {x in Z_r : d_r x in B_r(target)},
    B_(r+1) = B_r + d_r(Z_r(source)).

The group E_r = Z_r / B_r is read off by Smith normal form.  A second
route recomputes E_(r+1) as the homology of the presented groups E_r with
p-local elimination; the two must agree.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .em_space import EMTable, dual_homology, load_table, name_degree
from .exact_algebra import (AbGroup, IntMatrix, express_in_lattice, integer_kernel,
                            local_invariants, smith_with_transforms)
from .group_rings import GradedElement, TruncatedRing, UnknownProduct, load_ring, restrict
from .group_rings.tables import MissingTable


class NotComputed(LookupError):
    pass


class WindowError(ValueError):
    pass


@dataclass(frozen=True)
class Window:
    """The bidegree rectangle n_min..n_max by m_min..m_max."""

    n_max: int
    m_max: int
    n_min: int = 0
    m_min: int = 0

    def __post_init__(self):
        if not 0 <= self.n_min <= self.n_max or not 0 <= self.m_min <= self.m_max:
            raise WindowError("window must be a nonempty rectangle in the first quadrant")

    def contains(self, n: int, m: int) -> bool:
        return self.n_min <= n <= self.n_max and self.m_min <= m <= self.m_max


# ---- base and fiber adapters ------------------------------------------------

class RingBase:
    """Base cohomology from a curated truncated ring."""

    def __init__(self, ring: TruncatedRing):
        self.ring = ring
        self.top = ring.cap

    def basis(self, n: int) -> list:
        if n > self.top:
            raise MissingTable(f"{self.ring.rid} is tabled only through degree {self.top}")
        return [(self.ring.format_mono(m), self.ring.order_of(m)) for m in self.ring.ring_basis(n)]

    def parse(self, text) -> GradedElement:
        return text if isinstance(text, GradedElement) else self.ring.parse(text)

    def degree_of(self, label: str) -> int:
        return self.ring.mono_degree(self.ring.parse_mono(label))

    def times(self, label: str, elem: GradedElement) -> dict:
        x = self.ring.parse(label) * elem
        return {self.ring.format_mono(m): c for m, c in x.terms.items()}


_TABLE_TERM = re.compile(r"([+-])?\s*(?:(\d+)\*)?([^\s+-][^\s]*)")


class TableBase:
    """Base cohomology from an Eilenberg-MacLane table, products by name."""

    def __init__(self, table: EMTable):
        self.table = table
        self.top = table.top
        self.p = table.p
        self._canon = {}
        for d in table.groups:
            for nm in table.names(d):
                self._canon[_canonical(nm)] = nm

    def basis(self, n: int) -> list:
        if n > self.top:
            raise MissingTable(f"{self.table.space} table ends in degree {self.top}")
        g = self.table.group(n)
        return list(zip(g.names, g.orders))

    def degree_of(self, label: str) -> int:
        return 0 if label == "1" else name_degree(label, self.p)

    def parse(self, text) -> dict:
        if isinstance(text, dict):
            return text
        text = text.strip()
        if text == "0":
            return {}
        out = {}
        for sign, coef, name in _TABLE_TERM.findall(text):
            out[name] = out.get(name, 0) + (-1 if sign == "-" else 1) * int(coef or 1)
        return out

    def product(self, a: str, b: str) -> tuple:
        """(sign, listed name) for a*b, or None above the table's range."""
        if a == "1":
            return 1, b
        if b == "1":
            return 1, a
        deg = self.degree_of(a) + self.degree_of(b)
        if deg > self.top:
            return None
        raw = a.split("*") + b.split("*")
        listed = self._canon.get(_canonical(f"{a}*{b}"))
        if listed is None:
            raise UnknownProduct(f"{a} * {b} is not tabled for {self.table.space}")
        return _reorder_sign(raw, listed.split("*"), self.p), listed

    def times(self, label: str, elem: dict) -> dict:
        out: dict = {}
        for name, c in elem.items():
            res = self.product(label, name)
            if res is None:
                continue
            s, nm = res
            out[nm] = (out.get(nm, 0) + s * c) % self.p
        return {k: v for k, v in out.items() if v}


def _canonical(name: str) -> str:
    return "*".join(sorted(name.split("*")))


def _reorder_sign(raw: list, target: list, p: int) -> int:
    """Koszul sign of permuting the factor list raw into target."""
    raw = list(raw)
    sign = 1
    for i, want in enumerate(target):
        j = raw.index(want, i)
        while j > i:
            if name_degree(raw[j], p) % 2 and name_degree(raw[j - 1], p) % 2:
                sign = -sign
            raw[j], raw[j - 1] = raw[j - 1], raw[j]
            j -= 1
    return sign


class FiberTable:
    def __init__(self, table: EMTable):
        self.table = table
        self.top = table.top
        self.p = table.p

    def basis(self, m: int) -> list | None:
        if m > self.top:
            return None
        g = self.table.group(m)
        return list(zip(g.names, g.orders))

    def degree_of(self, label: str) -> int:
        return 0 if label == "1" else name_degree(label, self.p)


# ---- fibrations and transgression data ---------------------------------------

@dataclass
class TransgressionSpec:
    """Images of fiber generators under the transgression d_r, r = deg + 1."""

    fibration: str
    images: dict  # fiber generator -> (r, base element)

    def by_page(self) -> dict:
        out: dict = {}
        for f, (r, img) in self.images.items():
            out.setdefault(r, {})[f] = img
        return out

    def check_degrees(self, fiber: FiberTable, base) -> list:
        """Generators whose image degree is not source degree + 1."""
        bad = []
        for f, (r, img) in self.images.items():
            m = fiber.degree_of(f)
            if r != m + 1:
                bad.append((f, "page", r, m + 1))
            degs = img.degrees() if isinstance(img, GradedElement) else {base.degree_of(k) for k in img}
            if degs and degs != {m + 1}:
                bad.append((f, "degree", sorted(degs), m + 1))
        return bad


@dataclass
class Fibration:
    fid: str
    p: int
    base: object
    fiber: FiberTable
    coefficients: str  # "Z" or "Fp"
    spec: TransgressionSpec
    t: int | None = None
    default_window: Window | None = None


def k_invariant(p: int) -> tuple:
    """The two components of the k-invariant over BGt: zeta and theta_2."""
    ring = load_ring("BGt", p)
    theta2 = ring.parse(f"a^{p} - a^{p - 1}*b + b^{p}")
    return ring.gen("zeta"), theta2


def make_fibration(fid: str, p: int, t: int | None = None) -> Fibration:
    """"G" (K -> B_G -> BGt), "H" (over BHt, needs t), "S" (over BS1) and
    "xp" (the x p fibration K -> K -> K_p, mod p)."""
    if fid == "xp":
        base = TableBase(load_table("K_p", p, "Fp"))
        fiber = FiberTable(load_table("K", p, "Fp"))
        images = {}
        for j in (1, 2):
            images[f"zb{j}"] = (2 * p, {f"b(i{j})": 1})
            images[f"P1(zb{j})"] = (4 * p - 2, {f"P1b(i{j})": 1})
            images[f"bP1(zb{j})"] = (4 * p - 1, {f"bP1b(i{j})": 1})
        spec = TransgressionSpec("xp", images)
        return Fibration(fid, p, base, fiber, "Fp", spec, None, Window(4 * p - 1, 4 * p - 2))
    fiber = FiberTable(load_table("K", p, "Z"))
    zeta, theta2 = k_invariant(p)
    if fid == "G":
        base = RingBase(load_ring("BGt", p))
        th1, th2 = zeta, theta2
        # products chi_i * theta_2 are tabled only for i = p-1, so the window
        # starts at base degree 2p-2
        window = Window(4 * p - 2, 2 * p - 1, 2 * p - 2)
    elif fid == "H":
        if t is None or not 0 <= t <= p:
            raise ValueError("the H fibration needs t in 0..p")
        base = RingBase(load_ring("BHt", p))
        th1, th2 = restrict(zeta, "BHt", t), restrict(theta2, "BHt", t)
        window = Window(4 * p - 1, 2 * p - 1)
    elif fid == "S":
        base = RingBase(load_ring("BS1", p))
        th1, th2 = restrict(zeta, "BS1"), restrict(theta2, "BS1")
        window = Window(4 * p - 1, 4 * p - 2)
    else:
        raise ValueError(f"unknown fibration {fid!r}")
    images = {"z1": (2 * p, th1), "z2": (2 * p, th2)}
    if fid == "S":
        zero = base.ring.element()
        images["d(P1(zb1))"] = (4 * p - 1, zero)
        images["d(P1(zb2))"] = (4 * p - 1, zero)
    spec = TransgressionSpec(fid if t is None else f"{fid}{t}", images)
    return Fibration(fid, p, base, fiber, "Z", spec, t, window)


# ---- lattice helpers ------------------------------------------------------

def lattice_basis(vectors: list, dim: int) -> list:
    """A Z-basis of the span of integer vectors."""
    vectors = [v for v in vectors if any(v)]
    if not vectors:
        return []
    M = IntMatrix.from_columns(dim, vectors)
    diag, _, V = smith_with_transforms(M)
    rank = sum(1 for d in diag if d)
    MV = M @ IntMatrix.from_rows(V)
    return [[MV.data[i][j] for i in range(dim)] for j in range(rank)]


def _int_inverse(U: list) -> list:
    n = len(U)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(U)]
    for c in range(n):
        piv = next(r for r in range(c, n) if a[r][c])
        a[c], a[piv] = a[piv], a[c]
        f = a[c][c]
        a[c] = [x / f for x in a[c]]
        for r in range(n):
            if r != c and a[r][c]:
                g = a[r][c]
                a[r] = [x - g * y for x, y in zip(a[r], a[c])]
    out = [[a[i][n + j] for j in range(n)] for i in range(n)]
    if any(x.denominator != 1 for row in out for x in row):
        raise ArithmeticError("matrix is not unimodular")
    return [[int(x) for x in row] for row in out]


@dataclass
class Subquotient:
    """Z / B inside E_2 coordinates, with its Smith presentation."""

    labels: list
    orders: list
    Z: list
    B: list
    gens: list = field(default_factory=list)  # E_2 vectors
    gen_orders: list = field(default_factory=list)
    _U: list = field(default_factory=list)
    _keep: list = field(default_factory=list)

    def __post_init__(self):
        self._present()

    def _present(self):
        k = len(self.Z)
        if k == 0:
            self.gens, self.gen_orders, self._U, self._keep = [], [], [], []
            return
        rel = [express_in_lattice(self.Z, b) for b in self.B]
        if rel:
            diag, U, _ = smith_with_transforms(IntMatrix.from_columns(k, rel))
        else:
            diag, U = [], [[int(i == j) for j in range(k)] for i in range(k)]
        Uinv = _int_inverse(U)
        dim = len(self.labels)
        self.gens, self.gen_orders, self._keep = [], [], []
        for i in range(k):
            d = abs(diag[i]) if i < len(diag) else 0
            if d == 1:
                continue
            v = [sum(self.Z[j][r] * Uinv[j][i] for j in range(k)) for r in range(dim)]
            self.gens.append(self._tidy(v, d))
            self.gen_orders.append(d)
            self._keep.append(i)
        self._U = U

    def _tidy(self, v: list, order: int) -> list:
        out = []
        for x, o in zip(v, self.orders):
            if o:
                x %= o
                if x > o // 2:
                    x -= o
            out.append(x)
        if order == 0:
            lead = next((x for x in out if x), 0)
            if lead < 0:
                out = [-x for x in out]
        return out

    def coords(self, y: list) -> list:
        """Coordinates of an element of Z in the presented generators."""
        if not self.Z:
            if any(y):
                raise ValueError("element outside the cycle lattice")
            return []
        c = express_in_lattice(self.Z, y)
        u = [sum(self._U[i][j] * c[j] for j in range(len(c))) for i in range(len(c))]
        out = []
        for i, o in zip(self._keep, self.gen_orders):
            out.append(u[i] % o if o else u[i])
        return out

    def group(self) -> AbGroup:
        names = tuple(format_vector(self.labels, v) for v in self.gens)
        return AbGroup(tuple(self.gen_orders), names)

    def contains_cycle(self, y: list) -> bool:
        try:
            express_in_lattice(self.Z, y)
            return True
        except ValueError:
            return False


def format_label(label: tuple) -> str:
    b, f = label
    parts = [x for x in (f, b) if x != "1"]
    return "*".join(parts) if parts else "1"


def format_vector(labels: list, v: list) -> str:
    terms = []
    for lab, c in zip(labels, v):
        if not c:
            continue
        body = format_label(lab)
        mag = abs(c)
        s = body if mag == 1 else (f"{mag}" if body == "1" else f"{mag}*{body}")
        if not terms:
            terms.append(("-" if c < 0 else "") + s)
        else:
            terms.append(("- " if c < 0 else "+ ") + s)
    return " ".join(terms) if terms else "0"


# ---- pages ------------------------------------------------------------------

@dataclass
class SpectralPage:
    r: int
    fibration: str
    p: int
    coefficients: str
    window: Window
    entries: dict  # (n, m) -> Subquotient
    differentials: dict = field(default_factory=dict)  # (n, m) -> IntMatrix, d_r in E_2 coords
    undetermined: set = field(default_factory=set)
    final: bool = False

    def group(self, n: int, m: int) -> AbGroup:
        if (n, m) in self.entries:
            return self.entries[(n, m)].group()
        if self.window.contains(n, m):
            return AbGroup()
        raise NotComputed(f"({n}, {m}) lies outside the window")

    def total_degree(self, k: int) -> list:
        return [(n, k - n) for n in range(k + 1) if (n, k - n) in self.entries]


def _combine_order(ob: int, of: int, coefficients: str, where) -> int:
    if coefficients == "Fp":
        return of or ob
    if ob == 0:
        return of
    if of == 0:
        return ob
    raise MissingTable(f"H^n(base; torsion) needed at {where}; only integral base tables are supplied")


def build_e2(fib: Fibration, window: Window | None = None, coefficients: str | None = None) -> SpectralPage:
    """E_2 from the base and fiber tables over a window."""
    window = window or fib.default_window
    coefficients = coefficients or fib.coefficients
    if coefficients != fib.coefficients:
        raise MissingTable(f"{fib.fid} is tabled with {fib.coefficients} coefficients only")
    if window.n_max > fib.base.top:
        raise MissingTable(f"base table ends in degree {fib.base.top}")
    if window.m_max > fib.fiber.top:
        raise MissingTable(f"fiber table ends in degree {fib.fiber.top}")
    entries = {}
    for n in range(window.n_min, window.n_max + 1):
        bb = fib.base.basis(n)
        if not bb:
            continue
        for m in range(window.m_min, window.m_max + 1):
            fb = fib.fiber.basis(m)
            if not fb:
                continue
            labels, orders = [], []
            for bl, ob in bb:
                for fl, of in fb:
                    labels.append((bl, fl))
                    orders.append(_combine_order(ob, of, coefficients, (n, m)))
            dim = len(labels)
            Z = [[int(i == j) for i in range(dim)] for j in range(dim)]
            B = [[o * int(i == j) for i in range(dim)] for j, o in enumerate(orders) if o]
            entries[(n, m)] = Subquotient(labels, orders, Z, B)
    return SpectralPage(2, fib.spec.fibration, fib.p, coefficients, window, entries)


def _known_zero(fib: Fibration, n: int, m: int) -> bool:
    if n < 0 or m < 0:
        return True
    if n <= fib.base.top and not fib.base.basis(n):
        return True
    fb = fib.fiber.basis(m)
    return fb is not None and not fb


def _scaled(base, coefficients: str, p: int, label: str, img) -> dict:
    res = base.times(label, img)
    if coefficients == "Fp":
        res = {k: v % p for k, v in res.items() if v % p}
    return res


def differential_on_label(fib: Fibration, r: int, label: tuple) -> dict:
    """d_r(b (x) f) in E_2 labels, from the transgression data by Leibniz."""
    b, f = label
    if f == "1":
        return {}
    imgs = fib.spec.by_page().get(r, {})
    base = fib.base
    sign_b = -1 if base.degree_of(b) % 2 else 1
    out: dict = {}
    if f in imgs:
        for lab, c in _scaled(base, fib.coefficients, fib.p, b, imgs[f]).items():
            out[(lab, "1")] = out.get((lab, "1"), 0) + sign_b * c
        return out
    factors = f.split("*")
    if len(factors) == 2 and all(x in imgs for x in factors):
        f1, f2 = factors
        s1 = -1 if fib.fiber.degree_of(f1) % 2 else 1
        for lab, c in _scaled(base, fib.coefficients, fib.p, b, imgs[f1]).items():
            out[(lab, f2)] = out.get((lab, f2), 0) + sign_b * c
        for lab, c in _scaled(base, fib.coefficients, fib.p, b, imgs[f2]).items():
            out[(lab, f1)] = out.get((lab, f1), 0) + sign_b * s1 * c
        return {k: v for k, v in out.items() if v}
    return {}


def _d_matrix(fib: Fibration, r: int, src: Subquotient, tgt: Subquotient | None) -> IntMatrix:
    tgt_labels = tgt.labels if tgt else []
    index = {lab: i for i, lab in enumerate(tgt_labels)}
    cols = []
    for lab in src.labels:
        v = [0] * len(tgt_labels)
        for tl, c in differential_on_label(fib, r, lab).items():
            if tl not in index:
                raise UnknownProduct(f"d_{r} of {format_label(lab)} leaves the E_2 basis at {format_label(tl)}")
            v[index[tl]] += c
        cols.append(v)
    return IntMatrix.from_columns(len(tgt_labels), cols)


def _apply(M: IntMatrix, v: list) -> list:
    return M.apply(v) if M.rows else []


def _next_page(fib: Fibration, page: SpectralPage, r: int) -> tuple:
    """Compute d_r on page r and return (page r with differentials, page r+1)."""
    w = page.window
    ent = page.entries
    D = {}
    undet = set(page.undetermined)
    for (n, m), sq in ent.items():
        tn, tm = n + r, m - r + 1
        if (tn, tm) in ent:
            D[(n, m)] = _d_matrix(fib, r, sq, ent[(tn, tm)])
        elif not _known_zero(fib, tn, tm) and not w.contains(tn, tm):
            if any(differential_on_label(fib, r, lab) for lab in sq.labels) or tm >= 0:
                undet.add((n, m))
        # incoming from outside the window
        sn, sm = n - r, m + r - 1
        if not w.contains(sn, sm) and not _known_zero(fib, sn, sm):
            undet.add((n, m))
    new = {}
    for (n, m), sq in ent.items():
        dim = len(sq.labels)
        Z = sq.Z
        if (n, m) in D:
            tgt = ent[(n + r, m - r + 1)]
            DZ = [_apply(D[(n, m)], z) for z in Z]
            if any(any(v) for v in DZ):
                nt = len(tgt.labels)
                cols = DZ + [[-x for x in b] for b in tgt.B]
                ker = integer_kernel(IntMatrix.from_columns(nt, cols)) if cols else []
                ys = [k[:len(Z)] for k in ker]
                Z = lattice_basis([[sum(y[j] * Z[j][i] for j in range(len(Z))) for i in range(dim)] for y in ys], dim)
        B = list(sq.B)
        src = (n - r, m + r - 1)
        if src in D:
            B = lattice_basis(B + [_apply(D[src], z) for z in ent[src].Z], dim)
        new[(n, m)] = Subquotient(sq.labels, sq.orders, Z, B)
    cur = SpectralPage(page.r, page.fibration, page.p, page.coefficients, w, ent, D, undet)
    nxt = SpectralPage(r + 1, page.fibration, page.p, page.coefficients, w, new, {}, set(undet))
    return cur, nxt


def run_transgression(page: SpectralPage, spec: TransgressionSpec | None = None,
                      fib: Fibration | None = None) -> list:
    """Pages E_2, E_(r1), E_(r1+1), ... for every page carrying a differential.

    Pages between two differentials are equal; page_at resolves them.  The
    last page is E_infinity for the window (only transgression-sourced
    differentials exist)."""
    if fib is None:
        raise ValueError("run_transgression needs the fibration")
    if spec is not None:
        fib.spec = spec
    pages = [page]
    cur = page
    for r in sorted(fib.spec.by_page()):
        if r < cur.r:
            continue
        if r > cur.r:
            cur = SpectralPage(r, cur.fibration, cur.p, cur.coefficients, cur.window,
                               cur.entries, {}, set(cur.undetermined))
        done, nxt = _next_page(fib, cur, r)
        pages[-1] = done if pages[-1].r == done.r else pages[-1]
        if pages[-1] is not done:
            pages.append(done)
        pages.append(nxt)
        cur = nxt
    pages[-1].final = True
    return pages


def run(fid: str, p: int, t: int | None = None, window: Window | None = None) -> tuple:
    fib = make_fibration(fid, p, t)
    pages = run_transgression(build_e2(fib, window), fib=fib)
    return fib, pages


def page_at(pages: list, r, bidegree: tuple) -> AbGroup:
    """E_r at a bidegree; r may be "inf" for the final page."""
    if not pages:
        raise NotComputed("no pages")
    if r in ("inf", "infinity", None):
        page = pages[-1]
    else:
        if r < 2:
            raise NotComputed(f"page {r} is not part of the sequence")
        cands = [pg for pg in pages if pg.r <= r]
        page = cands[-1]
    if bidegree in page.undetermined:
        raise NotComputed(f"E_{page.r} at {bidegree} depends on data outside the window")
    return page.group(*bidegree)


# ---- checks ---------------------------------------------------------------

def d_squared_zero(pages: list) -> list:
    """Positions where d_r o d_r fails to land in B_r; empty means d o d = 0."""
    bad = []
    for pg in pages:
        for (n, m), D in pg.differentials.items():
            mid = (n + pg.r, m - pg.r + 1)
            if mid not in pg.differentials:
                continue
            end = (mid[0] + pg.r, mid[1] - pg.r + 1)
            D2 = pg.differentials[mid]
            tgt = pg.entries[end]
            for z in pg.entries[(n, m)].Z:
                y = _apply(D2, _apply(D, z))
                if any(y) and not _in_span(tgt.B, y):
                    bad.append((pg.r, (n, m)))
                    break
    return bad


def _in_span(basis: list, y: list) -> bool:
    try:
        express_in_lattice(lattice_basis(basis, len(y)), y)
        return True
    except ValueError:
        return False


def leibniz_violations(fib: Fibration, pages: list) -> list:
    """Columns of each assembled d_r matrix against (-1)^|b| b * d_r(1 (x) f),
    with d_r(1 (x) f) evaluated as a whole base element per fiber label."""
    bad = []
    for pg in pages:
        for (n, m), D in pg.differentials.items():
            sq = pg.entries[(n, m)]
            tgt = pg.entries[(n + pg.r, m - pg.r + 1)]
            for j, (b, f) in enumerate(sq.labels):
                unit = differential_on_label(fib, pg.r, ("1", f))
                per_fiber: dict = {}
                for (bl, fl), c in unit.items():
                    part = fib.base.parse(bl) * c if isinstance(fib.base, RingBase) else {bl: c}
                    if fl in per_fiber:
                        part = per_fiber[fl] + part if isinstance(fib.base, RingBase) else \
                            {k: per_fiber[fl].get(k, 0) + part.get(k, 0) for k in set(per_fiber[fl]) | set(part)}
                    per_fiber[fl] = part
                sign = -1 if fib.base.degree_of(b) % 2 else 1
                expect = [0] * len(tgt.labels)
                for fl, elem in per_fiber.items():
                    for lab, c in _scaled(fib.base, fib.coefficients, fib.p, b, elem).items():
                        expect[tgt.labels.index((lab, fl))] += sign * c
                got = [D.data[i][j] for i in range(D.rows)]
                diff = [x - y for x, y in zip(got, expect)]
                if any(d % o if o else d for d, o in zip(diff, tgt.orders)):
                    bad.append((pg.r, (b, f)))
    return bad


def homology_route(pages: list, p: int) -> list:
    """Recompute each E_(r+1) entry as the homology of the presented E_r
    complex (p-local elimination) and compare with the lattice route.
    Returns mismatches as (r, bidegree, lattice group, homology group)."""
    bad = []
    for pg, nxt in zip(pages, pages[1:]):
        if nxt.r != pg.r + 1:
            continue
        r = pg.r
        for pos, sq in pg.entries.items():
            if pos in nxt.undetermined:
                continue
            src = (pos[0] - r, pos[1] + r - 1)
            tgt = (pos[0] + r, pos[1] - r + 1)
            g_out = _presented(pg, pos, tgt)
            f_in = _presented(pg, src, pos)
            k = len(sq.gens)
            if k == 0:
                continue
            K = _kernel_mod(g_out, pg.entries[tgt].gen_orders if g_out is not None else [], k)
            rel = [list(c) for c in (f_in or [])]
            rel += [[o * int(i == j) for i in range(k)] for j, o in enumerate(sq.gen_orders) if o]
            coords = [express_in_lattice(K, v) for v in rel if any(v)]
            m = IntMatrix.from_columns(len(K), coords) if coords else IntMatrix.zeros(len(K), 0)
            exps, rank = local_invariants(m, p) if coords else ([], 0)
            other = AbGroup(tuple(p ** e for e in exps if e > 0) + (0,) * (len(K) - rank))
            mine = nxt.entries[pos].group()
            if mine.normalized() != other.normalized():
                bad.append((r, pos, str(mine), str(other)))
    return bad


def _presented(pg: SpectralPage, src: tuple, tgt: tuple):
    """Columns of d_r from src's presented generators into tgt's, or None."""
    if src not in pg.differentials or src not in pg.entries or tgt not in pg.entries:
        return None
    D = pg.differentials[src]
    T = pg.entries[tgt]
    return [T.coords(_apply(D, g)) for g in pg.entries[src].gens]


def _kernel_mod(cols, orders: list, k: int) -> list:
    if not cols:
        return [[int(i == j) for i in range(k)] for j in range(k)]
    nt = len(orders)
    ext = list(cols) + [[o * int(i == j) for i in range(nt)] for j, o in enumerate(orders) if o]
    ker = integer_kernel(IntMatrix.from_columns(nt, ext))
    return lattice_basis([v[:k] for v in ker], k)


def represents(page: SpectralPage, pos: tuple, vectors: list) -> bool:
    """True when the given E_2 vectors are cycles whose classes form a basis
    of the (elementary abelian) group at pos."""
    sq = page.entries.get(pos)
    if sq is None:
        return not vectors
    if any(o not in (page.p,) for o in sq.gen_orders):
        raise ValueError("basis check is for F_p entries")
    if not all(sq.contains_cycle(v) for v in vectors):
        return False
    from .exact_algebra import fp_rank, FpMatrix
    rows = [sq.coords(v) for v in vectors]
    if len(rows) != len(sq.gens):
        return False
    if not rows:
        return True
    return fp_rank(FpMatrix.from_dense(page.p, rows)) == len(sq.gens)


def label_vector(sq: Subquotient, terms: dict) -> list:
    index = {lab: i for i, lab in enumerate(sq.labels)}
    v = [0] * len(sq.labels)
    for lab, c in terms.items():
        v[index[lab]] += c
    return v


# ---- reports ------------------------------------------------------------------

def kernel_report(fid: str, p: int, t: int | None = None) -> dict:
    """d_(2p) from (2p-2, 2p-1) to (4p-2, 0): surjectivity and the kernel."""
    fib, pages = run(fid, p, t)
    r = 2 * p
    src, tgt = (2 * p - 2, 2 * p - 1), (4 * p - 2, 0)
    e_src = page_at(pages, r, src)
    e_tgt = page_at(pages, r, tgt)
    after_src = page_at(pages, r + 1, src)
    after_tgt = page_at(pages, r + 1, tgt)
    return {
        "fibration": fib.spec.fibration,
        "p": p,
        "source": str(e_src),
        "target": str(e_tgt),
        "surjective": after_tgt.is_trivial(),
        "kernel": str(after_src),
        "kernel_generators": list(after_src.names),
    }


def filtration_report(p: int) -> dict:
    """Total degree 4p-3 of B_G: E_infinity pieces and the filtration claim."""
    fib, pages = run("G", p)
    k = 4 * p - 3
    final = pages[-1]
    pieces = {f"{n},{m}": str(page_at(pages, "inf", (n, m))) for n, m in final.total_degree(k)}
    top = page_at(pages, "inf", (2 * p - 2, 2 * p - 1))
    return {
        "total_degree": k,
        "pieces": pieces,
        "F^(2p-2)": str(top),
        "generator": list(top.names),
        "bottom_row": str(page_at(pages, "inf", (k, 0))),
        "quotient_p_torsion": sum(page_at(pages, "inf", (n, m)).p_rank(p)
                                  for n, m in final.total_degree(k) if n > 2 * p - 2),
        "extension": "asserted, not solved",
    }


def total_p_torsion(fid: str, p: int, k: int, t: int | None = None) -> AbGroup:
    """Associated-graded p-torsion of E_infinity in total degree k."""
    fib, pages = run(fid, p, t)
    orders = []
    for n, m in pages[-1].total_degree(k):
        orders += [o for o in page_at(pages, "inf", (n, m)).orders if o > 1 and o % p == 0]
    return AbGroup(tuple(orders))


# ---- the x p fibration re-derivation -----------------------------------------

def derive_fp_cohomology_of_k(p: int, top: int | None = None) -> dict:
    """Rebuild dim H^i(K;F_p), i <= top (default 4p-2), from E_infinity of the
    x p fibration, using only fiber classes of degree < i in degree i.

    Returns degree -> {"dim", "names", "zero_column"}.  names are the tabled
    generators whose base representatives (zb -> i) span E_infinity."""
    top = 4 * p - 2 if top is None else top
    fib, pages = run("xp", p)
    final = pages[-1]
    out = {}
    fiber_table = fib.fiber.table
    for i in range(top + 1):
        dim = 0
        for n, m in final.total_degree(i):
            if n == 0 and m > 0:
                continue
            dim += len(page_at(pages, "inf", (n, m)).orders)
        col = (0, i)
        zero_col = i == 0 or col not in final.entries or page_at(pages, "inf", col).is_trivial()
        names = list(fiber_table.names(i)) if i <= fiber_table.top and i in fiber_table.groups else []
        spans = True
        if names and i > 0:
            pos = (i, 0)
            vecs = []
            sq = final.entries.get(pos)
            for nm in names:
                base_name = nm.replace("zb", "i")
                res = fib.base.product("1", base_name)
                vecs.append(label_vector(sq, {(res[1], "1"): res[0]}) if sq else [])
            spans = sq is not None and represents(final, pos, vecs) and \
                all(page_at(pages, "inf", q).is_trivial() for q in final.total_degree(i) if q[0] not in (0, i))
        out[i] = {"dim": dim, "names": names if spans else [], "zero_column": zero_col}
    return out


# ---- homology side ------------------------------------------------------------

def _base_homology(base: RingBase, n: int) -> tuple:
    """(free rank, torsion orders with cohomology labels) of H_n(base; Z)."""
    free = [lab for lab, o in base.basis(n) if o == 0]
    tors = [(lab, o) for lab, o in base.basis(n + 1) if o]
    return free, tors


def homology_dual_run(fid: str, p: int, t: int | None = None) -> dict:
    """Homology Serre spectral sequence in total degrees <= 4p-3.

    The p-local homology of the fiber is the universal-coefficient dual of
    its cohomology table.  d^(2p) from row 0 to row 2p-1 is the transpose of
    the cohomology d_(2p): free block against free block, and torsion block
    (read in degree n+1 by Ext duality) against torsion block mod p."""
    fib = make_fibration(fid, p, t)
    if not isinstance(fib.base, RingBase):
        raise MissingTable("homology run needs an integral base ring")
    hom_fiber = dual_homology(fib.fiber.table)
    top = 4 * p - 3
    cpages = run_transgression(build_e2(fib), fib=fib)
    coh = cpages[0]
    r = 2 * p
    D = {pos: M for pg in cpages if pg.r == r for pos, M in pg.differentials.items()}
    groups = {}
    for n in range(top + 1):
        free, tors = _base_homology(fib.base, n)
        for m in range(top + 1 - n):
            h = hom_fiber.group(m) if m <= hom_fiber.top else AbGroup()
            if h.is_trivial():
                continue
            orders = []
            for o in h.orders:
                if o == 0:
                    orders += [0] * len(free) + [tt for _, tt in tors]
                else:
                    # H_n(base; Z/o) = H_n (x) Z/o + Tor(H_(n-1), Z/o)
                    prev = _base_homology(fib.base, n - 1)[1] if n > 0 else []
                    k = len(free) + sum(1 for _, tt in tors if tt % p == 0) + sum(1 for _, tt in prev if tt % p == 0)
                    orders += [o] * k
            if orders:
                groups[(n, m)] = AbGroup(tuple(orders))
    # d^(2p): (n, 0) -> (n - 2p, 2p - 1)
    n = 4 * p - 3
    src_pos, tgt_pos = (n, 0), (n - r, 2 * p - 1)
    free_s, tors_s = _base_homology(fib.base, n)
    free_t, tors_t = _base_homology(fib.base, n - r)
    fiber_gens = [f for f, o in fib.fiber.basis(2 * p - 1)]
    # torsion block: cohomology d_(2p): E^{n-2p+1, 2p-1} -> E^{n+1, 0}
    cs = coh.entries.get((n - r + 1, 2 * p - 1))
    ct = coh.entries.get((n + 1, 0))
    Dc = D.get((n - r + 1, 2 * p - 1))
    tgt_labels = [(lab, f) for f in fiber_gens for lab, _ in tors_t]
    src_labels = [lab for lab, _ in tors_s]
    rows = []
    for tl in tgt_labels:
        j = cs.labels.index((tl[0], tl[1]))
        col = [Dc.data[i][j] for i in range(Dc.rows)]
        rows.append([col[ct.labels.index((sl, "1"))] % p for sl in src_labels])
    # homology matrix: target rows x source cols = transpose of the cohomology block
    H = [[rows[i][j] for j in range(len(src_labels))] for i in range(len(tgt_labels))]
    orders_t = [p] * len(tgt_labels)
    ker = _kernel_mod([[H[i][j] for i in range(len(tgt_labels))] for j in range(len(src_labels))],
                      orders_t, len(src_labels))
    rel = [[p * int(i == j) for i in range(len(src_labels))] for j in range(len(src_labels))]
    coords = [express_in_lattice(ker, v) for v in rel]
    exps, rank = local_invariants(IntMatrix.from_columns(len(ker), coords), p) if ker else ([], 0)
    e_inf = AbGroup(tuple(p ** e for e in exps if e > 0) + (0,) * (len(ker) - rank))
    from .exact_algebra import FpMatrix, fp_rank
    image_rank = fp_rank(FpMatrix.from_dense(p, H)) if H and src_labels else 0
    report = {
        "fibration": fib.spec.fibration,
        "p": p,
        "E2": {f"{a},{b}": str(g) for (a, b), g in sorted(groups.items())},
        "source": str(AbGroup((p,) * len(src_labels))),
        "target": str(AbGroup((p,) * len(tgt_labels))),
        "surjective": image_rank == len(tgt_labels),
        "E_inf": str(e_inf),
        "E_inf_group": e_inf,
        "bottom_row_below_2p-1": {str(k): str(groups.get((k, 0), AbGroup())) for k in range(2 * p - 1)},
    }
    if fid == "S":
        # torsion bookkeeping on the cohomology side, total degree 4p-2
        report["p_torsion_H^(4p-2)"] = str(total_p_torsion("S", p, 4 * p - 2))
    return report
