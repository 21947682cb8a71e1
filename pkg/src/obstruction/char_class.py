"""Characteristic classes of sums of line bundles over the curated rings:
total Chern classes, stable inverses, Pontrjagin classes and the mod-p Wu
class q_1 through a generic multiplicative sequence."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .group_rings import GradedElement, TruncatedRing, load_ring, reduce_mod_p, restrict


class UnknownRepresentation(KeyError):
    pass


class CapTooSmall(ValueError):
    pass


@dataclass
class LineBundleSum:
    ring: TruncatedRing
    classes: list  # first Chern classes, degree 2 (or zero)

    def __add__(self, other: LineBundleSum) -> LineBundleSum:
        if other.ring is not self.ring:
            raise ValueError("line bundle sums over different rings")
        return LineBundleSum(self.ring, self.classes + other.classes)

    @property
    def dimension(self) -> int:
        return len(self.classes)


@dataclass
class ChernVector:
    ring: TruncatedRing
    classes: list  # c_0 .. c_n

    def total(self) -> GradedElement:
        out = self.ring.element()
        for c in self.classes:
            out = out + c
        return out

    def __getitem__(self, k: int) -> GradedElement:
        if k < len(self.classes):
            return self.classes[k]
        return self.ring.element()

    def __mul__(self, other: ChernVector) -> ChernVector:
        return split_total(self.total() * other.total())


def split_total(x: GradedElement) -> ChernVector:
    ring = x.ring
    top = ring.cap // 2
    return ChernVector(ring, [x.component(2 * k) for k in range(top + 1)])


# ---- representations restricted to BHt / BS1 ------------------------------

REPRESENTATIONS = ("Psi", "Phi0", "Phip", "Phi_t_prime", "psi_hat", "phi_blocks", "trivial")


def decompose_restriction(rep: str, p: int, t: int | None = None, to: str = "BHt") -> LineBundleSum:
    """Split the restriction of a representation of the big group into lines.

    Over BHt the p-dimensional representation Psi splits as the sum of
    Phi'_t * Phi_t^k, k = 0..p-1, with first Chern classes tp + k*vp.  The
    one-dimensional Phi_0, Phi_p restrict to the images of alpha and beta.
    """
    if rep not in REPRESENTATIONS:
        raise UnknownRepresentation(rep)
    if to == "BHt":
        if t is None or not 0 <= t <= p:
            raise ValueError("t must lie in 0..p")
        ring = load_ring("BHt", p)
        tp, vp = ring.gen("tp"), ring.gen("vp")
        big = load_ring("BGt", p)
        phi0 = restrict(big.gen("a"), "BHt", t)
        phip = restrict(big.gen("b"), "BHt", t)
        psi = [tp + vp * k for k in range(p)]
        taup = [tp]
    elif to == "BS1":
        ring = load_ring("BS1", p)
        tau = ring.gen("tau")
        big = load_ring("BGt", p)
        phi0 = restrict(big.gen("a"), "BS1")
        phip = restrict(big.gen("b"), "BS1")
        psi = [tau] * p
        taup = [tau]
    else:
        raise ValueError(f"unsupported base {to!r}")
    lines = {
        "Psi": psi,
        "Phi0": [phi0],
        "Phip": [phip],
        "Phi_t_prime": taup,
        "phi_blocks": [phi0] * p + [phip] * p,
        "psi_hat": psi + [phi0] * p + [phip] * p,
        "trivial": [],
    }[rep]
    return LineBundleSum(ring, lines)


def chern_total(s: LineBundleSum) -> ChernVector:
    total = s.ring.unit()
    for c1 in s.classes:
        total = total * (s.ring.unit() + c1)
    return split_total(total)


def stable_inverse(c: ChernVector, cap: int | None = None) -> ChernVector:
    """q with c * q = 1 through degree 2 * len(q) - 2."""
    ring = c.ring
    if c[0] != ring.unit():
        raise ValueError("c_0 must be the unit")
    top = (cap if cap is not None else ring.cap) // 2
    q = [ring.unit()]
    for k in range(1, top + 1):
        acc = ring.element()
        for i in range(1, k + 1):
            if not c[i].is_zero() and not q[k - i].is_zero():
                acc = acc + c[i] * q[k - i]
        q.append(-acc)
    return ChernVector(ring, q)


def pontrjagin_classes(c: ChernVector, r: int) -> list:
    """p_k = sum_i (-1)^(k+i) c_i c_(2k-i), for k = 0..r."""
    if 4 * r > c.ring.cap or 2 * r >= len(c.classes):
        raise CapTooSmall(f"need degree {4 * r}, ring cap is {c.ring.cap}")
    out = []
    for k in range(r + 1):
        acc = c.ring.element()
        for i in range(2 * k + 1):
            a, b = c[i], c[2 * k - i]
            if a.is_zero() or b.is_zero():
                continue
            acc = acc + (a * b) * (-1) ** (k + i)
        out.append(acc)
    return out


# ---- multiplicative sequences ----------------------------------------------
# Polynomials in x_1..x_n are dicts {exponent tuple: Fraction}; x_i has weight i.

def _pmul(a: dict, b: dict, n: int) -> dict:
    out: dict = {}
    for ea, ca in a.items():
        wa = sum((i + 1) * e for i, e in enumerate(ea))
        for eb, cb in b.items():
            wb = sum((i + 1) * e for i, e in enumerate(eb))
            if wa + wb > n:
                continue
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = out.get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c}


def _padd(a: dict, b: dict, s=1) -> dict:
    out = dict(a)
    for e, c in b.items():
        out[e] = out.get(e, 0) + s * c
    return {e: c for e, c in out.items() if c}


def power_sums(n: int) -> list:
    """Newton's identities: power sums P_1..P_n in the elementary symmetric
    functions x_1..x_n (as weighted polynomials)."""
    def x(i):
        e = [0] * n
        e[i - 1] = 1
        return {tuple(e): Fraction(1)}

    P = [None]
    for k in range(1, n + 1):
        acc: dict = {}
        for i in range(1, k):
            acc = _padd(acc, _pmul(x(i), P[k - i], n), (-1) ** (i - 1))
        acc = _padd(acc, {e: c * k for e, c in x(k).items()}, (-1) ** (k - 1))
        P.append(acc)
    return P


def log_coefficients(f: list, n: int) -> list:
    """Coefficients a_1..a_n of log f(t) for a power series f with f[0] = 1."""
    f = [Fraction(c) for c in f] + [Fraction(0)] * (n + 1)
    if f[0] != 1:
        raise ValueError("f(0) must be 1")
    # (log f)' = f'/f, solved term by term
    a = [Fraction(0)] * (n + 1)
    for k in range(1, n + 1):
        s = k * f[k]
        for j in range(1, k):
            s -= j * a[j] * f[k - j]
        a[k] = s / k
    return a


def multiplicative_sequence(f: list, n: int) -> dict:
    """K_n(x_1..x_n) for the power series f: K = exp(sum_k a_k P_k)."""
    a = log_coefficients(f, n)
    P = power_sums(n)
    S: dict = {}
    for k in range(1, n + 1):
        if a[k]:
            S = _padd(S, {e: c * a[k] for e, c in P[k].items()})
    total = {(0,) * n: Fraction(1)}
    term = {(0,) * n: Fraction(1)}
    for j in range(1, n + 1):
        term = _pmul(term, S, n)
        total = _padd(total, {e: c / factorial(j) for e, c in term.items()})
    return {e: c for e, c in total.items() if sum((i + 1) * x for i, x in enumerate(e)) == n}


def evaluate_sequence(K: dict, values: list, ring: TruncatedRing) -> GradedElement:
    out = ring.element()
    for e, c in K.items():
        if c.denominator != 1:
            raise ValueError("multiplicative sequence with non-integral coefficient")
        term = ring.unit()
        for v, k in zip(values, e):
            for _ in range(k):
                term = term * v
        out = out + term * int(c)
    return out


def wu_q1(pontrjagin: list, p: int) -> GradedElement:
    """q_1 = K_r(p_1..p_r) mod p for the multiplicative sequence of 1 + t^r."""
    r = (p - 1) // 2
    if len(pontrjagin) < r + 1:
        raise CapTooSmall("Pontrjagin list shorter than r")
    ring = pontrjagin[0].ring
    f = [1] + [0] * (r - 1) + [1]
    K = multiplicative_sequence(f, r)
    val = evaluate_sequence(K, pontrjagin[1:r + 1], ring)
    return reduce_mod_p(val) if ring.coeff == "Z" else val


def wu_shortcut(pontrjagin: list, p: int) -> GradedElement:
    """(-1)^(r+1) r times the reduction of p_r; valid when p_1..p_(r-1) vanish."""
    r = (p - 1) // 2
    x = pontrjagin[r] * ((-1) ** (r + 1) * r)
    return reduce_mod_p(x) if x.ring.coeff == "Z" else x


# ---- closed forms for the tangent-bundle classes ----------------------------

def psi_chern_closed_form(p: int) -> GradedElement:
    """1 - vp^(p-1) + tp^p - vp^(p-1) tp, the closed form of ch(psi) over BHt."""
    ring = load_ring("BHt", p)
    return ring.parse(f"1 - vp^{p - 1} + tp^{p} - tp*vp^{p - 1}")


def psi_binomial_correction(p: int) -> GradedElement:
    """sum_{j=1}^{p-1} C(p, j) tp^j: the torsion-free terms of (1 + tp)^p."""
    ring = load_ring("BHt", p)
    out = ring.element()
    for j in range(1, p):
        out = out + ring.parse(f"tp^{j}" if j > 1 else "tp") * comb(p, j)
    return out


def phi_blocks_closed_form(p: int, t: int) -> GradedElement:
    ring = load_ring("BHt", p)
    return ring.unit() + ring.parse(f"vp^{p}") * (1 + t) + ring.parse(f"vp^{2 * p}") * t


def xi_chern(p: int, t: int) -> ChernVector:
    """Chern classes of the stable inverse of psi_hat over BHt, through 4p-2."""
    c = chern_total(decompose_restriction("psi_hat", p, t))
    return stable_inverse(c, 4 * p - 2)
