"""Degree-capped graded rings given by curated monomial bases and partial
multiplication tables.

A monomial is a tuple of exponents aligned with the ring's generator list.
A product of two basis monomials is resolved in this order:

1. an explicit table entry for the pair (either order, with the graded sign),
2. concatenation followed by the ring's monomial rewrite rules, accepted
   only if the result is a listed basis monomial.

Anything else raises UnknownProduct; the ring never guesses structure it was
not given.  Products landing above the degree cap are zero.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction


class RingError(Exception):
    pass


class UnknownProduct(RingError):
    pass


class DegreeAboveCap(RingError):
    pass


class ParseError(RingError):
    pass


Mono = tuple


@dataclass
class TruncatedRing:
    rid: str
    p: int
    coeff: str  # "Z" or "Fp"
    cap: int
    gens: list  # [(name, degree)]
    basis: dict = field(default_factory=dict)  # degree -> [(mono, order)]
    rewrites: list = field(default_factory=list)  # [(lhs mono, {mono: coef})]
    products: dict = field(default_factory=dict)  # (m1, m2) -> {mono: coef}
    composites: list = field(default_factory=list)  # [({mono: coef}, mono, {mono: coef})]
    comments: list = field(default_factory=list)

    def __post_init__(self):
        self._index = {name: i for i, (name, _) in enumerate(self.gens)}
        self._order = {}
        for deg, entries in self.basis.items():
            for mono, order in entries:
                self._order[mono] = order

    # ---- generator and monomial helpers
    @property
    def gen_names(self) -> list:
        return [g for g, _ in self.gens]

    def gen_degree(self, name: str) -> int:
        return self.gens[self._index[name]][1]

    def one(self) -> Mono:
        return (0,) * len(self.gens)

    def mono_degree(self, m: Mono) -> int:
        return sum(e * d for e, (_, d) in zip(m, self.gens))

    def order_of(self, m: Mono) -> int:
        if m not in self._order:
            raise UnknownProduct(f"{self.format_mono(m)} is not a basis monomial of {self.rid}")
        return self._order[m]

    def is_basis(self, m: Mono) -> bool:
        return m in self._order

    def ring_basis(self, degree: int) -> list:
        if degree > self.cap:
            raise DegreeAboveCap(f"degree {degree} exceeds cap {self.cap} of {self.rid}")
        return [m for m, _ in self.basis.get(degree, [])]

    def format_mono(self, m: Mono) -> str:
        parts = []
        for e, (name, _) in zip(m, self.gens):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts) if parts else "1"

    def parse_mono(self, text: str) -> Mono:
        text = text.strip()
        exps = [0] * len(self.gens)
        if text == "1":
            return tuple(exps)
        for factor in text.split("*"):
            factor = factor.strip()
            name, _, e = factor.partition("^")
            if name not in self._index:
                raise ParseError(f"unknown generator {name!r} in {self.rid}")
            exps[self._index[name]] += int(e) if e else 1
        return tuple(exps)

    # ---- coefficients
    def reduce_coeff(self, m: Mono, c: int) -> int:
        order = self.p if self.coeff == "Fp" else self.order_of(m)
        if order:
            c %= order
            # symmetric residues read better for small p-torsion in integral rings
            if self.coeff == "Z" and c > order // 2:
                c -= order
        return c

    def element(self, terms=None) -> GradedElement:
        return GradedElement(self, terms or {})

    def gen(self, name: str) -> GradedElement:
        m = [0] * len(self.gens)
        m[self._index[name]] = 1
        return self.element({tuple(m): 1})

    def unit(self) -> GradedElement:
        return self.element({self.one(): 1})

    def parse(self, text: str) -> GradedElement:
        return self.element(parse_terms(self, text))

    # ---- multiplication
    def _odd_sign(self, m1: Mono, m2: Mono) -> int:
        # moving the odd generators of m2 past those of m1 that sit later in order
        s = 0
        for j, e2 in enumerate(m2):
            if e2 and self.gens[j][1] % 2:
                for i in range(j + 1, len(m1)):
                    if m1[i] and self.gens[i][1] % 2:
                        s += m1[i] * e2
        return -1 if s % 2 else 1

    def normal_form(self, m: Mono) -> tuple[int, Mono] | None:
        """Apply rewrite rules to a raw monomial; returns (sign, mono) or None
        when the monomial vanishes (odd generator squared)."""
        for e, (_, d) in zip(m, self.gens):
            if d % 2 and e > 1:
                return None
        sign = 1
        changed = True
        while changed:
            changed = False
            for lhs, rhs in self.rewrites:
                if all(a >= b for a, b in zip(m, lhs)):
                    (rm, rc), = rhs.items()
                    rest = tuple(a - b for a, b in zip(m, lhs))
                    m = tuple(a + b for a, b in zip(rest, rm))
                    sign *= rc
                    changed = True
                    break
            if any(e > 1 and d % 2 for e, (_, d) in zip(m, self.gens)):
                return None
        return sign, m

    def mono_product(self, m1: Mono, m2: Mono) -> dict:
        deg = self.mono_degree(m1) + self.mono_degree(m2)
        if deg > self.cap:
            return {}
        if (m1, m2) in self.products:
            return dict(self.products[(m1, m2)])
        if (m2, m1) in self.products:
            sign = -1 if (self.mono_degree(m1) % 2 and self.mono_degree(m2) % 2) else 1
            return {k: sign * v for k, v in self.products[(m2, m1)].items()}
        raw = tuple(a + b for a, b in zip(m1, m2))
        nf = self.normal_form(raw)
        if nf is None:
            return {}
        sign, m = nf
        if not self.is_basis(m):
            raise UnknownProduct(
                f"{self.format_mono(m1)} * {self.format_mono(m2)} is not tabled in {self.rid}")
        return {m: sign * self._odd_sign(m1, m2)}

    def multiply(self, a: GradedElement, b: GradedElement) -> GradedElement:
        if a.ring is not self or b.ring is not self:
            raise RingError("ring mismatch")
        out: dict = {}
        left, right = dict(a.terms), dict(b.terms)
        # whole-element entries first: a (or b) equal to c * lhs, against a tabled monomial
        for lhs, mono, res in self.composites:
            for x, y, flip in ((left, right, False), (right, left, True)):
                c = _scalar_multiple(self, x, lhs)
                if c is None or mono not in y:
                    continue
                k = y.pop(mono)
                for rm, rc in res.items():
                    out[rm] = out.get(rm, 0) + c * k * rc
                if not y:
                    x.clear()
        if left and right:
            for m1, c1 in left.items():
                for m2, c2 in right.items():
                    for m, c in self.mono_product(m1, m2).items():
                        out[m] = out.get(m, 0) + c1 * c2 * c
        return self.element(out)

    # ---- serialization
    def format_terms(self, terms: dict) -> str:
        return format_terms(self, terms)


def _scalar_multiple(ring: TruncatedRing, x: dict, lhs: dict):
    """Return c with x == c * lhs (as reduced elements), or None."""
    if not x or set(x) != set(lhs):
        return None
    for c in range(-ring.p * ring.p, ring.p * ring.p + 1):
        if c and all(ring.reduce_coeff(m, c * lhs[m] - x[m]) == 0 for m in lhs):
            return c
    return None


class GradedElement:
    """Sparse coefficient vector over the basis of a TruncatedRing."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: TruncatedRing, terms: dict):
        self.ring = ring
        acc: dict = {}
        for m, c in terms.items():
            if ring.mono_degree(m) > ring.cap:
                continue
            if ring.rewrites and not ring.is_basis(m):
                nf = ring.normal_form(m)
                if nf is None:
                    continue
                sign, m = nf
                c = sign * c
            acc[m] = acc.get(m, 0) + int(c)
        clean = {}
        for m, c in acc.items():
            c = ring.reduce_coeff(m, c)
            if c:
                clean[m] = c
        self.terms = clean

    def __add__(self, other):
        other = self._coerce(other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            t[m] = t.get(m, 0) + c
        return GradedElement(self.ring, t)

    __radd__ = __add__

    def __neg__(self):
        return GradedElement(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return GradedElement(self.ring, {m: c * int(other) for m, c in self.terms.items()})
        return self.ring.multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __pow__(self, k: int):
        out = self.ring.unit()
        for _ in range(k):
            out = out * self
        return out

    def _coerce(self, other) -> GradedElement:
        if isinstance(other, GradedElement):
            if other.ring is not self.ring:
                raise RingError(f"ring mismatch: {self.ring.rid} vs {other.ring.rid}")
            return other
        if isinstance(other, int):
            return GradedElement(self.ring, {self.ring.one(): other})
        raise TypeError(type(other))

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set:
        return {self.ring.mono_degree(m) for m in self.terms}

    def component(self, degree: int) -> GradedElement:
        return GradedElement(self.ring, {m: c for m, c in self.terms.items()
                                         if self.ring.mono_degree(m) == degree})

    def coefficient(self, mono) -> int:
        if isinstance(mono, str):
            mono = self.ring.parse_mono(mono)
        return self.terms.get(mono, 0)

    def __eq__(self, other):
        if isinstance(other, int):
            other = self._coerce(other)
        if not isinstance(other, GradedElement):
            return NotImplemented
        return self.ring is other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring.rid, frozenset(self.terms.items())))

    def __str__(self):
        return format_terms(self.ring, self.terms)

    __repr__ = __str__


# ---- text format for elements ---------------------------------------------

_TERM = re.compile(r"\s*([+-])?\s*([^+-]+)")


def parse_terms(ring: TruncatedRing, text: str) -> dict:
    text = text.strip()
    if text == "0":
        return {}
    out: dict = {}
    pos = 0
    while pos < len(text):
        mt = _TERM.match(text, pos)
        if not mt or mt.end() == pos:
            raise ParseError(f"cannot parse {text!r}")
        sign = -1 if mt.group(1) == "-" else 1
        body = mt.group(2).strip()
        factors = body.split("*")
        coef = 1
        if factors[0].strip().isdigit():
            coef = int(factors[0])
            factors = factors[1:]
        mono = ring.parse_mono("*".join(factors)) if factors else ring.one()
        out[mono] = out.get(mono, 0) + sign * coef
        pos = mt.end()
    return out


def _mono_sort_key(ring: TruncatedRing, m: Mono):
    return (ring.mono_degree(m), tuple(-e for e in m))


def format_terms(ring: TruncatedRing, terms: dict) -> str:
    items = [(m, c) for m, c in terms.items() if c]
    if not items:
        return "0"
    items.sort(key=lambda mc: _mono_sort_key(ring, mc[0]))
    out = []
    for i, (m, c) in enumerate(items):
        mono = ring.format_mono(m)
        mag = abs(c)
        if mono == "1":
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if i == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append(("- " if c < 0 else "+ ") + body)
    return " ".join(out)
