"""The extraspecial group of order p^3 and exponent p, its cyclic-subgroup
census, the Swan-type order |D(ZG)| from normalizer and centralizer data,
and GL_2(p)-submodule spans inside the degree-p polynomials in two variables."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from math import isqrt

from .exact_algebra import Echelon, is_prime
from .exact_algebra.errors import NonPrimeModulus


class NonSquareProduct(ArithmeticError):
    pass


def _check(p: int) -> None:
    if p < 3 or not is_prime(p):
        raise NonPrimeModulus(f"odd prime required, got {p}")


# ---- the group ---------------------------------------------------------------

def collect(word: list, p: int) -> tuple:
    """Normal form a^i b^j c^k of a word in the letters "a", "b", "c" (and
    "A", "B", "C" for inverses), using only the presentation: c is central,
    x^p = 1 and a b a^-1 b^-1 = c, i.e. b a = a b c^-1."""
    i = j = k = 0
    for letter in word:
        e = -1 if letter.isupper() else 1
        x = letter.lower()
        if x == "c":
            k += e
        elif x == "b":
            j += e
        elif x == "a":
            # move a^e left past b^j: b^j a^e = a^e b^j c^(-j e)
            i += e
            k -= j * e
        else:
            raise ValueError(f"unknown letter {letter!r}")
    return (i % p, j % p, k % p)


def _word(x: tuple) -> list:
    i, j, k = x
    return ["a"] * i + ["b"] * j + ["c"] * k


@dataclass
class ExtraspecialGroup:
    p: int
    elements: list = field(default_factory=list)

    @property
    def identity(self) -> tuple:
        return (0, 0, 0)

    def mul(self, x: tuple, y: tuple) -> tuple:
        """(i1+i2, j1+j2, k1+k2-j1*i2) mod p."""
        p = self.p
        return ((x[0] + y[0]) % p, (x[1] + y[1]) % p, (x[2] + y[2] - x[1] * y[0]) % p)

    def inv(self, x: tuple) -> tuple:
        p = self.p
        return ((-x[0]) % p, (-x[1]) % p, (-x[2] - x[0] * x[1]) % p)

    def power(self, x: tuple, n: int) -> tuple:
        out = self.identity
        for _ in range(n):
            out = self.mul(out, x)
        return out

    def conj(self, g: tuple, x: tuple) -> tuple:
        return self.mul(self.mul(g, x), self.inv(g))

    def commutator(self, x: tuple, y: tuple) -> tuple:
        return self.mul(self.mul(x, y), self.mul(self.inv(x), self.inv(y)))

    def center(self) -> list:
        return [z for z in self.elements if all(self.mul(z, g) == self.mul(g, z) for g in self.elements)]

    def order(self, x: tuple) -> int:
        n, y = 1, x
        while y != self.identity:
            y = self.mul(y, x)
            n += 1
        return n


def build_extraspecial(p: int) -> ExtraspecialGroup:
    _check(p)
    elems = list(itertools.product(range(p), repeat=3))
    return ExtraspecialGroup(p, elems)


def multiplication_mismatches(g: ExtraspecialGroup, pairs=None) -> list:
    """Pairs where the closed formula disagrees with word collection."""
    pairs = itertools.product(g.elements, repeat=2) if pairs is None else pairs
    return [(x, y) for x, y in pairs if g.mul(x, y) != collect(_word(x) + _word(y), g.p)]


def unitriangular(x: tuple, p: int) -> tuple:
    """Image of a^i b^j c^k under a -> I+e12, b -> I+e23, c -> I+e13
    (a faithful 3x3 realization), as the entries (m12, m23, m13)."""
    i, j, k = x
    # (I + i e12)(I + j e23)(I + k e13) = I + i e12 + j e23 + (ij + k) e13
    return (i % p, j % p, (i * j + k) % p)


def _umul(m: tuple, n: tuple, p: int) -> tuple:
    return ((m[0] + n[0]) % p, (m[1] + n[1]) % p, (m[2] + n[2] + m[0] * n[1]) % p)


def realization_mismatches(g: ExtraspecialGroup, pairs=None) -> list:
    p = g.p
    pairs = itertools.product(g.elements, repeat=2) if pairs is None else pairs
    return [(x, y) for x, y in pairs
            if unitriangular(g.mul(x, y), p) != _umul(unitriangular(x, p), unitriangular(y, p), p)]


def associativity_failures(g: ExtraspecialGroup, samples: int | None = None, seed: int = 0) -> int:
    """Exhaustive when samples is None, otherwise random triples."""
    if samples is None:
        triples = itertools.product(g.elements, repeat=3)
    else:
        rng = random.Random(seed)
        triples = ((rng.choice(g.elements), rng.choice(g.elements), rng.choice(g.elements))
                   for _ in range(samples))
    return sum(1 for x, y, z in triples if g.mul(g.mul(x, y), z) != g.mul(x, g.mul(y, z)))


# ---- cyclic subgroups ----------------------------------------------------------

@dataclass(frozen=True)
class SubgroupRecord:
    generators: tuple
    order: int
    normalizer_order: int
    centralizer_order: int
    class_id: int
    class_size: int


def cyclic_subgroup(g: ExtraspecialGroup, x: tuple) -> frozenset:
    out, y = {g.identity}, x
    while y != g.identity:
        out.add(y)
        y = g.mul(y, x)
    return frozenset(out)


def cyclic_subgroup_census(g: ExtraspecialGroup) -> list:
    """One record per conjugacy class of cyclic subgroups, by brute force."""
    subgroups = {}
    for x in g.elements:
        h = cyclic_subgroup(g, x)
        subgroups.setdefault(h, min(h - {g.identity}) if len(h) > 1 else g.identity)
    seen: set = set()
    out = []
    for h in sorted(subgroups, key=lambda s: (len(s), sorted(s))):
        if h in seen:
            continue
        orbit = {frozenset(g.conj(y, x) for x in h) for y in g.elements}
        seen |= orbit
        norm = sum(1 for y in g.elements if frozenset(g.conj(y, x) for x in h) == h)
        cent = sum(1 for y in g.elements if all(g.conj(y, x) == x for x in h))
        out.append(SubgroupRecord((subgroups[h],), len(h), norm, cent, len(out), len(orbit)))
    return out


def class_sizes(g: ExtraspecialGroup) -> list:
    seen: set = set()
    sizes = []
    for x in g.elements:
        if x in seen:
            continue
        cls = {g.conj(y, x) for y in g.elements}
        seen |= cls
        sizes.append(len(cls))
    return sizes


def oliver_product(census: list, group_order: int) -> tuple:
    """prod |N(H)/H|^2 / |Z(H)| over the census as an exact fraction
    (numerator, denominator), plus the per-class factors."""
    from fractions import Fraction

    total = Fraction(1)
    factors = []
    for rec in census:
        f = Fraction((rec.normalizer_order // rec.order) ** 2, rec.centralizer_order)
        factors.append(f)
        total *= f
    return total, factors


def oliver_order(p: int) -> int:
    g = build_extraspecial(p)
    total, _ = oliver_product(cyclic_subgroup_census(g), p ** 3)
    if total.denominator != 1:
        raise NonSquareProduct(f"product {total} is not an integer")
    r = isqrt(total.numerator)
    if r * r != total.numerator:
        raise NonSquareProduct(f"product {total} is not a square")
    return r


# ---- GL_2(p) on degree-p forms --------------------------------------------------

def _poly_matrix(A: tuple, p: int) -> list:
    """Matrix of f(alpha, beta) -> f(a alpha + c beta, b alpha + d beta) on
    the basis alpha^(p-i) beta^i, i = 0..p (columns are images)."""
    a, b, c, d = A
    n = p + 1
    # coefficients of (a x + c y)^m and (b x + d y)^m as lists indexed by y-power
    def lin_pow(u, v, m):
        out = [1]
        for _ in range(m):
            nxt = [0] * (len(out) + 1)
            for k, co in enumerate(out):
                nxt[k] = (nxt[k] + co * u) % p
                nxt[k + 1] = (nxt[k + 1] + co * v) % p
            out = nxt
        return out

    cols = []
    for i in range(n):
        x_part = lin_pow(a, c, p - i)
        y_part = lin_pow(b, d, i)
        col = [0] * n
        for k1, c1 in enumerate(x_part):
            for k2, c2 in enumerate(y_part):
                col[k1 + k2] = (col[k1 + k2] + c1 * c2) % p
        cols.append(col)
    return cols


def _apply(cols: list, v: list, p: int) -> list:
    out = [0] * len(cols[0])
    for c, col in zip(v, cols):
        if c:
            for i, x in enumerate(col):
                out[i] = (out[i] + c * x) % p
    return out


def _mat_mul(A: tuple, B: tuple, p: int) -> tuple:
    a, b, c, d = A
    e, f, g, h = B
    return ((a * e + b * g) % p, (a * f + b * h) % p, (c * e + d * g) % p, (c * f + d * h) % p)


def _primitive_root(p: int) -> int:
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in range(2, p) if (p - 1) % q == 0 and is_prime(q)):
            return g
    return 1


@dataclass
class GL2Module:
    """V_(p+1): homogeneous degree-p polynomials in alpha, beta, with GL_2(p)
    acting by linear substitution.  Elements are coefficient vectors on
    alpha^(p-i) beta^i."""

    p: int
    generators: list = field(default_factory=list)

    @property
    def dim(self) -> int:
        return self.p + 1

    def matrix(self, A: tuple) -> list:
        return _poly_matrix(A, self.p)

    def act(self, A: tuple, v: list) -> list:
        return _apply(self.matrix(A), v, self.p)

    def group(self) -> list:
        """All of GL_2(p), generated from the two standard generators."""
        p = self.p
        seen = {(1, 0, 0, 1)}
        frontier = [(1, 0, 0, 1)]
        while frontier:
            nxt = []
            for A in frontier:
                for G in self.generators:
                    B = _mat_mul(A, G, p)
                    if B not in seen:
                        seen.add(B)
                        nxt.append(B)
            frontier = nxt
        return sorted(seen)

    def homomorphism_failures(self, samples: int = 50, seed: int = 0) -> int:
        rng = random.Random(seed)
        els = self.group()
        bad = 0
        for _ in range(samples):
            A, B = rng.choice(els), rng.choice(els)
            v = [rng.randrange(self.p) for _ in range(self.dim)]
            if self.act(_mat_mul(A, B, self.p), v) != self.act(A, self.act(B, v)):
                bad += 1
        return bad


def gl2_module(p: int) -> GL2Module:
    _check(p)
    g = _primitive_root(p)
    return GL2Module(p, [(g, 0, 0, 1), (p - 1, 1, p - 1, 0)])


def monomial(p: int, i: int) -> list:
    """alpha^(p-i) beta^i."""
    v = [0] * (p + 1)
    v[i] = 1
    return v


def transfer_seed(p: int) -> list:
    """beta^p - beta alpha^(p-1), the Bockstein of the transfer image."""
    v = monomial(p, p)
    v[1] = (v[1] - 1) % p
    return v


def gl2_submodule_span(p: int, seeds: list, brute_force: bool = False) -> int:
    """Dimension of the smallest GL_2(p)-stable subspace containing the
    seeds.  By default closes under the two generators; brute_force applies
    every group element until stable instead."""
    m = gl2_module(p)
    ops = [m.matrix(A) for A in (m.group() if brute_force else m.generators)]
    ech = Echelon(p, m.dim)
    queue = [list(s) for s in seeds if any(x % p for x in s)]
    queue = [v for v in queue if ech.add(v)]
    while queue:
        v = queue.pop()
        for cols in ops:
            w = _apply(cols, v, p)
            if ech.add(w):
                queue.append(w)
    return len(ech)
