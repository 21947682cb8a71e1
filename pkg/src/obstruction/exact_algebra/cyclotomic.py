"""Exact arithmetic in Q(zeta_3) and Q(zeta_9) on the power basis."""
from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from .errors import UnsupportedConductor

# cyclotomic polynomials, low-to-high coefficients
_PHI = {3: (1, 1, 1), 9: (1, 0, 0, 1, 0, 0, 1)}


def _degree(n: int) -> int:
    if n not in _PHI:
        raise UnsupportedConductor(f"conductor {n} not in (3, 9)")
    return len(_PHI[n]) - 1


def _reduce(n: int, coeffs) -> tuple:
    d = _degree(n)
    phi = _PHI[n]
    c = [Fraction(x) for x in coeffs]
    for k in range(len(c) - 1, d - 1, -1):
        f = c[k]
        if f:
            for i, q in enumerate(phi):
                c[k - d + i] -= f * q
    c = c[:d] + [Fraction(0)] * (d - len(c))
    return tuple(c)


class CycScalar:
    """Element of Q(zeta_n), n in {3, 9}, stored as power-basis coefficients."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs=()):
        self.n = n
        self.coeffs = _reduce(n, coeffs)

    @classmethod
    def zeta(cls, n: int, k: int = 1) -> CycScalar:
        _degree(n)
        k %= n
        c = [0] * (k + 1)
        c[k] = 1
        return cls(n, c)

    @classmethod
    def rational(cls, n: int, q) -> CycScalar:
        return cls(n, [q])

    def _lift(self, other) -> CycScalar:
        if isinstance(other, CycScalar):
            if other.n == self.n:
                return other
            if other.n == 3 and self.n == 9:
                return embed(other, 9)
            raise UnsupportedConductor("mixed conductors need an explicit embedding")
        return CycScalar(self.n, [other])

    def __add__(self, other):
        o = self._lift(other)
        return CycScalar(self.n, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycScalar(self.n, [-a for a in self.coeffs])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        prod = [Fraction(0)] * (2 * len(self.coeffs))
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    if b:
                        prod[i + j] += a * b
        return CycScalar(self.n, prod)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = CycScalar(self.n, [1])
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conj(self) -> CycScalar:
        # zeta^k -> zeta^(n-k)
        c = [Fraction(0)] * self.n
        for k, a in enumerate(self.coeffs):
            c[(-k) % self.n] += a
        return CycScalar(self.n, c)

    def norm_sq(self) -> CycScalar:
        return self * self.conj()

    def galois_norm(self) -> Fraction:
        """Product of all Galois conjugates; a nonzero rational iff self != 0."""
        out = CycScalar(self.n, [1])
        for k in range(1, self.n):
            if k % 3:
                out = out * self.galois(k)
        return out.coeffs[0]

    def galois(self, k: int) -> CycScalar:
        c = [Fraction(0)] * (self.n * self.n)
        for i, a in enumerate(self.coeffs):
            c[(i * k) % self.n] += a
        return CycScalar(self.n, c)

    def inverse(self) -> CycScalar:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        rest = CycScalar(self.n, [1])
        for k in range(2, self.n):
            if k % 3:
                rest = rest * self.galois(k)
        nm = (self * rest).coeffs[0]
        return CycScalar(self.n, [a / nm for a in rest.coeffs])

    def __truediv__(self, other):
        return self * self._lift(other).inverse()

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycScalar(self.n, [other])
        if not isinstance(other, CycScalar):
            return NotImplemented
        if other.n != self.n:
            a, b = (self, other) if self.n == 9 else (other, self)
            return a == embed(b, 9)
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.n, self.coeffs))

    def to_complex(self) -> complex:
        import cmath
        w = cmath.exp(2j * cmath.pi / self.n)
        return sum(float(a) * w ** k for k, a in enumerate(self.coeffs))

    def __repr__(self):
        terms = [f"{a}*z{self.n}^{k}" for k, a in enumerate(self.coeffs) if a]
        return " + ".join(terms) if terms else "0"


def embed(x: CycScalar, n: int) -> CycScalar:
    """Embed Q(zeta_3) into Q(zeta_9) via zeta_3 = zeta_9^3."""
    if x.n == n:
        return x
    if (x.n, n) != (3, 9):
        raise UnsupportedConductor(f"no embedding Q(z{x.n}) -> Q(z{n})")
    c = [Fraction(0)] * 7
    for k, a in enumerate(x.coeffs):
        c[3 * k] += a
    return CycScalar(9, c)


def cyclotomic_eval(n: int, terms: Mapping[int, object] | list) -> CycScalar:
    """Evaluate sum c_k zeta_n^k (zeta exponents any integers) in normal form.

    ``terms`` is either a mapping exponent -> rational coefficient or a list
    of coefficients indexed by exponent.
    """
    _degree(n)
    if not isinstance(terms, Mapping):
        terms = dict(enumerate(terms))
    c = [Fraction(0)] * n
    for k, a in terms.items():
        c[k % n] += Fraction(a)
    return CycScalar(n, c)
