from __future__ import annotations

from dataclasses import dataclass
from math import gcd


def _p_part(n: int, p: int) -> int:
    q = 1
    while n % p == 0:
        n //= p
        q *= p
    return q


def _primary_parts(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            q = 1
            while n % d == 0:
                n //= d
                q *= d
            out.append(q)
        d += 1
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class AbGroup:
    """Finitely generated abelian group as a direct sum of cyclic groups.

    ``orders[i]`` is the order of the i-th named generator; 0 means infinite
    cyclic and 1 (a trivial summand) is dropped on normalization.
    """

    orders: tuple = ()
    names: tuple = ()

    def __post_init__(self):
        if self.names and len(self.names) != len(self.orders):
            raise ValueError("names and orders differ in length")
        if any(o < 0 for o in self.orders):
            raise ValueError("negative order")

    @classmethod
    def free(cls, rank: int) -> AbGroup:
        return cls((0,) * rank)

    @property
    def free_rank(self) -> int:
        return sum(1 for o in self.orders if o == 0)

    @property
    def torsion(self) -> tuple:
        return tuple(o for o in self.orders if o > 1)

    def invariant_factors(self) -> tuple:
        """Torsion invariant factors d_1 | d_2 | ... (all > 1)."""
        primes: dict[int, list[int]] = {}
        for o in self.torsion:
            for q in _primary_parts(o):
                base = next(d for d in range(2, q + 1) if q % d == 0)
                primes.setdefault(base, []).append(q)
        if not primes:
            return ()
        for lst in primes.values():
            lst.sort(reverse=True)
        n = max(len(v) for v in primes.values())
        facs = []
        for i in range(n):
            f = 1
            for lst in primes.values():
                if i < len(lst):
                    f *= lst[i]
            facs.append(f)
        return tuple(sorted(facs))

    def normalized(self) -> AbGroup:
        return AbGroup(self.invariant_factors() + (0,) * self.free_rank)

    def p_rank(self, p: int) -> int:
        """Number of cyclic p-primary torsion summands (dim of the p-torsion)."""
        return sum(1 for o in self.torsion if o % p == 0)

    def is_trivial(self) -> bool:
        return not self.torsion and self.free_rank == 0

    def __eq__(self, other) -> bool:
        if not isinstance(other, AbGroup):
            return NotImplemented
        a, b = self.normalized(), other.normalized()
        return a.orders == b.orders

    def __hash__(self):
        return hash(self.normalized().orders)

    def __str__(self) -> str:
        parts = [f"Z/{o}" for o in self.invariant_factors()] + ["Z"] * self.free_rank
        return " + ".join(parts) if parts else "0"


def p_localize(g: AbGroup, p: int) -> AbGroup:
    """Quotient by the torsion prime to p; named generators keep their names."""
    orders, names = [], []
    for i, o in enumerate(g.orders):
        q = o if o == 0 else _p_part(o, p)
        if q == 1:
            continue
        orders.append(q)
        if g.names:
            names.append(g.names[i])
    return AbGroup(tuple(orders), tuple(names))


def direct_sum(*groups: AbGroup) -> AbGroup:
    orders: list[int] = []
    names: list[str] = []
    named = all(g.names or not g.orders for g in groups)
    for g in groups:
        orders.extend(g.orders)
        names.extend(g.names)
    return AbGroup(tuple(orders), tuple(names) if named else ())


def cyclic_gcd_product(a: int, b: int) -> tuple[int, int]:
    """Z/a + Z/b = Z/gcd + Z/lcm for positive a, b."""
    g = gcd(a, b)
    return g, a * b // g
