"""Polynomials over Q(zeta_9) in z1, z2, z3, z (and conjugates) and eps,
kept in normal form under

    z * zb -> 1,   z1 * zb1 -> 1 - eps,   z3 * zb3 -> eps - z2 * zb2,

plus 3x3 matrices over them.  The three left sides involve disjoint
variable pairs and each rule lowers a pair count, so normal forms are
unique; ``rewrite_steps`` applies single rewrites in a caller-chosen order
so that uniqueness can be tested.
"""
from __future__ import annotations

import random
from fractions import Fraction

from ..exact_algebra import CycScalar

VARS = ("z1", "zb1", "z2", "zb2", "z3", "zb3", "z", "zb", "eps")
_POS = {v: i for i, v in enumerate(VARS)}
_BAR = {"z1": "zb1", "zb1": "z1", "z2": "zb2", "zb2": "z2", "z3": "zb3", "zb3": "z3",
        "z": "zb", "zb": "z", "eps": "eps"}
_SWAP = tuple(_POS[_BAR[v]] for v in VARS)
N = 9  # all coefficients live in Q(zeta_9)


def _cyc(x) -> CycScalar:
    if isinstance(x, CycScalar):
        return x if x.n == N else CycScalar(N, [0]) + x
    return CycScalar(N, [Fraction(x)])


def xi(k: int = 1) -> CycScalar:
    """The cube root of unity exp(2 pi i k / 3) inside Q(zeta_9)."""
    return CycScalar.zeta(N, 3 * k)


class SymScalar:
    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None, reduce: bool = True):
        clean = {}
        for m, c in (terms or {}).items():
            c = _cyc(c)
            if not c.is_zero():
                clean[m] = clean[m] + c if m in clean else c
        clean = {m: c for m, c in clean.items() if not c.is_zero()}
        self.terms = _normalize(clean) if reduce else clean

    @classmethod
    def const(cls, c) -> SymScalar:
        return cls({(0,) * len(VARS): c})

    @classmethod
    def var(cls, name: str, power: int = 1) -> SymScalar:
        e = [0] * len(VARS)
        e[_POS[name]] = power
        return cls({tuple(e): 1})

    def __add__(self, other):
        other = _lift(other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            t[m] = t[m] + c if m in t else c
        return SymScalar(t, reduce=False)

    __radd__ = __add__

    def __neg__(self):
        return SymScalar({m: -c for m, c in self.terms.items()}, reduce=False)

    def __sub__(self, other):
        return self + (-_lift(other))

    def __rsub__(self, other):
        return _lift(other) - self

    def __mul__(self, other):
        other = _lift(other)
        t: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                t[m] = t[m] + c1 * c2 if m in t else c1 * c2
        return SymScalar(t)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = SymScalar.const(1)
        for _ in range(k):
            out = out * self
        return out

    def conj(self) -> SymScalar:
        return SymScalar({tuple(m[j] for j in _SWAP): c.conj() for m, c in self.terms.items()},
                         reduce=False)

    def subs(self, mapping: dict) -> SymScalar:
        """Substitute SymScalars for variables, then renormalize."""
        out = SymScalar()
        for m, c in self.terms.items():
            term = SymScalar.const(c)
            for v, e in zip(VARS, m):
                if e:
                    base = mapping.get(v, SymScalar.var(v))
                    term = term * (base ** e)
            out = out + term
        return SymScalar(out.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        try:
            other = _lift(other)
        except TypeError:
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def evaluate(self, values: dict) -> complex:
        total = 0j
        for m, c in self.terms.items():
            term = c.to_complex()
            for v, e in zip(VARS, m):
                if e:
                    term *= values[v] ** e
            total += term
        return total

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in sorted(self.terms.items()):
            mon = "*".join(v if e == 1 else f"{v}^{e}" for v, e in zip(VARS, m) if e)
            coef = str(c.coeffs[0]) if c.is_rational() else f"({c})"
            parts.append(f"{coef}*{mon}" if mon else coef)
        return " + ".join(parts)


def _lift(x) -> SymScalar:
    if isinstance(x, SymScalar):
        return x
    if isinstance(x, (int, Fraction, CycScalar)):
        return SymScalar.const(x)
    raise TypeError(f"cannot lift {type(x).__name__}")


# ---- rewriting ------------------------------------------------------------------

RULES = (("z", "zb"), ("z1", "zb1"), ("z3", "zb3"))


def _rule_rhs(rule: tuple) -> dict:
    zero = (0,) * len(VARS)
    one = CycScalar(N, [1])
    eps = tuple(int(v == "eps") for v in VARS)
    if rule == ("z", "zb"):
        return {zero: one}
    if rule == ("z1", "zb1"):
        return {zero: one, eps: -one}
    z2z2 = tuple(int(v in ("z2", "zb2")) for v in VARS)
    return {eps: one, z2z2: -one}


def _apply_rule(m: tuple, rule: tuple, n: int) -> dict:
    """m with n copies of the rule's left side replaced by its right side."""
    i, j = _POS[rule[0]], _POS[rule[1]]
    base = list(m)
    base[i] -= n
    base[j] -= n
    out = {tuple(base): CycScalar(N, [1])}
    rhs = _rule_rhs(rule)
    for _ in range(n):
        nxt: dict = {}
        for mm, c in out.items():
            for r, cr in rhs.items():
                k = tuple(a + b for a, b in zip(mm, r))
                nxt[k] = nxt[k] + c * cr if k in nxt else c * cr
        out = nxt
    return out


def _normalize(terms: dict) -> dict:
    out: dict = {}
    for m, c in terms.items():
        parts = {m: c}
        for rule in RULES:
            nxt: dict = {}
            for mm, cc in parts.items():
                n = min(mm[_POS[rule[0]]], mm[_POS[rule[1]]])
                for k, ck in (_apply_rule(mm, rule, n).items() if n else [(mm, CycScalar(N, [1]))]):
                    nxt[k] = nxt[k] + cc * ck if k in nxt else cc * ck
            parts = nxt
        for mm, cc in parts.items():
            out[mm] = out[mm] + cc if mm in out else cc
    return {m: c for m, c in out.items() if not c.is_zero()}


def reducible(m: tuple) -> list:
    return [r for r in RULES if m[_POS[r[0]]] and m[_POS[r[1]]]]


def rewrite_steps(terms: dict, rng: random.Random) -> dict:
    """Normal form reached by single rewrites, choosing monomial and rule at
    random each step (an independent route to the normal form)."""
    cur = {m: _cyc(c) for m, c in terms.items()}
    while True:
        cur = {m: c for m, c in cur.items() if not c.is_zero()}
        todo = sorted(m for m in cur if reducible(m))
        if not todo:
            return cur
        m = rng.choice(todo)
        rule = rng.choice(reducible(m))
        c = cur.pop(m)
        for k, ck in _apply_rule(m, rule, 1).items():
            cur[k] = cur[k] + c * ck if k in cur else c * ck


def is_normal(s: SymScalar) -> bool:
    return all(not reducible(m) for m in s.terms)


# ---- matrices ---------------------------------------------------------------------

class Mat3:
    """3x3 matrix of SymScalars (row-major)."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        self.rows = [[_lift(x) for x in row] for row in rows]

    @classmethod
    def identity(cls) -> Mat3:
        return cls([[int(i == j) for j in range(3)] for i in range(3)])

    @classmethod
    def diag(cls, entries) -> Mat3:
        return cls([[entries[i] if i == j else 0 for j in range(3)] for i in range(3)])

    def __getitem__(self, ij):
        return self.rows[ij[0]][ij[1]]

    def __add__(self, other):
        return Mat3([[self.rows[i][j] + other.rows[i][j] for j in range(3)] for i in range(3)])

    def __sub__(self, other):
        return Mat3([[self.rows[i][j] - other.rows[i][j] for j in range(3)] for i in range(3)])

    def __mul__(self, other):
        if isinstance(other, Mat3):
            return Mat3([[sum((self.rows[i][k] * other.rows[k][j] for k in range(3)), SymScalar())
                          for j in range(3)] for i in range(3)])
        s = _lift(other)
        return Mat3([[x * s for x in row] for row in self.rows])

    __rmul__ = __mul__

    def dagger(self) -> Mat3:
        return Mat3([[self.rows[j][i].conj() for j in range(3)] for i in range(3)])

    def det(self) -> SymScalar:
        r = self.rows
        return (r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1])
                - r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0])
                + r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0]))

    def subs(self, mapping: dict) -> Mat3:
        return Mat3([[x.subs(mapping) for x in row] for row in self.rows])

    def is_zero(self) -> bool:
        return all(x.is_zero() for row in self.rows for x in row)

    def is_diagonal(self) -> bool:
        return all(self.rows[i][j].is_zero() for i in range(3) for j in range(3) if i != j)

    def nonzero_entries(self) -> dict:
        return {(i, j): self.rows[i][j] for i in range(3) for j in range(3) if not self.rows[i][j].is_zero()}

    def evaluate(self, values: dict):
        return [[x.evaluate(values) for x in row] for row in self.rows]

    def __eq__(self, other):
        return isinstance(other, Mat3) and (self - other).is_zero()

    def __repr__(self):
        return "Mat3(" + repr(self.rows) + ")"


class ScaledMat:
    """``scale^(-e/2) * mat`` on the block ``block`` (row/column indices),
    identity-sized entries elsewhere unscaled; square roots are never formed."""

    def __init__(self, mat: Mat3, e: int, scale: SymScalar, block: tuple = (0, 1, 2)):
        if e not in (0, 1):
            raise ValueError("normalization exponent must be 0 or 1")
        self.mat = mat
        self.e = e
        self.scale = scale
        self.block = tuple(block)

    def gram_residual(self) -> Mat3:
        """mat mat^dagger - (scale on the block, 1 elsewhere): zero iff the
        actual matrix is unitary."""
        target = Mat3.diag([self.scale if (i in self.block and self.e) else 1 for i in range(3)])
        return self.mat * self.mat.dagger() - target

    def det_residual(self) -> SymScalar:
        """det(mat) - scale^(e*|block|/2); for a 2x2 block and e = 1 that is
        det(mat) - scale."""
        k = len(self.block) * self.e
        if k % 2:
            raise ValueError("odd total exponent: determinant involves a square root")
        return self.mat.det() - self.scale ** (k // 2)
