"""Sparse matrices over the prime field F_p.

Storage is a triplet dictionary; the elimination routines densify into
row lists because every matrix met in this package is small.  Pivoting is
row-major and deterministic, so bases derived from kernels are stable
across runs.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import NonPrimeModulus


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _check_prime(p: int) -> None:
    if not is_prime(p):
        raise NonPrimeModulus(f"{p} is not prime")


@dataclass(frozen=True)
class FpMatrix:
    p: int
    rows: int
    cols: int
    entries: dict = field(default_factory=dict)

    def __post_init__(self):
        _check_prime(self.p)
        clean = {}
        for (r, c), v in self.entries.items():
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise IndexError((r, c))
            v %= self.p
            if v:
                clean[(r, c)] = v
        object.__setattr__(self, "entries", clean)

    @classmethod
    def from_dense(cls, p: int, dense: Sequence[Sequence[int]], cols: int | None = None) -> FpMatrix:
        rows = len(dense)
        if cols is None:
            cols = len(dense[0]) if rows else 0
        ent = {(i, j): v for i, row in enumerate(dense) for j, v in enumerate(row) if v % p}
        return cls(p, rows, cols, ent)

    @classmethod
    def from_columns(cls, p: int, rows: int, columns: Sequence[Sequence[int]]) -> FpMatrix:
        ent = {(i, j): v for j, col in enumerate(columns) for i, v in enumerate(col) if v % p}
        return cls(p, rows, len(columns), ent)

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def transpose(self) -> FpMatrix:
        return FpMatrix(self.p, self.cols, self.rows, {(c, r): v for (r, c), v in self.entries.items()})

    def apply(self, vec: Sequence[int]) -> list[int]:
        if len(vec) != self.cols:
            raise ValueError("dimension mismatch")
        out = [0] * self.rows
        for (r, c), v in self.entries.items():
            out[r] = (out[r] + v * vec[c]) % self.p
        return out

    def matmul(self, other: FpMatrix) -> FpMatrix:
        if self.cols != other.rows or self.p != other.p:
            raise ValueError("dimension mismatch")
        by_row: dict[int, list] = {}
        for (r, c), v in other.entries.items():
            by_row.setdefault(r, []).append((c, v))
        acc: dict = {}
        for (r, k), v in self.entries.items():
            for c, w in by_row.get(k, ()):
                acc[(r, c)] = (acc.get((r, c), 0) + v * w) % self.p
        return FpMatrix(self.p, self.rows, other.cols, acc)

    def is_zero(self) -> bool:
        return not self.entries


def row_reduce(p: int, dense: list[list[int]], ncols: int) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form mod p.  Returns (rows, pivot columns)."""
    a = [[x % p for x in row] for row in dense]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][c], -1, p)
        a[r] = [(x * inv) % p for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def fp_rank_kernel(m: FpMatrix) -> tuple[int, list[list[int]]]:
    """Rank of m and a basis of its right kernel (vectors of length m.cols)."""
    p = m.p
    rref, pivots = row_reduce(p, m.to_dense(), m.cols)
    rank = len(pivots)
    pivset = set(pivots)
    kernel = []
    for free in range(m.cols):
        if free in pivset:
            continue
        v = [0] * m.cols
        v[free] = 1
        for row, pc in zip(rref, pivots):
            v[pc] = (-row[free]) % p
        kernel.append(v)
    return rank, kernel


def fp_rank(m: FpMatrix) -> int:
    return fp_rank_kernel(m)[0]


def span_basis(p: int, vectors: Iterable[Sequence[int]], dim: int) -> list[list[int]]:
    """Echelon basis of the span of the given vectors."""
    rows = [list(v) for v in vectors]
    if not rows:
        return []
    rref, _ = row_reduce(p, rows, dim)
    return rref


def solve(p: int, columns: Sequence[Sequence[int]], target: Sequence[int]) -> list[int] | None:
    """Find x with sum_j x_j * columns[j] == target (mod p), or None."""
    n = len(columns)
    dim = len(target)
    aug = [[columns[j][i] % p for j in range(n)] + [target[i] % p] for i in range(dim)]
    rref, pivots = row_reduce(p, aug, n + 1)
    if n in pivots:
        return None
    x = [0] * n
    for row, pc in zip(rref, pivots):
        x[pc] = row[n]
    return x


class Echelon:
    """Incrementally maintained echelon basis, used to test membership and
    extend a spanning set one vector at a time."""

    def __init__(self, p: int, dim: int):
        self.p = p
        self.dim = dim
        self.rows: list[list[int]] = []
        self.pivots: list[int] = []

    def reduce(self, vec: Sequence[int]) -> list[int]:
        p = self.p
        v = [x % p for x in vec]
        for row, pc in zip(self.rows, self.pivots):
            f = v[pc]
            if f:
                v = [(x - f * y) % p for x, y in zip(v, row)]
        return v

    def add(self, vec: Sequence[int]) -> bool:
        v = self.reduce(vec)
        pc = next((i for i, x in enumerate(v) if x), None)
        if pc is None:
            return False
        inv = pow(v[pc], -1, self.p)
        v = [(x * inv) % self.p for x in v]
        for i, row in enumerate(self.rows):
            f = row[pc]
            if f:
                self.rows[i] = [(x - f * y) % self.p for x, y in zip(row, v)]
        self.rows.append(v)
        self.pivots.append(pc)
        return True

    def __len__(self) -> int:
        return len(self.rows)
