"""Integer Smith normal form with unimodular transforms, plus a separate
p-local elimination used as an independent second route to the same
invariants."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .abgroup import AbGroup


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    data: tuple  # tuple of row tuples

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> IntMatrix:
        rows = [tuple(int(x) for x in r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), cols, tuple(rows))

    @classmethod
    def from_columns(cls, nrows: int, columns: Sequence[Sequence[int]]) -> IntMatrix:
        if any(len(c) != nrows for c in columns):
            raise ValueError("column length mismatch")
        return cls.from_rows([[columns[j][i] for j in range(len(columns))] for i in range(nrows)], len(columns))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self.data]

    def transpose(self) -> IntMatrix:
        return IntMatrix.from_rows([[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)], self.rows)

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        return IntMatrix.from_rows(
            [[sum(self.data[i][k] * other.data[k][j] for k in range(self.cols)) for j in range(other.cols)]
             for i in range(self.rows)],
            other.cols,
        )

    def apply(self, vec: Sequence[int]) -> list[int]:
        return [sum(a * b for a, b in zip(row, vec)) for row in self.data]

    def hstack(self, other: IntMatrix) -> IntMatrix:
        if self.rows != other.rows:
            raise ValueError("row mismatch")
        return IntMatrix.from_rows([a + b for a, b in zip(self.data, other.data)], self.cols + other.cols)


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_with_transforms(m: IntMatrix) -> tuple[list[int], list[list[int]], list[list[int]]]:
    """Return (diag, U, V) with U * m * V = D, D diagonal with diag entries
    forming a divisibility chain (zeros last), U and V unimodular."""
    a = m.to_lists()
    nr, nc = m.rows, m.cols
    U = _identity(nr)
    V = _identity(nc)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, f):  # row dst += f * row src
        if f:
            a[dst] = [x + f * y for x, y in zip(a[dst], a[src])]
            U[dst] = [x + f * y for x, y in zip(U[dst], U[src])]

    def add_col(src, dst, f):  # col dst += f * col src
        if f:
            for row in a:
                row[dst] += f * row[src]
            for row in V:
                row[dst] += f * row[src]

    t = 0
    while t < min(nr, nc):
        # pick the nonzero entry of least absolute value in the remaining block
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            done = True
            for i in range(t + 1, nr):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    add_row(t, i, -q)
                    if a[i][t]:
                        done = False
            for j in range(t + 1, nc):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    add_col(t, j, -q)
                    if a[t][j]:
                        done = False
            if done:
                # divisibility against the rest of the block
                bad = next(((i, j) for i in range(t + 1, nr) for j in range(t + 1, nc)
                            if a[i][j] % a[t][t]), None)
                if bad is None:
                    break
                add_row(bad[0], t, 1)
                continue
            # move the smallest entry of row/col t into the pivot
            best = (t, t)
            for i in range(t, nr):
                if a[i][t] and abs(a[i][t]) < abs(a[best[0]][best[1]]):
                    best = (i, t)
            for j in range(t, nc):
                if a[t][j] and abs(a[t][j]) < abs(a[best[0]][best[1]]):
                    best = (t, j)
            swap_rows(t, best[0])
            swap_cols(t, best[1])
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    diag = [a[i][i] for i in range(min(nr, nc))]
    return diag, U, V


def smith_normal_form(m: IntMatrix) -> tuple[list[int], AbGroup]:
    """Invariant factors of m and the cokernel Z^rows / im(m)."""
    diag, _, _ = smith_with_transforms(m)
    nonzero = [d for d in diag if d]
    orders = [d for d in nonzero if d != 1] + [0] * (m.rows - len(nonzero))
    return diag, AbGroup(tuple(orders))


def integer_kernel(m: IntMatrix) -> list[list[int]]:
    """Z-basis of {x in Z^cols : m x = 0}."""
    diag, _, V = smith_with_transforms(m)
    rank = sum(1 for d in diag if d)
    return [[V[i][j] for i in range(m.cols)] for j in range(rank, m.cols)]


def express_in_lattice(basis: list[list[int]], vec: Sequence[int]) -> list[int]:
    """Coordinates of vec in the given Z-basis (which must contain it)."""
    if not basis:
        if any(vec):
            raise ValueError("vector not in lattice")
        return []
    B = IntMatrix.from_columns(len(vec), basis)
    diag, U, V = smith_with_transforms(B)
    y = [sum(U[i][k] * vec[k] for k in range(len(vec))) for i in range(len(vec))]
    z = []
    for i in range(len(basis)):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            if y[i]:
                raise ValueError("vector not in lattice")
            z.append(0)
        else:
            if y[i] % d:
                raise ValueError("vector not in lattice")
            z.append(y[i] // d)
    for i in range(len(basis), len(vec)):
        if y[i]:
            raise ValueError("vector not in lattice")
    return [sum(V[r][c] * z[c] for c in range(len(basis))) for r in range(len(basis))]


def _valuation(x: Fraction, p: int) -> int:
    if x == 0:
        raise ValueError("valuation of zero")
    v = 0
    n, d = x.numerator, x.denominator
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return v


def local_invariants(m: IntMatrix, p: int) -> tuple[list[int], int]:
    """Elementary divisors of m over the local ring Z_(p).

    Pivots are chosen by minimal p-adic valuation and division is done in
    Q with denominators prime to p.  Returns (exponents e_i of the nonzero
    divisors p^e_i, rank).  Independent of the integer Smith routine.
    """
    a = [[Fraction(x) for x in row] for row in m.to_lists()]
    nr, nc = m.rows, m.cols
    exps = []
    t = 0
    while t < min(nr, nc):
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                if a[i][j]:
                    v = _valuation(a[i][j], p)
                    if best is None or v < best[0]:
                        best = (v, i, j)
        if best is None:
            break
        v, bi, bj = best
        a[t], a[bi] = a[bi], a[t]
        for row in a:
            row[t], row[bj] = row[bj], row[t]
        piv = a[t][t]
        for i in range(t + 1, nr):
            if a[i][t]:
                f = a[i][t] / piv
                a[i] = [x - f * y for x, y in zip(a[i], a[t])]
        for j in range(t + 1, nc):
            if a[t][j]:
                f = a[t][j] / piv
                for row in a:
                    row[j] -= f * row[t]
        exps.append(v)
        t += 1
    return sorted(exps), len(exps)


def cokernel_p_local(m: IntMatrix, p: int) -> AbGroup:
    """p-local cokernel via the local elimination route."""
    exps, rank = local_invariants(m, p)
    orders = [p ** e for e in exps if e > 0] + [0] * (m.rows - rank)
    return AbGroup(tuple(orders))
