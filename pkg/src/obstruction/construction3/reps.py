"""The four 3-dimensional representations of the group generated by a, b
and the circle, the mixing matrix P and the gluing matrices Z_1, Z_2."""
from __future__ import annotations

from .symbolic import Mat3, ScaledMat, SymScalar, xi

GENERATORS = ("a", "b", "z")


def _phi(letter: str) -> Mat3:
    if letter == "a":
        return Mat3([[0, 1, 0], [0, 0, 1], [1, 0, 0]])
    if letter == "b":
        return Mat3.diag([1, xi(1), xi(2)])
    return Mat3.diag([SymScalar.var("z")] * 3)


def _psi(i: int, letter: str) -> Mat3:
    if letter == "z":
        return Mat3.identity()
    if letter == "a":
        return Mat3.diag([xi(1)] * 3)
    return Mat3.diag({0: [xi(1), xi(1), 1], 1: [xi(1), xi(2), xi(2)], 2: [xi(2), 1, 1]}[i])


REPS = ("phi", "psi0", "psi1", "psi2")


def generator_matrix(rep: str, letter: str) -> Mat3:
    """Matrix of a generator; an upper-case letter is the inverse."""
    inverse = letter.isupper()
    g = letter.lower()
    m = _phi(g) if rep == "phi" else _psi(int(rep[-1]), g)
    return m.dagger() if inverse else m  # every generator matrix is unitary


def rep_matrix(rep: str, word) -> Mat3:
    """Product of generator matrices along a word such as "aab" or "bZ"."""
    if rep not in REPS:
        raise ValueError(f"unknown representation {rep!r}")
    out = Mat3.identity()
    for letter in word:
        out = out * generator_matrix(rep, letter)
    return out


def word_for(i: int, j: int) -> str:
    return "a" * (i % 3) + "b" * (j % 3)


def p_matrix() -> Mat3:
    """sqrt(3) * P; the scalar cancels in every conjugation, and P P^dagger
    = I becomes M M^dagger = 3 I."""
    w = xi(1)
    return Mat3([[1, w, 1], [1, 1, w], [w, 1, 1]])


def p_inverse_times3() -> Mat3:
    return p_matrix().dagger()


def scale() -> SymScalar:
    e = SymScalar.var("eps")
    return e * (1 - e)


def z_block(transposed: bool = False) -> list:
    """The nontrivial 2x2 block; ``transposed`` swaps the off-diagonal
    entries."""
    z1, zb1, z2, zb2, z3, zb3 = (SymScalar.var(v) for v in ("z1", "zb1", "z2", "zb2", "z3", "zb3"))
    B = [[zb1 * z2, -(z1 * zb3)], [zb1 * z3, z1 * zb2]]
    if transposed:
        B = [[B[0][0], B[1][0]], [B[0][1], B[1][1]]]
    return B


def build_Z(m: int, transposed: bool | None = None) -> ScaledMat:
    """Z_m with the 1/sqrt(eps(1-eps)) normalization on the 2x2 block only.

    The default convention is the one that makes the b-equivariance chain
    exact: transposed block for m = 1, as displayed for m = 2.
    """
    if transposed is None:
        transposed = m == 1
    B = z_block(transposed)
    if m == 1:
        rows = [[1, 0, 0], [0, B[0][0], B[0][1]], [0, B[1][0], B[1][1]]]
        block = (1, 2)
    elif m == 2:
        rows = [[B[0][0], B[0][1], 0], [B[1][0], B[1][1], 0], [0, 0, 1]]
        block = (0, 1)
    else:
        raise ValueError("m must be 1 or 2")
    return ScaledMat(Mat3(rows), 1, scale(), block)


def whole_matrix_det_exponent() -> str:
    """Why the prefactor cannot apply to all of Z_m: det would be
    (eps(1-eps))^(1 - 3/2)."""
    return "(eps(1-eps))^(-1/2)"
