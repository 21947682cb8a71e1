"""Floating-point cross-check of the exact construction verdicts at sample
points, built independently from numpy matrices."""
from __future__ import annotations

import numpy as np

from .reps import build_Z
from .symbolic import VARS

XI = np.exp(2j * np.pi / 3)
PHI = {"a": np.array([[0, 1, 0], [0, 0, 1], [1, 0, 0]], dtype=complex),
       "b": np.diag([1, XI, XI ** 2])}
PSI = {
    0: {"a": XI * np.eye(3), "b": np.diag([XI, XI, 1])},
    1: {"a": XI * np.eye(3), "b": np.diag([XI, XI ** 2, XI ** 2])},
    2: {"a": XI * np.eye(3), "b": np.diag([XI ** 2, 1, 1])},
}
P = np.array([[1, XI, 1], [1, 1, XI], [XI, 1, 1]]) / np.sqrt(3)


def z_numeric(m: int, z: np.ndarray, eps: float, transposed: bool | None = None) -> np.ndarray:
    """Z_m at base point z, normalized on the 2x2 block."""
    if transposed is None:
        transposed = m == 1
    z1, z2, z3 = z
    B = np.array([[np.conj(z1) * z2, -z1 * np.conj(z3)], [np.conj(z1) * z3, z1 * np.conj(z2)]])
    if transposed:
        B = B.T.copy()
    B = B / np.sqrt(eps * (1 - eps))
    out = np.eye(3, dtype=complex)
    idx = [1, 2] if m == 1 else [0, 1]
    out[np.ix_(idx, idx)] = B
    return out


def sample_point(rng: np.random.Generator, eps: float) -> np.ndarray:
    """(z1, z2, z3) with |z2|^2 + |z3|^2 = eps and |z1|^2 = 1 - eps."""
    t = rng.uniform(0, 1)
    r2, r3 = np.sqrt(eps * t), np.sqrt(eps * (1 - t))
    ph = np.exp(2j * np.pi * rng.uniform(0, 1, 3))
    return np.array([np.sqrt(1 - eps) * ph[0], r2 * ph[1], r3 * ph[2]])


def decompose(x: np.ndarray, m: int):
    """Recover (k, z) with x = P^(m-1) phi(a^k) z and |z1| the largest."""
    y = P.conj().T @ x if m == 2 else x
    # phi(a) sends e_1 to e_3, so phi(a^k) e_1 = e_(1-k mod 3)
    k = (-int(np.argmax(np.abs(y)))) % 3
    z =np.linalg.matrix_power(PHI["a"], k).conj().T @ y
    return k, z


def _act(g: str, z_phase: complex):
    if g == "z":
        return z_phase * np.eye(3), {m: np.eye(3) for m in range(3)}
    return PHI[g], {m: PSI[m][g] for m in range(3)}


def equivariance_residual(g: str, m: int, k: int, z: np.ndarray, eps: float,
                          circle: complex = 1.0, transposed: bool | None = None) -> float:
    """max |Z_m(z') psi_0(g) - psi_m(g) Z_m(z)| with z' read off from phi(g) x."""
    base = P if m == 2 else np.eye(3)
    x = base @ np.linalg.matrix_power(PHI["a"], k) @ z
    phi_g, psi_g = _act(g, circle)
    _, z_new = decompose(phi_g @ x, m)
    lhs = z_numeric(m, z_new, eps, transposed) @ psi_g[0]
    rhs = psi_g[m] @ z_numeric(m, z, eps, transposed)
    return float(np.max(np.abs(lhs - rhs)))


def symbolic_vs_numeric(m: int, z: np.ndarray, eps: float, circle: complex) -> float:
    """Evaluate the exact Z_m entries at the point and compare with numpy."""
    Z = build_Z(m).mat
    vals = dict(zip(VARS, (z[0], np.conj(z[0]), z[1], np.conj(z[1]), z[2], np.conj(z[2]),
                           circle, np.conj(circle), eps)))
    exact = np.array(Z.evaluate(vals))
    num = z_numeric(m, z, eps)
    scale = np.ones((3, 3))
    idx = [1, 2] if m == 1 else [0, 1]
    scale[np.ix_(idx, idx)] = np.sqrt(eps * (1 - eps))
    return float(np.max(np.abs(exact - num * scale)))


def cross_check(eps: float = 0.125, points: int = 100, seed: int = 0) -> dict:
    """Worst residuals over random points for every identity the exact
    pipeline proves."""
    rng = np.random.default_rng(seed)
    worst = {"p_conjugation": 0.0, "unitary": 0.0, "det": 0.0, "equivariance": 0.0,
             "symbolic_agreement": 0.0}
    worst["p_conjugation"] = max(
        float(np.max(np.abs(P @ PHI["a"] @ P.conj().T - PHI["a"]))),
        float(np.max(np.abs(P @ PHI["b"] @ P.conj().T - PHI["a"] @ PHI["a"] @ PHI["b"]))),
        float(np.max(np.abs(P @ P.conj().T - np.eye(3)))))
    for _ in range(points):
        z = sample_point(rng, eps)
        circle = np.exp(2j * np.pi * rng.uniform(0, 1))
        for m in (1, 2):
            Zm = z_numeric(m, z, eps)
            worst["unitary"] = max(worst["unitary"], float(np.max(np.abs(Zm @ Zm.conj().T - np.eye(3)))))
            worst["det"] = max(worst["det"], abs(np.linalg.det(Zm) - 1))
            worst["symbolic_agreement"] = max(worst["symbolic_agreement"], symbolic_vs_numeric(m, z, eps, circle))
            for g in "abz":
                for k in range(3):
                    worst["equivariance"] = max(worst["equivariance"],
                                                equivariance_residual(g, m, k, z, eps, circle))
    return {"eps": eps, "points": points, "worst": worst,
            "ok": all(v < 1e-10 for v in worst.values())}


def intersection_witness(eps: float) -> dict:
    """The normalized midpoint of e_1 and the phase-aligned P e_1, with its
    margins max|v_k|^2 - (1-eps) and max|(P^-1 v)_l|^2 - (1-eps); both are
    nonnegative exactly when eps >= (1 - 1/sqrt(3))/2."""
    u2 = P[:, 0] / (P[0, 0] / abs(P[0, 0]))
    v = np.array([1, 0, 0], dtype=complex) + u2
    v = v / np.linalg.norm(v)
    m1 = float(np.max(np.abs(v) ** 2) - (1 - eps))
    m2 = float(np.max(np.abs(P.conj().T @ v) ** 2) - (1 - eps))
    return {"point": [complex(x) for x in v], "margin_U1": m1, "margin_U2": m2}
