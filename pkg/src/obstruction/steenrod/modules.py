"""Finite modules over the Steenrod algebra given by action matrices, and
the Thom-spectrum modules U * H^*(BG; F_p) for G = S1, D_t, H_t."""
from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import BETA, _check, adem_pairs, adem_reduce, format_word, word_degree


@dataclass
class ModuleWithAction:
    """Graded F_p-module with a basis per degree through ``cap``.

    ``actions[(op, d)]`` lists, for each basis element of degree d, the image
    of op (0 for the Bockstein, s for P^s) as a dense vector in degree
    d + |op|.  Missing entries act as zero (everything above cap is zero).
    """

    p: int
    name: str
    cap: int
    basis: dict = field(default_factory=dict)  # degree -> [names]
    actions: dict = field(default_factory=dict)
    monomials: dict = field(default_factory=dict)  # degree -> [(e, a, b)] for Thom modules

    def dim(self, d: int) -> int:
        return len(self.basis.get(d, []))

    def degrees(self) -> list:
        return sorted(d for d in self.basis if self.basis[d])

    def index(self, name: str) -> tuple:
        for d, names in self.basis.items():
            if name in names:
                return d, names.index(name)
        raise KeyError(name)

    def vector(self, name: str) -> tuple:
        d, i = self.index(name)
        v = [0] * self.dim(d)
        v[i] = 1
        return d, v

    def act_token(self, tok: int, d: int, vec: list) -> tuple:
        d2 = d + (1 if tok == BETA else 2 * tok * (self.p - 1))
        out = [0] * self.dim(d2)
        cols = self.actions.get((tok, d))
        if cols is None or not out:
            return d2, out
        for c, col in zip(vec, cols):
            if c:
                for i, x in enumerate(col):
                    out[i] = (out[i] + c * x) % self.p
        return d2, out

    def act_word(self, word: tuple, d: int, vec: list) -> tuple:
        for tok in reversed(word):
            d, vec = self.act_token(tok, d, vec)
        return d, vec

    def act(self, element, d: int, vec: list) -> tuple:
        """Apply a SteenrodElement or a {word: coef} mapping."""
        terms = element.terms if hasattr(element, "terms") else element
        d_out, out = None, None
        for w, c in terms.items():
            d2, v = self.act_word(w, d, vec)
            if out is None:
                d_out, out = d2, [0] * len(v)
            out = [(x + c * y) % self.p for x, y in zip(out, v)]
        if out is None:
            return d, [0] * self.dim(d)
        return d_out, out

    def format(self, d: int, vec: list) -> str:
        terms = []
        for c, nm in zip(vec, self.basis.get(d, [])):
            if c:
                terms.append(nm if c == 1 else f"{c}{nm}")
        return " + ".join(terms) if terms else "0"

    def adem_violations(self, max_degree: int | None = None) -> list:
        """Adem relations (and b b = 0) as operator identities on the basis."""
        max_degree = self.cap if max_degree is None else max_degree
        bad = []
        for lhs in adem_pairs(self.p, max_degree):
            rhs = adem_reduce(lhs, self.p)
            k = word_degree(lhs, self.p)
            for d in self.degrees():
                if d + k > self.cap:
                    continue
                for i in range(self.dim(d)):
                    e = [int(j == i) for j in range(self.dim(d))]
                    _, a = self.act_word(lhs, d, e)
                    _, b = self.act(rhs, d, e) if rhs else (None, [0] * len(a))
                    if [x % self.p for x in a] != [x % self.p for x in b]:
                        bad.append((format_word(lhs), self.basis[d][i]))
        return bad


def sphere_module(p: int, cap: int = 0) -> ModuleWithAction:
    _check(p)
    return ModuleWithAction(p, "S", cap, {0: ["iota"]}, {})


# ---- polynomial algebra F_p[tau, v] (x) Lambda[u] ---------------------------
# monomials are (e, a, b) for u^e v^a tau^b, degree e + 2a + 2b

def _mdeg(m) -> int:
    return m[0] + 2 * m[1] + 2 * m[2]


def _pmul(x: dict, y: dict, p: int, cap: int) -> dict:
    out: dict = {}
    for m1, c1 in x.items():
        for m2, c2 in y.items():
            if m1[0] and m2[0]:
                continue
            m = (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2])
            if _mdeg(m) > cap:
                continue
            out[m] = (out.get(m, 0) + c1 * c2) % p
    return {m: c for m, c in out.items() if c}


def _ppow(x: dict, n: int, p: int, cap: int) -> dict:
    out = {(0, 0, 0): 1}
    for _ in range(n):
        out = _pmul(out, x, p, cap)
    return out


def _total_power(m: tuple, p: int, cap: int) -> dict:
    """P(u^e v^a tau^b) = u^e (v + v^p)^a (tau + tau^p)^b."""
    e, a, b = m
    pv = {(0, 1, 0): 1, (0, p, 0): 1}
    pt = {(0, 0, 1): 1, (0, 0, p): 1}
    out = {(e, 0, 0): 1}
    out = _pmul(out, _ppow(pv, a, p, cap), p, cap)
    return _pmul(out, _ppow(pt, b, p, cap), p, cap)


def _inverse_series(x: dict, p: int, cap: int) -> dict:
    """1/x for x with constant term 1, truncated at cap."""
    one = (0, 0, 0)
    if x.get(one) != 1:
        raise ValueError("constant term must be 1")
    y = {one: 1}
    rest = {m: (-c) % p for m, c in x.items() if m != one}
    term = {one: 1}
    for _ in range(cap):
        term = _pmul(term, rest, p, cap)
        if not term:
            break
        for m, c in term.items():
            y[m] = (y.get(m, 0) + c) % p
    return {m: c for m, c in y.items() if c}


def chern_roots(group: str, p: int, t: int = 1) -> list:
    """Mod-p first Chern classes of the lines of psi-hat restricted to G,
    as polynomials in (u, v, tau)."""
    v = lambda k: {(0, 1, 0): k % p} if k % p else {}
    tau = {(0, 0, 1): 1}
    if t < p:
        a_img, b_img = v(1), v(t)
    else:
        a_img, b_img = v(0), v(1)
    if group == "Ht":
        psi = [{**tau, **v(k)} for k in range(p)]
    elif group == "Dt":
        psi = [v(k) for k in range(p)]
    elif group == "S1":
        psi = [dict(tau) for _ in range(p)]
        a_img, b_img = {}, {}
    else:
        raise ValueError(f"unknown group {group!r}")
    return psi + [a_img] * p + [b_img] * p


def thom_class_series(group: str, p: int, t: int = 1, cap: int | None = None) -> dict:
    """w with P(U) = U w: the inverse of prod (1 + x^(p-1)) over the Chern
    roots, since the bundle is the stable inverse of psi-hat."""
    cap = 4 * p - 3 if cap is None else cap
    prod = {(0, 0, 0): 1}
    for x in chern_roots(group, p, t):
        f = {(0, 0, 0): 1}
        for m, c in _ppow(x, p - 1, p, cap).items():
            f[m] = (f.get(m, 0) + c) % p
        prod = _pmul(prod, f, p, cap)
    return _inverse_series(prod, p, cap)


def _name(m: tuple) -> str:
    e, a, b = m
    parts = ["U"]
    if e:
        parts.append("u")
    if a:
        parts.append("v" if a == 1 else f"v^{a}")
    if b:
        parts.append("tb" if b == 1 else f"tb^{b}")
    return "".join(parts[:1]) + "".join(parts[1:])


def thom_module(group: str, p: int, t: int = 1, cap: int | None = None) -> ModuleWithAction:
    """U * H^*(BG; F_p) truncated above cap (default 4p-3).

    G = "S1" (generator tau), "Dt" (u, v with b u = v) or "Ht" (all three).
    Actions: b(U m) = U b(m), P^k(U m) = sum_i w_i P^(k-i)(m) by the Cartan
    formula with P(U) = U w.
    """
    _check(p)
    cap = 4 * p - 3 if cap is None else cap
    gens = {"S1": (False, False, True), "Dt": (True, True, False), "Ht": (True, True, True)}[group]
    has_u, has_v, has_t = gens
    monos = []
    for e in (0, 1) if has_u else (0,):
        for a in range(cap // 2 + 1 if has_v else 1):
            for b in range(cap // 2 + 1 if has_t else 1):
                m = (e, a, b)
                if _mdeg(m) <= cap:
                    monos.append(m)
    basis: dict = {}
    for m in sorted(monos, key=lambda m: (_mdeg(m), m[2], -m[0])):
        basis.setdefault(_mdeg(m), []).append(m)
    w = thom_class_series(group, p, t, cap)
    actions: dict = {}
    q = 2 * (p - 1)
    for d, ms in basis.items():
        # Bockstein
        tgt = basis.get(d + 1, [])
        if tgt:
            cols = []
            for m in ms:
                col = [0] * len(tgt)
                if m[0]:
                    img = (0, m[1] + 1, m[2])
                    if img in tgt:
                        col[tgt.index(img)] = 1
                cols.append(col)
            actions[(BETA, d)] = cols
        for s in range(1, (cap - d) // q + 1):
            tgt = basis.get(d + s * q, [])
            if not tgt:
                continue
            cols = []
            for m in ms:
                total = _pmul(w, _total_power(m, p, cap), p, cap)
                col = [0] * len(tgt)
                for mm, c in total.items():
                    if _mdeg(mm) == d + s * q:
                        col[tgt.index(mm)] = (col[tgt.index(mm)] + c) % p
                cols.append(col)
            actions[(s, d)] = cols
    named = {d: [_name(m) for m in ms] for d, ms in basis.items()}
    label = f"M{group}" + (f"[t={t}]" if group != "S1" else "")
    return ModuleWithAction(p, label, cap, named, actions, {d: list(ms) for d, ms in basis.items()})


def cartan_violations(m: ModuleWithAction, group: str, t: int = 1) -> list:
    """Compare P^1 and b on U*m against the Cartan formula evaluated with
    the generator values (P^1 U = U v^(p-1) or 0, P^1 v = v^p,
    P^1 u = 0, P^1 tau = tau^p, b u = v)."""
    p = m.p
    bad = []
    pu = {(0, p - 1, 0): 1} if group in ("Dt", "Ht") else {}
    for d in m.degrees():
        for i, nm in enumerate(m.basis[d]):
            mono = m.monomials[d][i]
            e, a, b = mono
            # P^1(U m) = P^1(U) m + U P^1(m)
            expect: dict = {}
            for mm, c in _pmul(pu, {mono: 1}, p, m.cap).items():
                expect[mm] = (expect.get(mm, 0) + c) % p
            if a:
                mm = (e, a + p - 1, b)
                if _mdeg(mm) <= m.cap:
                    expect[mm] = (expect.get(mm, 0) + a) % p
            if b:
                mm = (e, a, b + p - 1)
                if _mdeg(mm) <= m.cap:
                    expect[mm] = (expect.get(mm, 0) + b) % p
            vec = [int(j == i) for j in range(m.dim(d))]
            d2, got = m.act_token(1, d, vec)
            want = [0] * len(got)
            for mm, c in expect.items():
                if c:
                    want[m.basis[d2].index(_name(mm))] = c
            if got != want:
                bad.append(("P1", nm))
    return bad
