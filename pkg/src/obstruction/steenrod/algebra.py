"""The mod-p Steenrod algebra for odd p on the admissible basis.

A word is a tuple of tokens: 0 stands for the Bockstein and s >= 1 for the
reduced power P^s.  Words are reduced to admissible form with the Adem
relations; admissible words form an F_p-basis.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb

from ..exact_algebra import is_prime
from ..exact_algebra.errors import NonPrimeModulus

BETA = 0


def _check(p: int) -> None:
    if p < 3 or not is_prime(p):
        raise NonPrimeModulus(f"odd prime required, got {p}")


def token_degree(tok: int, p: int) -> int:
    return 1 if tok == BETA else 2 * tok * (p - 1)


def word_degree(word: tuple, p: int) -> int:
    return sum(token_degree(t, p) for t in word)


def format_word(word: tuple) -> str:
    if not word:
        return "1"
    return "".join("b" if t == BETA else f"P{t}" for t in word)


def parse_word(text: str) -> tuple:
    text = text.strip()
    if text in ("", "1"):
        return ()
    out = []
    i = 0
    while i < len(text):
        if text[i] in "bB":
            out.append(BETA)
            i += 1
        elif text[i] == "P":
            j = i + 1
            while j < len(text) and text[j].isdigit():
                j += 1
            out.append(int(text[i + 1:j]))
            i = j
        else:
            raise ValueError(f"cannot parse Steenrod word {text!r}")
    return tuple(out)


def _binom(n: int, k: int) -> int:
    if n < 0 or k < 0 or k > n:
        return 0
    return comb(n, k)


def is_admissible(word: tuple, p: int) -> bool:
    return _first_bad(word, p, last=False) is None and all(
        not (a == BETA and b == BETA) for a, b in zip(word, word[1:]))


def _first_bad(word: tuple, p: int, last: bool):
    """Position (i, j) of an inadmissible pair of powers P^a at i and P^b at j
    (j = i+1, or i+2 with a Bockstein between)."""
    spots = []
    for i, a in enumerate(word):
        if a == BETA:
            continue
        if i + 1 < len(word) and word[i + 1] != BETA:
            if a < p * word[i + 1]:
                spots.append((i, i + 1))
        elif i + 2 < len(word) and word[i + 1] == BETA and word[i + 2] != BETA:
            if a <= p * word[i + 2]:
                spots.append((i, i + 2))
    if not spots:
        return None
    return spots[-1] if last else spots[0]


def adem(a: int, b: int, p: int, with_beta: bool) -> dict:
    """Right-hand side of the Adem relation for P^a P^b (a < pb) or
    P^a b P^b (a <= pb), as {word: coefficient mod p}."""
    out: dict = {}

    def add(word, c):
        word = tuple(t for t in word if t != -1)
        c %= p
        if c:
            out[word] = (out.get(word, 0) + c) % p

    def P(s):
        return s if s > 0 else -1  # P^0 drops out

    if not with_beta:
        for t in range(a // p + 1):
            add((P(a + b - t), P(t)), (-1) ** (a + t) * _binom((p - 1) * (b - t) - 1, a - p * t))
    else:
        for t in range(a // p + 1):
            add((BETA, P(a + b - t), P(t)), (-1) ** (a + t) * _binom((p - 1) * (b - t), a - p * t))
        for t in range((a - 1) // p + 1 if a >= 1 else 0):
            add((P(a + b - t), BETA, P(t)), (-1) ** (a + t + 1) * _binom((p - 1) * (b - t) - 1, a - p * t - 1))
    return {w: c for w, c in out.items() if c}


@lru_cache(maxsize=None)
def _reduce(word: tuple, p: int, last: bool) -> tuple:
    for i in range(len(word) - 1):
        if word[i] == BETA and word[i + 1] == BETA:
            return ()
    spot = _first_bad(word, p, last)
    if spot is None:
        return ((word, 1),)
    i, j = spot
    a, b = word[i], word[j]
    rel = adem(a, b, p, with_beta=(j == i + 2))
    out: dict = {}
    for w, c in rel.items():
        for ww, cc in _reduce(word[:i] + w + word[j + 1:], p, last):
            out[ww] = (out.get(ww, 0) + c * cc) % p
    return tuple((w, c) for w, c in sorted(out.items()) if c)


def adem_reduce(word, p: int, order: str = "left") -> dict:
    """Admissible normal form of a word; order picks which inadmissible
    pair is rewritten first ("left" or "right")."""
    _check(p)
    if isinstance(word, str):
        word = parse_word(word)
    word = tuple(t for t in word if t != -1)
    if any(t < 0 for t in word):
        raise ValueError("negative power")
    return dict(_reduce(tuple(word), p, order == "right"))


@lru_cache(maxsize=None)
def admissible_basis(p: int, degree: int) -> tuple:
    """All admissible words of the given degree."""
    _check(p)
    q = 2 * (p - 1)

    def tail(rem: int, bound):
        if rem == 0:
            yield ()
            return
        top = rem // q if bound is None else min(bound, rem // q)
        for s in range(1, top + 1):
            for e in (0, 1):
                r = rem - s * q - e
                if r < 0:
                    continue
                nb = (s - e) // p
                if r == 0:
                    yield (s,) + ((BETA,) if e else ())
                elif nb >= 1:
                    for t in tail(r, nb):
                        yield (s,) + ((BETA,) if e else ()) + t

    out = []
    for e0 in (0, 1):
        for t in tail(degree - e0, None):
            out.append(((BETA,) if e0 else ()) + t)
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def multiply_words(a: tuple, b: tuple, p: int) -> tuple:
    return tuple(adem_reduce(a + b, p).items())


@dataclass(frozen=True)
class AdmissibleMonomial:
    word: tuple
    p: int

    def __post_init__(self):
        if not is_admissible(self.word, self.p):
            raise ValueError(f"{format_word(self.word)} is not admissible")

    @property
    def degree(self) -> int:
        return word_degree(self.word, self.p)

    def __str__(self):
        return format_word(self.word)


class SteenrodElement:
    """F_p-combination of admissible words of one degree."""

    __slots__ = ("p", "terms")

    def __init__(self, p: int, terms: dict | None = None):
        self.p = p
        clean = {}
        for w, c in (terms or {}).items():
            for ww, cc in adem_reduce(w, p).items():
                clean[ww] = (clean.get(ww, 0) + c * cc) % p
        self.terms = {w: c for w, c in clean.items() if c}
        degs = {word_degree(w, p) for w in self.terms}
        if len(degs) > 1:
            raise ValueError("inhomogeneous Steenrod element")

    @classmethod
    def of(cls, p: int, text: str) -> SteenrodElement:
        return cls(p, {parse_word(text): 1})

    @property
    def degree(self):
        return word_degree(next(iter(self.terms)), self.p) if self.terms else None

    def __add__(self, other):
        t = dict(self.terms)
        for w, c in other.terms.items():
            t[w] = t.get(w, 0) + c
        return SteenrodElement(self.p, t)

    def __mul__(self, other):
        if isinstance(other, int):
            return SteenrodElement(self.p, {w: c * other for w, c in self.terms.items()})
        out: dict = {}
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                for w, c in multiply_words(a, b, self.p):
                    out[w] = out.get(w, 0) + ca * cb * c
        return SteenrodElement(self.p, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, SteenrodElement) and self.p == other.p and self.terms == other.terms

    def __hash__(self):
        return hash((self.p, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w, c in sorted(self.terms.items()):
            parts.append(format_word(w) if c == 1 else f"{c}{format_word(w)}")
        return " + ".join(parts)

    __repr__ = __str__


def adem_pairs(p: int, max_degree: int) -> list:
    """Every inadmissible length-two (or P b P) word up to max_degree, for
    operator checks of the Adem relations."""
    out = [(BETA, BETA)]
    q = 2 * (p - 1)
    for b in range(1, max_degree // q + 1):
        for a in range(1, max_degree // q + 1):
            if (a + b) * q <= max_degree and a < p * b:
                out.append((a, b))
            if (a + b) * q + 1 <= max_degree and a <= p * b:
                out.append((a, BETA, b))
    return out
