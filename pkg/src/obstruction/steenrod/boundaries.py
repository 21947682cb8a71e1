"""Hand-stated boundary formulas for the sphere and MD_t resolutions, and
their verification against a computed minimal resolution.

A formula is a list of (coefficient, word, generator internal degree); it
is accepted when it is a cycle that is not decomposable, i.e. a legitimate
choice of boundary for the new generator.  Raw coefficients of the
computed resolution are never compared.
"""
from __future__ import annotations

from .algebra import parse_word, word_degree
from .resolution import Resolution, check_boundary_formula, find_generator


def sphere_claims(p: int) -> list:
    """(label, filtration, internal degree, terms) for the sphere.

    The b P1 coefficient in beta_(4p-5) is 1/2 mod p: P1 b P1 = b P2 + P2 b
    and P1 P1 = 2 P2 force it.  At p = 3 this is 2."""
    q = 2 * (p - 1)
    return [
        ("alpha_0", 1, 1, [(1, "b", 0)]),
        (f"alpha_{2 * p - 3}", 1, q, [(1, "P1", 0)]),
        ("beta_0", 2, 2, [(1, "b", 1)]),
        (f"beta_{4 * p - 5}", 2, 4 * p - 3,
         [(1, "P2", 1), (-1, "P1b", q), ((p + 1) // 2, "bP1", q)]),
        ("w_3", 3, 3, [(1, "b", 2)]),
    ]


def mdt_claims(p: int) -> list:
    """Filtration-one formulas for MD_t, with the generator in the
    (k-p+2) bP1 - (k-p+1) P1 b family read at internal degree 2(k-p+1)-1."""
    q = 2 * (p - 1)
    out = [
        ("alpha_0", 1, 1, [(1, "b", 0)]),
        (f"alpha_{2 * p - 3}", 1, q, [(1, "P1", 0), (-1, "b", 2 * p - 3)]),
    ]
    for k in range(p, 2 * p - 1):
        j = k - p + 1
        out.append((f"alpha_{2 * k - 1}", 1, 2 * k,
                    [(k - p + 2, "bP1", 2 * j - 1), (-(k - p + 1), "P1b", 2 * j - 1)]))
    out.append((f"alpha_{4 * p - 4}", 1, 4 * p - 3, [(1, "P2", 1)]))
    return out


def literal_index_reading(p: int) -> list:
    """The same family with the generator read at internal degree k-p+1;
    returns (label, homogeneous?) since only k = p gives a consistent degree."""
    out = []
    for k in range(p, 2 * p - 1):
        d = k - p + 1
        out.append((f"alpha_{2 * k - 1}", d + 1 + 2 * (p - 1) == 2 * k))
    return out


def verify_claims(res: Resolution, claims: list) -> list:
    """(label, verdict dict) per claim; a missing generator degree or a
    generator not present in the resolution gives valid False."""
    out = []
    for label, s, t, terms in claims:
        try:
            sparse = {}
            for c, w, d in terms:
                word = parse_word(w)
                if word_degree(word, res.p) + d != t:
                    raise ValueError("degree mismatch")
                key = (word, find_generator(res, s - 1, d))
                sparse[key] = (sparse.get(key, 0) + c) % res.p
            verdict = check_boundary_formula(res, s, t, sparse)
            verdict["generator_present"] = any(dd == t for dd in res.slices[s].degrees)
        except (KeyError, ValueError) as exc:
            verdict = {"valid": False, "error": str(exc)}
        out.append((label, verdict))
    return out
