"""Restriction, transfer, reduction and Bockstein maps between the curated
rings, driven by the generator-image table in ``maps_p<p>.txt``."""
from __future__ import annotations

from dataclasses import dataclass

from .ring import GradedElement, RingError, TruncatedRing
from .tables import KINDS, load_maps, load_ring, ring_ids


class UnknownRestriction(RingError):
    pass


class UnknownTransfer(RingError):
    pass


class UnknownBocksteinImage(RingError):
    pass


def kind_of(ring: TruncatedRing) -> str:
    for kind, rid in ring_ids(ring.p).items():
        if rid == ring.rid:
            return kind
    raise KeyError(ring.rid)


def _target_kind(src: TruncatedRing, base: str) -> str:
    return base + "/p" if src.coeff == "Fp" else base


def _entries(kind: str, src: str, dst: str, t) -> list:
    p = int(src[src.index("(") + 1:].split(";")[0].rstrip(")"))
    tt = "" if t is None else str(t)
    return [(lhs, rhs) for k, s, d, et, lhs, rhs in load_maps(p)
            if k == kind and s == src and d == dst and (et in (tt, "*") or (et == "" and t is None))]


def _monomial_map(x: GradedElement, dst: TruncatedRing, table: list, err) -> GradedElement:
    src = x.ring
    mono_table = {}
    gen_table = {}
    for lhs, rhs in table:
        m = src.parse_mono(lhs)
        img = dst.parse(rhs)
        if sum(m) == 1:
            gen_table[m.index(1)] = img
        mono_table[m] = img
    out = dst.element()
    for m, c in x.terms.items():
        if m in mono_table:
            out = out + mono_table[m] * c
            continue
        img = dst.unit()
        for i, e in enumerate(m):
            if not e:
                continue
            if i not in gen_table:
                raise err(f"no image of {src.gens[i][0]} under {src.rid} -> {dst.rid}")
            for _ in range(e):
                img = img * gen_table[i]
        out = out + img * c
    return out


def restrict(x: GradedElement, to: str, t: int | None = None) -> GradedElement:
    """Restrict along an inclusion; ``to`` is "BHt" or "BS1" (coefficients follow x)."""
    src = x.ring
    dst = load_ring(_target_kind(src, to), src.p)
    if to == "BHt" and t is None:
        raise ValueError("restriction to BHt needs t")
    table = _entries("restrict", src.rid, dst.rid, t if to == "BHt" else None)
    if not table:
        raise UnknownRestriction(f"no restriction table {src.rid} -> {dst.rid}")
    return _monomial_map(x, dst, table, UnknownRestriction)


COVERINGS = {"BHt->BGt": ("BHt", "BGt"), "BS1->BHt": ("BS1", "BHt"), "BS1->BGt": ("BS1", "BGt")}


def transfer_apply(x: GradedElement, covering: str, t: int | None = None) -> GradedElement:
    """Transfer along a finite covering; linear, tabled on monomials only."""
    src_base, dst_base = COVERINGS[covering]
    src = x.ring
    if kind_of(src).split("/")[0] != src_base:
        raise ValueError(f"{src.rid} is not the source of {covering}")
    dst = load_ring(_target_kind(src, dst_base), src.p)
    table = {src.parse_mono(lhs): dst.parse(rhs)
             for lhs, rhs in _entries("transfer", src.rid, dst.rid, t)}
    out = dst.element()
    for m, c in x.terms.items():
        if m not in table:
            raise UnknownTransfer(f"transfer of {src.format_mono(m)} along {covering} is not tabled")
        out = out + table[m] * c
    return out


def reduce_mod_p(x: GradedElement) -> GradedElement:
    """The reduction pi_* from integral to mod-p cohomology."""
    src = x.ring
    if src.coeff != "Z":
        raise ValueError("reduction starts from an integral ring")
    dst = load_ring(kind_of(src) + "/p", src.p)
    return _monomial_map(x, dst, _entries("reduce", src.rid, dst.rid, None), UnknownBocksteinImage)


def integral_bockstein(x: GradedElement) -> GradedElement:
    """delta_p from mod-p to integral cohomology.

    A basis monomial with one odd generator g factors as (reduction of an
    integral class A) * g, and delta(A g) = A delta(g).  Even monomials are
    reductions of integral classes, so delta kills them.
    """
    src = x.ring
    if src.coeff != "Fp":
        raise ValueError("Bockstein starts from a mod-p ring")
    dst = load_ring(kind_of(src).split("/")[0], src.p)
    odd_images = {src.parse_mono(l).index(1): dst.parse(r)
                  for l, r in _entries("bockstein", src.rid, dst.rid, None)}
    lifts = {src.parse_mono(r).index(1): dst.parse(l)
             for l, r in _entries("reduce", dst.rid, src.rid, None)}
    out = dst.element()
    for m, c in x.terms.items():
        odd = [i for i, e in enumerate(m) if e and src.gens[i][1] % 2]
        if not odd:
            continue
        if len(odd) > 1 or odd[0] not in odd_images:
            raise UnknownBocksteinImage(f"no Bockstein image for {src.format_mono(m)}")
        img = odd_images[odd[0]]
        for i, e in enumerate(m):
            if i == odd[0] or not e:
                continue
            if i not in lifts:
                raise UnknownBocksteinImage(f"no integral lift of {src.gens[i][0]}")
            for _ in range(e):
                img = img * lifts[i]
        out = out + img * c
    return out


def bockstein_reduce(x: GradedElement, direction: str) -> GradedElement:
    if direction in ("delta", "delta_p"):
        return integral_bockstein(x)
    if direction in ("pi", "pi_*"):
        return reduce_mod_p(x)
    raise ValueError(f"unknown direction {direction!r}")


def mod_p_bockstein(x: GradedElement) -> GradedElement:
    """beta = pi_* o delta_p on a mod-p ring."""
    return reduce_mod_p(integral_bockstein(x))


def projection_formula_instances(p: int) -> list:
    """tr(Res(a) * b) against a * tr(b) for every tabled transfer source b
    and every basis monomial a of the target for which both sides are
    defined.  Returns (covering, t, a, b, ok) records."""
    out = []
    covering_of = {("BHt", "BGt"): "BHt->BGt", ("BS1", "BHt"): "BS1->BHt", ("BS1", "BGt"): "BS1->BGt"}
    for kind, src_id, dst_id, t, lhs, _ in load_maps(p):
        if kind != "transfer":
            continue
        src = next(load_ring(k, p) for k, rid in ring_ids(p).items() if rid == src_id)
        dst = next(load_ring(k, p) for k, rid in ring_ids(p).items() if rid == dst_id)
        covering = covering_of[(kind_of(src).split("/")[0], kind_of(dst).split("/")[0])]
        ts = list(range(p + 1)) if t == "*" else ([int(t)] if t else [None])
        b = src.parse(lhs)
        for tt in ts:
            tr_b = transfer_apply(b, covering, tt)
            for d in range(dst.cap + 1):
                for m in dst.ring_basis(d):
                    a = dst.element({m: 1})
                    try:
                        res = restrict(a, covering.split("->")[0], tt)
                        left = transfer_apply(res * b, covering, tt)
                        right = a * tr_b
                    except (UnknownTransfer, UnknownRestriction, RingError):
                        continue
                    out.append((covering, tt, dst.format_mono(m), lhs, left == right))
    return out


# ---- formal classes in degree 4p-3 of the total spaces ---------------------

@dataclass(frozen=True)
class FormalClass:
    """A named class z ∪ pi^*(c) with its E-infinity representative data."""

    name: str
    space: str  # "G", "H" or "S"
    fiber_class: str
    fiber_multiple: int
    base_kind: str
    base_class: str


def gamma_classes(p: int) -> dict:
    return {
        "G": FormalClass("Gamma_G", "G", "z2", p, "BGt", f"chi{p - 1}"),
        "H": FormalClass("Gamma_H", "H", "z2", p, "BHt", f"tp^{p - 1}"),
        "S": FormalClass("Gamma_S", "S", "z2", 1, "BS1", f"tau^{p - 1}"),
    }


# covering: (source space, target space, index)
GAMMA_COVERINGS = {"tr1": ("H", "G", 1), "tr2": ("S", "H", 1), "tr": ("S", "G", 2)}


def gamma_transfer(p: int, covering: str, t: int = 1) -> dict:
    """Check tr(Gamma_src) = Gamma_dst from the defining data of both classes.

    tr1: the fiber class of Gamma_H is pulled back from B_G, so by the
    projection formula tr1(z ∪ c) = z ∪ tr1(c); this passes when tr1(c) differs
    from the target base class by p-torsion only, because the filtration
    quotient holding Gamma_G is torsion free.

    tr2: the base class of Gamma_S is pulled back from BH, so tr2 acts on the
    fiber class; over the fiber K the covering is trivial and the transfer
    multiplies the fiber multiple by the index.

    tr: the composite of the two.
    """
    g = gamma_classes(p)
    if covering == "tr":
        a, b = gamma_transfer(p, "tr2", t), gamma_transfer(p, "tr1", t)
        return {"covering": "tr", "source": g["S"].name, "target": g["G"].name,
                "route": "tr1 o tr2", "ok": a["ok"] and b["ok"]}
    src_sp, dst_sp, _ = GAMMA_COVERINGS[covering]
    src, dst = g[src_sp], g[dst_sp]
    record = {"covering": covering, "source": src.name, "target": dst.name}
    if covering == "tr1":
        ring = load_ring(src.base_kind, p)
        image = transfer_apply(ring.parse(src.base_class), "BHt->BGt", t)
        diff = image - image.ring.parse(dst.base_class)
        torsion_only = all(image.ring.order_of(m) != 0 for m in diff.terms)
        record.update(route="base", image=str(image), difference=str(diff),
                      ok=torsion_only and src.fiber_multiple == dst.fiber_multiple)
    else:
        ring = load_ring(dst.base_kind, p)
        pulled = restrict(ring.parse(dst.base_class), "BS1")
        same_base = pulled == pulled.ring.parse(src.base_class)
        record.update(route="fiber", pulled_base=str(pulled),
                      ok=same_base and _index(p, covering) * src.fiber_multiple == dst.fiber_multiple)
    return record


def _index(p: int, covering: str) -> int:
    return p ** GAMMA_COVERINGS[covering][2]


def gamma_pullback(p: int, covering: str) -> tuple:
    """pi^*(Gamma_dst) = index * Gamma_src, returned as (coefficient, name)."""
    src_sp, dst_sp, _ = GAMMA_COVERINGS[covering]
    return _index(p, covering), gamma_classes(p)[src_sp].name


def gamma_composite_consistent(p: int) -> bool:
    c1, n1 = gamma_pullback(p, "tr1")
    c2, n2 = gamma_pullback(p, "tr2")
    c, n = gamma_pullback(p, "tr")
    return c1 * c2 == c and n2 == n


__all__ = [
    "FormalClass", "UnknownBocksteinImage", "UnknownRestriction", "UnknownTransfer",
    "bockstein_reduce", "gamma_classes", "gamma_composite_consistent", "gamma_pullback",
    "gamma_transfer", "integral_bockstein", "kind_of", "mod_p_bockstein", "reduce_mod_p",
    "restrict", "transfer_apply", "KINDS",
]
