"""Minimal free resolutions over the Steenrod algebra, Ext charts, chain-map
lifting and the Adams differential window check."""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from ..exact_algebra import Echelon, FpMatrix, fp_rank, fp_rank_kernel, solve
from .algebra import admissible_basis, format_word, multiply_words, word_degree
from .modules import ModuleWithAction


class WindowExhausted(ValueError):
    pass


class LiftObstructed(ValueError):
    pass


@dataclass
class FreeModule:
    """Free module on generators of given degrees; the degree-t basis is
    (admissible word, generator index) with |word| + deg = t."""

    p: int
    gen_degrees: list = field(default_factory=list)
    reverse: bool = False
    _basis: dict = field(default_factory=dict)

    def basis(self, t: int) -> list:
        cached = self._basis.get(t)
        if cached is not None and cached[0] == len(self.gen_degrees):
            return cached[1]
        out = []
        for j, d in enumerate(self.gen_degrees):
            if d <= t:
                out.extend((w, j) for w in admissible_basis(self.p, t - d))
        if self.reverse:
            out.reverse()
        self._basis[t] = (len(self.gen_degrees), out)
        return out

    def dim(self, t: int) -> int:
        return len(self.basis(t))

    def act(self, word: tuple, t: int, vec: dict) -> dict:
        """word * (sparse element of degree t), result keyed by (word, gen)."""
        out: dict = {}
        for (b, j), c in vec.items():
            for w, cc in multiply_words(word, b, self.p):
                key = (w, j)
                out[key] = (out.get(key, 0) + c * cc) % self.p
        return {k: v for k, v in out.items() if v}


@dataclass
class ResolutionSlice:
    """Generators of F_n with their boundaries.

    ``boundaries[i]`` is a sparse element of the target (F_(n-1), or the
    module for n = 0) in degree ``degrees[i]``: keyed by (word, gen) for a
    free target, by basis index for the module."""

    filtration: int
    degrees: list = field(default_factory=list)
    boundaries: list = field(default_factory=list)
    names: list = field(default_factory=list)

    def count(self, t: int) -> int:
        return sum(1 for d in self.degrees if d == t)


@dataclass
class Resolution:
    module: ModuleWithAction
    max_t: int
    max_s: int
    slices: list
    frees: list

    @property
    def p(self) -> int:
        return self.module.p

    def image(self, s: int, t: int, vec: dict) -> dict | list:
        """The boundary of a sparse element of F_s in degree t."""
        sl = self.slices[s]
        if s == 0:
            out = [0] * self.module.dim(t)
            for (w, j), c in vec.items():
                _, v = self.module.act_word(w, sl.degrees[j], _dense(self.module, sl.degrees[j], sl.boundaries[j]))
                out = [(x + c * y) % self.p for x, y in zip(out, v)]
            return out
        out: dict = {}
        F = self.frees[s - 1]
        for (w, j), c in vec.items():
            for k, cc in F.act(w, sl.degrees[j], sl.boundaries[j]).items():
                out[k] = (out.get(k, 0) + c * cc) % self.p
        return {k: v for k, v in out.items() if v}

    def boundary_matrix(self, s: int, t: int) -> FpMatrix:
        F = self.frees[s]
        src = F.basis(t)
        if s == 0:
            rows = self.module.dim(t)
            cols = [self.image(0, t, {b: 1}) for b in src]
        else:
            tgt = self.frees[s - 1].basis(t)
            index = {b: i for i, b in enumerate(tgt)}
            rows = len(tgt)
            cols = []
            for b in src:
                v = [0] * rows
                for k, c in self.image(s, t, {b: 1}).items():
                    v[index[k]] = c
                cols.append(v)
        return FpMatrix.from_columns(self.p, rows, cols)

    def chart(self) -> dict:
        """(filtration, internal degree) -> number of generators."""
        out = {}
        for sl in self.slices:
            for d in sl.degrees:
                out[(sl.filtration, d)] = out.get((sl.filtration, d), 0) + 1
        return out


def _dense(module: ModuleWithAction, d: int, sparse) -> list:
    if isinstance(sparse, list):
        return sparse
    v = [0] * module.dim(d)
    for i, c in sparse.items():
        v[i] = c
    return v


def minimal_resolution(module: ModuleWithAction, max_t: int | None = None, max_s: int = 4,
                       reverse: bool = False, certify: bool = True) -> Resolution:
    """Minimal resolution through internal degree max_t (default 4p+2) and
    filtration max_s.  With ``certify`` the exactness ranks are rechecked
    and a failure raises WindowExhausted."""
    if max_t is None:
        max_t = 4 * module.p + 2
    p = module.p
    frees = [FreeModule(p, [], reverse) for _ in range(max_s + 1)]
    slices = [ResolutionSlice(s) for s in range(max_s + 1)]
    res = Resolution(module, max_t, max_s, slices, frees)
    for t in range(max_t + 1):
        for s in range(max_s + 1):
            F = frees[s]
            if s == 0:
                dim = module.dim(t)
                # vectors to cover: all of M_t
                targets = [[int(i == j) for i in range(dim)] for j in range(dim)]
                tgt_index = None
            else:
                prev = frees[s - 1]
                tgt_basis = prev.basis(t)
                dim = len(tgt_basis)
                tgt_index = {b: i for i, b in enumerate(tgt_basis)}
                if dim == 0:
                    continue
                M = res.boundary_matrix(s - 1, t)
                _, targets = fp_rank_kernel(M)
            if dim == 0:
                continue
            ech = Echelon(p, dim)
            for b in F.basis(t):
                ech.add(_as_dense(res.image(s, t, {b: 1}), tgt_index, dim))
            for v in targets:
                if ech.add(v):
                    F.gen_degrees.append(t)
                    if s == 0:
                        bd = {i: c for i, c in enumerate(v) if c}
                    else:
                        inv = {i: b for b, i in tgt_index.items()}
                        bd = {inv[i]: c for i, c in enumerate(v) if c}
                    slices[s].degrees.append(t)
                    slices[s].boundaries.append(bd)
    for sl in slices:
        sl.names = [generator_name(module, sl.filtration, d, k)
                    for k, d in enumerate(sl.degrees)]
    if certify:
        bad = [row for row in exactness_report(res) if not row[-1]]
        if bad:
            raise WindowExhausted(f"exactness fails at (s, t) = {bad[0][:2]}")
    return res


def _as_dense(img, index, dim) -> list:
    if isinstance(img, list):
        return img
    v = [0] * dim
    for k, c in img.items():
        v[index[k]] = c
    return v


def generator_name(module: ModuleWithAction, s: int, t: int, k: int) -> str:
    """Stem-indexed names in the style iota_0, alpha_3, beta_7, w_n."""
    stem = t - s
    letter = {0: "iota", 1: "alpha", 2: "beta"}.get(s)
    if letter is None:
        return f"w_{s}" if stem == 0 else f"x{s}_{stem}"
    return f"{letter}_{stem}"


# ---- checks -------------------------------------------------------------------

def exactness_report(res: Resolution) -> list:
    """(s, t, dim F_s, rank d_s, rank d_(s+1), ok) for every checkable spot."""
    out = []
    for t in range(res.max_t + 1):
        for s in range(res.max_s):
            dim = res.frees[s].dim(t)
            r0 = fp_rank(res.boundary_matrix(s, t)) if dim else 0
            d1 = res.frees[s + 1].dim(t)
            r1 = fp_rank(res.boundary_matrix(s + 1, t)) if d1 and dim else 0
            if s == 0:
                ok = r0 == res.module.dim(t) and r0 + r1 == dim
            else:
                ok = r0 + r1 == dim
            out.append((s, t, dim, r0, r1, ok))
    return out


def minimality_violations(res: Resolution) -> list:
    """Boundaries with a unit coefficient on a generator (word of degree 0)."""
    bad = []
    for sl in res.slices[1:]:
        for k, bd in enumerate(sl.boundaries):
            if any(w == () for (w, _), c in bd.items() if c):
                bad.append((sl.filtration, sl.degrees[k]))
    return bad


def boundaries_compose_to_zero(res: Resolution) -> list:
    bad = []
    for s in range(1, res.max_s + 1):
        sl = res.slices[s]
        for k, d in enumerate(sl.degrees):
            img = res.image(s - 1, d, sl.boundaries[k])
            if (isinstance(img, list) and any(img)) or (isinstance(img, dict) and img):
                bad.append((s, d))
    return bad


# ---- charts -------------------------------------------------------------------

def ext_chart(res: Resolution) -> dict:
    """dim Ext^(s,t) = number of generators at (s, t)."""
    return dict(sorted(res.chart().items()))


def chart_by_stem(res: Resolution) -> dict:
    out: dict = {}
    for (s, t), n in ext_chart(res).items():
        out.setdefault(t - s, {})[s] = n
    return dict(sorted(out.items()))


def chart_json(res: Resolution) -> str:
    entries = [{"filtration": s, "internal_degree": t, "dim": n} for (s, t), n in ext_chart(res).items()]
    return json.dumps({"prime": res.p, "module": res.module.name, "entries": entries}, indent=2)


def describe_boundary(res: Resolution, s: int, k: int) -> str:
    sl = res.slices[s]
    bd = sl.boundaries[k]
    if s == 0:
        return res.module.format(sl.degrees[k], _dense(res.module, sl.degrees[k], bd))
    names = res.slices[s - 1].names
    terms = []
    for (w, j), c in sorted(bd.items()):
        body = f"{format_word(w)}({names[j]})" if w else names[j]
        terms.append(body if c == 1 else f"{c}{body}")
    return " + ".join(terms) if terms else "0"


# ---- chain maps -------------------------------------------------------------

@dataclass
class ChainMapSlice:
    filtration: int
    images: list  # per source generator: sparse element of the target F_s


def lift_chain_map(f, source: Resolution, target: Resolution, max_s: int | None = None) -> list:
    """Lift a module map f (callable: (degree, dense vector) -> dense vector
    in the target module) to the resolutions, generator by generator."""
    p = source.p
    max_s = min(source.max_s, target.max_s) if max_s is None else max_s
    maps = []
    for s in range(max_s + 1):
        sl = source.slices[s]
        images = []
        for k, d in enumerate(sl.degrees):
            if d > target.max_t:
                raise WindowExhausted(f"target resolution stops at degree {target.max_t}")
            if s == 0:
                want = f(d, _dense(source.module, d, sl.boundaries[k]))
                want_vec = want
                index = None
                dim = target.module.dim(d)
            else:
                want_sparse = _apply_chain(maps[s - 1], source, target, s - 1, d, sl.boundaries[k])
                tb = target.frees[s - 1].basis(d)
                index = {b: i for i, b in enumerate(tb)}
                dim = len(tb)
                want_vec = _as_dense(want_sparse, index, dim)
            basis = target.frees[s].basis(d)
            cols = [_as_dense(target.image(s, d, {b: 1}), index, dim) for b in basis]
            if not any(want_vec):
                images.append({})
                continue
            x = solve(p, cols, want_vec) if cols else None
            if x is None:
                raise LiftObstructed(f"no lift at filtration {s}, degree {d}")
            images.append({b: c for b, c in zip(basis, x) if c})
        maps.append(ChainMapSlice(s, images))
    return maps


def _apply_chain(cm: ChainMapSlice, source: Resolution, target: Resolution, s: int, t: int, vec: dict) -> dict:
    out: dict = {}
    F = target.frees[s]
    src_deg = source.slices[s].degrees
    for (w, j), c in vec.items():
        for k, cc in F.act(w, src_deg[j], cm.images[j]).items():
            out[k] = (out.get(k, 0) + c * cc) % source.p
    return {k: v for k, v in out.items() if v}


def chain_map_commutes(maps: list, source: Resolution, target: Resolution, f) -> list:
    bad = []
    for cm in maps:
        s = cm.filtration
        for k, d in enumerate(source.slices[s].degrees):
            lhs = target.image(s, d, cm.images[k])
            if s == 0:
                rhs = f(d, _dense(source.module, d, source.slices[0].boundaries[k]))
                ok = [x % source.p for x in lhs] == [x % source.p for x in rhs]
            else:
                rhs = _apply_chain(maps[s - 1], source, target, s - 1, d, source.slices[s].boundaries[k])
                ok = lhs == rhs
            if not ok:
                bad.append((s, d))
    return bad


def induced_on_ext(maps: list, source: Resolution, target: Resolution, s: int, t: int) -> list:
    """Matrix of the induced map Hom(F^target_s, F_p) -> Hom(F^source_s, F_p)
    at internal degree t: rows are source generators, columns target ones,
    entries the unit coefficient of the target generator in the image."""
    tgt_idx = [j for j, d in enumerate(target.slices[s].degrees) if d == t]
    rows = []
    for k, d in enumerate(source.slices[s].degrees):
        if d != t:
            continue
        img = maps[s].images[k]
        rows.append([img.get(((), j), 0) % source.p for j in tgt_idx])
    return rows


def augmentation(source: ModuleWithAction, target: ModuleWithAction):
    """The map sending the degree-0 basis element to the target's and
    everything else to zero."""
    def f(d, vec):
        if d != 0:
            return [0] * target.dim(d)
        return [vec[0] % source.p] + [0] * (target.dim(0) - 1)
    return f


def identity_map(module: ModuleWithAction):
    return lambda d, vec: list(vec)


# ---- Adams differentials --------------------------------------------------------

def permanent_cycle_check(res: Resolution, stem: int, filtration: int,
                          literal_degree: int | None = None) -> dict:
    """Possible Adams differentials touching the class at (filtration, stem).

    d_r goes from (s, stem) to (s + r, stem - 1) with r >= 2, so incoming
    sources sit at stem + 1 and filtration <= filtration - 2, outgoing
    targets at stem - 1 and filtration >= filtration + 2 (within max_s).
    ``literal_degree`` additionally lists filtration-0 generators at that
    internal degree.  Regions outside the computed window count as empty
    and are flagged in ``window_complete``.
    """
    chart = ext_chart(res)
    sources = [(s, stem + 1 + s) for s in range(0, filtration - 1)
               if chart.get((s, stem + 1 + s))]
    targets = [(s, stem - 1 + s) for s in range(filtration + 2, res.max_s + 1)
               if chart.get((s, stem - 1 + s))]
    literal = []
    if literal_degree is not None and chart.get((0, literal_degree)):
        literal.append((0, literal_degree))
    complete = stem + filtration + 1 <= res.max_t
    blocked = not (sources or targets or literal)
    return {
        "module": res.module.name,
        "class": (filtration, stem + filtration),
        "present": bool(chart.get((filtration, stem + filtration))),
        "incoming_sources": sources,
        "outgoing_targets": targets,
        "literal_generators": literal,
        "window_complete": complete,
        "verdict": "no possible differential" if blocked else "differential possible",
    }


def decomposable_span(res: Resolution, s: int, t: int) -> Echelon:
    """Span in the target of d_s of A_(>0) applied to the images of the
    generators of degree < t (the part a new generator must avoid)."""
    F = res.frees[s]
    dim, index = _target_dim(res, s, t)
    ech = Echelon(res.p, dim)
    for b in F.basis(t):
        if b[0]:
            ech.add(_as_dense(res.image(s, t, {b: 1}), index, dim))
    return ech


def _target_dim(res: Resolution, s: int, t: int):
    if s == 0:
        return res.module.dim(t), None
    tb = res.frees[s - 1].basis(t)
    return len(tb), {b: i for i, b in enumerate(tb)}


def check_boundary_formula(res: Resolution, s: int, t: int, terms: dict) -> dict:
    """Whether sum c * word(generator) in F_(s-1) (or the module when s = 0)
    is a legitimate boundary for a new generator at (s, t): a cycle that is
    not decomposable.  ``terms`` maps (word, generator index) -> coefficient.
    """
    if s == 0:
        raise ValueError("filtration 0 boundaries are module elements")
    dim, index = _target_dim(res, s, t)
    vec = [0] * dim
    prev = res.slices[s - 1]
    for (w, j), c in terms.items():
        if prev.degrees[j] + word_degree(w, res.p) != t:
            raise ValueError("inhomogeneous boundary formula")
        for k, cc in res.frees[s - 1].act(w, prev.degrees[j], {((), j): 1}).items():
            vec[index[k]] = (vec[index[k]] + c * cc) % res.p
    img = res.image(s - 1, t, {k: v for k, v in zip(index, vec) if v})
    cycle = not (any(img) if isinstance(img, list) else img)
    ech = decomposable_span(res, s, t)
    indecomposable = any(ech.reduce(vec))
    nonzero = any(vec)
    return {"cycle": cycle, "indecomposable": indecomposable and nonzero,
            "valid": cycle and indecomposable and nonzero}


def find_generator(res: Resolution, s: int, t: int) -> int:
    sl = res.slices[s]
    for k, d in enumerate(sl.degrees):
        if d == t:
            return k
    raise KeyError((s, t))
