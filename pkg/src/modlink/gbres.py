"""Groebner bases for graded submodules of free modules over ``S`` and ``S/I``.

Module elements are sparse dicts ``{(component, exponent): coefficient}``.
Computations over a quotient ``R = S/I`` are lifted to ``S`` by adding
``g * e_i`` for every generator ``g`` of ``I`` and every basis vector ``e_i``.

All inputs are homogeneous, so Buchberger runs degree by degree (the sugar of
a pair is the degree of its lcm) with Gebauer-Moeller pair elimination.  This
makes the degree cap a clean truncation point and gives minimal generators for
free: a generator that survives reduction in its own degree is minimal.
"""

from __future__ import annotations

import heapq
import os
from collections import defaultdict
from dataclasses import dataclass, field

from .polycore import Poly, PolyRing, format_poly


class TruncationError(RuntimeError):
    """A resource cap was hit; the computation was abandoned, not approximated."""


@dataclass
class Limits:
    max_degree: int = int(os.environ.get("MODLINK_MAX_DEGREE", 24))
    max_basis: int = int(os.environ.get("MODLINK_MAX_BASIS", 50000))


LIMITS = Limits()


def set_limits(max_degree=None, max_basis=None):
    if max_degree is not None:
        LIMITS.max_degree = int(max_degree)
    if max_basis is not None:
        LIMITS.max_basis = int(max_basis)


# ---------- sparse vector helpers ----------

def vadd(a: dict, b: dict, p: int, c: int = 1) -> dict:
    out = dict(a)
    for t, v in b.items():
        w = (out.get(t, 0) + c * v) % p
        if w:
            out[t] = w
        else:
            out.pop(t, None)
    return out


def vshift(v: dict, mono, c: int, p: int) -> dict:
    """``c * mono * v``."""
    return {(k, tuple(a + b for a, b in zip(e, mono))): x * c % p for (k, e), x in v.items()}


def vscale_poly(v: dict, f: dict, p: int) -> dict:
    out = {}
    for e2, c2 in f.items():
        out = vadd(out, vshift(v, e2, c2, p), p)
    return out


def poly_to_vec(f: dict, comp: int) -> dict:
    return {(comp, e): c for e, c in f.items()}


def vec_entry(v: dict, comp: int) -> dict:
    return {e: c for (k, e), c in v.items() if k == comp}


def vec_split(v: dict) -> dict:
    out = defaultdict(dict)
    for (k, e), c in v.items():
        out[k][e] = c
    return out


def vec_relabel(v: dict, offset: int) -> dict:
    return {(k + offset, e): c for (k, e), c in v.items()}


def vec_restrict(v: dict, lo: int, hi: int, offset: int = 0) -> dict:
    return {(k - offset, e): c for (k, e), c in v.items() if lo <= k < hi}


# ---------- the engine ----------

class _Engine:
    """Degree-by-degree Buchberger over ``S^r``.

    ``blocks[c]`` ranks component ``c``: any term in a higher block beats any
    term in a lower one (elimination of the high blocks).
    """

    def __init__(self, ring: PolyRing, twists, blocks=None):
        self.ring = ring
        self.p = ring.p
        self.twists = tuple(twists)
        self.blocks = tuple(blocks) if blocks is not None else (0,) * len(self.twists)
        self.G = []
        self.leads = []
        self.by_comp = defaultdict(list)
        self._kc = {}

    def key(self, t) -> tuple:
        k = self._kc.get(t)
        if k is None:
            c, e = t
            k = (self.blocks[c], self.ring.degree(e) + self.twists[c]) + self.ring.key(e) + (-c,)
            self._kc[t] = k
        return k

    def vdeg(self, v: dict) -> int:
        c, e = next(iter(v))
        return self.ring.degree(e) + self.twists[c]

    def lead(self, v: dict):
        return max(v, key=self.key)

    def find_reducer(self, t):
        c, e = t
        for i in self.by_comp.get(c, ()):
            le = self.leads[i][1]
            if all(a <= b for a, b in zip(le, e)):
                return i
        return None

    def reduce(self, v: dict, full: bool = True) -> dict:
        p = self.p
        v = dict(v)
        out = {}
        heap = [(tuple(-x for x in self.key(t)), t) for t in v]
        heapq.heapify(heap)
        while heap:
            _, t = heapq.heappop(heap)
            c = v.get(t)
            if not c:
                continue
            i = self.find_reducer(t)
            if i is None:
                del v[t]
                out[t] = c
                if not full:
                    out.update(v)
                    return out
                continue
            g = self.G[i]
            le = self.leads[i][1]
            mono = tuple(a - b for a, b in zip(t[1], le))
            for (k, e), x in g.items():
                s = (k, tuple(a + b for a, b in zip(e, mono)))
                old = v.get(s)
                w = ((old or 0) - c * x) % p
                if w:
                    v[s] = w
                    if old is None:
                        heapq.heappush(heap, (tuple(-y for y in self.key(s)), s))
                else:
                    v.pop(s, None)
        return out

    def add(self, v: dict) -> int:
        lt = self.lead(v)
        inv = pow(v[lt], -1, self.p)
        if inv != 1:
            v = {t: c * inv % self.p for t, c in v.items()}
        self.G.append(v)
        self.leads.append(lt)
        i = len(self.G) - 1
        self.by_comp[lt[0]].append(i)
        if len(self.G) > LIMITS.max_basis:
            raise TruncationError(f"Groebner basis exceeded {LIMITS.max_basis} elements")
        return i

    def spoly(self, i: int, j: int, lcm) -> dict:
        p = self.p
        a = vshift(self.G[i], tuple(x - y for x, y in zip(lcm, self.leads[i][1])), 1, p)
        b = vshift(self.G[j], tuple(x - y for x, y in zip(lcm, self.leads[j][1])), 1, p)
        return vadd(a, b, p, -1)


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def groebner(gens, twists, ring: PolyRing, blocks=None, ambient=(), reduced=True):
    """Groebner basis of the submodule spanned by ``ambient`` and ``gens``.

    Returns ``(engine, minimal)`` where ``minimal`` lists indices into ``gens``
    forming a minimal generating set modulo the ambient submodule.
    """
    eng = _Engine(ring, twists, blocks)
    queue = defaultdict(list)
    for v in ambient:
        if v:
            queue[eng.vdeg(v)].append((0, -1, v))
    for n, v in enumerate(gens):
        if v:
            queue[eng.vdeg(v)].append((1, n, v))
    pairs = {}  # (i, j) -> (deg, lcm)
    minimal = []
    cap = LIMITS.max_degree

    def update(h: int):
        c, he = eng.leads[h]
        cand = []
        for g in eng.by_comp[c]:
            if g == h:
                continue
            cand.append((g, _lcm(he, eng.leads[g][1])))
        keep = []
        for n, (g, L) in enumerate(cand):
            if any(_divides(L2, L) for _, L2 in cand[n + 1:]) or any(_divides(L2, L) for _, L2 in keep):
                continue
            keep.append((g, L))
        for key in list(pairs):
            i, j = key
            if eng.leads[i][0] != c:
                continue
            L = pairs[key][1]
            if _divides(he, L) and _lcm(eng.leads[i][1], he) != L and _lcm(eng.leads[j][1], he) != L:
                del pairs[key]
        for g, L in keep:
            pairs[(g, h)] = (ring.degree(L) + eng.twists[c], L)

    while queue or pairs:
        d = min(list(queue) + [pd for pd, _ in pairs.values()])
        if d > cap:
            raise TruncationError(f"degree {d} exceeds max-degree cap {cap}")
        batch = sorted((k for k, (pd, _) in pairs.items() if pd == d),
                       key=lambda k: eng.key((eng.leads[k[0]][0], pairs[k][1])))
        for k in batch:
            if k not in pairs:
                continue
            _, L = pairs.pop(k)
            r = eng.reduce(eng.spoly(k[0], k[1], L))
            if r:
                update(eng.add(r))
        for kind, n, v in sorted(queue.pop(d, []), key=lambda x: (x[0], x[1])):
            r = eng.reduce(v)
            if r:
                update(eng.add(r))
                if kind == 1:
                    minimal.append(n)
    if reduced:
        _interreduce(eng)
    return eng, minimal


def _interreduce(eng: _Engine):
    order = sorted(range(len(eng.G)), key=lambda i: eng.key(eng.leads[i]))
    keep = []
    for i in order:
        c, e = eng.leads[i]
        if any(eng.leads[j][0] == c and _divides(eng.leads[j][1], e) for j in keep):
            continue
        keep.append(i)
    G = [eng.G[i] for i in keep]
    leads = [eng.leads[i] for i in keep]
    eng.G, eng.leads = G, leads
    eng.by_comp = defaultdict(list)
    for i, lt in enumerate(leads):
        eng.by_comp[lt[0]].append(i)
    for i in range(len(G)):
        lt = leads[i]
        c0 = G[i][lt]
        tail = {t: c for t, c in G[i].items() if t != lt}
        eng.G[i] = {lt: c0}
        tail = eng.reduce(tail) if tail else {}
        eng.G[i] = {lt: c0, **tail}


# ---------- rings ----------

@dataclass(frozen=True)
class QuotientRing:
    """``ambient / (defining_ideal)``, the ideal stored as a reduced Groebner basis."""

    ambient: PolyRing
    defining_ideal: tuple = ()

    @classmethod
    def make(cls, ambient: PolyRing, gens=()) -> "QuotientRing":
        gens = [ambient(g) for g in gens]
        for g in gens:
            if not g.is_homogeneous():
                raise ValueError(f"defining ideal must be homogeneous, got {g}")
        basis = ideal_groebner([g.terms for g in gens if g], ambient)
        return cls(ambient, tuple(Poly(ambient, b) for b in basis))

    @property
    def p(self) -> int:
        return self.ambient.p

    @property
    def nvars(self) -> int:
        return self.ambient.nvars

    @property
    def is_polynomial(self) -> bool:
        return not self.defining_ideal

    def ideal_dicts(self) -> list:
        return [g.terms for g in self.defining_ideal]

    def ambient_vectors(self, rank: int, offset: int = 0) -> list:
        return [poly_to_vec(g, offset + i) for i in range(rank) for g in self.ideal_dicts()]

    def __call__(self, text) -> Poly:
        return self.nf(self.ambient(text))

    def nf(self, f: Poly) -> Poly:
        if not self.defining_ideal:
            return f
        return Poly(self.ambient, poly_nf(f.terms, self.ideal_dicts(), self.ambient))

    def ambient_ring(self) -> "QuotientRing":
        return QuotientRing(self.ambient, ())

    def quotient(self, gens) -> "QuotientRing":
        extra = [self.ambient(g) for g in gens]
        return QuotientRing.make(self.ambient, list(self.defining_ideal) + extra)

    def __str__(self):
        vs = ",".join(self.ambient.variables)
        if not self.defining_ideal:
            return f"F_{self.p}[{vs}]"
        return f"F_{self.p}[{vs}]/({', '.join(str(g) for g in self.defining_ideal)})"


def ideal_groebner(gens, ring: PolyRing) -> list:
    """Reduced Groebner basis of an ideal of ``ring``; inputs and outputs are dicts."""
    vecs = [poly_to_vec(g, 0) for g in gens if g]
    if not vecs:
        return []
    eng, _ = groebner(vecs, (0,), ring)
    return [vec_entry(v, 0) for v in _sorted_basis(eng)]


def _sorted_basis(eng: _Engine) -> list:
    idx = sorted(range(len(eng.G)), key=lambda i: eng.key(eng.leads[i]))
    return [eng.G[i] for i in idx]


def poly_nf(f: dict, basis, ring: PolyRing) -> dict:
    if not basis or not f:
        return dict(f)
    eng = _Engine(ring, (0,))
    for b in basis:
        eng.add(poly_to_vec(b, 0))
    return vec_entry(eng.reduce(poly_to_vec(f, 0)), 0)


# ---------- graded free modules and matrices ----------

@dataclass(frozen=True)
class GradedFree:
    ring: QuotientRing
    twists: tuple = ()

    @property
    def rank(self) -> int:
        return len(self.twists)


@dataclass(frozen=True, eq=False)
class HomMatrix:
    """Homogeneous map ``R^source -> R^target``; ``cols[j]`` is the image of ``e_j``."""

    ring: QuotientRing
    target: tuple
    source: tuple
    cols: tuple

    def __post_init__(self):
        object.__setattr__(self, "target", tuple(self.target))
        object.__setattr__(self, "source", tuple(self.source))
        object.__setattr__(self, "cols", tuple(self.cols))
        if len(self.cols) != len(self.source):
            raise ValueError("column count does not match source rank")
        S = self.ring.ambient
        for j, v in enumerate(self.cols):
            for (i, e) in v:
                if not 0 <= i < len(self.target):
                    raise ValueError(f"column {j} has an entry in row {i}, out of range")
                if S.degree(e) != self.source[j] - self.target[i]:
                    raise ValueError(
                        f"entry ({i},{j}) is not homogeneous of degree "
                        f"{self.source[j] - self.target[i]}")

    @classmethod
    def from_rows(cls, ring: QuotientRing, rows, target=None, source=None) -> "HomMatrix":
        """Build from a list of rows of polynomials (strings or Poly).

        Missing twists are inferred: target twists default to 0 and source
        twists to the degree of the first nonzero entry in each column.
        """
        S = ring.ambient
        rows = [[S(x) for x in r] for r in rows]
        nr = len(rows)
        nc = len(rows[0]) if rows else (len(source) if source is not None else 0)
        target = tuple(target) if target is not None else (0,) * nr
        if source is None:
            source = []
            for j in range(nc):
                d = None
                for i in range(nr):
                    if rows[i][j]:
                        d = rows[i][j].degree() + target[i]
                        break
                source.append(0 if d is None else d)
        cols = []
        for j in range(nc):
            v = {}
            for i in range(nr):
                f = ring.nf(rows[i][j]).terms
                v.update(poly_to_vec(f, i))
            cols.append(v)
        return cls(ring, target, tuple(source), tuple(cols))

    @classmethod
    def zero(cls, ring, target, source) -> "HomMatrix":
        return cls(ring, tuple(target), tuple(source), tuple({} for _ in source))

    @classmethod
    def identity(cls, ring, twists) -> "HomMatrix":
        one = ring.ambient.one()
        return cls(ring, tuple(twists), tuple(twists), tuple({(i, one): 1} for i in range(len(twists))))

    @property
    def nrows(self) -> int:
        return len(self.target)

    @property
    def ncols(self) -> int:
        return len(self.source)

    def entry(self, i: int, j: int) -> Poly:
        return Poly(self.ring.ambient, vec_entry(self.cols[j], i))

    def rows(self) -> list:
        return [[self.entry(i, j) for j in range(self.ncols)] for i in range(self.nrows)]

    def transpose(self) -> "HomMatrix":
        """The dual map ``Hom(target, R) -> Hom(source, R)``."""
        cols = [dict() for _ in self.target]
        for j, v in enumerate(self.cols):
            for (i, e), c in v.items():
                cols[i][(j, e)] = c
        return HomMatrix(self.ring, tuple(-t for t in self.source), tuple(-t for t in self.target), tuple(cols))

    def compose(self, other: "HomMatrix") -> "HomMatrix":
        """``self o other``."""
        p = self.ring.p
        if tuple(other.target) != tuple(self.source):
            raise ValueError("composition of incompatible maps")
        cols = []
        for v in other.cols:
            out = {}
            for k, f in vec_split(v).items():
                out = vadd(out, vscale_poly(self.cols[k], f, p), p)
            cols.append(self.reduce_vec(out))
        return HomMatrix(self.ring, self.target, other.source, tuple(cols))

    def apply(self, v: dict) -> dict:
        p = self.ring.p
        out = {}
        for k, f in vec_split(v).items():
            out = vadd(out, vscale_poly(self.cols[k], f, p), p)
        return self.reduce_vec(out)

    def reduce_vec(self, v: dict) -> dict:
        if not self.ring.defining_ideal or not v:
            return v
        out = {}
        I = self.ring.ideal_dicts()
        for k, f in vec_split(v).items():
            out.update(poly_to_vec(poly_nf(f, I, self.ring.ambient), k))
        return out

    def is_zero(self) -> bool:
        return all(not self.reduce_vec(v) for v in self.cols)

    def hstack(self, other: "HomMatrix") -> "HomMatrix":
        assert tuple(self.target) == tuple(other.target)
        return HomMatrix(self.ring, self.target, self.source + other.source, self.cols + other.cols)

    def select_cols(self, idx) -> "HomMatrix":
        return HomMatrix(self.ring, self.target, tuple(self.source[j] for j in idx),
                         tuple(self.cols[j] for j in idx))

    def with_ring(self, ring: QuotientRing) -> "HomMatrix":
        m = HomMatrix(ring, self.target, self.source, self.cols)
        return HomMatrix(ring, self.target, self.source, tuple(m.reduce_vec(v) for v in self.cols))

    def __eq__(self, other):
        if not isinstance(other, HomMatrix):
            return NotImplemented
        return (self.ring == other.ring and self.target == other.target and self.source == other.source
                and all(self.reduce_vec(a) == other.reduce_vec(b) for a, b in zip(self.cols, other.cols)))

    __hash__ = None

    def __str__(self):
        S = self.ring.ambient
        rows = self.rows()
        body = "; ".join("[" + ", ".join(format_poly(f.terms, S) for f in r) + "]" for r in rows)
        return f"[{body}]"


def block_diag(a: HomMatrix, b: HomMatrix) -> HomMatrix:
    cols = list(a.cols) + [vec_relabel(v, a.nrows) for v in b.cols]
    return HomMatrix(a.ring, a.target + b.target, a.source + b.source, tuple(cols))


def vstack(a: HomMatrix, b: HomMatrix) -> HomMatrix:
    assert a.source == b.source
    cols = [{**u, **vec_relabel(v, a.nrows)} for u, v in zip(a.cols, b.cols)]
    return HomMatrix(a.ring, a.target + b.target, a.source, tuple(cols))


# ---------- module presentations ----------

@dataclass(eq=False)
class ModulePres:
    """``M = coker(presentation)``; generators are the target basis vectors."""

    ring: QuotientRing
    presentation: HomMatrix
    name: str = ""
    _minimal: bool = False
    _cache: dict = field(default_factory=dict, repr=False)

    @classmethod
    def coker(cls, m: HomMatrix, name: str = "") -> "ModulePres":
        return cls(m.ring, m, name)

    @classmethod
    def free(cls, ring: QuotientRing, twists=(0,), name: str = "") -> "ModulePres":
        return cls(ring, HomMatrix.zero(ring, tuple(twists), ()), name)

    @classmethod
    def cyclic(cls, ring: QuotientRing, gens, twist: int = 0, name: str = "") -> "ModulePres":
        """``R/(gens)`` generated in degree ``twist``."""
        polys = [ring.ambient(g) for g in gens]
        polys = [g for g in polys if ring.nf(g)]
        m = HomMatrix.from_rows(ring, [polys], target=(twist,),
                                source=[g.degree() + twist for g in polys])
        return cls(ring, m, name)

    @classmethod
    def zero(cls, ring: QuotientRing) -> "ModulePres":
        return cls(ring, HomMatrix.zero(ring, (), ()))

    @property
    def gens_twists(self) -> tuple:
        return self.presentation.target

    @property
    def rank(self) -> int:
        return self.presentation.nrows

    def twist(self, t: int) -> "ModulePres":
        """``M(t)``: the degree-``d`` piece of ``M(t)`` is ``M_{d+t}``."""
        m = self.presentation
        return ModulePres(self.ring, HomMatrix(self.ring, tuple(a - t for a in m.target),
                                               tuple(b - t for b in m.source), m.cols))

    def over(self, ring: QuotientRing) -> "ModulePres":
        """The same presentation read over another quotient of the same ambient ring."""
        if ring.ambient != self.ring.ambient:
            raise ValueError("ring change needs a common ambient polynomial ring")
        return ModulePres(ring, self.presentation.with_ring(ring))

    def over_ambient(self) -> "ModulePres":
        """This ``R``-module viewed as an ``S``-module."""
        S = self.ring.ambient_ring()
        amb = self.ring.ambient_vectors(self.rank)
        m = self.presentation
        extra_src = [self.ring.ambient.degree(next(iter(v))[1]) + m.target[next(iter(v))[0]] for v in amb]
        pres = HomMatrix(S, m.target, m.source + tuple(extra_src), m.cols + tuple(amb))
        return ModulePres(S, pres)

    def is_zero(self) -> bool:
        return _prune(self.presentation)[0].nrows == 0

    def __str__(self):
        return f"coker {self.presentation} over {self.ring} with generator degrees {list(self.gens_twists)}"


# ---------- operations ----------

def buchberger(gens, twists, ring: QuotientRing) -> list:
    """Reduced Groebner basis (sorted by leading term) of ``span(gens) + I*F``."""
    S = ring.ambient
    for v in gens:
        if v:
            ds = {S.degree(e) + twists[c] for c, e in v}
            if len(ds) > 1:
                raise ValueError("inhomogeneous generator")
    eng, _ = groebner(list(gens), twists, S, ambient=ring.ambient_vectors(len(twists)))
    return _sorted_basis(eng)


def normal_form(v: dict, gb, twists, ring: QuotientRing) -> dict:
    eng = _Engine(ring.ambient, twists)
    for g in gb:
        eng.add(dict(g))
    return eng.reduce(v)


def image_basis(m: HomMatrix):
    """Engine holding a reduced Groebner basis of ``im(m) + I*target``."""
    key = "_gb"
    cached = m.__dict__.get(key)
    if cached is None:
        cached, _ = groebner(list(m.cols), m.target, m.ring.ambient,
                             ambient=m.ring.ambient_vectors(m.nrows))
        object.__setattr__(m, key, cached)
    return cached


class TrackedGB:
    """Groebner basis of the pairs ``(cols[j], e_j)`` under an elimination order.

    Rows of the target come first and dominate.  ``ambient`` columns live in
    the target without tracking (relations of a cokernel); the defining ideal
    of the ring is added on both sides.
    """

    def __init__(self, cols, target, source, ring: QuotientRing, ambient=()):
        self.ring = ring
        self.r = len(target)
        self.c = len(source)
        twists = tuple(target) + tuple(source)
        blocks = (1,) * self.r + (0,) * self.c
        one = ring.ambient.one()
        gens = [{**v, (self.r + j, one): 1} for j, v in enumerate(cols)]
        amb = list(ambient) + ring.ambient_vectors(self.r) + ring.ambient_vectors(self.c, self.r)
        self.source = tuple(source)
        self.eng, _ = groebner(gens, twists, ring.ambient, blocks=blocks, ambient=amb)

    def kernel(self) -> list:
        """Minimal generators (as vectors in the source) of the kernel modulo ``I``."""
        vecs = []
        for v, lt in zip(self.eng.G, self.eng.leads):
            if lt[0] >= self.r:
                vecs.append(vec_restrict(v, self.r, self.r + self.c, self.r))
        return minimal_generators(vecs, self.source, self.ring)

    def lift(self, v: dict):
        """Coefficients ``y`` with ``cols * y = v`` modulo ambient relations, or None."""
        rem = self.eng.reduce(v)
        if any(k < self.r for k, _ in rem):
            return None
        p = self.ring.p
        return {(k - self.r, e): (p - c) % p for (k, e), c in rem.items()}


def minimal_generators(vecs, twists, ring: QuotientRing, ambient=()) -> list:
    """A minimal homogeneous generating subset of ``vecs`` modulo ``ambient + I*F``."""
    vecs = [v for v in vecs if v]
    if not vecs:
        return []
    S = ring.ambient
    amb = list(ambient) + ring.ambient_vectors(len(twists))
    _, idx = groebner(vecs, twists, S, ambient=amb, reduced=False)
    ref = HomMatrix(ring, twists, (), ())
    return [ref.reduce_vec(vecs[i]) for i in idx]


def _vdeg(v: dict, twists, S: PolyRing) -> int:
    k, e = next(iter(v))
    return S.degree(e) + twists[k]


def syzygies(m: HomMatrix) -> HomMatrix:
    """Minimal generators of ``ker(m)`` as the columns of a map into ``m.source``."""
    ring = m.ring
    if m.ncols == 0:
        return HomMatrix.zero(ring, (), ())
    tg = TrackedGB(m.cols, m.target, m.source, ring)
    ker = tg.kernel()
    S = ring.ambient
    return HomMatrix(ring, m.source, tuple(_vdeg(v, m.source, S) for v in ker), tuple(ker))


def _prune(m: HomMatrix):
    """Eliminate unit entries.  Returns the pruned matrix and the surviving rows."""
    ring = m.ring
    p = ring.p
    one = ring.ambient.one()
    cols = [m.reduce_vec(v) for v in m.cols]
    rows = list(range(m.nrows))
    src = list(m.source)
    while True:
        piv = None
        for j, v in enumerate(cols):
            for (i, e), c in v.items():
                if e == one:
                    piv = (i, j, c)
                    break
            if piv:
                break
        if piv is None:
            break
        i, j, u = piv
        pivot_col = cols[j]
        uinv = pow(u, -1, p)
        new_cols = []
        for jj, v in enumerate(cols):
            if jj == j:
                continue
            a = {e: c for (k, e), c in v.items() if k == i}
            if a:
                v = vadd(v, vscale_poly(pivot_col, {e: c * uinv % p for e, c in a.items()}, p), p, -1)
            new_cols.append(v)
        del src[j]
        cols = new_cols
        cols = [{(k - (k > i), e): c for (k, e), c in v.items() if k != i} for v in cols]
        del rows[i]
        cols = [HomMatrix(ring, tuple(m.target[r] for r in rows), (), ()).reduce_vec(v) for v in cols]
    target = tuple(m.target[r] for r in rows)
    keep = [j for j, v in enumerate(cols) if v]
    out = HomMatrix(ring, target, tuple(src[j] for j in keep), tuple(cols[j] for j in keep))
    return out, rows


def minimal_presentation(M: ModulePres, return_rows: bool = False):
    """Prune units and drop redundant relations; the module is unchanged up to iso."""
    if M._minimal and not return_rows:
        return M
    pruned, rows = _prune(M.presentation)
    rels = minimal_generators(list(pruned.cols), pruned.target, M.ring)
    S = M.ring.ambient
    pres = HomMatrix(M.ring, pruned.target, tuple(_vdeg(v, pruned.target, S) for v in rels), tuple(rels))
    out = ModulePres(M.ring, pres, M.name, True)
    return (out, rows) if return_rows else out


@dataclass
class ResolutionSlice:
    module: ModulePres
    steps: list
    minimal: bool = True

    @property
    def ranks(self) -> list:
        if not self.steps:
            return [self.module.rank]
        return [self.steps[0].nrows] + [d.ncols for d in self.steps]

    def free(self, i: int) -> tuple:
        """Twists of ``F_i``."""
        if i == 0:
            return self.steps[0].target if self.steps else self.module.gens_twists
        if i <= len(self.steps):
            return self.steps[i - 1].source
        return ()

    def betti(self) -> list:
        out = []
        for i in range(len(self.steps) + 1):
            tw = self.free(i)
            if i > 0 and not tw:
                break
            out.append(tuple(sorted(tw)))
        return out

    @property
    def length(self) -> int:
        n = 0
        for d in self.steps:
            if d.ncols:
                n += 1
        return n


def resolve(M: ModulePres, k: int) -> ResolutionSlice:
    """First ``k`` differentials of a minimal graded free resolution."""
    if k < 1:
        raise ValueError("need at least one step")
    P = minimal_presentation(M)
    steps = [P.presentation]
    while len(steps) < k and steps[-1].ncols:
        steps.append(syzygies(steps[-1]))
    while steps and not steps[-1].ncols:
        steps.pop()
    return ResolutionSlice(P, steps, True)


@dataclass
class GradedDimTable:
    window: tuple
    dims: dict

    def __getitem__(self, d):
        return self.dims[d]

    def values(self) -> list:
        return [self.dims[d] for d in range(self.window[0], self.window[1] + 1)]

    def support(self) -> list:
        return [d for d in range(self.window[0], self.window[1] + 1) if self.dims[d]]

    def is_zero(self) -> bool:
        return not self.support()

    def __str__(self):
        return " ".join(f"{d}:{self.dims[d]}" for d in range(self.window[0], self.window[1] + 1))


def leading_monomials(M: ModulePres) -> dict:
    """Per generator: exponents of the leading terms of a Groebner basis of the relations."""
    eng = image_basis(M.presentation)
    out = defaultdict(list)
    for c, e in eng.leads:
        out[c].append(e)
    return out


def hilbert_dims(M: ModulePres, window=(-2, 8)) -> GradedDimTable:
    """``dim_k M_d`` by counting standard monomials off the leading terms."""
    lo, hi = window
    S = M.ring.ambient
    leads = leading_monomials(M)
    dims = {}
    for d in range(lo, hi + 1):
        n = 0
        for c, a in enumerate(M.gens_twists):
            L = leads.get(c, [])
            for e in S.monomials(d - a):
                if not any(all(x <= y for x, y in zip(le, e)) for le in L):
                    n += 1
        dims[d] = n
    return GradedDimTable((lo, hi), dims)


# ---------- ideals ----------

@dataclass(frozen=True, eq=False)
class Ideal:
    """Homogeneous ideal of a quotient ring, stored as the reduced GB of its preimage in ``S``."""

    ring: QuotientRing
    gens: tuple

    @classmethod
    def make(cls, ring: QuotientRing, gens) -> "Ideal":
        S = ring.ambient
        polys = [S(g) for g in gens]
        for g in polys:
            if not g.is_homogeneous():
                raise ValueError(f"ideal generators must be homogeneous, got {g}")
        basis = ideal_groebner([g.terms for g in polys] + ring.ideal_dicts(), S)
        return cls(ring, tuple(Poly(S, b) for b in basis))

    @classmethod
    def unit(cls, ring: QuotientRing) -> "Ideal":
        return cls.make(ring, [1])

    @classmethod
    def maximal(cls, ring: QuotientRing) -> "Ideal":
        return cls.make(ring, ring.ambient.gens())

    def contains(self, f) -> bool:
        f = self.ring.ambient(f)
        return not poly_nf(f.terms, [g.terms for g in self.gens], self.ring.ambient)

    def issubset(self, other: "Ideal") -> bool:
        return all(other.contains(g) for g in self.gens)

    def __eq__(self, other):
        return isinstance(other, Ideal) and self.ring.ambient == other.ring.ambient and \
            [g.terms for g in self.gens] == [g.terms for g in other.gens]

    def __hash__(self):
        return hash(tuple(self.gens))

    def is_unit(self) -> bool:
        return any(g.is_constant() and g for g in self.gens)

    def is_zero(self) -> bool:
        return all(not self.ring.nf(g) for g in self.gens)

    def minimal_gens(self) -> list:
        """Minimal generators of the image in ``R`` (the defining ideal dropped)."""
        vecs = [poly_to_vec(g.terms, 0) for g in self.gens]
        mins = minimal_generators(vecs, (0,), self.ring)
        return [Poly(self.ring.ambient, vec_entry(v, 0)) for v in mins]

    def is_monomial(self) -> bool:
        return all(len(g.terms) == 1 for g in self.gens)

    def __str__(self):
        gs = self.minimal_gens()
        return "(" + ", ".join(str(g) for g in gs) + ")" if gs else "(0)"

    def __repr__(self):
        return f"Ideal{self}"


def _colon_element(I: Ideal, g: Poly) -> list:
    ring = I.ring
    S = ring.ambient
    if not g.terms or I.contains(g):
        return [S.const(1)]
    amb = [poly_to_vec(h.terms, 0) for h in I.gens]
    tg = TrackedGB([poly_to_vec(g.terms, 0)], (0,), (g.degree(),), QuotientRing(S, ()), ambient=amb)
    return [Poly(S, vec_entry(v, 0)) for v in tg.kernel()]


def ideal_ops(I: Ideal, J: Ideal, op: str) -> Ideal:
    ring = I.ring
    if op == "sum":
        return Ideal.make(ring, list(I.gens) + list(J.gens))
    if op == "product":
        return Ideal.make(ring, [a * b for a in I.gens for b in J.gens])
    if op == "intersection":
        return _intersect(I, J)
    if op == "quotient":
        out = Ideal.unit(ring)
        for g in J.gens:
            out = _intersect(out, Ideal.make(ring, _colon_element(I, g)))
        return out
    raise ValueError(f"unknown ideal operation {op!r}")


def _intersect(I: Ideal, J: Ideal) -> Ideal:
    S = I.ring.ambient
    one = S.one()
    amb = [poly_to_vec(h.terms, 0) for h in I.gens] + [poly_to_vec(h.terms, 1) for h in J.gens]
    tg = TrackedGB([{(0, one): 1, (1, one): 1}], (0, 0), (0,), QuotientRing(S, ()), ambient=amb)
    return Ideal.make(I.ring, [Poly(S, vec_entry(v, 0)) for v in tg.kernel()])
