"""Module operators on graded presentations: Hom, tensor, transpose, syzygy, lambda.

Everything is computed from minimal presentations ``F1 --A--> F0 -> M -> 0``.
Homomorphism modules are subquotients of ``Hom(F0, G0)``, whose basis vector
``(k, i)`` sends ``e_i`` to ``e_k``; keeping the generators as explicit matrices
lets the isomorphism probe and the natural maps (biduality, homothety,
``M -> Hom(C, M (x) C)``) be evaluated concretely.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .polycore import Poly
from .gbres import (
    HomMatrix,
    Ideal,
    ModulePres,
    QuotientRing,
    TrackedGB,
    _vdeg,
    hilbert_dims,
    minimal_generators,
    minimal_presentation,
    poly_to_vec,
    resolve,
    vadd,
    vec_split,
    vshift,
)

__all__ = [
    "ModulePres", "ModuleMap", "HomModule", "IsoVerdict", "hom", "hom_module", "lambda_", "dual", "tensor",
    "transpose", "syzygy", "lam", "transpose_C", "lambda_C", "is_stable", "trace_ideal",
    "ideal_times_module", "quotient_by_ideal", "pushforward", "iso_probe", "subquotient",
    "strip_free", "direct_sum", "free_module",
]


def free_module(ring: QuotientRing, twists=(0,)) -> ModulePres:
    return ModulePres.free(ring, twists)


def direct_sum(M: ModulePres, N: ModulePres) -> ModulePres:
    from .gbres import block_diag
    return ModulePres(M.ring, block_diag(M.presentation, N.presentation))


def subquotient(gens: HomMatrix, rels: HomMatrix):
    """``(im gens + im rels) / im rels`` as a cokernel.

    Returns the module and the generator columns that survive pruning, so
    elements of the result can be pushed back into the ambient free module.
    """
    ring = gens.ring
    S = ring.ambient
    kept = minimal_generators(list(gens.cols), gens.target, ring, ambient=list(rels.cols))
    g = HomMatrix(ring, gens.target, tuple(_vdeg(v, gens.target, S) for v in kept), tuple(kept))
    if not kept:
        return ModulePres.zero(ring), g
    tg = TrackedGB(g.cols, g.target, g.source, ring, ambient=list(rels.cols))
    relvecs = tg.kernel()
    pres = HomMatrix(ring, g.source, tuple(_vdeg(v, g.source, S) for v in relvecs), tuple(relvecs))
    M, rows = minimal_presentation(ModulePres(ring, pres), return_rows=True)
    return M, g.select_cols(rows)


def kernel_vectors(m: HomMatrix, rels=()) -> list:
    """Generators of ``{x : m x in span(rels)}`` (modulo the defining ideal)."""
    if m.ncols == 0:
        return []
    return TrackedGB(m.cols, m.target, m.source, m.ring, ambient=list(rels)).kernel()


@dataclass
class ModuleMap:
    """Degree-0 map ``source -> target`` induced by ``matrix : F0(source) -> F0(target)``."""

    source: ModulePres
    target: ModulePres
    matrix: HomMatrix

    def cokernel(self) -> ModulePres:
        return ModulePres(self.target.ring, self.matrix.hstack(self.target.presentation))

    def kernel(self) -> ModulePres:
        gens = kernel_vectors(self.matrix, self.target.presentation.cols)
        S = self.source.ring.ambient
        g = HomMatrix(self.source.ring, self.matrix.source,
                      tuple(_vdeg(v, self.matrix.source, S) for v in gens), tuple(gens))
        return subquotient(g, self.source.presentation)[0]

    def image(self) -> ModulePres:
        return subquotient(self.matrix, self.target.presentation)[0]

    def is_surjective(self) -> bool:
        return self.cokernel().is_zero()

    def is_injective(self) -> bool:
        return self.kernel().is_zero()

    def is_iso(self) -> bool:
        return self.is_surjective() and self.is_injective()

    def is_well_defined(self) -> bool:
        comp = self.matrix.compose(self.source.presentation)
        tg = TrackedGB(self.target.presentation.cols, self.target.presentation.target,
                       self.target.presentation.source, self.target.ring)
        return all(not v or tg.lift(v) is not None for v in comp.cols)


# ---------- Hom and tensor ----------

def _hom_free_twists(F, G) -> tuple:
    """Basis ``(k, i)`` of ``Hom(F, G)`` flattened as ``k * len(F) + i``; degree ``G_k - F_i``."""
    return tuple(c - a for c in G for a in F)


def post_compose(d: HomMatrix, G) -> HomMatrix:
    """``Hom(F0, G) -> Hom(F1, G)``, ``phi -> phi o d`` for ``d : F1 -> F0``."""
    ring = d.ring
    F0, F1 = d.target, d.source
    n0, n1 = len(F0), len(F1)
    rows_by_i = [dict() for _ in range(n0)]
    for j, v in enumerate(d.cols):
        for (i, e), c in v.items():
            rows_by_i[i].setdefault(j, {})[e] = c
    cols = []
    for k in range(len(G)):
        for i in range(n0):
            v = {}
            for j, f in rows_by_i[i].items():
                v.update(poly_to_vec(f, k * n1 + j))
            cols.append(v)
    return HomMatrix(ring, _hom_free_twists(F1, G), _hom_free_twists(F0, G), tuple(cols))


def pre_compose(B: HomMatrix, F) -> HomMatrix:
    """``Hom(F, G1) -> Hom(F, G0)``, ``psi -> B o psi`` for ``B : G1 -> G0``."""
    ring = B.ring
    n = len(F)
    cols = []
    for l, v in enumerate(B.cols):
        for i in range(n):
            cols.append({(k * n + i, e): c for (k, e), c in v.items()})
    return HomMatrix(ring, _hom_free_twists(F, B.target), _hom_free_twists(F, B.source), tuple(cols))


@dataclass
class HomModule:
    """``Hom(M, N)`` with generators recorded as elements of ``Hom(F0, G0)``."""

    module: ModulePres
    gens: HomMatrix
    source: ModulePres
    target: ModulePres

    def element_matrix(self, v: dict) -> HomMatrix:
        """The matrix ``F0 -> G0`` of an element given in ``Hom(F0, G0)`` coordinates.

        An element of degree ``g`` is returned as a degree-0 map into ``G0(g)``.
        """
        F0, G0 = self.source.gens_twists, self.target.gens_twists
        n = len(F0)
        if v:
            g = _vdeg(v, _hom_free_twists(F0, G0), self.module.ring.ambient)
            G0 = tuple(c - g for c in G0)
        cols = [dict() for _ in F0]
        for (idx, e), c in v.items():
            k, i = divmod(idx, n)
            cols[i][(k, e)] = c
        return HomMatrix(self.module.ring, G0, F0, tuple(cols))

    def combine(self, coeffs) -> dict:
        """``sum c * mono * gens[j]`` for ``coeffs = [(j, mono, c), ...]``."""
        p = self.module.ring.p
        out = {}
        for j, mono, c in coeffs:
            out = vadd(out, vshift(self.gens.cols[j], mono, c, p), p)
        return out

    def as_map(self, v: dict) -> ModuleMap:
        return ModuleMap(self.source, self.target, self.element_matrix(v))

    def lift(self, phi: HomMatrix):
        """Coordinates in ``module``'s generators of a homomorphism given as a matrix."""
        n = len(self.source.gens_twists)
        v = {}
        for i, col in enumerate(phi.cols):
            for (k, e), c in col.items():
                v[(k * n + i, e)] = c
        return self.lift_vector(v)

    def lift_vector(self, v: dict):
        """Coordinates in ``module``'s generators of an element of ``Hom(F0, G0)``, or None."""
        rels = pre_compose(self.target.presentation, self.source.gens_twists)
        tg = TrackedGB(self.gens.cols, self.gens.target, self.gens.source, self.module.ring,
                       ambient=list(rels.cols))
        return tg.lift(v)


def hom(M: ModulePres, N: ModulePres) -> HomModule:
    """``Hom_R(M, N)`` as the kernel of ``Hom(F0, N) -> Hom(F1, N)``, generators kept."""
    Mm, Nm = minimal_presentation(M), minimal_presentation(N)
    ring = M.ring
    A, B = Mm.presentation, Nm.presentation
    F0, G0 = A.target, B.target
    H0 = _hom_free_twists(F0, G0)
    if not H0:
        z = ModulePres.zero(ring)
        return HomModule(z, HomMatrix.zero(ring, H0, ()), Mm, Nm)
    phi = post_compose(A, G0)
    rels1 = pre_compose(B, A.source)
    gens = kernel_vectors(phi, rels1.cols) if A.ncols else \
        [{(j, ring.ambient.one()): 1} for j in range(len(H0))]
    S = ring.ambient
    K = HomMatrix(ring, H0, tuple(_vdeg(v, H0, S) for v in gens), tuple(gens))
    mod, kept = subquotient(K, pre_compose(B, F0))
    return HomModule(mod, kept, Mm, Nm)


def hom_module(M: ModulePres, N: ModulePres) -> ModulePres:
    return hom(M, N).module


def dual(M: ModulePres) -> ModulePres:
    return hom(M, ModulePres.free(M.ring)).module


def tensor(M: ModulePres, N: ModulePres) -> ModulePres:
    Mm, Nm = minimal_presentation(M), minimal_presentation(N)
    A, B = Mm.presentation, Nm.presentation
    F0, G0 = A.target, B.target
    m = len(G0)
    twists = tuple(a + c for a in F0 for c in G0)
    cols, src = [], []
    for j, v in enumerate(A.cols):
        for k in range(m):
            cols.append({(i * m + k, e): c for (i, e), c in v.items()})
            src.append(A.source[j] + G0[k])
    for i in range(len(F0)):
        for l, v in enumerate(B.cols):
            cols.append({(i * m + k, e): c for (k, e), c in v.items()})
            src.append(F0[i] + B.source[l])
    return ModulePres(M.ring, HomMatrix(M.ring, twists, tuple(src), tuple(cols)))


# ---------- transpose, syzygy, lambda ----------

def transpose(M: ModulePres) -> ModulePres:
    """``Tr M = coker(A^T)`` for the minimal presentation matrix ``A`` of ``M``."""
    A = minimal_presentation(M).presentation
    return ModulePres(M.ring, A.transpose())


def syzygy(M: ModulePres, i: int = 1) -> ModulePres:
    """``Omega^i M`` as the cokernel of the ``(i+1)``-st minimal differential."""
    if i < 1:
        raise ValueError("syzygy index must be positive")
    res = resolve(M, i + 1)
    if len(res.steps) < i:
        return ModulePres.zero(M.ring)
    Fi = res.steps[i - 1].source
    if len(res.steps) > i:
        return ModulePres(M.ring, res.steps[i])
    return ModulePres.free(M.ring, Fi)


def lambda_(M: ModulePres) -> ModulePres:
    """``lambda M = Omega Tr M``.

    Non-stable inputs still get the formula; the result is named with a
    ``nonstable`` tag so callers can see the case.
    """
    out = syzygy(transpose(M), 1)
    if not is_stable(M):
        out.name = "lambda(nonstable)"
    return out


lam = lambda_


def _hom_into(C: ModulePres, F) -> tuple:
    """``Hom(F, C)`` as ``coker`` over ``Hom(F, C0)``: returns (C0 twists, relations)."""
    Cm = minimal_presentation(C)
    return Cm, pre_compose(Cm.presentation, F)


def _check_semidualizing(C, check):
    if check:
        from .homlat import is_semidualizing
        if not is_semidualizing(C):
            raise ValueError("C is not semidualizing")


def transpose_C(M: ModulePres, C: ModulePres, check: bool = False) -> ModulePres:
    """``Tr_C M = coker(Hom(A, C) : Hom(F0, C) -> Hom(F1, C))``."""
    _check_semidualizing(C, check)
    A = minimal_presentation(M).presentation
    Cm, rels1 = _hom_into(C, A.source)
    phi = post_compose(A, Cm.gens_twists)
    return ModulePres(M.ring, phi.hstack(rels1))


def lambda_C(M: ModulePres, C: ModulePres, check: bool = False) -> ModulePres:
    """``lambda_C M = coker(Hom(M, C) -> Hom(F0, C))``."""
    _check_semidualizing(C, check)
    H = hom(M, C)
    Cm = H.target
    rels0 = pre_compose(Cm.presentation, H.source.gens_twists)
    return ModulePres(M.ring, H.gens.hstack(rels0))


def trace_ideal(M: ModulePres) -> Ideal:
    """``sum of f(M)`` over ``f in M*``."""
    H = hom(M, ModulePres.free(M.ring))
    S = M.ring.ambient
    entries = [Poly(S, f) for v in H.gens.cols for f in vec_split(v).values() if f]
    return Ideal.make(M.ring, entries)


def is_stable(M: ModulePres) -> bool:
    """No nonzero free summand, i.e. the trace ideal is proper."""
    if M.is_zero():
        return True
    H = hom(M, ModulePres.free(M.ring))
    one = M.ring.ambient.one()
    for v in H.gens.cols:
        for (_, e), c in v.items():
            if e == one and c:
                return False
    return True


def strip_free(M: ModulePres, budget: int = 32):
    """Split off free summands.  Returns ``(stable part, twists of the free part)``.

    A generator ``f`` of ``M*`` taking a unit value on some generator of ``M``
    splits ``M = ker f (+) R``; repeat until the trace ideal is proper.
    """
    ring = M.ring
    one = ring.ambient.one()
    free = []
    cur = minimal_presentation(M)
    for _ in range(budget):
        if cur.is_zero():
            return cur, tuple(free)
        H = hom(cur, ModulePres.free(ring))
        hit = None
        for j, v in enumerate(H.gens.cols):
            if any(e == one and c for (_, e), c in v.items()):
                hit = j
                break
        if hit is None:
            return cur, tuple(free)
        g = H.gens.source[hit]
        F = ModulePres.free(ring, (-g,))
        f = ModuleMap(cur, F, H.element_matrix(H.gens.cols[hit]))
        free.append(-g)
        cur = minimal_presentation(f.kernel())
    raise RuntimeError("free-summand stripping exceeded its budget")


# ---------- ideals acting on modules ----------

def _ideal_gens(c) -> list:
    return c.minimal_gens() if isinstance(c, Ideal) else list(c)


def ideal_times_module(c, M: ModulePres) -> ModulePres:
    """``cM`` presented as a submodule of ``M``."""
    Mm = minimal_presentation(M)
    gens = ideal_module_gens(c, Mm)
    return subquotient(gens, Mm.presentation)[0]


def ideal_module_gens(c, M: ModulePres) -> HomMatrix:
    ring = M.ring
    cols, src = [], []
    for g in _ideal_gens(c):
        g = ring.ambient(g)
        g = ring.nf(g)
        if not g:
            continue
        for i, a in enumerate(M.gens_twists):
            cols.append(poly_to_vec(g.terms, i))
            src.append(a + g.degree())
    return HomMatrix(ring, M.gens_twists, tuple(src), tuple(cols))


def quotient_by_ideal(M: ModulePres, c) -> ModulePres:
    """``M / cM``."""
    return ModulePres(M.ring, M.presentation.hstack(ideal_module_gens(c, M)))


# ---------- universal pushforward ----------

@dataclass
class Pushforward:
    free: tuple
    cokernel: ModulePres
    map: ModuleMap


def pushforward(M: ModulePres, check: bool = True) -> Pushforward:
    """``0 -> M -> F -> M1 -> 0`` with ``F`` dual to a free cover of ``M*``."""
    from .homlat import ext, n_torsionfree

    if check and not n_torsionfree(M, 1):
        raise ValueError("module is not 1-torsionfree, so it does not embed in a free module")
    ring = M.ring
    H = hom(M, ModulePres.free(ring))
    Mm = H.source
    ftw = tuple(-g for g in H.gens.source)
    n = len(Mm.gens_twists)
    cols = [dict() for _ in range(n)]
    for k, v in enumerate(H.gens.cols):
        for (i, e), c in v.items():
            cols[i][(k, e)] = c
    phi = HomMatrix(ring, ftw, Mm.gens_twists, tuple(cols))
    F = ModulePres.free(ring, ftw)
    f = ModuleMap(Mm, F, phi)
    M1 = f.cokernel()
    if check:
        if not f.is_injective():
            raise ArithmeticError("pushforward map is not injective")
        if not ext(1, M1, ModulePres.free(ring)).is_zero():
            raise ArithmeticError("Ext^1(M1, R) does not vanish")
    return Pushforward(ftw, M1, f)


# ---------- isomorphism probe ----------

@dataclass
class IsoVerdict:
    kind: str  # "Isomorphic" | "DistinguishedBy" | "Unknown"
    witness: HomMatrix = None
    invariant: str = ""
    twist: int = 0
    detail: dict = field(default_factory=dict)

    @property
    def isomorphic(self) -> bool:
        return self.kind == "Isomorphic"

    @property
    def distinguished(self) -> bool:
        return self.kind == "DistinguishedBy"

    def __str__(self):
        if self.kind == "Isomorphic":
            return f"Isomorphic(twist={self.twist})"
        if self.kind == "DistinguishedBy":
            return f"DistinguishedBy({self.invariant})"
        return "Unknown"


def _presentation_betti(M: ModulePres):
    return tuple(sorted(M.presentation.target)), tuple(sorted(M.presentation.source))


DEFAULT_BUDGET = 64
DEFAULT_TWIST_WINDOW = 6


def iso_probe(M: ModulePres, N: ModulePres, seed: int = 0, budget: int = DEFAULT_BUDGET,
              window=(-2, 8), twist_window=None) -> IsoVerdict:
    """Certify ``M = N`` with an explicit degree-0 isomorphism, or separate them by an invariant.

    With ``twist_window = w`` the search also tries ``N(t)`` for ``|t| <= w``.
    """
    if M.ring != N.ring:
        raise ValueError("modules over different rings")
    if twist_window is None:
        return _probe(M, N, seed, budget, window)
    seen = []
    for t in sorted(range(-twist_window, twist_window + 1), key=lambda t: (abs(t), t)):
        v = _probe(M, N.twist(t), seed, budget, window)
        v.twist = t
        if v.isomorphic:
            return v
        seen.append(v)
    if all(v.distinguished for v in seen):
        return IsoVerdict("DistinguishedBy", invariant="every twist", detail={"twists": [str(v) for v in seen]})
    return IsoVerdict("Unknown", detail={"twists": [str(v) for v in seen]})


def _probe(M, N, seed, budget, window) -> IsoVerdict:
    Mm, Nm = minimal_presentation(M), minimal_presentation(N)
    hm, hn = hilbert_dims(Mm, window), hilbert_dims(Nm, window)
    if hm.dims != hn.dims:
        return IsoVerdict("DistinguishedBy", invariant="hilbert", detail={"M": str(hm), "N": str(hn)})
    if _presentation_betti(Mm) != _presentation_betti(Nm):
        return IsoVerdict("DistinguishedBy", invariant="betti")
    ring = M.ring
    if Mm.rank == 0:
        return IsoVerdict("Isomorphic", HomMatrix.zero(ring, (), ()))
    H = hom(Mm, Nm)
    if hilbert_dims(H.module, (0, 0))[0] == 0:
        return IsoVerdict("DistinguishedBy", invariant="no degree-0 homomorphisms")
    S = ring.ambient
    basis = [(j, mono) for j, g in enumerate(H.gens.source) if g <= 0 for mono in S.monomials(-g)]
    rng = random.Random(seed)
    p = ring.p
    for _ in range(budget):
        v = H.combine([(j, mono, rng.randrange(1, p)) for j, mono in basis])
        f = H.as_map(v)
        if f.is_surjective() and f.is_injective():
            return IsoVerdict("Isomorphic", f.matrix)
    return IsoVerdict("Unknown")
