"""Ext, Tor, depth, grade and the reflexivity conditions built on them.

"For all i >= 1" conditions are checked for ``1 <= i <= depth R + 1``; when
the relevant dimension is finite it is at most ``depth R``, so the bound is
enough under the finiteness hypotheses these checks are used with.  Loci over
``Spec R`` are evaluated on explicit lists of candidate primes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations

from .gbres import (
    HomMatrix,
    Ideal,
    ModulePres,
    QuotientRing,
    _vdeg,
    leading_monomials,
    minimal_presentation,
    resolve,
)
from .modops import (
    ModuleMap,
    hom,
    kernel_vectors,
    post_compose,
    pre_compose,
    quotient_by_ideal,
    subquotient,
    syzygy,
    tensor,
    transpose,
)

INFINITE = math.inf


# ---------- Ext and Tor ----------

def _differential(res, i: int) -> HomMatrix:
    """``d_i : F_i -> F_{i-1}`` (a zero matrix past the end of the resolution)."""
    if 1 <= i <= len(res.steps):
        return res.steps[i - 1]
    ring = res.module.ring
    return HomMatrix.zero(ring, res.free(i - 1) if i >= 1 else (), res.free(i))


def _homology(cycles_of: HomMatrix, cycle_rels, boundaries: HomMatrix, rels: HomMatrix) -> ModulePres:
    """``ker(cycles_of mod cycle_rels) / (im boundaries + im rels)`` inside ``cycles_of.source``."""
    ring = rels.ring
    H = cycles_of.source
    if not H:
        return ModulePres.zero(ring)
    if cycles_of.nrows == 0:
        one = ring.ambient.one()
        gens = [{(j, one): 1} for j in range(len(H))]
    else:
        gens = kernel_vectors(cycles_of, cycle_rels)
    S = ring.ambient
    Z = HomMatrix(ring, H, tuple(_vdeg(v, H, S) for v in gens), tuple(gens))
    return subquotient(Z, boundaries.hstack(rels))[0]


def ext(i: int, M: ModulePres, N: ModulePres) -> ModulePres:
    """``Ext^i_R(M, N)`` as cohomology of ``Hom(F, N)`` for a minimal resolution ``F`` of ``M``."""
    if i < 0:
        raise ValueError("Ext index must be nonnegative")
    if M.ring != N.ring:
        raise ValueError("modules over different rings")
    res = resolve(M, i + 1)
    Nm = minimal_presentation(N)
    G0 = Nm.gens_twists
    Fi, Fnext = res.free(i), res.free(i + 1)
    if not Fi or not G0:
        return ModulePres.zero(M.ring)
    out_map = post_compose(_differential(res, i + 1), G0)
    out_rels = pre_compose(Nm.presentation, Fnext).cols
    if i >= 1:
        inc = post_compose(_differential(res, i), G0)
    else:
        inc = HomMatrix.zero(M.ring, out_map.source, ())
    return _homology(out_map, out_rels, inc, pre_compose(Nm.presentation, Fi))


def _tensor_free(d: HomMatrix, G0) -> HomMatrix:
    """``d (x) id : F (x) G0 -> F' (x) G0``; basis ``(j, k)`` flattened as ``j * len(G0) + k``."""
    m = len(G0)
    cols = []
    for v in d.cols:
        for k in range(m):
            cols.append({(l * m + k, e): c for (l, e), c in v.items()})
    tw = lambda F: tuple(a + c for a in F for c in G0)
    return HomMatrix(d.ring, tw(d.target), tw(d.source), tuple(cols))


def _tensor_rels(F, B: HomMatrix) -> HomMatrix:
    m = B.nrows
    cols, src = [], []
    for j, a in enumerate(F):
        for l, v in enumerate(B.cols):
            cols.append({(j * m + k, e): c for (k, e), c in v.items()})
            src.append(a + B.source[l])
    return HomMatrix(B.ring, tuple(a + c for a in F for c in B.target), tuple(src), tuple(cols))


def tor(i: int, M: ModulePres, N: ModulePres) -> ModulePres:
    """``Tor_i^R(M, N)`` as homology of ``F (x) N``."""
    if i < 0:
        raise ValueError("Tor index must be nonnegative")
    if M.ring != N.ring:
        raise ValueError("modules over different rings")
    res = resolve(M, i + 1)
    Nm = minimal_presentation(N)
    G0 = Nm.gens_twists
    Fi = res.free(i)
    if not Fi or not G0:
        return ModulePres.zero(M.ring)
    if i >= 1:
        out_map = _tensor_free(_differential(res, i), G0)
        out_rels = _tensor_rels(res.free(i - 1), Nm.presentation).cols
    else:
        out_map = HomMatrix.zero(M.ring, (), tuple(a + c for a in Fi for c in G0))
        out_rels = ()
    inc = _tensor_free(_differential(res, i + 1), G0)
    return _homology(out_map, out_rels, inc, _tensor_rels(Fi, Nm.presentation))


# ---------- depth and dimension ----------

@dataclass
class DepthProfile:
    depth: float
    dim: float
    cm: bool
    zero: bool = False


def projective_dimension_over_ambient(M: ModulePres) -> int:
    """``pd_S M`` over the ambient polynomial ring (finite by Hilbert's syzygy theorem)."""
    n = M.ring.nvars
    return resolve(M.over_ambient(), n + 1).length


def depth(M: ModulePres) -> int:
    """Graded depth, by Auslander-Buchsbaum over the ambient polynomial ring."""
    if M.is_zero():
        raise ValueError("depth of the zero module is not an integer")
    return M.ring.nvars - projective_dimension_over_ambient(M)


def depth_via_ext(M: ModulePres, k_max: int = None) -> int:
    """``min{i : Ext^i_R(k, M) != 0}``; slower, kept as a cross-check of ``depth``."""
    if M.is_zero():
        raise ValueError("depth of the zero module is not an integer")
    R = M.ring
    k = ModulePres.cyclic(R, R.ambient.gens())
    k_max = R.nvars if k_max is None else k_max
    for i in range(k_max + 1):
        if not ext(i, k, M).is_zero():
            return i
    raise ArithmeticError("no nonvanishing Ext found below the dimension bound")


def _monomial_dim(leads, n: int) -> int:
    """Krull dimension of ``S / (monomials)`` by the largest variable set avoiding every support."""
    supports = [frozenset(i for i, a in enumerate(e) if a) for e in leads]
    if any(not s for s in supports):
        return -1
    for size in range(n, -1, -1):
        for V in combinations(range(n), size):
            V = set(V)
            if not any(s <= V for s in supports):
                return size
    return -1


def krull_dim(M: ModulePres) -> int:
    """Dimension of ``M`` from the leading-term modules; ``-1`` for the zero module."""
    leads = leading_monomials(M)
    n = M.ring.nvars
    return max((_monomial_dim(leads.get(c, []), n) for c in range(M.rank)), default=-1)


def ring_dim(R: QuotientRing) -> int:
    return krull_dim(ModulePres.free(R))


def depth_profile(M: ModulePres) -> DepthProfile:
    if M.is_zero():
        return DepthProfile(INFINITE, -INFINITE, True, zero=True)
    d, k = depth(M), krull_dim(M)
    return DepthProfile(d, k, d == k)


def is_cohen_macaulay(M: ModulePres) -> bool:
    return depth_profile(M).cm


# ---------- grade and annihilators ----------

def _as_ideal(R: QuotientRing, I) -> Ideal:
    return I if isinstance(I, Ideal) else Ideal.make(R, list(I))


def grade(I, M: ModulePres) -> int:
    """``min{i : Ext^i(R/I, M) != 0}``."""
    R = M.ring
    I = _as_ideal(R, I)
    if quotient_by_ideal(M, I).is_zero():
        raise ValueError("IM = M, so the grade is infinite")
    RI = ModulePres.cyclic(R, I.minimal_gens())
    for i in range(R.nvars + 1):
        if not ext(i, RI, M).is_zero():
            return i
    raise ArithmeticError("no nonvanishing Ext found below the dimension bound")


def module_grade(N: ModulePres) -> int:
    return grade(annihilator(N), ModulePres.free(N.ring))


def annihilator(M: ModulePres) -> Ideal:
    """``ann M`` as the kernel of ``R -> (+)_j M``, ``1 -> (e_j)_j``."""
    R = M.ring
    Mm = minimal_presentation(M)
    r = Mm.rank
    if r == 0:
        return Ideal.unit(R)
    A = Mm.presentation
    one = R.ambient.one()
    twists = tuple(a - b for b in A.target for a in A.target)
    col = {(j * r + j, one): 1 for j in range(r)}
    rels = []
    for j in range(r):
        for v in A.cols:
            rels.append({(j * r + k, e): c for (k, e), c in v.items()})
    m = HomMatrix(R, twists, (0,), (col,))
    gens = kernel_vectors(m, rels)
    S = R.ambient
    from .polycore import Poly
    return Ideal.make(R, [Poly(S, {e: c for (_, e), c in v.items()}) for v in gens])


# ---------- primes and localized depth ----------

@dataclass(frozen=True)
class PrimeCandidate:
    ideal: Ideal
    provenance: str = "corpus-declared"   # or "monomial-computed"
    primality: str = "trusted"            # or "verified"

    def __str__(self):
        return str(self.ideal)


def prime(R: QuotientRing, gens, provenance: str = "corpus-declared") -> PrimeCandidate:
    I = Ideal.make(R, list(gens))
    S = R.ambient
    variables = [S.var(v) for v in S.variables]
    generated_by_variables = all(len(g.terms) == 1 and g.degree() == 1 for g in I.minimal_gens()) \
        and all(any(g == x for x in variables) for g in I.minimal_gens())
    if generated_by_variables and _variable_prime_of_ring(R, I):
        return PrimeCandidate(I, provenance, "verified")
    return PrimeCandidate(I, provenance, "trusted")


def _variable_prime_of_ring(R: QuotientRing, I: Ideal) -> bool:
    """A variable-generated ideal is prime in ``R`` iff it contains the defining ideal."""
    return all(I.contains(g) for g in R.defining_ideal)


def depth_at_prime(M: ModulePres, p) -> float:
    """``depth M_p = min{i : ann Ext^i(R/p, M) is inside p}``; ``inf`` when ``p`` is off the support."""
    R = M.ring
    P = p.ideal if isinstance(p, PrimeCandidate) else _as_ideal(R, p)
    if P.is_unit():
        raise ValueError("the unit ideal is not prime")
    if not annihilator(M).issubset(P):
        return INFINITE
    Rp = ModulePres.cyclic(R, P.minimal_gens())
    for i in range(R.nvars + 1):
        E = ext(i, Rp, M)
        if E.is_zero():
            continue
        if annihilator(E).issubset(P):
            return i
    raise ArithmeticError("no Ext detected the prime below the dimension bound")


@dataclass
class SerreReport:
    n: int
    by_prime: dict = field(default_factory=dict)

    @property
    def locus(self) -> list:
        return [p for p, ok in self.by_prime.items() if ok]

    @property
    def holds(self) -> bool:
        return all(self.by_prime.values())


def serre_check(M: ModulePres, n: int, primes) -> SerreReport:
    """``depth M_p >= min(n, depth R_p)`` at each candidate prime (the S~_n condition)."""
    if n < 1:
        raise ValueError("n must be positive")
    R = ModulePres.free(M.ring)
    rep = SerreReport(n)
    for p in primes:
        key = p if isinstance(p, PrimeCandidate) else PrimeCandidate(_as_ideal(M.ring, p))
        dm = depth_at_prime(M, key)
        dr = depth_at_prime(R, key)
        rep.by_prime[key] = dm >= min(n, dr)
    return rep


def in_X(R: QuotientRing, n: int, p) -> bool:
    """``p`` lies in ``X^n(R) = {p : depth R_p <= n}``."""
    return depth_at_prime(ModulePres.free(R), p) <= n


def n_torsionfree(M: ModulePres, n: int) -> bool:
    """``Ext^i(Tr M, R) = 0`` for ``1 <= i <= n``."""
    if n < 1:
        raise ValueError("n must be positive")
    T = transpose(M)
    if T.is_zero():
        return True
    R = ModulePres.free(M.ring)
    return all(ext(i, T, R).is_zero() for i in range(1, n + 1))


def nth_syzygy_test(M: ModulePres, n: int) -> bool:
    """Same criterion as ``n_torsionfree``; it detects n-th syzygies when G-dim is finite."""
    return n_torsionfree(M, n)


# ---------- natural maps ----------

def _evaluation_maps(M: ModulePres, C: ModulePres):
    """``delta : M -> Hom(Hom(M, C), C)`` as a ModuleMap."""
    H1 = hom(M, C)
    H2 = hom(H1.module, C)
    Mm = H1.source
    n = Mm.rank
    K = H1.gens.ncols
    cols = []
    for i in range(n):
        v = {}
        for k, h in enumerate(H1.gens.cols):
            for (idx, e), coef in h.items():
                c, ii = divmod(idx, n)
                if ii == i:
                    v[(c * K + k, e)] = coef
        y = H2.lift_vector(v) if v else {}
        if y is None:
            raise ArithmeticError("evaluation map does not lift")
        cols.append(y)
    return ModuleMap(Mm, H2.module, HomMatrix(M.ring, H2.module.gens_twists, Mm.gens_twists, tuple(cols)))


def biduality_map(M: ModulePres, C: ModulePres) -> ModuleMap:
    return _evaluation_maps(M, C)


def homothety_map(C: ModulePres) -> ModuleMap:
    """``R -> Hom(C, C)``, ``1 -> id_C``."""
    H = hom(C, C)
    n = H.source.rank
    one = C.ring.ambient.one()
    y = H.lift_vector({(i * n + i, one): 1 for i in range(n)})
    if y is None:
        raise ArithmeticError("identity does not lift")
    R = ModulePres.free(C.ring)
    return ModuleMap(R, H.module, HomMatrix(C.ring, H.module.gens_twists, (0,), (y,)))


def tensor_evaluation_map(M: ModulePres, C: ModulePres) -> ModuleMap:
    """``mu : M -> Hom(C, M (x) C)``, ``m -> (c -> m (x) c)``."""
    Mm, Cm = minimal_presentation(M), minimal_presentation(C)
    T = tensor(Mm, Cm)
    H = hom(Cm, T)
    if H.target.gens_twists != T.gens_twists:
        raise ArithmeticError("tensor presentation was not minimal")
    nc = Cm.rank
    one = C.ring.ambient.one()
    cols = []
    for i in range(Mm.rank):
        y = H.lift_vector({((i * nc + l) * nc + l, one): 1 for l in range(nc)})
        if y is None:
            raise ArithmeticError("tensor evaluation does not lift")
        cols.append(y)
    return ModuleMap(Mm, H.module, HomMatrix(C.ring, H.module.gens_twists, Mm.gens_twists, tuple(cols)))


# ---------- reflexivity, semidualizing, G_C-dimension ----------

def check_bound(R: QuotientRing) -> int:
    return depth(ModulePres.free(R)) + 1


@dataclass
class Check:
    ok: bool
    failed: str = ""
    bound: int = 0

    def __bool__(self):
        return self.ok


def _vanish(fn, lo, hi, label) -> str:
    for i in range(lo, hi + 1):
        if not fn(i).is_zero():
            return f"{label} nonzero at i={i}"
    return ""


def total_reflexivity(M: ModulePres, C: ModulePres) -> Check:
    R = M.ring
    b = check_bound(R)
    if M.is_zero():
        return Check(True, bound=b)
    why = _vanish(lambda i: ext(i, M, C), 1, b, "Ext(M,C)")
    if why:
        return Check(False, why, b)
    dagger = hom(M, C).module
    why = _vanish(lambda i: ext(i, dagger, C), 1, b, "Ext(Hom(M,C),C)")
    if why:
        return Check(False, why, b)
    if not biduality_map(M, C).is_iso():
        return Check(False, "biduality map not bijective", b)
    return Check(True, bound=b)


def is_totally_C_reflexive(M: ModulePres, C: ModulePres) -> bool:
    return total_reflexivity(M, C).ok


def semidualizing_check(C: ModulePres) -> Check:
    R = C.ring
    b = check_bound(R)
    if C.is_zero():
        return Check(False, "zero module", b)
    if not homothety_map(C).is_iso():
        return Check(False, "homothety not bijective", b)
    why = _vanish(lambda i: ext(i, C, C), 1, b, "Ext(C,C)")
    return Check(not why, why, b)


def is_semidualizing(C: ModulePres) -> bool:
    return semidualizing_check(C).ok


def auslander_class_check(M: ModulePres, C: ModulePres) -> Check:
    R = M.ring
    b = check_bound(R)
    why = _vanish(lambda i: tor(i, M, C), 1, b, "Tor(M,C)")
    if why:
        return Check(False, why, b)
    MC = tensor(M, C)
    why = _vanish(lambda i: ext(i, C, MC), 1, b, "Ext(C,M(x)C)")
    if why:
        return Check(False, why, b)
    if not tensor_evaluation_map(M, C).is_iso():
        return Check(False, "tensor evaluation not bijective", b)
    return Check(True, bound=b)


def in_auslander_class(M: ModulePres, C: ModulePres) -> bool:
    return auslander_class_check(M, C).ok


@dataclass
class GDim:
    value: float
    certificate: str
    bound: int

    @property
    def finite(self) -> bool:
        return self.value != INFINITE

    def __eq__(self, other):
        if isinstance(other, GDim):
            return self.value == other.value
        return self.value == other

    def __str__(self):
        return "inf" if not self.finite else str(self.value)


def gdim(M: ModulePres, C: ModulePres = None) -> GDim:
    """G_C-dimension: ``g = depth R - depth M`` certified by total C-reflexivity of ``Omega^g M``.

    The sup of nonvanishing ``Ext^i(M, C)`` over the checked range must agree.
    """
    R = M.ring
    C = ModulePres.free(R) if C is None else C
    b = check_bound(R)
    if M.is_zero():
        return GDim(-INFINITE, "zero module", b)
    g = depth(ModulePres.free(R)) - depth(M)
    if g < 0:
        return GDim(INFINITE, "depth M exceeds depth R", b)
    Om = M if g == 0 else syzygy(M, g)
    chk = total_reflexivity(Om, C)
    if not chk:
        return GDim(INFINITE, f"syzygy {g} not totally reflexive: {chk.failed}", b)
    top = max((i for i in range(1, b + 1) if not ext(i, M, C).is_zero()), default=0)
    if top != g:
        raise ArithmeticError(f"Ext range gives {top} but depth formula gives {g}")
    return GDim(g, f"syzygy {g} totally reflexive for i <= {b}", b)


def gc_perfect(a, K: ModulePres) -> bool:
    """``grade a = G_K-dim R/a``."""
    R = K.ring
    a = _as_ideal(R, a)
    Ra = ModulePres.cyclic(R, a.minimal_gens())
    gd = gdim(Ra, K)
    if not gd.finite:
        raise ValueError(f"G_K-dimension of R/a is infinite ({gd.certificate})")
    g = grade(a, ModulePres.free(R)) if not a.is_zero() else 0
    return g == gd.value


def semidualizing_from_perfect_ideal(a, K: ModulePres) -> ModulePres:
    """``Ext^{grade a}(R/a, K)`` read as a module over ``R/a``."""
    R = K.ring
    a = _as_ideal(R, a)
    gens = a.minimal_gens()
    g = grade(a, ModulePres.free(R)) if gens else 0
    C = ext(g, ModulePres.cyclic(R, gens), K)
    Ra = R.quotient(gens) if gens else R
    return minimal_presentation(C.over(Ra))
