"""Linkage predicates and executable checks of the linkage theorems.

Every check returns a ``TheoremVerdict``.  A check passes only when all of
its sub-certificates are decisive; an ``Unknown`` from the isomorphism probe
or an unverified hypothesis makes it ``Inconclusive`` rather than ``Pass``.
Statements that quantify over ``Spec R`` are evaluated on candidate primes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .cohatt import _ambient_ext, canonical_module, is_associated
from .gbres import Ideal, ModulePres, QuotientRing, hilbert_dims, minimal_presentation
from .homlat import (
    INFINITE,
    PrimeCandidate,
    _as_ideal,
    depth,
    depth_at_prime,
    depth_profile,
    ext,
    gdim,
    in_auslander_class,
    is_semidualizing,
    krull_dim,
    n_torsionfree,
    nth_syzygy_test,
    ring_dim,
    serre_check,
)
from .modops import (
    DEFAULT_TWIST_WINDOW,
    IsoVerdict,
    ideal_times_module,
    iso_probe,
    is_stable,
    lambda_,
    lambda_C,
    quotient_by_ideal,
    syzygy,
    tensor,
    transpose,
)

PASS, FAIL, INCONCLUSIVE = "Pass", "Fail", "Inconclusive"


@dataclass
class TheoremVerdict:
    theorem: str
    hypotheses: list = field(default_factory=list)   # (name, True | False | "trusted")
    sides: dict = field(default_factory=dict)
    verdict: str = INCONCLUSIVE
    reason: str = ""
    evidence: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    def __str__(self):
        tail = f" ({self.reason})" if self.reason else ""
        return f"{self.theorem}: {self.verdict}{tail}"


def _gate(v: TheoremVerdict, name: str, ok, why: str = "") -> bool:
    """Record a hypothesis; returns False (and marks the verdict) when it fails."""
    v.hypotheses.append((name, ok))
    if ok is True or ok == "trusted":
        return True
    v.verdict = INCONCLUSIVE
    v.reason = why or f"hypothesis failed: {name}"
    return False


def _decide(v: TheoremVerdict, agree: bool, what: str = "sides disagree") -> TheoremVerdict:
    v.verdict = PASS if agree else FAIL
    if not agree:
        v.reason = what
    return v


# ---------- horizontal linkage ----------

@dataclass
class LinkageCertificate:
    module: ModulePres
    stable: bool
    ext1_vanishes: bool
    lambda_roundtrip: IsoVerdict = None

    @property
    def verdict(self) -> bool:
        return self.stable and self.ext1_vanishes

    @property
    def coherent(self) -> bool:
        """The criterion never contradicts a decisive roundtrip probe."""
        rt = self.lambda_roundtrip
        if rt is None or rt.kind == "Unknown":
            return True
        return self.verdict == rt.isomorphic

    def __bool__(self):
        return self.verdict


def is_horizontally_linked(M: ModulePres, probe: bool = True, seed: int = 0) -> LinkageCertificate:
    """Stable with ``Ext^1(Tr M, R) = 0``; optionally probes ``M = lambda^2 M``."""
    R = ModulePres.free(M.ring)
    if M.is_zero():
        return LinkageCertificate(M, True, True, IsoVerdict("Isomorphic") if probe else None)
    stable = is_stable(M)
    T = transpose(M)
    e1 = T.is_zero() or ext(1, T, R).is_zero()
    rt = None
    if probe:
        rt = iso_probe(lambda_(lambda_(M)), M, seed=seed, twist_window=DEFAULT_TWIST_WINDOW)
    return LinkageCertificate(M, stable, e1, rt)


def linked_by_ideal(M: ModulePres, N: ModulePres, c, seed: int = 0) -> TheoremVerdict:
    """``M ~_c N``: ``c`` kills both and they are horizontally linked over ``R/c``."""
    R = M.ring
    c = _as_ideal(R, c)
    v = TheoremVerdict("linked_by")
    ann_ok = ideal_times_module(c, M).is_zero() and ideal_times_module(c, N).is_zero()
    if not ann_ok:
        v.hypotheses.append(("c annihilates M and N", False))
        v.verdict = FAIL
        v.reason = "c is not contained in ann M and ann N"
        return v
    v.hypotheses.append(("c annihilates M and N", True))
    gens = c.minimal_gens()
    Rc = R.quotient(gens) if gens else R
    Mc, Nc = M.over(Rc), N.over(Rc)
    a = iso_probe(lambda_(Mc), Nc, seed=seed, twist_window=DEFAULT_TWIST_WINDOW)
    b = iso_probe(lambda_(Nc), Mc, seed=seed, twist_window=DEFAULT_TWIST_WINDOW)
    v.sides = {"lambda M = N": str(a), "lambda N = M": str(b)}
    if a.kind == "Unknown" or b.kind == "Unknown":
        v.verdict, v.reason = INCONCLUSIVE, "isomorphism probe undecided"
        return v
    return _decide(v, a.isomorphic and b.isomorphic, "lambda over R/c does not swap the modules")


# ---------- helpers over candidate primes ----------

def _prime_list(R: QuotientRing, X) -> list:
    return [p if isinstance(p, PrimeCandidate) else PrimeCandidate(_as_ideal(R, p)) for p in X]


def ring_variable_primes(R: QuotientRing) -> list:
    """Variable-generated primes containing the defining ideal (requires a monomial ring)."""
    from .cohatt import _monomial_supports
    S = R.ambient
    sup = _monomial_supports(list(R.defining_ideal))
    out = []
    for k in range(S.nvars + 1):
        for V in combinations(range(S.nvars), k):
            if all(s & set(V) for s in sup):
                out.append(PrimeCandidate(Ideal.make(R, [S.var(S.variables[i]) for i in V]),
                                          "monomial-computed", "verified"))
    return out


def _generalization_closed(X, universe) -> bool:
    xs = {p.ideal for p in X}
    return all(q.ideal in xs for p in X for q in universe if q.ideal.issubset(p.ideal))


def _specialization_closed(X, universe) -> bool:
    xs = {p.ideal for p in X}
    return all(q.ideal in xs for p in X for q in universe if p.ideal.issubset(q.ideal))


def is_gorenstein(R: QuotientRing) -> bool:
    """Cohen-Macaulay with a cyclic canonical module."""
    if not depth_profile(ModulePres.free(R)).cm:
        return False
    return minimal_presentation(canonical_module(R)).rank == 1


def _finite_gdim_on(M, assume) -> object:
    """True when finiteness of local G-dimensions is certified, "trusted" when only assumed."""
    R = M.ring
    if is_gorenstein(R):
        return True
    if depth_profile(ModulePres.free(R)).cm and gdim(M).finite:
        return True
    return "trusted" if assume else False


def _att_in(M: ModulePres, i: int, X) -> list:
    """``Att H^i_m(M)`` intersected with the candidate set ``X``."""
    E = _ambient_ext(M.ring.nvars - i, M)
    if E.is_zero():
        return []
    return [p for p in X if is_associated(E, p)]


def _names(ps) -> list:
    return sorted(str(p) for p in ps)


# ---------- section 3 ----------

def verify_thm_3_3(M: ModulePres, X, n: int, candidates=None, assume: bool = False) -> TheoremVerdict:
    """``X inside S~_n(M)`` iff ``Att H^i_m(lambda M)`` misses ``X`` for ``d - n < i < d``."""
    R = M.ring
    v = TheoremVerdict("thm3.3")
    X = _prime_list(R, X)
    universe = _prime_list(R, candidates) if candidates else X
    if not _gate(v, "n positive", n >= 1):
        return v
    if not _gate(v, "M horizontally linked", bool(is_horizontally_linked(M, probe=False))):
        return v
    if not _gate(v, "X closed under generalization (among candidates)", _generalization_closed(X, universe)):
        return v
    if not _gate(v, "R_p Cohen-Macaulay, G-dim M_p finite on X", _finite_gdim_on(M, assume)):
        return v
    d = ring_dim(R)
    rep = serre_check(M, n, X)
    side_i = rep.holds
    L = lambda_(M)
    hits = {i: _att_in(L, i, X) for i in range(max(d - n + 1, 0), d)}
    side_ii = not any(hits.values())
    v.sides = {"(i) X in S~_n(M)": side_i, "(ii) Att misses X": side_ii}
    v.evidence = {"serre_failures": _names(p for p, ok in rep.by_prime.items() if not ok),
                  "att_hits": {i: _names(ps) for i, ps in hits.items()}}
    return _decide(v, side_i == side_ii)


def _relabel(v: TheoremVerdict, name: str) -> TheoremVerdict:
    v.theorem = name
    return v


def verify_cor_3_4(I, X, n: int, candidates=None) -> TheoremVerdict:
    """The cyclic case: ``R/I`` against its residual ``R/(0 : I)``."""
    R = _as_ideal_ring(I)
    M = ModulePres.cyclic(R, _as_ideal(R, I).minimal_gens())
    return _relabel(verify_thm_3_3(M, X, n, candidates), "cor3.4")


def _as_ideal_ring(I):
    if isinstance(I, Ideal):
        return I.ring
    raise TypeError("expected an Ideal")


def verify_cor_3_5(M: ModulePres, n: int, candidates) -> TheoremVerdict:
    """``M`` CM on ``X^{n-1}(R)`` iff attached primes of ``lambda M`` have depth at least ``n``."""
    from .homlat import in_X
    R = M.ring
    cands = _prime_list(R, candidates)
    X = [p for p in cands if in_X(R, n - 1, p)]
    v = _relabel(verify_thm_3_3(M, X, ring_dim(R), candidates), "cor3.5")
    v.evidence["X"] = _names(X)
    return v


def _over_quotient(M: ModulePres, c, primes):
    R = M.ring
    Rc = R.quotient(_as_ideal(R, c).minimal_gens())
    moved = [PrimeCandidate(Ideal.make(Rc, p.ideal.minimal_gens()), p.provenance, p.primality)
             for p in _prime_list(R, primes or [])]
    return M.over(Rc), moved


def verify_cor_3_11(M: ModulePres, c, X, n: int, candidates=None) -> TheoremVerdict:
    """The linkage criterion read over ``R/c`` for a module linked by ``c``."""
    Mc, Xc = _over_quotient(M, c, X)
    _, Cc = _over_quotient(M, c, candidates)
    return _relabel(verify_thm_3_3(Mc, Xc, n, Cc or None), "cor3.11")


def verify_cor_5_4(M: ModulePres, c, n: int, candidates) -> TheoremVerdict:
    """The duality of local cohomology read over ``R/c``."""
    Mc, Cc = _over_quotient(M, c, candidates)
    return _relabel(verify_cor_5_3(Mc, n, Cc), "cor5.4")


def verify_cor_3_6(M: ModulePres, n: int, candidates, assume: bool = False) -> TheoremVerdict:
    """The ``X = Spec R minus m`` case, where (ii) reads as finite length."""
    R = M.ring
    m = Ideal.maximal(R)
    X = [p for p in _prime_list(R, candidates) if p.ideal != m]
    v = verify_thm_3_3(M, X, n, candidates, assume)
    v.theorem = "cor3.6"
    if v.verdict == PASS:
        L = lambda_(M)
        d = ring_dim(R)
        fl = all(krull_dim(_ambient_ext(R.nvars - i, L)) <= 0 for i in range(max(d - n + 1, 0), d))
        v.sides["(ii') finite length"] = fl
        _decide(v, fl == v.sides["(i) X in S~_n(M)"], "finite-length reading disagrees")
    return v


def verify_thm_3_7(M: ModulePres, X, n: int, candidates=None, assume: bool = False) -> TheoremVerdict:
    """If ``Att H^j(lambda M)`` misses ``X`` for ``d-n < j < d`` then ``Att H^i(M)`` misses it for ``0 < i < n``."""
    R = M.ring
    v = TheoremVerdict("thm3.7")
    X = _prime_list(R, X)
    universe = _prime_list(R, candidates) if candidates else X
    d = ring_dim(R)
    if not _gate(v, "0 < n <= d", 0 < n <= d):
        return v
    if not _gate(v, "M horizontally linked", bool(is_horizontally_linked(M, probe=False))):
        return v
    if not _gate(v, "X closed under generalization (among candidates)", _generalization_closed(X, universe)):
        return v
    if not _gate(v, "R_p Cohen-Macaulay, G-dim M_p finite on X", _finite_gdim_on(M, assume)):
        return v
    L = lambda_(M)
    ante = not any(_att_in(L, j, X) for j in range(d - n + 1, d))
    cons = not any(_att_in(M, i, X) for i in range(1, n))
    v.sides = {"antecedent": ante, "consequent": cons}
    return _decide(v, (not ante) or cons, "antecedent holds but consequent fails")


def verify_cor_3_8(M: ModulePres, X, candidates, assume: bool = False) -> TheoremVerdict:
    """``Att H^i(M)`` inside ``X`` for ``0 < i < d`` iff the same for ``lambda M`` (``X`` specialization-closed)."""
    R = M.ring
    v = TheoremVerdict("cor3.8")
    X = _prime_list(R, X)
    universe = _prime_list(R, candidates)
    if not _gate(v, "X specialization-closed (among candidates)", _specialization_closed(X, universe)):
        return v
    if not _gate(v, "R_p Gorenstein off X", True if is_gorenstein(R) else ("trusted" if assume else False)):
        return v
    if not _gate(v, "M horizontally linked", bool(is_horizontally_linked(M, probe=False))):
        return v
    d = ring_dim(R)
    xs = {p.ideal for p in X}
    outside = [p for p in universe if p.ideal not in xs]
    L = lambda_(M)
    s1 = not any(_att_in(M, i, outside) for i in range(1, d))
    s2 = not any(_att_in(L, i, outside) for i in range(1, d))
    v.sides = {"(i) Att H(M) in X": s1, "(ii) Att H(lambda M) in X": s2}
    v.evidence["scope"] = "attached primes scanned over the candidate list"
    return _decide(v, s1 == s2)


def _linked_finite_positive(v, M) -> bool:
    R = M.ring
    if not _gate(v, "R Cohen-Macaulay", depth_profile(ModulePres.free(R)).cm):
        return False
    if not _gate(v, "M horizontally linked", bool(is_horizontally_linked(M, probe=False))):
        return False
    g = gdim(M)
    v.evidence["gdim"] = str(g)
    return _gate(v, "G-dim M finite and positive", g.finite and g.value > 0)


def _att_full(M: ModulePres, i: int, candidates):
    """Att over the candidates, plus the monomial scan when the data is multigraded."""
    from .cohatt import att_local_cohomology, CandidateError
    try:
        auto = att_local_cohomology(M, i)
    except CandidateError:
        auto = None
    cands = _prime_list(M.ring, candidates)
    scanned = _att_in(M, i, cands)
    return scanned, auto


def _complete(v, scanned, auto) -> bool:
    if auto is None:
        v.evidence["completeness"] = "candidate list trusted"
        return True
    missing = auto.ideals() - {p.ideal for p in scanned}
    if missing:
        v.verdict = INCONCLUSIVE
        v.reason = "candidate list misses attached primes: " + ", ".join(sorted(str(I) for I in missing))
        return False
    return True


def verify_thm_3_12(M: ModulePres, candidates) -> TheoremVerdict:
    """``Att H^c(lambda M) = {p in S_{d-c} minus S_{d-c+1} : depth M_p = d - c}`` with ``c = c(lambda M)``."""
    from .cohatt import c_value
    R = M.ring
    v = TheoremVerdict("thm3.12")
    if not _linked_finite_positive(v, M):
        return v
    L = lambda_(M)
    c = c_value(L)
    if not _gate(v, "lambda M not Cohen-Macaulay", c is not None, "c(lambda M) undefined: lambda M is CM"):
        return v
    d = ring_dim(R)
    cands = _prime_list(R, candidates)
    scanned, auto = _att_full(L, c, cands)
    if not _complete(v, scanned, auto):
        return v
    k = d - c
    lo, hi = serre_check(M, k, cands), serre_check(M, k + 1, cands)
    rhs = [p for p in cands if lo.by_prime[p] and not hi.by_prime[p] and depth_at_prime(M, p) == k]
    v.sides = {"Att": _names(scanned), "depth profile": _names(rhs), "c": c}
    return _decide(v, {p.ideal for p in scanned} == {p.ideal for p in rhs})


def verify_cor_3_13(M: ModulePres, n: int, candidates) -> TheoremVerdict:
    R = M.ring
    v = TheoremVerdict("cor3.13")
    d = ring_dim(R)
    if not _gate(v, "0 < n < d", 0 < n < d):
        return v
    if not _linked_finite_positive(v, M):
        return v
    cands = _prime_list(R, candidates)
    L = lambda_(M)
    top, auto = _att_full(L, d - n, cands)
    if not _complete(v, top, auto):
        return v
    higher = [p for i in range(d - n + 1, d) for p in _att_in(L, i, cands)]
    closure = [q for q in cands if any(p.ideal.issubset(q.ideal) for p in higher)]
    cl = {q.ideal for q in closure}
    lhs = [p for p in top if p.ideal not in cl]
    lo, hi = serre_check(M, n, cands), serre_check(M, n + 1, cands)
    rhs = [p for p in cands if lo.by_prime[p] and not hi.by_prime[p] and depth_at_prime(M, p) == n]
    v.sides = {"Att minus closure": _names(lhs), "depth profile": _names(rhs)}
    return _decide(v, {p.ideal for p in lhs} == {p.ideal for p in rhs})


def verify_lemma_3_2(M: ModulePres, C: ModulePres, n: int, candidates) -> TheoremVerdict:
    """``Ass Ext^{n+1}(Tr M, C) = Ass Ext^{n+1}(Tr M, R)`` for n-torsionfree ``M`` in ``A_C``."""
    R = M.ring
    v = TheoremVerdict("lemma3.2")
    if n >= 1 and not _gate(v, "M n-torsionfree", n_torsionfree(M, n)):
        return v
    if not _gate(v, "C semidualizing", is_semidualizing(C)):
        return v
    if not _gate(v, "M in the Auslander class of C", in_auslander_class(M, C)):
        return v
    if not _gate(v, "G-dim M finite", gdim(M).finite):
        return v
    cands = _prime_list(R, candidates)
    T = transpose(M)
    EC, ER = ext(n + 1, T, C), ext(n + 1, T, ModulePres.free(R))
    a = [p for p in cands if is_associated(EC, p)]
    b = [p for p in cands if is_associated(ER, p)]
    for E, found in ((EC, a), (ER, b)):
        if not E.is_zero() and not found:
            v.verdict, v.reason = INCONCLUSIVE, "a nonzero Ext has no associated prime among the candidates"
            return v
    v.sides = {"Ass Ext(TrM, C)": _names(a), "Ass Ext(TrM, R)": _names(b)}
    return _decide(v, {p.ideal for p in a} == {p.ideal for p in b})


def verify_thm_2_4(M: ModulePres, n: int, candidates) -> TheoremVerdict:
    """``n``-torsionfree iff ``S~_n`` (on the candidates) for modules of finite G-dimension."""
    v = TheoremVerdict("thm2.4")
    if not _gate(v, "G-dim M finite", gdim(M).finite):
        return v
    a = n_torsionfree(M, n)
    rep = serre_check(M, n, _prime_list(M.ring, candidates))
    v.sides = {"n-torsionfree": a, "S~_n on candidates": rep.holds}
    v.evidence["serre_failures"] = _names(p for p, ok in rep.by_prime.items() if not ok)
    return _decide(v, a == rep.holds)


# ---------- section 4 ----------

def _is_cm(M: ModulePres) -> bool:
    return depth_profile(M).cm


def verify_thm_4_1(M: ModulePres, c, candidates=None, generically_gorenstein: bool = True,
                   seed: int = 0) -> TheoremVerdict:
    """G_c-dim 0 and CM transfer between ``M`` and ``c lambda M``, plus ``lambda_c M = c lambda M``."""
    R = M.ring
    v = TheoremVerdict("thm4.1")
    c = _as_ideal(R, c)
    C = ideal_times_module(c, ModulePres.free(R))
    if not _gate(v, "R generically Gorenstein", "trusted" if generically_gorenstein else False):
        return v
    if not _gate(v, "c semidualizing", is_semidualizing(C)):
        return v
    if not _gate(v, "M horizontally linked", bool(is_horizontally_linked(M, probe=False))):
        return v
    L = lambda_(M)
    cL = ideal_times_module(c, L)
    iso = iso_probe(lambda_C(M, C), cL, seed=seed, twist_window=DEFAULT_TWIST_WINDOW)
    g1, g2 = gdim(M, C), gdim(cL, C)
    s_i = (g1.value == 0, g2.value == 0)
    v.sides["(i) G_c-dim 0"] = s_i
    v.sides["lambda_c M = c lambda M"] = str(iso)
    ok = s_i[0] == s_i[1]
    if g1.finite and depth_profile(ModulePres.free(R)).cm:
        s_iii = (_is_cm(M), _is_cm(cL))
        v.sides["(iii) CM"] = s_iii
        ok = ok and s_iii[0] == s_iii[1]
    if candidates and g1.finite:
        d = ring_dim(R)
        cands = _prime_list(R, candidates)
        rows = {}
        for n in range(1, d + 2):
            serre = serre_check(M, n, cands).holds
            vanish = all(ext(i, cL, C).is_zero() for i in range(1, n))
            rows[n] = (serre, vanish)
            ok = ok and serre == vanish
        v.sides["(ii) S~_n vs Ext vanishing"] = rows
    if iso.kind == "Unknown":
        v.verdict, v.reason = INCONCLUSIVE, "isomorphism probe undecided"
        return v
    return _decide(v, ok and iso.isomorphic)


def verify_thm_B(M: ModulePres, N: ModulePres, a, c, seed: int = 0) -> TheoremVerdict:
    """``N`` CM iff ``depth(M / cM) >= dim(R/a) - 1`` for CM ``M`` linked to ``N`` by ``a``."""
    R = M.ring
    v = TheoremVerdict("thmB")
    a, c = _as_ideal(R, a), _as_ideal(R, c)
    if not _gate(v, "R Cohen-Macaulay", depth_profile(ModulePres.free(R)).cm):
        return v
    agens = a.minimal_gens()
    Ra = R.quotient(agens)
    if not _gate(v, "R/a Cohen-Macaulay", depth_profile(ModulePres.free(Ra)).cm):
        return v
    w = canonical_module(Ra)
    ca = ideal_times_module(c, ModulePres.free(Ra))
    wiso = iso_probe(ca, w, seed=seed, twist_window=DEFAULT_TWIST_WINDOW)
    v.evidence["c/a vs canonical"] = str(wiso)
    if not _gate(v, "c/a is a canonical module of R/a", wiso.isomorphic):
        return v
    link = linked_by_ideal(M, N, a, seed=seed)
    if not _gate(v, "M linked to N by a", link.passed, f"linkage: {link}"):
        return v
    if not _gate(v, "M Cohen-Macaulay", _is_cm(M)):
        return v
    lhs = _is_cm(N)
    Q = quotient_by_ideal(M, c)
    dq = INFINITE if Q.is_zero() else depth(Q)
    bound = krull_dim(ModulePres.free(Ra)) - 1
    v.sides = {"N Cohen-Macaulay": lhs, "depth(M/cM) >= dim(R/a) - 1": dq >= bound}
    v.evidence.update({"depth(M/cM)": str(dq), "dim(R/a) - 1": bound})
    return _decide(v, lhs == (dq >= bound))


def verify_thm_4_5(M: ModulePres, assume: bool = False, window=(-8, 8)) -> TheoremVerdict:
    """``M (x) omega`` MCM iff ``lambda M`` is a ``(d+1)``-st syzygy, plus the Ext comparison."""
    R = M.ring
    v = TheoremVerdict("thm4.5")
    if not _gate(v, "R Cohen-Macaulay", depth_profile(ModulePres.free(R)).cm):
        return v
    if not _gate(v, "M stable", is_stable(M)):
        return v
    if not _gate(v, "M horizontally linked", bool(is_horizontally_linked(M, probe=False))):
        return v
    if not _gate(v, "G-dim finite on the punctured spectrum", _finite_gdim_on(M, assume)):
        return v
    d = ring_dim(R)
    w = canonical_module(R)
    Mw = tensor(M, w)
    s1 = not Mw.is_zero() and depth(Mw) == d
    s2 = nth_syzygy_test(lambda_(M), d + 1)
    v.sides = {"(i) M (x) omega MCM": s1, "(ii) lambda M (d+1)-syzygy": s2}
    Rf = ModulePres.free(R)
    tables = {}
    ok = True
    for i in range(1, d + 1):
        a = hilbert_dims(ext(i, Mw, w), window)
        b = hilbert_dims(ext(i, M, Rf), window)
        tables[i] = (_fmt(a.dims), _fmt(b.dims))
        ok = ok and a.dims == b.dims
    v.evidence["Ext(M(x)w, w) vs Ext(M, R)"] = tables
    v.sides["Ext tables equal"] = ok
    return _decide(v, s1 == s2 and ok, "biconditional or Ext comparison failed")


def verify_prop_4_6_forward(R: QuotientRing, modules=(), seed: int = 0) -> TheoremVerdict:
    """Over a Gorenstein ring of dimension ``> 1``, horizontal linkage preserves Cohen-Macaulayness."""
    v = TheoremVerdict("prop4.6")
    if not _gate(v, "R Gorenstein", is_gorenstein(R)):
        return v
    d = ring_dim(R)
    if not _gate(v, "dim R > 1", d > 1):
        return v
    k = ModulePres.cyclic(R, R.ambient.gens())
    tests = list(modules) + [syzygy(k, d + 1)]
    rows = []
    ok = True
    for j, M in enumerate(tests):
        name = M.name or f"module {j}"
        if j == len(tests) - 1:
            name = f"syzygy {d + 1} of k"
        cert = is_horizontally_linked(M, probe=False)
        if not cert or not _is_cm(M):
            rows.append((name, "skipped"))
            continue
        cm = _is_cm(lambda_(M))
        rows.append((name, cm))
        ok = ok and cm
    v.sides["lambda M Cohen-Macaulay"] = rows
    if rows[-1][1] == "skipped":
        v.verdict, v.reason = FAIL, "top syzygy of k not horizontally linked"
        return v
    return _decide(v, ok, "a Cohen-Macaulay linked module has non-CM lambda")


# ---------- section 5 ----------

def _shift_match(A: dict, B: dict, twists) -> object:
    """Smallest ``|t|`` with ``A[j] == B[j + t]`` on every ``j`` of ``A``."""
    for t in sorted(twists, key=lambda t: (abs(t), t)):
        if all(A[j] == B.get(j + t, 0) for j in A):
            return t
    return None


def _punctured_serre(v, M, n, candidates) -> bool:
    R = M.ring
    m = Ideal.maximal(R)
    U = [p for p in _prime_list(R, candidates) if p.ideal != m]
    rep = serre_check(M, n, U)
    v.evidence["punctured candidates"] = _names(U)
    return _gate(v, "S~_n on the punctured spectrum (candidates)", rep.holds)


def verify_thm_5_1(M: ModulePres, n: int, candidates, window=(-10, 10), search: int = 10) -> TheoremVerdict:
    """``H^i_m(M) = Ext^{i+1}(Tr M, R)`` for ``0 <= i < n`` at the maximal ideal, up to one twist."""
    from .cohatt import local_cohomology
    R = M.ring
    v = TheoremVerdict("thm5.1")
    if not _gate(v, "G-dim finite", gdim(M).finite):
        return v
    g = depth(ModulePres.free(R))
    if not _gate(v, "0 < n <= grade m", 0 < n <= g):
        return v
    if not _punctured_serre(v, M, n, candidates):
        return v
    lo, hi = window
    T = transpose(M)
    Rf = ModulePres.free(R)
    wide = (lo - search, hi + search)
    rows = {}
    for i in range(n):
        H = local_cohomology(M, i, window).dims
        E = hilbert_dims(ext(i + 1, T, Rf), wide).dims if not T.is_zero() else {d: 0 for d in range(wide[0], wide[1] + 1)}
        rows[i] = (H, E)
    # one uniform twist for all i
    found = None
    for t in sorted(range(-search, search + 1), key=lambda t: (abs(t), t)):
        if all(all(H[j] == E.get(j + t, 0) for j in H) for H, E in rows.values()):
            found = t
            break
    v.evidence["tables"] = {i: (_fmt(H), _fmt(E)) for i, (H, E) in rows.items()}
    v.sides["uniform twist"] = found
    return _decide(v, found is not None, "no uniform twist matches the tables")


def verify_cor_5_3(M: ModulePres, n: int, candidates, window=(-10, 10), search: int = 10) -> TheoremVerdict:
    """``dim H^i_m(M)_j = dim H^{d-i}_m(lambda M)_{t-j}`` for ``0 < i < n`` and one twist ``t``."""
    from .cohatt import local_cohomology
    R = M.ring
    v = TheoremVerdict("cor5.3")
    if not _gate(v, "R Gorenstein", is_gorenstein(R)):
        return v
    d = ring_dim(R)
    if not _gate(v, "dim R > 1", d > 1):
        return v
    if not _gate(v, "M horizontally linked", bool(is_horizontally_linked(M, probe=False))):
        return v
    if not _punctured_serre(v, M, n, candidates):
        return v
    lo, hi = window
    L = lambda_(M)
    wide = (lo - search - abs(lo) - abs(hi), hi + search + abs(lo) + abs(hi))
    rows = {}
    for i in range(1, n):
        if not 0 <= d - i <= R.nvars:
            continue
        rows[i] = (local_cohomology(M, i, window).dims, local_cohomology(L, d - i, wide).dims)
    found = None
    for t in sorted(range(-search, search + 1), key=lambda t: (abs(t), t)):
        if all(all(H[j] == G.get(t - j, 0) for j in H) for H, G in rows.values()):
            found = t
            break
    v.evidence["tables"] = {i: (_fmt(H), _fmt({j: G[j] for j in G if G[j]})) for i, (H, G) in rows.items()}
    v.sides["uniform twist"] = found
    v.sides["indices"] = sorted(rows)
    return _decide(v, found is not None, "no uniform twist matches the tables")


def _fmt(tab: dict) -> str:
    return " ".join(f"{d}:{x}" for d, x in sorted(tab.items()) if x) or "0"
