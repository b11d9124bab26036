"""Graded local cohomology by duality, canonical modules, Ass and Att.

``H^i_m(M)_d`` is read off as ``dim Ext^{n-i}_S(M, S(-n))_{-d}`` over the
ambient polynomial ring ``S`` in ``n`` variables.  Associated and attached
primes are found by scanning candidate primes; for multigraded data the
candidates are generated automatically from the variables.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .gbres import GradedDimTable, Ideal, ModulePres, QuotientRing, hilbert_dims, minimal_presentation
from .homlat import (
    PrimeCandidate,
    _as_ideal,
    annihilator,
    depth,
    depth_profile,
    ext,
    krull_dim,
)
from .modops import hom_module


class CandidateError(ValueError):
    """No candidate primes were given and none can be generated."""


def _ambient_ext(i: int, M: ModulePres) -> ModulePres:
    """``Ext^i_S(M, S(-n))`` read back over the ring of ``M``."""
    R = M.ring
    n = R.nvars
    if i < 0 or i > n:
        return ModulePres.zero(R)
    MS = M.over_ambient()
    S = MS.ring
    E = ext(i, MS, ModulePres.free(S)).twist(-n)
    return minimal_presentation(E.over(R))


def canonical_module(R: QuotientRing) -> ModulePres:
    """``omega_R = Ext^c_S(R, S(-n))`` for a Cohen-Macaulay ``R`` of codimension ``c``."""
    prof = depth_profile(ModulePres.free(R))
    if not prof.cm:
        raise ValueError(f"ring is not Cohen-Macaulay (depth {prof.depth}, dim {prof.dim})")
    c = R.nvars - prof.dim
    w = _ambient_ext(c, ModulePres.free(R))
    w.name = "omega"
    return w


def local_cohomology(M: ModulePres, i: int, window=(-8, 8)) -> GradedDimTable:
    """``dim_k H^i_m(M)_d`` for ``d`` in the window."""
    lo, hi = window
    E = _ambient_ext(M.ring.nvars - i, M)
    dual = hilbert_dims(E, (-hi, -lo))
    return GradedDimTable((lo, hi), {d: dual[-d] for d in range(lo, hi + 1)})


@dataclass
class CohomologyTable:
    module: ModulePres
    window: tuple
    tables: dict = field(default_factory=dict)
    nonzero: dict = field(default_factory=dict)
    depth: int = None
    dim: int = None

    def __str__(self):
        return "\n".join(f"H^{i}: {t}" for i, t in sorted(self.tables.items()))


def cohomology_table(M: ModulePres, window=(-8, 8)) -> CohomologyTable:
    """All ``H^i_m(M)``, with Grothendieck vanishing and nonvanishing checked."""
    n = M.ring.nvars
    tab = CohomologyTable(M, window)
    if M.is_zero():
        return tab
    tab.depth, tab.dim = depth(M), krull_dim(M)
    for i in range(n + 1):
        E = _ambient_ext(n - i, M)
        tab.nonzero[i] = not E.is_zero()
        dual = hilbert_dims(E, (-window[1], -window[0]))
        tab.tables[i] = GradedDimTable(window, {d: dual[-d] for d in range(window[0], window[1] + 1)})
    for i, nz in tab.nonzero.items():
        if nz and not tab.depth <= i <= tab.dim:
            raise ArithmeticError(f"H^{i} nonzero outside [depth, dim]")
    if not (tab.nonzero[tab.depth] and tab.nonzero[tab.dim]):
        raise ArithmeticError("H^depth or H^dim vanishes")
    return tab


def c_value(M: ModulePres):
    """``sup{i < dim M : H^i_m(M) != 0}``, or None when there is no such ``i``."""
    if M.is_zero():
        return None
    n = M.ring.nvars
    d = krull_dim(M)
    found = [i for i in range(d) if not _ambient_ext(n - i, M).is_zero()]
    return max(found) if found else None


# ---------- primes ----------

@dataclass
class AttAssReport:
    kind: str            # "Ass" or "Att"
    primes: list
    method: str          # "duality", "candidate-scan" or "monomial-minimal-primes"
    finite_length: bool = None

    def ideals(self) -> set:
        return {p.ideal for p in self.primes}

    def __str__(self):
        body = ", ".join(str(p) for p in self.primes)
        return f"{self.kind} = {{{body}}} [{self.method}]"


def _monomial_supports(gens) -> list:
    out = []
    for g in gens:
        if len(g.terms) != 1:
            raise ValueError(f"not a monomial: {g}")
        (e, _), = g.terms.items()
        out.append(frozenset(i for i, a in enumerate(e) if a))
    return out


def monomial_minimal_primes(I) -> list:
    """Minimal primes of a monomial ideal: the minimal vertex covers of its supports."""
    gens = I.minimal_gens() if isinstance(I, Ideal) else list(I)
    R = I.ring if isinstance(I, Ideal) else None
    supports = _monomial_supports(gens)
    S = (R.ambient if R else gens[0].ring)
    n = S.nvars
    covers = []
    for size in range(n + 1):
        for V in combinations(range(n), size):
            V = frozenset(V)
            if all(s & V for s in supports) and not any(c <= V for c in covers):
                covers.append(V)
    ring = R if R else QuotientRing(S, ())
    return [PrimeCandidate(Ideal.make(ring, [S.var(S.variables[i]) for i in sorted(V)]),
                           "monomial-computed", "verified") for V in covers]


def _is_multigraded(M: ModulePres) -> bool:
    """Monomial ring and a presentation admitting a consistent ``Z^n`` grading."""
    R = M.ring
    if not all(len(g.terms) == 1 for g in R.defining_ideal):
        return False
    A = M.presentation
    n = R.nvars
    adj = {}
    for j, v in enumerate(A.cols):
        by_row = {}
        for (i, e), _ in v.items():
            if i in by_row:
                return False
            by_row[i] = e
        for i, e in by_row.items():
            adj.setdefault(("r", i), []).append((("c", j), e, 1))
            adj.setdefault(("c", j), []).append((("r", i), e, -1))
    deg = {}
    for start in list(adj):
        if start in deg:
            continue
        deg[start] = (0,) * n
        stack = [start]
        while stack:
            u = stack.pop()
            for w, e, sgn in adj[u]:
                want = tuple(a + sgn * b for a, b in zip(deg[u], e))
                if w in deg:
                    if deg[w] != want:
                        return False
                else:
                    deg[w] = want
                    stack.append(w)
    return True


def _variable_primes_over(ann: Ideal) -> list:
    """Variable-generated primes of the ring containing ``ann``."""
    R = ann.ring
    S = R.ambient
    n = S.nvars
    supports = _monomial_supports(ann.minimal_gens()) if not ann.is_zero() else []
    ring_supports = _monomial_supports(list(R.defining_ideal))
    out = []
    for size in range(n + 1):
        for V in combinations(range(n), size):
            V = frozenset(V)
            if all(s & V for s in supports + ring_supports):
                out.append(PrimeCandidate(Ideal.make(R, [S.var(S.variables[i]) for i in sorted(V)]),
                                          "monomial-computed", "verified"))
    return out


def _candidates(M: ModulePres, candidates):
    R = M.ring
    if candidates:
        return [p if isinstance(p, PrimeCandidate) else PrimeCandidate(_as_ideal(R, p)) for p in candidates], \
            "candidate-scan"
    if _is_multigraded(M):
        return _variable_primes_over(annihilator(M)), "monomial-minimal-primes"
    raise CandidateError("no candidate primes given and the module is not multigraded")


def is_associated(M: ModulePres, p) -> bool:
    """``p in Ass M`` iff ``(0 :_M p)`` is nonzero with annihilator inside ``p``."""
    R = M.ring
    P = p.ideal if isinstance(p, PrimeCandidate) else _as_ideal(R, p)
    soc = hom_module(ModulePres.cyclic(R, P.minimal_gens()), M)
    if soc.is_zero():
        return False
    return annihilator(soc).issubset(P)


def ass_module(M: ModulePres, candidates=None) -> AttAssReport:
    if M.is_zero():
        return AttAssReport("Ass", [], "candidate-scan" if candidates else "monomial-minimal-primes")
    cands, method = _candidates(minimal_presentation(M), candidates)
    return AttAssReport("Ass", [p for p in cands if is_associated(M, p)], method)


def att_local_cohomology(M: ModulePres, i: int, candidates=None) -> AttAssReport:
    """``Att H^i_m(M) = Ass Ext^{n-i}_S(M, S(-n))``."""
    E = _ambient_ext(M.ring.nvars - i, M)
    if E.is_zero():
        return AttAssReport("Att", [], "duality", True)
    rep = ass_module(E, candidates)
    return AttAssReport("Att", rep.primes, "duality+" + rep.method, krull_dim(E) <= 0)
