"""Dense degreewise linear algebra over F_p.

This is the independent check on the Groebner kernel: every graded piece of a
presentation is written out as an explicit matrix on monomial bases and
ranked by Gaussian elimination.  Nothing here touches normal forms.
"""

from __future__ import annotations

import numpy as np

from .polycore import pmul

MAX_ORACLE_COLUMNS = 20000


def rank_mod_p(A, p: int) -> int:
    """Rank of an integer matrix over F_p (row reduction with int64 arithmetic)."""
    A = np.array(A, dtype=np.int64) % p
    if A.size == 0:
        return 0
    m, n = A.shape
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        A[r] = A[r] * pow(int(A[r, c]), -1, p) % p
        below = np.nonzero(A[r + 1:, c])[0] + r + 1
        if below.size:
            A[below] = (A[below] - np.outer(A[below, c], A[r])) % p
        r += 1
    return r


def nullity_mod_p(A, p: int) -> int:
    A = np.asarray(A)
    return A.shape[1] - rank_mod_p(A, p) if A.ndim == 2 else 0


def _spanning_rows(M, d: int):
    """Rows spanning (im(presentation) + I*F)_d, in the monomial basis of F_d."""
    S = M.ring.ambient
    target = M.presentation.target
    basis = {}
    for c, a in enumerate(target):
        for e in S.monomials(d - a):
            basis[(c, e)] = len(basis)
    rows = []

    def emit(vec_terms):
        row = np.zeros(len(basis), dtype=np.int64)
        for t, x in vec_terms.items():
            row[basis[t]] = x
        rows.append(row)

    m = M.presentation
    for j, b in enumerate(m.source):
        col = {}
        for (c, e), x in m.cols[j].items():
            col.setdefault(c, {})[e] = x
        for mono in S.monomials(d - b):
            out = {}
            for c, f in col.items():
                for e, x in pmul(f, {mono: 1}, S.p).items():
                    out[(c, e)] = x
            emit(out)
    for g in M.ring.defining_ideal:
        dg = g.degree()
        for c, a in enumerate(target):
            for mono in S.monomials(d - a - dg):
                emit({(c, e): x for e, x in pmul(g.terms, {mono: 1}, S.p).items()})
    return basis, rows


def oracle_dims(M, window=(-2, 8)):
    """``dim_k M_d`` for ``d`` in the window, by rank computations only."""
    from .gbres import GradedDimTable

    lo, hi = window
    p = M.ring.p
    dims = {}
    for d in range(lo, hi + 1):
        basis, rows = _spanning_rows(M, d)
        if len(basis) > MAX_ORACLE_COLUMNS:
            raise ValueError(f"degree {d} has {len(basis)} monomials, above the oracle cap")
        if not basis:
            dims[d] = 0
            continue
        rk = rank_mod_p(np.array(rows), p) if rows else 0
        dims[d] = len(basis) - rk
    return GradedDimTable((lo, hi), dims)


def oracle_kernel_dims(m, window=(-2, 8)):
    """``dim_k ker(m)_d`` for a matrix ``m : R^source -> R^target``.

    The kernel over ``R = S/I`` is counted as the kernel of the induced map
    ``R^source_d -> R^target_d`` on quotient spaces.
    """
    from .gbres import GradedDimTable, ModulePres, HomMatrix

    lo, hi = window
    ring = m.ring
    p = ring.p
    src_free = ModulePres(ring, HomMatrix.zero(ring, m.source, ()))
    tgt_free = ModulePres(ring, HomMatrix.zero(ring, m.target, ()))
    dims = {}
    for d in range(lo, hi + 1):
        sbasis, srows = _spanning_rows(src_free, d)
        tbasis, trows = _spanning_rows(tgt_free, d)
        # image of each source monomial basis vector, stacked over the target relations
        imgs = []
        for (j, mono) in sbasis:
            out = np.zeros(len(tbasis), dtype=np.int64)
            for (c, e), x in m.cols[j].items():
                for e2, y in pmul({e: x}, {mono: 1}, p).items():
                    out[tbasis[(c, e2)]] = (out[tbasis[(c, e2)]] + y) % p
            imgs.append(out)
        # dim ker on R-quotients = dim{(s, t) : img(s) in span(trows)} - dim(srows-span)
        ns = len(sbasis)
        if ns == 0:
            dims[d] = 0
            continue
        top = np.array(imgs).reshape(ns, len(tbasis)) if tbasis else np.zeros((ns, 0), dtype=np.int64)
        bottom = np.array(trows).reshape(len(trows), len(tbasis)) if trows else np.zeros((0, len(tbasis)), dtype=np.int64)
        stacked = np.vstack([top, bottom])
        # kernel of the row space map: vectors (a, b) with a*top + b*bottom = 0
        k_total = stacked.shape[0] - rank_mod_p(stacked, p)
        k_bottom = bottom.shape[0] - rank_mod_p(bottom, p)
        lifted = k_total - k_bottom  # dimension of {a : a*top in rowspace(bottom)}
        r_src = rank_mod_p(np.array(srows), p) if srows else 0
        dims[d] = lifted - r_src
    return GradedDimTable((lo, hi), dims)
