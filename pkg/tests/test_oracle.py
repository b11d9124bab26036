from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from modlink.corpus import cyclic, ring
from modlink.gbres import ModulePres, hilbert_dims
from modlink.oracle import oracle_dims, oracle_kernel_dims, rank_mod_p


def _brute_rank(A, p):
    # Fraction-free elimination in Python integers, independent of the numpy path.
    A = [[int(x) % p for x in row] for row in A]
    r = 0
    cols = len(A[0]) if A else 0
    for c in range(cols):
        piv = next((i for i in range(r, len(A)) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = pow(A[r][c], -1, p)
        A[r] = [x * inv % p for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [(x - f * y) % p for x, y in zip(A[i], A[r])]
        r += 1
    return r


@given(st.lists(st.lists(st.integers(0, 6), min_size=4, max_size=4), min_size=1, max_size=5))
@settings(max_examples=60, deadline=None)
def test_rank_matches_plain_elimination(rows):
    assert rank_mod_p(np.array(rows), 7) == _brute_rank(rows, 7)


def test_free_module_dims():
    assert oracle_dims(ModulePres.free(ring("xy")), (0, 2)).values() == [1, 2, 3]


def test_cyclic_over_hypersurface():
    R = ring("xy", "x*y")
    M = cyclic(R, "x")
    assert oracle_dims(M, (0, 3)).values() == [1, 1, 1, 1]
    assert oracle_dims(M, (0, 3)).values() == hilbert_dims(M, (0, 3)).values()


def test_kernel_of_multiplication():
    from modlink.gbres import HomMatrix
    R = ring("xy", "x*y")
    m = HomMatrix.from_rows(R, [[R.ambient("x")]], target=(0,), source=(1,))
    # x : R(-1) -> R has kernel y*R(-1), starting in degree 2
    assert oracle_kernel_dims(m, (0, 3)).values() == [0, 0, 1, 1]


def test_cap_is_enforced():
    S = ring("abcdefgh")
    with pytest.raises(ValueError):
        oracle_dims(ModulePres.free(S), (12, 12))
