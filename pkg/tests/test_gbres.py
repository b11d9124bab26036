from __future__ import annotations

from math import comb

import pytest

from modlink.corpus import cyclic, ideal_module, residue_field, ring
from modlink.gbres import (
    Ideal,
    ModulePres,
    TruncationError,
    hilbert_dims,
    ideal_ops,
    minimal_presentation,
    resolve,
    set_limits,
    LIMITS,
)


def test_polynomial_ring_dims_are_binomials():
    S = ring("xyz")
    dims = hilbert_dims(ModulePres.free(S), (0, 6)).values()
    assert dims == [comb(d + 2, 2) for d in range(7)]


def test_hypersurface_dims():
    R = ring("xy", "x*y")
    assert hilbert_dims(ModulePres.free(R), (0, 4)).values() == [1, 2, 2, 2, 2]
    assert hilbert_dims(cyclic(R, "x"), (0, 3)).values() == [1, 1, 1, 1]


def test_twist_shifts_degrees():
    S = ring("xy")
    assert hilbert_dims(ModulePres.free(S).twist(2), (-2, 1)).values() == [1, 2, 3, 4]


def test_koszul_resolution_of_the_residue_field():
    k = residue_field(ring("xyz"))
    res = resolve(k, 5)
    assert res.ranks == [1, 3, 3, 1]
    assert res.length == 3


def test_residue_field_over_a_hypersurface_has_infinite_resolution():
    k = residue_field(ring("xyz", "x*y"))
    # ranks grow: 1, 3, 4, 4, ...
    assert resolve(k, 3).ranks == [1, 3, 4, 4]


def test_minimal_presentation_drops_units():
    S = ring("xy")
    from modlink.gbres import HomMatrix
    m = HomMatrix.from_rows(S, [[S.ambient("1"), S.ambient("x")], [S.ambient("0"), S.ambient("y")]],
                            target=(0, 0), source=(0, 1))
    P = minimal_presentation(ModulePres.coker(m))
    assert P.rank == 1
    assert hilbert_dims(P, (0, 3)).values() == hilbert_dims(cyclic(S, "y"), (0, 3)).values()


def test_ideal_operations():
    S = ring("xy")
    xy = Ideal.make(S, [S.ambient("x*y")])
    x = Ideal.make(S, [S.ambient("x")])
    assert ideal_ops(xy, x, "quotient") == Ideal.make(S, [S.ambient("y")])
    ci = Ideal.make(S, [S.ambient("x^2"), S.ambient("y^2")])
    m = Ideal.maximal(S)
    J = ideal_ops(ci, m, "quotient")
    assert J == Ideal.make(S, [S.ambient(g) for g in ("x^2", "x*y", "y^2")])
    assert ideal_ops(ci, J, "quotient") == m
    assert ideal_ops(x, Ideal.make(S, [S.ambient("y")]), "intersection") == xy


def test_degree_cap_truncates():
    old = LIMITS.max_degree
    try:
        set_limits(max_degree=2)
        with pytest.raises(TruncationError):
            resolve(residue_field(ring("xyz")), 3)
    finally:
        set_limits(max_degree=old)


def test_ideal_module_generators_sit_in_degree_one():
    m = ideal_module(ring("xy"), "x", "y")
    assert minimal_presentation(m).gens_twists == (1, 1)
