from __future__ import annotations

import pytest

from modlink.cohatt import (
    ass_module,
    att_local_cohomology,
    c_value,
    canonical_module,
    cohomology_table,
    local_cohomology,
    monomial_minimal_primes,
)
from modlink.corpus import cyclic, ring
from modlink.gbres import Ideal, ModulePres, minimal_presentation
from modlink.homlat import is_semidualizing
from modlink.modops import iso_probe


def _names(rep):
    return sorted(str(I) for I in rep.ideals())


def test_canonical_modules(node, cubic):
    S = ring("xy")
    assert minimal_presentation(canonical_module(S)).gens_twists == (2,)
    assert iso_probe(canonical_module(node), ModulePres.free(node)).isomorphic
    w = minimal_presentation(canonical_module(cubic))
    assert w.gens_twists == (1, 1)
    assert is_semidualizing(w)


def test_canonical_module_needs_cohen_macaulay():
    with pytest.raises(ValueError):
        canonical_module(ring("xyz", "x*y", "x*z"))


def test_top_local_cohomology_of_the_plane():
    S = ring("xy")
    H = local_cohomology(ModulePres.free(S), 2, (-4, 0))
    assert [H[d] for d in (-2, -3, -4)] == [1, 2, 3]
    assert H[-1] == 0 and H[0] == 0


def test_zeroth_local_cohomology_is_the_torsion():
    S = ring("xy")
    H = local_cohomology(cyclic(S, "x^2", "x*y"), 0, (-2, 4))
    assert H.support() == [1]


def test_grothendieck_bounds_hold_on_a_mixed_module():
    tab = cohomology_table(cyclic(ring("xyz"), "x*y", "x*z"))
    assert (tab.depth, tab.dim) == (1, 2)
    assert [i for i, nz in tab.nonzero.items() if nz] == [1, 2]


def test_c_value():
    S = ring("xyz")
    assert c_value(cyclic(S, "x*y", "x*z")) == 1
    assert c_value(cyclic(S, "x")) is None
    assert c_value(ModulePres.zero(S)) is None


def test_associated_primes():
    S = ring("xyz")
    assert _names(ass_module(cyclic(S, "x*y", "x*z"))) == ["(x)", "(z, y)"]
    assert _names(ass_module(cyclic(S, "x^2"))) == ["(x)"]


def test_attached_primes():
    S = ring("xy")
    assert _names(att_local_cohomology(ModulePres.free(S), 2)) == ["(0)"]
    T = ring("xyz")
    assert _names(att_local_cohomology(cyclic(T, "x*y", "x*z"), 1)) == ["(z, y)"]


def test_minimal_primes_are_vertex_covers():
    S = ring("xyz")
    I = Ideal.make(S, [S.ambient("x*y"), S.ambient("y*z")])
    assert sorted(str(p) for p in monomial_minimal_primes(I)) == ["(y)", "(z, x)"]
