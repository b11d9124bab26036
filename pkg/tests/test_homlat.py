from __future__ import annotations

import pytest

from modlink.corpus import cyclic, ideal_module, primes, residue_field, ring
from modlink.gbres import Ideal, ModulePres, hilbert_dims
from modlink.homlat import (
    INFINITE,
    depth,
    depth_at_prime,
    depth_profile,
    depth_via_ext,
    ext,
    gc_perfect,
    gdim,
    grade,
    in_auslander_class,
    is_semidualizing,
    krull_dim,
    n_torsionfree,
    serre_check,
    tor,
)


def test_ext_of_residue_field_into_the_plane():
    S = ring("xy")
    E = ext(2, residue_field(S), ModulePres.free(S))
    assert hilbert_dims(E, (-4, 2)).support() == [-2]
    assert ext(1, residue_field(S), ModulePres.free(S)).is_zero()


def test_ext_vanishes_for_a_linked_hypersurface_module(node):
    Rx, R = cyclic(node, "x"), ModulePres.free(node)
    assert all(ext(i, Rx, R).is_zero() for i in range(1, 5))


def test_tor_of_residue_fields_is_koszul():
    S = ring("xy")
    k = residue_field(S)
    assert [sum(hilbert_dims(tor(i, k, k), (0, 4)).values()) for i in range(3)] == [1, 2, 1]


def test_depth_and_dimension():
    S = ring("xyz")
    M = cyclic(S, "x*y", "x*z")
    prof = depth_profile(M)
    assert (prof.depth, prof.dim, prof.cm) == (1, 2, False)
    assert depth_via_ext(M) == 1
    assert krull_dim(ModulePres.zero(S)) == -1
    with pytest.raises(ValueError):
        depth(ModulePres.zero(S))


def test_grade():
    S = ring("xyz")
    R = ModulePres.free(S)
    assert grade(Ideal.make(S, [S.ambient("x")]), R) == 1
    assert grade(Ideal.make(S, [S.ambient("x"), S.ambient("y")]), R) == 2
    assert grade(Ideal.make(S, [S.ambient("x*y"), S.ambient("x*z")]), R) == 1


def test_depth_at_prime(planes):
    m = ideal_module(planes, "x", "y", "z")
    pm, px = primes(planes, ("x", "y", "z"), ("x",))
    assert depth_at_prime(m, pm) == 1
    assert depth_at_prime(ModulePres.free(planes), px) == 0
    assert depth_at_prime(cyclic(planes, "x"), primes(planes, ("y",))[0]) == INFINITE


def test_serre_condition():
    S = ring("xyz")
    M = cyclic(S, "x*y", "x*z")
    pm = primes(S, ("x", "y", "z"))
    assert not serre_check(M, 2, pm).holds


def test_torsionfreeness(node):
    assert not n_torsionfree(residue_field(node), 1)
    assert n_torsionfree(cyclic(node, "x"), 4)


def test_gorenstein_dimension(node, planes):
    assert gdim(cyclic(node, "x")) == 0
    assert gdim(residue_field(planes)) == 2
    assert gdim(ModulePres.free(planes)) == 0


def test_semidualizing_modules(node):
    assert is_semidualizing(ModulePres.free(node))
    assert not is_semidualizing(ideal_module(node, "x", "y"))
    assert in_auslander_class(cyclic(node, "x"), ModulePres.free(node))


def test_perfect_ideals():
    S = ring("xyz")
    R = ModulePres.free(S)
    assert gc_perfect(Ideal.make(S, [S.ambient("x")]), R)
    assert not gc_perfect(Ideal.make(S, [S.ambient("x*y"), S.ambient("x*z")]), R)
