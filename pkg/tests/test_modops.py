from __future__ import annotations

from modlink.corpus import cyclic, ideal_module, residue_field, ring
from modlink.gbres import Ideal, ModulePres, hilbert_dims
from modlink.modops import (
    dual,
    hom_module,
    ideal_times_module,
    is_stable,
    iso_probe,
    lambda_,
    lambda_C,
    pushforward,
    strip_free,
    syzygy,
    tensor,
    trace_ideal,
    transpose,
    transpose_C,
)
from modlink.oracle import oracle_dims


def test_hom_from_residue_field_to_a_domain_vanishes():
    S = ring("xy")
    assert hom_module(residue_field(S), ModulePres.free(S)).is_zero()


def test_transpose_of_residue_field_in_one_variable():
    S = ring("x")
    assert iso_probe(transpose(residue_field(S)), residue_field(S).twist(1)).isomorphic


def test_lambda_of_residue_field_over_polynomial_ring_is_free():
    S = ring("xy")
    assert iso_probe(lambda_(residue_field(S)), ModulePres.free(S)).isomorphic


def test_hypersurface_computations(node):
    Rx, Ry = cyclic(node, "x"), cyclic(node, "y")
    assert iso_probe(syzygy(Rx), Ry.twist(-1)).isomorphic
    assert iso_probe(transpose(Rx), Rx.twist(1)).isomorphic
    assert iso_probe(lambda_(Rx), Ry).isomorphic
    assert iso_probe(lambda_(lambda_(Rx)), Rx).isomorphic


def test_probe_distinguishes_by_hilbert_function():
    S = ring("xy")
    v = iso_probe(cyclic(S, "x"), cyclic(S, "x^2"))
    assert v.distinguished and "hilbert" in v.invariant


def test_ideal_times_module_against_oracle(node):
    M = ideal_times_module(Ideal.make(node, [node.ambient("x")]), cyclic(node, "y"))
    assert hilbert_dims(M, (0, 4)).values() == [0, 1, 1, 1, 1]
    assert oracle_dims(M, (0, 4)).values() == [0, 1, 1, 1, 1]


def test_maximal_ideal_is_stable_free_module_is_not(planes):
    assert is_stable(ideal_module(planes, "x", "y", "z"))
    assert not is_stable(ModulePres.free(planes))


def test_trace_ideal(node):
    assert trace_ideal(cyclic(node, "x")) == Ideal.make(node, [node.ambient("y")])


def test_strip_free_splits_off_the_free_summand(node):
    from modlink.modops import direct_sum
    M = direct_sum(cyclic(node, "x"), ModulePres.free(node, (2,)))
    stable, twists = strip_free(M)
    assert twists == (2,)
    assert iso_probe(stable, cyclic(node, "x")).isomorphic


def test_transpose_relative_to_the_ring_is_the_transpose(node):
    R = ModulePres.free(node)
    Rx = cyclic(node, "x")
    assert iso_probe(transpose_C(Rx, R), transpose(Rx)).isomorphic
    assert iso_probe(lambda_C(Rx, R), lambda_(Rx)).isomorphic


def test_tensor_and_dual():
    S = ring("xy")
    k = residue_field(S)
    assert iso_probe(tensor(k, k), k).isomorphic
    assert iso_probe(dual(ModulePres.free(S, (1, 2))), ModulePres.free(S, (-1, -2))).isomorphic


def test_pushforward_of_the_maximal_ideal(planes):
    pf = pushforward(ideal_module(planes, "x", "y", "z"))
    assert pf.free == (0,)
    assert pf.map.is_injective()


def test_probe_is_deterministic_per_seed(node):
    a = iso_probe(cyclic(node, "x"), cyclic(node, "y"), seed=5)
    b = iso_probe(cyclic(node, "x"), cyclic(node, "y"), seed=5)
    assert str(a) == str(b)
