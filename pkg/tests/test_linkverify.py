from __future__ import annotations

from modlink.corpus import (
    cyclic,
    ideal_module,
    plane_pair_primes,
    residue_field,
    ring,
    twisted_cubic_primes,
)
from modlink.gbres import Ideal
from modlink.linkverify import (
    FAIL,
    INCONCLUSIVE,
    PASS,
    TheoremVerdict,
    _decide,
    is_gorenstein,
    is_horizontally_linked,
    linked_by_ideal,
    verify_cor_3_5,
    verify_thm_3_3,
    verify_thm_3_12,
    verify_thm_4_1,
    verify_thm_5_1,
)


def test_linkage_certificate(node):
    c = is_horizontally_linked(cyclic(node, "x"))
    assert c.verdict and c.coherent and c.lambda_roundtrip.isomorphic
    c = is_horizontally_linked(residue_field(node))
    assert not c.verdict and c.coherent


def test_linkage_needs_the_ideal_to_annihilate():
    S = ring("xy")
    v = linked_by_ideal(cyclic(S, "x"), cyclic(S, "y"), Ideal.make(S, [S.ambient("x")]))
    assert v.verdict == FAIL


def test_gorenstein_detection(node, cubic):
    assert is_gorenstein(node)
    assert not is_gorenstein(cubic)
    assert not is_gorenstein(ring("xyz", "x*y", "x*z"))


def test_biconditional_fails_only_on_disagreement():
    v = _decide(TheoremVerdict("t"), False)
    assert v.verdict == FAIL
    assert _decide(TheoremVerdict("t"), True).verdict == PASS


def test_unlinked_module_is_inconclusive_not_pass(planes):
    v = verify_thm_3_3(residue_field(planes), plane_pair_primes(planes), 1)
    assert v.verdict == INCONCLUSIVE
    assert "horizontally linked" in v.reason


def test_att_prime_equality_needs_non_cm_lambda(node):
    # lambda(R/x) = R/y is Cohen-Macaulay, so c(lambda M) is undefined
    v = verify_thm_3_12(cyclic(node, "x"), plane_pair_primes(node))
    assert v.verdict == INCONCLUSIVE


def test_missing_candidate_is_reported(planes):
    m = ideal_module(planes, "x", "y", "z")
    partial = [p for p in plane_pair_primes(planes) if p.ideal != Ideal.maximal(planes)]
    v = verify_thm_3_12(m, partial)
    assert v.verdict == INCONCLUSIVE and "misses" in v.reason


def test_cm_on_low_depth_locus(planes):
    v = verify_cor_3_5(ideal_module(planes, "x", "y", "z"), 1, plane_pair_primes(planes))
    assert v.verdict == PASS


def test_non_semidualizing_ideal_is_inconclusive(cubic):
    v = verify_thm_4_1(ideal_module(cubic, "a", "b", "c"), ["a", "b", "c"], twisted_cubic_primes(cubic))
    assert v.verdict == INCONCLUSIVE


def test_zeroth_local_cohomology_matches_ext_one(planes):
    # i = 0 is included: H^0(m) = 0 and Ext^1(Tr m, R) = 0
    v = verify_thm_5_1(ideal_module(planes, "x", "y", "z"), 2, plane_pair_primes(planes))
    assert v.verdict == PASS
    assert v.evidence["tables"][0] == ("0", "0")


def test_serre_everywhere_matches_vanishing_cohomology(planes):
    # with X = every candidate and n = dim R, (i) holds iff H^i(lambda M) = 0 for 0 < i < d
    from modlink.cohatt import _ambient_ext
    from modlink.homlat import ring_dim
    from modlink.modops import lambda_

    P = plane_pair_primes(planes)
    d = ring_dim(planes)
    for M in (cyclic(planes, "x"), ideal_module(planes, "x", "y", "z")):
        v = verify_thm_3_3(M, P, d, P)
        assert v.verdict == PASS
        L = lambda_(M)
        vanish = all(_ambient_ext(planes.nvars - i, L).is_zero() for i in range(1, d))
        assert v.sides["(i) X in S~_n(M)"] == vanish
