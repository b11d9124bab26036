from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from modlink.polycore import Poly, PolyRing, PolySyntaxError, PrimeField, format_poly

S = PolyRing(("x", "y", "z"))
P = S.p

terms = st.dictionaries(
    st.tuples(*[st.integers(0, 3)] * 3),
    st.integers(1, P - 1),
    max_size=5,
)
polys = terms.map(lambda t: Poly(S, t))


@given(polys, polys, polys)
@settings(max_examples=60, deadline=None)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == S.zero()
    assert a * S.const(1) == a


@given(polys)
@settings(max_examples=80, deadline=None)
def test_print_then_parse_is_identity(f):
    assert S(str(f)) == f


def test_coefficients_live_in_the_field():
    f = S("32004*x")
    assert f == S.var("x")
    assert S("x - x") == S.zero()
    assert str(S("-x")) == "32002*x"


def test_grevlex_orders_by_degree_then_reverse_lex():
    f = S("z^2 + x*y + x^2 + y^2")
    assert format_poly(f.terms, S) == "x^2 + x*y + y^2 + z^2"
    assert S("x*z + y^2").leading_term()[0] == (0, 2, 0)


def test_lex_order():
    L = PolyRing(("x", "y"), order="lex")
    assert L("y^5 + x").leading_term()[0] == (1, 0)


def test_syntax_errors_carry_a_column():
    with pytest.raises(PolySyntaxError) as e:
        S("x + * y")
    assert e.value.pos == 4
    with pytest.raises(PolySyntaxError):
        S("w")


def test_modulus_must_be_an_odd_prime():
    with pytest.raises(ValueError):
        PrimeField(32002)
    assert PrimeField(7).inv(3) * 3 % 7 == 1


def test_weighted_degrees():
    W = PolyRing(("x", "y"), weights=(1, 2))
    assert W("y").degree() == 2
    assert not W("x + y").is_homogeneous()
    assert [len(W.monomials(d)) for d in range(5)] == [1, 1, 2, 2, 3]
