from fractions import Fraction

import pytest
from hypothesis import given

from conftest import curves, words
from skeinhh.errors import NotPrimitive, ZeroCurve
from skeinhh.laurent import LaurentPoly
from skeinhh.polyring import Ideal, parse_poly
from skeinhh.surface import (L, LM, M, SurfaceElement, TorusCurve, check_primitive, concat, specialize,
                             torus_relation, trace_poly)

P = parse_poly
REL = Ideal([torus_relation()])


def test_concat():
    assert concat((L,), (LM,)) == (L, LM)
    assert concat((), (L,)) == (L,)


@pytest.mark.parametrize("ab,expected", [
    ((1, 0), "y"), ((0, 1), "x"), ((1, 1), "z"),
    ((2, 1), "-(y*z + x)"), ((1, -1), "-(x*y + z)"),
])
def test_trace_examples(ab, expected):
    assert trace_poly(TorusCurve(*ab)) == P(expected)


def test_relation():
    r = torus_relation()
    assert r == P("x^2 + y^2 + z^2 + x*y*z - 4")
    assert r.evaluate((-2, -2, -2)) == 0
    assert r.substitute([P("-2"), P("y"), P("y")]) == 0


def test_specialize_examples():
    assert specialize(SurfaceElement.word(L) - SurfaceElement.word(LM)) == P("y - z")
    p = LaurentPoly({-3: Fraction(-1, 2), -5: Fraction(-1, 2)})
    beta = SurfaceElement([((L, L), p), ((L, LM), Fraction(-1, 2)), ((LM, L), Fraction(-1, 2))])
    assert specialize(beta) == P("y^2 - y*z")
    assert specialize(SurfaceElement()) == 0


def test_curve_validation():
    with pytest.raises(ZeroCurve):
        check_primitive(TorusCurve(0, 0))
    with pytest.raises(NotPrimitive):
        check_primitive(TorusCurve(2, 2))
    assert TorusCurve(-1, 0) == L
    assert str(TorusCurve(-2, 1)) == "(2,-1)"


def test_elements_are_syntactic():
    a = SurfaceElement.word(L, LM)
    b = SurfaceElement.word(LM, L)
    assert a != b
    assert (a + b) - b == a
    assert a * b == SurfaceElement.word(L, LM, LM, L)


@given(curves)
def test_orientation_independence(c):
    assert trace_poly(c) == trace_poly(TorusCurve(-c.a, -c.b))


@given(curves, curves)
def test_trace_identity_on_character_variety(c, d):
    if abs(c.a * d.b - c.b * d.a) != 1:
        return
    s = TorusCurve(c.a + d.a, c.b + d.b)
    e = TorusCurve(c.a - d.a, c.b - d.b)
    assert REL.contains(trace_poly(c) * trace_poly(d) + trace_poly(s) + trace_poly(e))


@given(words, words)
def test_specialize_is_multiplicative_on_words(u, v):
    assert specialize(SurfaceElement.word(*concat(u, v))) == \
        specialize(SurfaceElement.word(*u)) * specialize(SurfaceElement.word(*v))
