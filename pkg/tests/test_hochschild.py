from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import chain_letters, laurents, unimodular
from skeinhh.surface import M
from skeinhh.errors import DegreeZero, NotInSpan
from skeinhh.heegaard import SplittingSpec, preset
from skeinhh.hochschild import (NO_TORSION_CERTIFIED, TORSION_WITNESS, FiltrationLevel, HochschildChain,
                                boundary, cycle_valuation, decide, filtration_shift, inconclusive,
                                lift_class, specialized_hh0, torsion_verdict)
from skeinhh.laurent import INFINITY, LaurentPoly
from skeinhh.polyring import parse_poly
from skeinhh.surface import L, LM, SurfaceElement, specialize

P = parse_poly
t = LaurentPoly.monomial(1, 1)
LENS = preset("lens:2,1")
S1S2 = preset("s1xs2")
S3 = preset("s3")
# (1,-1) becomes (3,-2) under the L(2,1) gluing; keep lens-side chains cheap
lens_letters = st.sampled_from([L, M, LM])


@st.composite
def chains(draw, degree=None, letters=chain_letters):
    n = draw(st.integers(1, 3)) if degree is None else degree
    terms = []
    for _ in range(draw(st.integers(1, 3))):
        words = tuple(tuple(draw(st.lists(letters, max_size=2))) for _ in range(n))
        key = (draw(st.integers(0, 1)), words, draw(st.integers(0, 1)))
        terms.append((key, draw(laurents(max_terms=2, lo=-3, hi=3, nonzero=True))))
    return HochschildChain(n, terms)


def alpha(p=1, q=1):
    return HochschildChain.simple(SurfaceElement([((L,), p), ((LM,), -q)]))


def test_alpha_boundary_on_s1xs2():
    bd = boundary(alpha(), S1S2)
    expected = HochschildChain(0, [((1, (), 0), 1 + t ** 3), ((0, (), 1), -(1 + t ** -3))])
    assert bd == expected
    assert bd.valuation() == 1


def test_unit_word_has_zero_boundary():
    assert not boundary(HochschildChain.simple(SurfaceElement([((), 1)])), LENS)


def test_degree_zero_has_no_boundary():
    with pytest.raises(DegreeZero):
        boundary(HochschildChain(0, [((0, (), 0), 1)]), LENS)


def test_stored_lens_lifts():
    a = lift_class(P("y - z"), "library")
    assert a == HochschildChain.simple(SurfaceElement([((L,), 1), ((LM,), t ** 3)]))
    assert cycle_valuation(a, LENS) is INFINITY
    b = lift_class(P("y^2 - y*z"), "library")
    p = LaurentPoly({-3: Fraction(-1, 2), -5: Fraction(-1, 2)})
    assert b.surface_part() == SurfaceElement([((L, L), p), ((L, LM), Fraction(-1, 2)),
                                               ((LM, L), Fraction(-1, 2))])
    assert cycle_valuation(b, LENS) is INFINITY
    assert not lift_class(P("0"), "library")


def test_library_rejects_unknown_classes():
    with pytest.raises(NotInSpan):
        lift_class(P("x + 2"), "library")


@pytest.mark.parametrize("cls", ["y - z", "y^2 - y*z", "z - y", "2*y - 2*z + y^2 - y*z"])
def test_solver_lifts_round_trip(cls):
    lift = lift_class(P(cls), "solver", LENS)
    assert specialize(lift.surface_part()) == P(cls)
    assert cycle_valuation(lift, LENS) is INFINITY


def test_filtration_shift_examples():
    phi = HochschildChain(0, [((0, (), 0), 1)])
    shifted = filtration_shift(FiltrationLevel(phi), 1)
    assert shifted.shift == 1 and shifted.chain.coefficient((0, (), 0)) == 1 + t
    zero = filtration_shift(FiltrationLevel(HochschildChain(0)), 3)
    assert not zero.chain
    one = HochschildChain(0, [((0, (), 0), 1 + t ** 3)])
    assert filtration_shift(FiltrationLevel(one), 2).valuation() == 3


def test_decide():
    assert decide([INFINITY, INFINITY]) == NO_TORSION_CERTIFIED
    assert decide([INFINITY, 1]) == TORSION_WITNESS
    assert decide([2, INFINITY]) == inconclusive(2)
    assert decide([INFINITY], stabilized=False) != NO_TORSION_CERTIFIED
    assert decide([]) == NO_TORSION_CERTIFIED


@pytest.mark.parametrize("split,verdict,dim", [
    (LENS, NO_TORSION_CERTIFIED, 2),
    (S1S2, TORSION_WITNESS, None),
    (S3, NO_TORSION_CERTIFIED, 1),
])
def test_verdicts(split, verdict, dim):
    report = torsion_verdict(split)
    assert report.verdict == verdict
    assert report.to_json()["tor1"]["dimension"] == dim
    assert list(report.to_json()) == ["manifold", "gluing", "tor1", "cycles", "verdict", "notes"]


def test_hh0_dimensions():
    assert specialized_hh0(LENS).dimension == 2
    assert specialized_hh0(S3).dimension == 1
    q = specialized_hh0(S1S2, 4)
    assert not q.finite and [str(m) for m in q.as_polys()] == ["1", "y", "y^2", "y^3", "y^4"]


@settings(max_examples=40)
@given(chains(), unimodular(bound=1))
def test_boundary_squares_to_zero(c, g):
    if c.degree < 2:
        c = HochschildChain(2, [((i, words + ((),), j), v) for (i, words, j), v in c.items()])
    assert not boundary(boundary(c, SplittingSpec(g)), SplittingSpec(g))


@settings(max_examples=30)
@given(chains(degree=1, letters=lens_letters), st.integers(0, 3))
def test_valuation_shift_is_additive(c, k):
    v = cycle_valuation(c, LENS)
    shifted = filtration_shift(FiltrationLevel(c), k).chain
    assert cycle_valuation(shifted, LENS) == v + k


@settings(max_examples=20)
@given(chains(degree=2, letters=lens_letters))
def test_adding_boundaries_keeps_the_verdict(w):
    lift = lift_class(P("y - z"), "library")
    moved = lift + boundary(w, LENS).scale(1 + t)
    assert cycle_valuation(moved, LENS) is INFINITY


@settings(max_examples=20)
@given(laurents(max_terms=3, lo=-4, hi=4), laurents(max_terms=3, lo=-4, hi=4))
def test_witness_family_has_positive_valuation(p, q):
    # normalise so that p(-1) = q(-1) = 1
    p = p + (1 - p.eval_at_minus_one())
    q = q + (1 - q.eval_at_minus_one())
    assert cycle_valuation(alpha(p, q), S1S2) >= 1
