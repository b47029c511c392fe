import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import annulus_diagrams
from skeinhh.annulus import (STATE_SUM_LIMIT, AnnulusDiagram, SolidTorusElement, add_kink, core_loop,
                             disjoint_union, kinked_core, null_loop, resolve, state_sum)
from skeinhh.errors import InvalidDiagram, TooManyCrossings
from skeinhh.laurent import LaurentPoly, loop_value
from skeinhh.layers import curve_diagram, delta_diagram, gamma_diagram, stack

t = LaurentPoly.monomial(1, 1)
ti = LaurentPoly.monomial(1, -1)
u = loop_value()


def core(k=1, c=1):
    return SolidTorusElement.core_power(k, c)


def test_null_loop():
    assert resolve(null_loop()) == SolidTorusElement({0: -(t ** 2) - ti ** 2})


def test_kinked_core():
    assert resolve(kinked_core(1)) == core(1, -(t ** 3))
    assert resolve(kinked_core(-1)) == core(1, -(ti ** 3))
    assert state_sum(kinked_core(1)) == core(1, -(t ** 3))


def test_plain_core():
    assert state_sum(core_loop()) == core(1)
    assert resolve(core_loop(3)) == core(3)


@pytest.mark.parametrize("ab,expected", [
    ((1, 0), core(1)),
    ((0, 1), SolidTorusElement({0: u})),
    ((1, 1), core(1, -(ti ** 3))),
])
def test_curve_diagrams(ab, expected):
    assert resolve(curve_diagram(*ab)) == expected


def test_delta_and_gamma():
    delta = resolve(delta_diagram())
    # the empty-diagram coefficient is (t^-4 - 1)(t^2 + t^-2), i.e. the loop value with its sign flipped
    assert delta == SolidTorusElement({2: t ** 2, 0: (ti ** 4 - 1) * (t ** 2 + ti ** 2)})
    assert resolve(gamma_diagram()) == delta * (t ** 6)
    assert state_sum(delta_diagram()) == delta


def test_clasp_order_matters():
    clasp = resolve(stack(curve_diagram(1, 0), curve_diagram(1, -1)))
    apart = resolve(stack(curve_diagram(1, -1), curve_diagram(1, 0)))
    assert clasp == resolve(delta_diagram()) * -(t ** 3)
    assert apart == core(2, -(t ** 3))


def test_stack_units_and_cores():
    d = curve_diagram(2, 1)
    assert resolve(stack(AnnulusDiagram(), d)) == resolve(d)
    assert stack(core_loop(), core_loop()).n_crossings == 0
    assert resolve(stack(core_loop(2), core_loop(3))) == core(5)


def test_json_round_trip():
    d = curve_diagram(2, 1)
    again = AnnulusDiagram.from_json(json.loads(json.dumps(d.to_json())))
    assert again == d
    assert resolve(again) == resolve(d)


@pytest.mark.parametrize("data", [
    {"crossings": [[0, 1, 2, 3, "over_first"]]},          # dangling edges
    {"crossings": [[0, 0, 1, 1]]},                        # missing flag
    {"crossings": [], "closures": [2]},                   # loop winding twice
    {"crossings": [[0, 1, 1, 0, "over_first"]], "seam": {"0": 2}},
])
def test_invalid_diagrams(data):
    with pytest.raises(InvalidDiagram):
        AnnulusDiagram.from_json(data)


def test_state_sum_limit():
    d = curve_diagram(1, 0)
    while d.n_crossings <= STATE_SUM_LIMIT:
        d = add_kink(d, d.edges()[0], 1) if d.crossings else kinked_core(1)
    with pytest.raises(TooManyCrossings):
        state_sum(d)
    assert resolve(d) == core(1, (-(t ** 3)) ** d.n_crossings)


@settings(max_examples=60)
@given(annulus_diagrams())
def test_resolve_matches_state_sum(d):
    assert resolve(d) == state_sum(d)


@settings(max_examples=30)
@given(annulus_diagrams(), st.randoms(use_true_random=False))
def test_resolution_order_is_irrelevant(d, rnd):
    order = list(range(d.n_crossings))
    rnd.shuffle(order)
    assert resolve(d, order=order) == resolve(d)


@settings(max_examples=30)
@given(annulus_diagrams(max_crossings=5), st.sampled_from([1, -1]), st.data())
def test_kink_multiplies_by_framing_factor(d, sign, data):
    if not d.crossings:
        d = disjoint_union(kinked_core(1), d)
    edge = data.draw(st.sampled_from(d.edges()))
    factor = -(t ** 3) if sign > 0 else -(ti ** 3)
    assert resolve(add_kink(d, edge, sign)) == resolve(d) * factor


@settings(max_examples=30)
@given(annulus_diagrams())
def test_null_loop_multiplies_by_loop_value(d):
    assert resolve(disjoint_union(d, null_loop())) == resolve(d) * u


@settings(max_examples=30)
@given(annulus_diagrams())
def test_mirror_inverts_t(d):
    mirrored = resolve(d.mirror())
    assert mirrored == SolidTorusElement({k: c.mirror() for k, c in resolve(d).items()})


@given(st.integers(0, 3), st.integers(0, 3))
def test_core_powers_multiply(i, j):
    assert resolve(stack(core_loop(i) if i else AnnulusDiagram(),
                         core_loop(j) if j else AnnulusDiagram())) == core(i + j)
