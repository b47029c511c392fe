import math
import os
import sys
from functools import lru_cache
from itertools import product

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from skeinhh.annulus import AnnulusDiagram, add_kink, disjoint_union
from skeinhh.heegaard import GluingMatrix
from skeinhh.laurent import LaurentPoly
from skeinhh.layers import Layer, render
from skeinhh.surface import SurfaceElement, TorusCurve

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", deadline=None, max_examples=200,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

SMALL_CURVES = [(1, 0), (0, 1), (1, 1), (1, -1), (2, 1), (1, 2), (2, -1), (1, -2)]
PRIMITIVE = [(a, b) for a in range(-3, 4) for b in range(-3, 4) if (a, b) != (0, 0)
             and math.gcd(a, b) == 1]

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def laurents(draw, max_terms=5, lo=-8, hi=8, nonzero=False):
    n = draw(st.integers(1 if nonzero else 0, max_terms))
    coeffs = {}
    for _ in range(n):
        coeffs[draw(st.integers(lo, hi))] = draw(rationals.filter(bool))
    p = LaurentPoly(coeffs)
    if nonzero and not p:
        p = LaurentPoly(1)
    return p


# letters whose images under gluings with entries in {-1, 0, 1} stay cheap to resolve
CHAIN_LETTERS = [(1, 0), (0, 1), (1, 1), (1, -1)]

curves = st.sampled_from(PRIMITIVE).map(lambda ab: TorusCurve(*ab))
small_curves = st.sampled_from(SMALL_CURVES).map(lambda ab: TorusCurve(*ab))
words = st.lists(small_curves, min_size=0, max_size=2).map(tuple)
chain_letters = st.sampled_from(CHAIN_LETTERS).map(lambda ab: TorusCurve(*ab))


@st.composite
def surface_elements(draw, max_terms=3, word_strategy=words):
    terms = draw(st.lists(st.tuples(word_strategy, laurents(max_terms=2, lo=-4, hi=4)),
                          max_size=max_terms))
    return SurfaceElement(terms)


@lru_cache(maxsize=None)
def _unimodular_list(bound):
    r = range(-bound, bound + 1)
    return tuple(GluingMatrix(*m) for m in product(r, repeat=4) if m[0] * m[3] - m[1] * m[2] in (1, -1))


def unimodular(bound=3):
    return st.sampled_from(_unimodular_list(bound))


@lru_cache(maxsize=None)
def base_diagrams(max_crossings=5):
    """Rendered stacks of one or two small curves, a pool for random diagrams."""
    pool = []
    for n in (1, 2):
        for combo in product(SMALL_CURVES, repeat=n):
            for framed in (True, False):
                d = render([Layer(TorusCurve(*c), framed) for c in combo])
                if d.n_crossings <= max_crossings:
                    pool.append(d)
    return tuple(pool)


@st.composite
def annulus_diagrams(draw, max_crossings=6):
    """A random valid diagram: a rendered stack with flips, kinks and extra loops."""
    pool = base_diagrams()
    d = draw(st.sampled_from(pool))
    flips = draw(st.lists(st.booleans(), min_size=d.n_crossings, max_size=d.n_crossings))
    d = AnnulusDiagram(tuple(c[:4] + (c[4] ^ f,) for c, f in zip(d.crossings, flips)),
                       d.seam, d.closures)
    while d.n_crossings < max_crossings and d.crossings and draw(st.booleans()):
        edge = draw(st.sampled_from(d.edges()))
        d = add_kink(d, edge, draw(st.sampled_from([1, -1])))
    extra = draw(st.lists(st.sampled_from([0, 1, -1]), max_size=2))
    if extra:
        d = disjoint_union(d, AnnulusDiagram(closures=tuple(extra)))
    return d


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    if not acceptance or not acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(acceptance.RESULTS):
        terminalreporter.write_line(acceptance.line(n))
