"""Hochschild chains of the splitting and the torsion test built on them.

A chain of degree ``n`` is a combination of tensors
``z^i ⊗ a_1 ⊗ ... ⊗ a_n ⊗ z^j`` where the outer factors are skeins in
``H1`` and ``H0`` (kept as core powers, which span both modules) and each
``a_k`` is a word of torus curves.  The boundary pushes ``a_1`` into ``H1``,
multiplies neighbouring words, and pushes ``a_n`` into ``H0``.
"""

from __future__ import annotations

import itertools
import json
from collections import OrderedDict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .annulus import SolidTorusElement
from .errors import DegreeZero, NoLiftFound, NoStabilization, NotInSpan, SkeinError
from .heegaard import H0, H1, SplittingSpec, push_word
from .laurent import INFINITY, LaurentPoly, as_laurent
from .polyring import (Ideal, MultiPoly, QuotientBasis, Tor1Result, parse_poly, quotient_basis, rref,
                       solve_in_span, tor1_module, tor1_module_auto)
from .surface import L, LM, M, SurfaceElement, SurfaceWord, TorusCurve, specialize, torus_relation, word_str

Key = Tuple[int, Tuple[SurfaceWord, ...], int]


class HochschildChain:
    """Finite sum of ``coeff * (z^i ⊗ a_1 ⊗ ... ⊗ a_n ⊗ z^j)`` of one degree."""

    __slots__ = ("degree", "_terms")

    def __init__(self, degree: int, terms: Optional[Iterable[Tuple[Key, object]]] = None):
        if degree < 0:
            raise ValueError("degree must be non-negative")
        self.degree = degree
        acc: Dict[Key, LaurentPoly] = {}
        items = terms.items() if isinstance(terms, Mapping) else (terms or ())
        for (i, words, j), c in items:
            words = tuple(tuple(w) for w in words)
            if len(words) != degree:
                raise ValueError(f"tensor with {len(words)} words in a degree {degree} chain")
            if i < 0 or j < 0:
                raise ValueError("core powers must be non-negative")
            key = (int(i), words, int(j))
            acc[key] = acc.get(key, LaurentPoly()) + as_laurent(c)
        self._terms = {k: v for k, v in acc.items() if v}

    @classmethod
    def simple(cls, element: SurfaceElement, b1: int = 0, b0: int = 0) -> "HochschildChain":
        """``z^b1 ⊗ element ⊗ z^b0`` in degree one."""
        return cls(1, [((b1, (w,), b0), c) for w, c in element.items()])

    @classmethod
    def from_outer(cls, left: SolidTorusElement, words: Sequence[SurfaceWord],
                   right: SolidTorusElement, coeff=1) -> "HochschildChain":
        coeff = as_laurent(coeff)
        terms = []
        for i, ci in left.items():
            for j, cj in right.items():
                terms.append(((i, tuple(words), j), coeff * ci * cj))
        return cls(len(words), terms)

    def items(self):
        return sorted(self._terms.items(), key=lambda kv: (kv[0][0], _words_key(kv[0][1]), kv[0][2]))

    def coefficient(self, key: Key) -> LaurentPoly:
        return self._terms.get(key, LaurentPoly())

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def _check(self, other):
        if other.degree != self.degree and self and other:
            raise ValueError("cannot add chains of different degree")

    def __add__(self, other: "HochschildChain") -> "HochschildChain":
        self._check(other)
        deg = self.degree if self else other.degree
        return HochschildChain(deg, list(self._terms.items()) + list(other._terms.items()))

    def __neg__(self):
        return HochschildChain(self.degree, {k: -v for k, v in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "HochschildChain":
        c = as_laurent(c)
        return HochschildChain(self.degree, {k: c * v for k, v in self._terms.items()})

    def __eq__(self, other):
        if not isinstance(other, HochschildChain):
            return NotImplemented
        if not self and not other:
            return True
        return self.degree == other.degree and self._terms == other._terms

    def __hash__(self):
        return hash((self.degree, frozenset(self._terms.items())))

    def valuation(self):
        return min((c.one_plus_t_valuation() for c in self._terms.values()), default=INFINITY)

    def surface_part(self) -> SurfaceElement:
        """For ``φ ⊗ a ⊗ φ`` chains: the middle element."""
        if self.degree != 1 or any(i or j for (i, _, j) in self._terms):
            raise ValueError("not a chain of the form φ ⊗ a ⊗ φ")
        return SurfaceElement([(words[0], c) for (_, words, _), c in self._terms.items()])

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for (i, words, j), c in self.items():
            factors = [_core_str(i)] + [word_str(w) for w in words] + [_core_str(j)]
            parts.append(f"({c})*[{' ⊗ '.join(factors)}]")
        return " + ".join(parts)

    def __repr__(self):
        return f"HochschildChain({self.degree}, {str(self)!r})"

    def to_json(self):
        return [{"h1": i, "words": [word_str(w) for w in words], "h0": j, "coeff": str(c)}
                for (i, words, j), c in self.items()]


def _core_str(k: int) -> str:
    return "φ" if k == 0 else ("z" if k == 1 else f"z^{k}")


def _words_key(words):
    return tuple((len(w), tuple(c.vector() for c in w)) for w in words)


# ---------------------------------------------------------------------------
# boundary


def boundary(c: HochschildChain, split: SplittingSpec) -> HochschildChain:
    """Hochschild boundary; the result has degree ``c.degree - 1``."""
    n = c.degree
    if n == 0:
        raise DegreeZero("degree zero chains have no boundary")
    g = split.gluing
    out: Dict[Key, LaurentPoly] = {}

    def add(key, val):
        out[key] = out.get(key, LaurentPoly()) + val

    for (i, words, j), coeff in c._terms.items():
        # b1 a1 ⊗ a2 ... ⊗ b0
        for k, ck in push_word(g, H1, words[0], i).items():
            add((k, words[1:], j), coeff * ck)
        # middle products
        for m in range(n - 1):
            merged = words[:m] + (words[m] + words[m + 1],) + words[m + 2:]
            add((i, merged, j), coeff if m % 2 else -coeff)
        # (-1)^n b1 ⊗ ... ⊗ a_n b0
        sign = -1 if n % 2 else 1
        for k, ck in push_word(g, H0, words[-1], j).items():
            add((i, words[:-1], k), coeff * ck * sign)
    return HochschildChain(n - 1, out)


def cycle_valuation(c: HochschildChain, split: SplittingSpec):
    """Smallest ``(1+t)``-adic valuation among the boundary coefficients."""
    return boundary(c, split).valuation()


# ---------------------------------------------------------------------------
# filtration


@dataclass(frozen=True)
class FiltrationLevel:
    chain: HochschildChain
    shift: int = 0

    def valuation(self):
        return self.chain.valuation()


def filtration_shift(level: FiltrationLevel, k: int) -> FiltrationLevel:
    """Multiply through by ``(1+t)^k``."""
    if k < 0:
        raise ValueError("shift must be non-negative")
    return FiltrationLevel(level.chain.scale(LaurentPoly.one_plus_t(k)), level.shift + k)


# ---------------------------------------------------------------------------
# lifting Tor_1 classes


def _beta() -> SurfaceElement:
    p = LaurentPoly({-3: Fraction(-1, 2), -5: Fraction(-1, 2)})
    half = LaurentPoly(Fraction(-1, 2))
    return SurfaceElement([((L, L), p), ((L, LM), half), ((LM, L), half)])


def library_lifts() -> List[Tuple[MultiPoly, SurfaceElement]]:
    """Known lifts of classes in ``(J ∩ K)/(JK)`` for the lens space ``L(2,1)``."""
    return [
        (parse_poly("y - z"), SurfaceElement([((L,), 1), ((LM,), LaurentPoly({3: 1}))])),
        (parse_poly("y*(y - z)"), _beta()),
    ]


_LETTER = {0: M, 1: L, 2: LM}


def _orderings(exp) -> List[SurfaceWord]:
    letters = [_LETTER[v] for v in range(3) for _ in range(exp[v])]
    return sorted(set(itertools.permutations(letters)), key=lambda w: tuple(c.vector() for c in w))


def _boundary_columns(words: Sequence[SurfaceWord], window: range, split: SplittingSpec):
    """Boundary of ``φ ⊗ t^k w ⊗ φ`` for each unknown ``(w, k)`` as dicts ``key -> LaurentPoly``."""
    cols = []
    for w in words:
        base = boundary(HochschildChain(1, [((0, (w,), 0), 1)]), split)
        for k in window:
            cols.append({key: c.shift(k) for key, c in base._terms.items()})
    return cols


def _solve_lift(p: MultiPoly, split: SplittingSpec, window: range, level) -> Optional[SurfaceElement]:
    """A lift of ``p`` whose boundary vanishes (``level`` None) or has valuation >= level."""
    monos = sorted(p.terms())
    groups = [_orderings(e) for e in monos]
    words = [w for g in groups for w in g]
    owner = [mi for mi, g in enumerate(groups) for _ in g for _ in window]
    unknowns = [(w, k) for w in words for k in window]
    cols = _boundary_columns(words, window, split)
    rows: List[List[Fraction]] = []
    rhs: List[Fraction] = []
    # specialisation: the orderings of each monomial share its coefficient at t = -1
    for mi, e in enumerate(monos):
        rows.append([Fraction(-1 if k % 2 else 1) if o == mi else Fraction(0)
                     for o, (_, k) in zip(owner, unknowns)])
        rhs.append(p.terms()[e])
    keys = sorted({key for col in cols for key in col}, key=lambda k: (k[0], _words_key(k[1]), k[2]))
    for key in keys:
        polys = [col.get(key, LaurentPoly()) for col in cols]
        if level is None:
            exps = sorted({x for q in polys for x in q.coeffs()})
            for x in exps:
                rows.append([q.coeff(x) for q in polys])
                rhs.append(Fraction(0))
        else:
            # the j-th derivative at t = -1 must vanish for j < level
            for j in range(level):
                rows.append([_derivative_at_minus_one(q, j) for q in polys])
                rhs.append(Fraction(0))
    red, piv = rref([r + [b] for r, b in zip(rows, rhs)])
    n = len(unknowns)
    if n in piv:
        return None
    sol = [Fraction(0)] * n
    for row, c in zip(red, piv):
        sol[c] = row[n]
    terms = {}
    for (w, k), v in zip(unknowns, sol):
        if v:
            terms[w] = terms.get(w, LaurentPoly()) + LaurentPoly({k: v})
    return SurfaceElement(terms)


def _derivative_at_minus_one(q: LaurentPoly, j: int) -> Fraction:
    total = Fraction(0)
    for k, v in q.coeffs().items():
        f = Fraction(1)
        for i in range(j):
            f *= k - i
        total += v * f * Fraction(-1) ** ((k - j) % 2)
    return total


SOLVER_WINDOW = range(-8, 9)


def lift_class(p: MultiPoly, mode: str = "library", split: Optional[SplittingSpec] = None,
               tor1: Optional[Tor1Result] = None, max_level: int = 4) -> HochschildChain:
    """A degree one chain ``φ ⊗ a ⊗ φ`` whose middle factor specialises to ``p``.

    ``library`` combines the stored lifts; the class must be in their span
    modulo ``JK`` (``tor1`` supplies the quotient, otherwise the span is
    taken literally).  ``solver`` searches coefficients ``c * t^k`` with
    ``k`` in ``[-8, 8]`` over every ordering of every monomial of ``p``,
    first for an exact cycle and then for the highest boundary valuation.
    """
    if not p:
        return HochschildChain(1)
    if mode == "library":
        lib = library_lifts()
        reduce = tor1.reduce if tor1 is not None else (lambda q: q)
        coords = solve_in_span([reduce(q) for q, _ in lib], reduce(p))
        if coords is None:
            raise NotInSpan(f"{p} is not in the span of the stored lifts", cls=str(p))
        elem = SurfaceElement()
        for c, (_, lift) in zip(coords, lib):
            if c:
                elem = elem + lift.scale(c)
        return HochschildChain.simple(elem)
    if mode == "solver":
        if split is None:
            raise ValueError("solver mode needs the splitting")
        found = _solve_lift(p, split, SOLVER_WINDOW, None)
        level = max_level
        while found is None and level >= 1:
            found = _solve_lift(p, split, SOLVER_WINDOW, level)
            level -= 1
        if found is None:
            raise NoLiftFound(f"no lift of {p} in the exponent window [-8, 8]", cls=str(p))
        return HochschildChain.simple(found)
    raise ValueError(f"unknown lift mode {mode!r}")


# ---------------------------------------------------------------------------
# HH_0 at t = -1 and the verdict


def specialized_hh0(split: SplittingSpec, degree_bound: int = 8) -> QuotientBasis:
    """Standard monomials of ``Q[x,y,z] / ((relation) + J + K)``."""
    return quotient_basis(Ideal([torus_relation()]) + split.J + split.K, degree_bound)


TORSION_WITNESS = "TORSION_WITNESS"
NO_TORSION_CERTIFIED = "NO_TORSION_CERTIFIED"


def inconclusive(level) -> str:
    return f"INCONCLUSIVE_AT_LEVEL({level})"


@dataclass
class CycleRecord:
    cls: MultiPoly
    lift: Optional[HochschildChain]
    boundary: Optional[HochschildChain]
    valuation: object
    evidence: List[dict] = field(default_factory=list)

    def to_json(self):
        val = self.valuation
        return OrderedDict([
            ("class", str(self.cls)),
            ("lift", str(self.lift.surface_part()) if self.lift is not None else None),
            ("boundary", str(self.boundary) if self.boundary is not None else None),
            ("valuation", "INFINITY" if val == INFINITY else val),
            ("evidence", self.evidence),
        ])


@dataclass
class TorsionReport:
    manifold: str
    gluing: str
    tor1: Tor1Result
    cycles: List[CycleRecord]
    verdict: str
    notes: List[str]

    def to_json(self) -> "OrderedDict":
        return OrderedDict([
            ("manifold", self.manifold),
            ("gluing", self.gluing),
            ("tor1", OrderedDict([
                ("dimension", self.tor1.dimension if self.tor1.stabilized else None),
                ("basis", [str(b) for b in self.tor1.vector_space_basis]),
            ])),
            ("cycles", [c.to_json() for c in self.cycles]),
            ("verdict", self.verdict),
            ("notes", list(self.notes)),
        ])

    def dumps(self, indent=2) -> str:
        return json.dumps(self.to_json(), indent=indent, ensure_ascii=False)


def _evidence(lift: HochschildChain, split: SplittingSpec) -> List[dict]:
    out = []
    for (_, words, _), c in lift.items():
        w = words[0]
        out.append(OrderedDict([
            ("word", word_str(w)),
            ("coeff", str(c)),
            ("H1", str(push_word(split.gluing, H1, w))),
            ("H0", str(push_word(split.gluing, H0, w))),
        ]))
    return out


def decide(valuations: Sequence, stabilized: bool = True) -> str:
    """Verdict from the boundary valuations of the lifted classes."""
    if any(v == 1 for v in valuations):
        return TORSION_WITNESS
    if all(v == INFINITY for v in valuations) and stabilized:
        return NO_TORSION_CERTIFIED
    finite = [v for v in valuations if v != INFINITY]
    return inconclusive(min(finite) if finite else "unstabilized")


def torsion_verdict(split: SplittingSpec, mode: str = "library", degree_bound: int = 8,
                    limit: int = 32) -> TorsionReport:
    rel = torus_relation()
    tor1 = tor1_module_auto(split.J, split.K, rel, start=degree_bound, limit=max(limit, degree_bound))
    notes = list(split.notes())
    if not tor1.stabilized:
        notes.append(f"Tor_1 did not stabilise by degree {tor1.degree_bound}; "
                     "lifted the module generators instead of a vector-space basis")
    classes = tor1.vector_space_basis if tor1.stabilized else tor1.generators
    records = []
    valuations = []
    for cls in classes:
        lift = None
        try:
            if mode == "library":
                try:
                    lift = lift_class(cls, "library", split, tor1)
                except NotInSpan:
                    lift = lift_class(cls, "solver", split, tor1)
                    notes.append(f"class {cls}: not covered by stored lifts, used the solver")
            else:
                lift = lift_class(cls, mode, split, tor1)
        except NoLiftFound as exc:
            notes.append(f"class {cls}: {exc}")
            records.append(CycleRecord(cls, None, None, None))
            valuations.append(0)
            continue
        bd = boundary(lift, split)
        val = bd.valuation()
        valuations.append(val)
        records.append(CycleRecord(cls, lift, bd, val, _evidence(lift, split)))
    verdict = decide(valuations, tor1.stabilized)
    if verdict == NO_TORSION_CERTIFIED:
        notes.append("certificate concerns the (1+t)-adic completion of the skein module")
    notes.append("boundaries are computed on representatives; well-definedness on classes is not checked")
    return TorsionReport(split.name, str(split.gluing), tor1, records, verdict, notes)
