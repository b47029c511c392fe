"""Multivariate polynomials over the rationals and Gröbner-basis machinery.

Everything here is exact.  :class:`MultiPoly` defaults to the three trace
coordinates ``x, y, z`` of the torus character variety; the elimination used
for ideal intersection temporarily adds a fourth variable.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import NoStabilization, ParseError, RelationNotContained

Exp = Tuple[int, ...]
VARS = ("x", "y", "z")


class MonomialOrder:
    """A monomial order given by a name and a variable ranking.

    ``ranking`` lists variable indices from the largest variable down.  The
    default ranking for ``x, y, z`` is ``x > z > y`` so that ``y`` survives as
    the free coordinate on the handlebody character varieties.
    """

    def __init__(self, name: str = "degrevlex", ranking: Optional[Sequence[int]] = None,
                 nvars: int = 3):
        if name not in ("lex", "grlex", "degrevlex", "elim"):
            raise ValueError(f"unknown monomial order {name!r}")
        if ranking is None:
            ranking = (0, 2, 1) if nvars == 3 else tuple(range(nvars))
        self.name = name
        self.ranking = tuple(ranking)
        self.nvars = nvars
        rank = self.ranking
        rev = tuple(reversed(rank))
        if name == "lex":
            self._key = lambda e: tuple(e[i] for i in rank)
        elif name == "grlex":
            self._key = lambda e: (sum(e),) + tuple(e[i] for i in rank)
        elif name == "degrevlex":
            self._key = lambda e: (sum(e),) + tuple(-e[i] for i in rev)
        else:
            # block order: first ranked variable eliminated, degrevlex on the rest
            head, rest = rank[0], rank[1:]
            rrest = tuple(reversed(rest))
            self._key = lambda e: (e[head], sum(e[i] for i in rest)) + tuple(-e[i] for i in rrest)

    def key(self, e: Exp):
        if len(e) == self.nvars:
            return self._key(e)
        # rings of another size fall back to the natural ranking
        return _natural_order(self.name, len(e))._key(e)

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and (self.name, self.ranking) == (other.name, other.ranking)

    def __hash__(self):
        return hash((self.name, self.ranking))

    def __repr__(self):
        return f"MonomialOrder({self.name!r}, {self.ranking})"


@lru_cache(maxsize=None)
def _natural_order(name: str, nvars: int) -> "MonomialOrder":
    return MonomialOrder(name, tuple(range(nvars)), nvars)


DEGREVLEX = MonomialOrder("degrevlex")
LEX = MonomialOrder("lex")


class MultiPoly:
    """Immutable polynomial: map from exponent tuple to nonzero ``Fraction``."""

    __slots__ = ("_t", "nvars", "names", "_hash")

    def __init__(self, terms=None, nvars: int = 3, names: Sequence[str] = VARS):
        t: Dict[Exp, Fraction] = {}
        if isinstance(terms, (int, Fraction)):
            if terms:
                t[(0,) * nvars] = Fraction(terms)
        elif terms:
            for e, c in terms.items():
                c = Fraction(c)
                if c:
                    e = tuple(e)
                    if len(e) != nvars or min(e) < 0:
                        raise ValueError(f"bad exponent {e}")
                    t[e] = t.get(e, 0) + c
            t = {e: c for e, c in t.items() if c}
        self._t = t
        self.nvars = nvars
        self.names = tuple(names)
        self._hash = None

    @classmethod
    def _raw(cls, t, nvars, names):
        obj = cls.__new__(cls)
        obj._t = t
        obj.nvars = nvars
        obj.names = names
        obj._hash = None
        return obj

    @classmethod
    def var(cls, i: int, nvars: int = 3, names: Sequence[str] = VARS) -> "MultiPoly":
        e = [0] * nvars
        e[i] = 1
        return cls({tuple(e): 1}, nvars, names)

    @classmethod
    def const(cls, c, nvars: int = 3, names: Sequence[str] = VARS) -> "MultiPoly":
        return cls(c, nvars, names)

    @classmethod
    def monomial(cls, exp: Exp, coeff=1, names: Sequence[str] = VARS) -> "MultiPoly":
        return cls({tuple(exp): coeff}, len(exp), names)

    # -- inspection -------------------------------------------------------

    def terms(self) -> Dict[Exp, Fraction]:
        return dict(self._t)

    def is_zero(self) -> bool:
        return not self._t

    def __bool__(self):
        return bool(self._t)

    def total_degree(self) -> int:
        return max((sum(e) for e in self._t), default=-1)

    def leading(self, order: MonomialOrder = DEGREVLEX) -> Tuple[Exp, Fraction]:
        e = max(self._t, key=order.key)
        return e, self._t[e]

    def sorted_terms(self, order: MonomialOrder = DEGREVLEX):
        return sorted(self._t.items(), key=lambda kv: order.key(kv[0]), reverse=True)

    # -- arithmetic -------------------------------------------------------

    def _like(self, t):
        return MultiPoly._raw(t, self.nvars, self.names)

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly(other, self.nvars, self.names)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        t = dict(self._t)
        for e, c in other._t.items():
            s = t.get(e, 0) + c
            if s:
                t[e] = s
            else:
                t.pop(e, None)
        return self._like(t)

    __radd__ = __add__

    def __neg__(self):
        return self._like({e: -c for e, c in self._t.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        t: Dict[Exp, Fraction] = {}
        for e1, c1 in self._t.items():
            for e2, c2 in other._t.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t.get(e, 0) + c1 * c2
        return self._like({e: c for e, c in t.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = MultiPoly(1, self.nvars, self.names)
        for _ in range(n):
            out = out * self
        return out

    def scale(self, c) -> "MultiPoly":
        c = Fraction(c)
        if not c:
            return self._like({})
        return self._like({e: v * c for e, v in self._t.items()})

    def mul_monomial(self, exp: Exp, c=1) -> "MultiPoly":
        c = Fraction(c)
        return self._like({tuple(a + b for a, b in zip(e, exp)): v * c for e, v in self._t.items()})

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly(other, self.nvars, self.names)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.nvars == other.nvars and self._t == other._t

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._t.items()))
        return self._hash

    def evaluate(self, point: Sequence) -> Fraction:
        total = Fraction(0)
        for e, c in self._t.items():
            term = c
            for v, k in zip(point, e):
                term *= Fraction(v) ** k
            total += term
        return total

    def substitute(self, images: Sequence["MultiPoly"]) -> "MultiPoly":
        """Ring map sending variable ``i`` to ``images[i]``."""
        out = None
        for e, c in self._t.items():
            term = images[0].__class__(c, images[0].nvars, images[0].names)
            for img, k in zip(images, e):
                term = term * img ** k
            out = term if out is None else out + term
        if out is None:
            return MultiPoly(0, images[0].nvars, images[0].names)
        return out

    def extend(self, extra: int = 1, front: bool = False, names=None) -> "MultiPoly":
        pad = (0,) * extra
        t = {(pad + e if front else e + pad): c for e, c in self._t.items()}
        return MultiPoly._raw(t, self.nvars + extra, tuple(names) if names else self.names + ("w",) * extra)

    # -- text -------------------------------------------------------------

    def to_str(self, order: MonomialOrder = DEGREVLEX) -> str:
        if not self._t:
            return "0"
        items = self.sorted_terms(order)
        if len(items) > 1 and all(c < 0 for _, c in items):
            return "-(" + (-self).to_str(order) + ")"
        out = ""
        for i, (e, c) in enumerate(items):
            mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(self.names, e) if k)
            a = abs(c)
            cs = str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"
            body = mono if (mono and a == 1) else (f"{cs}*{mono}" if mono else cs)
            if i == 0:
                out = ("-" if c < 0 else "") + body
            else:
                out += (" - " if c < 0 else " + ") + body
        return out

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"MultiPoly({self.to_str()!r})"


x = MultiPoly.var(0)
y = MultiPoly.var(1)
z = MultiPoly.var(2)


# ---------------------------------------------------------------------------
# parsing


class _PolyParser:
    def __init__(self, src: str, names: Sequence[str]):
        self.src = src
        self.pos = 0
        self.names = tuple(names)

    def _peek(self) -> str:
        while self.pos < len(self.src) and self.src[self.pos].isspace():
            self.pos += 1
        return self.src[self.pos] if self.pos < len(self.src) else ""

    def _fail(self, msg, expected):
        raise ParseError(msg, self.pos, expected)

    def parse(self) -> MultiPoly:
        p = self.expr()
        if self._peek():
            self._fail("unexpected character", ["+", "-", "end of input"])
        return p

    def expr(self) -> MultiPoly:
        sign = 1
        if self._peek() in ("+", "-"):
            sign = -1 if self.src[self.pos] == "-" else 1
            self.pos += 1
        total = self.term().scale(sign)
        while self._peek() in ("+", "-"):
            sign = -1 if self.src[self.pos] == "-" else 1
            self.pos += 1
            total = total + self.term().scale(sign)
        return total

    def term(self) -> MultiPoly:
        val = self.power()
        while True:
            ch = self._peek()
            if ch == "*":
                self.pos += 1
                val = val * self.power()
            elif ch and (ch in self.names or ch == "(" or ch.isdigit()):
                val = val * self.power()
            else:
                return val

    def power(self) -> MultiPoly:
        base = self.atom()
        if self._peek() == "^":
            self.pos += 1
            m = re.compile(r"\s*(\d+)").match(self.src, self.pos)
            if not m:
                self._fail("expected exponent", ["integer"])
            self.pos = m.end()
            base = base ** int(m.group(1))
        return base

    def atom(self) -> MultiPoly:
        ch = self._peek()
        n = len(self.names)
        if ch == "(":
            self.pos += 1
            inner = self.expr()
            if self._peek() != ")":
                self._fail("unbalanced parenthesis", [")"])
            self.pos += 1
            return inner
        if ch and ch in self.names:
            self.pos += 1
            return MultiPoly.var(self.names.index(ch), n, self.names)
        if ch.isdigit():
            m = re.compile(r"\d+(?:/\d+)?").match(self.src, self.pos)
            self.pos = m.end()
            return MultiPoly(Fraction(m.group()), n, self.names)
        self._fail("expected term", ["integer", "(", *self.names])


def parse_poly(src: str, names: Sequence[str] = VARS) -> MultiPoly:
    """Parse ``x^2*y - 4`` style text; ``2x`` and ``-(y*z + x)`` are accepted."""
    return _PolyParser(src, names).parse()


# ---------------------------------------------------------------------------
# Gröbner bases (Buchberger with the product and chain criteria)


def _divides(a: Exp, b: Exp) -> bool:
    return all(i <= j for i, j in zip(a, b))


def _lcm(a: Exp, b: Exp) -> Exp:
    return tuple(max(i, j) for i, j in zip(a, b))


def _sub(a: Exp, b: Exp) -> Exp:
    return tuple(i - j for i, j in zip(a, b))


def _monic(p: MultiPoly, order: MonomialOrder) -> MultiPoly:
    _, c = p.leading(order)
    return p.scale(1 / c)


def reduce_full(p: MultiPoly, basis: Sequence[MultiPoly], order: MonomialOrder) -> MultiPoly:
    """Complete reduction of ``p`` by ``basis`` (remainder of multivariate division)."""
    leads = [(g.leading(order), g) for g in basis if g]
    rem: Dict[Exp, Fraction] = {}
    work = dict(p._t)
    key = order.key
    while work:
        e = max(work, key=key)
        c = work[e]
        for (le, lc), g in leads:
            if _divides(le, e):
                q = _sub(e, le)
                f = c / lc
                for ge, gc in g._t.items():
                    ne = tuple(a + b for a, b in zip(ge, q))
                    v = work.get(ne, 0) - f * gc
                    if v:
                        work[ne] = v
                    else:
                        work.pop(ne, None)
                break
        else:
            rem[e] = c
            del work[e]
    return p._like(rem)


def _spoly(f: MultiPoly, g: MultiPoly, order: MonomialOrder) -> MultiPoly:
    (ef, cf), (eg, cg) = f.leading(order), g.leading(order)
    m = _lcm(ef, eg)
    return f.mul_monomial(_sub(m, ef), 1 / cf) - g.mul_monomial(_sub(m, eg), 1 / cg)


def buchberger(gens: Sequence[MultiPoly], order: MonomialOrder = DEGREVLEX) -> List[MultiPoly]:
    """Reduced Gröbner basis of the ideal generated by ``gens``."""
    G: List[MultiPoly] = []
    for g in gens:
        if g:
            G.append(_monic(g, order))
    if not G:
        return []
    pairs = set(itertools.combinations(range(len(G)), 2))
    while pairs:
        # normal selection: smallest lcm first
        i, j = min(pairs, key=lambda ij: order.key(_lcm(G[ij[0]].leading(order)[0],
                                                           G[ij[1]].leading(order)[0])))
        pairs.discard((i, j))
        li, lj = G[i].leading(order)[0], G[j].leading(order)[0]
        m = _lcm(li, lj)
        if all(a + b == c for a, b, c in zip(li, lj, m)):
            continue  # coprime leading monomials
        chain = any(
            k not in (i, j)
            and _divides(G[k].leading(order)[0], m)
            and (min(i, k), max(i, k)) not in pairs
            and (min(j, k), max(j, k)) not in pairs
            for k in range(len(G))
        )
        if chain:
            continue
        h = reduce_full(_spoly(G[i], G[j], order), G, order)
        if h:
            G.append(_monic(h, order))
            n = len(G) - 1
            pairs.update((k, n) for k in range(n))
    return _interreduce(G, order)


def _interreduce(G: List[MultiPoly], order: MonomialOrder) -> List[MultiPoly]:
    G = [g for g in G if g]
    # drop elements whose leading monomial is divisible by another's
    keep: List[MultiPoly] = []
    for i, g in enumerate(G):
        lg = g.leading(order)[0]
        redundant = False
        for j, h in enumerate(G):
            if i == j:
                continue
            lh = h.leading(order)[0]
            if _divides(lh, lg) and (lh != lg or j < i):
                redundant = True
                break
        if not redundant:
            keep.append(g)
    out = []
    for i, g in enumerate(keep):
        others = keep[:i] + keep[i + 1:]
        r = reduce_full(g, others, order)
        out.append(_monic(r, order))
    out.sort(key=lambda p: order.key(p.leading(order)[0]))
    return out


# ---------------------------------------------------------------------------
# ideals


class Ideal:
    """Ideal of a polynomial ring, with write-once cached Gröbner bases per order."""

    def __init__(self, generators: Iterable[MultiPoly]):
        gens = [g for g in generators if g]
        self.generators: Tuple[MultiPoly, ...] = tuple(gens)
        self.nvars = gens[0].nvars if gens else 3
        self.names = gens[0].names if gens else VARS
        self._gb: Dict[MonomialOrder, Tuple[MultiPoly, ...]] = {}

    def __repr__(self):
        return "Ideal(" + ", ".join(str(g) for g in self.generators) + ")"

    def groebner(self, order: MonomialOrder = DEGREVLEX) -> Tuple[MultiPoly, ...]:
        gb = self._gb.get(order)
        if gb is None:
            gb = tuple(buchberger(self.generators, order))
            self._gb.setdefault(order, gb)
        return self._gb[order]

    def normal_form(self, p: MultiPoly, order: MonomialOrder = DEGREVLEX) -> MultiPoly:
        return reduce_full(p, self.groebner(order), order)

    def contains(self, p: MultiPoly, order: MonomialOrder = DEGREVLEX) -> bool:
        return not self.normal_form(p, order)

    def __contains__(self, p):
        return self.contains(p)

    def contains_ideal(self, other: "Ideal") -> bool:
        return all(self.contains(g) for g in other.generators)

    def equals(self, other: "Ideal") -> bool:
        return self.contains_ideal(other) and other.contains_ideal(self)

    def is_unit(self) -> bool:
        return self.contains(MultiPoly(1, self.nvars, self.names))

    def leading_monomials(self, order: MonomialOrder = DEGREVLEX) -> List[Exp]:
        return [g.leading(order)[0] for g in self.groebner(order)]

    def is_standard(self, exp: Exp, order: MonomialOrder = DEGREVLEX) -> bool:
        return not any(_divides(le, exp) for le in self.leading_monomials(order))

    def __add__(self, other: "Ideal") -> "Ideal":
        return ideal_ops(self, other, "sum")

    def __mul__(self, other: "Ideal") -> "Ideal":
        return ideal_ops(self, other, "product")

    def __and__(self, other: "Ideal") -> "Ideal":
        return ideal_ops(self, other, "intersection")


def groebner_basis(ideal: Ideal, order: MonomialOrder = DEGREVLEX) -> Ideal:
    """Fill the Gröbner cache of ``ideal`` for ``order`` and return it."""
    ideal.groebner(order)
    return ideal


def normal_form(p: MultiPoly, ideal: Ideal, order: MonomialOrder = DEGREVLEX) -> MultiPoly:
    return ideal.normal_form(p, order)


def ideal_ops(a: Ideal, b: Ideal, op: str) -> Ideal:
    if op == "sum":
        return Ideal(a.generators + b.generators)
    if op == "product":
        return Ideal(f * g for f in a.generators for g in b.generators)
    if op == "intersection":
        return _intersection(a, b)
    raise ValueError(f"unknown ideal operation {op!r}")


def _intersection(a: Ideal, b: Ideal) -> Ideal:
    # I ∩ J = (w*I + (1-w)*J) ∩ k[vars], w eliminated by a block order
    if not a.generators or not b.generators:
        return Ideal([])
    n = a.nvars
    names = a.names + ("w",)
    w = MultiPoly.var(n, n + 1, names)
    gens = [w * f.extend(names=names) for f in a.generators]
    gens += [(1 - w) * g.extend(names=names) for g in b.generators]
    order = MonomialOrder("elim", (n,) + DEGREVLEX.ranking if n == 3 else (n,) + tuple(range(n)), n + 1)
    gb = buchberger(gens, order)
    kept = []
    for g in gb:
        if all(e[n] == 0 for e in g._t):
            kept.append(MultiPoly._raw({e[:n]: c for e, c in g._t.items()}, n, a.names))
    return Ideal(kept)


def monomials_up_to(nvars: int, degree: int) -> List[Exp]:
    out = []
    for d in range(degree + 1):
        for combo in itertools.combinations_with_replacement(range(nvars), d):
            e = [0] * nvars
            for i in combo:
                e[i] += 1
            out.append(tuple(e))
    return out


@dataclass
class QuotientBasis:
    monomials: List[Exp]
    finite: bool
    degree_bound: int
    names: Tuple[str, ...] = VARS

    @property
    def dimension(self):
        return len(self.monomials) if self.finite else None

    def as_polys(self) -> List[MultiPoly]:
        return [MultiPoly.monomial(e, 1, self.names) for e in self.monomials]

    def __str__(self):
        return "{" + ", ".join(str(p) for p in self.as_polys()) + ("" if self.finite else ", ...") + "}"


def quotient_basis(ideal: Ideal, degree_bound: int = 8, order: MonomialOrder = DEGREVLEX) -> QuotientBasis:
    """Standard monomials of ``ideal``; all of them when the staircase is finite."""
    if degree_bound < 0:
        raise ValueError("degree_bound must be non-negative")
    lms = ideal.leading_monomials(order)
    n = ideal.nvars
    pure = {}
    for e in lms:
        nz = [i for i, k in enumerate(e) if k]
        if len(nz) == 1:
            pure[nz[0]] = min(pure.get(nz[0], e[nz[0]]), e[nz[0]])
        elif not nz:
            return QuotientBasis([], True, degree_bound, ideal.names)
    finite = len(pure) == n
    bound = sum(pure[i] - 1 for i in range(n)) if finite else degree_bound
    std = [e for e in monomials_up_to(n, bound) if not any(_divides(le, e) for le in lms)]
    std.sort(key=order.key)
    return QuotientBasis(std, finite, degree_bound, ideal.names)


# ---------------------------------------------------------------------------
# exact linear algebra helpers


def rref(rows: List[List[Fraction]]) -> Tuple[List[List[Fraction]], List[int]]:
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def solve_in_span(vectors: Sequence[MultiPoly], target: MultiPoly) -> Optional[List[Fraction]]:
    """Coefficients ``c`` with ``sum(c_i * vectors[i]) == target``, or ``None``."""
    monos = sorted({e for v in list(vectors) + [target] for e in v._t})
    if not monos:
        return [Fraction(0)] * len(vectors)
    k = len(vectors)
    # augmented system: one row per monomial
    rows = [[v._t.get(e, Fraction(0)) for v in vectors] + [target._t.get(e, Fraction(0))] for e in monos]
    red, piv = rref(rows)
    if k in piv:
        return None
    sol = [Fraction(0)] * k
    for row, c in zip(red, piv):
        sol[c] = row[k]
    return sol


def span_rank(vectors: Sequence[MultiPoly]) -> int:
    monos = sorted({e for v in vectors for e in v._t})
    if not monos or not vectors:
        return 0
    rows = [[v._t.get(e, Fraction(0)) for e in monos] for v in vectors]
    return len(rref(rows)[1])


# ---------------------------------------------------------------------------
# Tor_1 of two cyclic modules over the torus character ring


@dataclass
class Tor1Result:
    generators: List[MultiPoly]
    vector_space_basis: List[MultiPoly]
    relations: List[MultiPoly]
    numerator: Ideal = field(repr=False)
    denominator: Ideal = field(repr=False)
    annihilator: Ideal = field(repr=False)
    degree_bound: int = 8
    stabilized: bool = True

    @property
    def dimension(self) -> int:
        return len(self.vector_space_basis)

    def reduce(self, p: MultiPoly) -> MultiPoly:
        return self.denominator.normal_form(p)

    def coordinates(self, p: MultiPoly) -> Optional[List[Fraction]]:
        """Coordinates of the class of ``p`` in ``vector_space_basis``."""
        return solve_in_span([self.reduce(b) for b in self.vector_space_basis], self.reduce(p))


def _tor1_at(N: Ideal, D: Ideal, bound: int, order: MonomialOrder):
    lmN = N.leading_monomials(order)
    gbN = N.groebner(order)
    found = []
    for e in monomials_up_to(N.nvars, bound):
        if D.is_standard(e, order):
            for g, le in zip(gbN, lmN):
                if _divides(le, e):
                    found.append((e, g.mul_monomial(_sub(e, le))))
                    break
    found.sort(key=lambda p: order.key(p[0]))
    return found


def tor1_module(J: Ideal, K: Ideal, ambient_relation: MultiPoly, degree_bound: int = 8,
                order: MonomialOrder = DEGREVLEX) -> Tor1Result:
    """Vector-space basis of ``(J ∩ K) / (JK + (relation))``.

    Both ideals live upstairs in ``Q[x, y, z]``; the ambient relation must lie
    in each.  The dimension is counted through degree ``degree_bound`` and
    checked again one degree higher.
    """
    if ambient_relation and not (J.contains(ambient_relation) and K.contains(ambient_relation)):
        raise RelationNotContained(f"{ambient_relation} is not in both ideals")
    N = J & K
    D = J * K + Ideal([ambient_relation] if ambient_relation else [])
    low = _tor1_at(N, D, degree_bound, order)
    high = _tor1_at(N, D, degree_bound + 1, order)
    if len(high) != len(low):
        raise NoStabilization(f"Tor_1 dimension grows past degree {degree_bound}",
                              degree_bound=degree_bound, dimension=len(low))
    return _assemble_tor1(J, K, N, D, low, degree_bound, True, order)


def tor1_module_auto(J: Ideal, K: Ideal, ambient_relation: MultiPoly, start: int = 8, limit: int = 32,
                     order: MonomialOrder = DEGREVLEX) -> Tor1Result:
    """Double the degree bound until stabilization; past ``limit`` return a truncated result."""
    bound = start
    while True:
        try:
            return tor1_module(J, K, ambient_relation, bound, order)
        except NoStabilization:
            if bound >= limit:
                break
            bound = min(2 * bound, limit)
    N = J & K
    D = J * K + Ideal([ambient_relation] if ambient_relation else [])
    return _assemble_tor1(J, K, N, D, _tor1_at(N, D, bound, order), bound, False, order)


def _assemble_tor1(J, K, N, D, found, bound, stabilized, order) -> Tor1Result:
    basis = [D.normal_form(p, order) for _, p in found]
    ann = J + K
    ann_std = [MultiPoly.monomial(e, 1, N.names) for e in quotient_basis(ann, bound, order).monomials]
    gens: List[MultiPoly] = []
    span: List[MultiPoly] = []
    for b in basis:
        if span and solve_in_span(span, b) is not None:
            continue
        gens.append(b)
        span.extend(D.normal_form(s * b, order) for s in ann_std)
        span = [v for v in span if v]
    relations = []
    for g in gens:
        for h in ann.groebner(order):
            rel = h * g
            if D.contains(rel, order):
                relations.append(rel)
    return Tor1Result(gens, basis, relations, N, D, ann, bound, stabilized)
