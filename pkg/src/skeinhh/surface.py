"""Skeins on the torus: curves, formal stacking words and trace polynomials.

A curve ``(a, b)`` is the simple closed curve homologous to ``a`` longitudes
plus ``b`` meridians.  Words of curves are kept as free symbols; the only
normalisation happens after a word is pushed into a solid torus or after
specialisation at ``t = -1``, where a curve becomes minus its trace.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Iterator, Mapping, Tuple, Union

from .errors import NotPrimitive, ZeroCurve
from .laurent import LaurentPoly, as_laurent
from .polyring import MultiPoly, x, y, z


@dataclass(frozen=True, order=True)
class TorusCurve:
    """Unoriented curve ``ℓ^a m^b``, stored with first nonzero coordinate positive."""

    a: int
    b: int

    def __post_init__(self):
        a, b = self.a, self.b
        if a < 0 or (a == 0 and b < 0):
            object.__setattr__(self, "a", -a)
            object.__setattr__(self, "b", -b)

    @property
    def is_primitive(self) -> bool:
        return math.gcd(self.a, self.b) == 1

    def __add__(self, other: "TorusCurve") -> "TorusCurve":
        return TorusCurve(self.a + other.a, self.b + other.b)

    def __sub__(self, other: "TorusCurve") -> "TorusCurve":
        return TorusCurve(self.a - other.a, self.b - other.b)

    def vector(self) -> Tuple[int, int]:
        return (self.a, self.b)

    def __str__(self):
        named = {(1, 0): "L", (0, 1): "M", (1, 1): "LM"}
        return named.get((self.a, self.b), f"({self.a},{self.b})")


L = TorusCurve(1, 0)
M = TorusCurve(0, 1)
LM = TorusCurve(1, 1)


def check_primitive(c: TorusCurve) -> TorusCurve:
    if c.a == 0 and c.b == 0:
        raise ZeroCurve("the zero class is not a curve")
    if not c.is_primitive:
        raise NotPrimitive(f"curve {c} is not primitive", curve=[c.a, c.b])
    return c


# ---------------------------------------------------------------------------
# words and elements

SurfaceWord = Tuple[TorusCurve, ...]


def concat(u: SurfaceWord, v: SurfaceWord) -> SurfaceWord:
    return tuple(u) + tuple(v)


def word_str(w: SurfaceWord) -> str:
    return ".".join(str(c) for c in w) if w else "1"


class SurfaceElement:
    """Formal sum of words with Laurent coefficients (no skein-algebra reduction)."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Union[Mapping[SurfaceWord, object], Iterable, None] = None):
        acc: Dict[SurfaceWord, LaurentPoly] = {}
        if terms:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for w, c in items:
                w = tuple(w)
                acc[w] = acc.get(w, LaurentPoly()) + as_laurent(c)
        self._terms = {w: c for w, c in acc.items() if c}

    @classmethod
    def word(cls, *curves: TorusCurve, coeff=1) -> "SurfaceElement":
        return cls({tuple(curves): coeff})

    def items(self) -> Iterator[Tuple[SurfaceWord, LaurentPoly]]:
        return iter(sorted(self._terms.items(), key=lambda kv: (len(kv[0]), kv[0])))

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def coefficient(self, w: SurfaceWord) -> LaurentPoly:
        return self._terms.get(tuple(w), LaurentPoly())

    def __add__(self, other: "SurfaceElement") -> "SurfaceElement":
        return SurfaceElement(list(self._terms.items()) + list(other._terms.items()))

    def __neg__(self):
        return SurfaceElement({w: -c for w, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "SurfaceElement":
        c = as_laurent(c)
        return SurfaceElement({w: c * v for w, v in self._terms.items()})

    def __mul__(self, other: "SurfaceElement") -> "SurfaceElement":
        """Formal stacking product: concatenation of words."""
        out = []
        for w1, c1 in self._terms.items():
            for w2, c2 in other._terms.items():
                out.append((concat(w1, w2), c1 * c2))
        return SurfaceElement(out)

    def __eq__(self, other):
        return isinstance(other, SurfaceElement) and self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __str__(self):
        from .parsing import format_element
        return format_element(self)

    def __repr__(self):
        return f"SurfaceElement({str(self)!r})"


# ---------------------------------------------------------------------------
# trace polynomials

def _farey_parents(a: int, b: int) -> Tuple[Tuple[int, int], Tuple[int, int]]:
    # primitive (a, b) with a > 0 and b != 0, not a base case; raw vectors
    sign = 1 if b > 0 else -1
    bb = abs(b)
    p = (-pow(bb, -1, a)) % a if a > 1 else 0
    q = (1 + p * bb) // a
    return (p, sign * q), (a - p, sign * (bb - q))


@lru_cache(maxsize=None)
def _trace_primitive(a: int, b: int) -> MultiPoly:
    if (a, b) == (0, 1):
        return x
    if (a, b) == (1, 0):
        return y
    if (a, b) == (1, 1):
        return z
    u, w = _farey_parents(a, b)
    d = TorusCurve(u[0] - w[0], u[1] - w[1])
    return -(trace_poly(TorusCurve(*u)) * trace_poly(TorusCurve(*w))) - trace_poly(d)


def trace_poly(c: TorusCurve) -> MultiPoly:
    """Minus the SL2 trace of the curve, as a polynomial in ``x, y, z``.

    ``x, y, z`` are minus the traces of ``m``, ``ℓ`` and ``ℓm``.  Primitive
    curves descend through their Farey parents with
    ``T(u + w) = -T(u) T(w) - T(u - w)``; a multiple ``k`` of a primitive curve
    goes through the Chebyshev recursion on traces of powers.
    """
    c = TorusCurve(c.a, c.b)
    if c.a == 0 and c.b == 0:
        return MultiPoly(-2)
    g = math.gcd(c.a, c.b)
    if g == 1:
        return _trace_primitive(c.a, c.b)
    base = -_trace_primitive(c.a // g, c.b // g)  # the trace of the primitive curve
    prev, cur = MultiPoly(2), base  # tr(A^0), tr(A^1)
    for _ in range(g - 1):
        prev, cur = cur, base * cur - prev
    return -cur


def torus_relation() -> MultiPoly:
    """``x^2 + y^2 + z^2 + xyz - 4``, the defining relation of the torus character ring."""
    return x * x + y * y + z * z + x * y * z - 4


def specialize_word(w: SurfaceWord) -> MultiPoly:
    out = MultiPoly(1)
    for c in w:
        out = out * trace_poly(c)
    return out


def specialize(e: SurfaceElement) -> MultiPoly:
    """Map a surface element to the character ring at ``t = -1``."""
    out = MultiPoly(0)
    for w, c in e.items():
        out = out + specialize_word(w).scale(c.eval_at_minus_one())
    return out
