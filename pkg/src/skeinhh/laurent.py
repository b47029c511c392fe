"""Laurent polynomials in ``t`` with exact rational coefficients.

The coefficient ring of every skein module in this package.  Besides the
ring operations, a :class:`LaurentPoly` knows its ``(1+t)``-adic valuation,
which is the bookkeeping device used for torsion detection.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Tuple, Union

from .errors import NotDivisible, ParseError

INFINITY = math.inf

Scalar = Union[int, Fraction]


class LaurentPoly:
    """Immutable finitely supported map ``exponent -> Fraction``.

    Zero coefficients are never stored, so two polynomials are equal exactly
    when their coefficient dictionaries are.
    """

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Union[Mapping[int, Scalar], Scalar, None] = None):
        if coeffs is None:
            c = {}
        elif isinstance(coeffs, (int, Fraction)):
            c = {0: Fraction(coeffs)} if coeffs else {}
        else:
            c = {}
            for k, v in coeffs.items():
                v = Fraction(v)
                if v:
                    c[int(k)] = v
        self._c: Dict[int, Fraction] = c
        self._hash = None

    @classmethod
    def _raw(cls, c: Dict[int, Fraction]) -> "LaurentPoly":
        obj = cls.__new__(cls)
        obj._c = c
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, coeff: Scalar = 1, exp: int = 0) -> "LaurentPoly":
        return cls({exp: coeff})

    @classmethod
    def one_plus_t(cls, k: int = 1) -> "LaurentPoly":
        return cls({0: 1, 1: 1}) ** k

    # -- inspection -------------------------------------------------------

    def coeffs(self) -> Dict[int, Fraction]:
        return dict(self._c)

    def items(self) -> Iterable[Tuple[int, Fraction]]:
        return sorted(self._c.items())

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self):
        return bool(self._c)

    def min_exp(self) -> int:
        return min(self._c)

    def max_exp(self) -> int:
        return max(self._c)

    def coeff(self, k: int) -> Fraction:
        return self._c.get(k, Fraction(0))

    def is_monomial(self) -> bool:
        return len(self._c) == 1

    # -- ring structure ---------------------------------------------------

    @staticmethod
    def _coerce(other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        c = dict(self._c)
        for k, v in other._c.items():
            s = c.get(k, 0) + v
            if s:
                c[k] = s
            else:
                c.pop(k, None)
        return LaurentPoly._raw(c)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({k: -v for k, v in self._c.items()})

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
        c: Dict[int, Fraction] = {}
        for i, a in self._c.items():
            for j, b in other._c.items():
                c[i + j] = c.get(i + j, 0) + a * b
        return LaurentPoly._raw({k: v for k, v in c.items() if v})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if not self.is_monomial():
                raise ValueError("only monomials are units")
            (k, v), = self._c.items()
            return LaurentPoly({k * n: 1 / v ** -n})
        out = LaurentPoly(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def scale(self, c: Scalar) -> "LaurentPoly":
        c = Fraction(c)
        if not c:
            return LaurentPoly()
        return LaurentPoly._raw({k: v * c for k, v in self._c.items()})

    def shift(self, n: int) -> "LaurentPoly":
        """Multiply by ``t**n``."""
        return LaurentPoly._raw({k + n: v for k, v in self._c.items()})

    def mirror(self) -> "LaurentPoly":
        """Substitute ``t -> t^-1``."""
        return LaurentPoly._raw({-k: v for k, v in self._c.items()})

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    # -- evaluation and (1+t)-adic structure ------------------------------

    def evaluate(self, value: Scalar) -> Fraction:
        value = Fraction(value)
        return sum((v * value ** k for k, v in self._c.items()), Fraction(0))

    def eval_at_minus_one(self) -> Fraction:
        return sum((v if k % 2 == 0 else -v for k, v in self._c.items()), Fraction(0))

    def _divmod_one_plus_t(self) -> Tuple["LaurentPoly", Fraction]:
        # self = (1+t) * q + r * t^lo, synthetic division from the top
        lo, hi = self.min_exp(), self.max_exp()
        q: Dict[int, Fraction] = {}
        carry = Fraction(0)
        for k in range(hi, lo - 1, -1):
            carry = self._c.get(k, 0) - carry
            if k > lo and carry:
                q[k - 1] = carry
        return LaurentPoly._raw(q), carry

    def one_plus_t_valuation(self):
        """Largest ``k`` with ``(1+t)^k`` dividing ``self``; ``INFINITY`` for zero."""
        if not self._c:
            return INFINITY
        k = 0
        p = self
        while True:
            q, r = p._divmod_one_plus_t()
            if r:
                return k
            p = q
            k += 1

    def exact_div_one_plus_t(self, k: int = 1) -> "LaurentPoly":
        if k < 0:
            raise ValueError("k must be non-negative")
        p = self
        for done in range(k):
            if not p._c:
                return p
            q, r = p._divmod_one_plus_t()
            if r:
                raise NotDivisible(f"(1+t)^{k} does not divide {self}",
                                   valuation=done, requested=k)
            p = q
        return p

    # -- text -------------------------------------------------------------

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for k, v in sorted(self._c.items()):
            sign = "-" if v < 0 else "+"
            a = abs(v)
            if k == 0:
                body = _fmt_fraction(a)
            else:
                mono = "t" if k == 1 else f"t^{k}"
                body = mono if a == 1 else f"{_fmt_fraction(a)}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"LaurentPoly({str(self)!r})"

    @classmethod
    def parse(cls, src: str) -> "LaurentPoly":
        return parse_laurent(src)


def _fmt_fraction(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


t = LaurentPoly.monomial(1, 1)
ONE = LaurentPoly(1)
ZERO = LaurentPoly()


def loop_value() -> LaurentPoly:
    """Value of a null-homotopic unknotted loop: ``-(t^2 + t^-2)``."""
    return LaurentPoly({2: -1, -2: -1})


class _LaurentParser:
    """Recursive descent over ``term (('+'|'-') term)*``.

    A term is ``[coeff ['*']] ['t' ['^' int]]``; coefficients are ``p`` or
    ``p/q``; a parenthesised expression may stand in for a factor.
    """

    def __init__(self, src: str):
        self.src = src
        self.pos = 0

    def _skip(self):
        while self.pos < len(self.src) and self.src[self.pos].isspace():
            self.pos += 1

    def _peek(self):
        self._skip()
        return self.src[self.pos] if self.pos < len(self.src) else ""

    def _err(self, msg, expected):
        raise ParseError(msg, self.pos, expected)

    def parse(self) -> LaurentPoly:
        out = self.expr()
        if self._peek():
            self._err("unexpected character", ["+", "-", "end of input"])
        return out

    def expr(self) -> LaurentPoly:
        sign = 1
        if self._peek() in "+-" and self._peek():
            sign = -1 if self.src[self.pos] == "-" else 1
            self.pos += 1
        total = self.term().scale(sign)
        while self._peek() and self._peek() in "+-":
            sign = -1 if self.src[self.pos] == "-" else 1
            self.pos += 1
            total = total + self.term().scale(sign)
        return total

    def _int(self, allow_sign=False) -> int:
        self._skip()
        m = re.compile(r"[+-]?\d+" if allow_sign else r"\d+").match(self.src, self.pos)
        if not m:
            self._err("expected integer", ["integer"])
        self.pos = m.end()
        return int(m.group())

    def factor(self) -> LaurentPoly:
        ch = self._peek()
        if ch == "(":
            self.pos += 1
            inner = self.expr()
            if self._peek() != ")":
                self._err("unbalanced parenthesis", [")"])
            self.pos += 1
            return inner
        if ch == "t":
            self.pos += 1
            exp = 1
            if self._peek() == "^":
                self.pos += 1
                exp = self._int(allow_sign=True)
            return LaurentPoly.monomial(1, exp)
        if ch.isdigit():
            m = re.compile(r"\d+(?:/\d+)?").match(self.src, self.pos)
            self.pos = m.end()
            return LaurentPoly(Fraction(m.group()))
        self._err("expected term", ["integer", "t", "("])

    def term(self) -> LaurentPoly:
        val = self.factor()
        while True:
            ch = self._peek()
            if ch == "*":
                self.pos += 1
                val = val * self.factor()
            elif ch in ("t", "("):
                val = val * self.factor()
            else:
                return val


def parse_laurent(src: str) -> LaurentPoly:
    """Parse text such as ``-1/2*t^-3 - 1/2*t^-5``."""
    return _LaurentParser(src).parse()


def as_laurent(value) -> LaurentPoly:
    if isinstance(value, LaurentPoly):
        return value
    if isinstance(value, str):
        return parse_laurent(value)
    return LaurentPoly(value)
