"""Text syntax for surface elements.

::

    expr  := term (('+' | '-') term)*
    term  := [coeff ['*']] word
    word  := atom ('.' atom)*
    atom  := 'L' | 'M' | 'LM' | '(' int ',' int ')' | '1'
    coeff := '(' laurent ')' | rational ['*' 't' ['^' int]] | 't' ['^' int]

``x``, ``y`` and ``z`` are accepted for ``M``, ``L`` and ``LM``; ``1`` is
the empty word.  :func:`format_element` prints in a form this grammar reads
back to the same element.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import List

from .errors import ParseError
from .laurent import LaurentPoly, parse_laurent
from .surface import L, LM, M, SurfaceElement, TorusCurve

_ALIASES = {"L": L, "M": M, "LM": LM, "y": L, "x": M, "z": LM}
_INT = re.compile(r"-?\d+")
_RATIONAL = re.compile(r"\d+(?:/\d+)?")
_NAME = re.compile(r"LM|L|M|x|y|z")


class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.pos = 0

    def _skip(self):
        while self.pos < len(self.src) and self.src[self.pos].isspace():
            self.pos += 1

    def _peek(self) -> str:
        self._skip()
        return self.src[self.pos] if self.pos < len(self.src) else ""

    def _fail(self, msg, expected):
        self._skip()
        where = "end of input" if self.pos >= len(self.src) else repr(self.src[self.pos])
        raise ParseError(f"{msg} (found {where})", self.pos, expected)

    def parse(self) -> SurfaceElement:
        if not self._peek():
            self._fail("empty expression", ["term"])
        terms = []
        sign = 1
        if self._peek() in "+-":
            sign = -1 if self.src[self.pos] == "-" else 1
            self.pos += 1
        terms.append(self.term(sign))
        while self._peek():
            ch = self._peek()
            if ch not in "+-":
                self._fail("expected '+' or '-'", ["+", "-", "end of input"])
            self.pos += 1
            terms.append(self.term(-1 if ch == "-" else 1))
        return SurfaceElement(terms)

    def term(self, sign: int):
        coeff = self.coeff()
        if coeff is not None:
            if self._peek() == "*":
                self.pos += 1
                word = self.word()
            elif self._peek() in ("", "+", "-"):
                word = ()  # bare constant
            else:
                word = self.word()
        else:
            coeff = LaurentPoly(1)
            word = self.word()
        return word, coeff.scale(sign)

    def coeff(self):
        """A coefficient, or ``None`` when the term starts directly with a word."""
        self._skip()
        ch = self._peek()
        if ch == "(":
            # either a parenthesised Laurent polynomial or a curve (a,b)
            if re.compile(r"\(\s*-?\d+\s*,").match(self.src, self.pos):
                return None
            depth, j = 0, self.pos
            while j < len(self.src):
                if self.src[j] == "(":
                    depth += 1
                elif self.src[j] == ")":
                    depth -= 1
                    if depth == 0:
                        break
                j += 1
            if depth:
                self.pos = len(self.src)
                self._fail("unbalanced parenthesis", [")"])
            inner = self.src[self.pos + 1:j]
            try:
                value = parse_laurent(inner)
            except ParseError as exc:
                raise ParseError(f"bad coefficient: {exc}", self.pos + 1 + exc.position,
                                 exc.expected) from None
            self.pos = j + 1
            return value
        if ch.isdigit():
            m = _RATIONAL.match(self.src, self.pos)
            if m.group() == "1" and not self._continues_coeff(m.end()):
                return None  # the empty word
            self.pos = m.end()
            value = LaurentPoly(Fraction(m.group()))
            save = self.pos
            if self._peek() == "*":
                self.pos += 1
                if self._peek() == "t":
                    return value * self._tpower()
                self.pos = save
            return value
        if ch == "t":
            return self._tpower()
        return None

    def _continues_coeff(self, end: int) -> bool:
        rest = self.src[end:].lstrip()
        return rest.startswith("*")

    def _tpower(self) -> LaurentPoly:
        self.pos += 1  # 't'
        exp = 1
        if self._peek() == "^":
            self.pos += 1
            self._skip()
            m = _INT.match(self.src, self.pos)
            if not m:
                self._fail("expected exponent", ["integer"])
            self.pos = m.end()
            exp = int(m.group())
        return LaurentPoly.monomial(1, exp)

    def word(self):
        letters: List[TorusCurve] = []
        first = self.atom()
        if first is not None:
            letters.append(first)
        while self._peek() == ".":
            self.pos += 1
            nxt = self.atom()
            if nxt is None:
                self._fail("the empty word cannot be multiplied", ["L", "M", "LM", "("])
            letters.append(nxt)
        if first is None and letters:
            self._fail("the empty word cannot be multiplied", ["+", "-"])
        return tuple(letters)

    def atom(self):
        ch = self._peek()
        if ch == "(":
            self.pos += 1
            self._skip()
            m = _INT.match(self.src, self.pos)
            if not m:
                self._fail("expected integer", ["integer"])
            a = int(m.group())
            self.pos = m.end()
            if self._peek() != ",":
                self._fail("expected ','", [","])
            self.pos += 1
            self._skip()
            m = _INT.match(self.src, self.pos)
            if not m:
                self._fail("expected integer", ["integer"])
            b = int(m.group())
            self.pos = m.end()
            if self._peek() != ")":
                self._fail("expected ')'", [")"])
            self.pos += 1
            return TorusCurve(a, b)
        if ch == "1":
            self.pos += 1
            return None
        m = _NAME.match(self.src, self.pos) if ch else None
        if not m:
            self._fail("expected a curve", ["L", "M", "LM", "(", "1"])
        self.pos = m.end()
        return _ALIASES[m.group()]


def parse_element(src: str) -> SurfaceElement:
    """Parse text such as ``(-1/2*t^-3 - 1/2*t^-5)*L.L - 1/2*L.LM - 1/2*LM.L``."""
    return _Parser(src).parse()


def _word_text(w) -> str:
    return ".".join(str(c) for c in w) if w else "1"


def format_element(e: SurfaceElement) -> str:
    if not e:
        return "0"
    out = []
    for i, (w, c) in enumerate(e.items()):
        word = _word_text(w)
        if c == 1:
            piece, sign = word, "+"
        elif c == -1:
            piece, sign = word, "-"
        elif c.is_monomial():
            (k, v), = c.items()
            sign = "-" if v < 0 else "+"
            mag = LaurentPoly({k: abs(v)})
            piece = f"{mag}*{word}" if not (k == 0 and abs(v) == 1) else word
        else:
            piece, sign = f"({c})*{word}", "+"
        if i == 0:
            out.append(piece if sign == "+" else f"-{piece}")
        else:
            out.append(f" {sign} {piece}")
    return "".join(out)
