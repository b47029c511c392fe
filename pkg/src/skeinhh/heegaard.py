"""Genus one Heegaard splittings.

``H0`` is glued to ``T^2 x 0`` by the identity and ``H1`` to ``T^2 x 1`` by
a unimodular matrix ``g`` acting on ``(l-exponent, m-exponent)`` columns.
A curve on the torus therefore reaches ``H1`` as ``g^-1 c``.

Both handlebodies are evaluated in one solid-torus model in which the
handlebody lies inside and the collar runs outward.  Seen from ``H1`` the
collar is traversed backwards, so the model needs an orientation-reversing
identification: ``g^-1`` already is one when ``det g = -1``, otherwise it is
composed with the reflection ``(a, b) -> (a, -b)``.  The reflection fixes
the meridian, so it changes framings and nothing at ``t = -1``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd
from typing import Optional, Tuple

from .annulus import SolidTorusElement, resolve
from .errors import BadParameters, NotUnimodular
from .laurent import LaurentPoly
from .layers import Layer, render
from .polyring import Ideal, MultiPoly
from .surface import SurfaceElement, SurfaceWord, TorusCurve, check_primitive, torus_relation, trace_poly

H0 = "H0"
H1 = "H1"
SIDES = (H0, H1)


@dataclass(frozen=True)
class GluingMatrix:
    """Integer matrix ``(p q; r s)``."""

    p: int
    q: int
    r: int
    s: int

    def __post_init__(self):
        if self.det not in (1, -1):
            raise NotUnimodular(f"determinant {self.det} is not ±1", matrix=self.rows())

    @property
    def det(self) -> int:
        return self.p * self.s - self.q * self.r

    def rows(self):
        return [[self.p, self.q], [self.r, self.s]]

    def inverse(self) -> "GluingMatrix":
        d = self.det
        return GluingMatrix(self.s * d, -self.q * d, -self.r * d, self.p * d)

    def apply(self, v: Tuple[int, int]) -> Tuple[int, int]:
        a, b = v
        return (self.p * a + self.q * b, self.r * a + self.s * b)

    def __matmul__(self, other: "GluingMatrix") -> "GluingMatrix":
        return GluingMatrix(self.p * other.p + self.q * other.r, self.p * other.q + self.q * other.s,
                            self.r * other.p + self.s * other.r, self.r * other.q + self.s * other.s)

    def __str__(self):
        return f"{self.p},{self.q};{self.r},{self.s}"

    @classmethod
    def parse(cls, text: str) -> "GluingMatrix":
        m = re.fullmatch(r"\s*(-?\d+)\s*,\s*(-?\d+)\s*;\s*(-?\d+)\s*,\s*(-?\d+)\s*", text)
        if not m:
            raise BadParameters(f"expected 'p,q;r,s', got {text!r}")
        return cls(*(int(g) for g in m.groups()))


IDENTITY = GluingMatrix(1, 0, 0, 1)


def _check_side(side: str) -> str:
    if side not in SIDES:
        raise BadParameters(f"side must be H0 or H1, not {side!r}")
    return side


def image_curve(g: GluingMatrix, c: TorusCurve, direction: str = "forward") -> TorusCurve:
    if direction == "forward":
        return TorusCurve(*g.apply(c.vector()))
    if direction == "inverse":
        return TorusCurve(*g.inverse().apply(c.vector()))
    raise BadParameters(f"direction must be forward or inverse, not {direction!r}")


def killed_curve(g: GluingMatrix, side: str) -> TorusCurve:
    """The torus curve bounding a disc in the given handlebody."""
    if _check_side(side) == H0:
        return TorusCurve(0, 1)
    return image_curve(g, TorusCurve(0, 1))


def core_curve(g: GluingMatrix, side: str) -> TorusCurve:
    """A torus curve isotopic to the core of the given handlebody."""
    if _check_side(side) == H0:
        return TorusCurve(1, 0)
    return image_curve(g, TorusCurve(1, 0))


def model_curve(g: GluingMatrix, side: str, c: TorusCurve) -> TorusCurve:
    """Coordinates of ``c`` in the solid-torus model of the handlebody."""
    if _check_side(side) == H0:
        return c
    a, b = g.inverse().apply(c.vector())
    if g.det == 1:
        b = -b
    return TorusCurve(a, b)


def handlebody_ideal(g: GluingMatrix, side: str) -> Ideal:
    """Kernel ideal of ``K_-1(T^2) -> K_-1(H)`` upstairs in ``Q[x, y, z]``."""
    k = killed_curve(g, side)
    w = core_curve(g, side)
    tw = trace_poly(w)
    gens = [trace_poly(k) + 2,
            tw - trace_poly(w + k),
            tw - trace_poly(TorusCurve(w.a - k.a, w.b - k.b)),
            torus_relation()]
    return Ideal(gens)


# ---------------------------------------------------------------------------
# pushing skeins into a handlebody


@lru_cache(maxsize=4096)
def _push_layers(curves: Tuple[TorusCurve, ...], cores: int) -> SolidTorusElement:
    # Framing curls are left out of the picture and paid for afterwards: each of
    # the b curls of a framed (a, b) layer, a != 0, is worth -t^(-3 sign b) once
    # the drawing is mirrored.  Same value as render(framed=True), much faster.
    layers = [Layer(TorusCurve(1, 0), False)] * cores + [Layer(c, False) for c in curves]
    factor = LaurentPoly(1)
    for c in curves:
        if c.a:
            factor = factor * LaurentPoly.monomial((-1) ** abs(c.b), -3 * c.b)
    return resolve(render(layers)) * factor


def push_word(g: GluingMatrix, side: str, word: SurfaceWord, cores: int = 0) -> SolidTorusElement:
    """Push ``word`` into the handlebody on top of ``cores`` parallel cores.

    Words read from the top of ``T^2 x I`` down.  ``H0`` sits below, so the
    last letter ends up innermost; ``H1`` sits above, so the first does.
    """
    curves = tuple(check_primitive(model_curve(g, side, c)) for c in word)
    if side == H0:
        curves = curves[::-1]
    if not curves:
        return SolidTorusElement.core_power(cores)
    return _push_layers(curves, cores)


def push_action(g: GluingMatrix, side: str, e: SurfaceElement,
                existing: Optional[SolidTorusElement] = None) -> SolidTorusElement:
    """Act by a surface element on a skein of the handlebody."""
    _check_side(side)
    if existing is None:
        existing = SolidTorusElement.one()
    out = SolidTorusElement()
    for word, coeff in e.items():
        for k, ck in existing.items():
            out = out + push_word(g, side, word, k) * (coeff * ck)
    return out


def clear_push_cache() -> None:
    _push_layers.cache_clear()


# ---------------------------------------------------------------------------
# presets


@dataclass(frozen=True)
class SplittingSpec:
    gluing: GluingMatrix
    name: str = "custom"

    @property
    def J(self) -> Ideal:
        return _ideal_cache(self.gluing, H0)

    @property
    def K(self) -> Ideal:
        return _ideal_cache(self.gluing, H1)

    def killed(self, side: str) -> TorusCurve:
        return killed_curve(self.gluing, side)

    def core(self, side: str) -> TorusCurve:
        return core_curve(self.gluing, side)

    def describe(self) -> str:
        return f"{self.name} (gluing {self.gluing})"

    def notes(self):
        out = []
        k = self.killed(H1)
        if abs(k.a) > 2:
            out.append("handlebody ideal for H1 built from the core and killed-curve differences; "
                       "completeness of this generating set is unproven when the killed curve "
                       "winds more than twice")
        return out


@lru_cache(maxsize=64)
def _ideal_cache(g: GluingMatrix, side: str) -> Ideal:
    return handlebody_ideal(g, side)


def lens_matrix(p: int, q: int) -> GluingMatrix:
    """Pinned gluing for ``L(p, q)``: the meridian of ``H1`` goes to ``l^p m^q``.

    ``L(2, 1)`` gives ``(1 2; 1 1)``.  In general the first column is
    ``(c, d)`` with ``q c - p d = -1`` and ``0 <= c < p``, so the determinant
    is ``-1``.
    """
    if p == 0 and q == 1:
        return GluingMatrix(-1, 0, 0, 1)
    if not (0 < q < p) or gcd(p, q) != 1:
        raise BadParameters(f"lens({p},{q}) needs gcd(p,q) = 1 and 0 < q < p", p=p, q=q)
    c = (-pow(q, -1, p)) % p
    d = (q * c + 1) // p
    return GluingMatrix(c, p, d, q)


def preset(name: str) -> SplittingSpec:
    """``lens:p,q`` (or ``lens(p,q)``), ``s1xs2``, ``s3`` or ``identity_double``."""
    key = name.strip().lower().replace(" ", "")
    if key in ("s1xs2", "s1s2"):
        return SplittingSpec(GluingMatrix(-1, 0, 0, 1), "S1xS2")
    if key == "s3":
        return SplittingSpec(GluingMatrix(0, 1, 1, 0), "S3")
    if key == "identity_double":
        return SplittingSpec(IDENTITY, "identity double")
    m = re.fullmatch(r"lens[:(](\d+),(\d+)\)?", key)
    if m:
        p, q = int(m.group(1)), int(m.group(2))
        return SplittingSpec(lens_matrix(p, q), f"L({p},{q})")
    raise BadParameters(f"unknown manifold {name!r}")
