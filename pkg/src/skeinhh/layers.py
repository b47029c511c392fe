"""Annulus diagrams of torus curves stacked at increasing depth.

The solid torus is ``S^1 x D^2`` with coordinates ``(theta, u, v)``; the
annulus is the ``(theta, u)`` shadow and ``v`` is height above it.  A curve
``(a, b)`` on layer ``i`` lives on the torus of radius ``rho_i`` around the
core, traced as ``theta = a*s + theta_i`` and ``psi = b*s + psi_i`` where
``(u, v) = rho_i (cos psi, sin psi)``.  Later layers sit on larger tori, so
a layer list reads from the inside of the solid torus outwards.

Crossings are found numerically on fine polylines and then discarded in
favour of the combinatorial code; the link type is stable because distinct
layers are separated in space by a fixed margin.  The torus framing of an
``(a, b)`` curve with ``a != 0`` differs from the blackboard framing of its
shadow by ``b`` full twists, so that many curls are inserted unless the
layer is marked unframed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, Iterable, List, Sequence, Tuple

import numpy as np

from .annulus import AnnulusDiagram, add_kink
from .errors import InvalidDiagram
from .surface import TorusCurve, check_primitive

TWO_PI = 2 * math.pi
SEAM = 0.4142135623  # theta of the radial arc that seam weights count

# When True the finished code is mirrored, which makes the (1,1) curve in a
# solid torus evaluate to -t^-3 times the core.  The geometry is computed in
# right-handed (theta, u, v) coordinates, where it would give -t^3 instead.
MIRROR_OUTPUT = True


@dataclass(frozen=True)
class Layer:
    curve: TorusCurve
    framed: bool = True

    def reflected(self) -> "Layer":
        return Layer(TorusCurve(self.curve.a, -self.curve.b), self.framed)


def as_layer(item) -> Layer:
    if isinstance(item, Layer):
        return item
    if isinstance(item, TorusCurve):
        return Layer(item)
    a, b = item
    return Layer(TorusCurve(a, b))


# ---------------------------------------------------------------------------
# sampling


def _layer_params(i: int) -> Tuple[float, float, float]:
    rho = 1.0 + 0.5 * i
    theta0 = (0.37 + 1.13 * i) % TWO_PI
    psi0 = (0.29 + 0.83 * i) % TWO_PI
    return rho, theta0, psi0


def _sample(curve: TorusCurve, i: int) -> np.ndarray:
    """Closed polyline ``(theta_unwrapped, u, v)``; last point omitted."""
    a, b = curve.a, curve.b
    rho, theta0, psi0 = _layer_params(i)
    n = 160 * (abs(a) + abs(b) + 1)
    s = np.linspace(0.0, TWO_PI, n, endpoint=False)
    if a == 0:
        # a meridian, tilted into an ellipse so its shadow is an embedded loop
        theta = theta0 + 0.25 * np.sin(s)
        psi = s
    else:
        theta = theta0 + a * s
        psi = psi0 + b * s
    return np.stack([theta, rho * np.cos(psi), rho * np.sin(psi)], axis=1)


def _segments(points: List[np.ndarray]):
    """Segment table with copies shifted so every copy starts in [0, 2pi)."""
    rows = []
    for ci, p in enumerate(points):
        n = len(p)
        nxt = np.roll(p, -1, axis=0)
        if abs(p[0, 0] - p[-1, 0]) > 1.0:
            # winding curve: the closing segment continues past the last sample
            adv = round((p[-1, 0] - p[0, 0]) * n / (n - 1) / TWO_PI) * TWO_PI
            nxt[-1, 0] += adv
        for k in range(n):
            rows.append((ci, k, p[k], nxt[k]))
    starts = np.array([r[2] for r in rows])
    ends = np.array([r[3] for r in rows])
    shift = np.floor(starts[:, 0] / TWO_PI) * TWO_PI
    starts = starts.copy()
    ends = ends.copy()
    starts[:, 0] -= shift
    ends[:, 0] -= shift
    ids = np.array([(r[0], r[1]) for r in rows])
    # copies for segments that leave the strip [0, 2pi)
    hi = ends[:, 0] >= TWO_PI
    lo = ends[:, 0] < 0
    extra_s = [starts[hi] - [TWO_PI, 0, 0], starts[lo] + [TWO_PI, 0, 0]]
    extra_e = [ends[hi] - [TWO_PI, 0, 0], ends[lo] + [TWO_PI, 0, 0]]
    extra_i = [ids[hi], ids[lo]]
    return (np.concatenate([starts] + extra_s), np.concatenate([ends] + extra_e),
            np.concatenate([ids] + extra_i))


def _intersections(points: List[np.ndarray]):
    """All transverse shadow crossings as ``(theta, (ci, param, v, dir), (cj, ...))``."""
    p0, p1, ids = _segments(points)
    sizes = [len(p) for p in points]
    d = p1 - p0
    lo_t = np.minimum(p0[:, 0], p1[:, 0])
    hi_t = np.maximum(p0[:, 0], p1[:, 0])
    order = np.argsort(lo_t)
    found = []
    # sweep: segments sorted by left end, compare against those overlapping in theta
    lo_sorted = lo_t[order]
    for pos, i in enumerate(order):
        j_end = np.searchsorted(lo_sorted, hi_t[i], side="right")
        cand = order[pos + 1:j_end]
        if len(cand) == 0:
            continue
        ci, ki = ids[i]
        cj, kj = ids[cand, 0], ids[cand, 1]
        same = cj == ci
        n = sizes[ci]
        adjacent = same & ((kj == ki) | (kj == (ki + 1) % n) | (kj == (ki - 1) % n))
        cand = cand[~adjacent]
        if len(cand) == 0:
            continue
        r = d[i, :2]
        s = d[cand, :2]
        qp = p0[cand, :2] - p0[i, :2]
        denom = r[0] * s[:, 1] - r[1] * s[:, 0]
        ok = np.abs(denom) > 1e-15
        with np.errstate(divide="ignore", invalid="ignore"):
            ta = (qp[:, 0] * s[:, 1] - qp[:, 1] * s[:, 0]) / denom
            tb = (qp[:, 0] * r[1] - qp[:, 1] * r[0]) / denom
        hit = ok & (ta >= 0) & (ta < 1) & (tb >= 0) & (tb < 1)
        for idx in np.nonzero(hit)[0]:
            j = cand[idx]
            x = p0[i, 0] + ta[idx] * r[0]
            if not (0 <= x < TWO_PI):
                continue
            va = p0[i, 2] + ta[idx] * d[i, 2]
            vb = p0[j, 2] + tb[idx] * d[j, 2]
            if abs(va - vb) < 1e-6:
                raise InvalidDiagram("layers meet in space; cannot draw them")
            ea = (int(ids[i, 0]), float(ids[i, 1] + ta[idx]), va, r)
            eb = (int(ids[j, 0]), float(ids[j, 1] + tb[idx]), vb, d[j, :2])
            found.append((x, ea, eb))
    return found


def _cross(p, q) -> float:
    return float(p[0] * q[1] - p[1] * q[0])


def _theta_at(p: np.ndarray, param: float) -> float:
    n = len(p)
    k = int(math.floor(param)) % n
    f = param - math.floor(param)
    a = p[k, 0]
    if k + 1 < n:
        b = p[k + 1, 0]
    else:
        b = p[0, 0] + round((p[-1, 0] - p[0, 0]) * n / (n - 1) / TWO_PI) * TWO_PI
    return a + f * (b - a)


# ---------------------------------------------------------------------------
# rendering


def render(layers: Iterable, framed: bool = None) -> AnnulusDiagram:
    """Diagram of the given curves, innermost first.

    Items may be :class:`Layer`, :class:`TorusCurve` or ``(a, b)`` pairs;
    ``framed`` overrides the per-layer flag when given.
    """
    layers = [as_layer(x) for x in layers]
    if framed is not None:
        layers = [Layer(l.curve, framed) for l in layers]
    for l in layers:
        check_primitive(l.curve)
    if not layers:
        return AnnulusDiagram()
    points = [_sample(l.curve, i) for i, l in enumerate(layers)]
    hits = _intersections(points)
    hits.sort(key=lambda h: h[0])

    # events along each curve: (param, crossing index, role)
    events: Dict[int, List[Tuple[float, int, str]]] = {ci: [] for ci in range(len(layers))}
    info = []
    for xi, (_, ea, eb) in enumerate(hits):
        over, under = (ea, eb) if ea[2] > eb[2] else (eb, ea)
        info.append((over, under))
        events[under[0]].append((under[1], xi, "under"))
        events[over[0]].append((over[1], xi, "over"))

    slots: Dict[Tuple[int, str, str], int] = {}  # (crossing, strand, in|out) -> edge
    travel: Dict[int, int] = {}  # edge -> seam weight in travel direction
    start_of: Dict[int, Tuple[int, str]] = {}
    closures = []
    label = 0
    comp_edge: Dict[int, int] = {}
    for ci, evs in events.items():
        p = points[ci]
        a = layers[ci].curve.a
        if not evs:
            closures.append(a)
            continue
        evs.sort()
        for k, (par, xi, role) in enumerate(evs):
            nxt_par, nxt_xi, nxt_role = evs[(k + 1) % len(evs)]
            th0 = _theta_at(p, par)
            th1 = _theta_at(p, nxt_par)
            if k + 1 == len(evs):
                th1 = th1 + TWO_PI * a
            w = math.floor((th1 - SEAM) / TWO_PI) - math.floor((th0 - SEAM) / TWO_PI)
            slots[(xi, role, "out")] = label
            slots[(nxt_xi, nxt_role, "in")] = label
            travel[label] = w
            start_of[label] = (xi, role)
            comp_edge.setdefault(ci, label)
            label += 1

    crossings = []
    out_slot = {}
    for xi, (over, under) in enumerate(info):
        d_under, d_over = under[3], over[3]
        u_in, u_out = slots[(xi, "under", "in")], slots[(xi, "under", "out")]
        o_in, o_out = slots[(xi, "over", "in")], slots[(xi, "over", "out")]
        out_slot[(xi, "under")] = 2
        if _cross(-d_under, d_over) > 0:
            crossings.append((u_in, o_out, u_out, o_in, False))
            out_slot[(xi, "over")] = 1
        else:
            crossings.append((u_in, o_in, u_out, o_out, False))
            out_slot[(xi, "over")] = 3

    # stored seam orientation runs from the first occurrence of each edge
    first: Dict[int, Tuple[int, int]] = {}
    for xi, c in enumerate(crossings):
        for s in range(4):
            first.setdefault(c[s], (xi, s))
    seam = {}
    for e, w in travel.items():
        if not w:
            continue
        xi, role = start_of[e]
        seam[e] = w if first[e] == (xi, out_slot[(xi, role)]) else -w

    diagram = AnnulusDiagram(tuple(crossings), seam, tuple(closures))
    diagram = _add_framing(diagram, layers, comp_edge, events)
    if MIRROR_OUTPUT:
        diagram = diagram.mirror()
    return AnnulusDiagram(diagram.crossings, diagram.seam, diagram.closures, tuple(layers))


def _add_framing(d: AnnulusDiagram, layers: Sequence[Layer], comp_edge, events) -> AnnulusDiagram:
    crossingless = [i for i in range(len(layers)) if not events[i]]
    closures = list(d.closures)
    crossings = list(d.crossings)
    seam = d.seam_map()
    top = max((e for c in crossings for e in c[:4]), default=-1) + 1
    # a crossingless framed curve becomes one curl on a fresh loop
    pending = []
    for i in crossingless:
        l = layers[i]
        twists = l.curve.b if (l.framed and l.curve.a != 0) else 0
        if twists == 0:
            continue
        closures.remove(l.curve.a)
        e0, e1 = top, top + 1
        top += 2
        crossings.append((e0, e1, e1, e0, twists > 0))
        if l.curve.a:
            seam[e0] = l.curve.a
        comp_edge[i] = e0
        pending.append((i, twists - (1 if twists > 0 else -1)))
    d = AnnulusDiagram(tuple(crossings), seam, tuple(closures))
    todo = [(i, layers[i].curve.b if (layers[i].framed and layers[i].curve.a) else 0)
            for i in range(len(layers)) if events[i]] + pending
    for i, twists in todo:
        for _ in range(abs(twists)):
            d = add_kink(d, comp_edge[i], 1 if twists > 0 else -1)
    return d


# ---------------------------------------------------------------------------
# public constructors


def curve_diagram(a: int, b: int) -> AnnulusDiagram:
    """Framed diagram of the torus curve ``(a, b)`` pushed into the solid torus."""
    return render([TorusCurve(a, b)])


def stack(*diagrams: AnnulusDiagram) -> AnnulusDiagram:
    """Place diagrams at increasing radii, later arguments outermost.

    Diagrams drawn from torus curves are redrawn together as one layered
    picture; any other diagram is put in its own band, which is correct
    because it then shares no crossings with the others.
    """
    parts = [d for d in diagrams if d.crossings or d.closures or d.layers]
    if not parts:
        return AnnulusDiagram()
    if len(parts) == 1:
        return parts[0]
    if all(d.layers is not None for d in parts):
        return render([l for d in parts for l in d.layers])
    from .annulus import disjoint_union
    return disjoint_union(*parts)


def delta_diagram() -> AnnulusDiagram:
    """A core and a ``(1,-1)`` curve clasping it, without framing curls."""
    return render([Layer(TorusCurve(1, 0), False), Layer(TorusCurve(1, -1), False)])


def gamma_diagram() -> AnnulusDiagram:
    """Two stacked ``(1,-1)`` curves with their torus framing."""
    return stack(curve_diagram(1, -1), curve_diagram(1, -1))
