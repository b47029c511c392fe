"""Kauffman-bracket evaluation of framed link diagrams in the annulus.

A diagram is a planar-diagram code: each crossing lists its four incident
edge labels counterclockwise, plus a flag saying whether the strand through
slots 0 and 2 is the over strand.  Every edge label occurs in exactly two
slots.  Orient an edge from its first occurrence (crossing index, then slot)
to its second; ``seam[e]`` is the signed number of times the edge crosses a
fixed radial arc of the annulus in that direction.  ``closures`` lists the
winding numbers of crossingless components.

The bracket convention is ``X = t·(A-smoothing) + t^-1·(B-smoothing)``
where the A-smoothing joins each under-strand end to the end
counterclockwise after it, and a null-homotopic loop is worth
``-(t^2 + t^-2)``.  A core-parallel loop is the variable ``z``.
"""

from __future__ import annotations

import itertools
import json
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .errors import InvalidDiagram, TooManyCrossings
from .laurent import INFINITY, LaurentPoly, as_laurent, loop_value
from .polyring import MultiPoly

T = LaurentPoly.monomial(1, 1)
T_INV = LaurentPoly.monomial(1, -1)


# ---------------------------------------------------------------------------
# solid torus skein module: polynomials in z


class SolidTorusElement:
    """Polynomial in the core ``z`` with Laurent coefficients."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Optional[Mapping[int, object]] = None):
        c = {}
        for k, v in (coeffs or {}).items():
            v = as_laurent(v)
            if v:
                c[int(k)] = v
        self._c: Dict[int, LaurentPoly] = c

    @classmethod
    def one(cls) -> "SolidTorusElement":
        return cls({0: 1})

    @classmethod
    def core_power(cls, k: int, coeff=1) -> "SolidTorusElement":
        return cls({k: coeff})

    def items(self):
        return sorted(self._c.items())

    def coeff(self, k: int) -> LaurentPoly:
        return self._c.get(k, LaurentPoly())

    def degree(self) -> int:
        return max(self._c, default=-1)

    def __bool__(self):
        return bool(self._c)

    def __add__(self, other):
        out = dict(self._c)
        for k, v in other._c.items():
            out[k] = out.get(k, LaurentPoly()) + v
        return SolidTorusElement(out)

    def __neg__(self):
        return SolidTorusElement({k: -v for k, v in self._c.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, SolidTorusElement):
            out: Dict[int, LaurentPoly] = {}
            for i, a in self._c.items():
                for j, b in other._c.items():
                    out[i + j] = out.get(i + j, LaurentPoly()) + a * b
            return SolidTorusElement(out)
        c = as_laurent(other)
        return SolidTorusElement({k: v * c for k, v in self._c.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, SolidTorusElement):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def mirror(self) -> "SolidTorusElement":
        return SolidTorusElement({k: v.mirror() for k, v in self._c.items()})

    def valuation(self):
        return min((v.one_plus_t_valuation() for v in self._c.values()), default=INFINITY)

    def specialize(self, core: MultiPoly) -> MultiPoly:
        """Evaluate at ``t = -1`` with ``z`` sent to ``core`` (the empty skein goes to 1)."""
        out = MultiPoly(0, core.nvars, core.names)
        for k, v in self._c.items():
            out = out + (core ** k).scale(v.eval_at_minus_one())
        return out

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for k, v in sorted(self._c.items()):
            mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
            cs = str(v)
            if not mono:
                parts.append(cs if len(v.coeffs()) == 1 else f"({cs})")
            elif cs == "1":
                parts.append(mono)
            elif cs == "-1":
                parts.append("-" + mono)
            else:
                parts.append(f"({cs})*{mono}")
        return " + ".join(parts)

    def __repr__(self):
        return f"SolidTorusElement({str(self)!r})"

    def to_json(self):
        return {str(k): str(v) for k, v in sorted(self._c.items())}


def loop_product(windings: Iterable[int]) -> SolidTorusElement:
    cores = 0
    trivial = 0
    for w in windings:
        if w == 0:
            trivial += 1
        elif abs(w) == 1:
            cores += 1
        else:
            raise InvalidDiagram(f"a simple loop in the annulus cannot wind {w} times")
    return SolidTorusElement({cores: loop_value() ** trivial})


# ---------------------------------------------------------------------------
# diagrams

Crossing = Tuple[int, int, int, int, bool]


@dataclass(frozen=True)
class AnnulusDiagram:
    """Blackboard-framed link diagram in the annulus.

    ``layers`` optionally records the torus curves (innermost first) that the
    diagram was drawn from, so stacked curve diagrams can be redrawn together.
    """

    crossings: Tuple[Crossing, ...] = ()
    seam: Tuple[Tuple[int, int], ...] = ()
    closures: Tuple[int, ...] = ()
    layers: Optional[tuple] = field(default=None, compare=False)

    def __post_init__(self):
        cr = tuple((int(a), int(b), int(c), int(d), bool(f)) for a, b, c, d, f in self.crossings)
        object.__setattr__(self, "crossings", cr)
        seam = self.seam.items() if isinstance(self.seam, Mapping) else self.seam
        seam = tuple(sorted((int(e), int(w)) for e, w in seam if w))
        object.__setattr__(self, "seam", seam)
        object.__setattr__(self, "closures", tuple(sorted(int(w) for w in self.closures)))
        _validate(self)

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    def seam_map(self) -> Dict[int, int]:
        return dict(self.seam)

    def edges(self) -> List[int]:
        return sorted({e for c in self.crossings for e in c[:4]})

    def mirror(self) -> "AnnulusDiagram":
        return AnnulusDiagram(tuple(c[:4] + (not c[4],) for c in self.crossings), self.seam,
                              self.closures, _mirror_layers(self.layers))

    def writhe_free_copy(self) -> "AnnulusDiagram":
        return AnnulusDiagram(self.crossings, self.seam, self.closures)

    # -- JSON --------------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "crossings": [list(c[:4]) + ["over_first" if c[4] else "under_first"] for c in self.crossings],
            "seam": {str(e): w for e, w in self.seam},
            "closures": list(self.closures),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, data) -> "AnnulusDiagram":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            crossings = []
            for entry in data.get("crossings", []):
                *edges, flag = entry
                if len(edges) != 4 or flag not in ("over_first", "under_first"):
                    raise InvalidDiagram(f"bad crossing entry {entry!r}")
                crossings.append(tuple(edges) + (flag == "over_first",))
            seam = {int(k): int(v) for k, v in data.get("seam", {}).items()}
            closures = [int(w) for w in data.get("closures", [])]
        except (TypeError, ValueError, AttributeError) as exc:
            raise InvalidDiagram(f"malformed diagram data: {exc}") from exc
        return cls(tuple(crossings), seam, tuple(closures))


def _mirror_layers(layers):
    if layers is None:
        return None
    return tuple(c.reflected() for c in layers)


def _endpoints(crossings: Sequence[Crossing]) -> Dict[int, List[Tuple[int, int]]]:
    ends: Dict[int, List[Tuple[int, int]]] = {}
    for ci, c in enumerate(crossings):
        for s in range(4):
            ends.setdefault(c[s], []).append((ci, s))
    return ends


def _validate(d: AnnulusDiagram) -> None:
    ends = _endpoints(d.crossings)
    for e, where in ends.items():
        if len(where) != 2:
            raise InvalidDiagram(f"edge {e} occurs {len(where)} times; every edge must join two slots",
                                 edge=e)
    for e, _ in d.seam:
        if e not in ends:
            raise InvalidDiagram(f"seam entry for unknown edge {e}", edge=e)
    for w in d.closures:
        if abs(w) > 1:
            raise InvalidDiagram(f"closure with winding {w} is not a simple loop")
    if d.crossings:
        _check_planar(d.crossings, dict(d.seam), ends)


def _check_planar(crossings, seam, ends) -> None:
    """Euler characteristic and face windings of each connected component."""
    other = {}
    for e, ((c1, s1), (c2, s2)) in ends.items():
        w = seam.get(e, 0)
        other[(c1, s1)] = ((c2, s2), w)
        other[(c2, s2)] = ((c1, s1), -w)
    # connected components of the crossing graph
    parent = list(range(len(crossings)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for (c1, _), ((c2, _), _) in other.items():
        parent[find(c1)] = find(c2)
    seen = set()
    faces: Dict[int, List[int]] = {}
    for start in other:
        if start in seen:
            continue
        total = 0
        h = start
        while h not in seen:
            seen.add(h)
            (c, s), w = other[h]
            total += w
            h = (c, (s - 1) % 4)
        faces.setdefault(find(start[0]), []).append(total)
    for comp, windings in faces.items():
        nv = sum(1 for i in range(len(crossings)) if find(i) == comp)
        if len(windings) != nv + 2:
            raise InvalidDiagram("diagram code is not planar (Euler characteristic check failed)")
        nonzero = [w for w in windings if w]
        if any(abs(w) > 1 for w in windings) or len(nonzero) not in (0, 2):
            raise InvalidDiagram("seam data inconsistent with an embedding in the annulus")


# ---------------------------------------------------------------------------
# smoothing


def smoothing_pairs(c: Crossing, kind: str) -> Tuple[Tuple[int, int], Tuple[int, int]]:
    """Slot pairs joined by the ``"A"`` or ``"B"`` smoothing of crossing ``c``."""
    under0 = 1 if c[4] else 0
    a = ((under0, under0 + 1), ((under0 + 2) % 4, (under0 + 3) % 4))
    b = (((under0 - 1) % 4, under0), (under0 + 1, under0 + 2))
    return a if kind == "A" else b


class _State:
    """Mutable working copy of a diagram used by the resolver."""

    __slots__ = ("crossings", "ids", "ends", "weight")

    def __init__(self, crossings, ids, seam):
        self.crossings = [list(c) for c in crossings]
        self.ids = list(ids)
        self.ends = _endpoints(crossings)
        self.weight = {e: seam.get(e, 0) for e in self.ends}


def _smooth(crossings: Sequence[Crossing], ids: Sequence[int], seam: Dict[int, int],
            index: int, pairs) -> Tuple[List[Crossing], List[int], Dict[int, int], List[int]]:
    """Remove crossing ``index`` by the given smoothing.

    Returns the remaining crossings, their ids, the new seam map and the
    windings of loops closed off by the smoothing.
    """
    ends = _endpoints(crossings)
    # walk data: slot -> (edge, far slot, weight walking away from slot)
    along = {}
    for e, (p, q) in ends.items():
        w = seam.get(e, 0)
        along[p] = (e, q, w)
        along[q] = (e, p, -w)
    partner = {}
    for i, j in pairs:
        partner[(index, i)] = (index, j)
        partner[(index, j)] = (index, i)

    used = set()
    new_edges = []  # (start slot, end slot, weight)
    for slot in sorted(along):
        if slot[0] == index:
            continue
        e, far, w = along[slot]
        if e in used or far[0] != index:
            continue
        total = w
        used.add(e)
        cur = far
        while cur[0] == index:
            nxt = partner[cur]
            e2, far2, w2 = along[nxt]
            used.add(e2)
            total += w2
            cur = far2
        new_edges.append((slot, cur, total))
    loops = []
    for s in range(4):
        e, far, w = along[(index, s)]
        if e in used:
            continue
        total = 0
        cur = (index, s)
        while True:
            e, far, w = along[cur]
            if e in used:
                break
            used.add(e)
            total += w
            cur = partner[far]
        loops.append(total)

    relabel = {}
    next_label = max(ends) + 1
    for start, end, _ in new_edges:
        relabel[start] = next_label
        relabel[end] = next_label
        next_label += 1
    out, out_ids = [], []
    new_seam = {}
    for ci, c in enumerate(crossings):
        if ci == index:
            continue
        row = [relabel.get((ci, s), c[s]) for s in range(4)]
        out.append(tuple(row) + (c[4],))
        out_ids.append(ids[ci])
    for e, w in seam.items():
        if e not in used and w:
            new_seam[e] = w
    for start, end, w in new_edges:
        lab = relabel[start]
        if w:
            # orient from first occurrence in the renumbered crossing list
            s_key = _reindexed(start, index)
            e_key = _reindexed(end, index)
            new_seam[lab] = w if s_key <= e_key else -w
    return out, out_ids, new_seam, loops


def _reindexed(slot, removed):
    c, s = slot
    return (c - 1 if c > removed else c, s)


def _canonical(crossings: Sequence[Crossing], seam: Dict[int, int]):
    """Relabel edges by first occurrence; orient seam weights the same way."""
    label = {}
    first = {}
    rows = []
    for ci, c in enumerate(crossings):
        row = []
        for s in range(4):
            e = c[s]
            if e not in label:
                label[e] = len(label)
                first[e] = (ci, s)
            row.append(label[e])
        rows.append(tuple(row) + (c[4],))
    ends = _endpoints(crossings)
    weights = [0] * len(label)
    for e, lab in label.items():
        w = seam.get(e, 0)
        if w:
            # stored orientation is from ends[e][0]; canonical from first occurrence
            weights[lab] = w if ends[e][0] == first[e] else -w
    return tuple(rows), tuple(weights)


_memo: Dict[tuple, SolidTorusElement] = {}
_memo_lock = threading.Lock()


def _resolve_canonical(key) -> SolidTorusElement:
    with _memo_lock:
        hit = _memo.get(key)
    if hit is not None:
        return hit
    rows, weights = key
    if not rows:
        return SolidTorusElement.one()
    seam = {i: w for i, w in enumerate(weights) if w}
    total = SolidTorusElement()
    for kind, coeff in (("A", T), ("B", T_INV)):
        rest, _, new_seam, loops = _smooth(rows, range(len(rows)), seam, 0, smoothing_pairs(rows[0], kind))
        sub = _resolve_canonical(_canonical(rest, new_seam))
        total = total + sub * loop_product(loops) * coeff
    with _memo_lock:
        _memo.setdefault(key, total)
    return total


def _resolve_ordered(crossings, ids, seam, priority) -> SolidTorusElement:
    if not crossings:
        return SolidTorusElement.one()
    index = min(range(len(crossings)), key=lambda i: priority[ids[i]])
    total = SolidTorusElement()
    for kind, coeff in (("A", T), ("B", T_INV)):
        rest, rest_ids, new_seam, loops = _smooth(crossings, ids, seam, index,
                                                  smoothing_pairs(crossings[index], kind))
        sub = _resolve_ordered(rest, rest_ids, new_seam, priority)
        total = total + sub * loop_product(loops) * coeff
    return total


def resolve(d: AnnulusDiagram, order: Optional[Sequence[int]] = None) -> SolidTorusElement:
    """Normal form of ``d`` in the solid-torus skein module.

    Crossings are smoothed one at a time.  With ``order`` (a permutation of
    crossing indices) crossings are taken in that order and nothing is
    memoised; otherwise canonical sub-diagrams are shared through a cache.
    """
    base = loop_product(d.closures)
    if order is None:
        return base * _resolve_canonical(_canonical(d.crossings, d.seam_map()))
    priority = {c: rank for rank, c in enumerate(order)}
    if sorted(priority) != list(range(d.n_crossings)):
        raise ValueError("order must be a permutation of the crossing indices")
    return base * _resolve_ordered(list(d.crossings), list(range(d.n_crossings)), d.seam_map(), priority)


def clear_cache() -> None:
    with _memo_lock:
        _memo.clear()


# ---------------------------------------------------------------------------
# independent oracle: sum over all 2^n states

STATE_SUM_LIMIT = 24


def _state_loops(crossings, seam, choice) -> List[int]:
    ends = _endpoints(crossings)
    link = {}
    for ci, (c, kind) in enumerate(zip(crossings, choice)):
        for i, j in smoothing_pairs(c, kind):
            link[(ci, i)] = (ci, j)
            link[(ci, j)] = (ci, i)
    edge_at = {}
    for e, (p, q) in ends.items():
        edge_at[p] = (e, q, seam.get(e, 0))
        edge_at[q] = (e, p, -seam.get(e, 0))
    seen_edges = set()
    windings = []
    for e, (p, _) in ends.items():
        if e in seen_edges:
            continue
        total = 0
        cur = p
        while True:
            edge, far, w = edge_at[cur]
            if edge in seen_edges:
                break
            seen_edges.add(edge)
            total += w
            cur = link[far]
        windings.append(total)
    return windings


def state_sum(d: AnnulusDiagram) -> SolidTorusElement:
    """Sum over all complete smoothings: ``t^(#A - #B)`` times the loop values."""
    n = d.n_crossings
    if n > STATE_SUM_LIMIT:
        raise TooManyCrossings(f"{n} crossings exceeds the state-sum limit {STATE_SUM_LIMIT}",
                               crossings=n, limit=STATE_SUM_LIMIT)
    seam = d.seam_map()
    by_loops: Dict[Tuple[int, int], Dict[int, int]] = {}
    for choice in itertools.product("AB", repeat=n):
        windings = list(_state_loops(d.crossings, seam, choice)) + list(d.closures)
        cores = sum(1 for w in windings if w)
        if any(abs(w) > 1 for w in windings):
            raise InvalidDiagram("state with a non-simple loop; diagram is not planar")
        trivial = len(windings) - cores
        exp = choice.count("A") - choice.count("B")
        bucket = by_loops.setdefault((cores, trivial), {})
        bucket[exp] = bucket.get(exp, 0) + 1
    out = SolidTorusElement()
    u = loop_value()
    for (cores, trivial), exps in by_loops.items():
        out = out + SolidTorusElement({cores: LaurentPoly(exps) * u ** trivial})
    return out


# ---------------------------------------------------------------------------
# small constructors


def null_loop() -> AnnulusDiagram:
    return AnnulusDiagram(closures=(0,))


def core_loop(k: int = 1) -> AnnulusDiagram:
    return AnnulusDiagram(closures=(1,) * k)


def kinked_core(sign: int = 1) -> AnnulusDiagram:
    """Core loop with one curl; ``sign=+1`` is the curl worth ``-t^3``."""
    # edge 0 runs around the annulus, edge 1 is the curl
    return AnnulusDiagram(((0, 1, 1, 0, sign > 0),), {0: 1})


def add_kink(d: AnnulusDiagram, edge: int, sign: int = 1) -> AnnulusDiagram:
    """Insert a curl into ``edge`` (its first-occurrence end keeps the old label)."""
    ends = _endpoints(d.crossings)
    if edge not in ends:
        raise InvalidDiagram(f"no edge {edge}")
    new_c = len(d.crossings)
    top = max(ends) + 1
    loop, tail = top, top + 1
    (c2, s2) = ends[edge][1]
    crossings = [list(c) for c in d.crossings]
    crossings[c2][s2] = tail
    # old edge enters slot 0, curl joins slots 1 and 2, slot 3 leaves on the tail edge
    crossings.append([edge, loop, loop, tail, sign > 0])
    seam = d.seam_map()
    w = seam.pop(edge, 0)
    if w:
        seam[tail] = -w  # stored from its far end
    return AnnulusDiagram(tuple(tuple(c) for c in crossings), seam, d.closures)


def disjoint_union(*diagrams: AnnulusDiagram) -> AnnulusDiagram:
    """Diagrams placed in disjoint concentric bands (no crossings between them)."""
    crossings = []
    seam = {}
    closures = []
    offset = 0
    for d in diagrams:
        edges = d.edges()
        shift = offset - (min(edges) if edges else 0)
        for c in d.crossings:
            crossings.append(tuple(e + shift for e in c[:4]) + (c[4],))
        for e, w in d.seam:
            seam[e + shift] = w
        closures.extend(d.closures)
        offset += (max(edges) - min(edges) + 1) if edges else 0
    return AnnulusDiagram(tuple(crossings), seam, tuple(closures))
