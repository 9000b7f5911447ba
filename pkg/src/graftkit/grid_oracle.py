"""Brute-force crossing oracle on the square flat torus.

Independent validation back end for the torus calculus. Curves are drawn
as straight rational lines on the unit square with edge identifications,
crossings are found by solving the line equations per integer translate,
resolutions are performed by explicitly reconnecting arcs at every
crossing and tracing the resulting components. Nothing here consults the
closed-form torus formulas except the final comparisons done by callers.

All coordinates are exact rationals; the solver works on cleared
denominators so the inner loop is pure integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor, gcd
from typing import Iterable, List, Sequence, Tuple

from .errors import DegeneratePosition, NonPrimitive
from .torus import Mode, TorusClass

Point = Tuple[Fraction, Fraction]
Segment = Tuple[Point, Point]

# Offset lattice denominators; primes well above any sweep entry so that
# line coincidences require an unlikely congruence (and are retried away).
_DEN_X = 97
_DEN_Y = 89


@dataclass(frozen=True)
class _CopyLine:
    """One parallel copy: the path t -> offset + t*direction, t in [0,1]."""

    offset: Point
    direction: TorusClass


@dataclass(frozen=True)
class GridCurve:
    """Polygonal representative of copies x class_hint on the torus.

    segments holds the per-copy reduced pieces inside the unit square;
    lines holds the underlying exact line data used by the solver.
    """

    class_hint: TorusClass
    copies: int
    lines: Tuple[_CopyLine, ...]
    segments: Tuple[Tuple[Segment, ...], ...]

    def total_class(self) -> TorusClass:
        return TorusClass(self.copies * self.class_hint.p,
                          self.copies * self.class_hint.q)


@dataclass(frozen=True)
class Crossing:
    point: Point
    first_direction: TorusClass
    second_direction: TorusClass
    index: int
    # Curve-internal addresses: (copy number, parameter along the line).
    first_at: Tuple[int, Fraction]
    second_at: Tuple[int, Fraction]


@dataclass(frozen=True)
class CrossingList:
    crossings: Tuple[Crossing, ...]

    @property
    def geometric(self) -> int:
        return len(self.crossings)

    @property
    def algebraic(self) -> int:
        return sum(c.index for c in self.crossings)


def _offset(role: int, copy: int, attempt: int) -> Point:
    ox = Fraction((1 + 7 * role + 11 * copy + 23 * attempt) % _DEN_X, _DEN_X)
    oy = Fraction((2 + 13 * role + 17 * copy + 29 * attempt) % _DEN_Y, _DEN_Y)
    return (ox, oy)


def _segments_for(line: _CopyLine) -> Tuple[Segment, ...]:
    """Cut one cover line at integer coordinate crossings and reduce each
    piece into the unit square."""
    ox, oy = line.offset
    p, q = line.direction
    breaks = {Fraction(0), Fraction(1)}
    if p != 0:
        lo, hi = sorted((ox, ox + p))
        k = floor(lo)
        while k <= hi + 1:
            t = Fraction(k - ox, p)
            if 0 < t < 1:
                breaks.add(t)
            k += 1
    if q != 0:
        lo, hi = sorted((oy, oy + q))
        k = floor(lo)
        while k <= hi + 1:
            t = Fraction(k - oy, q)
            if 0 < t < 1:
                breaks.add(t)
            k += 1
    ts = sorted(breaks)
    pieces: List[Segment] = []
    for t0, t1 in zip(ts, ts[1:]):
        sx, sy = ox + t0 * p, oy + t0 * q
        ex, ey = ox + t1 * p, oy + t1 * q
        mx, my = (sx + ex) / 2, (sy + ey) / 2
        cx, cy = floor(mx), floor(my)
        pieces.append(((sx - cx, sy - cy), (ex - cx, ey - cy)))
    return tuple(pieces)


def _audit_edge_counts(curve: GridCurve) -> None:
    """Check the drawing against its class: signed crossings of the cover
    line with vertical integer lines total p per copy, horizontal total q."""
    p, q = curve.class_hint
    for line in curve.lines:
        ox, oy = line.offset
        x_hits = sum(1 for k in range(-abs(p) - 1, abs(p) + 2)
                     if 0 < Fraction(k - ox, p) < 1) if p else 0
        y_hits = sum(1 for k in range(-abs(q) - 1, abs(q) + 2)
                     if 0 < Fraction(k - oy, q) < 1) if q else 0
        if x_hits * (1 if p > 0 else -1 if p < 0 else 0) != p:
            raise AssertionError(f"x edge count {x_hits} mismatches {p}")
        if y_hits * (1 if q > 0 else -1 if q < 0 else 0) != q:
            raise AssertionError(f"y edge count {y_hits} mismatches {q}")


def _parallel_coincident(l1: _CopyLine, l2: _CopyLine) -> bool:
    """True when two parallel copies land on the same torus geodesic."""
    p, q = l1.direction
    dx = l2.offset[0] - l1.offset[0]
    dy = l2.offset[1] - l1.offset[1]
    span = abs(p) + abs(q) + 2
    for sx in range(-span, span + 1):
        for sy in range(-span, span + 1):
            if (dx + sx) * q - (dy + sy) * p == 0:
                return True
    return False


def oracle_draw(cls: Sequence[int], copies: int = 1, role: int = 0,
                attempt: int = 0) -> GridCurve:
    """Draw `copies` parallel offset lines of a primitive class.

    role and attempt select the offset family; distinct roles keep two
    curves of one comparison apart, attempts step the deterministic retry.
    """
    p, q = int(cls[0]), int(cls[1])
    if gcd(abs(p), abs(q)) != 1:
        raise NonPrimitive(f"({p},{q}) is not primitive")
    if copies < 1:
        raise ValueError("copies must be positive")
    direction = TorusClass(p, q)
    lines: List[_CopyLine] = []
    for j in range(copies):
        sub = 0
        while True:
            cand = _CopyLine(_offset(role, j + 5 * sub, attempt), direction)
            if all(not _parallel_coincident(cand, other) for other in lines):
                break
            sub += 1
            if sub > 40:
                raise DegeneratePosition("cannot separate parallel copies")
        lines.append(cand)
    curve = GridCurve(direction, copies, tuple(lines),
                      tuple(_segments_for(ln) for ln in lines))
    _audit_edge_counts(curve)
    return curve


def _reverse(curve: GridCurve) -> GridCurve:
    """Orientation reversal; each copy keeps its geodesic."""
    rev = []
    for ln in curve.lines:
        start = (ln.offset[0] + ln.direction.p, ln.offset[1] + ln.direction.q)
        start = (start[0] - floor(start[0]), start[1] - floor(start[1]))
        rev.append(_CopyLine(start, -ln.direction))
    cls = -curve.class_hint
    return GridCurve(cls, curve.copies, tuple(rev),
                     tuple(_segments_for(ln) for ln in rev))


def _copy_crossings(ia: int, la: _CopyLine, ib: int,
                    lb: _CopyLine) -> List[Crossing]:
    """All torus intersection points of two copy lines, exactly.

    Solves t*a - u*b = (oB - oA) + s over integer translates s with
    cleared denominators; only solutions with both parameters in [0,1)
    are real crossings.
    """
    a, b = la.direction, lb.direction
    det = a.p * (-b.q) - (-b.p) * a.q
    dx = lb.offset[0] - la.offset[0]
    dy = lb.offset[1] - la.offset[1]
    if det == 0:
        if _parallel_coincident(la, lb):
            raise DegeneratePosition("parallel curves share a geodesic")
        return []
    R = dx.denominator * dy.denominator // gcd(dx.denominator,
                                               dy.denominator)
    nx, ny = int(dx * R), int(dy * R)
    D = R * det
    index = 1 if a.p * b.q - a.q * b.p > 0 else -1
    out: List[Crossing] = []
    span_x = abs(a.p) + abs(b.p) + 2
    span_y = abs(a.q) + abs(b.q) + 2
    for sx in range(-span_x, span_x + 1):
        rx = nx + R * sx
        for sy in range(-span_y, span_y + 1):
            ry = ny + R * sy
            tn = b.p * ry - b.q * rx
            un = a.p * ry - a.q * rx
            if D > 0:
                ok = 0 <= tn < D and 0 <= un < D
            else:
                ok = D < tn <= 0 and D < un <= 0
            if not ok:
                continue
            t = Fraction(tn, D)
            u = Fraction(un, D)
            px = la.offset[0] + t * a.p
            py = la.offset[1] + t * a.q
            out.append(Crossing((px - floor(px), py - floor(py)),
                                a, b, index, (ia, t), (ib, u)))
    if len(out) != abs(det):
        raise AssertionError(
            f"crossing count {len(out)} differs from |det| {abs(det)}")
    return out


def crossing_list(first: GridCurve, second: GridCurve) -> CrossingList:
    """Every crossing of the two drawn curves, with local data.

    Raises DegeneratePosition on coincident geodesics or when two
    crossings collide along one copy (the arc order would be ambiguous).
    """
    found: List[Crossing] = []
    for ia, la in enumerate(first.lines):
        for ib, lb in enumerate(second.lines):
            found.extend(_copy_crossings(ia, la, ib, lb))
    for side in (0, 1):
        seen = {}
        for c in found:
            addr = c.first_at if side == 0 else c.second_at
            if addr in seen:
                raise DegeneratePosition("coincident crossing parameters")
            seen[addr] = c
    return CrossingList(tuple(found))


def oracle_intersection(first: GridCurve,
                        second: GridCurve) -> Tuple[int, int]:
    """(geometric count, algebraic signed sum) by explicit enumeration."""
    cl = crossing_list(first, second)
    return (cl.geometric, cl.algebraic)


def _trace(first: GridCurve, second: GridCurve,
           crossings: CrossingList) -> List[TorusClass]:
    """Reconnect in-first -> out-second at every crossing and trace.

    Components come back as exact homology classes via cover
    displacements; crossing-free copies pass through unchanged.
    """
    curves = {0: first, 1: second}
    per_copy = {}
    for c in crossings.crossings:
        per_copy.setdefault((0, c.first_at[0]), []).append(
            (c.first_at[1], c))
        per_copy.setdefault((1, c.second_at[0]), []).append(
            (c.second_at[1], c))
    for key in per_copy:
        per_copy[key].sort(key=lambda item: item[0])

    components: List[TorusClass] = []
    for side in (0, 1):
        for j in range(curves[side].copies):
            if (side, j) not in per_copy:
                components.append(curves[side].lines[j].direction)

    # Arc (side, copy, i) runs from crossing i to crossing i+1 (cyclic).
    slot_of = {}
    for (side, j), items in per_copy.items():
        for i, (_, c) in enumerate(items):
            addr = c.first_at if side == 0 else c.second_at
            slot_of[(side, addr)] = (side, j, i)

    successor = {}
    displacement = {}
    for (side, j), items in per_copy.items():
        m = len(items)
        direction = curves[side].lines[j].direction
        for i in range(m):
            t0 = items[i][0]
            t1 = items[(i + 1) % m][0]
            dt = t1 - t0 if i + 1 < m else t1 - t0 + 1
            displacement[(side, j, i)] = (dt * direction.p, dt * direction.q)
    for c in crossings.crossings:
        a_slot = slot_of[(0, c.first_at)]
        b_slot = slot_of[(1, c.second_at)]
        m_a = len(per_copy[(0, a_slot[1])])
        m_b = len(per_copy[(1, b_slot[1])])
        in_a = (0, a_slot[1], (a_slot[2] - 1) % m_a)
        in_b = (1, b_slot[1], (b_slot[2] - 1) % m_b)
        successor[in_a] = b_slot
        successor[in_b] = a_slot

    visited = set()
    for start in sorted(successor):
        if start in visited:
            continue
        dx = Fraction(0)
        dy = Fraction(0)
        arc = start
        while arc not in visited:
            visited.add(arc)
            d = displacement[arc]
            dx += d[0]
            dy += d[1]
            arc = successor[arc]
        if arc != start:
            raise AssertionError("trace closed on a foreign arc")
        if dx.denominator != 1 or dy.denominator != 1:
            raise AssertionError("non-integral component displacement")
        components.append(TorusClass(int(dx), int(dy)))
    return components


def oracle_resolve(first: GridCurve, second: GridCurve,
                   mode: Mode) -> Tuple[TorusClass, ...]:
    """Resolve every crossing in the given mode; component class multiset.

    The mode is realized geometrically: the uniform reconnection that
    preserves arc orientation gives one of the two smoothings, and
    reversing the second curve beforehand gives the other. Which pairing
    carries the SHARP name depends on the sign of the configuration's own
    traced index sum, matching the local orientation frame at each
    crossing; the oracle computes that sign from its crossing list alone.
    """
    d = crossing_list(first, second).algebraic
    if (mode is Mode.SHARP and d < 0) or (mode is Mode.FLAT and d > 0):
        second = _reverse(second)
    crossings = crossing_list(first, second)
    return tuple(sorted(_trace(first, second, crossings)))


def draw_pair(first_cls: Sequence[int], first_copies: int,
              second_cls: Sequence[int], second_copies: int,
              max_attempts: int = 8) -> Tuple[GridCurve, GridCurve]:
    """Draw two curves in verified general position.

    Retries the deterministic offset ladder until the configuration is
    degeneracy-free for both orientations of the second curve.
    """
    last: Exception | None = None
    for attempt in range(max_attempts):
        a = oracle_draw(first_cls, first_copies, role=0, attempt=attempt)
        b = oracle_draw(second_cls, second_copies, role=1, attempt=attempt)
        try:
            crossing_list(a, b)
            crossing_list(a, _reverse(b))
            return a, b
        except DegeneratePosition as exc:
            last = exc
    raise DegeneratePosition(f"no general position found: {last}")
