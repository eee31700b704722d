"""Exact rational 3D geometry primitives.

All coordinates are gmpy2.mpq rationals; every predicate in this module is
exact. numpy shows up only inside float prefilters whose misses are caught by
the exact fallback, so verdicts never depend on rounding.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

import gmpy2
import numpy as np

mpq = gmpy2.mpq

Vec3 = tuple  # (mpq, mpq, mpq)

Q0 = mpq(0)
Q1 = mpq(1)


# ---------------------------------------------------------------------------
# scalar helpers


def as_q(x) -> "mpq":
    """Coerce ints, Fractions, strings like '3/4', and mpq to mpq.

    Floats are rejected: callers must rationalize deliberately (see
    rationalize) so precision loss is a visible choice, not an accident.
    """
    if isinstance(x, float):
        raise TypeError("float coordinate; use rationalize() explicitly")
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    return mpq(x)


def q_str(x) -> str:
    """Render an mpq as 'p' or 'p/q' (canonical, lowest terms)."""
    x = mpq(x)
    num, den = x.numerator, x.denominator
    if den == 1:
        return str(num)
    return f"{num}/{den}"


def parse_q(s: str) -> "mpq":
    s = s.strip()
    if "/" in s:
        num, den = s.split("/", 1)
        return mpq(int(num), int(den))
    return mpq(int(s))


def q_floor(x) -> int:
    x = mpq(x)
    return int(x.numerator // x.denominator)


def rationalize(x: float, max_den: int = 10**6) -> "mpq":
    """Round a float to a nearby rational with bounded denominator."""
    f = Fraction(x).limit_denominator(max_den)
    return mpq(f.numerator, f.denominator)


# ---------------------------------------------------------------------------
# vectors


def vec(x, y, z) -> Vec3:
    return (as_q(x), as_q(y), as_q(z))


def v_add(a: Vec3, b: Vec3) -> Vec3:
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2])


def v_sub(a: Vec3, b: Vec3) -> Vec3:
    return (a[0] - b[0], a[1] - b[1], a[2] - b[2])


def v_scale(a: Vec3, s) -> Vec3:
    s = mpq(s)
    return (a[0] * s, a[1] * s, a[2] * s)


def v_dot(a: Vec3, b: Vec3):
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def v_cross(a: Vec3, b: Vec3) -> Vec3:
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def v_norm2(a: Vec3):
    return v_dot(a, a)


# ---------------------------------------------------------------------------
# exact distances


def point_segment_dist2(p: Vec3, a: Vec3, b: Vec3):
    """Exact squared distance from point p to segment [a, b]."""
    d = v_sub(b, a)
    dd = v_norm2(d)
    if dd == 0:
        return v_norm2(v_sub(p, a))
    t = v_dot(v_sub(p, a), d) / dd
    if t <= 0:
        return v_norm2(v_sub(p, a))
    if t >= 1:
        return v_norm2(v_sub(p, b))
    proj = v_add(a, v_scale(d, t))
    return v_norm2(v_sub(p, proj))


def segment_segment_dist2(p1: Vec3, q1: Vec3, p2: Vec3, q2: Vec3):
    """Exact squared distance between segments [p1,q1] and [p2,q2].

    The minimum over the parameter square is attained either at an interior
    critical point of the quadratic or on the boundary; the boundary cases
    reduce to the four point-segment distances.
    """
    best = point_segment_dist2(p1, p2, q2)
    for cand in (
        point_segment_dist2(q1, p2, q2),
        point_segment_dist2(p2, p1, q1),
        point_segment_dist2(q2, p1, q1),
    ):
        if cand < best:
            best = cand

    d1 = v_sub(q1, p1)
    d2 = v_sub(q2, p2)
    r = v_sub(p1, p2)
    a = v_norm2(d1)
    e = v_norm2(d2)
    b = v_dot(d1, d2)
    c = v_dot(d1, r)
    f = v_dot(d2, r)
    den = a * e - b * b
    if den > 0:
        s = (b * f - c * e) / den
        t = (a * f - b * c) / den
        if 0 < s < 1 and 0 < t < 1:
            diff = v_sub(v_add(p1, v_scale(d1, s)), v_add(p2, v_scale(d2, t)))
            cand = v_norm2(diff)
            if cand < best:
                best = cand
    return best


def segments_intersect_2d(p1, q1, p2, q2):
    """Exact 2D segment intersection classifier.

    Returns one of:
      ('none',)                  no intersection
      ('proper', s, t)           transversal interior crossing at parameters
      ('degenerate',)            touching endpoints, collinear overlap, or a
                                 shared-line configuration the caller wants
                                 to avoid
    Points are (mpq, mpq) pairs.
    """
    d1 = (q1[0] - p1[0], q1[1] - p1[1])
    d2 = (q2[0] - p2[0], q2[1] - p2[1])
    denom = d1[0] * d2[1] - d1[1] * d2[0]
    rx, ry = p2[0] - p1[0], p2[1] - p1[1]
    if denom == 0:
        cross = rx * d1[1] - ry * d1[0]
        if cross != 0:
            return ("none",)
        # collinear: overlap iff parameter intervals intersect
        dd = d1[0] * d1[0] + d1[1] * d1[1]
        if dd == 0:
            return ("degenerate",)
        t0 = (rx * d1[0] + ry * d1[1]) / dd
        t1 = t0 + (d2[0] * d1[0] + d2[1] * d1[1]) / dd
        lo, hi = min(t0, t1), max(t0, t1)
        if hi < 0 or lo > 1:
            return ("none",)
        return ("degenerate",)
    s = (rx * d2[1] - ry * d2[0]) / denom
    t = (rx * d1[1] - ry * d1[0]) / denom
    if 0 < s < 1 and 0 < t < 1:
        return ("proper", s, t)
    if 0 <= s <= 1 and 0 <= t <= 1:
        return ("degenerate",)
    return ("none",)


# ---------------------------------------------------------------------------
# polylines


@dataclass(frozen=True)
class Polyline3:
    """Closed rational polyline: vertices without a duplicated endpoint."""

    points: tuple

    def __post_init__(self):
        pts = tuple(tuple(as_q(c) for c in p) for p in self.points)
        if len(pts) < 3:
            raise ValueError("closed polyline needs at least 3 vertices")
        n = len(pts)
        for i in range(n):
            if pts[i] == pts[(i + 1) % n]:
                raise ValueError(f"repeated consecutive vertex at index {i}")
        object.__setattr__(self, "points", pts)

    def __len__(self) -> int:
        return len(self.points)

    def segments(self) -> Iterator[tuple]:
        n = len(self.points)
        for i in range(n):
            yield self.points[i], self.points[(i + 1) % n]

    def segment(self, i: int) -> tuple:
        n = len(self.points)
        return self.points[i % n], self.points[(i + 1) % n]

    def translate(self, off: Vec3) -> "Polyline3":
        return Polyline3(tuple(v_add(p, off) for p in self.points))

    def transform(self, mat, off: Vec3) -> "Polyline3":
        """Apply p -> mat @ p + off with mat a 3x3 of rationals (row tuples)."""
        out = []
        for p in self.points:
            q = tuple(
                mat[r][0] * p[0] + mat[r][1] * p[1] + mat[r][2] * p[2] + off[r]
                for r in range(3)
            )
            out.append(q)
        return Polyline3(tuple(out))

    def bbox(self) -> tuple:
        xs = [p[0] for p in self.points]
        ys = [p[1] for p in self.points]
        zs = [p[2] for p in self.points]
        return (
            (min(xs), min(ys), min(zs)),
            (max(xs), max(ys), max(zs)),
        )

    def to_float_array(self) -> np.ndarray:
        return np.array([[float(c) for c in p] for p in self.points], dtype=float)


def polyline_min_dist2(a: Polyline3, b: Polyline3):
    """Exact minimum squared distance between two closed polylines."""
    best = None
    for p1, q1 in a.segments():
        for p2, q2 in b.segments():
            d = segment_segment_dist2(p1, q1, p2, q2)
            if best is None or d < best:
                best = d
    return best


# ---------------------------------------------------------------------------
# float prefilter for pair pruning

def segment_float_bounds(poly: Polyline3) -> tuple[np.ndarray, np.ndarray]:
    """Per-segment axis-aligned float bounds, outward-rounded.

    Returns (lo, hi) arrays of shape (n, 3). Rounding is one ulp outward on
    each side so the true rational extent is always contained.
    """
    pts = poly.to_float_array()
    nxt = np.roll(pts, -1, axis=0)
    lo = np.minimum(pts, nxt)
    hi = np.maximum(pts, nxt)
    lo = np.nextafter(lo, -np.inf)
    hi = np.nextafter(hi, np.inf)
    return lo, hi


def candidate_pairs(a: Polyline3, b: Polyline3, cutoff: float) -> list[tuple[int, int]]:
    """Segment index pairs whose fattened boxes approach within cutoff.

    Sound over-approximation: any pair realizing a distance < cutoff is
    returned (boxes are outward-rounded and the gap test is conservative).
    """
    lo_a, hi_a = segment_float_bounds(a)
    lo_b, hi_b = segment_float_bounds(b)
    pad = cutoff * (1 + 1e-9) + 1e-12
    out = []
    for i in range(lo_a.shape[0]):
        gap_lo = lo_b - hi_a[i] - pad
        gap_hi = lo_a[i] - hi_b - pad
        sep = np.maximum(gap_lo, gap_hi)
        near = np.all(sep <= 0, axis=1)
        for j in np.nonzero(near)[0]:
            out.append((i, int(j)))
    return out


# ---------------------------------------------------------------------------
# grid traversal


def segment_cells(a: Vec3, b: Vec3, s) -> list[tuple[int, int, int]]:
    """All grid cells of side s that segment [a, b] meets (closed cells).

    Exact: walks parameter values where the segment crosses grid planes.
    Points lying on a shared face are reported in every incident cell.
    """
    s = mpq(s)
    d = v_sub(b, a)
    ts = {Q0, Q1}
    for axis in range(3):
        if d[axis] == 0:
            continue
        lo = min(a[axis], b[axis])
        hi = max(a[axis], b[axis])
        k0 = q_floor(lo / s)
        k1 = q_floor(hi / s) + 1
        for k in range(k0, k1 + 1):
            plane = s * k
            if lo <= plane <= hi:
                t = (plane - a[axis]) / d[axis]
                if Q0 <= t <= Q1:
                    ts.add(t)
    t_sorted = sorted(ts)
    cells = set()
    for t0, t1 in zip(t_sorted, t_sorted[1:]):
        mid = (t0 + t1) / 2
        p = v_add(a, v_scale(d, mid))
        cells.add(tuple(q_floor(c / s) for c in p))
    for t in t_sorted:
        p = v_add(a, v_scale(d, t))
        idx = []
        for c in p:
            q = c / s
            k = q_floor(q)
            on_plane = q == k
            idx.append((k, on_plane))
        # a point on a grid plane belongs to cells on both sides
        choices = [[]]
        for k, on_plane in idx:
            nxt = []
            for pref in choices:
                nxt.append(pref + [k])
                if on_plane:
                    nxt.append(pref + [k - 1])
            choices = nxt
        for c in choices:
            cells.add(tuple(c))
    return sorted(cells)


def polyline_cells(poly: Polyline3, s) -> set:
    out = set()
    for a, b in poly.segments():
        out.update(segment_cells(a, b, s))
    return out
