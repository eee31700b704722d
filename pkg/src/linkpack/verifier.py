"""Certified checks on packed layouts: linking data, clearances, tilings.

Everything here works on exact rational coordinates.  Numerical (float)
work only ever *discards* candidate pairs through outward-rounded
bounding boxes; every reported quantity is confirmed with exact
arithmetic, so verdicts never depend on rounding.
"""

from __future__ import annotations

import dataclasses
import hashlib
import json
import math
import os
from dataclasses import dataclass, field

import numpy as np
from gmpy2 import mpq

from .geometry import (
    Polyline3,
    Q0,
    Q1,
    as_q,
    candidate_pairs,
    q_floor,
    q_str,
    segment_segment_dist2,
    segments_intersect_2d,
    v_cross,
    v_dot,
    v_norm2,
    v_sub,
)
from .invariants import linking_matrix


class VerifyError(ValueError):
    """A verification routine could not complete or found an inconsistency."""


class IntersectionError(VerifyError):
    """Two curves (or two arcs of one curve) actually touch in space."""


class _DegenerateProjection(Exception):
    """Current tilt produced a non-generic planar picture; try another."""


class _NonTransverse(Exception):
    """Curve touches the tile grid non-generically; shift the origin."""


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of one check: verdict, witnesses for failures, extras."""

    name: str
    passed: bool
    witnesses: tuple = ()
    data: dict = field(default_factory=dict)

    def to_json_obj(self):
        return {
            "name": self.name,
            "passed": self.passed,
            "witnesses": list(self.witnesses),
            "data": self.data,
        }


# ---------------------------------------------------------------------------
# minimum distance


def _assert_polyline(p, tag):
    if not isinstance(p, Polyline3):
        raise TypeError(f"{tag} must be a Polyline3")
    for a, b in p.segments():
        if a == b:
            raise VerifyError("degenerate zero-length segment")


def _min_distance_brute(a, b, want_witness=False):
    best = None
    arg = None
    sa = list(a.segments())
    sb = list(b.segments())
    for i, (p1, q1) in enumerate(sa):
        for j, (p2, q2) in enumerate(sb):
            d = segment_segment_dist2(p1, q1, p2, q2)
            if best is None or d < best:
                best, arg = d, (i, j)
    return (best, arg) if want_witness else best


def _float_boxes(poly, pad):
    arr = poly.to_float_array()
    nxt = np.roll(arr, -1, axis=0)
    lo = np.minimum(arr, nxt) - pad
    hi = np.maximum(arr, nxt) + pad
    return lo, hi


def _bucket_candidates(a, b, cutoff):
    """Segment pairs whose padded boxes share a grid bucket.

    Sound for any pair at true distance <= cutoff: both boxes are fattened
    by cutoff/2 with identical float rounding on insert and query, so such
    a pair always lands in a common bucket.
    """
    pad = 0.5 * cutoff * (1 + 1e-9) + 1e-12
    lo_a, hi_a = _float_boxes(a, pad)
    lo_b, hi_b = _float_boxes(b, pad)
    spans = np.concatenate([hi_a - lo_a, hi_b - lo_b])
    h = max(float(spans.max()), cutoff, 1e-9)
    table = {}
    for j in range(lo_b.shape[0]):
        c0 = np.floor(lo_b[j] / h).astype(int)
        c1 = np.floor(hi_b[j] / h).astype(int)
        for cx in range(c0[0], c1[0] + 1):
            for cy in range(c0[1], c1[1] + 1):
                for cz in range(c0[2], c1[2] + 1):
                    table.setdefault((cx, cy, cz), []).append(j)
    out = set()
    for i in range(lo_a.shape[0]):
        c0 = np.floor(lo_a[i] / h).astype(int)
        c1 = np.floor(hi_a[i] / h).astype(int)
        for cx in range(c0[0], c1[0] + 1):
            for cy in range(c0[1], c1[1] + 1):
                for cz in range(c0[2], c1[2] + 1):
                    for j in table.get((cx, cy, cz), ()):
                        out.add((i, j))
    return sorted(out)


def _min_distance_core(a, b, want_witness):
    _assert_polyline(a, "A")
    _assert_polyline(b, "B")
    pa = a.to_float_array()
    pb = b.to_float_array()
    diff = pa[:, None, :] - pb[None, :, :]
    vv = np.einsum("ijk,ijk->ij", diff, diff)
    i0, j0 = np.unravel_index(int(vv.argmin()), vv.shape)
    s1 = a.segment(int(i0))
    s2 = b.segment(int(j0))
    best = segment_segment_dist2(s1[0], s1[1], s2[0], s2[1])
    arg = (int(i0), int(j0))
    if best == 0:
        return (mpq(0), arg) if want_witness else mpq(0)
    cutoff = math.sqrt(float(best)) * (1 + 1e-9) + 1e-300
    sa = list(a.segments())
    sb = list(b.segments())
    for i, j in _bucket_candidates(a, b, cutoff):
        d = segment_segment_dist2(sa[i][0], sa[i][1], sb[j][0], sb[j][1])
        if d < best:
            best, arg = d, (i, j)
    return (best, arg) if want_witness else best


def min_distance(a, b, accelerated=True):
    """Exact squared minimum distance between two closed polylines."""
    if not accelerated:
        return _min_distance_brute(a, b)
    return _min_distance_core(a, b, want_witness=False)


def min_distance_witness(a, b):
    """(squared distance, segment index in A, segment index in B)."""
    d, (i, j) = _min_distance_core(a, b, want_witness=True)
    return d, i, j


# ---------------------------------------------------------------------------
# separation and thickness


def check_separation(layout, jobs=None):
    """Distinct components of each copy must stay epsilon apart.

    Copies are allowed to approach each other arbitrarily; the bound only
    binds pairs of components within one copy.
    """
    eps2 = as_q(layout.epsilon) ** 2
    work = []
    for w in range(layout.copies):
        comps = sorted(c for (u, c) in layout.curves if u == w)
        for i, c1 in enumerate(comps):
            for c2 in comps[i + 1 :]:
                work.append((w, c1, c2))

    def one(item):
        w, c1, c2 = item
        d2, i, j = min_distance_witness(layout.curve(w, c1), layout.curve(w, c2))
        return item, d2, (i, j)

    results = _run_jobs(one, work, jobs)
    witnesses = []
    closest = None
    for (w, c1, c2), d2, (i, j) in results:
        if closest is None or d2 < closest:
            closest = d2
        if d2 < eps2:
            witnesses.append(
                {
                    "copy": w,
                    "components": [c1, c2],
                    "segments": [i, j],
                    "dist2": q_str(d2),
                }
            )
    data = {"epsilon": q_str(layout.epsilon), "pairs": len(work)}
    if closest is not None:
        data["min_dist2"] = q_str(closest)
    return VerificationReport("separation", not witnesses, tuple(witnesses), data)


def _vertex_legs_ok(L2, D, X, eps):
    """Exact test of leg_length >= (eps/2) * tan(theta/2).

    With u, v the incident edge vectors, D = u.v and X = |u x v|^2, the
    inequality L*(sqrt(D^2+X) + D) >= (eps/2)*sqrt(X) is squared into the
    rational comparison 2*L2*D*W >= R with W = sqrt(D^2+X) and
    R = eps^2*X/4 - L2*(2*D^2 + X), split by signs so no radicals remain.
    """
    R = eps * eps * X / 4 - L2 * (2 * D * D + X)
    lhs2 = 4 * L2 * L2 * D * D * (D * D + X)
    if D >= 0:
        return R <= 0 or lhs2 >= R * R
    return R <= 0 and lhs2 <= R * R


def check_thickness(poly, eps):
    """Discrete thickness surrogate for one closed polyline.

    (a) any two segments that do not share a vertex and are not a pair of
        nearly parallel same-direction neighbors must keep squared distance
        >= eps^2 (hairpins, perpendicular near-passes, and genuine
        self-approaches all fail; a finely sampled convex arc, whose
        consecutive-but-one segments are closer than eps yet carry almost
        equal directions, passes);
    (b) at each vertex with exterior turning angle theta, both incident
        segment lengths must reach (eps/2)*tan(theta/2), so the radius
        eps/2 tube stays locally embedded through the corner.
    """
    _assert_polyline(poly, "P")
    eps = as_q(eps)
    if eps <= 0:
        raise VerifyError("eps must be positive")
    n = len(poly)
    eps2 = eps * eps
    witnesses = []

    cutoff = math.sqrt(float(eps2)) * (1 + 1e-9) + 1e-12
    segs = list(poly.segments())
    for i, j in candidate_pairs(poly, poly, cutoff):
        if j <= i:
            continue
        if (j - i) % n < 2 or (i - j) % n < 2:
            continue
        d2 = segment_segment_dist2(segs[i][0], segs[i][1], segs[j][0], segs[j][1])
        if d2 >= eps2:
            continue
        di = v_sub(segs[i][1], segs[i][0])
        dj = v_sub(segs[j][1], segs[j][0])
        if v_dot(di, dj) > 0:
            continue
        witnesses.append(
            {"kind": "segment-pair", "segments": [i, j], "dist2": q_str(d2)}
        )

    for i in range(n):
        u = v_sub(poly.points[i], poly.points[(i - 1) % n])
        v = v_sub(poly.points[(i + 1) % n], poly.points[i])
        D = v_dot(u, v)
        X = v_norm2(v_cross(u, v))
        if X == 0:
            if D < 0:
                witnesses.append({"kind": "vertex-angle", "vertex": i, "cusp": True})
            continue
        if not (
            _vertex_legs_ok(v_norm2(u), D, X, eps)
            and _vertex_legs_ok(v_norm2(v), D, X, eps)
        ):
            witnesses.append({"kind": "vertex-angle", "vertex": i})
    return VerificationReport(
        "thickness", not witnesses, tuple(witnesses), {"epsilon": q_str(eps)}
    )


def check_layout_thickness(layout, jobs=None):
    """check_thickness over every curve of a packing, merged into one report."""
    keys = sorted(layout.curves)

    def one(key):
        return key, check_thickness(layout.curves[key], layout.epsilon)

    results = _run_jobs(one, keys, jobs)
    witnesses = []
    for (w, comp), rep in results:
        for item in rep.witnesses:
            witnesses.append({"copy": w, "component": comp, **item})
    data = {"epsilon": q_str(layout.epsilon), "curves": len(keys)}
    return VerificationReport("thickness", not witnesses, tuple(witnesses), data)


# ---------------------------------------------------------------------------
# linking numbers


def _tilt_schedule(limit=48):
    yield mpq(0), mpq(0)
    for k in range(limit):
        yield mpq(1, 100 + 7 * k), mpq(1, 103 + 11 * k)


def _project_points(points, p, q):
    return [(x - p * z, y - q * z) for x, y, z in points]


def _float_seg_boxes(poly, p, q, pad):
    arr = poly.to_float_array()
    px = arr[:, 0] - p * arr[:, 2]
    py = arr[:, 1] - q * arr[:, 2]
    qx = np.roll(px, -1)
    qy = np.roll(py, -1)
    lo_x = np.minimum(px, qx) - pad
    hi_x = np.maximum(px, qx) + pad
    lo_y = np.minimum(py, qy) - pad
    hi_y = np.maximum(py, qy) + pad
    return lo_x, hi_x, lo_y, hi_y


def _candidate_mask(a, b, p, q):
    scale = 1.0 + max(
        float(np.abs(a.to_float_array()).max()), float(np.abs(b.to_float_array()).max())
    )
    pad = 1e-9 * scale
    fa = _float_seg_boxes(a, float(p), float(q), pad)
    fb = _float_seg_boxes(b, float(p), float(q), pad)
    ox = (fa[0][:, None] <= fb[1][None, :]) & (fb[0][None, :] <= fa[1][:, None])
    oy = (fa[2][:, None] <= fb[3][None, :]) & (fb[2][None, :] <= fa[3][:, None])
    return ox & oy


def _signed_crossings(a, b, p, q):
    """All transversal crossings of the projected curves, with z order.

    Returns (sum of signs with a over, sum with b over).  Raises
    _DegenerateProjection for any tangency, collinearity, or shared
    endpoint in the projection, and IntersectionError if the two space
    curves genuinely meet.
    """
    pa = _project_points(a.points, p, q)
    pb = _project_points(b.points, p, q)
    na, nb = len(pa), len(pb)
    mask = _candidate_mask(a, b, p, q)
    rows, cols = np.nonzero(mask)
    sum_a_over = 0
    sum_b_over = 0
    for i, j in zip(rows.tolist(), cols.tolist()):
        a0, a1 = pa[i], pa[(i + 1) % na]
        b0, b1 = pb[j], pb[(j + 1) % nb]
        hit = segments_intersect_2d(a0, a1, b0, b1)
        if hit[0] == "none":
            continue
        if hit[0] == "degenerate":
            raise _DegenerateProjection
        _, s, t = hit
        az0 = a.points[i][2]
        az1 = a.points[(i + 1) % na][2]
        bz0 = b.points[j][2]
        bz1 = b.points[(j + 1) % nb][2]
        za = az0 + s * (az1 - az0)
        zb = bz0 + t * (bz1 - bz0)
        if za == zb:
            raise IntersectionError(
                "curves meet at projected parameter "
                f"({q_str(s)}, {q_str(t)}) of segments {i}, {j}"
            )
        da = (a1[0] - a0[0], a1[1] - a0[1])
        db = (b1[0] - b0[0], b1[1] - b0[1])
        if za > zb:
            det = da[0] * db[1] - da[1] * db[0]
            if det > 0:
                sum_a_over += 1
            else:
                sum_a_over -= 1
        else:
            det = db[0] * da[1] - db[1] * da[0]
            if det > 0:
                sum_b_over += 1
            else:
                sum_b_over -= 1
    return sum_a_over, sum_b_over


def linking_number(a, b, tilt_limit=48, first_tilt=0):
    """Exact linking number of two disjoint closed rational polylines.

    Computed as the half-sum of crossing signs of a generic projection,
    which equals the sum over crossings where either fixed curve passes
    over; both sums are taken and must agree.  ``first_tilt`` skips ahead
    in the deterministic tilt schedule, for direction-independence tests.
    Raises IntersectionError when the curves meet in space.
    """
    if not isinstance(a, Polyline3) or not isinstance(b, Polyline3):
        raise TypeError("linking_number expects Polyline3 inputs")
    for idx, (p, q) in enumerate(_tilt_schedule(tilt_limit)):
        if idx < first_tilt:
            continue
        try:
            over_a, over_b = _signed_crossings(a, b, p, q)
        except _DegenerateProjection:
            continue
        if over_a != over_b:
            raise VerifyError(
                f"crossing bookkeeping out of balance: {over_a} vs {over_b}"
            )
        return over_a
    # curves meeting at a vertex or along a segment degenerate every
    # projection, so distinguish that from schedule bad luck exactly
    d2, si, sj = min_distance_witness(a, b)
    if d2 == 0:
        raise IntersectionError(f"curves meet at segments {si} and {sj}")
    raise VerifyError("no generic projection found in the tilt schedule")


def _pairs(keys):
    ks = sorted(keys)
    for i, u in enumerate(ks):
        for v in ks[i + 1 :]:
            yield u, v


def _run_jobs(fn, work, jobs):
    if jobs is None:
        jobs = int(os.environ.get("LINKPACK_JOBS", "1"))
    if jobs > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=jobs) as ex:
            return list(ex.map(fn, work))
    return [fn(item) for item in work]


def layout_linking(layout, jobs=None):
    """Pairwise linking numbers of every pair of curves in a packing.

    Returns {((copy, comp), (copy, comp)): lk} with keys sorted.  Work is
    spread over threads when ``jobs`` (or LINKPACK_JOBS) asks for it;
    results are merged back in key order either way.
    """

    def one(pair):
        u, v = pair
        return pair, linking_number(layout.curves[u], layout.curves[v])

    return dict(_run_jobs(one, list(_pairs(layout.curves)), jobs))


def check_topology(layout, pd=None, jobs=None):
    """Within-copy linking must match the diagram, across copies vanish.

    The within-copy matrices are compared against linking_matrix(pd) up to
    one global sign shared by the whole layout (a mirror-image convention
    flip is not an error; a single flipped pair is).
    """
    pd = layout.pd if pd is None else pd
    base = linking_matrix(pd)
    measured = layout_linking(layout, jobs=jobs)

    def mismatches(sign):
        out = []
        for ((wa, ca), (wb, cb)), lk in sorted(measured.items()):
            want = sign * base[ca - 1][cb - 1] if wa == wb else 0
            if lk != want:
                out.append(
                    {
                        "pair": [[wa, ca], [wb, cb]],
                        "linking": lk,
                        "expected": want,
                    }
                )
        return out

    plus = mismatches(1)
    minus = mismatches(-1)
    sign, witnesses = (1, plus) if len(plus) <= len(minus) else (-1, minus)
    data = {
        "copies": layout.copies,
        "pairs": len(measured),
        "global_sign": sign,
    }
    return VerificationReport("topology", not witnesses, tuple(witnesses), data)


# ---------------------------------------------------------------------------
# tilings, colorings, face sequences


@dataclass(frozen=True)
class TileGrid:
    """Axis-aligned cubical tiling at sidelength s, offset by origin."""

    s: object
    origin: tuple
    attempt: int = 0

    def cell_of(self, p):
        return tuple(q_floor((c - o) / self.s) for c, o in zip(p, self.origin))


@dataclass(frozen=True)
class FaceSequence:
    """Cyclic sequence of oriented grid 2-faces crossed by one curve.

    ``faces`` is rotated to its lexicographically least form so two
    parametrizations of the same curve compare equal.  ``collisions``
    lists tiles met by more than one arc of the curve, and is None when
    the single-visit property was not checked (curve too kinked for the
    coarse-grid thickness gate).
    """

    faces: tuple
    collisions: tuple | None = None


def _walk_curve(poly, s, origin):
    """Cells and oriented face crossings of one curve, exactly.

    Raises _NonTransverse when a vertex lies on a grid plane, a segment
    runs inside one, or a segment crosses an edge or corner of the grid.
    """
    s = as_q(s)
    pts = poly.points
    n = len(pts)
    u = [tuple((c - o) / s for c, o in zip(p, origin)) for p in pts]
    for coords in u:
        for c in coords:
            if c == q_floor(c):
                raise _NonTransverse("vertex on grid plane")
    cell = tuple(q_floor(c) for c in u[0])
    start = cell
    cells = [cell]
    faces = []
    for i in range(n):
        ua, ub = u[i], u[(i + 1) % n]
        events = []
        for axis in range(3):
            d = ub[axis] - ua[axis]
            if d == 0:
                continue
            lo, hi = (ua[axis], ub[axis]) if d > 0 else (ub[axis], ua[axis])
            m0 = q_floor(lo) + 1
            m1 = q_floor(hi)
            step = 1 if d > 0 else -1
            ms = range(m0, m1 + 1) if d > 0 else range(m1, m0 - 1, -1)
            for m in ms:
                t = (m - ua[axis]) / d
                events.append((t, axis, step, m))
        events.sort(key=lambda e: e[0])
        for k in range(1, len(events)):
            if events[k][0] == events[k - 1][0]:
                raise _NonTransverse("segment crosses a grid edge or corner")
        for _t, axis, step, m in events:
            rest = [cell[ax] for ax in range(3) if ax != axis]
            faces.append((axis, m, rest[0], rest[1], step))
            nxt = list(cell)
            nxt[axis] += step
            cell = tuple(nxt)
            cells.append(cell)
    if cell != start:
        raise VerifyError("grid walk did not close up")
    if len(cells) == 1:
        return cells, faces  # the whole curve sits inside one tile
    return cells[:-1], faces


def fit_grid(polys, s, max_attempts=64):
    """First origin in the deterministic shift schedule transverse to all.

    Attempt k shifts the grid by s/(2k+1), scaled per axis by 1, 2, 3 so
    that diagonal segments (where two coordinates move in lockstep and an
    equal shift would cancel out of their difference) still become
    transverse.  Attempt 0 is the unshifted lattice.
    """
    s = as_q(s)
    if s <= 0:
        raise VerifyError("tile sidelength must be positive")
    for k in range(max_attempts):
        origin = tuple(s * (axis + 1) / (2 * k + 1) for axis in range(3))
        try:
            for poly in polys:
                _walk_curve(poly, s, origin)
        except _NonTransverse:
            continue
        return TileGrid(s=s, origin=origin, attempt=k)
    raise VerifyError(f"no transverse grid origin in {max_attempts} attempts")


def tiling_coloring(layout, s=None, max_attempts=64):
    """Per-copy map tile -> component over a common transverse grid.

    Defaults to sidelength epsilon/2.  Raises VerifyError if two
    components of one copy meet the same tile: the scale is too coarse
    for this layout and no colored tiling exists at it.
    """
    s = as_q(layout.epsilon) / 2 if s is None else as_q(s)
    keys = sorted(layout.curves)
    grid = fit_grid([layout.curves[k] for k in keys], s, max_attempts)
    colorings = {}
    for w, comp in keys:
        cells, _faces = _walk_curve(layout.curves[(w, comp)], grid.s, grid.origin)
        coloring = colorings.setdefault(w, {})
        for cell in cells:
            prev = coloring.get(cell)
            if prev is not None and prev != comp:
                raise VerifyError(
                    f"components {prev} and {comp} of copy {w} share tile "
                    f"{cell} at sidelength {q_str(grid.s)}"
                )
            coloring[cell] = comp
    return grid, colorings


def _coloring_digest(coloring):
    blob = repr(sorted(coloring.items())).encode()
    return hashlib.sha1(blob).hexdigest()[:16]


def coloring_injectivity(colorings, num_components):
    """Pairwise-distinct colorings, with a census of what each copy uses."""
    keys = sorted(colorings)
    canon = {w: tuple(sorted(colorings[w].items())) for w in keys}
    seen = {}
    witnesses = []
    for w in keys:
        if canon[w] in seen:
            witnesses.append({"copies": [seen[canon[w]], w], "kind": "duplicate"})
        else:
            seen[canon[w]] = w
    occupied = set()
    for w in keys:
        occupied.update(colorings[w])
    distinct = len(seen)
    colors = num_components + 1
    if len(occupied) >= 64:
        bound_ok = True
    else:
        bound_ok = distinct <= colors ** len(occupied)
    census = [
        {
            "copy": w,
            "occupied": len(colorings[w]),
            "digest": _coloring_digest(colorings[w]),
        }
        for w in keys
    ]
    data = {
        "distinct": distinct,
        "copies": len(keys),
        "occupied_union": len(occupied),
        "bound_ok": bound_ok,
        "census": census,
    }
    passed = not witnesses and bound_ok
    return VerificationReport("coloring-injectivity", passed, tuple(witnesses), data)


def face_sequence(poly, grid):
    """Canonical cyclic sequence of oriented 2-faces crossed by the curve.

    The single-visit property (each tile met by one arc) is only examined
    when the curve passes the thickness check at ten times the tile
    sidelength; collisions are reported, never asserted away.
    """
    cells, faces = _walk_curve(poly, grid.s, grid.origin)
    runs = []
    for cell in cells:
        if not runs or runs[-1] != cell:
            runs.append(cell)
    if len(runs) > 1 and runs[0] == runs[-1]:
        runs.pop()
    collisions = None
    if check_thickness(poly, as_q(grid.s) * 10).passed:
        seen = set()
        dup = set()
        for cell in runs:
            if cell in seen:
                dup.add(cell)
            seen.add(cell)
        collisions = tuple(sorted(dup))
    faces = tuple(faces)
    if faces:
        best = min(range(len(faces)), key=lambda i: faces[i:] + faces[:i])
        faces = faces[best:] + faces[:best]
    return FaceSequence(faces=faces, collisions=collisions)


# ---------------------------------------------------------------------------
# corruption harnesses


def corrupt_label_swap(layout, comp=None, copies=(0, 1)):
    """Swap one component's curves between two copies, keeping labels."""
    if layout.copies < 2:
        raise ValueError("need at least two copies to swap")
    a, b = copies
    if comp is None:
        comp = min(c for (_w, c) in layout.curves)
    curves = dict(layout.curves)
    curves[(a, comp)], curves[(b, comp)] = curves[(b, comp)], curves[(a, comp)]
    return dataclasses.replace(layout, curves=curves)


def corrupt_duplicate_copy(layout, src=0, dst=1):
    """Overwrite one copy's curves with another's, byte for byte."""
    if layout.copies < 2:
        raise ValueError("need at least two copies to duplicate")
    curves = dict(layout.curves)
    for (w, comp) in list(curves):
        if w == dst:
            curves[(w, comp)] = curves[(src, comp)]
    return dataclasses.replace(layout, curves=curves)


# ---------------------------------------------------------------------------
# experiments


def separation_ratio_experiment(n_list, samples=96, window=3):
    """Pairwise fiber separation against the inverse-square-root law.

    For each n the great-circle fiber family is built, the least pairwise
    strand distance sigma(n) is measured exactly, and sigma(n)*sqrt(n) is
    compared against the first entry's value: the experiment passes when
    every ratio stays within a factor ``window`` of that baseline.
    """
    from .constructor import hopf_fiber_embedding

    rows = []
    for n in n_list:
        curves = hopf_fiber_embedding(n, samples=samples)
        keys = sorted(curves)
        best = None
        for i, u in enumerate(keys):
            for v in keys[i + 1 :]:
                d2 = min_distance(curves[u], curves[v])
                if best is None or d2 < best:
                    best = d2
        sigma = math.sqrt(float(best))
        rows.append({"n": n, "sigma": sigma, "ratio": sigma * math.sqrt(n)})
    baseline = rows[0]["ratio"]
    witnesses = []
    for row in rows:
        if not (baseline / window <= row["ratio"] <= baseline * window):
            witnesses.append(dict(row))
    data = {"baseline": baseline, "window": window, "rows": rows}
    return VerificationReport(
        "separation-ratio", not witnesses, tuple(witnesses), data
    )


# ---------------------------------------------------------------------------
# top level


def verify_layout(layout, jobs=None, s=None):
    """Run the full check battery; returns {check name: report}."""
    reports = {}
    reports["separation"] = check_separation(layout, jobs=jobs)
    reports["thickness"] = check_layout_thickness(layout, jobs=jobs)
    reports["topology"] = check_topology(layout, jobs=jobs)
    try:
        _grid, colorings = tiling_coloring(layout, s=s)
        reports["coloring-injectivity"] = coloring_injectivity(
            colorings, layout.pd.num_components
        )
    except VerifyError as exc:
        reports["coloring-injectivity"] = VerificationReport(
            "coloring-injectivity", False, ({"error": str(exc)},), {}
        )
    return reports


def report_json(reports):
    obj = {
        "passed": all(rep.passed for rep in reports.values()),
        "checks": [rep.to_json_obj() for rep in reports.values()],
    }
    return json.dumps(obj, indent=2, sort_keys=True)


def census_csv(report):
    """CSV dump of the coloring census carried by an injectivity report."""
    lines = ["copy,occupied,digest"]
    for row in report.data.get("census", []):
        lines.append(f"{row['copy']},{row['occupied']},{row['digest']}")
    return "\n".join(lines) + "\n"
