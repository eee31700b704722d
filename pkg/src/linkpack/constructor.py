"""Exact geometric realizations of link diagrams and stacked-copy packings.

The builder takes a braid-closure diagram, lays it out as rectilinear
polylines with rational coordinates, and replaces every crossing either
with a plain two-level bridge (single copy) or with a resolution gadget
that routes 2^r near-coincident copies through the crossing so that
distinct copies come out unlinked while each copy keeps the base
crossing.  All coordinates stay exact rationals end to end.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction

from gmpy2 import mpq

from .diagram import DiagramError, PDCode, braid_closure
from .geometry import Polyline3, as_q, parse_q, q_floor, q_str, vec


class LayoutError(ValueError):
    """No geometric recipe applies, or a requested packing does not fit."""


Q0 = mpq(0)
Q1 = mpq(1)


def _q(x):
    return as_q(x)


# ---------------------------------------------------------------------------
# base braid layout


@dataclass(frozen=True)
class CrossingSite:
    """Square region around one crossing reserved for resolution routing.

    ``under_dir`` and ``over_dir`` are the horizontal travel directions of
    the two strands through the square; ``half_extent`` is half the side
    of the square, measured so that nothing but the two straight passages
    meets the closed square.
    """

    index: int
    center: tuple
    under_dir: tuple
    over_dir: tuple
    sign: int
    half_extent: object
    under_component: int
    over_component: int


@dataclass(frozen=True)
class Realization:
    """Flat layout of a diagram: tagged path pieces plus crossing sites.

    ``pieces`` maps a component to an alternating sequence of
    ``("path", points)`` and ``("cross", site_index, role)`` entries whose
    concatenation walks the component once, counterclockwise in the braid
    sense.  Path points are xy pairs in the z = 0 plane.
    """

    pd: PDCode
    sites: tuple
    pieces: dict


def _simulate_braid(strands, letters):
    """Track strand positions row by row; returns per-row occupancy."""
    occupant = list(range(1, strands + 1))
    rows = []
    for pos, _sign in letters:
        rows.append(tuple(occupant))
        occupant[pos - 1], occupant[pos] = occupant[pos], occupant[pos - 1]
    return rows, tuple(occupant)


def _component_order(strands, letters):
    """Map strand id -> component number matching braid_closure labels."""
    end_pos = {}
    occupant = list(range(1, strands + 1))
    for pos, _sign in letters:
        occupant[pos - 1], occupant[pos] = occupant[pos], occupant[pos - 1]
    for p, s in enumerate(occupant, start=1):
        end_pos[s] = p
    touched = set()
    seen_rows, _ = _simulate_braid(strands, letters)
    for (pos, _sign), row in zip(letters, seen_rows):
        touched.add(row[pos - 1])
        touched.add(row[pos])
    cycles = []
    left = set(range(1, strands + 1))
    while left:
        s0 = min(left)
        cyc = [s0]
        left.remove(s0)
        nxt = end_pos[s0]
        while nxt != s0:
            cyc.append(nxt)
            left.remove(nxt)
            nxt = end_pos[nxt]
        cycles.append(cyc)
    crossing_cycles = sorted(
        (c for c in cycles if c[0] in touched or set(c) & touched), key=min
    )
    free_cycles = sorted((c for c in cycles if not (set(c) & touched)), key=min)
    comp_of_strand = {}
    comp = 0
    cycle_of_comp = {}
    for cyc in crossing_cycles + free_cycles:
        comp += 1
        cycle_of_comp[comp] = tuple(cyc)
        for s in cyc:
            comp_of_strand[s] = comp
    return comp_of_strand, cycle_of_comp, end_pos, touched


def realize_braid(strands, letters, extra_circles=0):
    """Rectilinear layout of a braid closure in the z = 0 plane.

    Strand lanes sit at x = 1..k, braid row t occupies y in [t, t+1], and
    the closure returns around the right-hand side on nested rectangles.
    Each crossing leaves a clear square (the future gadget region) where
    only the two straight passages appear.
    """
    letters = [(int(p), int(s)) for p, s in letters]
    pd = braid_closure(strands, letters)
    if extra_circles:
        pd = PDCode(pd.crossings, free_components=pd.free_components + extra_circles)
    k = strands
    n = len(letters)
    rows, final = _simulate_braid(k, letters)
    comp_of_strand, cycle_of_comp, end_pos, touched = _component_order(k, letters)

    half = mpq(1, 2)
    y_lo = mpq(1, 8)
    y_hi = mpq(7, 8)
    G = mpq(21, 64)  # verified below against actual clearances

    sites = []
    # strand -> list of per-row fragments, each ("path", pts) / ("cross", idx, role)
    frags = {s: [] for s in range(1, k + 1)}
    for t, ((pos, sign), row) in enumerate(zip(letters, rows)):
        yt = mpq(t)
        xm = mpq(pos) + half
        ym = yt + half
        ya = yt + y_lo
        yb = yt + y_hi
        left, right = row[pos - 1], row[pos]
        over_strand = left if sign > 0 else right
        under_strand = right if sign > 0 else left
        site_idx = len(sites)
        sites.append(
            CrossingSite(
                index=site_idx,
                center=(xm, ym),
                under_dir=(Q0, Q1),
                over_dir=(mpq(sign), Q0),
                sign=sign,
                half_extent=G,
                under_component=comp_of_strand[under_strand],
                over_component=comp_of_strand[over_strand],
            )
        )
        lo = mpq(pos) if sign < 0 else mpq(pos + 1)
        hi = mpq(pos + 1) if sign < 0 else mpq(pos)
        # under strand enters at lane ``lo`` and leaves at lane ``hi``
        frags[under_strand].append(
            ("path", [(lo, yt), (lo, ya), (xm, ya), (xm, ym - G)])
        )
        frags[under_strand].append(("cross", site_idx, "under"))
        frags[under_strand].append(
            ("path", [(xm, ym + G), (xm, yb), (hi, yb), (hi, yt + 1)])
        )
        o_lo = mpq(pos) if sign > 0 else mpq(pos + 1)
        o_hi = mpq(pos + 1) if sign > 0 else mpq(pos)
        frags[over_strand].append(
            ("path", [(o_lo, yt), (o_lo, ym), (xm - G * sign, ym)])
        )
        frags[over_strand].append(("cross", site_idx, "over"))
        frags[over_strand].append(
            ("path", [(xm + G * sign, ym), (o_hi, ym), (o_hi, yt + 1)])
        )
        for p, s in enumerate(row, start=1):
            if p not in (pos, pos + 1):
                frags[s].append(("path", [(mpq(p), yt), (mpq(p), yt + 1)]))

    for p, s in enumerate(final, start=1):
        a = mpq(k - p + 1, 2)
        frags[s].append(
            (
                "path",
                [
                    (mpq(p), mpq(n)),
                    (mpq(p), mpq(n) + a),
                    (mpq(k) + a, mpq(n) + a),
                    (mpq(k) + a, -a),
                    (mpq(p), -a),
                    (mpq(p), Q0),
                ],
            )
        )

    pieces = {}
    for comp, cyc in cycle_of_comp.items():
        seq = []
        for s in cyc:
            seq.extend(frags[s])
        pieces[comp] = _stitch(seq)
    ncomp = len(cycle_of_comp)
    for j in range(extra_circles):
        comp = ncomp + j + 1
        x0 = mpq(-2 * (j + 1) - 1)
        pieces[comp] = [
            ("path", [(x0, Q0), (x0 + 1, Q0), (x0 + 1, Q1), (x0, Q1), (x0, Q0)])
        ]
    real = Realization(pd=pd, sites=tuple(sites), pieces=pieces)
    _verify_site_isolation(real)
    return real


def _stitch(seq):
    """Concatenate fragments, fusing abutting path pieces."""
    out = []
    for kind, *rest in seq:
        if kind == "cross":
            out.append(("cross", rest[0], rest[1]))
            continue
        pts = [(as_q(x), as_q(y)) for x, y in rest[0]]
        if out and out[-1][0] == "path":
            prev = out[-1][1]
            if prev[-1] == pts[0]:
                prev.extend(pts[1:])
            else:
                prev.extend(pts)
        else:
            out.append(("path", list(pts)))
    if len(out) > 1 and out[0][0] == "path" and out[-1][0] == "path":
        last = out[-1][1]
        if last[-1] == out[0][1][0]:
            out[0] = ("path", last[:-1] + out[0][1])
            out.pop()
    return out


def _verify_site_isolation(real):
    """Every site square may contain only its own two straight passages."""
    segs = []
    for comp, seq in real.pieces.items():
        for kind, *rest in seq:
            if kind != "path":
                continue
            pts = rest[0]
            for a, b in zip(pts, pts[1:]):
                if a != b:
                    segs.append((a, b))
    for site in real.sites:
        cx, cy = site.center
        G = site.half_extent
        for (ax, ay), (bx, by) in segs:
            dx = _interval_gap(ax - cx, bx - cx)
            dy = _interval_gap(ay - cy, by - cy)
            if max(dx, dy) < G:
                raise LayoutError(
                    f"crossing square {site.index} is not isolated: "
                    f"segment ({q_str(ax)},{q_str(ay)})-({q_str(bx)},{q_str(by)}) intrudes"
                )


def _interval_gap(u, v):
    lo, hi = (u, v) if u <= v else (v, u)
    if hi < 0:
        return -hi
    if lo > 0:
        return lo
    return Q0


_CORPUS = {
    "hopf": (2, [(1, 1), (1, 1)], 0),
    "trefoil": (2, [(1, 1), (1, 1), (1, 1)], 0),
    "borromean": (3, [(1, 1), (2, -1)] * 3, 0),
    "whitehead": (3, [(1, 1), (2, -1), (1, 1), (2, -1), (1, 1)], 0),
    "trefoil-plus-circle": (2, [(1, 1), (1, 1), (1, 1)], 1),
}


def realize_diagram(pd):
    """Layout for a known diagram; raises LayoutError for anything else."""
    for strands, letters, extra in _CORPUS.values():
        cand = braid_closure(strands, letters)
        if extra:
            cand = PDCode(cand.crossings, free_components=cand.free_components + extra)
        if cand == pd:
            return realize_braid(strands, letters, extra)
    if not pd.crossings:
        return _realize_unlink(pd.num_components)
    n = pd.num_components
    if n >= 2:
        full_twist = [(i, 1) for i in range(1, n)] * n
        cand = braid_closure(n, full_twist)
        if cand == pd:
            return realize_braid(n, full_twist, 0)
    raise LayoutError(
        "no layout recipe for this diagram; build one from a braid word instead"
    )


def _realize_unlink(m):
    pd = PDCode((), free_components=m)
    pieces = {}
    for j in range(m):
        x0 = mpq(2 * j)
        pieces[j + 1] = [
            ("path", [(x0, Q0), (x0 + 1, Q0), (x0 + 1, Q1), (x0, Q1), (x0, Q0)])
        ]
    return Realization(pd=pd, sites=(), pieces=pieces)


def realize_named(name, n=None):
    if name in _CORPUS:
        strands, letters, extra = _CORPUS[name]
        return realize_braid(strands, letters, extra)
    if name == "unlink":
        return _realize_unlink(2 if n is None else n)
    if name == "hopf-fibers":
        m = 3 if n is None else n
        if m < 2:
            raise LayoutError("hopf-fibers layout needs at least 2 components")
        return realize_braid(m, [(i, 1) for i in range(1, m)] * m, 0)
    raise LayoutError(f"unknown layout name: {name}")


# ---------------------------------------------------------------------------
# feasibility


def gadget_capacity(c3, eps):
    """Number of unit routing boxes a square of side c3 admits at scale eps."""
    c3 = as_q(c3)
    eps = as_q(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    return q_floor(c3 / (9 * eps)) * q_floor(c3 / (3 * eps)) * q_floor(1 / (7 * eps))


def plan_gadget(r, nx, ny, nz):
    """Boustrophedonic placement of r routing boxes in an nx x ny x nz grid.

    Returns the ordered list of grid cells; consecutive cells share a face.
    """
    if r > nx * ny * nz:
        raise LayoutError(
            f"gadget needs {r} boxes but the grid only holds {nx * ny * nz}"
        )
    cells = []
    row = 0
    for iz in range(nz):
        ys = range(ny) if iz % 2 == 0 else range(ny - 1, -1, -1)
        for iy in ys:
            xs = range(nx) if row % 2 == 0 else range(nx - 1, -1, -1)
            row += 1
            for ix in xs:
                cells.append((ix, iy, iz))
                if len(cells) == r:
                    return cells
    return cells


def feasible_epsilon(real, r):
    """A comfortable routing scale for packing 2^r copies of this layout."""
    if not real.sites:
        return mpq(1, 32)
    G = min(site.half_extent for site in real.sites)
    W = 1 << r
    # Denominator 8 + 9r + W leaves every exit window strictly west of the
    # boundary stubs (by at least eps) while fitting the bit boxes.
    eps = G / (8 + 9 * r + W)
    return min(eps, mpq(1, 32))


# ---------------------------------------------------------------------------
# packing construction


@dataclass(frozen=True)
class PackingLayout:
    """2^r offset copies of a realized diagram, plus bookkeeping."""

    pd: PDCode
    r: int
    epsilon: object
    labels: tuple
    curves: dict

    @property
    def copies(self):
        return len(self.labels)

    def curve(self, copy_idx, comp):
        return self.curves[(copy_idx, comp)]

    def to_json_obj(self):
        strands = []
        for (w, comp), poly in sorted(self.curves.items()):
            strands.append(
                {
                    "word": self.labels[w],
                    "component": comp,
                    "points": [[q_str(c) for c in p] for p in poly.points],
                }
            )
        return {
            "diagram": self.pd.to_json_obj(),
            "r": self.r,
            "epsilon": q_str(self.epsilon),
            "strands": strands,
        }

    def to_json(self):
        return json.dumps(self.to_json_obj(), separators=(",", ":"), sort_keys=True)

    @classmethod
    def from_json_obj(cls, obj):
        from .diagram import parse_pd

        pd = parse_pd(json.dumps(obj["diagram"]))
        r = int(obj["r"])
        labels = tuple(format(w, f"0{r}b") if r else "" for w in range(1 << r))
        curves = {}
        for rec in obj["strands"]:
            word = str(rec["word"])
            if word not in labels:
                raise LayoutError(f"strand word {word!r} does not fit r={r}")
            pts = tuple(tuple(parse_q(c) for c in p) for p in rec["points"])
            curves[(int(word, 2) if word else 0, int(rec["component"]))] = Polyline3(pts)
        return cls(
            pd=pd,
            r=r,
            epsilon=parse_q(obj["epsilon"]),
            labels=labels,
            curves=curves,
        )

    @classmethod
    def from_json(cls, text):
        return cls.from_json_obj(json.loads(text))

    def to_obj(self):
        lines = []
        base = 0
        for (w, comp), poly in sorted(self.curves.items()):
            lines.append(f"o copy{w}_component{comp}")
            pts = poly.points
            for p in pts:
                lines.append("v {} {} {}".format(*(float(c) for c in p)))
            idx = " ".join(str(base + i + 1) for i in range(len(pts)))
            lines.append(f"l {idx} {base + 1}")
            base += len(pts)
        return "\n".join(lines) + "\n"


def _merge_collinear(points):
    pts = [tuple(as_q(c) for c in p) for p in points]
    if pts[0] == pts[-1]:
        pts.pop()
    out = []
    m = len(pts)
    for i, p in enumerate(pts):
        a = out[-1] if out else pts[i - 1]
        b = pts[(i + 1) % m]
        if p == a:
            continue
        u = tuple(p[j] - a[j] for j in range(3))
        v = tuple(b[j] - p[j] for j in range(3))
        cross = (
            u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0],
        )
        dot = sum(u[j] * v[j] for j in range(3))
        if cross == (0, 0, 0) and dot > 0:
            continue
        out.append(p)
    # wraparound collinearity
    while len(out) > 2:
        a, p, b = out[-1], out[0], out[1]
        u = tuple(p[j] - a[j] for j in range(3))
        v = tuple(b[j] - p[j] for j in range(3))
        cross = (
            u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0],
        )
        if cross == (0, 0, 0) and sum(u[j] * v[j] for j in range(3)) > 0:
            out.pop(0)
        else:
            break
    return out


def _bit(w, pos, r):
    """Bit of the copy word at box position ``pos`` (position 0 most significant)."""
    return (w >> (r - 1 - pos)) & 1


class _GadgetFrame:
    """Local coordinates of one crossing square at routing scale eps.

    The under copies run west to east on parallel lanes; the over copies
    run south to north, staging just below the lane stack and climbing
    over it lane block by lane block inside the bit boxes.  All pieces of
    any single copy keep mutual clearance 2*eps (bands 2*eps apart in z,
    runs at least eps apart otherwise); distinct copies may come
    arbitrarily close but never meet, and cross only where engineered.
    """

    def __init__(self, site, r, eps):
        self.site = site
        self.r = r
        self.eps = as_q(eps)
        self.W = 1 << r
        self.G = site.half_extent
        e = self.eps
        self.lam = e / (1 << (r + 6))
        self.delta_z = e / (1 << (r + 1))
        self.B0 = -self.G + 6 * e
        self.S0 = self.B0 + 9 * r * e + e
        self.S1 = self.S0 + self.W * e
        if self.S1 + 3 * e > self.G:
            raise LayoutError(
                f"crossing square {site.index} cannot host a depth-{r} gadget "
                f"at eps={q_str(e)}"
            )
        for idx in range(1, self.W + 1):
            # exit descents must stay a full eps away from the boundary
            # stub line, or same-copy clearance collapses there
            if abs(self.S0 + idx * e) < e:
                raise LayoutError(
                    f"exit window {idx - 1} of square {site.index} lands on "
                    f"the outgoing stub line at eps={q_str(e)}; pick a "
                    f"smaller eps"
                )

    def z_cruise(self, w):
        return -(w + 1) * self.delta_z

    def lane(self, w):
        return (w + 1) * self.lam

    def channel(self, w):
        # strictly inside (0, lam), ascending with the copy index
        return (w + 1) * self.lam / (self.W + 2)

    def x_leg(self, w):
        # entry vertical legs, descending with the copy index
        return -self.G + 4 * self.eps + (self.W - w) * self.lam

    def y_out(self, w):
        # post-sweep levels above every lane, descending with the copy index
        return (self.W + 2) * self.lam + (self.W - w) * self.lam / (self.W + 2)

    def to_global(self, x, y, z):
        cx, cy = self.site.center
        ux, uy = self.site.under_dir
        ox, oy = self.site.over_dir
        return (cx + x * ux + y * ox, cy + x * uy + y * oy, z)

    def under_route(self, w):
        e, G = self.eps, self.G
        Z = self.z_cruise(w)
        dip = Z - 6 * e
        yl = self.lane(w)
        pts = [(-G, Q0, Z), (-G + e, Q0, Z), (-G + 2 * e, yl, Z)]
        for pos in range(self.r):
            if _bit(w, pos, self.r):
                bx = self.B0 + 9 * pos * e
                pts += [
                    (bx + e, yl, Z),
                    (bx + 2 * e, yl, dip),
                    (bx + 7 * e, yl, dip),
                    (bx + 8 * e, yl, Z),
                ]
        pts += [(G - 2 * e, yl, Z), (G - e, Q0, Z), (G, Q0, Z)]
        return pts

    def over_route(self, w):
        e, G, r, W = self.eps, self.G, self.r, self.W
        Z = self.z_cruise(w)
        sweep_z = Z - 4 * e
        lam = self.lam
        ch = self.channel(w)
        xl = self.x_leg(w)
        level = Z + 2 * e
        pts = [
            (Q0, -G, Z),
            (Q0, -3 * e, Z),
            (xl, -3 * e, Z),
            (xl, -2 * e, level),
            (xl, ch, level),
        ]
        y_cur = ch
        crossed = 0
        for pos in range(r):
            if not _bit(w, pos, self.r):
                continue
            bx = self.B0 + 9 * pos * e
            block = 1 << (r - 1 - pos)
            y_new = (crossed + block) * lam + ch
            pts += [
                (bx + 3 * e, y_cur, level),
                (bx + 4 * e, y_cur, sweep_z),
                (bx + 5 * e, y_new, sweep_z),
                (bx + 6 * e, y_new, level + 2 * e),
            ]
            level = level + 2 * e
            crossed += block
            y_cur = y_new
        win0 = self.S0 + (W - 1 - w) * e
        x_exit = win0 + e
        yo = self.y_out(w)
        pts += [
            (win0, y_cur, level),
            (x_exit, yo, level),
            (x_exit, 2 * e, level),
            (x_exit, 3 * e, Z),
            (Q0, 3 * e, Z),
            (Q0, G, Z),
        ]
        return pts

    def plain_route(self, w, role):
        """Copy passage for a square whose gadget depth is zero copies deep."""
        G = self.G
        Z = self.z_cruise(w)
        if role == "under":
            return [(-G, Q0, Z), (G, Q0, Z)]
        return [(Q0, -G, Z), (Q0, G, Z)]


def _bridge_route(site, role):
    """Two-level crossing bridge for the single-copy build."""
    G = site.half_extent
    H = G / 2
    if role == "under":
        loc = [(-G, Q0, Q0), (-G / 2, Q0, -H), (G / 2, Q0, -H), (G, Q0, Q0)]
    else:
        loc = [(Q0, -G, Q0), (Q0, -G / 2, H), (Q0, G / 2, H), (Q0, G, Q0)]
    cx, cy = site.center
    ux, uy = site.under_dir
    ox, oy = site.over_dir
    return [(cx + x * ux + y * ox, cy + x * uy + y * oy, z) for x, y, z in loc]


def build_packing(real, r, epsilon=None):
    """Stack 2^r copies of the realization and resolve every crossing.

    With r = 0 the single copy keeps plain two-level bridges.  For r >= 1
    every crossing square hosts a routing gadget; the capacity formula and
    the in-square routing budget are both enforced.
    """
    if r < 0:
        raise ValueError("r must be >= 0")
    if epsilon is None:
        epsilon = feasible_epsilon(real, r)
    eps = as_q(epsilon)
    if eps <= 0:
        raise ValueError("epsilon must be positive")

    if r == 0:
        curves = {}
        for comp, seq in real.pieces.items():
            pts = []
            for kind, *rest in seq:
                if kind == "path":
                    pts.extend((x, y, Q0) for x, y in rest[0])
                else:
                    site = real.sites[rest[0]]
                    pts.extend(_bridge_route(site, rest[1]))
            curves[(0, comp)] = Polyline3(tuple(_merge_collinear(pts)))
        return PackingLayout(
            pd=real.pd, r=0, epsilon=eps, labels=("",), curves=curves
        )

    for site in real.sites:
        cap = gadget_capacity(2 * site.half_extent, eps)
        if r > cap:
            raise LayoutError(
                f"crossing square {site.index} admits {cap} routing boxes at "
                f"eps={q_str(eps)}, need {r}"
            )
    frames = [_GadgetFrame(site, r, eps) for site in real.sites]
    W = 1 << r
    labels = tuple(format(w, f"0{r}b") for w in range(W))
    curves = {}
    for comp, seq in real.pieces.items():
        for w in range(W):
            z = -(w + 1) * (eps / (1 << (r + 1)))
            pts = []
            for kind, *rest in seq:
                if kind == "path":
                    pts.extend((x, y, z) for x, y in rest[0])
                else:
                    fr = frames[rest[0]]
                    role = rest[1]
                    loc = fr.under_route(w) if role == "under" else fr.over_route(w)
                    pts.extend(fr.to_global(x, y, zz) for x, y, zz in loc)
            curves[(w, comp)] = Polyline3(tuple(_merge_collinear(pts)))
    return PackingLayout(pd=real.pd, r=r, epsilon=eps, labels=labels, curves=curves)


# ---------------------------------------------------------------------------
# great-circle fiber families


def hopf_fiber_embedding(n, samples=96, max_den=10**7, phase=0.37):
    """n pairwise-linked round fibers, sampled and rationalized.

    Base points follow a Fibonacci spiral on the 2-sphere; each fiber of
    the circle bundle over its base point is pushed to 3-space by
    stereographic projection and sampled as a closed polyline with
    rational vertices.  Returns {component: Polyline3}.
    """
    if n < 1:
        raise ValueError("need at least one fiber")
    if samples < 8:
        raise ValueError("need at least 8 samples per fiber")
    golden = (1 + math.sqrt(5)) / 2
    curves = {}
    for i in range(n):
        c = 1 - 2 * (i + 0.5) / n
        lat = math.acos(max(-1.0, min(1.0, c)))
        lon = 2 * math.pi * i / golden
        a = math.sin(lat) * math.cos(lon)
        b = math.sin(lat) * math.sin(lon)
        r1 = math.sqrt((1 + c) / 2)
        r2 = math.sqrt((1 - c) / 2)
        beta = math.atan2(b, a)
        pts = []
        for k in range(samples):
            t = 2 * math.pi * k / samples + phase
            x1 = r1 * math.cos(t)
            y1 = r1 * math.sin(t)
            x2 = r2 * math.cos(t - beta)
            y2 = r2 * math.sin(t - beta)
            denom = 1 - x1
            p = (y1 / denom, x2 / denom, y2 / denom)
            pts.append(tuple(_rat(c2, max_den) for c2 in p))
        curves[i + 1] = Polyline3(tuple(_merge_collinear(pts)))
    return curves


def _rat(x, max_den):
    fr = Fraction(x).limit_denominator(max_den)
    return mpq(fr.numerator, fr.denominator)


def fibers_layout(n, samples=96):
    """Package a fiber family as a single-copy layout for verification."""
    pd = braid_closure(n, [(i, 1) for i in range(1, n)] * n)
    curves = {(0, comp): poly for comp, poly in hopf_fiber_embedding(n, samples).items()}
    return PackingLayout(pd=pd, r=0, epsilon=mpq(1, 100), labels=("",), curves=curves)
