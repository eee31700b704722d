"""Shared helpers for inspecting routed layouts at crossing squares."""


def local_frame(site):
    """xy -> gadget coordinates for the braid-layout crossing squares."""
    cx, cy = site.center
    ux, uy = site.under_dir
    ox, oy = site.over_dir

    def to_local(p):
        gx, gy = p[0] - cx, p[1] - cy
        return (gx * ux + gy * uy, gx * ox + gy * oy)

    return to_local


def entry_depth(poly, to_local, axis, edge, half):
    """z at which the curve crosses local coordinate ``axis`` == ``edge``."""
    pts = poly.points
    n = len(pts)
    for i in range(n):
        a, b = pts[i], pts[(i + 1) % n]
        la, lb = to_local(a), to_local(b)
        if la[axis] == lb[axis]:
            continue
        lo, hi = sorted((la[axis], lb[axis]))
        if not lo <= edge <= hi:
            continue
        other = 1 - axis
        t = (edge - la[axis]) / (lb[axis] - la[axis])
        off = la[other] + t * (lb[other] - la[other])
        if abs(off) < half:
            return a[2] + t * (b[2] - a[2])
    raise AssertionError("curve never crosses the requested edge")
