import itertools
import json
import math
import random

import numpy as np
import pytest
from gmpy2 import mpq

from linkpack.constructor import (
    build_packing,
    hopf_fiber_embedding,
    realize_named,
)
from linkpack.constructor import PackingLayout
from linkpack.diagram import unlink
from linkpack.geometry import Polyline3, as_q, rationalize
from linkpack.verifier import (
    FaceSequence,
    IntersectionError,
    VerifyError,
    census_csv,
    check_separation,
    check_layout_thickness,
    check_thickness,
    check_topology,
    coloring_injectivity,
    corrupt_duplicate_copy,
    corrupt_label_swap,
    face_sequence,
    fit_grid,
    linking_number,
    min_distance,
    min_distance_witness,
    report_json,
    separation_ratio_experiment,
    tiling_coloring,
    verify_layout,
)


def _poly(*pts):
    return Polyline3(tuple(tuple(as_q(c) for c in p) for p in pts))


def _square(x0, y0, z, side=1):
    x0, y0, z, side = as_q(x0), as_q(y0), as_q(z), as_q(side)
    return _poly(
        (x0, y0, z), (x0 + side, y0, z), (x0 + side, y0 + side, z), (x0, y0 + side, z)
    )


def _toy_layout(curves, epsilon):
    return PackingLayout(
        pd=unlink(len(curves)),
        r=0,
        epsilon=as_q(epsilon),
        labels=("",),
        curves={(0, i + 1): c for i, c in enumerate(curves)},
    )


# ---------------------------------------------------------------------------
# minimum distance


def test_min_distance_parallel_strips():
    # facing unit edges at distance 1/4
    a = _poly((0, 0, 0), (1, 0, 0), (1, mpq(-1, 8), 0), (0, mpq(-1, 8), 0))
    b = _poly(
        (0, mpq(1, 4), 0),
        (1, mpq(1, 4), 0),
        (1, mpq(3, 8), 0),
        (0, mpq(3, 8), 0),
    )
    assert min_distance(a, b) == mpq(1, 16)
    assert min_distance(a, b, accelerated=False) == mpq(1, 16)


def test_min_distance_touching_is_zero():
    a = _square(0, 0, 0)
    b = _square(1, 1, 0)  # shares the corner (1, 1, 0)
    assert min_distance(a, b) == 0


def test_min_distance_witness_indices():
    a = _square(0, 0, 0)
    b = _square(0, 2, 0)
    d2, i, j = min_distance_witness(a, b)
    assert d2 == 1
    assert a.segment(i) is not None and b.segment(j) is not None


def test_min_distance_rejects_non_polylines():
    with pytest.raises(TypeError):
        min_distance(_square(0, 0, 0), [(0, 0, 0)])


def _random_polyline(rng):
    while True:
        n = rng.randint(4, 6)
        pts = tuple(
            (mpq(rng.randint(-24, 24), 8), mpq(rng.randint(-24, 24), 8), mpq(rng.randint(-24, 24), 8))
            for _ in range(n)
        )
        ok = all(pts[i] != pts[(i + 1) % n] for i in range(n))
        if ok:
            return Polyline3(pts)


def test_accelerated_min_distance_equals_brute_force():
    rng = random.Random(20240817)
    for _ in range(1000):
        a = _random_polyline(rng)
        b = _random_polyline(rng)
        assert min_distance(a, b) == min_distance(a, b, accelerated=False)


# ---------------------------------------------------------------------------
# separation


def test_separation_pass_and_fail_at_half_gap():
    a = _square(0, 0, 0)
    b = _square(0, mpq(3, 2), 0)  # facing edges 1/2 apart
    ok = check_separation(_toy_layout([a, b], mpq(1, 4)))
    assert ok.passed and ok.witnesses == ()
    assert ok.data["min_dist2"] == "1/4"
    bad = check_separation(_toy_layout([a, b], mpq(3, 4)))
    assert not bad.passed
    (w,) = bad.witnesses
    assert w["copy"] == 0
    assert w["components"] == [1, 2]
    assert as_q(w["dist2"]) == mpq(1, 4)


def test_separation_of_built_layout():
    layout = build_packing(realize_named("hopf"), 1)
    assert check_separation(layout).passed


# ---------------------------------------------------------------------------
# thickness


def _polygon64():
    pts = []
    for k in range(64):
        t = 2 * math.pi * k / 64
        pts.append(
            (rationalize(0.25 * math.cos(t)), rationalize(0.25 * math.sin(t)), mpq(0))
        )
    return Polyline3(tuple(pts))


def test_thickness_accepts_fine_polygon():
    poly = _polygon64()
    eps = mpq(1, 10)
    report = check_thickness(poly, eps)
    assert report.passed, report.witnesses
    # the acceptance is doing real work: next-but-one chords of this
    # polygon run closer than eps and survive only because they point the
    # same way
    segs = list(poly.segments())
    from linkpack.geometry import segment_segment_dist2

    d2 = segment_segment_dist2(*segs[0], *segs[2])
    assert d2 < eps * eps


def test_thickness_rejects_hairpin():
    eps = mpq(1, 10)
    poly = _poly((0, 0, 0), (1, 0, 0), (1, mpq(1, 40), 0), (0, mpq(1, 40), 0))
    report = check_thickness(poly, eps)
    assert not report.passed
    kinds = {w["kind"] for w in report.witnesses}
    assert "segment-pair" in kinds


def test_thickness_rejects_short_right_angle():
    eps = mpq(1, 10)
    leg = eps / 8
    poly = _poly((0, 0, 0), (leg, 0, 0), (0, leg, 0))
    report = check_thickness(poly, eps)
    assert not report.passed
    assert any(w["kind"] == "vertex-angle" for w in report.witnesses)


def test_thickness_rejects_cusp():
    poly = _poly((0, 0, 0), (2, 0, 0), (1, 0, 0))
    report = check_thickness(poly, mpq(1, 100))
    assert not report.passed
    assert any(w.get("cusp") for w in report.witnesses)


def test_thickness_of_built_layout():
    layout = build_packing(realize_named("hopf"), 1)
    report = check_layout_thickness(layout)
    assert report.passed, report.witnesses[:3]


def test_thickness_needs_positive_eps():
    with pytest.raises(VerifyError):
        check_thickness(_square(0, 0, 0), 0)


# ---------------------------------------------------------------------------
# linking numbers


def _gauss_linking(a, b):
    """Float Gauss double sum over segment pairs (solid-angle form)."""
    pa = a.to_float_array()
    pb = b.to_float_array()
    total = 0.0
    na, nb = len(pa), len(pb)
    for i in range(na):
        a1, a2 = pa[i], pa[(i + 1) % na]
        for j in range(nb):
            b1, b2 = pb[j], pb[(j + 1) % nb]
            r13 = b1 - a1
            r14 = b2 - a1
            r23 = b1 - a2
            r24 = b2 - a2
            n1 = np.cross(r13, r14)
            n2 = np.cross(r14, r24)
            n3 = np.cross(r24, r23)
            n4 = np.cross(r23, r13)
            norms = [np.linalg.norm(v) for v in (n1, n2, n3, n4)]
            if min(norms) < 1e-13:
                continue
            n1, n2, n3, n4 = (v / w for v, w in zip((n1, n2, n3, n4), norms))
            ang = (
                math.asin(np.clip(np.dot(n1, n2), -1, 1))
                + math.asin(np.clip(np.dot(n2, n3), -1, 1))
                + math.asin(np.clip(np.dot(n3, n4), -1, 1))
                + math.asin(np.clip(np.dot(n4, n1), -1, 1))
            )
            sign = 1.0 if np.dot(np.cross(b2 - b1, a2 - a1), r13) > 0 else -1.0
            total += ang * sign
    return total / (4 * math.pi)


def _linked_square_pair(rng):
    def jig():
        return mpq(rng.randint(-2, 2), 32)

    a = _poly(
        (1 + jig(), 1 + jig(), jig()),
        (-1 + jig(), 1 + jig(), jig()),
        (-1 + jig(), -1 + jig(), jig()),
        (1 + jig(), -1 + jig(), jig()),
    )
    b = _poly(
        (jig(), jig(), 1 + jig()),
        (2 + jig(), jig(), 1 + jig()),
        (2 + jig(), jig(), -1 + jig()),
        (jig(), jig(), -1 + jig()),
    )
    return a, b


def test_hopf_curves_link_once():
    layout = build_packing(realize_named("hopf"), 0)
    assert abs(linking_number(layout.curve(0, 1), layout.curve(0, 2))) == 1


def test_split_curves_do_not_link():
    assert linking_number(_square(0, 0, 0), _square(5, 5, 5)) == 0


def test_linking_matches_gauss_integral_oracle():
    pairs = []
    for name in ("hopf", "whitehead", "borromean", "trefoil-plus-circle"):
        layout = build_packing(realize_named(name), 0)
        comps = sorted(c for (_w, c) in layout.curves)
        pairs.extend(
            (layout.curve(0, c1), layout.curve(0, c2))
            for c1, c2 in itertools.combinations(comps, 2)
        )
    fibers = hopf_fiber_embedding(3, samples=48)
    pairs.extend(
        (fibers[i], fibers[j]) for i, j in itertools.combinations(sorted(fibers), 2)
    )
    rng = random.Random(7)
    for _ in range(12):
        pairs.append(_linked_square_pair(rng))
    for _ in range(5):
        a = _random_polyline(rng)
        b = _random_polyline(rng).translate((0, 0, 20))
        pairs.append((a, b))
    for a, b in pairs:
        got = linking_number(a, b)
        est = _gauss_linking(a, b)
        assert abs(est - got) < 0.2, (got, est)


def test_linking_symmetry_and_direction_independence():
    layout = build_packing(realize_named("whitehead"), 0)
    a, b = layout.curve(0, 1), layout.curve(0, 2)
    assert linking_number(a, b) == linking_number(b, a)
    rng = random.Random(11)
    c, d = _linked_square_pair(rng)
    for pair in ((a, b), (c, d)):
        values = {linking_number(*pair, first_tilt=k) for k in range(6)}
        assert len(values) == 1


def test_linking_rejects_meeting_curves():
    a = _square(0, 0, 0)
    b = _poly((1, 1, 0), (3, 1, 0), (3, 3, 0), (1, 3, 0))  # shares (1,1,0)
    with pytest.raises(IntersectionError):
        linking_number(a, b)


# ---------------------------------------------------------------------------
# layout topology


def test_topology_of_packed_hopf():
    layout = build_packing(realize_named("hopf"), 2)
    report = check_topology(layout)
    assert report.passed
    assert report.data["copies"] == 4
    assert report.data["pairs"] == 28  # 4 within-copy + 24 cross-copy
    assert report.data["global_sign"] in (-1, 1)


def test_topology_of_packed_unlink():
    layout = build_packing(realize_named("unlink", 2), 1)
    assert check_topology(layout).passed


def test_label_swap_is_caught_with_witness():
    layout = build_packing(realize_named("hopf"), 1)
    bad = corrupt_label_swap(layout)
    report = check_topology(bad)
    assert not report.passed
    assert report.witnesses
    w = report.witnesses[0]
    assert w["linking"] != w["expected"]


# ---------------------------------------------------------------------------
# tilings and colorings


def test_tiny_curve_colors_one_tile():
    sq = _square(mpq(2, 5), mpq(2, 5), mpq(1, 2), side=mpq(1, 5))
    layout = _toy_layout([sq], mpq(1, 10))
    grid, colorings = tiling_coloring(layout, s=1)
    assert len(colorings[0]) == 1
    assert set(colorings[0].values()) == {1}


def test_packed_hopf_tiles_single_colored():
    layout = build_packing(realize_named("hopf"), 1)
    grid, colorings = tiling_coloring(layout)  # defaults to epsilon/2
    assert grid.s == as_q(layout.epsilon) / 2
    assert sorted(colorings) == [0, 1]
    for coloring in colorings.values():
        assert set(coloring.values()) <= {1, 2}


def test_oversized_tile_detected():
    layout = build_packing(realize_named("hopf"), 0)
    with pytest.raises(VerifyError):
        tiling_coloring(layout, s=100)


def test_eight_copies_eight_colorings():
    layout = build_packing(realize_named("hopf"), 3)
    _grid, colorings = tiling_coloring(layout)
    report = coloring_injectivity(colorings, layout.pd.num_components)
    assert report.passed
    assert report.data["distinct"] == 8
    assert report.data["bound_ok"]


def test_duplicate_copy_is_caught_with_witness():
    layout = build_packing(realize_named("hopf"), 1)
    bad = corrupt_duplicate_copy(layout)
    _grid, colorings = tiling_coloring(bad)
    report = coloring_injectivity(colorings, bad.pd.num_components)
    assert not report.passed
    assert {"copies": [0, 1], "kind": "duplicate"} in list(report.witnesses)


def test_single_copy_trivially_injective():
    layout = build_packing(realize_named("hopf"), 0)
    _grid, colorings = tiling_coloring(layout)
    report = coloring_injectivity(colorings, layout.pd.num_components)
    assert report.passed
    assert report.data["distinct"] == 1


def test_census_bound_on_toy_colorings():
    colorings = {0: {(0, 0, 0): 1}, 1: {(0, 0, 0): 2}}
    report = coloring_injectivity(colorings, 2)
    assert report.passed
    assert report.data["occupied_union"] == 1
    assert report.data["distinct"] == 2  # within the 3^1 bound


def test_census_csv_shape():
    layout = build_packing(realize_named("hopf"), 2)
    _grid, colorings = tiling_coloring(layout)
    report = coloring_injectivity(colorings, 2)
    lines = census_csv(report).strip().splitlines()
    assert lines[0] == "copy,occupied,digest"
    assert len(lines) == 5


# ---------------------------------------------------------------------------
# grid fitting and face sequences


def test_fit_grid_handles_diagonal_segments():
    # x - z is constant along the slanted faces, so equal shifts on every
    # axis can never make this transverse; the per-axis schedule must
    poly = _poly((0, 0, 0), (1, 0, 1), (1, 1, 1), (0, 1, 0))
    grid = fit_grid([poly], mpq(1, 4))
    assert face_sequence(poly, grid).faces


def test_fit_grid_needs_positive_sidelength():
    with pytest.raises(VerifyError):
        fit_grid([_square(0, 0, 0)], 0)


def test_rectangle_crosses_four_faces():
    rect = _poly(
        (mpq(1, 2), mpq(1, 2), mpq(1, 2)),
        (mpq(3, 2), mpq(1, 2), mpq(1, 2)),
        (mpq(3, 2), mpq(3, 2), mpq(1, 2)),
        (mpq(1, 2), mpq(3, 2), mpq(1, 2)),
    )
    grid = fit_grid([rect], 1)
    seq = face_sequence(rect, grid)
    assert len(seq.faces) == 4


def test_face_sequence_rotation_invariant():
    pts = (
        (mpq(1, 2), mpq(1, 2), mpq(1, 2)),
        (mpq(3, 2), mpq(1, 2), mpq(1, 2)),
        (mpq(3, 2), mpq(3, 2), mpq(1, 2)),
        (mpq(1, 2), mpq(3, 2), mpq(1, 2)),
    )
    rect = _poly(*pts)
    spun = _poly(*(pts[2:] + pts[:2]))
    grid = fit_grid([rect], 1)
    assert face_sequence(rect, grid) == face_sequence(spun, grid)


def test_face_sequence_single_visit_census():
    rect = _poly(
        (mpq(1, 2), mpq(1, 2), mpq(1, 2)),
        (mpq(3, 2), mpq(1, 2), mpq(1, 2)),
        (mpq(3, 2), mpq(3, 2), mpq(1, 2)),
        (mpq(1, 2), mpq(3, 2), mpq(1, 2)),
    )
    grid = fit_grid([rect], mpq(1, 100))
    seq = face_sequence(rect, grid)
    assert seq.collisions == ()
    coarse = fit_grid([rect], 1)
    assert face_sequence(rect, coarse).collisions is None  # too kinked to gate


def test_distinct_words_have_distinct_face_sequences():
    layout = build_packing(realize_named("hopf"), 1)
    a = layout.curve(0, 1)
    b = layout.curve(1, 1)
    grid = fit_grid([a, b], as_q(layout.epsilon) / 2)
    assert face_sequence(a, grid) != face_sequence(b, grid)


# ---------------------------------------------------------------------------
# experiment and top-level plumbing


def test_separation_ratio_smoke():
    report = separation_ratio_experiment([2, 4], samples=48)
    assert report.passed
    rows = report.data["rows"]
    assert [row["n"] for row in rows] == [2, 4]
    assert all(row["sigma"] > 0 for row in rows)


def test_verify_layout_full_battery():
    layout = build_packing(realize_named("hopf"), 1)
    reports = verify_layout(layout)
    assert sorted(reports) == [
        "coloring-injectivity",
        "separation",
        "thickness",
        "topology",
    ]
    assert all(rep.passed for rep in reports.values())
    obj = json.loads(report_json(reports))
    assert obj["passed"] is True
    assert len(obj["checks"]) == 4


def test_reports_ignore_strand_insertion_order():
    layout = build_packing(realize_named("hopf"), 1)
    shuffled = PackingLayout(
        pd=layout.pd,
        r=layout.r,
        epsilon=layout.epsilon,
        labels=layout.labels,
        curves=dict(sorted(layout.curves.items(), reverse=True)),
    )
    assert report_json(verify_layout(layout)) == report_json(verify_layout(shuffled))
