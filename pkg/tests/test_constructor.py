import itertools
import math

import pytest
from gmpy2 import mpq

from linkpack.constructor import (
    LayoutError,
    PackingLayout,
    build_packing,
    feasible_epsilon,
    fibers_layout,
    gadget_capacity,
    hopf_fiber_embedding,
    plan_gadget,
    realize_braid,
    realize_diagram,
    realize_named,
)
from linkpack.diagram import hopf_link, unlink
from linkpack.geometry import as_q
from linkpack.verifier import linking_number, min_distance

from conftest import entry_depth, local_frame


# ---------------------------------------------------------------------------
# base realizations


def test_unlink_realization_is_two_disjoint_circles():
    real = realize_named("unlink", 2)
    assert len(real.sites) == 0
    assert sorted(real.pieces) == [1, 2]
    layout = build_packing(real, 0)
    assert min_distance(layout.curve(0, 1), layout.curve(0, 2)) > 0


def test_hopf_realization_has_two_crossings():
    real = realize_named("hopf")
    assert len(real.sites) == 2
    assert all(site.sign == 1 for site in real.sites)
    # each component passes one crossing as over and the other as under
    for comp, seq in real.pieces.items():
        roles = sorted(role for kind, *rest in seq if kind == "cross" for role in [rest[1]])
        assert roles == ["over", "under"]


def test_borromean_realization_crossing_signs():
    real = realize_named("borromean")
    assert len(real.sites) == 6
    assert [site.sign for site in real.sites] == [1, -1, 1, -1, 1, -1]


def test_whitehead_crossing_incidences_split_four_six():
    real = realize_named("whitehead")
    counts = {
        comp: sum(1 for kind, *rest in seq if kind == "cross")
        for comp, seq in real.pieces.items()
    }
    assert counts == {1: 4, 2: 6}


def test_crossing_squares_are_pairwise_disjoint():
    for name in ("hopf", "borromean", "whitehead", "trefoil-plus-circle"):
        real = realize_named(name)
        for a, b in itertools.combinations(real.sites, 2):
            gap = max(
                abs(a.center[0] - b.center[0]), abs(a.center[1] - b.center[1])
            )
            assert gap >= a.half_extent + b.half_extent


def test_realize_diagram_recognizes_corpus_and_rejects_strangers():
    real = realize_diagram(hopf_link())
    assert len(real.sites) == 2
    assert realize_diagram(unlink(3)).pd.num_components == 3
    from linkpack.diagram import braid_closure

    with pytest.raises(LayoutError):
        realize_diagram(braid_closure(2, [(1, 1)] * 8))


def test_realize_named_unknown_name():
    with pytest.raises(LayoutError):
        realize_named("granny")


# ---------------------------------------------------------------------------
# feasibility bookkeeping


def test_gadget_capacity_frozen_value():
    # square side 21/32 at scale 1/200: 14 * 43 * 28 boxes
    assert gadget_capacity(mpq(21, 32), mpq(1, 200)) == 16856


def test_gadget_capacity_shrinks_with_scale():
    caps = [gadget_capacity(mpq(21, 32), mpq(1, d)) for d in (40, 80, 160, 320)]
    assert caps == sorted(caps)
    assert gadget_capacity(mpq(21, 32), mpq(1, 10)) == 0


def test_plan_gadget_single_box():
    assert plan_gadget(1, 3, 3, 3) == [(0, 0, 0)]


def test_plan_gadget_boustrophedonic_grid():
    cells = plan_gadget(8, 2, 2, 2)
    assert len(cells) == 8
    assert len(set(cells)) == 8
    for a, b in zip(cells, cells[1:]):
        assert sum(abs(u - v) for u, v in zip(a, b)) == 1


def test_plan_gadget_overflow():
    with pytest.raises(LayoutError):
        plan_gadget(9, 2, 2, 2)


def test_feasible_epsilon_bounds():
    real = realize_named("hopf")
    assert feasible_epsilon(real, 2) == mpq(7, 640)
    for r in range(5):
        eps = feasible_epsilon(real, r)
        assert 0 < eps <= mpq(1, 32)
        build_packing(real, r, eps)  # must not raise


def test_build_rejects_oversized_scale():
    real = realize_named("hopf")
    with pytest.raises(LayoutError):
        build_packing(real, 2, mpq(1, 10))


def test_build_rejects_negative_r_and_epsilon():
    real = realize_named("hopf")
    with pytest.raises(ValueError):
        build_packing(real, -1)
    with pytest.raises(ValueError):
        build_packing(real, 1, mpq(-1, 32))


# ---------------------------------------------------------------------------
# packing layouts


def test_copy_words_and_strand_census():
    real = realize_named("borromean")
    for r in (0, 1, 2):
        layout = build_packing(real, r)
        assert layout.copies == 1 << r
        words = set(layout.labels)
        assert len(words) == 1 << r
        assert all(len(w) == r for w in words)
        assert sorted(layout.curves) == [
            (w, c) for w in range(1 << r) for c in (1, 2, 3)
        ]


def test_single_copy_keeps_plane_except_bridges():
    layout = build_packing(realize_named("hopf"), 0)
    assert layout.labels == ("",)
    for key, poly in layout.curves.items():
        zs = {p[2] for p in poly.points}
        assert as_q(0) in zs  # the base plane carries most of the curve


def test_layout_json_round_trip():
    layout = build_packing(realize_named("hopf"), 2)
    text = layout.to_json()
    back = PackingLayout.from_json(text)
    assert back.r == layout.r
    assert back.epsilon == layout.epsilon
    assert back.labels == layout.labels
    assert back.curves == layout.curves
    assert back.to_json() == text


def test_layout_json_deterministic():
    a = build_packing(realize_named("whitehead"), 1).to_json()
    b = build_packing(realize_named("whitehead"), 1).to_json()
    assert a == b


def test_layout_obj_export_shape():
    layout = build_packing(realize_named("hopf"), 1)
    obj = layout.to_obj()
    lines = obj.strip().splitlines()
    assert sum(1 for ln in lines if ln.startswith("o ")) == 4
    assert lines[0] == "o copy0_component1"
    assert all(ln[0] in "ovl" for ln in lines)


# ---------------------------------------------------------------------------
# gadget routing geometry


def test_gadget_boundary_stacking_is_lexicographic():
    """Entering a crossing square, the 2^r copies stack top to bottom in
    binary-word order on each edge: the over block on its own edge, the
    under block on its own edge, both descending in z."""
    real = realize_named("hopf")
    layout = build_packing(real, 2)
    site = real.sites[0]
    to_local = local_frame(site)
    G = site.half_extent

    over_z = [
        entry_depth(layout.curve(w, site.over_component), to_local, 1, -G, G)
        for w in range(4)
    ]
    under_z = [
        entry_depth(layout.curve(w, site.under_component), to_local, 0, -G, G)
        for w in range(4)
    ]
    # words 00, 01, 10, 11 from top to bottom, on both edges
    assert over_z == sorted(over_z, reverse=True)
    assert under_z == sorted(under_z, reverse=True)
    delta = as_q(layout.epsilon) / (1 << 3)
    assert over_z == [-(w + 1) * delta for w in range(4)]
    assert under_z == over_z


def test_bit_pattern_controls_dip_count():
    """Copy w makes exactly one excursion below cruise depth per set bit
    per crossing role; the all-zeros copy never leaves its band."""
    real = realize_named("hopf")
    r = 2
    layout = build_packing(real, r)
    eps = as_q(layout.epsilon)
    delta = eps / (1 << (r + 1))
    for w in range(1 << r):
        ones = bin(w).count("1")
        cruise = -(w + 1) * delta
        for comp in (1, 2):
            below = [p for p in layout.curve(w, comp).points if p[2] < cruise]
            # two sweep vertices at the over role plus two dip vertices at
            # the under role, per set bit
            assert len(below) == 4 * ones
            if ones:
                assert min(p[2] for p in below) == cruise - 6 * eps
            else:
                assert not below


def test_routing_depths_never_collide_across_copies():
    real = realize_named("borromean")
    layout = build_packing(real, 2)
    for comp in (1, 2, 3):
        floors = [min(p[2] for p in layout.curve(w, comp).points) for w in range(4)]
        assert len(set(floors)) == 4


# ---------------------------------------------------------------------------
# fiber families


def test_two_fibers_link_once():
    curves = hopf_fiber_embedding(2, samples=64)
    assert abs(linking_number(curves[1], curves[2])) == 1


def test_four_fibers_pairwise_linking_uniform():
    curves = hopf_fiber_embedding(4, samples=64)
    values = {
        linking_number(curves[i], curves[j])
        for i, j in itertools.combinations(sorted(curves), 2)
    }
    assert len(values) == 1
    assert values.pop() in (-1, 1)


def test_two_fiber_separation_matches_dense_sampling():
    """Exact polyline distance vs a dense float resampling of the same
    two circles; discretization error stays far below one percent."""
    curves = hopf_fiber_embedding(2, samples=96)
    exact = math.sqrt(float(min_distance(curves[1], curves[2])))
    oracle = 0.7351552442619063  # 4096-point dense sampling
    assert abs(exact - oracle) <= 0.01 * oracle


def test_fiber_input_validation():
    with pytest.raises(ValueError):
        hopf_fiber_embedding(0)
    with pytest.raises(ValueError):
        hopf_fiber_embedding(3, samples=4)


def test_fibers_layout_packaging():
    layout = fibers_layout(3, samples=48)
    assert layout.copies == 1
    assert sorted(layout.curves) == [(0, 1), (0, 2), (0, 3)]
    assert layout.pd.num_components == 3


# ---------------------------------------------------------------------------
# braid layout entry point


def test_realize_braid_rejects_bad_letters():
    with pytest.raises(Exception):
        realize_braid(2, [(5, 1)])
