"""Link invariants from group expansions, plus exact-arithmetic
construction and verification of packed link families.

The package splits into a combinatorial half (planar diagram codes,
Wirtinger presentations, Magnus expansions, Milnor-style invariants) and
a geometric half (rational-coordinate realizations, stacked-copy packing
layouts, and the verifier battery that certifies them).  ``linking_number``
here is the diagram-level count; the polyline version lives in
:mod:`linkpack.verifier` and is re-exported as ``polyline_linking_number``.
"""

from .magnus import (
    Truncation,
    TruncatedPolynomial,
    Word,
    commutator,
    expansion,
    lcs_depth,
    series_coefficient,
)
from .diagram import (
    DiagramError,
    PDCode,
    borromean,
    braid_closure,
    hopf_fibers_diagram,
    hopf_link,
    longitude,
    parse_pd,
    reduced_longitude,
    trefoil,
    trefoil_plus_circle,
    unlink,
    whitehead,
    wirtinger,
)
from .invariants import (
    MilnorValue,
    delta,
    first_nonvanishing_order,
    homotopy_nontriviality_certificate,
    invariant_report,
    linking_matrix,
    linking_number,
    mu,
    mu_bar,
)
from .geometry import Polyline3, as_q, parse_q, q_str, rationalize
from .constructor import (
    CrossingSite,
    LayoutError,
    PackingLayout,
    Realization,
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
from .verifier import (
    FaceSequence,
    IntersectionError,
    TileGrid,
    VerificationReport,
    VerifyError,
    census_csv,
    check_separation,
    check_thickness,
    check_layout_thickness,
    check_topology,
    coloring_injectivity,
    corrupt_duplicate_copy,
    corrupt_label_swap,
    face_sequence,
    fit_grid,
    min_distance,
    report_json,
    separation_ratio_experiment,
    tiling_coloring,
    verify_layout,
)
from .verifier import linking_number as polyline_linking_number

__version__ = "0.1.0"

__all__ = [
    "Truncation",
    "TruncatedPolynomial",
    "Word",
    "commutator",
    "expansion",
    "lcs_depth",
    "series_coefficient",
    "DiagramError",
    "PDCode",
    "borromean",
    "braid_closure",
    "hopf_fibers_diagram",
    "hopf_link",
    "longitude",
    "parse_pd",
    "reduced_longitude",
    "trefoil",
    "trefoil_plus_circle",
    "unlink",
    "whitehead",
    "wirtinger",
    "MilnorValue",
    "delta",
    "first_nonvanishing_order",
    "homotopy_nontriviality_certificate",
    "invariant_report",
    "linking_matrix",
    "linking_number",
    "mu",
    "mu_bar",
    "Polyline3",
    "as_q",
    "parse_q",
    "q_str",
    "rationalize",
    "CrossingSite",
    "LayoutError",
    "PackingLayout",
    "Realization",
    "build_packing",
    "feasible_epsilon",
    "fibers_layout",
    "gadget_capacity",
    "hopf_fiber_embedding",
    "plan_gadget",
    "realize_braid",
    "realize_diagram",
    "realize_named",
    "FaceSequence",
    "IntersectionError",
    "TileGrid",
    "VerificationReport",
    "VerifyError",
    "census_csv",
    "check_separation",
    "check_thickness",
    "check_layout_thickness",
    "check_topology",
    "coloring_injectivity",
    "corrupt_duplicate_copy",
    "corrupt_label_swap",
    "face_sequence",
    "fit_grid",
    "min_distance",
    "polyline_linking_number",
    "report_json",
    "separation_ratio_experiment",
    "tiling_coloring",
    "verify_layout",
    "__version__",
]
