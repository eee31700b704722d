"""Command-line front end: invariants, construction, verification, exports.

Exit codes: 0 success / all checks passed, 1 a verification check failed
(the report carries the witness), 2 usage or input error.  All output is
deterministic; identical invocations write identical bytes.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .diagram import (
    DiagramError,
    borromean,
    hopf_fibers_diagram,
    hopf_link,
    parse_pd,
    trefoil,
    trefoil_plus_circle,
    unlink,
    whitehead,
)
from .invariants import first_nonvanishing_order, invariant_report, mu, mu_bar
from .magnus import Truncation, Word, expansion
from .constructor import (
    LayoutError,
    PackingLayout,
    build_packing,
    fibers_layout,
    realize_diagram,
    realize_named,
)
from .geometry import parse_q
from .verifier import (
    IntersectionError,
    VerifyError,
    census_csv,
    coloring_injectivity,
    report_json,
    separation_ratio_experiment,
    tiling_coloring,
    verify_layout,
)

_DIAGRAMS = {
    "hopf": hopf_link,
    "trefoil": trefoil,
    "borromean": borromean,
    "whitehead": whitehead,
    "trefoil-plus-circle": trefoil_plus_circle,
}


def _resolve_pd(spec):
    """Corpus names first (optionally name:n for the parametric families),
    then file paths holding PD text."""
    name, _, arg = spec.partition(":")
    if name in _DIAGRAMS and not arg:
        return _DIAGRAMS[name]()
    if name == "unlink":
        return unlink(int(arg) if arg else 2)
    if name == "hopf-fibers":
        return hopf_fibers_diagram(int(arg) if arg else 3)
    if not os.path.exists(spec):
        raise DiagramError(f"{spec!r} is neither a known link name nor a file")
    with open(spec) as fh:
        return parse_pd(fh.read())


def _resolve_realization(spec):
    name, _, arg = spec.partition(":")
    known = set(_DIAGRAMS) | {"unlink", "hopf-fibers"}
    if name in known:
        return realize_named(name, int(arg) if arg else None)
    return realize_diagram(_resolve_pd(spec))


def _parse_index(text):
    try:
        idx = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise ValueError(f"bad multi-index {text!r}; expected e.g. 1,2,3")
    return idx


def _emit(text, out):
    if out is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(out, "w") as fh:
            fh.write(text)


def _load_layout(path):
    with open(path) as fh:
        try:
            return PackingLayout.from_json(fh.read())
        except (KeyError, TypeError, json.JSONDecodeError) as exc:
            raise LayoutError(f"{path} is not a layout file: {exc}")


# ---------------------------------------------------------------------------
# command bodies


def _cmd_mu(args):
    pd = _resolve_pd(args.pd)
    index = _parse_index(args.index)
    label = ",".join(str(i) for i in index)
    _emit(f"mu({label}) = {mu(pd, index)}", args.out)
    return 0


def _cmd_mubar(args):
    pd = _resolve_pd(args.pd)
    index = _parse_index(args.index)
    v = mu_bar(pd, index)
    label = ",".join(str(i) for i in index)
    _emit(
        f"mu_bar({label}) = {v.bar} (raw {v.raw}, indeterminacy {v.delta})",
        args.out,
    )
    return 0


def _cmd_order(args):
    pd = _resolve_pd(args.pd)
    if args.format == "json":
        _emit(
            json.dumps(invariant_report(pd, args.q_max), indent=2, sort_keys=True),
            args.out,
        )
        return 0
    first = first_nonvanishing_order(pd, args.q_max)
    if first is None:
        _emit(f"no nonvanishing invariant up to order {args.q_max}", args.out)
    else:
        label = ",".join(str(i) for i in first.index)
        _emit(
            f"first nonvanishing order {len(first.index)} at index ({label}): "
            f"mu_bar = {first.bar}",
            args.out,
        )
    return 0


def _cmd_expand(args):
    letters = tuple(int(tok) for tok in args.word.replace(",", " ").split())
    word = Word(args.rank, letters)
    trunc = (
        Truncation.square_free() if args.square_free else Truncation.degree(args.degree)
    )
    _emit(expansion(word, trunc).render(), args.out)
    return 0


def _cmd_construct(args):
    real = _resolve_realization(args.pd)
    eps = parse_q(args.epsilon) if args.epsilon else None
    layout = build_packing(real, args.r, eps)
    _emit(layout.to_obj() if args.format == "obj" else layout.to_json(), args.out)
    return 0


def _cmd_verify(args):
    layout = _load_layout(args.layout)
    s = parse_q(args.tile) if args.tile else None
    try:
        reports = verify_layout(layout, jobs=args.jobs, s=s)
    except IntersectionError as exc:
        _emit(
            json.dumps(
                {"passed": False, "checks": [], "error": str(exc)},
                indent=2,
                sort_keys=True,
            ),
            args.out,
        )
        return 1
    _emit(report_json(reports), args.out)
    return 0 if all(rep.passed for rep in reports.values()) else 1


def _cmd_census(args):
    layout = _load_layout(args.layout)
    s = parse_q(args.tile) if args.tile else None
    _grid, colorings = tiling_coloring(layout, s=s)
    report = coloring_injectivity(colorings, layout.pd.num_components)
    if args.format == "json":
        _emit(json.dumps(report.to_json_obj(), indent=2, sort_keys=True), args.out)
    else:
        _emit(census_csv(report), args.out)
    return 0 if report.passed else 1


def _cmd_lngen(args):
    ns = [int(tok) for tok in args.n_list.split(",")]
    report = separation_ratio_experiment(ns, samples=args.samples, window=args.window)
    if args.format == "json":
        _emit(json.dumps(report.to_json_obj(), indent=2, sort_keys=True), args.out)
    else:
        lines = ["n,sigma,ratio"]
        for row in report.data["rows"]:
            lines.append(f"{row['n']},{row['sigma']!r},{row['ratio']!r}")
        _emit("\n".join(lines) + "\n", args.out)
    return 0 if report.passed else 1


def _cmd_fibers(args):
    layout = fibers_layout(args.n, samples=args.samples)
    _emit(layout.to_obj() if args.format == "obj" else layout.to_json(), args.out)
    return 0


# ---------------------------------------------------------------------------
# wiring


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="linkpack",
        description="Milnor-style link invariants and packed-copy layouts.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(fn=fn)
        p.add_argument("--out", help="write output here instead of stdout")
        return p

    p = add("mu", _cmd_mu, "raw longitude coefficient for a multi-index")
    p.add_argument("--pd", required=True, help="link name or PD file")
    p.add_argument("--index", required=True, help="comma-separated components")

    p = add("mubar", _cmd_mubar, "invariant residue for a multi-index")
    p.add_argument("--pd", required=True, help="link name or PD file")
    p.add_argument("--index", required=True, help="comma-separated components")

    p = add("order", _cmd_order, "first order with a nonvanishing invariant")
    p.add_argument("--pd", required=True, help="link name or PD file")
    p.add_argument("--q-max", type=int, default=4, help="largest order to scan")
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = add("expand", _cmd_expand, "group-ring expansion of a free-group word")
    p.add_argument("--rank", type=int, required=True)
    p.add_argument(
        "word", help="signed letters, e.g. '1 2 -1 -2' for the basic commutator"
    )
    p.add_argument("--degree", type=int, default=4, help="truncation degree")
    p.add_argument(
        "--square-free",
        action="store_true",
        help="work modulo repeated-variable monomials instead of by degree",
    )

    p = add("construct", _cmd_construct, "build a packed layout from a diagram")
    p.add_argument("--pd", required=True, help="link name or PD file")
    p.add_argument("--r", type=int, required=True, help="copy word length")
    p.add_argument("--epsilon", help="routing scale as p/q (default: feasible)")
    p.add_argument("--format", choices=("json", "obj"), default="json")

    p = add("verify", _cmd_verify, "run the full check battery on a layout")
    p.add_argument("layout", help="layout JSON file from construct")
    p.add_argument("--jobs", type=int, default=None, help="worker threads")
    p.add_argument("--tile", help="tile sidelength as p/q (default epsilon/2)")

    p = add("census", _cmd_census, "coloring census for a layout")
    p.add_argument("layout", help="layout JSON file from construct")
    p.add_argument("--tile", help="tile sidelength as p/q (default epsilon/2)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = add("lngen", _cmd_lngen, "fiber-family separation experiment over n")
    p.add_argument("--n-list", default="2,4,9,16,25", help="comma-separated sizes")
    p.add_argument("--samples", type=int, default=96, help="points per fiber")
    p.add_argument("--window", type=float, default=3.0, help="allowed ratio factor")
    p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = add("fibers", _cmd_fibers, "export a great-circle fiber family layout")
    p.add_argument("--n", type=int, required=True, help="number of fibers")
    p.add_argument("--samples", type=int, default=96, help="points per fiber")
    p.add_argument("--format", choices=("json", "obj"), default="json")

    return parser


def run(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.fn(args)
    except (DiagramError, LayoutError, VerifyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
