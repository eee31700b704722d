"""Build-and-verify sweep over the reference links and copy word lengths.

Prints one row per (link, r) with the working scale, copy count, build and
verify wall times, and the verdict of every check.  Nonzero exit on any
failure, so this doubles as a slow smoke test for the whole pipeline.

    python3 scripts/packing_sweep.py --names hopf,borromean --r-max 4
"""

import argparse
import sys
import time
from dataclasses import dataclass, field

from linkpack.constructor import build_packing, realize_named
from linkpack.verifier import verify_layout


@dataclass
class SweepConfig:
    names: tuple = ("hopf", "borromean", "whitehead", "trefoil-plus-circle")
    r_values: tuple = (0, 1, 2, 3, 4)
    jobs: int | None = None
    failures: list = field(default_factory=list)


def run_one(cfg, name, r):
    t0 = time.monotonic()
    layout = build_packing(realize_named(name), r)
    t1 = time.monotonic()
    reports = verify_layout(layout, jobs=cfg.jobs)
    t2 = time.monotonic()
    verdicts = []
    for check in sorted(reports):
        rep = reports[check]
        verdicts.append(f"{check}={'ok' if rep.passed else 'FAIL'}")
        if not rep.passed:
            cfg.failures.append((name, r, check, rep.witnesses[:3]))
    print(
        f"{name:22s} r={r} copies={layout.copies:3d} eps={layout.epsilon} "
        f"build={t1 - t0:5.2f}s verify={t2 - t1:6.2f}s  " + " ".join(verdicts)
    )


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--names", default=None, help="comma-separated link names")
    parser.add_argument("--r-max", type=int, default=4)
    parser.add_argument("--jobs", type=int, default=None)
    args = parser.parse_args(argv)

    cfg = SweepConfig(jobs=args.jobs, r_values=tuple(range(args.r_max + 1)))
    if args.names:
        cfg.names = tuple(args.names.split(","))

    for name in cfg.names:
        for r in cfg.r_values:
            run_one(cfg, name, r)

    if cfg.failures:
        print(f"\n{len(cfg.failures)} failing checks:")
        for rec in cfg.failures:
            print("  ", rec)
        return 1
    print("\nall checks passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
