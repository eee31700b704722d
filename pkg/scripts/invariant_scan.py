"""Invariant survey over the built-in diagram corpus.

For each link: the pairwise linking matrix, then the first multi-index
with a nonvanishing residue invariant up to the probe order.

    python3 scripts/invariant_scan.py --q-max 4
"""

import argparse
import sys
from dataclasses import dataclass

from linkpack.diagram import (
    borromean,
    hopf_link,
    trefoil_plus_circle,
    unlink,
    whitehead,
)
from linkpack.invariants import first_nonvanishing_order, linking_matrix


@dataclass
class ScanConfig:
    q_max: int = 4
    corpus: tuple = (
        ("hopf", hopf_link),
        ("unlink(3)", lambda: unlink(3)),
        ("borromean", borromean),
        ("whitehead", whitehead),
        ("trefoil-plus-circle", trefoil_plus_circle),
    )


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--q-max", type=int, default=4)
    args = parser.parse_args(argv)
    cfg = ScanConfig(q_max=args.q_max)

    for name, build in cfg.corpus:
        pd = build()
        print(f"{name}: {pd.num_components} components, {len(pd.crossings)} crossings")
        for row in linking_matrix(pd):
            print("   ", row)
        first = first_nonvanishing_order(pd, cfg.q_max)
        if first is None:
            print(f"    no nonvanishing invariant up to order {cfg.q_max}")
        else:
            label = ",".join(str(i) for i in first.index)
            print(
                f"    first nonvanishing at ({label}): mu_bar={first.bar} "
                f"(raw {first.raw}, indeterminacy {first.delta})"
            )
    return 0


if __name__ == "__main__":
    sys.exit(main())
