"""Blow up each catalogue module and compare with the graph prediction.

For every entry prints the residual singularities found on the charts, the
ones predicted by contracting all curves but the entry's node, and the
exceptional multiplicity next to the fundamental-cycle coefficient.
"""

import argparse
import time

from mcmflop.blowup import HypersurfaceSingularity, exceptional_fibre, rees_charts, singularity_labels, villamayor_ideal
from mcmflop.catalogue import load_catalogue
from mcmflop.graph import builtin, residual_singularities, wunram_table


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--label", help="only entries of this type, e.g. A3")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    mismatches = 0
    print(f"{'entry':8} {'rank':>4} {'mult':>4} {'cycle':>5}  {'charts':18} {'graph':18} time")
    for e in load_catalogue():
        if args.label and e.label != args.label:
            continue
        t0 = time.perf_counter()
        X = HypersurfaceSingularity.of(e.M.f)
        charts = rees_charts(villamayor_ideal(e.M, X), X)
        got = singularity_labels(charts)
        mult = exceptional_fibre(charts, seed=args.seed).generic_multiplicity
        G = builtin(e.label)
        want = list(residual_singularities(G, [e.node]).residual)
        coeff = dict(wunram_table(G))[e.node]
        bad = got != want or not (mult == e.rank == coeff)
        mismatches += bad
        print(
            f"{e.name:8} {e.rank:>4} {mult:>4} {coeff:>5}  {','.join(got) or '-':18} {','.join(want) or '-':18}"
            f" {time.perf_counter() - t0:.2f}s{'  MISMATCH' if bad else ''}"
        )
    return 1 if mismatches else 0


if __name__ == "__main__":
    raise SystemExit(main())
