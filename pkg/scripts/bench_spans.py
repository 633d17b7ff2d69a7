#!/usr/bin/env python3
"""Span-size growth benchmark: the exponential family versus the
quadratic pennies-III family.  CSV on stdout."""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from recall_forge.generators import gen_lowerbound, gen_pennies
from recall_forge.seqsets import extract_histories
from recall_forge.span import SpanStats, minimal_span, shuffle_depth


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--family", choices=("lowerbound", "pennies-III"), default="lowerbound")
    parser.add_argument("--n-max", type=int, default=8)
    args = parser.parse_args()

    print("n,histories,span_size,shuffle_depth,subproblems,wall_ms")
    for n in range(1, args.n_max + 1):
        if args.family == "lowerbound":
            seqs = gen_lowerbound(n)
        else:
            seqs = extract_histories(gen_pennies("III", n).structure)
        stats = SpanStats()
        start = time.perf_counter()
        cert = minimal_span(seqs, stats)
        elapsed = (time.perf_counter() - start) * 1000.0
        depth = shuffle_depth(seqs)
        print(f"{n},{len(seqs)},{len(cert.span)},{depth},{stats.subproblems},{elapsed:.1f}")


if __name__ == "__main__":
    main()
