#!/usr/bin/env python3
"""Run every check over the shipped corpus and print a one-line summary each.

Usage: python scripts/verify_corpus.py [--json]
"""

import argparse
import sys
import time

from qpolykit import families, graphs, schemes
from qpolykit.serialize import dump_json


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--json", action="store_true")
    args = parser.parse_args()

    failures = 0
    for name, g in sorted(families.corpus_graphs().items()):
        t0 = time.monotonic()
        row = {"name": name, "n": g.n}
        classification = graphs.classify_regularity(g)
        row["distance_regular"] = classification.distance_regular
        if g.is_regular() and not g.is_complete() and not g.is_empty_graph():
            pair = graphs.pair_bound_all_vertices(g, classification=classification)
            row["pair_bound"] = pair.all_hold
            row["strongly_regular"] = pair.strongly_regular_verdict
            failures += not (pair.all_hold and pair.cross_check_ok)
        if classification.distance_regular and classification.diameter >= 3:
            triple = graphs.triple_bound_graph(g)
            row["triple_bound"] = triple.holds
            row["triple_equality"] = triple.equality
            failures += not triple.holds
        if classification.distance_regular:
            fb = graphs.fundamental_bound(g)
            row["fundamental_tight"] = fb.tight
            failures += not fb.holds
            s = schemes.scheme_from_graph(g)
            orderings = schemes.find_q_orderings(s)
            row["q_orderings"] = len(orderings)
            for qs in orderings:
                failures += not schemes.b1star_spectral_identity(qs)
                dfb = schemes.dual_fundamental_bound(qs)
                failures += not dfb.holds
                if qs.d == 3 and dfb.dual_tight:
                    audit = schemes.class3_dualtight_audit(qs, dfb)
                    row["dual_tight_audit"] = audit.all_passed
                    failures += not audit.all_passed
        row["seconds"] = round(time.monotonic() - t0, 3)
        if args.json:
            print(dump_json(row))
        else:
            print(", ".join(f"{k}={v}" for k, v in row.items()))
    print(f"done, {failures} failures")
    return 2 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
