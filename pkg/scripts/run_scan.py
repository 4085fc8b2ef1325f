#!/usr/bin/env python3
"""Run the class-3 parameter scan and write one JSON line per candidate.

Usage: python scripts/run_scan.py --m-max 10 [--step 1] [--free-c3] [--out scan.jsonl]
"""

import argparse
import sys
from fractions import Fraction

from qpolykit.scanner import GridSpec, scan
from qpolykit.serialize import dump_json


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--m-max", default="10")
    parser.add_argument("--m-min", default="2")
    parser.add_argument("--step", default="1")
    parser.add_argument("--free-c3", action="store_true")
    parser.add_argument("--non-genuine", action="store_true")
    parser.add_argument("--out", default=None)
    args = parser.parse_args()

    spec = GridSpec(
        m_max=Fraction(args.m_max),
        m_min=Fraction(args.m_min),
        step=Fraction(args.step),
        genuine=not args.non_genuine,
        free_c3=args.free_c3,
    )
    result = scan(spec)
    sink = open(args.out, "w") if args.out else sys.stdout
    try:
        for rec in result.records:
            print(dump_json(rec.to_json_dict()), file=sink)
    finally:
        if args.out:
            sink.close()
    print(dump_json({"tallies": result.tallies}), file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
