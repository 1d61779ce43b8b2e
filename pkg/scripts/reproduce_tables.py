#!/usr/bin/env python3
"""Recompute both reference tables by brute force and diff against goldens.

Exit status follows the CLI contract: 0 all rows match, 2 on any mismatch.
"""

import argparse
import sys

from stacksorting.cli import main


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n-max", type=int, default=9)
    parser.add_argument("--jobs", type=int, default=1)
    args = parser.parse_args()

    worst = 0
    for table in ("sortable", "max-fertility"):
        print(f"== {table} ==")
        code = main(["reproduce", table, "--n-max", str(args.n_max),
                     "--jobs", str(args.jobs)])
        worst = max(worst, code)
        print()
    sys.exit(worst)
