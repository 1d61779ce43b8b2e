#!/usr/bin/env python3
"""Run every conjecture probe at its desk-scale bound; one JSON verdict per line.

A verdict with holds=false is a scientific result, not a failure; the exit
status is 0 either way.
"""

import argparse
import json
import time

from stacksorting.dynamics import run_conjecture

DEFAULT_BOUNDS = {
    "fine-transform": 9,
    "2n-4": 8,
    "general-periodic": 7,
    "fertility-spectrum": 8,
    "vn-limit": 7,
}


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--name", choices=sorted(DEFAULT_BOUNDS), default=None,
                        help="run a single probe instead of all five")
    parser.add_argument("--n", type=int, default=None,
                        help="override the probe's default bound")
    args = parser.parse_args()

    names = [args.name] if args.name else list(DEFAULT_BOUNDS)
    for name in names:
        n = args.n if args.n is not None else DEFAULT_BOUNDS[name]
        t0 = time.perf_counter()
        report = run_conjecture(name, n)
        payload = report.payload()
        payload["elapsed_ms"] = round((time.perf_counter() - t0) * 1000.0, 3)
        print(json.dumps(payload, sort_keys=True))
