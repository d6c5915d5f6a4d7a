"""Try the orbit-cover argument on every open almost perfect cell (gamma = 0).

Cells listed in catalog.MULTIPLIER_CASES are the ones the tables mark as
excluded; anything else this finds holds only under the multiplier premise
and is reported, not promoted.

    python3 scripts/multiplier_survey.py --nmax 100
"""

import argparse
import json
import sys
import time

from nearperfect import catalog
from nearperfect.multiplier import PREMISE, suggest_multipliers, try_multipliers


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--nmax", type=int, default=100)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args(argv)

    out = []
    for n, p in catalog.table_cells(0, "almost", range(2, args.nmax + 1)):
        row = catalog.status(n, p, 0, "almost")
        if row.status == catalog.EXISTS:
            continue
        known = (n, p) in catalog.MULTIPLIER_CASES
        if row.status == catalog.NOT_EXISTS and not known:
            continue
        t0 = time.perf_counter()
        att = try_multipliers(n, p)
        rec = {
            "n": n,
            "p": p,
            "tried": att.tried or suggest_multipliers(n, p),
            "infeasible_t": att.certificate.extra["t"] if att.certificate else None,
            "in_tables": known,
            "seconds": round(time.perf_counter() - t0, 3),
        }
        out.append(rec)
        if not args.json:
            verdict = f"infeasible for t={rec['infeasible_t']}" if att.certificate else "no certificate"
            print(f"({n},{p}) tried {rec['tried']}: {verdict}{' [tables]' if known else ''}")
    if args.json:
        print(json.dumps({"premise": PREMISE, "cells": out}, indent=1))
    else:
        print(f"premise: {PREMISE}", file=sys.stderr)


if __name__ == "__main__":
    main()
