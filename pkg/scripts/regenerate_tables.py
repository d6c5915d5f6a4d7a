"""Regenerate status tables for n <= 100 and diff them against the golden CSVs.

    python3 scripts/regenerate_tables.py --out tables/
    python3 scripts/regenerate_tables.py --gamma -1 --mode pary --format md
"""

import argparse
import sys
import time
from pathlib import Path

from nearperfect import catalog

ALL = [(g, m) for m in ("pary", "almost") for g in (-2, -1, 0, 1, 2)]
EXT = {"csv": "csv", "md": "md", "json": "json"}


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--gamma", type=int, default=None)
    ap.add_argument("--mode", choices=["pary", "almost"], default=None)
    ap.add_argument("--nmax", type=int, default=100)
    ap.add_argument("--format", choices=sorted(EXT), default="csv")
    ap.add_argument("--out", type=Path, default=None, help="directory for one file per table")
    args = ap.parse_args(argv)

    todo = [(g, m) for g, m in ALL if (args.gamma in (None, g)) and (args.mode in (None, m))]
    emit = {"csv": catalog.to_csv, "md": catalog.to_markdown, "json": catalog.to_json}[args.format]
    hard = 0
    for gamma, mode in todo:
        t0 = time.perf_counter()
        rows = catalog.generate_table(gamma, mode, range(2, args.nmax + 1))
        counts = {s: sum(r.status == s for r in rows) for s in (catalog.EXISTS, catalog.NOT_EXISTS, catalog.OPEN)}
        line = f"gamma={gamma:+d} {mode:6s} rows={len(rows):3d} " + " ".join(f"{k}={v}" for k, v in counts.items())
        if (gamma, mode) in catalog.GOLDEN_FILES:
            gold = [g for g in catalog.load_golden(gamma, mode) if g["n"] <= args.nmax]
            rep = catalog.diff_against_golden(rows, gold)
            hard += len(rep.hard)
            line += f" | golden: {rep.summary()}"
        print(line + f" ({time.perf_counter() - t0:.2f}s)", file=sys.stderr)
        text = emit(rows)
        if args.out is not None:
            args.out.mkdir(parents=True, exist_ok=True)
            name = f"{mode}_gamma_{'m' if gamma < 0 else ''}{abs(gamma)}.{EXT[args.format]}"
            (args.out / name).write_text(text)
        elif len(todo) == 1:
            sys.stdout.write(text)
    return 1 if hard else 0


if __name__ == "__main__":
    sys.exit(main())
