"""Run a batch of exhaustive searches with progress on stderr.

    python3 scripts/run_search.py                 # the short table rows
    NPS_THREADS=4 python3 scripts/run_search.py --long
    python3 scripts/run_search.py --row 17,3,2,pary
"""

import argparse
import json
import sys

from nearperfect.search import SearchSpec, default_threads, search

SHORT = [
    (5, 3, 2, "pary"), (17, 3, 2, "pary"), (9, 7, 2, "pary"),
    (8, 2, 1, "almost"), (8, 3, 1, "almost"), (9, 7, 1, "almost"), (14, 3, 1, "almost"),
    (18, 2, 1, "almost"), (9, 3, 2, "almost"), (12, 3, 2, "almost"), (21, 3, 2, "almost"),
]
LONG = [(27, 2, -1, "pary"), (32, 2, 1, "almost"), (27, 2, 2, "almost")]


def _row(text):
    n, p, g, mode = text.split(",")
    return int(n), int(p), int(g), mode


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--long", action="store_true")
    ap.add_argument("--row", type=_row, action="append", default=None)
    ap.add_argument("--time-limit", type=float, default=None)
    args = ap.parse_args(argv)

    rows = args.row or (SHORT + (LONG if args.long else []))
    width = default_threads()
    for n, p, g, mode in rows:
        spec = SearchSpec(n, p, g, 1 if mode == "almost" else 0, max_wall_time=args.time_limit, parallel_width=width)

        def progress(info, tag=(n, p, g, mode)):
            if info["blocks_done"] % 16 == 0 or info["blocks_done"] == info["blocks"]:
                print(f"  {tag} {info['blocks_done']}/{info['blocks']} blocks, {info['nodes']} nodes", file=sys.stderr)

        res = search(spec, progress=progress)
        rec = {"n": n, "p": p, "gamma": g, "mode": mode, **res.to_dict()}
        print(json.dumps(rec, sort_keys=True))


if __name__ == "__main__":
    main()
