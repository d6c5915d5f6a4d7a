"""Command-line entry point: ``nearperfect <subcommand>`` or ``python3 -m nearperfect``.

Exit codes: 0 decided or success, 2 open or negative answer, 1 error.
Machine output goes to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import json
import os
import sys
from pathlib import Path

import click

from . import catalog
from .exclusion import ALMOST, PARY, full_exclusion
from .groupring import sequence_to_dpds, to_json as dpds_json, verify_dpds
from .multiplier import orbits as orbit_partition
from .multiplier import prove_nonexistence_by_multiplier, suggest_multipliers, try_multipliers
from .search import SearchSpec, search as run_search
from .sequence import autocorrelation, is_nps, load_sequence

EXIT_OK, EXIT_ERROR, EXIT_OPEN = 0, 1, 2

MODE = click.Choice([PARY, ALMOST])
FORMAT = click.Choice(["json", "csv", "md", "text"])


def _emit(obj, fmt: str, text: str | None = None) -> None:
    if fmt == "json":
        click.echo(json.dumps(obj, sort_keys=True))
    else:
        click.echo(text if text is not None else json.dumps(obj, sort_keys=True))


def _read_seq(path: str):
    return load_sequence(Path(path).read_text())


@click.group()
def main():
    """Nearly perfect (almost) p-ary sequences."""


@main.command()
@click.argument("seqfile", type=click.Path(exists=True, dir_okay=False))
@click.option("--gamma", type=int, required=True)
@click.option("--format", "fmt", type=FORMAT, default="text")
def check(seqfile, gamma, fmt):
    """Is the sequence in SEQFILE nearly perfect of type GAMMA?"""
    seq = _read_seq(seqfile)
    ok = is_nps(seq, gamma)
    _emit({"nps": ok, "gamma": gamma}, fmt, f"NPS: {str(ok).lower()}")
    sys.exit(EXIT_OK if ok else EXIT_OPEN)


@main.command()
@click.argument("seqfile", type=click.Path(exists=True, dir_okay=False))
@click.option("--format", "fmt", type=FORMAT, default="text")
def autocorr(seqfile, fmt):
    """Print C(t) for t = 0 .. period-1."""
    seq = _read_seq(seqfile)
    prof = autocorrelation(seq)
    if fmt == "json":
        _emit({"p": seq.p, "values": [list(v.coeffs) for v in prof]}, fmt)
    elif fmt == "csv":
        click.echo("t,value")
        for t, v in enumerate(prof):
            click.echo(f"{t},{v}")
    else:
        for t, v in enumerate(prof):
            click.echo(f"C({t}) = {v}")


@main.command()
@click.option("--n", type=int, required=True)
@click.option("--p", type=int, required=True)
@click.option("--gamma", type=int, required=True)
@click.option("--mode", type=MODE, default=PARY)
@click.option("--s", type=int, default=1, help="number of zeros (almost mode)")
@click.option("--format", "fmt", type=FORMAT, default="json")
def exclude(n, p, gamma, mode, s, fmt):
    """Run the non-existence rules; prints a certificate if one applies."""
    cert = full_exclusion(n, p, gamma, mode, s)
    if cert is None and not abs(gamma) < n:
        raise ValueError(f"the criteria need |gamma| < n, got n={n}, gamma={gamma}")
    if cert is None:
        _emit({"certificate": None}, fmt, "no rule applies")
        sys.exit(EXIT_OPEN)
    _emit(cert.to_dict(), fmt, cert.narrative)


@main.command()
@click.argument("seqfile", type=click.Path(exists=True, dir_okay=False))
@click.option("--gamma", type=int, required=True)
@click.option("--format", "fmt", type=FORMAT, default="json")
def dpds(seqfile, gamma, fmt):
    """Convert a sequence to its difference set and verify it."""
    seq = _read_seq(seqfile)
    R, params = sequence_to_dpds(seq, gamma)
    res = verify_dpds(R, params)
    d = json.loads(dpds_json(R, params))
    d["verified"] = res.ok
    d["violations"] = [list(map(str, v)) for v in res.violations]
    _emit(d, fmt, f"DPDS {params.as_tuple()}: {str(res.ok).lower()}")
    sys.exit(EXIT_OK if res.ok else EXIT_OPEN)


@main.command()
@click.option("--m", type=int, required=True)
@click.option("--p", type=int, required=True)
@click.option("--t", type=int, required=True)
@click.option("--format", "fmt", type=FORMAT, default="text")
def orbits(m, p, t, fmt):
    """Orbits of Z_m x Z_p under x -> t x."""
    os_ = orbit_partition(m, p, t)
    if fmt == "json":
        _emit({"census": {str(k): v for k, v in os_.census().items()}, "orbits": os_.orbits}, fmt)
    else:
        click.echo(os_.render(), nl=False)


@main.command()
@click.option("--n", type=int, required=True)
@click.option("--p", type=int, required=True)
@click.option("--t", type=int, default=None, help="multiplier; default tries the suggested list")
@click.option("--format", "fmt", type=FORMAT, default="json")
def multiplier(n, p, t, fmt):
    """Orbit-cover argument for an almost p-ary perfect sequence."""
    if t is not None:
        cert = prove_nonexistence_by_multiplier(n, p, t)
        tried = [t]
    else:
        att = try_multipliers(n, p)
        cert, tried = att.certificate, att.tried
    out = {"n": n, "p": p, "tried": tried, "certificate": cert.to_dict() if cert else None}
    _emit(out, fmt, cert.narrative if cert else f"Open (tried t in {tried or suggest_multipliers(n, p)})")
    sys.exit(EXIT_OK if cert else EXIT_OPEN)


@main.command()
@click.option("--n", type=int, required=True, help="number of nonzero entries")
@click.option("--p", type=int, required=True)
@click.option("--gamma", type=int, required=True)
@click.option("--mode", type=MODE, default=PARY)
@click.option("--s", type=int, default=1, help="number of zeros (almost mode)")
@click.option("--limit", type=int, default=None, help="maximum search nodes")
@click.option("--time-limit", type=float, default=None, help="maximum seconds")
@click.option("--threads", type=int, default=None, help="worker threads (default NPS_THREADS or 1)")
@click.option("--format", "fmt", type=FORMAT, default="json")
def search(n, p, gamma, mode, s, limit, time_limit, threads, fmt):
    """Exhaustive search for a witness."""
    width = threads or int(os.environ.get("NPS_THREADS", "1"))
    spec = SearchSpec(n, p, gamma, s if mode == ALMOST else 0, limit, time_limit, width)

    def progress(info):
        click.echo(
            f"blocks {info['blocks_done']}/{info['blocks']} nodes {info['nodes']} "
            f"({info['nodes_per_sec']:.0f}/s)",
            err=True,
        )

    res = run_search(spec, progress=progress)
    text = res.outcome if res.witness is None else f"Witness: {res.witness}"
    _emit(res.to_dict(), fmt, text)
    sys.exit(EXIT_OPEN if res.outcome == "Aborted" else EXIT_OK)


@main.command()
@click.option("--gamma", type=int, required=True)
@click.option("--mode", type=MODE, default=PARY)
@click.option("--nmin", type=int, default=2)
@click.option("--nmax", type=int, default=100)
@click.option("--diff", "golden", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--format", "fmt", type=FORMAT, default="csv")
def table(gamma, mode, nmin, nmax, golden, fmt):
    """Regenerate a status table, optionally diffing against a golden CSV."""
    rows = catalog.generate_table(gamma, mode, range(nmin, nmax + 1))
    if golden is None:
        out = {"csv": catalog.to_csv, "md": catalog.to_markdown, "json": catalog.to_json}.get(fmt, catalog.to_csv)(rows)
        click.echo(out, nl=False)
        return
    gold = [g for g in catalog.read_golden_text(Path(golden).read_text()) if nmin <= g["n"] <= nmax]
    rep = catalog.diff_against_golden(rows, gold)
    if fmt == "json":
        _emit(
            {
                "disagreements": len(rep.hard),
                "informational": len(rep.informational),
                "entries": [e.__dict__ for e in rep.entries],
            },
            fmt,
        )
    else:
        for e in rep.hard:
            click.echo(f"n={e.n} p={e.p}: ours {e.ours}, golden {e.golden}", err=True)
        click.echo(rep.summary())
    sys.exit(EXIT_OK if not rep.hard else EXIT_ERROR)


def run(argv=None) -> int:
    """Invoke the CLI and return the exit code instead of exiting."""
    try:
        main.main(args=argv, prog_name="nearperfect", standalone_mode=False)
    except SystemExit as e:
        return int(e.code or 0)
    except click.ClickException as e:
        e.show()
        return EXIT_ERROR
    except click.exceptions.Abort:
        return EXIT_ERROR
    except (ValueError, FileNotFoundError) as e:
        click.echo(f"error: {e}", err=True)
        return EXIT_ERROR
    return EXIT_OK


def entry() -> None:
    sys.exit(run())
