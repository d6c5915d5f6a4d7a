"""Existence facts, stored evidence and status tables.

Status precedence for a cell ``(n, p, gamma, mode)``: a construction fact or
stored witness gives ``Exists``; otherwise the exclusion pipeline, an
external non-existence fact, a stored multiplier argument or a stored
exhaustive search gives ``NotExists``; otherwise the cell is ``Open``. A
cell with both kinds of evidence is an error.

Almost rows are keyed by the number ``n`` of nonzero entries (period
``n + 1``).
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Callable, Iterable, Optional

from .exclusion import ALMOST, PARY, Certificate, full_exclusion
from .multiplier import prove_nonexistence_by_multiplier
from .numtheory import is_prime, is_prime_power, prime_divisors
from .sequence import Sequence, is_nps

EXISTS, NOT_EXISTS, OPEN = "Exists", "NotExists", "Open"


class ConsistencyError(RuntimeError):
    pass


@dataclass(frozen=True)
class ConstructionFact:
    """A family of cells whose status is known from the literature.

    ``exists=False`` marks an external non-existence result; the artifact
    does not re-derive those and labels them ``external``.
    """

    mode: str
    gamma: int
    predicate: Callable[[int, int], bool] = field(compare=False)
    provenance: str
    description: str
    exists: bool = True
    external: bool = False

    def applies(self, n: int, p: int, gamma: int, mode: str) -> bool:
        return mode == self.mode and gamma == self.gamma and self.predicate(n, p)


def _is_power_of(x: int, p: int) -> bool:
    if x < p:
        return False
    while x % p == 0:
        x //= p
    return x == 1


# binary cells of the cited binary-sequence results, listed explicitly
_BINARY_M1_EXISTS = frozenset({3, 7, 11, 15, 19, 23, 31, 35, 43, 47, 59, 67, 71, 79, 83, 99})
_BINARY_M1_NOT = frozenset({73})


def construction_facts() -> list[ConstructionFact]:
    return [
        ConstructionFact(
            PARY, 0, lambda n, p: p > 2 and is_prime(p) and n in (p, p * p),
            "exists by [pott1995, MaSc1995]", "n = p or n = p^2, p odd",
        ),
        ConstructionFact(
            PARY, -1, lambda n, p: p == 2 and n in _BINARY_M1_EXISTS,
            "exists by [JuPo99, Corollary 2.8]", "binary cells listed in the cited work",
            external=True,
        ),
        ConstructionFact(
            PARY, -1, lambda n, p: p == 2 and n in _BINARY_M1_NOT,
            "not exists by [JuPo99, Corollary 2.8]", "binary cells listed in the cited work",
            exists=False, external=True,
        ),
        ConstructionFact(
            PARY, -1, lambda n, p: is_prime(p) and _is_power_of(n + 1, p),
            "exists by [HK1998]", "n + 1 a power of p",
        ),
        ConstructionFact(
            ALMOST, 0, lambda n, p: p > 2 and is_prime_power(n) and (n - 1) % p == 0,
            "exists by [pott1995, Theorem 2.2.12]", "n a prime power, p | n - 1, p odd",
        ),
        ConstructionFact(
            ALMOST, -1, lambda n, p: is_prime(n + 1) and n % p == 0,
            "exists by [CTZ2010, Example 3]", "n + 1 prime, p | n",
        ),
        ConstructionFact(
            ALMOST, -1, lambda n, p: n == p and p > 2 and is_prime(p),
            "not exists by [CTZ2010, Theorem 7]", "n = p, an odd prime",
            exists=False, external=True,
        ),
    ]


def _data(*parts) -> str:
    return resources.files("nearperfect").joinpath("data", *parts).read_text()


@dataclass(frozen=True)
class StoredWitness:
    n: int
    p: int
    gamma: int
    mode: str
    sequence: Sequence
    provenance: str


@dataclass(frozen=True)
class StoredSearch:
    n: int
    p: int
    gamma: int
    mode: str
    s: int
    space_size: int
    nodes: int
    long: bool


@lru_cache(maxsize=None)
def stored_witnesses() -> tuple[StoredWitness, ...]:
    out = []
    for r in json.loads(_data("certificates", "witnesses.json")):
        text = r["sequence"]
        seq = Sequence.from_text(f"p={r['p']} n={len(text.split(','))}\n{text}")
        if not is_nps(seq, r["gamma"]):
            raise ConsistencyError(f"stored witness for {r} fails the sequence test")
        out.append(StoredWitness(r["n"], r["p"], r["gamma"], r["mode"], seq, r["provenance"]))
    return tuple(out)


@lru_cache(maxsize=None)
def stored_searches() -> tuple[StoredSearch, ...]:
    return tuple(
        StoredSearch(r["n"], r["p"], r["gamma"], r["mode"], r["s"], r["space_size"], r["nodes"], r["long"])
        for r in json.loads(_data("certificates", "searches.json"))
    )


# almost perfect (gamma = 0) cells settled by a multiplier argument, with the t used
MULTIPLIER_CASES = {(91, 3): 13, (63, 31): 3, (92, 7): 2, (93, 23): 3}


@lru_cache(maxsize=None)
def multiplier_certificate(n: int, p: int) -> Optional[Certificate]:
    t = MULTIPLIER_CASES.get((n, p))
    return None if t is None else prove_nonexistence_by_multiplier(n, p, t)


@dataclass
class StatusRow:
    n: int
    p: int
    gamma: int
    mode: str
    status: str
    reason: str = ""
    certificate: Optional[Certificate] = None
    witness: Optional[Sequence] = None

    def key(self) -> tuple:
        return (self.n, self.p, self.gamma, self.mode)

    def to_dict(self) -> dict:
        d = {
            "n": self.n,
            "p": self.p,
            "gamma": self.gamma,
            "mode": self.mode,
            "status": self.status,
            "reason": self.reason,
        }
        if self.certificate is not None:
            d["certificate"] = self.certificate.to_dict()
        if self.witness is not None:
            d["witness"] = str(self.witness)
        return d


def _existence(n, p, gamma, mode) -> Optional[StatusRow]:
    for w in stored_witnesses():
        if (w.n, w.p, w.gamma, w.mode) == (n, p, gamma, mode):
            return StatusRow(n, p, gamma, mode, EXISTS, w.provenance, witness=w.sequence)
    for f in construction_facts():
        if f.exists and f.applies(n, p, gamma, mode):
            return StatusRow(n, p, gamma, mode, EXISTS, f.provenance)
    return None


def _nonexistence(n, p, gamma, mode) -> list[tuple[str, Optional[Certificate]]]:
    found = []
    cert = full_exclusion(n, p, gamma, mode, 1)
    if cert is not None:
        found.append((cert.narrative, cert))
    for f in construction_facts():
        if not f.exists and f.applies(n, p, gamma, mode):
            found.append((f.provenance, Certificate("External", narrative=f.provenance)))
    if mode == ALMOST and gamma == 0:
        mc = multiplier_certificate(n, p)
        if mc is not None:
            found.append((mc.narrative, mc))
    for s in stored_searches():
        if (s.n, s.p, s.gamma, s.mode) == (n, p, gamma, mode):
            text = "not exists by an exhaustive search"
            found.append((text, Certificate("ExhaustiveSearch", narrative=text, extra={"nodes": s.nodes})))
    return found


def status(n: int, p: int, gamma: int, mode: str) -> StatusRow:
    """Status of one cell; raises :class:`ConsistencyError` on conflicting evidence."""
    if mode not in (PARY, ALMOST):
        raise ValueError(f"unknown mode {mode!r}")
    yes = _existence(n, p, gamma, mode)
    no = _nonexistence(n, p, gamma, mode)
    if yes is not None and no:
        raise ConsistencyError(f"{(n, p, gamma, mode)}: {yes.reason!r} versus {no[0][0]!r}")
    if yes is not None:
        return yes
    if no:
        reason, cert = no[0]
        return StatusRow(n, p, gamma, mode, NOT_EXISTS, reason, certificate=cert)
    return StatusRow(n, p, gamma, mode, OPEN)


def table_cells(gamma: int, mode: str, n_range: Iterable[int]) -> list[tuple[int, int]]:
    """``(n, p)`` with ``|gamma| < n`` and ``p`` a prime divisor of ``n - gamma``
    (p-ary) or ``n - gamma - 1`` (almost). A zero target lists no primes."""
    cells = []
    for n in n_range:
        if not abs(gamma) < n:
            continue
        target = n - gamma if mode == PARY else n - gamma - 1
        for p in prime_divisors(target):
            cells.append((n, p))
    return cells


def generate_table(gamma: int, mode: str, n_range: Iterable[int] = range(2, 101)) -> list[StatusRow]:
    return [status(n, p, gamma, mode) for n, p in table_cells(gamma, mode, n_range)]


# golden data


GOLDEN_FILES = {
    (-1, PARY): "pary_gamma_m1.csv",
    (-1, ALMOST): "almost_gamma_m1.csv",
    (1, ALMOST): "almost_gamma_1.csv",
    (2, ALMOST): "almost_gamma_2.csv",
}


def read_golden_text(text: str) -> list[dict]:
    rows = csv.DictReader(line for line in text.splitlines() if line and not line.startswith("#"))
    out = []
    for r in rows:
        out.append(
            {
                "n": int(r["n"]),
                "p": int(r["p"]),
                "gamma": int(r["gamma"]),
                "mode": r["mode"],
                "status": r["status"],
                "reason": r["reason"],
            }
        )
    return out


def load_golden(gamma: int, mode: str) -> list[dict]:
    name = GOLDEN_FILES.get((gamma, mode))
    if name is None:
        raise FileNotFoundError(f"no golden table for gamma={gamma}, mode={mode}")
    return read_golden_text(_data("golden", name))


def load_prose_lists() -> dict:
    return json.loads(_data("golden", "prose_lists.json"))


@dataclass
class DiffEntry:
    n: int
    p: int
    ours: str
    golden: str
    severity: str  # "hard" or "informational"
    ours_reason: str = ""
    golden_reason: str = ""


@dataclass
class DiffReport:
    entries: list[DiffEntry]

    @property
    def hard(self) -> list[DiffEntry]:
        return [e for e in self.entries if e.severity == "hard"]

    @property
    def informational(self) -> list[DiffEntry]:
        return [e for e in self.entries if e.severity == "informational"]

    def summary(self) -> str:
        return f"{len(self.hard)} disagreements, {len(self.informational)} informational differences"


def diff_against_golden(table: list[StatusRow], golden: list[dict]) -> DiffReport:
    """Status mismatches and missing cells are hard; differing reasons for
    the same status are informational."""
    ours = {(r.n, r.p): r for r in table}
    theirs = {(g["n"], g["p"]): g for g in golden}
    entries = []
    for key in sorted(set(ours) | set(theirs)):
        o, g = ours.get(key), theirs.get(key)
        if o is None or g is None:
            entries.append(
                DiffEntry(
                    key[0], key[1],
                    o.status if o else "missing", g["status"] if g else "missing", "hard",
                    o.reason if o else "", g["reason"] if g else "",
                )
            )
        elif o.status != g["status"]:
            entries.append(DiffEntry(key[0], key[1], o.status, g["status"], "hard", o.reason, g["reason"]))
        elif o.reason != g["reason"]:
            entries.append(DiffEntry(key[0], key[1], o.status, g["status"], "informational", o.reason, g["reason"]))
    return DiffReport(entries)


# emitters


_COLUMNS = ("n", "p", "gamma", "mode", "status", "reason")


def to_csv(rows: list[StatusRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(_COLUMNS)
    for r in rows:
        w.writerow([r.n, r.p, r.gamma, r.mode, r.status, r.reason])
    return buf.getvalue()


def to_markdown(rows: list[StatusRow]) -> str:
    lines = ["| n | p | status |", "|---|---|---|"]
    last_n = None
    for r in rows:
        cell = r.reason if r.reason else ""
        if r.status == OPEN:
            cell = ""
        lines.append(f"| {r.n if r.n != last_n else ''} | {r.p} | {cell} |")
        last_n = r.n
    return "\n".join(lines) + "\n"


def to_json(rows: list[StatusRow]) -> str:
    return json.dumps([r.to_dict() for r in rows], indent=1, sort_keys=True) + "\n"
