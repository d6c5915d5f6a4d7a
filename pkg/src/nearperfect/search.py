"""Exhaustive, symmetry-reduced search for (almost) p-ary NPS witnesses.

Symmetries used during the scan: the first nonzero entry is fixed to
exponent 0 (global multiplication by a root of unity), and for almost
sequences one zero is placed at index 0 (cyclic shift). The remaining zero
positions, for ``s >= 2``, are enumerated as combinations. Witnesses are
canonicalised afterwards.
"""

from __future__ import annotations

import itertools
import json
import logging
import math
import os
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .cyclotomic import CycInt
from .groupring import sequence_to_dpds, verify_dpds
from .sequence import Sequence, canonicalize, is_nps

log = logging.getLogger(__name__)

# below this many canonical candidates a single block is used
_SPLIT_THRESHOLD = 10**6
_MAX_COMPOSITIONS = 2 * 10**6


@dataclass
class SearchSpec:
    """``n`` nonzero entries, ``s`` zeros, period ``n + s``."""

    n: int
    p: int
    gamma: int
    s: int = 0
    max_candidates: Optional[int] = None
    max_wall_time: Optional[float] = None
    parallel_width: int = 1
    use_histogram_filter: bool = True

    def __post_init__(self):
        if self.n < 1 or self.s < 0:
            raise ValueError("need n >= 1 and s >= 0")
        if self.max_candidates is not None and self.max_candidates <= 0:
            raise ValueError("max_candidates must be positive")
        if self.max_wall_time is not None and self.max_wall_time <= 0:
            raise ValueError("max_wall_time must be positive")
        if self.parallel_width < 1:
            raise ValueError("parallel_width must be positive")

    @property
    def period(self) -> int:
        return self.n + self.s


@dataclass
class SearchResult:
    outcome: str  # "Witness" | "ExhaustedNone" | "Aborted"
    space_size: int
    nodes: int
    elapsed: float
    witness: Optional[Sequence] = None
    progress: Optional[dict] = None

    def to_dict(self) -> dict:
        d = {
            "outcome": self.outcome,
            "space_size": self.space_size,
            "nodes": self.nodes,
            "elapsed": round(self.elapsed, 3),
        }
        if self.witness is not None:
            d["witness"] = str(self.witness)
            d["witness_p"] = self.witness.p
            d["canonical"] = str(canonicalize(self.witness))
        if self.progress is not None:
            d["progress"] = self.progress
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def zero_patterns(n: int, s: int):
    """Zero index sets: empty, or 0 plus every choice of ``s - 1`` others."""
    if s == 0:
        yield ()
        return
    for rest in itertools.combinations(range(1, n + s), s - 1):
        yield (0,) + rest


def space_size(spec: SearchSpec) -> int:
    return math.comb(spec.period - 1, spec.s - 1) * spec.p ** (spec.n - 1) if spec.s else spec.p ** (spec.n - 1)


def allowed_histograms(n: int, p: int, gamma: int, period: int) -> Optional[np.ndarray]:
    """Exponent histograms ``c`` (sum ``n``) whose element sum has norm
    ``n + (period-1) gamma``; ``None`` if there are too many to list."""
    if math.comb(n + p - 1, p - 1) > _MAX_COMPOSITIONS:
        return None
    target = CycInt.integer(p, n + (period - 1) * gamma)
    out = []
    for cuts in itertools.combinations(range(n + p - 1), p - 1):
        c, prev = [], -1
        for cut in cuts:
            c.append(cut - prev - 1)
            prev = cut
        c.append(n + p - 2 - prev)
        S = CycInt.from_coeffs(p, c)
        if S * S.conj() == target:
            out.append(c)
    return np.array(out, dtype=np.int64).reshape(len(out), p)


def lag_targets(isnz: list[bool], p: int, gamma: int) -> Optional[np.ndarray]:
    """Per-lag final exponent histograms, or ``None`` if some lag cannot
    reach ``gamma`` at all."""
    N = len(isnz)
    H = N // 2
    ftab = np.zeros((H + 1, p), dtype=np.int64)
    for t in range(1, H + 1):
        T = sum(1 for i in range(N) if isnz[i] and isnz[(i + t) % N])
        if (T - gamma) % p:
            return None
        F = (T - gamma) // p
        if F < 0 or F + gamma < 0:
            return None
        ftab[t, :] = F
        ftab[t, 0] = F + gamma
    return ftab


@dataclass
class _Block:
    index: int
    zeros: tuple
    prefix: tuple


def _prefix_length(spec: SearchSpec) -> int:
    free = spec.n - 1
    L = 0
    while spec.p**L < spec.parallel_width:
        L += 1
    if space_size(spec) > _SPLIT_THRESHOLD:
        # enough blocks for wall-clock checks between them
        while spec.p**L < 64 * spec.parallel_width and L < free:
            L += 1
    return min(L, free)


def _blocks(spec: SearchSpec) -> list[_Block]:
    L = _prefix_length(spec)
    out = []
    for zeros in zero_patterns(spec.n, spec.s):
        for prefix in itertools.product(range(spec.p), repeat=L):
            out.append(_Block(len(out), zeros, prefix))
    return out


# nodes per kernel call; limits are checked between calls
_SLICE = 1 << 22


def _run_block(spec, block, ftab_cache, allowed, budget, max_solutions, deadline=None):
    from . import _kernel

    N, p = spec.period, spec.p
    zeros = set(block.zeros)
    isnz = [i not in zeros for i in range(N)]
    key = block.zeros
    if key not in ftab_cache:
        ftab_cache[key] = lag_targets(isnz, p, spec.gamma)
    ftab = ftab_cache[key]
    if ftab is None:
        return _kernel.EXHAUSTED, 0, []
    positions = np.array([i for i in range(N) if isnz[i]], dtype=np.int64)
    use_allowed = allowed is not None
    allowed_arr = allowed if use_allowed else np.zeros((0, p), dtype=np.int64)
    sols = np.zeros((max_solutions, N), dtype=np.int64)
    isnz_arr = np.array(isnz, dtype=np.bool_)
    prefix = np.array(block.prefix, dtype=np.int64)
    state = _kernel.new_state(N, p, len(positions))
    nodes = 0
    while True:
        status, used, found = _kernel.dfs(
            N,
            p,
            isnz_arr,
            positions,
            ftab,
            allowed_arr,
            use_allowed,
            prefix,
            min(_SLICE, budget - nodes),
            max_solutions,
            sols,
            state,
        )
        nodes += used
        if status != _kernel.ABORTED:
            break
        if nodes >= budget or (deadline is not None and time.monotonic() > deadline):
            break
    witnesses = [tuple(None if x < 0 else int(x) for x in sols[i]) for i in range(found)]
    return status, nodes, witnesses


def search(
    spec: SearchSpec,
    progress: Optional[Callable[[dict], None]] = None,
) -> SearchResult:
    """Find the lexicographically first witness in scan order, or prove none
    exists in the reduced space. The outcome does not depend on
    ``parallel_width``; limits yield ``Aborted``, never ``ExhaustedNone``."""
    from . import _kernel

    start = time.monotonic()
    size = space_size(spec)
    allowed = None
    if spec.use_histogram_filter:
        allowed = allowed_histograms(spec.n, spec.p, spec.gamma, spec.period)
        if allowed is not None and len(allowed) == 0:
            return SearchResult("ExhaustedNone", size, 0, time.monotonic() - start)

    blocks = _blocks(spec)
    budget_total = spec.max_candidates if spec.max_candidates is not None else 2**62
    lock = threading.Lock()
    state = {"nodes": 0, "done": 0, "aborted": False, "first_hit": len(blocks)}
    results: dict[int, tuple] = {}
    ftab_cache: dict = {}
    deadline = start + spec.max_wall_time if spec.max_wall_time else None

    def work(block: _Block):
        with lock:
            if block.index > state["first_hit"]:
                return
            if state["aborted"]:
                return
            if deadline is not None and time.monotonic() > deadline:
                state["aborted"] = True
                return
            budget = budget_total - state["nodes"]
            if budget <= 0:
                state["aborted"] = True
                return
        status, nodes, wits = _run_block(spec, block, ftab_cache, allowed, budget, 1, deadline)
        with lock:
            state["nodes"] += nodes
            state["done"] += 1
            results[block.index] = (status, wits)
            if status == _kernel.ABORTED:
                state["aborted"] = True
            elif status == _kernel.FOUND:
                state["first_hit"] = min(state["first_hit"], block.index)
            if progress is not None:
                elapsed = time.monotonic() - start
                progress(
                    {
                        "blocks_done": state["done"],
                        "blocks": len(blocks),
                        "nodes": state["nodes"],
                        "nodes_per_sec": state["nodes"] / elapsed if elapsed > 0 else 0.0,
                    }
                )

    if spec.parallel_width == 1:
        for block in blocks:
            work(block)
            if state["aborted"] or state["first_hit"] < len(blocks):
                break
    else:
        with ThreadPoolExecutor(max_workers=spec.parallel_width) as pool:
            list(pool.map(work, blocks))

    elapsed = time.monotonic() - start
    hit = state["first_hit"]
    if hit < len(blocks):
        # every earlier block must have finished without a witness
        earlier_done = all(results.get(i, (None,))[0] == _kernel.EXHAUSTED for i in range(hit))
        if earlier_done:
            seq = Sequence(spec.p, results[hit][1][0])
            if not is_nps(seq, spec.gamma):
                raise RuntimeError(f"search produced a non-witness {seq}")
            return SearchResult("Witness", size, state["nodes"], elapsed, witness=seq)
    if state["aborted"] or len(results) < len(blocks):
        return SearchResult(
            "Aborted",
            size,
            state["nodes"],
            elapsed,
            progress={"blocks_done": state["done"], "blocks": len(blocks)},
        )
    return SearchResult("ExhaustedNone", size, state["nodes"], elapsed)


def all_solutions(spec: SearchSpec, limit: int = 10**5) -> list[Sequence]:
    """Every witness in the reduced space (first nonzero exponent 0, a zero at
    index 0), in scan order."""
    from . import _kernel

    allowed = allowed_histograms(spec.n, spec.p, spec.gamma, spec.period) if spec.use_histogram_filter else None
    if allowed is not None and len(allowed) == 0:
        return []
    out = []
    cache: dict = {}
    for zeros in zero_patterns(spec.n, spec.s):
        block = _Block(0, zeros, ())
        status, _, wits = _run_block(spec, block, cache, allowed, 2**62, limit)
        if status == _kernel.FOUND:
            raise RuntimeError("solution limit reached")
        out.extend(Sequence(spec.p, w) for w in wits)
    return out


def naive_solutions(spec: SearchSpec) -> list[Sequence]:
    """Plain enumeration of the same reduced space, checked with
    :func:`is_nps`. Reference for the pruned scan."""
    N, p = spec.period, spec.p
    out = []
    for zeros in zero_patterns(spec.n, spec.s):
        nz = [i for i in range(N) if i not in zeros]
        for tail in itertools.product(range(p), repeat=spec.n - 1):
            sym = [None] * N
            for i, e in zip(nz, (0,) + tail):
                sym[i] = e
            seq = Sequence(p, tuple(sym))
            if is_nps(seq, spec.gamma):
                out.append(seq)
    return out


def verify_claimed(seq: Sequence, gamma: int) -> bool:
    """Sequence test and difference-set test must both pass.

    Sequences with two or more zeros have no difference-set form and are
    judged by the sequence test alone.
    """
    direct = is_nps(seq, gamma)
    if seq.zero_count > 1:
        return direct
    try:
        R, params = sequence_to_dpds(seq, gamma)
    except ValueError:
        return False
    return direct and bool(verify_dpds(R, params))


def default_threads() -> int:
    env = os.environ.get("NPS_THREADS")
    return int(env) if env else 1
