"""Compiled depth-first search over exponent assignments.

Pruning rests on two exact facts about a sequence whose out-of-phase
autocorrelations all equal ``gamma``:

* For lag ``t`` let ``T_t`` be the number of index pairs ``(i, i+t)`` with
  both entries nonzero. Each such pair contributes one root of unity
  ``zeta^(b_i - b_{i+t})``, and the only integer combinations of roots equal
  to ``gamma`` have exponent histogram ``F_t + gamma*[e == 0]`` with
  ``F_t = (T_t - gamma) / p``. So a partial histogram exceeding that target
  in any slot can never complete.
* The exponent histogram of the whole sequence must be one of the vectors
  whose element sum ``S`` has ``S * conj(S) = n + (N-1) gamma``.

Only lags ``1 .. N//2`` are tracked; the rest are conjugates.
"""

import numpy as np
from numba import njit

FOUND = 1
EXHAUSTED = 0
ABORTED = -1


@njit(cache=True, nogil=True)
def _apply(k, x, sign, N, H, p, b, isnz, cnt, ftab):
    """Add (sign=1) or remove (sign=-1) the pairs completed by putting
    exponent ``x`` at position ``k``. Returns False if a lag overflows."""
    ok = True
    for t in range(1, H + 1):
        i = k - t
        if i >= 0 and isnz[i]:
            e = (b[i] - x) % p
            cnt[t, e] += sign
            if cnt[t, e] > ftab[t, e]:
                ok = False
        j = k + t - N
        if j >= 0 and isnz[j]:
            e = (x - b[j]) % p
            cnt[t, e] += sign
            if cnt[t, e] > ftab[t, e]:
                ok = False
    return ok


@njit(cache=True, nogil=True)
def _histogram_ok(hist, allowed, use_allowed):
    if not use_allowed:
        return True
    nv, p = allowed.shape
    for v in range(nv):
        good = True
        for e in range(p):
            if hist[e] > allowed[v, e]:
                good = False
                break
        if good:
            return True
    return False


@njit(cache=True, nogil=True)
def dfs(
    N, p, isnz, positions, ftab, allowed, use_allowed, prefix, max_nodes, max_solutions, solutions, state
):
    """Enumerate exponent vectors on ``positions`` (the nonzero indices, in
    increasing order). The first nonzero entry is fixed to exponent 0 and the
    next ``len(prefix)`` entries to ``prefix``.

    Returns ``(status, nodes, found)`` (``found`` counts from the start of the subtree): status is FOUND once ``max_solutions``
    solutions are stored in ``solutions``, EXHAUSTED when the subtree is done,
    ABORTED when ``max_nodes`` trials were spent. After ABORTED, calling again
    with the same ``state`` (from :func:`new_state`) resumes where it stopped.
    """
    H = N // 2
    n = positions.shape[0]
    L = prefix.shape[0]
    b, cnt, hist, cur, dd = state
    nodes = 0
    found = dd[1]

    d = dd[0]
    while d >= 0:
        if d == 0:
            lo, hi = 0, 0
        elif d <= L:
            lo, hi = prefix[d - 1], prefix[d - 1]
        else:
            lo, hi = 0, p - 1
        if cur[d] < lo:
            cur[d] = lo
        if cur[d] > hi:
            d -= 1
            if d >= 0:
                k = positions[d]
                x = b[k]
                _apply(k, x, -1, N, H, p, b, isnz, cnt, ftab)
                hist[x] -= 1
                b[k] = -1
                cur[d] += 1
            continue
        if nodes >= max_nodes:
            dd[0] = d
            dd[1] = found
            return ABORTED, nodes, found
        nodes += 1
        k = positions[d]
        x = cur[d]
        ok = _apply(k, x, 1, N, H, p, b, isnz, cnt, ftab)
        hist[x] += 1
        if ok:
            ok = _histogram_ok(hist, allowed, use_allowed)
        if not ok:
            _apply(k, x, -1, N, H, p, b, isnz, cnt, ftab)
            hist[x] -= 1
            cur[d] += 1
            continue
        b[k] = x
        if d == n - 1:
            for i in range(N):
                solutions[found, i] = b[i]
            found += 1
            if found >= max_solutions:
                dd[0] = -1
                dd[1] = found
                return FOUND, nodes, found
            _apply(k, x, -1, N, H, p, b, isnz, cnt, ftab)
            hist[x] -= 1
            b[k] = -1
            cur[d] += 1
            continue
        d += 1
        cur[d] = 0
    dd[0] = -1
    dd[1] = found
    return EXHAUSTED, nodes, found


def new_state(N, p, n):
    """Fresh scratch arrays for :func:`dfs`: ``(b, cnt, hist, cur, [depth, found])``."""
    return (
        np.full(N, -1, dtype=np.int64),
        np.zeros((N // 2 + 1, p), dtype=np.int64),
        np.zeros(p, dtype=np.int64),
        np.zeros(n + 1, dtype=np.int64),
        np.zeros(2, dtype=np.int64),
    )
