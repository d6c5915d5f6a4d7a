"""Independent re-verification of non-existence certificates.

Nothing here calls into :mod:`nearperfect.exclusion` or the order-based
self-conjugacy test: the modular condition is rechecked by a plain scan of
powers, exponents by repeated division and determinants by fraction-free
elimination.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from .exclusion import ALMOST, PARY, Certificate


def _is_prime(q: int) -> bool:
    if q < 2:
        return False
    return all(q % d for d in range(2, int(q**0.5) + 1))


def _nu(q: int, value: int) -> int:
    value = abs(value)
    r = 0
    while value and value % q == 0:
        value //= q
        r += 1
    return r


def self_conjugate_brute(q: int, u: int) -> bool:
    """Strip ``q`` from ``u`` and look for ``q^j = -1 (mod w)`` among
    ``j = 0 .. w-1``."""
    w = u
    while w % q == 0:
        w //= q
    if w <= 2:
        return True
    x = 1
    for _ in range(w):
        if x % w == w - 1:
            return True
        x = x * q % w
    return False


def bareiss_det(M: list[list[int]]) -> int:
    A = [row[:] for row in M]
    n = len(A)
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k]:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


@dataclass(frozen=True)
class _Clause:
    value: str  # which quantity q^r exactly divides
    u_min: int
    q_is_p: bool = False


_CLAUSES = {
    "T2i": _Clause("n", 1),
    "T2ii": _Clause("n-g", 2),
    "T2iii": _Clause("n-g", 2, q_is_p=True),
    "T2iv": _Clause("(g+1)n-g", 1),
    "T4i": _Clause("n", 1),
    "T4ii": _Clause("n-g", 2),
    "T4iii_a": _Clause("(g+1)n", 1),
    "T4iii_b": _Clause("n-g", 2),
    "Cor1_a": _Clause("(g+1)n+(s-1)g", 1),
    "Cor1_b": _Clause("n-g", 2),
}


def _value(expr: str, n: int, g: int, s: int) -> int:
    return {
        "n": n,
        "n-g": n - g,
        "(g+1)n-g": (g + 1) * n - g,
        "(g+1)n": (g + 1) * n,
        "(g+1)n+(s-1)g": (g + 1) * n + (s - 1) * g,
    }[expr]


@dataclass
class Recheck:
    ok: bool
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def _fail(msg: str) -> Recheck:
    return Recheck(False, msg)


def violated_conclusion(rule: str, q: int, u: int, r: int, n: int, p: int, g: int, s: int) -> Optional[tuple]:
    """``None`` if the clause's conclusion holds, else ``(lhs, rhs)`` for a
    failed inequality or ``("odd", r)`` for a failed parity claim."""
    M = n if rule.startswith("T2") else n + s
    if rule in ("T2i", "T4i"):
        if r % 2:
            return ("odd", r)
        return (q ** (r // 2), M // u) if q ** (r // 2) > M // u else None
    if rule in ("T2ii", "T4ii"):
        if u % q:
            if r % 2:
                return ("odd", r)
            return (q ** (r // 2), M // u) if q ** (r // 2) > M // u else None
        lhs, rhs = q ** (r // 2), 2 * M // u
        return (lhs, rhs) if lhs > rhs else None
    if rule == "T2iii":
        lhs, rhs = (p ** (r // 2), 2 * n // u) if r % 2 == 0 else (p ** ((r + 1) // 2), 4 * n // u)
        return (lhs, rhs) if lhs > rhs else None
    return ("odd", r) if r % 2 else None


def check_clause(rule: str, q: int, u: int, n: int, p: int, gamma: int, mode: str, s: int = 1) -> Recheck:
    """Verify that ``(q, u)`` is admissible for ``rule`` at ``(n, p, gamma)``
    and that the rule's conclusion fails there."""
    if rule not in _CLAUSES:
        return _fail(f"unknown clause {rule}")
    s = 0 if mode == PARY else s
    if rule.startswith("T2") != (mode == PARY):
        return _fail("clause does not match mode")
    if rule.startswith("T4") and s != 1:
        return _fail("T4 clauses need a single zero")
    if rule.startswith("Cor1") and s < 2:
        return _fail("corollary clauses need s >= 2")
    if not abs(gamma) < n:
        return _fail("|gamma| < n violated")
    if rule in ("T2i", "T4i") and gamma != 0:
        return _fail("clause needs gamma = 0")
    if rule == "T4ii" and gamma != -1:
        return _fail("clause needs gamma = -1")
    if rule not in ("T2i", "T4i", "T4ii") and gamma == 0:
        return _fail("clause needs gamma != 0")
    target = n - gamma if mode == PARY else n - gamma - 1
    if s <= 1 and target % p:
        return _fail("divisibility precondition fails")
    cl = _CLAUSES[rule]
    if not _is_prime(q):
        return _fail(f"q={q} not prime")
    if cl.q_is_p != (q == p):
        return _fail("q versus p mismatch")
    ambient = n if mode == PARY else n + s
    if u < cl.u_min or ambient % u:
        return _fail(f"u={u} not an admissible divisor of {ambient}")
    value = _value(cl.value, n, gamma, s)
    if value == 0 or value % q:
        return _fail(f"q={q} does not divide {value}")
    r = _nu(q, value)
    modulus = u if cl.q_is_p else u * p
    if cl.q_is_p and u % p == 0:
        return _fail("p divides u")
    if rule in ("T2iv", "T4iii_a", "T4iii_b", "Cor1_a", "Cor1_b") and u % q == 0:
        return _fail("q divides u")
    if not self_conjugate_brute(q, modulus):
        return _fail(f"q={q} not self-conjugate modulo {modulus}")
    if violated_conclusion(rule, q, u, r, n, p, gamma, s) is None:
        return _fail("conclusion holds, nothing excluded")
    return Recheck(True)


def check_certificate(cert: Certificate, n: int, p: int, gamma: int, mode: str, s: int = 1) -> Recheck:
    """Recompute every numeric field of ``cert`` from the parameters."""
    s = 0 if mode == PARY else s
    if cert.rule == "Divisibility":
        target = n - gamma if mode == PARY else n - gamma - 1
        if target % p == 0:
            return _fail("p divides the target")
        return Recheck(cert.bound_lhs == target, "" if cert.bound_lhs == target else "wrong target")
    if cert.rule == "DeterminantNegative":
        if gamma > -2:
            return _fail("rule needs gamma <= -2")
        N = n + s
        det = bareiss_det([[n if i == j else gamma for j in range(N)] for i in range(N)])
        if det >= 0:
            return _fail(f"determinant {det} is not negative")
        if cert.bound_lhs != det:
            return _fail("recorded determinant differs")
        return Recheck(True)
    if cert.rule in _CLAUSES:
        res = check_clause(cert.rule, cert.q, cert.u, n, p, gamma, mode, s)
        if not res:
            return res
        value = _value(_CLAUSES[cert.rule].value, n, gamma, s)
        r = _nu(cert.q, value)
        if r != cert.r:
            return _fail(f"recorded r={cert.r}, recomputed {r}")
        v = violated_conclusion(cert.rule, cert.q, cert.u, r, n, p, gamma, s)
        if v[0] == "odd":
            if cert.bound_lhs is not None:
                return _fail("parity violation should carry no bounds")
        elif (cert.bound_lhs, cert.bound_rhs) != v:
            return _fail(f"recorded bounds {(cert.bound_lhs, cert.bound_rhs)}, recomputed {v}")
        return Recheck(True)
    if cert.rule == "MultiplierInfeasible":
        from .multiplier import recheck_multiplier_certificate

        return recheck_multiplier_certificate(cert, n, p)
    if cert.rule == "ExhaustiveSearch":
        from .search import SearchSpec, search

        spec = SearchSpec(n, p, gamma, s)
        res = search(spec)
        return Recheck(res.outcome == "ExhaustedNone", res.outcome)
    if cert.rule == "External":
        return Recheck(bool(cert.narrative), "external fact")
    return _fail(f"unknown rule {cert.rule}")


_CITED = re.compile(
    r"not exists by (Theorem [24]|Corollary 1) \((i{1,3}|iv)\)( resp\.)? with q=(\d+) and u=(\d+)"
)


def parse_cited(reason: str) -> Optional[tuple[str, int, int]]:
    """``"not exists by Theorem 2 (ii) with q=3 and u=5"`` -> ``("T2ii", 3, 5)``.

    A (iii) citation without "resp." is the ``(gamma+1) n`` branch (T4iii_a).
    """
    m = _CITED.search(reason)
    if m is None:
        return None
    thm, clause, resp, q, u = m.groups()
    prefix = "T2" if thm == "Theorem 2" else "T4" if thm == "Theorem 4" else "Cor1"
    rule = prefix + clause
    if rule == "T4iii":
        rule = "T4iii_b" if resp else "T4iii_a"
    return rule, int(q), int(u)


def check_cited(n: int, p: int, gamma: int, mode: str, reason: str) -> Recheck:
    """Recheck the clause, q and u named in a table citation."""
    parsed = parse_cited(reason)
    if parsed is None:
        return _fail(f"no clause citation in {reason!r}")
    rule, q, u = parsed
    return check_clause(rule, q, u, n, p, gamma, mode)
