"""Non-existence rules for (almost) p-ary nearly perfect sequences.

Each rule either returns ``None`` (it cannot rule the parameters out) or a
:class:`Certificate` naming the prime ``q``, the divisor ``u`` and the
violated conclusion, so the claim can be rechecked from ``(n, p, gamma, s)``
alone (see :mod:`nearperfect.certcheck`).

Row convention for almost sequences: ``n`` counts the nonzero entries and
the period is ``n + s`` (``n + 1`` for a single zero).
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Any, Optional

from .numtheory import divisors, exact_power, is_self_conjugate, prime_divisors

PARY = "pary"
ALMOST = "almost"
MODES = (PARY, ALMOST)

RULES = (
    "Divisibility",
    "DeterminantNegative",
    "T2i",
    "T2ii",
    "T2iii",
    "T2iv",
    "T4i",
    "T4ii",
    "T4iii_a",
    "T4iii_b",
    "Cor1_a",
    "Cor1_b",
    "MultiplierInfeasible",
    "ExhaustiveSearch",
    "External",
)

_THEOREM_LABEL = {
    "T2i": ("Theorem 2 (i)", ""),
    "T2ii": ("Theorem 2 (ii)", ""),
    "T2iii": ("Theorem 2 (iii)", ""),
    "T2iv": ("Theorem 2 (iv)", ""),
    "T4i": ("Theorem 4 (i)", ""),
    "T4ii": ("Theorem 4 (ii)", ""),
    "T4iii_a": ("Theorem 4 (iii)", ""),
    "T4iii_b": ("Theorem 4 (iii)", " resp."),
    "Cor1_a": ("Corollary 1", ""),
    "Cor1_b": ("Corollary 1", " resp."),
}


@dataclass(frozen=True)
class Certificate:
    """Reason a parameter set admits no sequence.

    ``bound_lhs``/``bound_rhs`` are set when the violated conclusion is an
    inequality ``lhs <= rhs`` (the certificate asserts ``lhs > rhs``); they
    stay ``None`` when the violation is an odd exponent ``r``. For
    ``DeterminantNegative`` they hold the Gram determinant and 0.
    """

    rule: str
    q: Optional[int] = None
    u: Optional[int] = None
    r: Optional[int] = None
    bound_lhs: Optional[int] = None
    bound_rhs: Optional[int] = None
    narrative: str = ""
    extra: dict[str, Any] = field(default_factory=dict, compare=False)

    def to_dict(self) -> dict[str, Any]:
        d = {
            "rule": self.rule,
            "q": self.q,
            "u": self.u,
            "r": self.r,
            "lhs": self.bound_lhs,
            "rhs": self.bound_rhs,
            "narrative": self.narrative,
        }
        if self.extra:
            d["extra"] = self.extra
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "Certificate":
        return cls(
            rule=d["rule"],
            q=d.get("q"),
            u=d.get("u"),
            r=d.get("r"),
            bound_lhs=d.get("lhs"),
            bound_rhs=d.get("rhs"),
            narrative=d.get("narrative", ""),
            extra=dict(d.get("extra", {})),
        )


def theorem_certificate(rule, q, u, r, lhs=None, rhs=None) -> Certificate:
    label, resp = _THEOREM_LABEL[rule]
    text = f"not exists by {label}{resp} with q={q} and u={u}"
    return Certificate(rule, q, u, r, lhs, rhs, text)


def _check_mode(mode: str, s: int) -> int:
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    if mode == PARY:
        return 0
    if s < 1:
        raise ValueError("almost mode needs s >= 1 zero symbols")
    return s


def gram_determinant(n: int, gamma: int, s: int = 0) -> int:
    """Determinant of the Gram matrix ``(n - gamma) I + gamma J`` of the
    circulant built from a sequence with ``n`` unimodular entries and ``s``
    zeros (period ``n + s``), i.e. ``((gamma+1) n + (s-1) gamma) (n-gamma)^(n+s-1)``.

    With ``s = 0`` this is ``((gamma+1) n - gamma) (n-gamma)^(n-1)``.
    """
    return ((gamma + 1) * n + (s - 1) * gamma) * (n - gamma) ** (n + s - 1)


def check_determinant(n: int, gamma: int, mode: str = PARY, s: int = 1) -> Optional[Certificate]:
    """A Gram matrix is positive semidefinite, so a negative determinant
    rules the sequence out. Only ``gamma <= -2`` is considered; the binary
    ``(-1, 1)`` case (``n = 2, gamma = -2``) has determinant 0 and survives."""
    s = _check_mode(mode, s)
    if n < 2 and mode == PARY:
        raise ValueError("determinant rule needs n >= 2")
    if gamma > -2:
        return None
    det = gram_determinant(n, gamma, s)
    if det >= 0:
        return None
    return Certificate(
        "DeterminantNegative",
        bound_lhs=det,
        bound_rhs=0,
        narrative=f"not exists since the correlation matrix has determinant {det} < 0",
    )


def divisibility_target(n: int, gamma: int, mode: str) -> int:
    """``n - gamma`` (p-ary) or ``n - gamma - 1`` (almost, one zero); p must divide it."""
    return n - gamma if mode == PARY else n - gamma - 1


def check_divisibility(n: int, p: int, gamma: int, mode: str = PARY) -> Optional[Certificate]:
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    target = divisibility_target(n, gamma, mode)
    if target % p == 0:
        return None
    what = "n-gamma" if mode == PARY else "n-gamma-1"
    return Certificate(
        "Divisibility",
        bound_lhs=target,
        bound_rhs=p,
        narrative=f"not exists since p={p} does not divide {what}={target}",
    )


def _require_range(n: int, gamma: int) -> None:
    if not abs(gamma) < n:
        raise ValueError(f"the criteria need |gamma| < n, got n={n}, gamma={gamma}")


def _other_primes(value: int, p: int) -> list[int]:
    return [q for q in prime_divisors(value) if q != p]


def exclude_pary(n: int, p: int, gamma: int) -> Optional[Certificate]:
    """First violated clause of the p-ary criteria, scanning q then u ascending."""
    _require_range(n, gamma)
    if (n - gamma) % p:
        raise ValueError(f"p={p} does not divide n-gamma={n - gamma}")
    divs = divisors(n)

    if gamma == 0:
        for q in _other_primes(n, p):
            r = exact_power(q, n)
            for u in divs:
                if not is_self_conjugate(q, u * p):
                    continue
                if r % 2:
                    return theorem_certificate("T2i", q, u, r)
                if q ** (r // 2) > n // u:
                    return theorem_certificate("T2i", q, u, r, q ** (r // 2), n // u)
        return None

    for q in _other_primes(n - gamma, p):
        r = exact_power(q, n - gamma)
        for u in divs[1:]:
            if not is_self_conjugate(q, u * p):
                continue
            if u % q:
                if r % 2:
                    return theorem_certificate("T2ii", q, u, r)
                if q ** (r // 2) > n // u:
                    return theorem_certificate("T2ii", q, u, r, q ** (r // 2), n // u)
            elif q ** (r // 2) > 2 * n // u:
                return theorem_certificate("T2ii", q, u, r, q ** (r // 2), 2 * n // u)

    r = exact_power(p, n - gamma)
    for u in divs[1:]:
        if u % p == 0 or not is_self_conjugate(p, u):
            continue
        if r % 2 == 0:
            lhs, rhs = p ** (r // 2), 2 * n // u
        else:
            lhs, rhs = p ** ((r + 1) // 2), 4 * n // u
        if lhs > rhs:
            return theorem_certificate("T2iii", p, u, r, lhs, rhs)

    value = (gamma + 1) * n - gamma
    for q in _other_primes(value, p):
        r = exact_power(q, value)
        if r % 2 == 0:
            continue
        for u in divs:
            if u % q and is_self_conjugate(q, u * p):
                return theorem_certificate("T2iv", q, u, r)
    return None


def _parity_scan(rule, value, p, divs) -> Optional[Certificate]:
    """Odd ``r`` with ``q^r || value``, ``q != p``, ``q`` coprime to some
    ``u`` in ``divs`` modulo which ``q`` is self-conjugate (times p)."""
    for q in _other_primes(value, p):
        r = exact_power(q, value)
        if r % 2 == 0:
            continue
        for u in divs:
            if u % q and is_self_conjugate(q, u * p):
                return theorem_certificate(rule, q, u, r)
    return None


def exclude_almost(n: int, p: int, gamma: int, s: int = 1) -> Optional[Certificate]:
    """Criteria for almost p-ary sequences with ``s`` zeros and ``n`` nonzero
    entries (period ``n + s``). With ``s >= 2`` only the parity corollary
    applies, and only for ``gamma != 0``."""
    _require_range(n, gamma)
    if s < 1:
        raise ValueError("almost mode needs s >= 1")
    if s == 1 and (n - gamma - 1) % p:
        raise ValueError(f"p={p} does not divide n-gamma-1={n - gamma - 1}")
    period = n + s
    divs = divisors(period)

    if s > 1:
        if gamma == 0:
            return None
        value = (gamma + 1) * n + (s - 1) * gamma
        cert = _parity_scan("Cor1_a", value, p, divs) if value else None
        return cert or _parity_scan("Cor1_b", n - gamma, p, divs[1:])

    if gamma == 0:
        for q in _other_primes(n, p):
            r = exact_power(q, n)
            for u in divs:
                if not is_self_conjugate(q, u * p):
                    continue
                if r % 2:
                    return theorem_certificate("T4i", q, u, r)
                if q ** (r // 2) > period // u:
                    return theorem_certificate("T4i", q, u, r, q ** (r // 2), period // u)
        return None

    if gamma == -1:
        for q in _other_primes(period, p):
            r = exact_power(q, period)
            for u in divs[1:]:
                if not is_self_conjugate(q, u * p):
                    continue
                if u % q:
                    if r % 2:
                        return theorem_certificate("T4ii", q, u, r)
                    if q ** (r // 2) > period // u:
                        return theorem_certificate("T4ii", q, u, r, q ** (r // 2), period // u)
                elif q ** (r // 2) > 2 * period // u:
                    return theorem_certificate("T4ii", q, u, r, q ** (r // 2), 2 * period // u)

    value = (gamma + 1) * n
    cert = _parity_scan("T4iii_a", value, p, divs) if value else None
    return cert or _parity_scan("T4iii_b", n - gamma, p, divs[1:])


def full_exclusion(n: int, p: int, gamma: int, mode: str = PARY, s: int = 1) -> Optional[Certificate]:
    """Determinant rule, then the divisibility gate, then the theorem battery.

    Outside ``|gamma| < n`` only the determinant rule is applied.
    """
    s = _check_mode(mode, s)
    cert = check_determinant(n, gamma, mode, s or 1) if n >= 2 else None
    if cert is not None or not abs(gamma) < n:
        return cert
    if mode == PARY:
        return check_divisibility(n, p, gamma, PARY) or exclude_pary(n, p, gamma)
    if s == 1:
        cert = check_divisibility(n, p, gamma, ALMOST)
        if cert is not None:
            return cert
    return exclude_almost(n, p, gamma, s)
