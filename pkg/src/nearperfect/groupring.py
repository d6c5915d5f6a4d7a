"""Difference sets in Z_m x Z_p and their link to (almost) p-ary sequences.

Groups are written additively: ``h^i g^j`` is the pair ``(i, j)``, ``H`` is
``Z_m x {0}`` and the forbidden subgroup ``P`` is ``{0} x Z_p``.
"""

from __future__ import annotations

import itertools
import json
from collections import Counter
from dataclasses import asdict, dataclass, field
from typing import Iterable

from .sequence import Sequence, is_nps

GroupElem = tuple[int, int]


@dataclass(frozen=True)
class DpdsParams:
    """``(m, n, k, lambda1, lambda2, mu)``; ``n_forbidden`` is the order of P.

    Values are not required to be nonnegative: parameters derived from a
    sequence type may be negative, in which case no set can satisfy them.
    """

    m: int
    n_forbidden: int
    k: int
    lambda1: int
    lambda2: int
    mu: int

    def as_tuple(self) -> tuple[int, ...]:
        return (self.m, self.n_forbidden, self.k, self.lambda1, self.lambda2, self.mu)


@dataclass(frozen=True)
class RdsParams:
    """``(m, p, k, lambda)`` relative difference set relative to P: every
    element outside P is hit ``lambda`` times, nonidentity elements of P never."""

    m: int
    p: int
    k: int
    lam: int


@dataclass(frozen=True)
class DpdsInstance:
    m: int
    p: int
    elements: frozenset

    def __post_init__(self):
        for h, g in self.elements:
            if not (0 <= h < self.m and 0 <= g < self.p):
                raise ValueError(f"element {(h, g)} outside Z_{self.m} x Z_{self.p}")

    @classmethod
    def of(cls, m: int, p: int, elements: Iterable[GroupElem]) -> "DpdsInstance":
        elems = [tuple(e) for e in elements]
        fs = frozenset(elems)
        if len(fs) != len(elems):
            raise ValueError("repeated group elements")
        return cls(m, p, fs)

    def sorted_elements(self) -> list[GroupElem]:
        return sorted(self.elements)

    def to_dict(self) -> dict:
        return {"m": self.m, "p": self.p, "elements": [list(e) for e in self.sorted_elements()]}


def to_json(instance: DpdsInstance, params=None) -> str:
    d = instance.to_dict()
    if params is not None:
        d["params"] = asdict(params)
    return json.dumps(d)


def from_json(text: str):
    d = json.loads(text)
    inst = DpdsInstance.of(d["m"], d["p"], [tuple(e) for e in d["elements"]])
    params = None
    if "params" in d:
        pd = d["params"]
        params = RdsParams(**pd) if "lam" in pd else DpdsParams(**pd)
    return inst, params


def difference_table(R: DpdsInstance) -> dict[GroupElem, int]:
    """``counts[d] = #{(r1, r2): r1 != r2, r1 - r2 = d}`` over all of G."""
    m, p = R.m, R.p
    counts = {(h, g): 0 for h in range(m) for g in range(p)}
    elems = R.sorted_elements()
    for (h1, g1), (h2, g2) in itertools.permutations(elems, 2):
        counts[((h1 - h2) % m, (g1 - g2) % p)] += 1
    return counts


@dataclass
class Verification:
    ok: bool
    size_ok: bool = True
    violations: list = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def _expected_count(elem: GroupElem, lam_h: int, lam_p: int, lam_rest: int) -> int:
    h, g = elem
    if g == 0:
        return lam_h
    if h == 0:
        return lam_p
    return lam_rest


def _check(R, k, lam_h, lam_p, lam_rest) -> Verification:
    if len(R.elements) != k:
        return Verification(False, size_ok=False, violations=[("size", len(R.elements), k)])
    table = difference_table(R)
    bad = []
    for elem, c in sorted(table.items()):
        if elem == (0, 0):
            continue
        want = _expected_count(elem, lam_h, lam_p, lam_rest)
        if c != want:
            bad.append((elem, c, want))
    return Verification(not bad, violations=bad)


def verify_dpds(R: DpdsInstance, params: DpdsParams) -> Verification:
    """Check Definition-style counts: lambda1 on H, lambda2 on P, mu elsewhere.

    A size mismatch is reported as ``size_ok=False`` with a single ``("size",
    got, want)`` violation; count mismatches list ``(element, got, want)``.
    """
    if params.m != R.m or params.n_forbidden != R.p:
        raise ValueError("parameters do not match the ambient group")
    return _check(R, params.k, params.lambda1, params.lambda2, params.mu)


def verify_rds(R: DpdsInstance, params: RdsParams) -> Verification:
    if params.m != R.m or params.p != R.p:
        raise ValueError("parameters do not match the ambient group")
    return _check(R, params.k, params.lam, 0, params.lam)


def group_ring_square(R: DpdsInstance) -> dict[GroupElem, int]:
    """Coefficients of ``R R^(-1)`` in Z[G], identity included."""
    m, p = R.m, R.p
    out = Counter()
    for (h1, g1) in R.elements:
        for (h2, g2) in R.elements:
            out[((h1 - h2) % m, (g1 - g2) % p)] += 1
    return {(h, g): out[(h, g)] for h in range(m) for g in range(p)}


def group_ring_target(params: DpdsParams) -> dict[GroupElem, int]:
    """``(k - l1 - l2 + mu) + (l1 - mu) H + (l2 - mu) P + mu G`` as coefficients."""
    k, l1, l2, mu = params.k, params.lambda1, params.lambda2, params.mu
    out = {}
    for h in range(params.m):
        for g in range(params.n_forbidden):
            c = mu
            if g == 0:
                c += l1 - mu
            if h == 0:
                c += l2 - mu
            if h == 0 and g == 0:
                c += k - l1 - l2 + mu
            out[(h, g)] = c
    return out


def satisfies_group_ring_identity(R: DpdsInstance, params: DpdsParams) -> bool:
    return len(R.elements) == params.k and group_ring_square(R) == group_ring_target(params)


def pary_params(n: int, p: int, gamma: int) -> DpdsParams:
    if (n - gamma) % p:
        raise ValueError(f"p={p} does not divide n-gamma={n - gamma}")
    mu = (n - gamma) // p
    return DpdsParams(n, p, n, mu + gamma, 0, mu)


def almost_params(n: int, p: int, gamma: int) -> DpdsParams:
    """Parameters for ``n`` nonzero entries and period ``n + 1``."""
    if (n - gamma - 1) % p:
        raise ValueError(f"p={p} does not divide n-gamma-1={n - gamma - 1}")
    mu = (n - gamma - 1) // p
    return DpdsParams(n + 1, p, n, mu + gamma, 0, mu)


def rds_params(n: int, p: int) -> RdsParams:
    """The ``(n+1, p, n, (n-1)/p)`` RDS matching an almost perfect sequence."""
    if (n - 1) % p:
        raise ValueError(f"p={p} does not divide n-1={n - 1}")
    return RdsParams(n + 1, p, n, (n - 1) // p)


def sequence_to_dpds(seq: Sequence, gamma: int) -> tuple[DpdsInstance, DpdsParams]:
    """``R = {(i, b_i)}`` over the nonzero positions.

    An almost sequence is first rotated so its zero sits at index 0, which
    leaves the autocorrelation unchanged.
    """
    p = seq.p
    if seq.zero_count == 0:
        params = pary_params(seq.period, p, gamma)
        elems = [(i, b) for i, b in enumerate(seq.symbols)]
        return DpdsInstance.of(seq.period, p, elems), params
    if seq.zero_count > 1:
        raise ValueError("no difference-set form for more than one zero symbol")
    seq = seq.shift(seq.symbols.index(None))
    n = seq.period - 1
    params = almost_params(n, p, gamma)
    elems = [(i, b) for i, b in enumerate(seq.symbols) if b is not None]
    return DpdsInstance.of(seq.period, p, elems), params


def dpds_to_sequence(R: DpdsInstance) -> Sequence:
    """Inverse of :func:`sequence_to_dpds` for sets meeting each coset of P
    at most once; uncovered positions become zeros."""
    symbols = [None] * R.m
    for h, g in R.elements:
        if symbols[h] is not None:
            raise ValueError(f"two elements with first component {h}")
        symbols[h] = g
    return Sequence(R.p, tuple(symbols))


@dataclass
class EquivalenceReport:
    n: int
    p: int
    gamma: int
    mode: str
    checked: int = 0
    nps_count: int = 0
    divisible: bool = True
    counterexamples: list = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return not self.counterexamples


def equivalence_check(n: int, p: int, gamma: int, mode: str = "pary", bound: int = 10**7) -> EquivalenceReport:
    """Enumerate every sequence of the given shape and compare the sequence
    test with the difference-set test.

    ``mode="almost"`` means ``n`` nonzero entries with a zero at index 0
    (period ``n + 1``). When p does not divide the relevant quantity no
    difference set is defined and the check is that no sequence qualifies.
    """
    if p**n > bound:
        raise ValueError(f"search space {p**n} exceeds bound {bound}")
    rep = EquivalenceReport(n, p, gamma, mode)
    target = n - gamma if mode == "pary" else n - gamma - 1
    rep.divisible = target % p == 0
    for body in itertools.product(range(p), repeat=n):
        symbols = body if mode == "pary" else (None,) + body
        seq = Sequence(p, symbols)
        rep.checked += 1
        seq_ok = is_nps(seq, gamma)
        rep.nps_count += seq_ok
        if rep.divisible:
            R, params = sequence_to_dpds(seq, gamma)
            set_ok = bool(verify_dpds(R, params))
        else:
            set_ok = False
        if seq_ok != set_ok:
            rep.counterexamples.append(seq)
    return rep
