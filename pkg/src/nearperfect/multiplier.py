"""Multiplier orbits and orbit-cover arguments for relative difference sets.

An almost p-ary perfect sequence with ``n`` nonzero entries gives an
``(n+1, p, n, (n-1)/p)`` relative difference set ``R`` in
``G = Z_{n+1} x Z_p`` (relative to ``P = {0} x Z_p``). If ``t`` is a
multiplier of ``R`` and some translate of ``R`` is fixed by ``x -> t x``,
that translate is a union of orbits. Translation permutes the second
components cyclically and keeps "one element per first component", so the
counting constraints below apply to it unchanged.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Optional

from .exclusion import Certificate
from .groupring import DpdsInstance, rds_params, verify_rds
from .numtheory import is_prime, prime_divisors

Elem = tuple[int, int]


@dataclass
class OrbitSet:
    m: int
    p: int
    t: int
    orbits: list[list[Elem]]

    def census(self) -> dict[int, int]:
        """``{orbit length: number of orbits}``, lengths ascending."""
        c = Counter(len(o) for o in self.orbits)
        return dict(sorted(c.items()))

    def render(self) -> str:
        """Length-grouped listing in the style of a printed orbit table."""
        lines = [f"Orbits of Z_{self.m} x Z_{self.p} under x -> {self.t}x"]
        by_len = defaultdict(list)
        for o in self.orbits:
            by_len[len(o)].append(o)
        for length in sorted(by_len):
            lines.append(f"orbits of length {length}")
            for o in by_len[length]:
                lines.append("{" + ", ".join(f"({h}, {g})" for h, g in o) + "}")
        return "\n".join(lines) + "\n"


def orbits(m: int, p: int, t: int) -> OrbitSet:
    """Partition of ``Z_m x Z_p`` into orbits of ``(h, g) -> (t h, t g)``.

    Each orbit is listed from its smallest element in the order
    ``x, t x, t^2 x, ...``; orbits are sorted by their smallest element.
    """
    if math.gcd(t, m * p) != 1:
        raise ValueError(f"gcd(t={t}, {m * p}) != 1")
    seen = set()
    out = []
    for h in range(m):
        for g in range(p):
            if (h, g) in seen:
                continue
            orb = []
            x = (h, g)
            while x not in seen:
                seen.add(x)
                orb.append(x)
                x = (x[0] * t % m, x[1] * t % p)
            out.append(orb)
    return OrbitSet(m, p, t, out)


def lemma5_rhs(n: int, p: int) -> tuple[int, int]:
    """``(n(n+p-1)/p, n(n-1)/p)``: targets for the sum of squared counts and
    for each cyclic cross sum of the count vector."""
    a, b = n * (n + p - 1), n * (n - 1)
    if a % p or b % p:
        raise ValueError(f"p={p} does not divide n(n+p-1) and n(n-1) for n={n}")
    return a // p, b // p


def count_vector(elements, p: int) -> tuple[int, ...]:
    s = [0] * p
    for _, g in elements:
        s[g] += 1
    return tuple(s)


def satisfies_lemma5(s, n: int, p: int) -> bool:
    sq, cross = lemma5_rhs(n, p)
    if sum(x * x for x in s) != sq:
        return False
    for i in range(1, (p - 1) // 2 + (p - 1) % 2 + 1):
        if sum(s[j] * s[(j - i) % p] for j in range(p)) != cross:
            return False
    return True


@dataclass
class Feasibility:
    feasible: bool
    witness: Optional[list[list[Elem]]] = None
    proof: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.feasible


def _support_classes(orbit_set: OrbitSet):
    """Usable orbits grouped by their set of first components.

    An orbit holding two elements with the same first component is
    unusable; two orbits with a common first component have the same
    support (supports are orbits of ``h -> t h``), so each class gives at
    most one orbit to ``R``.
    """
    classes = defaultdict(list)
    unusable = 0
    for o in orbit_set.orbits:
        firsts = [h for h, _ in o]
        if len(set(firsts)) != len(firsts):
            unusable += 1
            continue
        classes[frozenset(firsts)].append(o)
    ordered = sorted(classes.items(), key=lambda kv: (-len(kv[0]), min(kv[0])))
    return [opts for _, opts in ordered], unusable


def contracted_targets(n: int, p: int, d: int) -> dict[Elem, int]:
    """Coefficients of ``rho(R) rho(R)^(-1)`` for the projection
    ``rho: Z_{n+1} x Z_p -> Z_d x Z_p`` (``d`` dividing ``n+1``).

    From ``R R^(-1) = k + lam (G - P)`` with ``k = n``, ``lam = (n-1)/p``:
    the coefficient at ``x`` is ``k [x = 0] + lam (n+1)/d - lam [x in P]``.
    ``d = 1`` gives the two count-vector identities.
    """
    m = n + 1
    if m % d:
        raise ValueError(f"d={d} does not divide {m}")
    lam = (n - 1) // p
    out = {}
    for a in range(d):
        for b in range(p):
            c = lam * (m // d)
            if a == 0:
                c -= lam
            if (a, b) == (0, 0):
                c += n
            out[(a, b)] = c
    return out


def image_vector(elements, d: int, p: int) -> tuple[int, ...]:
    v = [0] * (d * p)
    for h, g in elements:
        v[(h % d) * p + g] += 1
    return tuple(v)


def satisfies_contracted(c, n: int, p: int, d: int) -> bool:
    """Check the projected identity for an image vector ``c`` on ``Z_d x Z_p``."""
    for (x, y), want in contracted_targets(n, p, d).items():
        tot = 0
        for a in range(d):
            for b in range(p):
                tot += c[a * p + b] * c[((a - x) % d) * p + (b - y) % p]
        if tot != want:
            return False
    return True


def _cover_dp(classes, n: int, p: int, d: int, max_states: int):
    """Reachable image vectors on ``Z_d x Z_p``, one layer per class, with
    back-pointers. ``None`` when the state budget is exceeded."""
    zero = (0,) * (d * p)
    layers = [{zero: None}]
    remaining = sum(len(opts[0]) for opts in classes)
    for opts in classes:
        size = len(opts[0])
        remaining -= size
        deltas = [image_vector(o, d, p) for o in opts]
        nxt = {}
        for vec in layers[-1]:
            tot = sum(vec)
            if tot + remaining >= n and vec not in nxt:
                nxt[vec] = (vec, -1)
            if tot + size <= n:
                for k, dv in enumerate(deltas):
                    w = tuple(a + b for a, b in zip(vec, dv))
                    if w not in nxt:
                        nxt[w] = (vec, k)
        if len(nxt) > max_states:
            return None
        layers.append(nxt)
    return layers


def orbit_cover_feasible(
    orbit_set: OrbitSet,
    n: int,
    p: int,
    quotients=None,
    max_states: int = 3 * 10**6,
) -> Feasibility:
    """Is there a union of orbits of size ``n``, meeting each first component
    at most once, that passes the counting identities?

    The count-vector identities (``d = 1``) are tried first; if they leave a
    candidate, the projected identity on ``Z_d x Z_p`` is tried for the
    other divisors ``d`` of ``n+1`` in ascending order (``quotients``
    overrides the list). Every test is a necessary condition, so any failure
    proves infeasibility. Feasible means every tried quotient admits a
    cover; the witness is a cover for the last quotient tried.
    """
    m = n + 1
    if orbit_set.p != p or orbit_set.m != m:
        raise ValueError("orbit set does not live in Z_{n+1} x Z_p")
    lemma5_rhs(n, p)
    classes, unusable = _support_classes(orbit_set)
    capacity = sum(len(opts[0]) for opts in classes)
    proof = {
        "orbits": len(orbit_set.orbits),
        "unusable_orbits": unusable,
        "support_classes": len(classes),
        "capacity": capacity,
        "quotients_tried": [],
        "quotients_skipped": [],
    }
    if capacity < n:
        proof["failed"] = "capacity"
        return Feasibility(False, proof=proof)

    ds = list(quotients) if quotients is not None else [d for d in range(1, m + 1) if m % d == 0]
    witness = None
    for d in ds:
        layers = _cover_dp(classes, n, p, d, max_states)
        if layers is None:
            proof["quotients_skipped"].append(d)
            continue
        proof["quotients_tried"].append(d)
        finals = sorted(v for v in layers[-1] if sum(v) == n)
        good = [v for v in finals if satisfies_contracted(v, n, p, d)]
        if not good:
            proof["failed"] = "lemma5" if d == 1 else f"quotient Z_{d} x Z_{p}"
            proof["quotient"] = d
            proof["images_of_size_n"] = len(finals)
            return Feasibility(False, proof=proof)
        vec = good[0]
        chosen = []
        for i in range(len(classes), 0, -1):
            vec, k = layers[i][vec]
            if k >= 0:
                chosen.append(classes[i - 1][k])
        chosen.reverse()
        witness = chosen
        if d == 1:
            proof["count_vector"] = list(good[0])
    return Feasibility(True, witness=witness, proof=proof)


def naive_cover_feasible(orbit_set: OrbitSet, n: int, p: int, quotients=(1,)) -> bool:
    """Subset enumeration over all orbits, for small orbit sets only.

    Same semantics as :func:`orbit_cover_feasible` with the given
    ``quotients``: each quotient must admit some admissible cover.
    """
    orbs = orbit_set.orbits
    if len(orbs) > 22:
        raise ValueError("too many orbits for subset enumeration")
    admissible = []
    for mask in range(1 << len(orbs)):
        elems = [x for i in range(len(orbs)) if mask >> i & 1 for x in orbs[i]]
        if len(elems) == n and len({h for h, _ in elems}) == n:
            admissible.append(elems)
    return all(
        any(satisfies_contracted(image_vector(e, d, p), n, p, d) for e in admissible) for d in quotients
    )


def covers(orbit_set: OrbitSet, n: int, p: int, limit: int = 10**5):
    """Yield admissible orbit covers whose count vector passes the counting
    identities (for confirmation against the difference-set test)."""
    classes, _ = _support_classes(orbit_set)
    choices = [[None] + opts for opts in classes]
    produced = 0
    for pick in itertools.product(*choices):
        sel = [o for o in pick if o is not None]
        if sum(len(o) for o in sel) != n:
            continue
        elems = [x for o in sel for x in o]
        if satisfies_lemma5(count_vector(elems, p), n, p):
            yield elems
            produced += 1
            if produced >= limit:
                return


def confirm_covers(orbit_set: OrbitSet, n: int, p: int, limit: int = 10**5) -> Optional[DpdsInstance]:
    """First cover that is a genuine ``(n+1, p, n, (n-1)/p)`` RDS, else None."""
    params = rds_params(n, p)
    for elems in covers(orbit_set, n, p, limit):
        R = DpdsInstance.of(n + 1, p, elems)
        if verify_rds(R, params):
            return R
    return None


def suggest_multipliers(n: int, p: int) -> list[int]:
    """Primes dividing ``n`` and coprime to ``(n+1) p``."""
    return [q for q in prime_divisors(n) if math.gcd(q, (n + 1) * p) == 1]


PREMISE = "t is a multiplier of R and a translate of R is fixed by x -> t x"


def prove_nonexistence_by_multiplier(n: int, p: int, t: int) -> Optional[Certificate]:
    """Certificate if no orbit cover under ``x -> t x`` can be an RDS.

    The conclusion is conditional on :data:`PREMISE`, which is recorded in
    the certificate rather than proved.
    """
    if (n - 1) % p:
        raise ValueError(f"p={p} does not divide n-1={n - 1}")
    if math.gcd(t, (n + 1) * p) != 1:
        raise ValueError(f"gcd(t={t}, {(n + 1) * p}) != 1")
    os_ = orbits(n + 1, p, t)
    feas = orbit_cover_feasible(os_, n, p)
    if feas.feasible:
        return None
    sq, cross = lemma5_rhs(n, p)
    return Certificate(
        "MultiplierInfeasible",
        narrative=f"not exists by the multiplier t={t} (no orbit cover)",
        extra={
            "t": t,
            "census": {str(k): v for k, v in os_.census().items()},
            "premise": PREMISE,
            "targets": [sq, cross],
            "failed": feas.proof.get("failed"),
            "quotient": feas.proof.get("quotient", 1),
        },
    )


@dataclass
class MultiplierAttempt:
    n: int
    p: int
    tried: list[int]
    certificate: Optional[Certificate]

    @property
    def decided(self) -> bool:
        return self.certificate is not None

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "p": self.p,
            "tried": self.tried,
            "certificate": self.certificate.to_dict() if self.certificate else None,
        }


def try_multipliers(n: int, p: int, candidates=None) -> MultiplierAttempt:
    cands = list(candidates) if candidates is not None else suggest_multipliers(n, p)
    tried = []
    for t in cands:
        tried.append(t)
        cert = prove_nonexistence_by_multiplier(n, p, t)
        if cert is not None:
            return MultiplierAttempt(n, p, tried, cert)
    return MultiplierAttempt(n, p, tried, None)


def recheck_multiplier_certificate(cert: Certificate, n: int, p: int):
    """Redo the orbit computation and the recorded quotient test with
    separately written code (flat-index cycles, set reachability, group-ring
    products as dictionaries)."""
    from .certcheck import Recheck

    t, d = cert.extra.get("t"), cert.extra.get("quotient", 1)
    m = n + 1
    if t is None or math.gcd(t, m * p) != 1 or (n - 1) % p or not is_prime(p) or m % d:
        return Recheck(False, "bad multiplier parameters")
    seen = [False] * (m * p)
    orbs = []
    for h in range(m):
        for g in range(p):
            if seen[h * p + g]:
                continue
            cyc = [(h, g)]
            seen[h * p + g] = True
            a, b = h * t % m, g * t % p
            while (a, b) != (h, g):
                cyc.append((a, b))
                seen[a * p + b] = True
                a, b = a * t % m, b * t % p
            orbs.append(cyc)
    census = Counter(len(o) for o in orbs)
    if {str(k): v for k, v in sorted(census.items())} != cert.extra.get("census"):
        return Recheck(False, "orbit census differs")

    by_support = defaultdict(list)
    for o in orbs:
        if len({h for h, _ in o}) == len(o):
            by_support[frozenset(h for h, _ in o)].append(o)

    def image(o):
        c = Counter((h % d, g) for h, g in o)
        return frozenset(c.items())

    def add(x, y):
        c = Counter(dict(x))
        c.update(dict(y))
        return frozenset(c.items())

    reach = {(0, frozenset())}
    for opts in by_support.values():
        imgs = [(len(o), image(o)) for o in opts]
        step = set(reach)
        for size, vec in reach:
            for k, iv in imgs:
                if size + k <= n:
                    step.add((size + k, add(vec, iv)))
        reach = step

    lam = (n - 1) // p
    for size, vec in reach:
        if size != n:
            continue
        c = dict(vec)
        prod = Counter()
        for (a1, b1), x in c.items():
            for (a2, b2), y in c.items():
                prod[((a1 - a2) % d, (b1 - b2) % p)] += x * y
        ok = all(
            prod[(a, b)] == lam * (m // d) - lam * (a == 0) + n * ((a, b) == (0, 0))
            for a in range(d)
            for b in range(p)
        )
        if ok:
            return Recheck(False, f"an orbit cover passes the Z_{d} x Z_{p} test")
    return Recheck(True)
