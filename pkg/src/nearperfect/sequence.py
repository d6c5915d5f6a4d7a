"""Periodic sequences over p-th roots of unity, with optional zero symbols.

A symbol is ``None`` for a zero entry or an exponent ``e`` in ``range(p)``
standing for ``zeta_p ** e``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Optional

from .cyclotomic import CycInt
from .numtheory import is_prime

Symbol = Optional[int]


@dataclass(frozen=True)
class Sequence:
    p: int
    symbols: tuple[Symbol, ...]

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"p={self.p} is not prime")
        if not self.symbols:
            raise ValueError("period must be at least 1")
        for s in self.symbols:
            if s is not None and not 0 <= s < self.p:
                raise ValueError(f"exponent {s} out of range for p={self.p}")

    @classmethod
    def of(cls, p: int, symbols: Iterable[Symbol]) -> "Sequence":
        return cls(p, tuple(symbols))

    @property
    def period(self) -> int:
        return len(self.symbols)

    @property
    def zero_count(self) -> int:
        return sum(s is None for s in self.symbols)

    @property
    def nonzero_count(self) -> int:
        return self.period - self.zero_count

    @property
    def mode(self) -> str:
        return "pary" if self.zero_count == 0 else "almost"

    def shift(self, k: int) -> "Sequence":
        """``b'_i = b_{i+k}``."""
        n = self.period
        return Sequence(self.p, tuple(self.symbols[(i + k) % n] for i in range(n)))

    def scale(self, c: int) -> "Sequence":
        """Multiply every entry by ``zeta**c``."""
        p = self.p
        return Sequence(p, tuple(None if s is None else (s + c) % p for s in self.symbols))

    def values(self) -> list[CycInt]:
        p = self.p
        zero = CycInt.zero(p)
        return [zero if s is None else CycInt.from_exponent(p, s) for s in self.symbols]

    def element_sum(self) -> CycInt:
        counts = [0] * self.p
        for s in self.symbols:
            if s is not None:
                counts[s] += 1
        return CycInt.from_coeffs(self.p, counts)

    # text / json formats

    def to_text(self) -> str:
        tokens = ["0" if s is None else f"z^{s}" for s in self.symbols]
        return f"p={self.p} n={self.period}\n" + ",".join(tokens) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Sequence":
        lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
        if len(lines) < 2:
            raise ValueError("expected a 'p=<p> n=<n>' header and a symbol line")
        header = dict(item.split("=", 1) for item in lines[0].split())
        p, n = int(header["p"]), int(header["n"])
        symbols = [_parse_token(tok.strip()) for tok in ",".join(lines[1:]).split(",")]
        if len(symbols) != n:
            raise ValueError(f"header says n={n} but {len(symbols)} symbols given")
        return cls(p, tuple(symbols))

    def to_json(self) -> str:
        return json.dumps({"p": self.p, "n": self.period, "symbols": list(self.symbols)})

    @classmethod
    def from_json(cls, text: str) -> "Sequence":
        d = json.loads(text)
        seq = cls(d["p"], tuple(d["symbols"]))
        if "n" in d and d["n"] != seq.period:
            raise ValueError("period mismatch in json sequence")
        return seq

    def __str__(self) -> str:
        return ",".join("0" if s is None else f"z^{s}" for s in self.symbols)


def _parse_token(tok: str) -> Symbol:
    if tok == "0":
        return None
    if tok == "1":
        return 0
    if tok == "z":
        return 1
    if tok.startswith("z^"):
        return int(tok[2:])
    raise ValueError(f"bad sequence token {tok!r}")


def load_sequence(text: str) -> Sequence:
    """Parse either the text or the json format."""
    if text.lstrip().startswith("{"):
        return Sequence.from_json(text)
    return Sequence.from_text(text)


def lag_counts(seq: Sequence, t: int) -> list[int]:
    """Exponent histogram of the products ``a_i * conj(a_{i+t})``."""
    p, sym, n = seq.p, seq.symbols, seq.period
    counts = [0] * p
    for i in range(n):
        a, b = sym[i], sym[(i + t) % n]
        if a is not None and b is not None:
            counts[(a - b) % p] += 1
    return counts


def autocorrelation(seq: Sequence) -> tuple[CycInt, ...]:
    """``C(t) = sum_i a_i conj(a_{i+t})`` for ``t = 0 .. n-1``."""
    return tuple(CycInt.from_coeffs(seq.p, lag_counts(seq, t)) for t in range(seq.period))


def is_nps(seq: Sequence, gamma: int) -> bool:
    """Every out-of-phase autocorrelation equals the integer ``gamma``."""
    for t in range(1, seq.period):
        if CycInt.from_coeffs(seq.p, lag_counts(seq, t)).as_integer() != gamma:
            return False
    return True


def _order_key(seq: Sequence) -> tuple[int, ...]:
    return tuple(-1 if s is None else s for s in seq.symbols)


def orbit(seq: Sequence) -> list[Sequence]:
    """All shifts and global root-of-unity multiples of ``seq``."""
    return [seq.shift(k).scale(c) for k in range(seq.period) for c in range(seq.p)]


def canonicalize(seq: Sequence) -> Sequence:
    """Lexicographically least member of the shift/scale orbit, zeros first,
    then exponents ascending."""
    return min(orbit(seq), key=_order_key)
