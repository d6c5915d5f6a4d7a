"""Exact arithmetic in Z[zeta_p] for a prime p.

Elements are stored as length-``p`` integer vectors ``c`` meaning
``sum(c[e] * zeta**e)``. Since ``1 + zeta + ... + zeta**(p-1) = 0`` the vector
is only defined up to adding a constant to every entry; the canonical form
fixes ``c[p-1] = 0``. Python integers never overflow, so no width checks are
needed.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Optional

from .numtheory import is_prime


def _canonical(coeffs) -> tuple[int, ...]:
    last = coeffs[-1]
    if last == 0:
        return tuple(coeffs)
    return tuple(c - last for c in coeffs)


@dataclass(frozen=True)
class CycInt:
    p: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.p:
            raise ValueError(f"need {self.p} coefficients, got {len(self.coeffs)}")
        if self.coeffs[-1] != 0:
            object.__setattr__(self, "coeffs", _canonical(self.coeffs))

    @classmethod
    def from_coeffs(cls, p: int, coeffs) -> "CycInt":
        return cls(p, tuple(int(c) for c in coeffs))

    @classmethod
    def integer(cls, p: int, k: int) -> "CycInt":
        return cls(p, (k,) + (0,) * (p - 1))

    @classmethod
    def zero(cls, p: int) -> "CycInt":
        return cls.integer(p, 0)

    @classmethod
    def from_exponent(cls, p: int, e: int) -> "CycInt":
        """``zeta_p ** e`` for ``0 <= e < p``."""
        if not is_prime(p):
            raise ValueError(f"p={p} is not prime")
        if not 0 <= e < p:
            raise ValueError(f"exponent {e} out of range for p={p}")
        c = [0] * p
        c[e] = 1
        return cls(p, tuple(c))

    def _same_ring(self, other: "CycInt") -> None:
        if self.p != other.p:
            raise ValueError(f"modulus mismatch: {self.p} vs {other.p}")

    def __add__(self, other: "CycInt") -> "CycInt":
        self._same_ring(other)
        return CycInt(self.p, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "CycInt") -> "CycInt":
        self._same_ring(other)
        return CycInt(self.p, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "CycInt":
        return CycInt(self.p, tuple(-a for a in self.coeffs))

    def __mul__(self, other: "CycInt") -> "CycInt":
        self._same_ring(other)
        p = self.p
        out = [0] * p
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[(i + j) % p] += a * b
        return CycInt(p, tuple(out))

    def conj(self) -> "CycInt":
        """Complex conjugate: ``zeta -> zeta**-1``."""
        p = self.p
        return CycInt(p, tuple(self.coeffs[-e % p] for e in range(p)))

    def as_integer(self) -> Optional[int]:
        if any(self.coeffs[1:]):
            return None
        return self.coeffs[0]

    def __str__(self) -> str:
        terms = [str(self.coeffs[0])]
        for e, c in enumerate(self.coeffs[1:], start=1):
            if c:
                terms.append(f"{c}*z" if e == 1 else f"{c}*z^{e}")
        return " + ".join(terms)

    def to_json(self) -> str:
        return json.dumps([self.p, list(self.coeffs)])

    @classmethod
    def from_json(cls, text: str) -> "CycInt":
        p, coeffs = json.loads(text)
        return cls.from_coeffs(p, coeffs)

    @classmethod
    def parse(cls, p: int, text: str) -> "CycInt":
        """Inverse of ``str``: ``"a0 + a1*z + a2*z^2 + ..."``."""
        coeffs = [0] * p
        for term in text.split(" + "):
            m = re.fullmatch(r"\s*(-?\d+)(?:\*z(?:\^(\d+))?)?\s*", term)
            if m is None:
                raise ValueError(f"cannot parse term {term!r}")
            e = 0 if "z" not in term else int(m.group(2) or 1)
            if e >= p:
                raise ValueError(f"exponent {e} out of range for p={p}")
            coeffs[e] += int(m.group(1))
        return cls.from_coeffs(p, coeffs)


def from_exponent(p: int, e: int) -> CycInt:
    return CycInt.from_exponent(p, e)


def as_integer(x: CycInt) -> Optional[int]:
    return x.as_integer()


def conj(x: CycInt) -> CycInt:
    return x.conj()
