"""
Rational points of Cantor space
-------------------------------
Eventually periodic binary sequences u·p^ω, stored in normal form (primitive
period, shortest preperiod), plus the circle map Σ and its inverse on exact
rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

import numpy as np

from forest_skein.errors import DomainError


def _primitive_root(p: str) -> str:
    n = len(p)
    for d in range(1, n + 1):
        if n % d == 0 and p[:d] * (n // d) == p:
            return p[:d]
    return p


def _check_bits(w: str, what: str) -> None:
    if set(w) - {"0", "1"}:
        raise DomainError(f"{what} must be a bit-word, got {w!r}")


@dataclass(frozen=True)
class RationalPoint:
    """The sequence prefix·period^ω. Normal forms are unique, so dataclass
    equality is equality of sequences."""

    prefix: str
    period: str

    def __post_init__(self) -> None:
        _check_bits(self.prefix, "prefix")
        _check_bits(self.period, "period")
        if not self.period:
            raise DomainError("period must be non-empty")
        u, p = self.prefix, _primitive_root(self.period)
        while u and u[-1] == p[-1]:
            u, p = u[:-1], p[-1] + p[:-1]
        object.__setattr__(self, "prefix", u)
        object.__setattr__(self, "period", p)

    def bit(self, i: int) -> str:
        if i < len(self.prefix):
            return self.prefix[i]
        return self.period[(i - len(self.prefix)) % len(self.period)]

    def head(self, k: int) -> str:
        """The first k bits."""
        return "".join(self.bit(i) for i in range(k))

    def startswith(self, w: str) -> bool:
        return self.head(len(w)) == w

    def drop(self, k: int) -> "RationalPoint":
        if k <= len(self.prefix):
            return RationalPoint(self.prefix[k:], self.period)
        shift = (k - len(self.prefix)) % len(self.period)
        return RationalPoint("", self.period[shift:] + self.period[:shift])

    def prepend(self, w: str) -> "RationalPoint":
        return RationalPoint(w + self.prefix, self.period)

    @property
    def is_dyadic(self) -> bool:
        """Eventually constant (the classes 𝔔⁻ = w·0̄ and 𝔔⁺ = w·1̄)."""
        return self.period in ("0", "1")

    def __str__(self) -> str:
        return f"{self.prefix}({self.period})"


ZERO = RationalPoint("", "0")
ONE = RationalPoint("", "1")


def common_prefix(x: RationalPoint, y: RationalPoint) -> str | None:
    """Longest common prefix, or None when x == y."""
    if x == y:
        return None
    horizon = len(x.prefix) + len(y.prefix) + lcm(len(x.period), len(y.period))
    for i in range(horizon):
        if x.bit(i) != y.bit(i):
            return x.head(i)
    raise AssertionError("distinct rational points agree past their horizon")


def lex_less(x: RationalPoint, y: RationalPoint) -> bool:
    """Lexicographic order on sequences (0 < 1)."""
    w = common_prefix(x, y)
    return w is not None and x.bit(len(w)) == "0"


def random_point(rng: np.random.Generator, max_prefix: int = 6, max_period: int = 4) -> RationalPoint:
    u = "".join(str(b) for b in rng.integers(0, 2, size=int(rng.integers(0, max_prefix + 1))))
    p = "".join(str(b) for b in rng.integers(0, 2, size=int(rng.integers(1, max_period + 1))))
    return RationalPoint(u, p)


# --- Circle map ---------------------------------------------------------------
def _value(w: str) -> int:
    return int(w, 2) if w else 0


def sigma_circle(x: RationalPoint) -> Fraction:
    """Σ(x) = Σ_k x_k/2^k read mod 1, so Σ(1̄) = 0."""
    u, p = x.prefix, x.period
    scale = 2 ** len(u)
    value = Fraction(_value(u), scale) + Fraction(_value(p), scale * (2 ** len(p) - 1))
    return value % 1


def cone_interval(w: str) -> tuple[Fraction, Fraction]:
    """[Σ(w·0̄), Σ(w·0̄) + 2^-|w|]; the right end is not wrapped."""
    x0 = Fraction(_value(w), 2 ** len(w))
    return x0, x0 + Fraction(1, 2 ** len(w))


def from_circle(q: Fraction) -> RationalPoint:
    """The binary expansion of q ∈ [0, 1); dyadics get the 0̄-ending one."""
    q = Fraction(q)
    if not 0 <= q < 1:
        raise DomainError(f"circle point must lie in [0, 1), got {q}")
    num, den = q.numerator, q.denominator
    digits: list[str] = []
    seen: dict[int, int] = {}
    while num not in seen:
        seen[num] = len(digits)
        num *= 2
        digits.append("1" if num >= den else "0")
        if num >= den:
            num -= den
    start = seen[num]
    return RationalPoint("".join(digits[:start]), "".join(digits[start:]))
