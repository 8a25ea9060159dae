"""Exact and log-space arithmetic plus degree-sequence bookkeeping."""

from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable

from .errors import DimensionError, DivisibilityError, DomainError


def falling_factorial(a: int, b: int) -> int:
    """Return ``a (a-1) ... (a-b+1)``; the empty product is 1."""
    if b < 0:
        raise DomainError(f"falling factorial needs b >= 0, got {b}")
    if 0 <= a < b:
        return 0
    if a >= 0:
        return math.perm(a, b)
    result = 1
    for i in range(b):
        result *= a - i
    return result


@dataclass(frozen=True)
class DegreeSequence:
    """Degree vector ``k`` with lazily cached summary statistics.

    ``k_avg`` is exact; ``k_hat`` is the geometric mean as a float, with the
    exact product available as ``product`` for invariant checks.
    """

    degrees: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.degrees)

    @cached_property
    def M(self) -> int:
        return sum(self.degrees)

    @cached_property
    def M2(self) -> int:
        return sum(d * (d - 1) for d in self.degrees)

    @cached_property
    def k_avg(self) -> Fraction:
        return Fraction(self.M, self.n)

    @cached_property
    def k_max(self) -> int:
        return max(self.degrees)

    @cached_property
    def counts(self) -> Counter:
        return Counter(self.degrees)

    @property
    def has_zero(self) -> bool:
        return self.counts.get(0, 0) > 0

    @property
    def is_regular(self) -> bool:
        return len(self.counts) == 1

    @cached_property
    def product(self) -> int:
        return math.prod(self.degrees)

    @cached_property
    def log_product(self) -> float:
        """``sum(ln k_i)``, i.e. ``n ln k_hat``; ``-inf`` when an entry is 0."""
        if self.has_zero:
            return -math.inf
        return math.fsum(c * math.log(d) for d, c in sorted(self.counts.items()))

    @cached_property
    def k_hat(self) -> float:
        if self.has_zero:
            return 0.0
        return math.exp(self.log_product / self.n)

    @cached_property
    def sq_dev(self) -> Fraction:
        """``sum((k_i - k)^2)`` as an exact rational."""
        s2 = sum(c * d * d for d, c in self.counts.items())
        return Fraction(s2) - Fraction(self.M * self.M, self.n)

    def __iter__(self):
        return iter(self.degrees)

    def __len__(self) -> int:
        return len(self.degrees)

    def __getitem__(self, i):
        return self.degrees[i]

    def __str__(self) -> str:
        if self.is_regular and self.n > 3:
            return f"{self.degrees[0]}^{self.n}"
        return ",".join(map(str, self.degrees))


def degree_stats(degrees: Iterable[int]) -> DegreeSequence:
    degrees = tuple(int(d) for d in degrees)
    if len(degrees) < 3:
        raise DimensionError(f"degree sequence needs length >= 3, got {len(degrees)}")
    if any(d < 0 for d in degrees):
        raise DomainError("degrees must be non-negative")
    return DegreeSequence(degrees)


def as_degree_sequence(k) -> DegreeSequence:
    if isinstance(k, DegreeSequence):
        return k
    if isinstance(k, str):
        return parse_degrees(k)
    return degree_stats(k)


def degree_tuple(k) -> tuple[int, ...]:
    """Plain degree tuple, without the length >= 3 rule (moment identities allow n = 2)."""
    if isinstance(k, DegreeSequence):
        return k.degrees
    if isinstance(k, str):
        return parse_degrees(k).degrees
    return tuple(int(d) for d in k)


_POWER = re.compile(r"^\s*(\d+)\s*\^\s*(\d+)\s*$")


def parse_degrees(text: str) -> DegreeSequence:
    """Parse ``"1,2,3"``, ``"1 2 3"`` or the regular shorthand ``"2^9"``."""
    m = _POWER.match(text)
    if m:
        k, n = int(m.group(1)), int(m.group(2))
        return degree_stats((k,) * n)
    parts = [p for p in re.split(r"[\s,]+", text.strip()) if p]
    try:
        return degree_stats(int(p) for p in parts)
    except ValueError as exc:
        if isinstance(exc, (DimensionError, DomainError)):
            raise
        raise DomainError(f"cannot parse degree sequence {text!r}") from exc


@dataclass(frozen=True)
class TreeShape:
    n: int
    r: int
    t: int


def tree_shape(n: int, r: int) -> TreeShape:
    if r == 2:
        raise DomainError(
            "r = 2 (graphs) is not supported: the exponential correction differs for graphs"
        )
    if n < 3 or r < 3:
        raise DomainError(f"need n >= 3 and r >= 3, got n={n}, r={r}")
    if (n - 1) % (r - 1):
        raise DivisibilityError(
            f"(r-1) divides (n-1) fails: {r - 1} does not divide {n - 1}; no hypertree on {n} vertices"
        )
    return TreeShape(n, r, (n - 1) // (r - 1))


def log_gamma(x: float) -> float:
    if x <= 0:
        raise DomainError(f"log_gamma needs x > 0, got {x}")
    return math.lgamma(x)


def log_factorial(m: int) -> float:
    return math.lgamma(m + 1)


def log_rational(q: Fraction | int) -> float:
    """Natural log of a positive exact rational, safe for huge numerators."""
    q = Fraction(q)
    if q <= 0:
        raise DomainError("log of a non-positive rational")
    return math.log(q.numerator) - math.log(q.denominator)


@dataclass(frozen=True)
class LogReal:
    """A real number stored as ``sign * exp(log_abs)``.

    Zero is ``sign == 0`` with ``log_abs == -inf``.
    """

    sign: int
    log_abs: float

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise DomainError(f"bad sign {self.sign}")
        if self.sign == 0 and self.log_abs != -math.inf:
            object.__setattr__(self, "log_abs", -math.inf)

    @classmethod
    def zero(cls) -> "LogReal":
        return cls(0, -math.inf)

    @classmethod
    def from_log(cls, log_abs: float, sign: int = 1) -> "LogReal":
        return cls(sign, log_abs) if sign else cls.zero()

    @classmethod
    def from_rational(cls, q: Fraction | int) -> "LogReal":
        q = Fraction(q)
        if q == 0:
            return cls.zero()
        return cls(1 if q > 0 else -1, log_rational(abs(q)))

    @classmethod
    def from_float(cls, x: float) -> "LogReal":
        if x == 0:
            return cls.zero()
        return cls(1 if x > 0 else -1, math.log(abs(x)))

    @property
    def is_zero(self) -> bool:
        return self.sign == 0

    def __mul__(self, other: "LogReal") -> "LogReal":
        if self.sign == 0 or other.sign == 0:
            return LogReal.zero()
        return LogReal(self.sign * other.sign, self.log_abs + other.log_abs)

    def __truediv__(self, other: "LogReal") -> "LogReal":
        if other.sign == 0:
            raise ZeroDivisionError("LogReal division by zero")
        if self.sign == 0:
            return LogReal.zero()
        return LogReal(self.sign * other.sign, self.log_abs - other.log_abs)

    def scale(self, log_factor: float) -> "LogReal":
        """Multiply by ``exp(log_factor)``."""
        if self.sign == 0:
            return self
        return LogReal(self.sign, self.log_abs + log_factor)

    @property
    def log10_abs(self) -> float:
        return self.log_abs / math.log(10)

    def to_float(self) -> float:
        """Plain float; overflows to ``inf`` rather than raising."""
        if self.sign == 0:
            return 0.0
        try:
            return self.sign * math.exp(self.log_abs)
        except OverflowError:
            return self.sign * math.inf

    @property
    def representable(self) -> bool:
        return self.sign == 0 or self.log_abs < 709.0
