"""Closed-form asymptotic estimates, evaluated in log space.

Every ``O(.)`` term is surfaced as an ``error_exponent_bound`` with no
hidden constant; the ``regime_ok`` flag is a heuristic convenience only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .combinatorics import (
    DegreeSequence,
    LogReal,
    as_degree_sequence,
    degree_tuple,
    falling_factorial,
    log_factorial,
    tree_shape,
)
from .census import leading_factor
from .errors import ContractError, DivisibilityError, DomainError, RegimeError
from .enumeration import check_suitable, suitable_degree_sequences

REGIME_THRESHOLD = 0.1


@dataclass(frozen=True)
class AsymptoticEstimate:
    value: LogReal
    error_exponent_bound: float
    threshold: float = REGIME_THRESHOLD
    regime_ok: bool = field(init=False)

    def __post_init__(self):
        if not self.error_exponent_bound >= 0:
            raise DomainError("error bound must be non-negative")
        object.__setattr__(self, "regime_ok", self.error_exponent_bound <= self.threshold)

    @property
    def log_value(self) -> float:
        return self.value.log_abs

    def to_json(self) -> dict:
        return {
            "log10_value": None if self.value.is_zero else self.value.log10_abs,
            "value_if_representable": self.value.to_float() if self.value.representable else None,
            "error_exponent_bound": self.error_exponent_bound,
            "regime_ok": self.regime_ok,
        }


def _kr_k_r(k: DegreeSequence, r: int) -> Fraction:
    return k.k_avg * r - k.k_avg - r


def _check_divisibility(k: DegreeSequence, r: int):
    shape = tree_shape(k.n, r)
    if k.M % r:
        raise DivisibilityError(f"r divides kn fails: {r} does not divide kn = {k.M}")
    return shape


def hypotheses(k, r: int) -> dict:
    """Which hypotheses of the closed form hold, without raising."""
    k = as_degree_sequence(k)
    div = r >= 3 and (k.n - 1) % (r - 1) == 0 and k.M % r == 0
    pos = k.k_avg > 1 and _kr_k_r(k, r) > 0
    return {"divisibility": div, "positivity": pos}


def error_exponent_bound(k, r: int) -> float:
    """``r^5 k_max^3 / ((kr - k - r) n)``; infinite when ``kr - k - r <= 0``."""
    k = as_degree_sequence(k)
    c = _kr_k_r(k, r)
    if c <= 0:
        return math.inf
    return float(Fraction(r**5 * k.k_max**3) / (c * k.n))


def _require_positive(k: DegreeSequence, r: int) -> Fraction:
    if k.k_avg <= 1:
        raise RegimeError(f"average degree must exceed 1, got {k.k_avg}")
    c = _kr_k_r(k, r)
    if c <= 0:
        raise RegimeError(f"kr - k - r = {c} <= 0: the closed form is undefined")
    return c


def log_F(k, r: int) -> LogReal:
    """ln of the leading factor ``F^(r)(k, k_hat)``, term by term."""
    k = as_degree_sequence(k)
    n = k.n
    tree_shape(n, r)
    if k.has_zero:
        return LogReal.zero()
    c = _require_positive(k, r)
    ka = k.k_avg
    lk1 = math.log(ka - 1)
    lc = math.log(c)
    head = 0.5 * lk1 + math.log(r - 1) - math.log(n) - (r + 1) / (2 * (r - 1)) * lc
    per_vertex = (
        float(ka / r) * math.log(r - 1)
        + float(ka - 1) * lk1
        - float((ka * r - ka) / r) * math.log(ka)
        - float(c / (r * (r - 1))) * lc
    )
    return LogReal.from_log(head + k.log_product + n * per_vertex)


def exact_D(k, r: int) -> Fraction:
    """``D^(r)_k`` as an exact rational (needs the exact degree product)."""
    k = as_degree_sequence(k)
    shape = _check_divisibility(k, r)
    n, t, M = k.n, shape.t, k.M
    if r * t > M:
        raise ContractError(f"r t = {r * t} exceeds kn = {M}")
    f = math.factorial
    num = r**t * k.product * f(n) * f(M // r) * f(M - n)
    den = n * f(M // r - t) * f(M) * f(t)
    return Fraction(num, den)


def log_D(k, r: int) -> LogReal:
    """ln ``D^(r)_k`` through log-gamma."""
    k = as_degree_sequence(k)
    shape = _check_divisibility(k, r)
    n, t, M = k.n, shape.t, k.M
    if r * t > M:
        raise ContractError(f"r t = {r * t} exceeds kn = {M}")
    if k.has_zero:
        return LogReal.zero()
    lf = log_factorial
    val = (
        t * math.log(r) + k.log_product + lf(n) + lf(M // r) + lf(M - n)
        - math.log(n) - lf(M // r - t) - lf(M) - lf(t)
    )
    return LogReal.from_log(val)


def lambda0(k, r: int, *, exact: bool = False):
    """``(r-1)/(2kn) * sum (k_i)_2``."""
    k = as_degree_sequence(k)
    if k.M == 0:
        raise DomainError("lambda0 needs M(k) > 0")
    val = Fraction((r - 1) * k.M2, 2 * k.M)
    return val if exact else float(val)


def _excess(k: DegreeSequence, r: int, t: int | None) -> int:
    """``kn - rt``, written as ``(k-1)n - (t-1)`` so a synthetic ``t`` is allowed."""
    if t is None:
        t = tree_shape(k.n, r).t
    return k.M - k.n - (t - 1)


def lambda_denominator_identity(k, r: int) -> bool:
    """``2(kr-k-r)n + 2r == 2(r-1)(kn-rt)``, checked exactly."""
    k = as_degree_sequence(k)
    t = tree_shape(k.n, r).t
    return 2 * _kr_k_r(k, r) * k.n + 2 * r == 2 * (r - 1) * (k.M - r * t)


def lambda_x(k, x: Sequence[int], r: int, *, t: int | None = None, exact: bool = False,
             form: str = "excess"):
    """``lambda(x) = (r-1) / (2(kn-rt)) * sum (k_i - x_i)_2``.

    ``form="alternate"`` uses the denominator
    ``2(kr-k-r)n + 2r`` instead; the two agree exactly.
    """
    k = as_degree_sequence(k)
    x = tuple(x)
    if len(x) != k.n or any(xi > ki for xi, ki in zip(x, k.degrees)):
        raise ContractError("x must have length n and satisfy x_i <= k_i")
    s = sum(falling_factorial(ki - xi, 2) for ki, xi in zip(k.degrees, x))
    if s == 0:
        # empty sum: lambda vanishes even where kn - rt = 0
        return Fraction(0) if exact else 0.0
    if form == "alternate":
        den = 2 * _kr_k_r(k, r) * k.n + 2 * r
        if den <= 0:
            form = "excess"
        else:
            val = Fraction((r - 1) ** 2 * s) / den
    if form == "excess":
        excess = _excess(k, r, t)
        if excess <= 0:
            raise DomainError(f"kn - rt = {excess} must be positive")
        val = Fraction((r - 1) * s, 2 * excess)
    elif form != "alternate":
        raise ValueError(f"unknown form {form!r}")
    return val if exact else float(val)


def g(k, x: Sequence[int], r: int, *, exact: bool = False):
    val = lambda0(k, r, exact=True) - lambda_x(k, x, r, exact=True)
    return val if exact else float(val)


def beta(k, r: int, x: Sequence[int], t: int) -> float:
    """Error parameter of the containment-probability estimate."""
    k = as_degree_sequence(k)
    rest = k.M - sum(x)
    if rest <= 0:
        raise DomainError(f"M(k - x) = {rest}: beta is singular")
    km = k.k_max
    val = (
        Fraction(r**4 * km**3, rest)
        + Fraction(t * km**3, rest**2)
        + Fraction(r * t * km**4, rest**3)
    )
    return float(val)


def tree_probability_estimate(k, r: int, x: Sequence[int], *,
                              threshold: float = REGIME_THRESHOLD) -> AsymptoticEstimate:
    """Estimated probability that a random element of ``H_r(k)`` contains a
    given hypertree with degree vector ``x``."""
    k = as_degree_sequence(k)
    shape = _check_divisibility(k, r)
    x = tuple(x)
    check_suitable(x, shape)
    bound = error_exponent_bound(k, r)
    if any(xi > ki for xi, ki in zip(x, k.degrees)):
        return AsymptoticEstimate(LogReal.zero(), bound, threshold)
    lead = leading_factor(k, r, x, shape.t)
    if lead == 0:
        return AsymptoticEstimate(LogReal.zero(), bound, threshold)
    expo = lambda0(k, r, exact=True) - lambda_x(k, x, r, exact=True)
    return AsymptoticEstimate(LogReal.from_rational(lead).scale(float(expo)), bound, threshold)


def hypergeom_falling_moment(j: int, a: int, k: Sequence[int], t: int) -> Fraction:
    """``E (X_j - 1)_a = (t-1)_a (k_j - 1)_a / ((k-1)n)_a`` for 1-based ``j``.

    ``k`` may be any positive integer vector here; the ground set has
    ``sum(k_i - 1)`` cells and ``t - 1`` of them are drawn.
    """
    degrees = degree_tuple(k)
    if a < 0:
        raise DomainError("moment order must be non-negative")
    N = sum(degrees) - len(degrees)
    if a > N:
        raise DomainError(f"order {a} exceeds ground set size {N}")
    if not 0 <= t - 1 <= N:
        raise ContractError(f"cannot draw t-1 = {t - 1} cells from {N}")
    return Fraction(
        falling_factorial(t - 1, a) * falling_factorial(degrees[j - 1] - 1, a),
        falling_factorial(N, a),
    )


def expected_lambda_exact(k, r: int, t: int | None = None) -> Fraction:
    """``E lambda(X) = (r-1)(kn-rt-1) sum (k_i-1)_2 / (2 ((k-1)n)_2)``, exact.

    ``t`` defaults to the hypertree edge count; an explicit ``t`` treats
    ``kn - rt`` as ``(k-1)n - (t-1)``.
    """
    degrees = degree_tuple(k)
    n = len(degrees)
    if t is None:
        t = tree_shape(n, r).t
    N = sum(degrees) - n
    if N < 2:
        raise DomainError(f"(k-1)n = {N} < 2")
    excess = N - (t - 1)
    s = sum(falling_factorial(d - 1, 2) for d in degrees)
    return Fraction((r - 1) * (excess - 1) * s, 2 * falling_factorial(N, 2))


def expected_g_exact(k, r: int) -> Fraction:
    return lambda0(k, r, exact=True) - expected_lambda_exact(k, r)


def expected_g_closed_form(k, r: int) -> tuple[float, float]:
    """Main term of ``E g(X)`` and the size ``r k_max / (kn)`` of its error."""
    k = as_degree_sequence(k)
    if k.k_avg <= 1:
        raise DomainError(f"average degree must exceed 1, got {k.k_avg}")
    return float(_exponent(k, r)), r * k.k_max / k.M


def _exponent(k: DegreeSequence, r: int) -> Fraction:
    ka = k.k_avg
    lead = (ka * r - r - 1) / (2 * (ka - 1))
    spread = (ka * r - r - 2 * ka + 1) / (2 * ka * (ka - 1) ** 2 * k.n) * k.sq_dev
    return lead - spread


def theorem1_estimate(k, r: int, *, threshold: float = REGIME_THRESHOLD) -> AsymptoticEstimate:
    """Asymptotic mean number of spanning hypertrees in ``H_r(k)``."""
    k = as_degree_sequence(k)
    _check_divisibility(k, r)
    bound = error_exponent_bound(k, r)
    if k.has_zero:
        return AsymptoticEstimate(LogReal.zero(), bound, threshold)
    _require_positive(k, r)
    return AsymptoticEstimate(log_F(k, r).scale(float(_exponent(k, r))), bound, threshold)


def regular_estimate(n: int, k: int, r: int, *, threshold: float = REGIME_THRESHOLD) -> AsymptoticEstimate:
    return theorem1_estimate(DegreeSequence((k,) * n), r, threshold=threshold)


def concentration_tail_bound(alpha: float, s: int, N: int, z: float) -> float:
    """``exp(-2 z^2 / (min(s, N-s) alpha^2))`` for a uniform s-subset of [N]."""
    _check_subset_params(alpha, s, N)
    if z <= 0:
        raise DomainError("z must be positive")
    if alpha == 0:
        return 0.0
    return math.exp(-2 * z * z / (min(s, N - s) * alpha * alpha))


def concentration_K_bound(alpha: float, s: int, N: int) -> float:
    """Upper bound ``min(s, N-s) alpha^2 / 8`` on ``ln E e^h - E h``."""
    _check_subset_params(alpha, s, N)
    return min(s, N - s) * alpha * alpha / 8


def _check_subset_params(alpha: float, s: int, N: int) -> None:
    if alpha < 0:
        raise DomainError("alpha must be non-negative")
    if not 0 < s < N:
        raise DomainError(f"need 0 < s < N, got s={s}, N={N}")


def max_adjacent_g_difference(k, r: int) -> Fraction:
    """Exact max of ``|g(x) - g(x')|`` over adjacent suitable ``x, x'``.

    ``x'`` is adjacent to ``x`` when it moves one unit of degree from one
    vertex to another.
    """
    k = as_degree_sequence(k)
    lam = {}
    for sx in suitable_degree_sequences(k, r):
        lam[sx.x] = lambda_x(k, sx.x, r, exact=True)
    best = Fraction(0)
    n = k.n
    for x, lx in lam.items():
        for i in range(n):
            if x[i] >= k.degrees[i]:
                continue
            for j in range(n):
                if j == i or x[j] <= 1:
                    continue
                y = list(x)
                y[i] += 1
                y[j] -= 1
                best = max(best, abs(lx - lam[tuple(y)]))
    return best
