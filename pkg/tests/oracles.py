"""Independent brute-force oracles shared by the test modules."""

from __future__ import annotations

import math
from fractions import Fraction

import mpmath
import numpy as np


def subset_tables(degrees):
    """Per-mask hit counts for every subset of the ground set.

    Vertex j owns ``degrees[j] - 1`` consecutive cells of ``[N]``. Returns
    ``(sizes, hits)`` where ``sizes[m]`` is the popcount of mask ``m`` and
    ``hits[j, m]`` the number of cells of vertex j inside ``m``.
    """
    owned = [d - 1 for d in degrees]
    N = sum(owned)
    masks = np.arange(1 << N, dtype=np.uint32)
    hits = np.empty((len(degrees), 1 << N), dtype=np.int64)
    start = 0
    for j, c in enumerate(owned):
        group = np.uint32(((1 << c) - 1) << start)
        hits[j] = np.bitwise_count(masks & group)
        start += c
    return np.bitwise_count(masks).astype(np.int64), hits


def falling_array(c: np.ndarray, a: int) -> np.ndarray:
    out = np.ones_like(c)
    for i in range(a):
        out = out * (c - i)
    return out


def brute_moment(sizes, hits, j: int, a: int, s: int) -> Fraction:
    """Mean of ``(X_j - 1)_a`` over all s-subsets (``X_j - 1`` is the hit count)."""
    sel = sizes == s
    return Fraction(int(falling_array(hits[j - 1][sel], a).sum()), int(sel.sum()))


def brute_expected_lambda(degrees, r: int, t: int, sizes, hits) -> Fraction:
    """Mean of ``lambda(X)`` over all (t-1)-subsets, with ``kn - rt`` read as ``N - (t-1)``."""
    N = sum(degrees) - len(degrees)
    sel = sizes == t - 1
    rest = np.asarray([d - 1 for d in degrees])[:, None] - hits[:, sel]
    total = int((rest * (rest - 1)).sum())
    return Fraction((r - 1) * total, 2 * (N - (t - 1)) * int(sel.sum()))


def mp_log_F(degrees, r: int, dps: int = 60) -> float:
    """ln F from the product form, at high precision."""
    with mpmath.workdps(dps):
        n = len(degrees)
        k = mpmath.mpf(sum(degrees)) / n
        khat = mpmath.root(mpmath.fprod(degrees), n)
        c = k * r - k - r
        head = mpmath.sqrt(k - 1) * (r - 1) / (n * c ** (mpmath.mpf(r + 1) / (2 * (r - 1))))
        body = khat * mpmath.power(r - 1, k / r) * mpmath.power(k - 1, k - 1)
        body /= mpmath.power(k, (k * r - k) / r) * mpmath.power(c, c / (r * (r - 1)))
        return float(mpmath.log(head) + n * mpmath.log(body))


def exact_log_D(degrees, r: int) -> float:
    """ln D from exact factorials."""
    n, M = len(degrees), sum(degrees)
    t = (n - 1) // (r - 1)
    f = math.factorial
    num = r ** t * math.prod(degrees) * f(n) * f(M // r) * f(M - n)
    den = n * f((M - r * t) // r) * f(M) * f(t)
    q = Fraction(num, den)
    return math.log(q.numerator) - math.log(q.denominator)


def nonincreasing(n: int, total_extra: int, cap: int | None = None):
    """Non-increasing vectors of n positive integers whose entries minus one sum to ``total_extra``."""
    cap = total_extra if cap is None else cap

    def go(i, left, hi):
        if i == n:
            if left == 0:
                yield ()
            return
        for v in range(min(hi, left), -1, -1):
            if v * (n - i) < left:
                break
            for rest in go(i + 1, left - v, v):
                yield (v + 1,) + rest

    yield from go(0, total_extra, cap)
