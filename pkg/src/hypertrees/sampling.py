"""Randomised estimation on the pairing model.

Reproducibility contract: a run is identified by its ``seed``; sample ``i``
draws from its own Philox (counter-based) stream keyed by ``(seed, i)``, so
results do not depend on how samples are split across workers.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .asymptotics import lambda0
from .combinatorics import as_degree_sequence, degree_tuple, tree_shape
from .enumeration import (
    count_hypertrees,
    count_hypertrees_with_degrees,
    enumerate_hypertrees,
    suitable_degree_sequences,
    unconstrained_host,
)
from .errors import BudgetError, ContractError, DivisibilityError
from .hypergraph import Hypergraph, _count_spanning

DEFAULT_MAX_REJECTS = 100_000


def stream(seed: int, index: int = 0) -> np.random.Generator:
    """Independent generator for sample ``index`` of run ``seed``."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(index,))))


@dataclass(frozen=True)
class McEstimate:
    mean: float
    stderr: float
    samples: int
    seed: int
    rejection_rate: float
    degenerate: bool = False

    def to_json(self) -> dict:
        return {
            "mean": self.mean,
            "stderr": self.stderr,
            "samples": self.samples,
            "seed": str(self.seed),
            "rejection_rate": self.rejection_rate,
            "degenerate": self.degenerate,
        }


def _points(k) -> np.ndarray:
    return np.repeat(np.arange(1, k.n + 1), k.degrees)


def sample_pairing(k, r: int, rng: np.random.Generator) -> list[tuple[int, ...]]:
    """Uniform partition of the configuration points into cells of size ``r``,
    projected to vertex multisets (loops and repeats possible)."""
    k = as_degree_sequence(k)
    if k.M % r:
        raise DivisibilityError(f"r divides kn fails: {r} does not divide {k.M}")
    cells = rng.permutation(_points(k)).reshape(-1, r)
    cells.sort(axis=1)
    return [tuple(c) for c in cells.tolist()]


def is_simple(cells: list[tuple[int, ...]]) -> bool:
    if len(set(cells)) != len(cells):
        return False
    return all(len(set(c)) == len(c) for c in cells)


def _sample_simple(k, r: int, rng: np.random.Generator, max_rejects: int) -> tuple[list, int]:
    pts = _points(k)
    rejects = 0
    while True:
        cells = rng.permutation(pts).reshape(-1, r)
        cells.sort(axis=1)
        if not (cells[:, 1:] == cells[:, :-1]).any():
            edges = [tuple(c) for c in cells.tolist()]
            if len(set(edges)) == len(edges):
                return edges, rejects
        rejects += 1
        if rejects > max_rejects:
            raise BudgetError(
                f"rejection budget {max_rejects} exhausted before a simple hypergraph appeared",
                rejection_rate=1.0,
            )


def sample_simple_hypergraph(k, r: int, rng: np.random.Generator, *,
                             max_rejects: int = DEFAULT_MAX_REJECTS) -> Hypergraph:
    """Uniform element of ``H_r(k)`` by rejecting non-simple pairings."""
    k = as_degree_sequence(k)
    if k.M % r:
        raise DivisibilityError(f"r divides kn fails: {r} does not divide {k.M}")
    edges, _ = _sample_simple(k, r, rng, max_rejects)
    return Hypergraph(k.n, r, tuple(edges))


def _mc_block(args) -> tuple[list[int], int]:
    degrees, r, seed, start, stop, max_rejects = args
    k = as_degree_sequence(degrees)
    counts, rejects = [], 0
    for i in range(start, stop):
        edges, rej = _sample_simple(k, r, stream(seed, i), max_rejects)
        rejects += rej
        counts.append(_count_spanning(k.n, r, sorted(edges)))
    return counts, rejects


def mc_expected_spanning_hypertrees(k, r: int, samples: int, seed: int, *, workers: int = 1,
                                    max_rejects: int = DEFAULT_MAX_REJECTS) -> McEstimate:
    """Monte Carlo mean of the spanning-hypertree count over ``H_r(k)``.

    Counts are integers, so the mean and variance come from exact integer
    sums and the estimate is bit-identical for any ``workers``.
    """
    k = as_degree_sequence(k)
    if samples < 1:
        raise ContractError("need at least one sample")
    if k.M % r:
        raise DivisibilityError(f"r divides kn fails: {r} does not divide {k.M}")
    tree_shape(k.n, r)
    workers = max(1, min(workers, samples))
    bounds = [samples * w // workers for w in range(workers + 1)]
    tasks = [(k.degrees, r, seed, bounds[w], bounds[w + 1], max_rejects) for w in range(workers)]
    try:
        if workers > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                parts = list(pool.map(_mc_block, tasks))
        else:
            parts = [_mc_block(t) for t in tasks]
    except BudgetError as exc:
        raise BudgetError(str(exc), rejection_rate=1.0) from None
    counts = [c for part, _ in parts for c in part]
    rejects = sum(rej for _, rej in parts)
    s1 = sum(counts)
    s2 = sum(c * c for c in counts)
    mean = s1 / samples
    if samples == 1:
        stderr, degenerate = 0.0, True
    else:
        var = (s2 * samples - s1 * s1) / (samples * (samples - 1))
        stderr, degenerate = math.sqrt(var / samples), False
    return McEstimate(mean, stderr, samples, seed, rejects / (rejects + samples), degenerate)


def _groups(degrees: tuple[int, ...]) -> np.ndarray:
    """Cell-to-vertex map of the ground set ``[(k-1)n]`` (vertex j owns k_j - 1 cells)."""
    if min(degrees) < 1:
        raise ContractError("every degree must be at least 1")
    return np.repeat(np.arange(len(degrees)), np.asarray(degrees) - 1)


def sample_degree_vector_X(k, t: int, rng: np.random.Generator) -> tuple[int, ...]:
    """``X_j = |A_j & C| + 1`` for a uniform (t-1)-subset ``C`` of the ground set."""
    degrees = degree_tuple(k)
    lab = _groups(degrees)
    if not 0 <= t - 1 <= len(lab):
        raise ContractError(f"cannot draw t-1 = {t - 1} cells from {len(lab)}")
    C = rng.choice(len(lab), size=t - 1, replace=False)
    return tuple((np.bincount(lab[C], minlength=len(degrees)) + 1).tolist())


def sample_degree_vectors_X(k, t: int, size: int, rng: np.random.Generator) -> np.ndarray:
    """``size`` independent draws of ``X`` as rows of an integer array."""
    degrees = degree_tuple(k)
    lab = _groups(degrees)
    N, s = len(lab), t - 1
    if not 0 <= s <= N:
        raise ContractError(f"cannot draw t-1 = {s} cells from {N}")
    out = np.ones((size, len(degrees)), dtype=np.int64)
    if s == 0:
        return out
    # first s positions of a uniform random ordering form a uniform s-subset
    C = np.argsort(rng.random((size, N)), axis=1)[:, :s]
    hits = lab[C]
    rows = np.repeat(np.arange(size), s)
    np.add.at(out, (rows, hits.ravel()), 1)
    return out


def g_values(k, r: int, X: np.ndarray) -> np.ndarray:
    """Vectorised ``g(x) = lambda0 - lambda(x)`` over rows of ``X``."""
    k = as_degree_sequence(k)
    t = tree_shape(k.n, r).t
    kv = np.asarray(k.degrees, dtype=np.int64)
    d = kv[None, :] - X
    s = (d * (d - 1)).sum(axis=1)
    excess = k.M - r * t
    return lambda0(k, r) - (r - 1) * s / (2 * excess)


def sample_g_values(k, r: int, samples: int, rng: np.random.Generator) -> np.ndarray:
    k = as_degree_sequence(k)
    t = tree_shape(k.n, r).t
    return g_values(k, r, sample_degree_vectors_X(k, t, samples, rng))


def empirical_exp_g(k, r: int, samples: int, rng: np.random.Generator) -> tuple[float, float]:
    """(mean of ``e^g(X)``, mean of ``g(X)``) over ``samples`` draws."""
    gs = sample_g_values(k, r, samples, rng)
    return float(np.exp(gs).mean()), float(gs.mean())


def _randbelow(rng: np.random.Generator, m: int) -> int:
    """Uniform integer in ``[0, m)`` for arbitrarily large ``m``."""
    if m < 2**62:
        return int(rng.integers(m))
    bits = m.bit_length()
    words = (bits + 31) // 32
    while True:
        v = 0
        for w in rng.integers(0, 2**32, size=words, dtype=np.uint64).tolist():
            v = (v << 32) | w
        v >>= words * 32 - bits
        if v < m:
            return v


@lru_cache(maxsize=16)
def _all_hypertrees(n: int, r: int, budget: int) -> tuple[Hypergraph, ...]:
    return tuple(enumerate_hypertrees(n, r, budget=budget))


@lru_cache(maxsize=64)
def _class_hypertrees(n: int, r: int, x: tuple[int, ...], budget: int) -> tuple[Hypergraph, ...]:
    return tuple(enumerate_hypertrees(n, r, budget=budget, degrees=x))


@lru_cache(maxsize=16)
def _degree_weights(n: int, r: int) -> tuple[tuple[tuple[int, ...], ...], tuple[int, ...]]:
    xs = [s.x for s in suitable_degree_sequences(unconstrained_host(n), r)]
    return tuple(xs), tuple(count_hypertrees_with_degrees(x, r) for x in xs)


def sample_uniform_hypertree(n: int, r: int, rng: np.random.Generator, *,
                             budget: int = 2_000_000, two_stage: bool | None = None) -> Hypergraph:
    """Uniform r-hypertree on ``[n]``.

    By default the full list is enumerated and indexed. The two-stage path
    first picks a degree vector with probability proportional to its class
    size, then indexes into that class; it is used automatically when the
    full list exceeds ``budget``.
    """
    total = count_hypertrees(n, r)
    if two_stage is None:
        two_stage = total > budget
    if not two_stage:
        trees = _all_hypertrees(n, r, budget)
        return trees[_randbelow(rng, len(trees))]
    xs, weights = _degree_weights(n, r)
    u = _randbelow(rng, total)
    for x, w in zip(xs, weights):
        if u < w:
            break
        u -= w
    if w > budget:
        raise BudgetError(f"degree class of size {w} exceeds the enumeration budget {budget}")
    trees = _class_hypertrees(n, r, x, budget)
    return trees[_randbelow(rng, len(trees))]
