"""Exhaustive ground truth at desk scale.

Everything here is exact integer/rational arithmetic over complete
enumerations: the class of simple hypergraphs with a given degree sequence,
and the set of all point partitions of the pairing model.
"""

from __future__ import annotations

import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterator, Sequence

from .combinatorics import as_degree_sequence, falling_factorial
from .errors import BudgetError, ContractError, DivisibilityError
from .hypergraph import Edge, Hypergraph, _count_spanning, _forest_components

DEFAULT_BUDGET = 10**8


@dataclass(frozen=True)
class CensusResult:
    hypergraph_count: int
    total_spanning_trees: int
    expectation: Fraction

    def to_json(self) -> dict:
        return {
            "count": str(self.hypergraph_count),
            "total_trees": str(self.total_spanning_trees),
            "expectation_num": str(self.expectation.numerator),
            "expectation_den": str(self.expectation.denominator),
        }


def _check_divisible(M: int, r: int) -> None:
    if M % r:
        raise DivisibilityError(f"r divides kn fails: {r} does not divide M(k) = {M}")


def _edge_sets(degrees: Sequence[int], r: int, budget: int,
               first: Edge | None = None, meter: list[int] | None = None) -> Iterator[tuple[Edge, ...]]:
    """Edge sets of simple r-graphs with these degrees (0-based vertices).

    Edges are chosen in strictly increasing lexicographic order; the next edge
    always contains the smallest vertex with residual degree left, because
    every smaller vertex is already saturated. ``first`` pins the first edge.
    """
    n = len(degrees)
    res = list(degrees)
    chosen: list[Edge] = []
    meter = [0] if meter is None else meter

    def go(prev: Edge | None, left: int):
        meter[0] += 1
        if meter[0] > budget:
            raise BudgetError(f"census exceeded its budget of {budget} backtracking nodes")
        if left == 0:
            yield tuple(chosen)
            return
        if max(res) * r > left:
            return
        u = next(v for v in range(n) if res[v])
        avail = [w for w in range(u + 1, n) if res[w]]
        for others in combinations(avail, r - 1):
            e = (u,) + others
            if prev is not None and e <= prev:
                continue
            for v in e:
                res[v] -= 1
            chosen.append(e)
            yield from go(e, left - r)
            chosen.pop()
            for v in e:
                res[v] += 1

    total = sum(res)
    if first is None:
        yield from go(None, total)
        return
    for v in first:
        if res[v] == 0:
            return
        res[v] -= 1
    chosen.append(first)
    yield from go(first, total - r)


def _first_edges(degrees: Sequence[int], r: int) -> list[Edge]:
    n = len(degrees)
    if not any(degrees):
        return []
    u = next(v for v in range(n) if degrees[v])
    avail = [w for w in range(u + 1, n) if degrees[w]]
    return [(u,) + others for others in combinations(avail, r - 1)]


def enumerate_hypergraphs(k, r: int, *, budget: int = DEFAULT_BUDGET) -> Iterator[Hypergraph]:
    """Every simple r-uniform hypergraph on ``[n]`` with degree sequence ``k``."""
    k = as_degree_sequence(k)
    _check_divisible(k.M, r)
    for edges in _edge_sets(k.degrees, r, budget):
        yield Hypergraph(k.n, r, tuple(tuple(v + 1 for v in e) for e in edges))


def _census_task(args) -> tuple[int, int, int]:
    degrees, r, budget, first, count_trees = args
    n = len(degrees)
    count = total = 0
    meter = [0]
    for edges in _edge_sets(degrees, r, budget, first, meter):
        count += 1
        if count_trees:
            total += _count_spanning(n, r, [tuple(v + 1 for v in e) for e in edges])
    return count, total, meter[0]


def exact_expected_spanning_hypertrees(k, r: int, *, budget: int = DEFAULT_BUDGET,
                                       workers: int = 1) -> CensusResult:
    """Mean number of spanning hypertrees over the whole class ``H_r(k)``.

    Work is split by the choice of first edge; the reduction is a plain sum,
    so the result does not depend on ``workers``. The budget caps the total
    number of backtracking nodes over all splits.
    """
    k = as_degree_sequence(k)
    _check_divisible(k.M, r)
    n = k.n
    trees_possible = (n - 1) % (r - 1) == 0 and not k.has_zero
    firsts = _first_edges(k.degrees, r)
    if not firsts:
        count, total = (1, 0) if k.M == 0 else (0, 0)
        return CensusResult(count, total, Fraction(0))
    tasks = [(k.degrees, r, budget, f, trees_possible) for f in firsts]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_census_task, tasks))
    else:
        parts = [_census_task(t) for t in tasks]
    if sum(p[2] for p in parts) > budget:
        raise BudgetError(f"census exceeded its budget of {budget} backtracking nodes")
    count = sum(p[0] for p in parts)
    total = sum(p[1] for p in parts)
    expectation = Fraction(total, count) if count else Fraction(0)
    return CensusResult(count, total, expectation)


def census_containment_probability(k, r: int, X: Hypergraph, *,
                                   budget: int = DEFAULT_BUDGET) -> Fraction:
    """Fraction of ``H_r(k)`` containing every edge of ``X``."""
    want = set(X.edges)
    count = hits = 0
    for H in enumerate_hypergraphs(k, r, budget=budget):
        count += 1
        hits += want <= set(H.edges)
    if count == 0:
        raise ContractError(f"no simple {r}-uniform hypergraph has degrees {k}")
    return Fraction(hits, count)


def pairing_count(M: int, r: int) -> int:
    """Partitions of M labelled points into cells of size r."""
    c = M // r
    return math.factorial(M) // (math.factorial(r) ** c * math.factorial(c))


def enumerate_pairings(k, r: int, *, budget: int = 10**6) -> Iterator[tuple[tuple[int, ...], ...]]:
    """All partitions of the configuration points into cells of size ``r``.

    Vertex ``i`` (1-based) owns ``k_i`` points; cells are reported as sorted
    tuples of owning vertices. The smallest unplaced point leads each new cell.
    """
    k = as_degree_sequence(k)
    _check_divisible(k.M, r)
    if pairing_count(k.M, r) > budget:
        raise BudgetError(f"{pairing_count(k.M, r)} pairings exceed the budget {budget}")
    owner = [v + 1 for v, d in enumerate(k.degrees) for _ in range(d)]
    M = len(owner)
    cells: list[tuple[int, ...]] = []

    def go(free: tuple[int, ...]):
        if not free:
            yield tuple(cells)
            return
        lead, rest = free[0], free[1:]
        for others in combinations(range(len(rest)), r - 1):
            cell = (lead,) + tuple(rest[j] for j in others)
            skip = set(others)
            cells.append(tuple(sorted(owner[p] for p in cell)))
            yield from go(tuple(p for j, p in enumerate(rest) if j not in skip))
            cells.pop()

    yield from go(tuple(range(M)))


def _copies(cells: Sequence[tuple[int, ...]], edges: Sequence[Edge]) -> int:
    cnt = Counter(cells)
    out = 1
    for e in edges:
        out *= cnt.get(e, 0)
    return out


def pairing_expected_copies_bruteforce(k, r: int, X: Hypergraph, *, budget: int = 10**6) -> Fraction:
    """Expected number of point-level realizations of ``X`` in a random pairing.

    A realization assigns each edge of ``X`` its own cell whose points come
    one from each vertex of that edge. Returned as an exact rational.
    """
    k = as_degree_sequence(k)
    _check_prefix_contract(k, r, _degrees_of(X, k.n))
    total = partitions = 0
    for cells in enumerate_pairings(k, r, budget=budget):
        partitions += 1
        total += _copies(cells, X.edges)
    return Fraction(total, partitions)


def pairing_copy_table(k, r: int, *, budget: int = 10**6) -> dict[tuple[Edge, ...], Fraction]:
    """Expected realization counts for every Berge-acyclic X at once.

    Only X made of cells that actually occur can have a non-zero count, so
    each partition contributes to the forests formed by its own rainbow cells.
    """
    k = as_degree_sequence(k)
    acc: Counter = Counter()
    partitions = 0
    for cells in enumerate_pairings(k, r, budget=budget):
        partitions += 1
        cnt = Counter(c for c in cells if len(set(c)) == r)
        keys = sorted(cnt)
        for size in range(0, len(keys) + 1):
            for sub in combinations(keys, size):
                if _forest_components(k.n, sub) is None:
                    continue
                w = 1
                for e in sub:
                    w *= cnt[e]
                acc[sub] += w
    return {X: Fraction(v, partitions) for X, v in acc.items()}


def _degrees_of(X: Hypergraph, n: int) -> tuple[int, ...]:
    deg = [0] * n
    for e in X.edges:
        for v in e:
            deg[v - 1] += 1
    return tuple(deg)


def _check_prefix_contract(k, r: int, x: Sequence[int]) -> None:
    _check_divisible(k.M, r)
    if len(x) != k.n:
        raise ContractError(f"degree vector has length {len(x)}, expected {k.n}")
    if any(xi > ki or xi < 0 for xi, ki in zip(x, k.degrees)):
        raise ContractError("X must have degrees between 0 and k pointwise")


def leading_factor(k, r: int, x: Sequence[int], t: int) -> Fraction:
    """``(M/r)_t r!^t prod (k_i)_{x_i} / (M)_{rt}`` as an exact rational."""
    k = as_degree_sequence(k)
    x = tuple(x)
    _check_prefix_contract(k, r, x)
    if sum(x) != r * t:
        raise ContractError(f"sum(x) = {sum(x)} but an X with {t} edges has r*t = {r * t}")
    if r * t > k.M:
        raise ContractError(f"r*t = {r * t} exceeds M(k) = {k.M}")
    num = falling_factorial(k.M // r, t) * math.factorial(r) ** t
    num *= math.prod(falling_factorial(ki, xi) for ki, xi in zip(k.degrees, x))
    return Fraction(num, falling_factorial(k.M, r * t))


def enumerate_forests(k, r: int) -> Iterator[Hypergraph]:
    """Every Berge-acyclic simple r-graph on ``[n]`` with degrees at most ``k``.

    Includes the empty hypergraph.
    """
    k = as_degree_sequence(k)
    n = k.n
    cands = list(combinations([v + 1 for v in range(n) if k.degrees[v]], r))
    res = list(k.degrees)
    parent = list(range(n + 1))
    chosen: list[Edge] = []

    def find(a: int) -> int:
        while parent[a] != a:
            a = parent[a]
        return a

    def go(start: int):
        yield Hypergraph(n, r, tuple(chosen))
        for j in range(start, len(cands)):
            e = cands[j]
            if any(res[v - 1] == 0 for v in e):
                continue
            roots = [find(v) for v in e]
            if len(set(roots)) < r:
                continue
            for rt in roots[1:]:
                parent[rt] = roots[0]
            for v in e:
                res[v - 1] -= 1
            chosen.append(e)
            yield from go(j + 1)
            chosen.pop()
            for v in e:
                res[v - 1] += 1
            for rt in roots[1:]:
                parent[rt] = rt

    yield from go(0)
