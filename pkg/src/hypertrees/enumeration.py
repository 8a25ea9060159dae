"""Counting and listing r-hypertrees on ``[n]``."""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Sequence

from .combinatorics import DegreeSequence, TreeShape, as_degree_sequence, tree_shape
from .errors import BudgetError, ContractError
from .hypergraph import Hypergraph


@dataclass(frozen=True)
class SuitableDegreeSequence:
    x: tuple[int, ...]
    shape: TreeShape

    def __post_init__(self):
        check_suitable(self.x, self.shape)


def check_suitable(x: Sequence[int], shape: TreeShape, k: Sequence[int] | None = None) -> None:
    if len(x) != shape.n:
        raise ContractError(f"degree vector has length {len(x)}, expected {shape.n}")
    if any(xi < 1 for xi in x):
        raise ContractError("every vertex of a spanning hypertree has degree >= 1")
    if sum(x) != shape.r * shape.t:
        raise ContractError(f"degrees sum to {sum(x)}, a hypertree needs r*t = {shape.r * shape.t}")
    if k is not None and any(xi > ki for xi, ki in zip(x, k)):
        raise ContractError("degree vector exceeds host degrees")


def count_hypertrees(n: int, r: int) -> int:
    """Number of r-hypertrees on ``[n]``: ``(n-1)! n^(t-1) / (t! (r-1)!^t)``."""
    t = tree_shape(n, r).t
    num = math.factorial(n - 1) * n ** (t - 1)
    den = math.factorial(t) * math.factorial(r - 1) ** t
    q, rem = divmod(num, den)
    assert rem == 0
    return q


def count_hypertrees_with_degrees(x, r: int | None = None) -> int:
    """Number of r-hypertrees on ``[n]`` in which vertex i has degree ``x[i]``.

    ``(r-1) (n-2)! / ((r-1)!^t prod (x_i - 1)!)``
    """
    if isinstance(x, SuitableDegreeSequence):
        shape, x = x.shape, x.x
    else:
        x = tuple(x)
        shape = tree_shape(len(x), r)
        check_suitable(x, shape)
    n, t = shape.n, shape.t
    num = (shape.r - 1) * math.factorial(n - 2)
    den = math.factorial(shape.r - 1) ** t * math.prod(math.factorial(xi - 1) for xi in x)
    q, rem = divmod(num, den)
    assert rem == 0
    return q


def suitable_degree_sequences(k, r: int) -> Iterator[SuitableDegreeSequence]:
    """All ``x`` with ``1 <= x_i <= k_i`` and ``sum(x) = r t``, in lexicographic order."""
    k = as_degree_sequence(k)
    shape = tree_shape(k.n, r)
    if k.has_zero:
        return
    n = k.n
    caps = [ki - 1 for ki in k.degrees]
    # suffix capacity, to prune branches that cannot reach the target
    tail = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        tail[i] = tail[i + 1] + caps[i]
    x = [1] * n

    def go(i: int, left: int) -> Iterator[SuitableDegreeSequence]:
        if i == n:
            if left == 0:
                yield SuitableDegreeSequence(tuple(x), shape)
            return
        lo = max(0, left - tail[i + 1])
        for extra in range(lo, min(caps[i], left) + 1):
            x[i] = 1 + extra
            yield from go(i + 1, left - extra)
        x[i] = 1

    yield from go(0, shape.t - 1)


def unconstrained_host(n: int) -> DegreeSequence:
    """Host degrees that never bind: every hypertree degree is at most n - 1."""
    return as_degree_sequence((n - 1,) * n)


def _child_blocks(pool: list[int], size: int, caps_left: int) -> Iterator[list[tuple[int, ...]]]:
    """Unordered collections of disjoint ``size``-subsets of ``pool``.

    Blocks are produced in increasing order of their minimum, so each
    collection appears once. ``caps_left`` bounds how many blocks are taken.
    """
    yield []
    if caps_left == 0:
        return
    for idx, lo in enumerate(pool):
        rest = pool[idx + 1:]
        for others in combinations(rest, size - 1):
            block = (lo,) + others
            remaining = [v for v in rest if v not in others]
            for tail in _child_blocks(remaining, size, caps_left - 1):
                yield [block] + tail


def _attach(n: int, r: int, max_degree: Sequence[int] | None) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Each r-hypertree on [n] exactly once, grown breadth-first from vertex 1.

    A popped vertex chooses the edges that hang below it (its only edge
    towards vertex 1 is already placed); newly covered vertices join the queue
    in sorted order. The rooted decomposition of a tree is unique, so no
    deduplication is needed.
    """
    size = r - 1

    def go(queue: list[int], qpos: int, uncovered: list[int], edges: list[tuple[int, ...]]):
        if not uncovered:
            yield tuple(edges)
            return
        if qpos == len(queue):
            return
        v = queue[qpos]
        # the edge through which v was reached already counts toward its degree
        used = 0 if v == 1 else 1
        cap = len(uncovered) // size
        if max_degree is not None:
            cap = min(cap, max_degree[v - 1] - used)
        for blocks in _child_blocks(uncovered, size, cap):
            new = sorted(u for b in blocks for u in b)
            if qpos + 1 == len(queue) and not new:
                continue
            newset = set(new)
            rest = [u for u in uncovered if u not in newset]
            yield from go(queue + new, qpos + 1, rest,
                          edges + [tuple(sorted((v,) + b)) for b in blocks])

    yield from go([1], 0, list(range(2, n + 1)), [])


def enumerate_hypertrees(n: int, r: int, *, budget: int = 2_000_000,
                         degrees: Sequence[int] | None = None) -> Iterator[Hypergraph]:
    """Every r-hypertree on ``[n]``, in canonical lexicographic order.

    With ``degrees`` given, only hypertrees with exactly that degree vector.
    """
    shape = tree_shape(n, r)
    total = count_hypertrees(n, r)
    if degrees is not None:
        degrees = tuple(degrees)
        check_suitable(degrees, shape)
        total = count_hypertrees_with_degrees(degrees, r)
    if total > budget:
        raise BudgetError(f"{total} hypertrees exceed the enumeration budget {budget}")
    found = []
    for edges in _attach(n, r, degrees):
        if degrees is not None:
            deg = [0] * n
            for e in edges:
                for v in e:
                    deg[v - 1] += 1
            if tuple(deg) != degrees:
                continue
        found.append(tuple(sorted(edges)))
    found.sort()
    for edges in found:
        yield Hypergraph(n, r, edges)
