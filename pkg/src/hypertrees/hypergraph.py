"""Uniform hypergraphs, Berge-acyclicity, and spanning-hypertree counting."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .combinatorics import DegreeSequence, degree_stats, tree_shape
from .errors import ContractError, DivisibilityError, DomainError

Edge = tuple[int, ...]


@dataclass(frozen=True)
class Hypergraph:
    """Simple r-uniform hypergraph on vertices ``1..n``.

    Edges are sorted tuples and the edge list is kept in lexicographic order,
    so two hypergraphs with the same edge set compare equal.
    """

    n: int
    r: int
    edges: tuple[Edge, ...]

    def __post_init__(self):
        canon = []
        for e in self.edges:
            e = tuple(sorted(int(v) for v in e))
            if len(e) != self.r:
                raise ContractError(f"edge {e} does not have {self.r} vertices")
            if len(set(e)) != self.r:
                raise ContractError(f"edge {e} contains a loop")
            if e[0] < 1 or e[-1] > self.n:
                raise ContractError(f"edge {e} has a vertex outside 1..{self.n}")
            canon.append(e)
        canon.sort()
        for a, b in zip(canon, canon[1:]):
            if a == b:
                raise ContractError(f"repeated edge {a}")
        object.__setattr__(self, "edges", tuple(canon))

    @property
    def m(self) -> int:
        return len(self.edges)

    def relabel(self, perm: Sequence[int]) -> "Hypergraph":
        """Apply ``v -> perm[v-1]`` (a permutation of ``1..n``)."""
        return Hypergraph(self.n, self.r, tuple(tuple(perm[v - 1] for v in e) for e in self.edges))

    def to_text(self) -> str:
        lines = [f"{self.n} {self.r} {self.m}"]
        lines += [" ".join(map(str, e)) for e in self.edges]
        return "\n".join(lines) + "\n"


def parse_hypergraph(text: str) -> Hypergraph:
    rows = [line.split() for line in text.strip().splitlines() if line.strip()]
    if not rows or len(rows[0]) != 3:
        raise DomainError("hypergraph text must start with 'n r m'")
    n, r, m = map(int, rows[0])
    if len(rows) - 1 != m:
        raise DomainError(f"header announces {m} edges, found {len(rows) - 1}")
    return Hypergraph(n, r, tuple(tuple(map(int, row)) for row in rows[1:]))


def complete_hypergraph(n: int, r: int) -> Hypergraph:
    return Hypergraph(n, r, tuple(combinations(range(1, n + 1), r)))


def degree_sequence_of(H: Hypergraph) -> DegreeSequence:
    deg = [0] * H.n
    for e in H.edges:
        for v in e:
            deg[v - 1] += 1
    return degree_stats(deg)


class DisjointSet:
    """Union-find over ``0..n-1`` with union by size and path halving."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n
        self.components = n

    def find(self, a: int) -> int:
        parent = self.parent
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        self.components -= 1
        return True


def _forest_components(n: int, edges: Iterable[Edge]) -> int | None:
    """Component count after adding ``edges``, or None if a Berge cycle appears."""
    ds = DisjointSet(n + 1)
    for e in edges:
        for v in e[1:]:
            if not ds.union(e[0], v):
                return None
    return ds.components - 1


def is_incidence_forest(n: int, edges: Iterable[Edge]) -> bool:
    """True iff the vertex-edge incidence graph is a forest (no Berge cycle)."""
    return _forest_components(n, edges) is not None


def is_spanning_hypertree(H: Hypergraph, S: Iterable[int]) -> bool:
    """Whether the edges of ``H`` indexed by ``S`` form a spanning hypertree."""
    shape = tree_shape(H.n, H.r)
    S = list(S)
    if len(set(S)) != len(S) or any(not 0 <= i < H.m for i in S):
        raise ContractError(f"invalid edge subset {S}")
    if len(S) != shape.t:
        return False
    return _forest_components(H.n, (H.edges[i] for i in S)) == 1


def count_spanning_hypertrees(H: Hypergraph) -> int:
    """Exact number of spanning hypertrees of ``H``.

    Include/exclude backtracking over edges in lexicographic order. A branch
    dies when an included edge closes a Berge cycle, when an excluded edge was
    the last chance to cover some vertex, or when the remaining edges cannot
    merge the current components into one.
    """
    try:
        tree_shape(H.n, H.r)
    except DivisibilityError:
        return 0
    return _count_spanning(H.n, H.r, H.edges)


def _count_spanning(n: int, r: int, edges: Sequence[Edge]) -> int:
    m = len(edges)
    ev = [[v - 1 for v in e] for e in edges]
    last = [-1] * n
    for i, e in enumerate(ev):
        for v in e:
            last[v] = i
    if min(last) < 0:
        return 0
    # vertices whose final incidence is edge i; excluding i strands them unless covered
    closing = [[v for v in e if last[v] == i] for i, e in enumerate(ev)]
    step = r - 1
    parent = list(range(n))

    def find(a: int) -> int:
        while parent[a] != a:
            a = parent[a]
        return a

    def go(i: int, comps: int, covered: int) -> int:
        # recursion only on inclusion (depth <= t); exclusion is the loop
        total = 0
        while True:
            if comps == 1:
                return total + 1
            if (m - i) * step < comps - 1:
                return total
            e = ev[i]
            roots = [find(v) for v in e]
            if len(set(roots)) == r:
                keep = roots[0]
                for rt in roots[1:]:
                    parent[rt] = keep
                cov = covered
                for v in e:
                    cov |= 1 << v
                total += go(i + 1, comps - step, cov)
                for rt in roots[1:]:
                    parent[rt] = rt
            for v in closing[i]:
                if not covered >> v & 1:
                    return total
            i += 1

    return go(0, n, 0)


def naive_count_spanning_hypertrees(H: Hypergraph) -> int:
    """Reference count by checking every t-subset of edges."""
    try:
        t = tree_shape(H.n, H.r).t
    except DivisibilityError:
        return 0
    return sum(1 for S in combinations(range(H.m), t) if is_spanning_hypertree(H, S))


def spanning_hypertrees(H: Hypergraph) -> Iterator[Hypergraph]:
    t = tree_shape(H.n, H.r).t
    for S in combinations(range(H.m), t):
        if is_spanning_hypertree(H, S):
            yield Hypergraph(H.n, H.r, tuple(H.edges[i] for i in S))


def max_overlap(edges: Sequence[Edge]) -> int:
    return max((len(set(a) & set(b)) for a, b in combinations(edges, 2)), default=0)


def contains_edges(H: Hypergraph, X: Hypergraph) -> bool:
    return set(X.edges) <= set(H.edges)
