"""Undirected simple graphs over dense integer ids.

Node sets are kept on the full id space: an induced subgraph has the same
``node_count`` as its parent and simply drops edges, so allocations computed
on different coalitions always refer to the original ids.

Internally adjacency is a tuple of int bitmasks, which makes induced-subgraph
BFS a handful of integer operations per level.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Iterator, Sequence

from .poly import DeltaPoly

__all__ = [
    "Graph",
    "build_graph",
    "induced_subgraph",
    "distance_histogram",
    "distance_worth",
    "enumerate_labeled_trees",
    "prufer_decode",
    "mask_of",
    "members",
    "MAX_TREE_NODES",
]

MAX_TREE_NODES = 8


def mask_of(nodes: Iterable[int]) -> int:
    m = 0
    for v in nodes:
        m |= 1 << v
    return m


def members(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on nodes ``0 .. node_count-1``.

    ``edges`` holds canonical pairs ``(i, j)`` with ``i < j``, sorted.
    Build instances with :func:`build_graph`, which validates and normalizes.
    """

    node_count: int
    edges: tuple[tuple[int, int], ...]
    adj: tuple[int, ...] = field(repr=False, compare=False, hash=False)

    @property
    def all_mask(self) -> int:
        return (1 << self.node_count) - 1

    @property
    def nodes(self) -> range:
        return range(self.node_count)

    def neighbors(self, v: int) -> list[int]:
        return members(self.adj[v])

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.adj[i] >> j & 1)

    def add_edges(self, extra: Iterable[tuple[int, int]]) -> "Graph":
        return build_graph(self.node_count, list(self.edges) + list(extra))

    def to_json(self) -> dict:
        return {"n": self.node_count, "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_json(cls, data: dict) -> "Graph":
        return build_graph(int(data["n"]), [tuple(e) for e in data["edges"]])


def build_graph(node_count: int, edges: Iterable[Sequence[int]]) -> Graph:
    """Validate and canonicalize an edge list.

    Duplicate edges (in either orientation) are merged silently; self-loops
    and out-of-range endpoints raise ``ValueError`` naming the offending pair.
    """
    if node_count < 0:
        raise ValueError(f"node_count must be nonnegative, got {node_count}")
    canon = set()
    for e in edges:
        i, j = (int(x) for x in e)
        if not (0 <= i < node_count and 0 <= j < node_count):
            raise ValueError(f"edge ({i}, {j}) has an endpoint outside [0, {node_count})")
        if i == j:
            raise ValueError(f"self-loop at node {i}")
        canon.add((min(i, j), max(i, j)))
    adj = [0] * node_count
    for i, j in canon:
        adj[i] |= 1 << j
        adj[j] |= 1 << i
    return Graph(node_count, tuple(sorted(canon)), tuple(adj))


def _check_members(g: Graph, s: Iterable[int]) -> int:
    m = 0
    for v in s:
        if not 0 <= v < g.node_count:
            raise ValueError(f"node {v} outside [0, {g.node_count})")
        m |= 1 << v
    return m


def induced_subgraph(g: Graph, s: Iterable[int]) -> Graph:
    """Graph on the same id space keeping only edges with both ends in ``s``."""
    m = _check_members(g, s)
    adj = tuple(a & m if m >> v & 1 else 0 for v, a in enumerate(g.adj))
    edges = tuple(e for e in g.edges if m >> e[0] & 1 and m >> e[1] & 1)
    return Graph(g.node_count, edges, adj)


def bfs_levels(adj: Sequence[int], source: int, allowed: int) -> list[int]:
    """Sizes of the BFS layers at distance 1, 2, ... from ``source`` inside ``allowed``."""
    seen = frontier = 1 << source
    levels = []
    while True:
        nxt = 0
        f = frontier
        while f:
            low = f & -f
            nxt |= adj[low.bit_length() - 1]
            f ^= low
        nxt &= allowed & ~seen
        if not nxt:
            return levels
        levels.append(nxt.bit_count())
        seen |= nxt
        frontier = nxt


def ordered_distance_counts(adj: Sequence[int], mask: int) -> list[int]:
    """Entry ``t`` counts ordered pairs at distance ``t`` in the subgraph on ``mask``.

    Index 0 is always 0.  Disconnected pairs are not counted.
    """
    counts = [0]
    for v in members(mask):
        for t, c in enumerate(bfs_levels(adj, v, mask), start=1):
            if t == len(counts):
                counts.append(0)
            counts[t] += c
    return counts


def distance_histogram(g: Graph, s: Iterable[int] | None = None) -> dict[int, int]:
    """Unordered pairs of ``s`` at each finite distance within the induced subgraph."""
    m = g.all_mask if s is None else _check_members(g, s)
    counts = ordered_distance_counts(g.adj, m)
    return {t: c // 2 for t, c in enumerate(counts) if c}


def distance_worth(g: Graph, s: Iterable[int] | None = None) -> DeltaPoly:
    """Distance-polynomial worth: sum over ordered pairs of delta**distance in ``G[s]``."""
    m = g.all_mask if s is None else _check_members(g, s)
    return DeltaPoly(ordered_distance_counts(g.adj, m))


def prufer_decode(seq: Sequence[int], n: int) -> list[tuple[int, int]]:
    """Edges of the labeled tree on ``0 .. n-1`` encoded by a Prüfer sequence."""
    if len(seq) != n - 2:
        raise ValueError(f"Prüfer sequence for n={n} must have length {n - 2}")
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = []
    leaf = ptr = next(i for i in range(n) if degree[i] == 1)
    for x in seq:
        edges.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1 and x < ptr:
            leaf = x
        else:
            ptr += 1
            while degree[ptr] != 1:
                ptr += 1
            leaf = ptr
    edges.append((leaf, n - 1))
    return edges


def enumerate_labeled_trees(n: int) -> Iterator[Graph]:
    """Yield all ``n**(n-2)`` labeled trees on ``n`` nodes, in Prüfer order."""
    if not 2 <= n <= MAX_TREE_NODES:
        raise ValueError(f"n must be in [2, {MAX_TREE_NODES}], got {n}")
    for seq in product(range(n), repeat=n - 2):
        yield build_graph(n, prufer_decode(seq, n))


def is_tree(g: Graph) -> bool:
    if g.node_count == 0 or len(g.edges) != g.node_count - 1:
        return False
    return sum(bfs_levels(g.adj, 0, g.all_mask)) == g.node_count - 1


def diameter(g: Graph) -> int:
    """Longest finite shortest-path distance (0 for graphs without edges)."""
    return max(distance_histogram(g), default=0)


def degree_sequence(g: Graph) -> tuple[int, ...]:
    return tuple(sorted((g.degree(v) for v in g.nodes), reverse=True))


def degree_counts(g: Graph) -> Counter:
    return Counter(g.degree(v) for v in g.nodes)
