"""Exact Shapley values over polynomial worths, and Myerson values.

The Shapley engine enumerates every sub-coalition once, stores its worth,
and sums marginal contributions grouped by coalition size.  Grouping lets
the inner loop run on integer coefficient arrays; the size weights
``s! (n-s-1)! / n!`` are applied once per size as exact fractions.
"""

from __future__ import annotations

import os
from fractions import Fraction
from math import factorial, lcm
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from .conference import ConferenceStructure, WorthTable, restrict_conferences
from .graph import Graph, is_tree, members
from .poly import ZERO, DeltaPoly

__all__ = [
    "Allocation",
    "DEFAULT_MAX_PLAYERS",
    "max_players",
    "shapley",
    "shapley_from_rows",
    "myerson_conference",
    "tree_path_sharing",
    "allocation_to_json",
]

DEFAULT_MAX_PLAYERS = 14

Allocation = dict  # node id -> DeltaPoly


def max_players() -> int:
    """Enumeration guard; override with ``CONFTALK_MAX_PLAYERS``."""
    return int(os.environ.get("CONFTALK_MAX_PLAYERS", DEFAULT_MAX_PLAYERS))


def _check_guard(n: int, guard: int | None) -> None:
    guard = max_players() if guard is None else guard
    if n > guard:
        raise ValueError(
            f"{n} players exceed the exact-enumeration guard of {guard}; "
            "use tree_path_sharing for dyadic trees or a smaller instance"
        )


def _size_weights(n: int) -> list[int]:
    # s! (n-s-1)!, to be divided by n!
    return [factorial(s) * factorial(n - s - 1) for s in range(n)]


def _popcounts(n: int) -> np.ndarray:
    pc = np.zeros(1 << n, dtype=np.int64)
    for i in range(n):
        pc[1 << i:1 << (i + 1)] = pc[: 1 << i] + 1
    return pc


def shapley_from_rows(
    players: Sequence[int], rows: Sequence[Sequence[int]], denom: int = 1
) -> Allocation:
    """Shapley values from a table of integer worth coefficients.

    ``rows[mask]`` lists the coefficients (times ``denom``) of the worth of
    the coalition ``{players[i] : bit i of mask set}``; ``rows[0]`` must be
    zero.
    """
    players = list(players)
    n = len(players)
    if len(rows) != 1 << n:
        raise ValueError("worth table size does not match player count")
    if any(rows[0]):
        raise ValueError("worth of the empty coalition must be zero")
    if n == 0:
        return {}
    width = max(len(r) for r in rows)
    weights = _size_weights(n)
    peak = max((abs(x) for r in rows for x in r), default=0)
    # every sum below is bounded by 2**n * (n-1)! * peak
    big = (peak * factorial(n - 1)) << (n + 1) >= 2**62
    dtype = object if big else np.int64
    table = np.zeros((1 << n, width), dtype=dtype)
    for m, r in enumerate(rows):
        table[m, : len(r)] = r

    pc = _popcounts(n)
    w = np.array(weights + [0], dtype=dtype)
    # member of m: gains w(|m|-1) v(m); non-member: loses w(|m|) v(m)
    inside = np.where(pc > 0, w[pc - 1], 0).astype(dtype)[:, None] * table
    outside = w[pc].astype(dtype)[:, None] * table
    masks = np.arange(1 << n)
    bits = ((masks[None, :] >> np.arange(n)[:, None]) & 1).astype(dtype)
    totals = bits @ (inside + outside) - outside.sum(axis=0)
    scale = factorial(n) * denom
    out: Allocation = {}
    for i, player in enumerate(players):
        out[player] = DeltaPoly(
            {t: Fraction(int(x), scale) for t, x in enumerate(totals[i].tolist()) if x}
        )
    return out


def shapley(
    players: Iterable[int],
    worth: Callable[[frozenset], DeltaPoly],
    guard: int | None = None,
) -> Allocation:
    """Exact Shapley value of ``worth`` on ``players``.

    ``worth`` receives a frozenset of player ids and returns a DeltaPoly;
    it is called once per coalition.
    """
    players = sorted(set(players))
    n = len(players)
    _check_guard(n, guard)
    polys = []
    for m in range(1 << n):
        polys.append(worth(frozenset(players[i] for i in members(m))))
    if polys[0]:
        raise ValueError("worth of the empty coalition must be zero")
    denom = 1
    for p in polys:
        for v in p.coeffs.values():
            denom = lcm(denom, v.denominator)
    width = max(p.degree for p in polys) + 1
    rows = [[int(p.coeff(t) * denom) for t in range(width)] for p in polys]
    return shapley_from_rows(players, rows, denom)


def myerson_conference(
    g: Graph,
    h: ConferenceStructure,
    players: Iterable[int] | None = None,
    guard: int | None = None,
) -> Allocation:
    """Myerson value of the conference-restricted distance game on ``players``.

    Conferences not contained in ``players`` are dropped first.  Defaults to
    all nodes of ``g``.
    """
    players = sorted(set(g.nodes if players is None else players))
    if players and not 0 <= players[0] <= players[-1] < g.node_count:
        raise ValueError(f"players must lie in [0, {g.node_count})")
    _check_guard(len(players), guard)
    h.validate_for(g)
    table = WorthTable(g, restrict_conferences(h, players), players)
    return shapley_from_rows(players, table.rows())


def tree_path_sharing(t: Graph) -> Allocation:
    """Myerson value of the dyadic distance game on a tree, by path sharing.

    Every ordered pair at distance ``d`` hands ``delta**d / (d + 1)`` to each
    node on its path.  No coalition enumeration is needed.
    """
    if not is_tree(t):
        raise ValueError("tree_path_sharing requires a tree")
    n = t.node_count
    acc = [dict() for _ in range(n)]
    for p in range(n):
        parent = {p: None}
        order = [p]
        for v in order:
            for w in members(t.adj[v]):
                if w not in parent:
                    parent[w] = v
                    order.append(w)
        depth = {p: 0}
        for v in order[1:]:
            depth[v] = depth[parent[v]] + 1
        for q in order[1:]:
            d = depth[q]
            x = q
            while x is not None:
                acc[x][d] = acc[x].get(d, 0) + 1
                x = parent[x]
    # acc[v][d]: ordered pairs at distance d whose path runs through v
    return {v: DeltaPoly({d: Fraction(c, d + 1) for d, c in acc[v].items()}) for v in range(n)}


def allocation_to_json(alloc: Mapping[int, DeltaPoly], delta=None) -> dict:
    return {str(v): alloc[v].to_json(delta) for v in sorted(alloc)}


def allocation_total(alloc: Mapping[int, DeltaPoly], nodes: Iterable[int] | None = None) -> DeltaPoly:
    nodes = alloc.keys() if nodes is None else nodes
    return sum((alloc[v] for v in nodes), ZERO)
