"""Conference structures (hypergraphs) and the conference-restricted worth.

A coalition can only use the conferences it fully contains.  Those
conferences split the coalition into blocks; each block is worth the
distance polynomial of the *base graph* induced on it, whatever the overlap
pattern of the conferences that formed it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .graph import Graph, mask_of, members, ordered_distance_counts
from .poly import DeltaPoly

__all__ = [
    "ConferenceStructure",
    "dyadic_conferences",
    "restrict_conferences",
    "conference_components",
    "restricted_worth",
]


@dataclass(frozen=True)
class ConferenceStructure:
    """A set of conferences, each a frozenset of at least two node ids."""

    hyperedges: frozenset[frozenset[int]]

    def __init__(self, hyperedges: Iterable[Iterable[int]] = ()):
        hs = set()
        for h in hyperedges:
            h = frozenset(int(v) for v in h)
            if len(h) < 2:
                raise ValueError(f"conference {sorted(h)} has fewer than two members")
            if min(h) < 0:
                raise ValueError(f"conference {sorted(h)} has a negative node id")
            hs.add(h)
        object.__setattr__(self, "hyperedges", frozenset(hs))

    def __len__(self) -> int:
        return len(self.hyperedges)

    def __iter__(self):
        return iter(sorted(self.hyperedges, key=lambda h: sorted(h)))

    def __contains__(self, h) -> bool:
        return frozenset(h) in self.hyperedges

    def __or__(self, other: "ConferenceStructure | Iterable[Iterable[int]]") -> "ConferenceStructure":
        extra = other.hyperedges if isinstance(other, ConferenceStructure) else other
        return ConferenceStructure(list(self.hyperedges) + [frozenset(h) for h in extra])

    def masks(self) -> list[int]:
        return [mask_of(h) for h in self]

    def validate_for(self, g: Graph) -> None:
        for h in self.hyperedges:
            if max(h) >= g.node_count:
                raise ValueError(f"conference {sorted(h)} exceeds graph with {g.node_count} nodes")

    def to_json(self) -> dict:
        return {"hyperedges": [sorted(h) for h in self]}

    @classmethod
    def from_json(cls, data: dict) -> "ConferenceStructure":
        return cls(data["hyperedges"])


def dyadic_conferences(g: Graph) -> ConferenceStructure:
    """One two-member conference per edge of ``g``."""
    return ConferenceStructure(g.edges)


def restrict_conferences(h: ConferenceStructure, x: Iterable[int]) -> ConferenceStructure:
    """Keep the conferences lying entirely inside ``x``."""
    x = frozenset(x)
    return ConferenceStructure(e for e in h.hyperedges if e <= x)


def _blocks(mask: int, hmasks: Iterable[int]) -> list[int]:
    # connected blocks of the conferences contained in mask; uncovered members omitted
    blocks: list[int] = []
    for hm in hmasks:
        if hm & mask != hm:
            continue
        merged = hm
        rest = []
        for b in blocks:
            if b & merged:
                merged |= b
            else:
                rest.append(b)
        rest.append(merged)
        blocks = rest
    return blocks


def conference_components(s: Iterable[int], h: ConferenceStructure) -> list[frozenset[int]]:
    """Partition of ``s`` into the classes connected by conferences inside ``s``.

    Members touched by no contained conference come back as singletons.
    Blocks are sorted by their smallest member.
    """
    m = mask_of(s)
    blocks = _blocks(m, h.masks())
    covered = 0
    for b in blocks:
        covered |= b
    out = [frozenset(members(b)) for b in blocks]
    out += [frozenset([v]) for v in members(m & ~covered)]
    return sorted(out, key=min)


def restricted_worth(g: Graph, h: ConferenceStructure, c: Iterable[int]) -> DeltaPoly:
    """Sum of distance worths over the conference-connected blocks of ``c``."""
    m = mask_of(c)
    if m >> g.node_count:
        raise ValueError(f"coalition exceeds graph with {g.node_count} nodes")
    total = [0]
    for b in _blocks(m, h.masks()):
        counts = ordered_distance_counts(g.adj, b)
        total += [0] * (len(counts) - len(total))
        for t, x in enumerate(counts):
            total[t] += x
    return DeltaPoly(total)


class WorthTable:
    """Memoized restricted worths for every sub-coalition of a player set.

    Rows are integer coefficient lists (the worth of a block counts ordered
    pairs, so coefficients are always integers).  Block worths are cached by
    block mask because many coalitions share blocks.
    """

    def __init__(self, g: Graph, h: ConferenceStructure, players: Iterable[int]):
        self.g = g
        self.players = sorted(set(players))
        pm = mask_of(self.players)
        self.hmasks = [hm for hm in h.masks() if hm & pm == hm]
        self._block_cache: dict[int, list[int]] = {}

    def block_worth(self, b: int) -> list[int]:
        w = self._block_cache.get(b)
        if w is None:
            w = ordered_distance_counts(self.g.adj, b)
            self._block_cache[b] = w
        return w

    def worth(self, mask: int) -> list[int]:
        total = [0]
        for b in _blocks(mask, self.hmasks):
            w = self.block_worth(b)
            if len(w) > len(total):
                total += [0] * (len(w) - len(total))
            for t, x in enumerate(w):
                total[t] += x
        return total

    def rows(self) -> list[list[int]]:
        """Worth of each sub-coalition, indexed by local bitmask over ``players``."""
        ids = self.players
        n = len(ids)
        out = [[0]] * (1 << n)
        glob = [0] * (1 << n)
        for local in range(1, 1 << n):
            low = local & -local
            glob[local] = glob[local ^ low] | 1 << ids[low.bit_length() - 1]
            out[local] = self.worth(glob[local])
        return out
