"""Bias components and the effective bias of a conversation.

A bias component is how much one player's Myerson value drops when another
player is deleted from the game (conferences touching the deleted player go
with it).  Parameter names say which is which: ``removed`` is deleted,
``subject`` is the one whose value is measured.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .conference import ConferenceStructure
from .graph import Graph
from .myerson import myerson_conference
from .poly import ZERO, DeltaPoly

__all__ = [
    "Conversation",
    "BiasReport",
    "bias_component",
    "effective_bias",
    "bias_report",
]


@dataclass(frozen=True)
class Conversation:
    """Sender and receiver talking inside ``conference``.

    Every other conference member is a witness.
    """

    conference: frozenset[int]
    sender: int
    receiver: int

    def __init__(self, conference: Iterable[int], sender: int, receiver: int):
        conference = frozenset(conference)
        if sender == receiver:
            raise ValueError("sender and receiver must differ")
        if sender not in conference or receiver not in conference:
            raise ValueError("sender and receiver must belong to the conference")
        object.__setattr__(self, "conference", conference)
        object.__setattr__(self, "sender", sender)
        object.__setattr__(self, "receiver", receiver)

    @property
    def witnesses(self) -> list[int]:
        return sorted(self.conference - {self.sender, self.receiver})


def _players(g: Graph, players: Iterable[int] | None) -> frozenset[int]:
    return frozenset(g.nodes if players is None else players)


def bias_component(
    g: Graph,
    h: ConferenceStructure,
    players: Iterable[int] | None,
    removed: int,
    subject: int,
) -> DeltaPoly:
    """Loss in ``subject``'s Myerson value when ``removed`` leaves ``players``."""
    players = _players(g, players)
    if removed == subject:
        raise ValueError("removed and subject must be different players")
    for v in (removed, subject):
        if v not in players:
            raise ValueError(f"player {v} is not in the player set")
    full = myerson_conference(g, h, players)
    reduced = myerson_conference(g, h, players - {removed})
    return full[subject] - reduced[subject]


@dataclass
class BiasReport:
    sender: int
    receiver: int
    sender_receiver: DeltaPoly
    # witness -> (b^S_w, b^w_R): sender's loss without w, w's loss without R
    witness_terms: dict[int, tuple[DeltaPoly, DeltaPoly]] = field(default_factory=dict)

    @property
    def witnesses(self) -> list[int]:
        return sorted(self.witness_terms)

    @property
    def components(self) -> list[DeltaPoly]:
        """The ``|W| + 1`` quantities averaged into the effective bias."""
        return [self.sender_receiver] + [a + b for a, b in self.witness_terms.values()]

    @property
    def effective(self) -> DeltaPoly:
        total = sum(self.components, ZERO)
        return total / (len(self.witness_terms) + 1)

    def to_json(self, delta=None) -> dict:
        return {
            "sender": self.sender,
            "receiver": self.receiver,
            "b_sender_receiver": self.sender_receiver.to_json(delta),
            "witnesses": [
                {
                    "witness": w,
                    "b_sender_witness": a.to_json(delta),
                    "b_witness_receiver": b.to_json(delta),
                }
                for w, (a, b) in sorted(self.witness_terms.items())
            ],
            "b_eff": self.effective.to_json(delta),
        }


def bias_report(
    g: Graph,
    h: ConferenceStructure,
    players: Iterable[int] | None,
    conv: Conversation,
) -> BiasReport:
    """All bias components of a conversation, computed on the full player set.

    The conference only decides who the witnesses are; every Myerson value
    is taken over ``players`` (all of ``g`` by default).
    """
    players = _players(g, players)
    if not conv.conference <= players:
        raise ValueError("conference members must all be players")
    s, r = conv.sender, conv.receiver
    full = myerson_conference(g, h, players)
    without_r = myerson_conference(g, h, players - {r})
    terms = {}
    for w in conv.witnesses:
        without_w = myerson_conference(g, h, players - {w})
        terms[w] = (full[s] - without_w[s], full[w] - without_r[w])
    return BiasReport(s, r, full[s] - without_r[s], terms)


def effective_bias(
    g: Graph,
    h: ConferenceStructure,
    players: Iterable[int] | None,
    conv: Conversation,
) -> DeltaPoly:
    """Average of the sender-receiver component and each witness's two components."""
    return bias_report(g, h, players, conv).effective
