"""Partition equilibria of uniform-quadratic cheap talk with witnesses.

Given the effective bias ``b``, the most informative equilibrium has the
unique ``N`` with ``beta(N) <= b < beta(N-1)``, ``beta(N) = 1/(2N(N+1))``.
Boundaries follow ``t_k = k t_1 + 2 b k (k-1)``.  The verifier re-derives
sender indifference from the raw per-witness quadratic costs rather than
from the averaged bias.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Iterable, Sequence

from .bias import BiasReport, Conversation, bias_report
from .conference import ConferenceStructure
from .graph import Graph
from .poly import Number, _frac, _ratstr, as_delta, decimal_str

__all__ = [
    "beta",
    "partition_count",
    "partition_boundaries",
    "NoEquilibrium",
    "verify_equilibrium",
    "PartitionEquilibrium",
    "solve_conversation",
    "sender_cost",
]


class NoEquilibrium(ValueError):
    """No partition equilibrium of the requested size exists."""


def beta(n: int) -> Fraction:
    if n < 1:
        raise ValueError(f"beta(n) needs n >= 1, got {n}")
    return Fraction(1, 2 * n * (n + 1))


def partition_count(b: Number) -> int:
    """The ``N >= 1`` with ``beta(N) <= b < beta(N-1)``; ``beta(0)`` is infinite.

    ``b <= 0`` is rejected: with no conflict of interest the threshold rule
    gives no finite answer.
    """
    b = _frac(b)
    if b <= 0:
        raise ValueError(f"effective bias must be positive, got {b} (unbounded precision, out of model)")
    # largest N with 2N(N-1) < 1/b, started from the real root and corrected
    n = max(1, (1 + isqrt(int(1 + 2 / b))) // 2)
    while n > 1 and beta(n - 1) <= b:
        n -= 1
    while beta(n) > b:
        n += 1
    return n


def partition_boundaries(b: Number, n: int) -> list[Fraction]:
    """Boundaries ``0 = t_0 < ... < t_n = 1`` for bias ``b``.

    Raises :class:`NoEquilibrium` when the first interval would be empty.
    """
    b = _frac(b)
    if n < 1:
        raise ValueError(f"partition size must be positive, got {n}")
    t1 = Fraction(1, n) - 2 * b * (n - 1)
    if t1 <= 0:
        raise NoEquilibrium(f"no {n}-interval equilibrium at bias {b}: t_1 = {t1}")
    return [k * t1 + 2 * b * k * (k - 1) for k in range(n + 1)]


def sender_cost(action, state, shifts: Iterable) -> Fraction:
    """Sender's loss ``sum_j (a - (theta + c_j))**2`` over bias shifts ``c_j``."""
    return sum((action - (state + c)) ** 2 for c in shifts)


@dataclass
class Residuals:
    sender: list[Fraction]
    receiver: list[Fraction]

    @property
    def max(self) -> Fraction:
        return max(self.sender + self.receiver, default=Fraction(0))


def verify_equilibrium(
    sender_receiver: Number,
    witness_terms: Sequence[tuple[Number, Number]],
    boundaries: Sequence[Number],
) -> Residuals:
    """Check an equilibrium against the unaggregated sender cost.

    At each interior boundary the sender must be indifferent between the
    two neighbouring actions, where the cost sums the squared gap to
    ``theta + b^S_R`` and to ``theta + b^S_w + b^w_R`` for every witness.
    Receiver residuals compare each action with the interval mean.
    """
    shifts = [_frac(sender_receiver)] + [_frac(a) + _frac(b) for a, b in witness_terms]
    t = [_frac(x) for x in boundaries]
    actions = [(t[k - 1] + t[k]) / 2 for k in range(1, len(t))]
    sender = []
    for k in range(1, len(t) - 1):
        lo = sender_cost(actions[k - 1], t[k], shifts)
        hi = sender_cost(actions[k], t[k], shifts)
        sender.append(abs(lo - hi))
    receiver = [abs(a - (t[k] + t[k + 1]) / 2) for k, a in enumerate(actions)]
    return Residuals(sender, receiver)


@dataclass
class PartitionEquilibrium:
    n_partitions: int
    boundaries: list[Fraction]
    b_eff: Fraction
    residuals: Residuals
    delta: Fraction | None = None
    report: BiasReport | None = field(default=None, repr=False)

    @property
    def actions(self) -> list[Fraction]:
        t = self.boundaries
        return [(t[k - 1] + t[k]) / 2 for k in range(1, len(t))]

    def to_json(self) -> dict:
        out = {}
        if self.delta is not None:
            out["delta"] = _ratstr(self.delta)
        if self.report is not None:
            out["bias"] = self.report.to_json(self.delta)
        out.update(
            {
                "b_eff": _ratstr(self.b_eff),
                "b_eff_decimal": decimal_str(self.b_eff),
                "N": self.n_partitions,
                "boundaries": [_ratstr(x) for x in self.boundaries],
                "actions": [_ratstr(x) for x in self.actions],
                "residual_max": decimal_str(self.residuals.max),
            }
        )
        return out


def equilibrium_from_components(
    sender_receiver: Number, witness_terms: Sequence[tuple[Number, Number]]
) -> PartitionEquilibrium:
    sr = _frac(sender_receiver)
    wt = [(_frac(a), _frac(b)) for a, b in witness_terms]
    b_eff = (sr + sum(a + b for a, b in wt)) / (len(wt) + 1)
    n = partition_count(b_eff)
    t = partition_boundaries(b_eff, n)
    return PartitionEquilibrium(n, t, b_eff, verify_equilibrium(sr, wt, t))


def solve_conversation(
    g: Graph,
    h: ConferenceStructure,
    players: Iterable[int] | None,
    conv: Conversation,
    delta: Number,
) -> PartitionEquilibrium:
    """Bias components at ``delta``, then the threshold rule, boundaries and checks."""
    d = as_delta(delta)
    rep = bias_report(g, h, players, conv)
    eq = equilibrium_from_components(
        rep.sender_receiver(d), [(a(d), b(d)) for a, b in rep.witness_terms.values()]
    )
    if eq.b_eff != rep.effective(d):
        raise AssertionError("aggregated bias disagrees with the component average")
    eq.delta = d
    eq.report = rep
    return eq
