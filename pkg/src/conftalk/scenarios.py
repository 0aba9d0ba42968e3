"""Star and two-star networks, closed-form catalog, and threshold checks.

Node layout for a two-star join ``S_k -- S_l``:

* hub of ``S_k`` is node 0, its leaves are ``1 .. k``;
* hub of ``S_l`` is node ``k+1``, its leaves are ``k+2 .. k+l+1``.

The cross edge joins the hubs (``hub-hub``), hub 0 to leaf ``k+2``
(``hub-leaf``) or leaf 1 to leaf ``k+2`` (``leaf-leaf``).  Conferences are
the dyads of the joined graph: the intra-star edges plus the single cross
pair.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Callable, Iterable, NamedTuple, Sequence

from .bias import Conversation, bias_report
from .conference import ConferenceStructure, dyadic_conferences
from .graph import (
    MAX_TREE_NODES,
    Graph,
    build_graph,
    enumerate_labeled_trees,
    ordered_distance_counts,
)
from .poly import DELTA, DeltaPoly, NO_SIGN_CHANGE, Number, _frac, sign_change

__all__ = [
    "Star",
    "TwoStar",
    "TwoStarSpec",
    "make_star",
    "make_two_star",
    "protocol",
    "PROTOCOLS",
    "closed_form",
    "CATALOG",
    "check_star_dominance",
    "check_threshold",
]

F = Fraction
d = DELTA
LINK_MODES = ("hub-hub", "hub-leaf", "leaf-leaf")


class Star(NamedTuple):
    graph: Graph
    hub: int
    leaves: list[int]
    conferences: ConferenceStructure


def make_star(k: int) -> Star:
    """Star with hub 0 and leaves ``1 .. k``, with one conference per edge."""
    if k < 1:
        raise ValueError(f"a star needs at least one leaf, got k={k}")
    g = build_graph(k + 1, [(0, i) for i in range(1, k + 1)])
    return Star(g, 0, list(range(1, k + 1)), dyadic_conferences(g))


@dataclass(frozen=True)
class TwoStarSpec:
    k: int
    l: int
    link_mode: str = "hub-hub"

    def __post_init__(self):
        if self.k < 1 or self.l < 1:
            raise ValueError(f"both stars need a leaf, got k={self.k}, l={self.l}")
        if self.link_mode not in LINK_MODES:
            raise ValueError(f"link_mode must be one of {LINK_MODES}, got {self.link_mode!r}")

    @property
    def node_count(self) -> int:
        return self.k + self.l + 2


@dataclass
class TwoStar:
    spec: TwoStarSpec
    graph: Graph
    conferences: ConferenceStructure
    roles: dict = field(default_factory=dict)

    @property
    def hub_k(self) -> int:
        return self.roles["hub_k"]

    @property
    def hub_l(self) -> int:
        return self.roles["hub_l"]


def make_two_star(spec: TwoStarSpec) -> TwoStar:
    k, l = spec.k, spec.l
    hub_k, hub_l = 0, k + 1
    leaves_k = list(range(1, k + 1))
    leaves_l = list(range(k + 2, k + l + 2))
    intra = [(hub_k, v) for v in leaves_k] + [(hub_l, v) for v in leaves_l]
    link = {
        "hub-hub": (hub_k, hub_l),
        "hub-leaf": (hub_k, leaves_l[0]),
        "leaf-leaf": (leaves_k[0], leaves_l[0]),
    }[spec.link_mode]
    g = build_graph(spec.node_count, intra + [link])
    h = ConferenceStructure(intra) | [link]
    roles = {
        "hub_k": hub_k,
        "hub_l": hub_l,
        "leaves_k": leaves_k,
        "leaves_l": leaves_l,
        "link": link,
    }
    return TwoStar(spec, g, h, roles)


# Conversation protocols.  Each returns (graph, conferences, conversation).

def _full(g: Graph) -> frozenset[int]:
    return frozenset(g.nodes)


def _bigstar(k: int, l: int, private: bool):
    st = make_star(k + l + 1)
    leaf = st.leaves[0]
    conf = {st.hub, leaf} if private else _full(st.graph)
    return st.graph, st.conferences, Conversation(conf, st.hub, leaf)


def _twostar(mode: str, pick: Callable[[TwoStar], tuple[int, int]], private: bool):
    def build(k: int, l: int):
        ts = make_two_star(TwoStarSpec(k, l, mode))
        s, r = pick(ts)
        conf = {s, r} if private else _full(ts.graph)
        return ts.graph, ts.conferences, Conversation(conf, s, r)

    return build


PROTOCOLS: dict[str, Callable] = {
    # whole-network conferences
    "bigstar_full": lambda k, l: _bigstar(k, l, private=False),
    "hubhub_full": _twostar("hub-hub", lambda t: (t.hub_k, t.hub_l), private=False),
    "leafleaf_full": _twostar("leaf-leaf", lambda t: t.roles["link"], private=False),
    # two-member conferences on the hub-linked join (and the big star)
    "bigstar_pair": lambda k, l: _bigstar(k, l, private=True),
    "hubhub_pair": _twostar("hub-hub", lambda t: (t.hub_k, t.hub_l), private=True),
    "hubleaf_pair": _twostar("hub-hub", lambda t: (t.hub_k, t.roles["leaves_k"][0]), private=True),
    "leafleaf_pair": _twostar(
        "hub-hub", lambda t: (t.roles["leaves_k"][0], t.roles["leaves_l"][0]), private=True
    ),
}


def protocol(name: str, k: int, l: int) -> tuple[Graph, ConferenceStructure, Conversation]:
    """Network, conferences and conversation for a named comparison protocol."""
    try:
        build = PROTOCOLS[name]
    except KeyError:
        raise ValueError(f"unknown protocol {name!r}; choose from {sorted(PROTOCOLS)}") from None
    return build(k, l)


def protocol_report(name: str, k: int, l: int):
    g, h, conv = protocol(name, k, l)
    return bias_report(g, h, None, conv)


def protocol_bias(name: str, k: int, l: int) -> DeltaPoly:
    return protocol_report(name, k, l).effective


def hub_minus_leaf(k: int, l: int) -> DeltaPoly:
    """Effective bias of the hub-linked public talk minus the leaf-linked one."""
    return protocol_bias("hubhub_full", k, l) - protocol_bias("leafleaf_full", k, l)


# Closed-form catalog


@dataclass(frozen=True)
class CatalogEntry:
    fn: Callable[..., DeltaPoly]
    params: tuple[str, ...]
    check: Callable[..., bool]
    normative: bool = True
    note: str = ""


def _poly(*terms) -> DeltaPoly:
    return DeltaPoly({p: c for p, c in terms})


def _m(k, l):
    return k + l + 1


def _mu_star_hub(k):
    return _poly((1, k), (2, F(k * (k - 1), 3)))


def _mu_star_leaf(k):
    return _poly((1, 1), (2, F(2 * (k - 1), 3)))


def _beff_sender_hub(k):
    return _poly((1, 1), (2, F(2 * (k + 1) * (k - 1), 3 * k)))


def _beff_witness_hub(k):
    return (2 * d + (4 * k - 5) * F(2, 3) * d * d) / k


def _witness_hub_marginal(k):
    return -2 * d * (1 - F(5, 3) * d) / (k * (k + 1))


def _two_star_diff(k, l):
    m = _m(k, l)
    return F(k * l, m) * d * d * (F(4, 3) - F(5, 2) * d)


def _beff_bigstar(k, l):
    m = _m(k, l)
    return _poly((1, 1), (2, F(2, 3) * (m - F(1, m))))


def _beff_hubhub(k, l):
    m = _m(k, l)
    return _poly((1, 1), (2, F(2, 3) * (m - F(1, m) - F(2 * k * l, m))), (3, F(5 * k * l, 2 * m)))


def _bsr_hubhub(k, l):
    return _poly((1, 1), (2, F(2 * (k + l), 3)), (3, F(k * l, 2)))


def _bsr_bigstar(k, l):
    return _poly((1, 1), (2, F(2 * (k + l), 3)))


def _bsr_hubleaf(k, l):
    return _poly((1, 1), (2, F(2 * k, 3)), (3, F(l, 2)))


def _bsr_leafleaf(k, l):
    return _poly((3, F(1, 2)))


def _mu_s_twostar(k, l):
    return _poly((1, k + 1), (2, F(k * k + k + 2 * l, 3)), (3, F(k * l, 2)))


def _mu_s_leafleaf(k, l):
    return _poly(
        (1, 2),
        (2, F(2 * (k + 1), 3)),
        (3, F(k + l - 1, 2)),
        (4, F(2 * (k + l - 2), 5)),
        (5, F((k - 1) * (l - 1), 3)),
    )


def _mu_s_leafleaf_as_written(k, l):
    # constant term and doubled cube exactly as displayed
    return _poly(
        (0, F(2 * (k + l - 2), 5)),
        (1, 2),
        (2, F(2 * (k + 1), 3)),
        (3, F(k + l - 1, 2) + F((k - 1) * (l - 1), 3)),
    )


def _beff_leafleaf(k, l):
    m = _m(k, l)
    return _poly(
        (1, F(3, m)),
        (2, F(4, 3)),
        (3, F(5 * (m - 2), 2 * m)),
        (4, F(14 * (m - 3), 5 * m)),
        (5, F(3 * (k - 1) * (l - 1), m)),
    )


def _beff_leafleaf_as_written(k, l):
    m = _m(k, l)
    return _poly(
        (1, F(3, m)),
        (2, F(4, 3)),
        (3, F(5 * (m - 2), 2)),
        (4, F(14 * (m - 3), 5)),
        (5, 3 * (k - 1) * (l - 1)),
    )


def _delta_hub_leaf(k, l):
    m = _m(k, l)
    return _poly(
        (1, 1 - F(3, m)),
        (2, F(2, 3) * (m - F(1, m) - F(2 * k * l, m) - 2)),
        (3, F(5 * (k * l - m + 2), 2 * m)),
        (4, -F(14 * (m - 3), 5 * m)),
        (5, -F(3 * (k - 1) * (l - 1), m)),
    )


def _v_hubhub(k, l):
    return _poly((1, 2 * (k + l + 1)), (2, 2 * (comb(k, 2) + comb(l, 2) + k + l)), (3, 2 * k * l))


def _v_leafleaf(k, l):
    return _poly(
        (1, 2 * (k + l + 1)),
        (2, 2 * (comb(k, 2) + comb(l, 2) + 2)),
        (3, 2 * (k + l - 1)),
        (4, 2 * (k + l - 2)),
        (5, 2 * (k * l - k - l + 1)),
    )


def _exhub_receiver(k, l):
    return _poly((2, F(2, 3)), (3, 1), (4, F(4, 5)), (5, F(1, 3)))


def _exhub_sender(k, l):
    return _poly((1, 1), (2, F(4, 3)), (3, 1), (4, F(4, 5)), (5, F(1, 3)))


def _exleaf_receiver(k, l):
    return _poly((2, F(2, 3)), (3, 1))


def _exleaf_sender(k, l):
    return _poly((1, 1), (2, F(4, 3)), (3, 1))


def _k_at_least(lo):
    return lambda k: k >= lo


def _pair_at_least(lo):
    return lambda k, l: k >= lo and l >= lo


def _only(kk, ll):
    return lambda k, l: (k, l) == (kk, ll)


CATALOG: dict[str, CatalogEntry] = {
    "mu_star_hub": CatalogEntry(_mu_star_hub, ("k",), _k_at_least(1)),
    "mu_star_leaf": CatalogEntry(_mu_star_leaf, ("k",), _k_at_least(1)),
    "beff_sender_hub": CatalogEntry(_beff_sender_hub, ("k",), _k_at_least(1)),
    "beff_witness_hub": CatalogEntry(_beff_witness_hub, ("k",), _k_at_least(2)),
    "witness_hub_marginal": CatalogEntry(_witness_hub_marginal, ("k",), _k_at_least(2)),
    "two_star_diff": CatalogEntry(_two_star_diff, ("k", "l"), _pair_at_least(1)),
    "beff_bigstar": CatalogEntry(_beff_bigstar, ("k", "l"), _pair_at_least(1)),
    "beff_hubhub": CatalogEntry(_beff_hubhub, ("k", "l"), _pair_at_least(1)),
    "bSR_hubhub": CatalogEntry(_bsr_hubhub, ("k", "l"), _pair_at_least(1)),
    "bSR_bigstar": CatalogEntry(_bsr_bigstar, ("k", "l"), _pair_at_least(1)),
    "bSR_hubleaf": CatalogEntry(_bsr_hubleaf, ("k", "l"), _pair_at_least(1)),
    "bSR_leafleaf": CatalogEntry(_bsr_leafleaf, ("k", "l"), _pair_at_least(1)),
    "mu_S_twostar": CatalogEntry(_mu_s_twostar, ("k", "l"), _pair_at_least(1)),
    "mu_S_leafleaf": CatalogEntry(_mu_s_leafleaf, ("k", "l"), _pair_at_least(1)),
    "mu_S_leafleaf_as_written": CatalogEntry(
        _mu_s_leafleaf_as_written, ("k", "l"), _pair_at_least(1), normative=False,
        note="display has a delta-free term and a misplaced cube; kept verbatim",
    ),
    "beff_leafleaf": CatalogEntry(_beff_leafleaf, ("k", "l"), _pair_at_least(1)),
    "beff_leafleaf_as_written": CatalogEntry(
        _beff_leafleaf_as_written, ("k", "l"), _pair_at_least(1), normative=False,
        note="display omits the 1/m factor on the cubic and higher terms; kept verbatim",
    ),
    "delta_hub_minus_leaf": CatalogEntry(_delta_hub_leaf, ("k", "l"), _pair_at_least(1)),
    "v_hubhub": CatalogEntry(_v_hubhub, ("k", "l"), _pair_at_least(1)),
    "v_leafleaf": CatalogEntry(_v_leafleaf, ("k", "l"), _pair_at_least(1)),
    "exhub_bias_receiver": CatalogEntry(_exhub_receiver, ("k", "l"), _only(2, 2)),
    "exhub_bias_sender": CatalogEntry(_exhub_sender, ("k", "l"), _only(2, 2)),
    "exleaf_bias_receiver": CatalogEntry(_exleaf_receiver, ("k", "l"), _only(2, 2)),
    "exleaf_bias_sender": CatalogEntry(_exleaf_sender, ("k", "l"), _only(2, 2)),
}


def closed_form(name: str, *params: int) -> DeltaPoly:
    """Evaluate a catalog formula symbolically in delta."""
    try:
        entry = CATALOG[name]
    except KeyError:
        raise ValueError(f"unknown closed form {name!r}") from None
    if len(params) != len(entry.params):
        raise ValueError(f"{name} takes parameters {entry.params}, got {params}")
    if not entry.check(*params):
        raise ValueError(f"parameters {params} out of range for {name}")
    return entry.fn(*params)


# Brute-force counterparts of catalog entries, keyed by catalog name.

def _witness_hub_beff(k: int) -> DeltaPoly:
    st = make_star(k)
    conv = Conversation(st.graph.nodes, st.leaves[0], st.leaves[1])
    return bias_report(st.graph, st.conferences, None, conv).effective


def _sender_hub_beff(k: int) -> DeltaPoly:
    st = make_star(k)
    conv = Conversation(st.graph.nodes, st.hub, st.leaves[0])
    return bias_report(st.graph, st.conferences, None, conv).effective


def _star_mu(k: int):
    from .myerson import myerson_conference

    st = make_star(k)
    return myerson_conference(st.graph, st.conferences)


def _two_star_mu(mode: str, k: int, l: int, node: Callable[[TwoStar], int]):
    from .myerson import myerson_conference

    ts = make_two_star(TwoStarSpec(k, l, mode))
    return myerson_conference(ts.graph, ts.conferences)[node(ts)]


def _two_star_worth(mode: str, k: int, l: int) -> DeltaPoly:
    ts = make_two_star(TwoStarSpec(k, l, mode))
    return DeltaPoly(ordered_distance_counts(ts.graph.adj, ts.graph.all_mask))


def _witness_term(name: str, which: int, pick: Callable[[TwoStar], int], mode: str):
    def run(k, l):
        rep = protocol_report(name, k, l)
        ts = make_two_star(TwoStarSpec(k, l, mode))
        return rep.witness_terms[pick(ts)][which]

    return run


BRUTE_FORCE: dict[str, Callable[..., DeltaPoly]] = {
    "mu_star_hub": lambda k: _star_mu(k)[0],
    "mu_star_leaf": lambda k: _star_mu(k)[1],
    "beff_sender_hub": _sender_hub_beff,
    "beff_witness_hub": _witness_hub_beff,
    "witness_hub_marginal": lambda k: _witness_hub_beff(k + 1) - _witness_hub_beff(k),
    "two_star_diff": lambda k, l: protocol_bias("bigstar_full", k, l) - protocol_bias("hubhub_full", k, l),
    "beff_bigstar": lambda k, l: protocol_bias("bigstar_full", k, l),
    "beff_hubhub": lambda k, l: protocol_bias("hubhub_full", k, l),
    "bSR_hubhub": lambda k, l: protocol_bias("hubhub_pair", k, l),
    "bSR_bigstar": lambda k, l: protocol_bias("bigstar_pair", k, l),
    "bSR_hubleaf": lambda k, l: protocol_bias("hubleaf_pair", k, l),
    "bSR_leafleaf": lambda k, l: protocol_bias("leafleaf_pair", k, l),
    "mu_S_twostar": lambda k, l: _two_star_mu("hub-hub", k, l, lambda t: t.hub_k),
    "mu_S_leafleaf": lambda k, l: _two_star_mu("leaf-leaf", k, l, lambda t: t.roles["link"][0]),
    "mu_S_leafleaf_as_written": lambda k, l: _two_star_mu("leaf-leaf", k, l, lambda t: t.roles["link"][0]),
    "beff_leafleaf": lambda k, l: protocol_bias("leafleaf_full", k, l),
    "beff_leafleaf_as_written": lambda k, l: protocol_bias("leafleaf_full", k, l),
    "delta_hub_minus_leaf": hub_minus_leaf,
    "v_hubhub": lambda k, l: _two_star_worth("hub-hub", k, l),
    "v_leafleaf": lambda k, l: _two_star_worth("leaf-leaf", k, l),
    # ex-hub of S_k in the leaf-linked line, ex-leaf of S_k in the hub-linked join
    "exhub_bias_receiver": _witness_term("leafleaf_full", 1, lambda t: t.hub_k, "leaf-leaf"),
    "exhub_bias_sender": _witness_term("leafleaf_full", 0, lambda t: t.hub_k, "leaf-leaf"),
    "exleaf_bias_receiver": _witness_term("hubhub_full", 1, lambda t: t.roles["leaves_k"][0], "hub-hub"),
    "exleaf_bias_sender": _witness_term("hubhub_full", 0, lambda t: t.roles["leaves_k"][0], "hub-hub"),
}


def brute_force(name: str, *params: int) -> DeltaPoly:
    """The same quantity as ``closed_form(name, ...)``, computed from the network."""
    closed_form(name, *params)  # validates name and range
    return BRUTE_FORCE[name](*params)


def aggregation_identity(k: int, l: int) -> tuple[DeltaPoly, DeltaPoly]:
    """Both sides of ``m b_eff = 2v(join) - v(S_k) - v(S_l) - 3mu_S(join) + 2mu_S(S_k) - mu_R(S_l)``."""
    from .myerson import myerson_conference

    m = _m(k, l)
    ts = make_two_star(TwoStarSpec(k, l, "hub-hub"))
    sk, sl = make_star(k), make_star(l)

    def v(g):
        return DeltaPoly(ordered_distance_counts(g.adj, g.all_mask))

    rhs = (
        2 * v(ts.graph) - v(sk.graph) - v(sl.graph)
        - 3 * myerson_conference(ts.graph, ts.conferences)[ts.hub_k]
        + 2 * myerson_conference(sk.graph, sk.conferences)[sk.hub]
        - myerson_conference(sl.graph, sl.conferences)[sl.hub]
    )
    return m * protocol_bias("hubhub_full", k, l), rhs


# Checks


def _grid(deltas: Iterable[Number]) -> list[Fraction]:
    return [_frac(x) for x in deltas]


@dataclass
class DominanceReport:
    n: int
    trees: int
    grid: list[Fraction]
    violations: list = field(default_factory=list)
    max_violation: Fraction = Fraction(0)
    histograms: int = 0

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "trees": self.trees,
            "distinct_histograms": self.histograms,
            "grid": [str(x) for x in self.grid],
            "violations": len(self.violations),
            "max_violation": str(self.max_violation),
            "passed": self.passed,
        }


def check_star_dominance(n: int, grid: Sequence[Number]) -> DominanceReport:
    """Compare the star's worth against every labeled tree on ``n`` nodes.

    A violation is a tree worth exceeding the star's, an equality on a tree
    of diameter greater than two, or a strict loss on a tree of diameter at
    most two.
    """
    if not 3 <= n <= MAX_TREE_NODES:
        raise ValueError(f"n must be in [3, {MAX_TREE_NODES}], got {n}")
    grid = _grid(grid)
    star = DeltaPoly(ordered_distance_counts(make_star(n - 1).graph.adj, (1 << n) - 1))
    star_vals = [star.evaluate(x) for x in grid]
    report = DominanceReport(n, 0, grid)
    seen: dict[tuple, list[Fraction]] = {}
    for tree in enumerate_labeled_trees(n):
        report.trees += 1
        counts = tuple(ordered_distance_counts(tree.adj, tree.all_mask))
        gaps = seen.get(counts)
        if gaps is None:
            worth = DeltaPoly(counts)
            gaps = [worth.evaluate(x) - s for x, s in zip(grid, star_vals)]
            seen[counts] = gaps
        short = len(counts) <= 3  # diameter at most two
        for x, gap in zip(grid, gaps):
            if gap > 0 or (gap == 0) != short:
                report.violations.append((tree.edges, x, gap))
                report.max_violation = max(report.max_violation, gap)
    report.histograms = len(seen)
    return report


@dataclass
class ThresholdReport:
    name: str
    params: dict
    passed: bool
    details: dict

    def to_json(self) -> dict:
        return {"name": self.name, "params": self.params, "passed": self.passed, "details": self.details}


THRESHOLDS = ("witness_hub_0.6", "two_star_8_15", "leafleaf_delta_c")


def check_threshold(name: str, **params) -> ThresholdReport:
    """Locate a sign change claimed for a family and compare it with the stated value."""
    if name == "witness_hub_0.6":
        k = params.get("k", 2)
        marginal = _witness_hub_beff(k + 1) - _witness_hub_beff(k)
        at = marginal.evaluate(F(3, 5))
        below, above = marginal.evaluate(F(11, 20)), marginal.evaluate(F(13, 20))
        root = sign_change(marginal, F(1, 10), F(9, 10), F(1, 10**12))
        ok = at == 0 and below < 0 and above > 0 and bool(root) and abs(root - F(3, 5)) <= F(1, 10**12)
        details = {
            "marginal": str(marginal),
            "at_0.6": str(at),
            "at_0.55": str(below),
            "at_0.65": str(above),
            "root": str(root),
        }
    elif name == "two_star_8_15":
        k, l = params.get("k", 2), params.get("l", 3)
        diff = protocol_bias("bigstar_full", k, l) - protocol_bias("hubhub_full", k, l)
        at = diff.evaluate(F(8, 15))
        root = sign_change(diff, F(1, 10), F(9, 10), F(1, 10**12))
        ok = at == 0 and bool(root) and abs(root - F(8, 15)) <= F(1, 10**12)
        details = {"difference": str(diff), "at_8/15": str(at), "root": str(root)}
    elif name == "leafleaf_delta_c":
        k, l = params.get("k", 2), params.get("l", 2)
        tol = _frac(params.get("tol", F(1, 1000)))
        gap = hub_minus_leaf(k, l)
        at_one = gap.evaluate(1)
        root = sign_change(gap, F(99, 100), 1, F(1, 10**9))
        ok = (
            bool(root)
            and abs(root - F(9949, 10000)) <= tol
            and abs(at_one - F(-2, 100)) <= F(5, 1000)
        )
        details = {
            "difference": str(gap),
            "at_1": str(at_one),
            "root": "none" if root is NO_SIGN_CHANGE else f"{float(root):.6f}",
        }
    else:
        raise ValueError(f"unknown threshold {name!r}; choose from {THRESHOLDS}")
    return ThresholdReport(name, params, bool(ok), details)

