"""Command-line front end.

Every command prints JSON (or CSV with ``--format csv``) to stdout.  On bad
input the process exits with status 2 and prints ``{"error": ..., "message":
...}`` instead.  ``reproduce`` exits 1 when its target fails.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from .bias import Conversation, bias_component, bias_report
from .cheaptalk import partition_count, solve_conversation
from .conference import ConferenceStructure, dyadic_conferences, restricted_worth
from .graph import Graph, distance_histogram, distance_worth, enumerate_labeled_trees, is_tree
from .myerson import allocation_to_json, myerson_conference, tree_path_sharing
from .poly import _ratstr, as_delta, decimal_str
from .reproduce import TARGETS, reproduce
from .scenarios import PROTOCOLS, TwoStarSpec, check_star_dominance, hub_minus_leaf, make_star, make_two_star, protocol


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _load_json(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from None


def _graph(args) -> Graph:
    return Graph.from_json(_load_json(args.graph))


def _structure(args, g: Graph) -> ConferenceStructure:
    if args.structure in (None, "dyadic"):
        return dyadic_conferences(g)
    h = ConferenceStructure.from_json(_load_json(args.structure))
    h.validate_for(g)
    return h


def _nodes(text: str | None, g: Graph) -> list[int]:
    if text is None or text == "all":
        return list(g.nodes)
    try:
        return sorted({int(x) for x in text.split(",") if x.strip()})
    except ValueError:
        raise UsageError(f"expected comma-separated node ids or 'all', got {text!r}") from None


def _delta(text: str | None):
    if text is None:
        return None
    try:
        return as_delta(Fraction(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad --delta {text!r}: {exc}") from None


def _grid(args) -> list[Fraction]:
    start, stop, step = (Fraction(x) for x in (args.start, args.stop, args.step))
    if step <= 0 or not 0 < start <= stop < 1:
        raise UsageError("grid needs 0 < start <= stop < 1 and step > 0")
    out = []
    x = start
    while x <= stop:
        out.append(x)
        x += step
    return out


def cmd_worth(args) -> dict:
    g = _graph(args)
    c = _nodes(args.coalition, g)
    d = _delta(args.delta)
    out = {
        "coalition": c,
        "histogram": {str(t): u for t, u in distance_histogram(g, c).items()},
        "worth": distance_worth(g, c).to_json(d),
    }
    if args.structure is not None:
        out["restricted_worth"] = restricted_worth(g, _structure(args, g), c).to_json(d)
    return out


def cmd_myerson(args) -> dict:
    g = _graph(args)
    players = _nodes(args.players, g)
    d = _delta(args.delta)
    if args.tree_fast_path:
        if args.structure not in (None, "dyadic") or len(players) != g.node_count or not is_tree(g):
            raise UsageError("--tree-fast-path needs a tree, dyadic conferences and all players")
        alloc = tree_path_sharing(g)
    else:
        alloc = myerson_conference(g, _structure(args, g), players)
    return {"players": players, "allocation": allocation_to_json(alloc, d)}


def _conversation(args, g: Graph) -> Conversation:
    if args.sender is None or args.receiver is None:
        raise UsageError("--sender and --receiver are required")
    try:
        return Conversation(_nodes(args.conference, g), args.sender, args.receiver)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_bias(args) -> dict:
    g = _graph(args)
    h = _structure(args, g)
    players = _nodes(args.players, g)
    d = _delta(args.delta)
    if args.removed is not None or args.subject is not None:
        if args.removed is None or args.subject is None:
            raise UsageError("--removed and --subject go together")
        b = bias_component(g, h, players, args.removed, args.subject)
        return {"removed": args.removed, "subject": args.subject, "component": b.to_json(d)}
    return bias_report(g, h, players, _conversation(args, g)).to_json(d)


def cmd_equilibrium(args) -> dict:
    g = _graph(args)
    d = _delta(args.delta)
    if d is None:
        raise UsageError("--delta is required")
    eq = solve_conversation(g, _structure(args, g), _nodes(args.players, g), _conversation(args, g), d)
    return eq.to_json()


def cmd_scenario(args) -> dict:
    d = _delta(args.delta)
    if args.protocol:
        g, h, conv = protocol(args.protocol, args.k, args.l)
        desc = {"protocol": args.protocol, "k": args.k, "l": args.l}
    elif args.family == "star":
        st = make_star(args.k)
        g, h = st.graph, st.conferences
        s = st.hub if args.sender is None else args.sender
        r = st.leaves[0] if args.receiver is None else args.receiver
        conv = Conversation(_nodes(args.conference, g), s, r)
        desc = {"family": "star", "k": args.k}
    else:
        ts = make_two_star(TwoStarSpec(args.k, args.l, args.link_mode))
        g, h = ts.graph, ts.conferences
        s = ts.hub_k if args.sender is None else args.sender
        r = ts.hub_l if args.receiver is None else args.receiver
        conv = Conversation(_nodes(args.conference, g), s, r)
        desc = {"family": "two-star", "k": args.k, "l": args.l, "link_mode": args.link_mode}
    out = {
        "scenario": desc,
        "graph": g.to_json(),
        "conferences": h.to_json(),
        "conversation": {"conference": sorted(conv.conference), "sender": conv.sender, "receiver": conv.receiver},
    }
    if d is None:
        out["bias"] = bias_report(g, h, None, conv).to_json()
    else:
        out["equilibrium"] = solve_conversation(g, h, None, conv, d).to_json()
    return out


def cmd_reproduce(args) -> dict:
    kwargs = {}
    if args.k is not None or args.l is not None:
        if args.target != "prop4.1" or args.k is None or args.l is None:
            raise UsageError("--k/--l apply to prop4.1 and need both values")
        kwargs["pairs"] = [(args.k, args.l)]
    return reproduce(args.target, **kwargs).to_json()


def cmd_trees_check(args) -> dict:
    deltas = [_delta(x) for x in args.delta] or [Fraction(i, 10) for i in range(1, 10)]
    mismatches = 0
    trees = 0
    for t in enumerate_labeled_trees(args.n):
        trees += 1
        if myerson_conference(t, dyadic_conferences(t)) != tree_path_sharing(t):
            mismatches += 1
    dom = check_star_dominance(args.n, deltas) if args.n >= 3 else None
    passed = mismatches == 0 and (dom is None or dom.passed)
    out = {"n": args.n, "trees": trees, "path_sharing_mismatches": mismatches}
    if dom is not None:
        out["star_dominance"] = dom.to_json()
    out["passed"] = passed
    return out


def cmd_curve(args) -> list[dict]:
    grid = _grid(args)
    rows = []
    if args.graph:
        g = _graph(args)
        h, conv = _structure(args, g), _conversation(args, g)
        beff = bias_report(g, h, _nodes(args.players, g), conv).effective
        gap = None
    else:
        g, h, conv = protocol(args.protocol, args.k, args.l)
        beff = bias_report(g, h, None, conv).effective
        gap = hub_minus_leaf(args.k, args.l)
    for x in grid:
        v = beff.evaluate(x)
        rows.append({"delta": decimal_str(x), "value": decimal_str(v), "label": "b_eff"})
        rows.append({"delta": decimal_str(x), "value": str(partition_count(v)), "label": "N"})
        if gap is not None:
            rows.append({"delta": decimal_str(x), "value": decimal_str(gap.evaluate(x)), "label": "Delta"})
    return rows


def _flatten(obj, prefix=""):
    if isinstance(obj, dict):
        for k, v in obj.items():
            yield from _flatten(v, f"{prefix}.{k}" if prefix else str(k))
    elif isinstance(obj, list):
        for i, v in enumerate(obj):
            yield from _flatten(v, f"{prefix}[{i}]")
    else:
        yield prefix, obj


def _emit(result, fmt: str, out) -> None:
    if fmt == "json":
        json.dump(result, out, indent=2, sort_keys=False)
        out.write("\n")
        return
    buf = io.StringIO()
    if isinstance(result, list):
        w = csv.DictWriter(buf, fieldnames=["delta", "value", "label"], lineterminator="\n")
        w.writeheader()
        w.writerows(result)
    else:
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["key", "value"])
        w.writerows(_flatten(result))
    out.write(buf.getvalue())


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="conftalk", description="Conference-restricted Myerson values and cheap-talk partitions.")
    p.add_argument("--format", choices=("json", "csv"), help="default: csv for curve, json otherwise")
    p.add_argument("--max-players", type=int, help="exact enumeration guard (also CONFTALK_MAX_PLAYERS)")
    sub = p.add_subparsers(dest="command", required=True)

    def graph_args(sp, conversation=False):
        sp.add_argument("--graph", required=True, help='JSON file {"n": N, "edges": [[i, j], ...]}')
        sp.add_argument("--structure", help='conference JSON {"hyperedges": [...]} or "dyadic" (default)')
        sp.add_argument("--players", help="comma-separated player ids or 'all' (default)")
        if conversation:
            sp.add_argument("--conference", default="all", help="conversation members, ids or 'all'")
            sp.add_argument("--sender", type=int)
            sp.add_argument("--receiver", type=int)

    sp = sub.add_parser("worth", help="distance polynomial of a coalition")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--structure")
    sp.add_argument("--coalition", default="all")
    sp.add_argument("--delta")
    sp.set_defaults(func=cmd_worth)

    sp = sub.add_parser("myerson", help="Myerson allocation")
    graph_args(sp)
    sp.add_argument("--delta")
    sp.add_argument("--tree-fast-path", action="store_true")
    sp.set_defaults(func=cmd_myerson)

    sp = sub.add_parser("bias", help="bias components and effective bias")
    graph_args(sp, conversation=True)
    sp.add_argument("--removed", type=int)
    sp.add_argument("--subject", type=int)
    sp.add_argument("--delta")
    sp.set_defaults(func=cmd_bias)

    sp = sub.add_parser("equilibrium", help="partition equilibrium of a conversation")
    graph_args(sp, conversation=True)
    sp.add_argument("--delta", required=True)
    sp.set_defaults(func=cmd_equilibrium)

    sp = sub.add_parser("scenario", help="build a star or two-star network and analyze a conversation")
    sp.add_argument("--family", choices=("star", "two-star"), default="star")
    sp.add_argument("--protocol", choices=sorted(PROTOCOLS))
    sp.add_argument("--k", type=int, default=2)
    sp.add_argument("--l", type=int, default=2)
    sp.add_argument("--link-mode", choices=("hub-hub", "hub-leaf", "leaf-leaf"), default="hub-hub")
    sp.add_argument("--conference", default="all")
    sp.add_argument("--sender", type=int)
    sp.add_argument("--receiver", type=int)
    sp.add_argument("--delta")
    sp.set_defaults(func=cmd_scenario)

    sp = sub.add_parser("reproduce", help="recompute a published result")
    sp.add_argument("target", choices=sorted(TARGETS))
    sp.add_argument("--k", type=int)
    sp.add_argument("--l", type=int)
    sp.set_defaults(func=cmd_reproduce)

    sp = sub.add_parser("trees-check", help="path sharing and star dominance over all labeled trees")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--delta", action="append", default=[])
    sp.set_defaults(func=cmd_trees_check)

    sp = sub.add_parser("curve", help="b_eff, N and the hub-minus-leaf gap on a delta grid (CSV)")
    sp.add_argument("--graph")
    sp.add_argument("--structure")
    sp.add_argument("--players")
    sp.add_argument("--conference", default="all")
    sp.add_argument("--sender", type=int)
    sp.add_argument("--receiver", type=int)
    sp.add_argument("--protocol", choices=sorted(PROTOCOLS), default="hubhub_full")
    sp.add_argument("--k", type=int, default=2)
    sp.add_argument("--l", type=int, default=2)
    sp.add_argument("--start", default="1/100")
    sp.add_argument("--stop", default="99/100")
    sp.add_argument("--step", default="1/100")
    sp.set_defaults(func=cmd_curve)
    return p


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    saved = os.environ.get("CONFTALK_MAX_PLAYERS")
    try:
        args = build_parser().parse_args(argv)
        if args.max_players is not None:
            os.environ["CONFTALK_MAX_PLAYERS"] = str(args.max_players)
        result = args.func(args)
    except (UsageError, ValueError, KeyError, TypeError, OSError) as exc:
        kind = "usage" if isinstance(exc, UsageError) else type(exc).__name__
        json.dump({"error": kind, "message": str(exc)}, out)
        out.write("\n")
        return 2
    finally:
        # the override applies to this call only
        if saved is None:
            os.environ.pop("CONFTALK_MAX_PLAYERS", None)
        else:
            os.environ["CONFTALK_MAX_PLAYERS"] = saved
    fmt = args.format or ("csv" if args.command == "curve" else "json")
    _emit(result, fmt, out)
    if args.command in ("reproduce", "trees-check") and not result["passed"]:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
