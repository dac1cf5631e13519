"""Command line interface.

Subcommands:

* ``tensor``: count a diagram's homomorphisms into a graph as a tensor.
* ``verify``: re-derive both sides of an identity over fixture files.
* ``dim``: morphism-space dimension for a permutation group and word closure.
* ``closure``: list the fibres of a fibration with their generator words.
* ``orbits``: label-pair orbits of a permutation group.

Exit codes: 0 success, 1 failed verification, 2 bad input, 3 capacity bound
hit, 4 indeterminate membership.  All output is deterministic: JSON is
printed with sorted keys, listings are canonically ordered.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import CapacityError, IndeterminateError
from .fibrations import (
    closure_graphs,
    fiber_generators,
    load_fibration,
)
from .freeprod import closure_from_json
from .graphs import graph_from_json, graph_to_json
from .diagrams import diagram_from_json
from .partitions import partition_from_json
from .repspaces import (
    PermutationGroup,
    burnside_dim,
    dim_report,
    graph_automorphism_group,
    orbits,
    symmetric_group,
    verify_THpart,
)
from .tensors import (
    build_T,
    build_That,
    compare_tensors,
    moebius_expand,
    tensor_from_json,
    tensor_to_csv,
    tensor_to_json,
    verify_functor,
    verify_that_sums,
)


class Config:
    __slots__ = (
        "max_vertices",
        "partition_bound",
        "tuple_bound",
        "strategy",
        "bfs_depth",
        "bfs_max_len",
        "coset_cap",
        "bigint",
    )

    DEFAULTS = {
        "max_vertices": 5,
        "partition_bound": 10,
        "tuple_bound": 10**6,
        "strategy": "auto",
        "bfs_depth": 6,
        "bfs_max_len": 24,
        "coset_cap": 20000,
        "bigint": True,
    }

    def __init__(self, **overrides):
        unknown = set(overrides) - set(self.DEFAULTS)
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        for key, default in self.DEFAULTS.items():
            value = overrides.get(key, default)
            if isinstance(default, int) and not isinstance(default, bool):
                if not isinstance(value, int) or isinstance(value, bool) or value < 1:
                    raise ValueError(f"config key {key!r} must be a positive integer")
            setattr(self, key, value)


def _load_json(path):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _print(payload):
    sys.stdout.write(json.dumps(payload, sort_keys=True) + "\n")


def _group_from_json(obj):
    if not isinstance(obj, dict):
        raise ValueError("group JSON must be an object")
    if "elements" in obj:
        return PermutationGroup(obj["degree"], [tuple(e) for e in obj["elements"]])
    if "automorphisms_of" in obj:
        return graph_automorphism_group(graph_from_json(obj["automorphisms_of"]))
    if "symmetric" in obj:
        return symmetric_group(obj["symmetric"])
    raise ValueError("group JSON needs 'elements', 'automorphisms_of', or 'symmetric'")


# ---------------------------------------------------------------------------
# subcommands


def cmd_tensor(args, config):
    g = graph_from_json(_load_json(args.graph))
    d = diagram_from_json(_load_json(args.diagram))
    t = build_That(g, d) if args.mode == "inj" else build_T(g, d)
    if args.format == "csv":
        sys.stdout.write(tensor_to_csv(t))
    else:
        _print(tensor_to_json(t))
    return 0


def _frozen_reports(g, check, builder):
    """Regression comparisons against tensors frozen into the fixture file."""
    reports = []
    expect = check.get("expect", {})
    for side in sorted(expect):
        want = tensor_from_json(expect[side])
        have = builder(g, diagram_from_json(check[side]))
        diff = compare_tensors(have, want)
        reports.append({"law": f"frozen-{side}", "ok": diff is None, "first_diff": diff})
    return reports


def cmd_verify(args, config):
    fixtures = _load_json(args.fixtures)
    if not isinstance(fixtures, dict) or "checks" not in fixtures:
        raise ValueError("fixtures JSON must be an object with a 'checks' list")
    failures = []
    count = 0
    for idx, check in enumerate(fixtures["checks"]):
        if args.law == "functor":
            g = graph_from_json(check["graph"])
            reports = _frozen_reports(g, check, build_T)
            reports += verify_functor(
                g, diagram_from_json(check["left"]), diagram_from_json(check["right"])
            )
        elif args.law == "that":
            g = graph_from_json(check["graph"])
            reports = _frozen_reports(g, check, build_That)
            reports += verify_that_sums(
                g, diagram_from_json(check["left"]), diagram_from_json(check["right"])
            )
        elif args.law == "moebius":
            g = graph_from_json(check["graph"])
            reports = [moebius_expand(g, diagram_from_json(check["diagram"]))]
        else:  # thpart
            group = _group_from_json(check["group"])
            reports = [verify_THpart(group, partition_from_json(check["partition"]))]
        count += len(reports)
        for rep in reports:
            if not rep["ok"]:
                failures.append({"check": idx, "law": rep["law"], "first_diff": rep["first_diff"]})
    _print({"law": args.law, "checks": count, "ok": not failures, "failures": failures})
    return 1 if failures else 0


def cmd_dim(args, config):
    group = _group_from_json(_load_json(args.group))
    words = _load_json(args.words)
    closure = None if words is None else closure_from_json(words)
    report = dim_report(group, closure, args.k, args.l, tuple_bound=config.tuple_bound)
    _print(report)
    return 0


def cmd_closure(args, config):
    fib = load_fibration(args.fibration, default_max_vertices=config.max_vertices)
    graphs = closure_graphs(fib)
    listing = []
    for g in graphs:
        entry = graph_to_json(g)
        entry["fiber_generators"] = [list(w) for w in fiber_generators(fib, g)]
        listing.append(entry)
    _print({"count": len(listing), "graphs": listing})
    return 0


def cmd_orbits(args, config):
    group = _group_from_json(_load_json(args.group))
    orbs = orbits(group, args.k, args.l, tuple_bound=config.tuple_bound)
    _print(
        {
            "k": args.k,
            "l": args.l,
            "count": len(orbs),
            "burnside": burnside_dim(group, args.k, args.l),
            "orbits": [{"a": list(o.a), "b": list(o.b), "size": o.size} for o in orbs],
        }
    )
    return 0


# ---------------------------------------------------------------------------
# entry point


def build_parser():
    parser = argparse.ArgumentParser(prog="graphfib", description=__doc__.splitlines()[0])
    parser.add_argument("--config", help="JSON file overriding default bounds")
    parser.add_argument("--seed", type=int, default=0, help="seed accepted for interface parity; commands are deterministic")
    parser.add_argument("--threads", type=int, default=1, help="accepted for interface parity; execution is single-threaded")
    parser.add_argument("--bigint", action="store_true", help="accepted for interface parity; integers are always arbitrary precision")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tensor", help="homomorphism-count tensor of a diagram into a graph")
    p.add_argument("graph")
    p.add_argument("diagram")
    p.add_argument(
        "--mode",
        choices=("hom", "inj"),
        default="hom",
        help="count all homomorphisms (hom) or injective ones only (inj)",
    )
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_tensor)

    p = sub.add_parser("verify", help="re-derive both sides of an identity over fixtures")
    p.add_argument("law", choices=("functor", "that", "moebius", "thpart"))
    p.add_argument("fixtures")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("dim", help="morphism-space dimension for a group and a word closure")
    p.add_argument("group")
    p.add_argument("words")
    p.add_argument("k", type=int)
    p.add_argument("l", type=int)
    p.set_defaults(func=cmd_dim)

    p = sub.add_parser("closure", help="list the fibres of a fibration")
    p.add_argument("fibration")
    p.set_defaults(func=cmd_closure)

    p = sub.add_parser("orbits", help="label-pair orbits of a permutation group")
    p.add_argument("group")
    p.add_argument("k", type=int)
    p.add_argument("l", type=int)
    p.set_defaults(func=cmd_orbits)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        overrides = _load_json(args.config) if args.config else {}
        if not isinstance(overrides, dict):
            raise ValueError("config JSON must be an object")
        config = Config(**overrides)
        if args.threads < 1:
            raise ValueError("--threads must be at least 1")
        return args.func(args, config)
    except CapacityError as exc:
        print(f"capacity: {exc}", file=sys.stderr)
        return 3
    except IndeterminateError as exc:
        print(f"indeterminate: {exc}", file=sys.stderr)
        return 4
    except (ValueError, KeyError, TypeError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
