"""Command-line front end: builders, dynamics, algebra, verification.

Output is JSON, one object per line, with keys sorted and no whitespace,
so identical invocations are byte-identical. Integers that can outgrow 64
bits (orders, spanning-tree counts) are emitted as decimal strings; chip
vectors and invariant factors stay plain JSON integers.

Exit codes: 0 all good, 1 a verification check failed, 2 bad usage/input.
"""

from __future__ import annotations

import argparse
import json
import sys

from .firing import ChipConfig, element_order, recurrent_rep, stabilize
from .firing import is_recurrent_burning, identity
from .formulas import lex_successor, root_subgroup_order, spanning_tree_product
from .graphs import (
    RootedTree,
    SinkedMultigraph,
    build_wired_ball,
    build_wired_regular_tree,
    build_wired_tree,
    spanning_tree_count,
)
from .groups import sandpile_group
from .trees import config_to_level_vector, is_recurrent_critical
from .verify import CLAIMS


def _emit(obj) -> None:
    print(json.dumps(obj, sort_keys=True, separators=(",", ":")))


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _load_graph(path: str) -> SinkedMultigraph:
    return SinkedMultigraph.from_json(_read_text(path))


def _parse_chips(g: SinkedMultigraph, text: str) -> ChipConfig:
    try:
        chips = [int(x) for x in text.split(",")]
    except ValueError:
        raise ValueError(f"chips must be a comma-separated integer list, got {text!r}")
    if len(chips) != g.non_sink_count:
        raise ValueError(
            f"expected {g.non_sink_count} chip entries, got {len(chips)}")
    return ChipConfig(g, chips)


# ----------------------------------------------------------------------
# subcommands
# ----------------------------------------------------------------------

def _cmd_build(args) -> int:
    if args.kind == "regular-tree":
        g = build_wired_regular_tree(args.degree, args.height)
    elif args.kind == "ball":
        g = build_wired_ball(args.degree, args.n)
    else:  # tree-file
        if args.file is None:
            raise ValueError("build tree-file needs a file argument")
        tree = RootedTree.from_json_dict(json.loads(_read_text(args.file)))
        g = build_wired_tree(tree)
    print(g.to_json())
    return 0


def _cmd_group(args) -> int:
    grp = sandpile_group(_load_graph(args.graph))
    print(grp.to_json())
    return 0


def _cmd_stabilize(args) -> int:
    g = _load_graph(args.graph)
    result = stabilize(_parse_chips(g, args.chips))
    _emit({"stable": list(result.stable.chips),
           "odometer": list(result.odometer)})
    return 0


def _cmd_recurrent(args) -> int:
    g = _load_graph(args.graph)
    u = _parse_chips(g, args.chips)
    if not u.is_stable():
        raise ValueError("recurrence test needs a stable configuration")
    out = {}
    if args.method in ("burning", "both"):
        out["burning"] = is_recurrent_burning(u)
    if args.method in ("critical", "both"):
        out["critical"] = is_recurrent_critical(g, u)
    if args.method == "both":
        out["agree"] = out["burning"] == out["critical"]
        out["recurrent"] = out["burning"]
        _emit(out)
        return 0 if out["agree"] else 1
    out["recurrent"] = out[args.method]
    _emit(out)
    return 0


def _cmd_identity(args) -> int:
    e = identity(_load_graph(args.graph))
    _emit({"identity": list(e.chips)})
    return 0


def _cmd_order(args) -> int:
    g = _load_graph(args.graph)
    u = recurrent_rep(_parse_chips(g, args.chips))
    _emit({"order": str(element_order(u)), "recurrent_rep": list(u.chips)})
    return 0


def _cmd_lex_orbit(args) -> int:
    g = build_wired_regular_tree(args.degree, args.height)
    r_hat = recurrent_rep(ChipConfig.unit(g, 0))
    period = root_subgroup_order(args.degree, args.height)
    count = period if args.count is None else args.count
    if count < 1:
        raise ValueError("count must be positive")
    vec = config_to_level_vector(r_hat)
    for k in range(1, count + 1):
        _emit({"k": k, "vector": list(vec)})
        vec = lex_successor(vec, args.degree)
    _emit({"period": str(period)})
    return 0


def _cmd_spanning_trees(args) -> int:
    if args.graph is not None:
        count = spanning_tree_count(_load_graph(args.graph))
        _emit({"method": "determinant", "spanning_trees": str(count)})
    elif args.degree is not None and args.height is not None:
        count = spanning_tree_product(args.degree, args.height)
        _emit({"method": "closed-form", "spanning_trees": str(count)})
    else:
        raise ValueError("give a graph file or both --degree and --height")
    return 0


_CLAIM_FLAGS = ("degree", "height", "n", "prime", "max_height", "seed",
                "bound", "hom_samples")


def _cmd_verify(args) -> int:
    kwargs = {}
    for name in _CLAIM_FLAGS:
        value = getattr(args, name, None)
        if value is not None:
            kwargs[name] = value
    suite = CLAIMS[args.claim]
    try:
        reports = suite(**kwargs)
    except TypeError as exc:
        raise ValueError(f"bad parameters for {args.claim}: {exc}")
    failures = 0
    for report in reports:
        _emit(report)
        if not report["pass"]:
            failures += 1
    _emit({"claim": args.claim, "instances": len(reports),
           "failures": failures, "pass": failures == 0})
    return 0 if failures == 0 else 1


# ----------------------------------------------------------------------
# parser
# ----------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sandpile",
        description="Sandpile groups of wired trees: chip-firing, group "
                    "structure, and verification suites.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="emit a graph as canonical JSON")
    p.add_argument("kind", choices=("regular-tree", "ball", "tree-file"))
    p.add_argument("file", nargs="?", default=None,
                   help="tree JSON file ({\"parents\": [...]}) for tree-file")
    p.add_argument("--degree", type=int, default=3)
    p.add_argument("--height", type=int, default=4)
    p.add_argument("--n", type=int, default=2, help="ball radius")
    p.set_defaults(func=_cmd_build)

    p = sub.add_parser("group", help="invariant factors and group order")
    p.add_argument("graph", help="graph JSON file, or - for stdin")
    p.set_defaults(func=_cmd_group)

    p = sub.add_parser("stabilize", help="stable configuration and odometer")
    p.add_argument("graph")
    p.add_argument("--chips", required=True, help="comma-separated chips")
    p.set_defaults(func=_cmd_stabilize)

    p = sub.add_parser("recurrent", help="test a stable configuration")
    p.add_argument("graph")
    p.add_argument("--chips", required=True)
    p.add_argument("--method", choices=("burning", "critical", "both"),
                   default="burning")
    p.set_defaults(func=_cmd_recurrent)

    p = sub.add_parser("identity", help="identity configuration of the group")
    p.add_argument("graph")
    p.set_defaults(func=_cmd_identity)

    p = sub.add_parser("order", help="order of a configuration's class")
    p.add_argument("graph")
    p.add_argument("--chips", required=True)
    p.set_defaults(func=_cmd_order)

    p = sub.add_parser("lex-orbit",
                       help="root-generator orbit as level vectors")
    p.add_argument("--degree", type=int, default=3)
    p.add_argument("--height", type=int, default=4)
    p.add_argument("--count", type=int, default=None,
                   help="steps to print (default: full period)")
    p.set_defaults(func=_cmd_lex_orbit)

    p = sub.add_parser("spanning-trees", help="spanning-tree count")
    p.add_argument("graph", nargs="?", default=None)
    p.add_argument("--degree", type=int, default=None)
    p.add_argument("--height", type=int, default=None)
    p.set_defaults(func=_cmd_spanning_trees)

    p = sub.add_parser("verify", help="run a named verification suite")
    p.add_argument("claim", choices=sorted(CLAIMS))
    p.add_argument("--degree", type=int, default=None)
    p.add_argument("--height", type=int, default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--prime", type=int, default=None)
    p.add_argument("--max-height", dest="max_height", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--bound", type=int, default=None)
    p.add_argument("--hom-samples", dest="hom_samples", type=int, default=None)
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
