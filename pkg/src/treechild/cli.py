"""Command line interface: solve, reduce, construct, check, generate.

Exit codes: 0 success, 1 no solution or incompatible, 2 parse or validation
error, 3 usage error.  Results go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import random
import sys

from .enewick import ENewickError, parse_document, write_enewick
from .network import is_binary, is_stack_free, is_tree_child, reticulation_number
from .oracle import GeneratorConfig, generate_instance
from .sequence import (
    TCSequence,
    construct_network,
    format_pairs,
    parse_pairs,
    reduce_by_sequence,
)
from .solver import BudgetExceededError, Instance, quick_incompatibility, solve

EXIT_OK = 0
EXIT_NO_SOLUTION = 1
EXIT_DATA_ERROR = 2
EXIT_USAGE = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _build_parser() -> _Parser:
    parser = _Parser(
        prog="treechild",
        description="Combine rooted tree-child networks via tree-child sequences.",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", help="find a minimum-reticulation tree-child network")
    p.add_argument("file", help="instance file, one eNewick network per line")
    p.add_argument("--max-k", type=int, default=None, help="stop after this budget")
    p.add_argument("--prune", action="store_true", help="drop branches beaten by the best result")
    p.add_argument("--stats", action="store_true", help="print search statistics to stderr")
    p.add_argument("--seed", type=int, default=None, help="shuffle branch exploration order")

    p = sub.add_parser("reduce", help="reduce each network by a sequence")
    p.add_argument("file", help="instance file")
    p.add_argument("--seq", required=True, help="sequence file, one 'first,second' per line")

    p = sub.add_parser("construct", help="build the network a sequence reduces")
    p.add_argument("--seq", required=True, help="sequence file, one 'first,second' per line")

    p = sub.add_parser("check", help="validate networks and report their class flags")
    p.add_argument("file", help="instance file")

    p = sub.add_parser("generate", help="emit a random tree-child instance")
    p.add_argument("--taxa", type=int, required=True, help="number of taxa (<= 12)")
    p.add_argument("--weight", type=int, required=True, help="target weight (<= 6)")
    p.add_argument("--count", type=int, default=2, help="networks per instance")
    p.add_argument("--seed", type=int, default=0, help="generator seed")
    return parser


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as handle:
            return handle.read()
    except OSError as exc:
        print(f"error: cannot read {path}: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_DATA_ERROR)


def _load_instance(path: str) -> Instance:
    doc = parse_document(_read(path))
    if not doc.networks:
        raise ValueError(f"{path} contains no networks")
    return Instance.from_networks(doc.networks)


def _cmd_solve(args) -> int:
    inst = _load_instance(args.file)
    witness = quick_incompatibility(inst)
    if witness is not None:
        print(f"incompatible: {witness}", file=sys.stderr)
        return EXIT_NO_SOLUTION
    rng = random.Random(args.seed) if args.seed is not None else None
    try:
        result = solve(inst, k_max=args.max_k, prune=args.prune, rng=rng)
    except BudgetExceededError as exc:
        print(f"inconclusive: {exc}", file=sys.stderr)
        return EXIT_NO_SOLUTION
    if result is None:
        print("incompatible: no tree-child sequence reduces every network", file=sys.stderr)
        return EXIT_NO_SOLUTION
    sys.stdout.write(format_pairs(result.sequence))
    print(write_enewick(result.network))
    if args.stats:
        s = result.stats
        print(f"weight: {result.weight}", file=sys.stderr)
        print(f"nodes expanded: {s.nodes_expanded}", file=sys.stderr)
        print(f"trivial reductions: {s.trivial_reductions}", file=sys.stderr)
        print(f"max branch width: {s.max_branch_width}", file=sys.stderr)
        print(f"failures: {s.failures_by_reason}", file=sys.stderr)
    return EXIT_OK


def _cmd_reduce(args) -> int:
    doc = parse_document(_read(args.file))
    pairs = parse_pairs(_read(args.seq))
    for net in doc.networks:
        print(write_enewick(reduce_by_sequence(net, pairs)))
    return EXIT_OK


def _cmd_construct(args) -> int:
    pairs = parse_pairs(_read(args.seq))
    seq = TCSequence(tuple(pairs))
    print(write_enewick(construct_network(seq)))
    return EXIT_OK


def _cmd_check(args) -> int:
    doc = parse_document(_read(args.file))
    if not doc.networks:
        print("error: no networks in input", file=sys.stderr)
        return EXIT_DATA_ERROR

    def flag(value: bool) -> str:
        return "yes" if value else "no"

    for i, net in enumerate(doc.networks, start=1):
        print(
            f"network {i}: taxa={len(net.taxa)}"
            f" reticulations={reticulation_number(net)}"
            f" binary={flag(is_binary(net))}"
            f" stack-free={flag(is_stack_free(net))}"
            f" tree-child={flag(is_tree_child(net))}"
        )
    taxa_sets = {net.taxa for net in doc.networks}
    if len(taxa_sets) > 1:
        print("note: networks do not share a common taxon set", file=sys.stderr)
        return EXIT_OK
    if all(is_tree_child(net) for net in doc.networks):
        witness = quick_incompatibility(Instance.from_networks(doc.networks))
        if witness is not None:
            print(f"incompatible: {witness}")
            return EXIT_NO_SOLUTION
    return EXIT_OK


def _cmd_generate(args) -> int:
    try:
        cfg = GeneratorConfig(
            taxa_count=args.taxa,
            target_weight=args.weight,
            seed=args.seed,
            subnetwork_count=args.count,
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    inst = generate_instance(cfg)
    print(f"# generated: taxa={args.taxa} weight={args.weight} count={args.count} seed={args.seed}")
    for net in inst.networks:
        print(write_enewick(net))
    return EXIT_OK


_HANDLERS = {
    "solve": _cmd_solve,
    "reduce": _cmd_reduce,
    "construct": _cmd_construct,
    "check": _cmd_check,
    "generate": _cmd_generate,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return _HANDLERS[args.command](args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_DATA_ERROR
    except ENewickError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA_ERROR
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA_ERROR


if __name__ == "__main__":
    sys.exit(main())
