"""Command-line front end.

    posetpart <command> [--poset FILE]... [--partition FILE] [--map FILE]
              [--kind monotone|regular|open] [--route blocks|quasiorders|fibres]
              [--bound N] [--system repi-mono|epi-rmono]

Commands: validate, classify, enumerate, count, factorize, crosscheck, dot.
Exit codes: 0 success, 1 domain-level negative (crosscheck disagreement),
2 usage or parse error.
"""

from __future__ import annotations

import argparse
import sys

from .documents import (PartitionDocument, parse_map, parse_partition,
                        parse_poset, partition_target_name, poset_dot)
from .enumeration import (KINDS, cross_check, enumerate_partitions,
                          enumerate_partitions_via_fibres, monotone_block_orders)
from .errors import ParseError, PosetError
from .maps import (EPI_REGULAR_MONO, REGULAR_EPI_MONO, compose, factorize,
                   is_fibre_coherent, is_injective, is_order_preserving,
                   is_order_reflecting, is_surjective)
from .partition import OrderedPartition, classify, open_order, regular_order
from .poset import Poset, Relation, iter_bits

SYSTEM_FLAGS = {"repi-mono": REGULAR_EPI_MONO, "epi-rmono": EPI_REGULAR_MONO}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="posetpart",
        description="Classify, enumerate, and cross-check partitions of finite posets.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_text: str, **flags) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--poset", action="append", default=[], metavar="FILE",
                       help="poset file; repeat to load several")
        if flags.get("partition"):
            p.add_argument("--partition", metavar="FILE")
        if flags.get("kind"):
            p.add_argument("--kind", choices=KINDS, required=flags["kind"] == "required")
        if flags.get("route"):
            p.add_argument("--route", choices=("blocks", "quasiorders", "fibres"),
                           default="blocks")
        if flags.get("bound"):
            p.add_argument("--bound", type=int, default=None)
        if flags.get("map"):
            p.add_argument("--map", metavar="FILE")
        if flags.get("system"):
            p.add_argument("--system", choices=sorted(SYSTEM_FLAGS), default="repi-mono")
        return p

    add("validate", "parse the given files and report their shape",
        partition=True, map=True)
    add("classify", "report which partition notions a document satisfies",
        partition=True)
    add("enumerate", "list all partitions of one kind",
        kind="required", route=True, bound=True)
    add("count", "count the partitions of one kind",
        kind="required", bound=True)
    add("factorize", "factor a map through one of the two systems",
        map=True, system=True)
    add("crosscheck", "compare all enumeration routes on one poset",
        bound=True)
    add("dot", "emit the covering relation as a DOT digraph")
    return parser


def _read(path: str) -> str:
    with open(path, "rb") as handle:
        return handle.read().decode("utf-8", errors="replace")


def _load_posets(args) -> dict[str, Poset]:
    loaded: dict[str, Poset] = {}
    for path in args.poset:
        doc = parse_poset(_read(path))
        if doc.name in loaded:
            raise ParseError(1, f"poset {doc.name!r} loaded twice")
        loaded[doc.name] = doc.build()
    return loaded


def _single_poset(loaded: dict[str, Poset]) -> tuple[str, Poset]:
    if len(loaded) != 1:
        raise ParseError(1, "this command needs exactly one --poset file")
    return next(iter(loaded.items()))


def _load_partition(args, loaded: dict[str, Poset]) -> tuple[str, Poset, PartitionDocument]:
    if not getattr(args, "partition", None):
        raise ParseError(1, "this command needs --partition")
    text = _read(args.partition)
    target = partition_target_name(text)
    if target is None:
        raise ParseError(1, "missing partition header")
    if target not in loaded:
        raise ParseError(1, f"partition targets poset {target!r}, which is not loaded")
    return target, loaded[target], parse_partition(text, loaded[target])


def _strict_order_pairs(order: Relation, names) -> str:
    parts = [f"{names[i]}<={names[j]}"
             for i in range(order.n)
             for j in iter_bits(order.rows[i] & ~(1 << i))]
    return " ".join(parts) if parts else "(discrete)"


def cmd_validate(args) -> int:
    loaded = _load_posets(args)
    if not loaded:
        raise ParseError(1, "nothing to validate; give --poset")
    for name, poset in loaded.items():
        covers = len(poset.cover.pairs())
        print(f"poset {name}: ok ({poset.n} elements, {covers} cover pairs)")
    if getattr(args, "partition", None):
        name, poset, doc = _load_partition(args, loaded)
        shape = "with block order" if doc.block_order is not None else "support only"
        print(f"partition of {name}: ok ({doc.support.k} blocks, {shape})")
    if getattr(args, "map", None):
        doc = parse_map(_read(args.map), loaded)
        print(f"map {doc.name}: ok ({doc.dom_name} -> {doc.cod_name})")
    return 0


def cmd_classify(args) -> int:
    loaded = _load_posets(args)
    _, poset, doc = _load_partition(args, loaded)
    if doc.block_order is not None:
        verdict = classify(poset, OrderedPartition(doc.support, doc.block_order))
        print(f"monotone: {'yes' if verdict.monotone else 'no'}")
        print(f"regular: {'yes' if verdict.regular else 'no'}")
        print(f"open: {'yes' if verdict.open else 'no'}")
        return 0
    # support only: report per kind what orders the support admits
    print(f"monotone orders: {len(monotone_block_orders(poset, doc.support))}")
    for label, order in (("regular", regular_order(poset, doc.support)),
                         ("open", open_order(poset, doc.support))):
        if order is None:
            print(f"{label} order: none")
        else:
            print(f"{label} order: {_strict_order_pairs(order, doc.block_names)}")
    return 0


def cmd_enumerate(args) -> int:
    _, poset = _single_poset(_load_posets(args))
    if args.route == "fibres":
        report = enumerate_partitions_via_fibres(poset, args.kind, args.bound)
    else:
        report = enumerate_partitions(poset, args.kind, args.route, args.bound)
    print(f"count: {report.count}")
    for item in report.items:
        print(str(item))
    return 0


def cmd_count(args) -> int:
    _, poset = _single_poset(_load_posets(args))
    print(enumerate_partitions(poset, args.kind, "blocks", args.bound).count)
    return 0


def cmd_factorize(args) -> int:
    loaded = _load_posets(args)
    if not getattr(args, "map", None):
        raise ParseError(1, "factorize needs --map")
    doc = parse_map(_read(args.map), loaded)
    system = SYSTEM_FLAGS[args.system]
    fact = factorize(doc.map, system)
    print(f"map {doc.name}: {doc.dom_name} -> {doc.cod_name}")
    print(f"system: {fact.system}")
    print("mid elements: " + " ".join(fact.mid.labels))
    for i, j in fact.mid.cover.pairs():
        print(f"mid cover: {fact.mid.labels[i]} {fact.mid.labels[j]}")
    first_sends = " ".join(f"{fact.first.dom.labels[i]}->{fact.mid.labels[v]}"
                           for i, v in enumerate(fact.first.assignment))
    second_sends = " ".join(f"{fact.mid.labels[i]}->{fact.second.cod.labels[v]}"
                            for i, v in enumerate(fact.second.assignment))
    print(f"first: {first_sends}")
    print(f"second: {second_sends}")
    print(f"first order-preserving: {'yes' if is_order_preserving(fact.first) else 'no'}")
    print(f"first surjective: {'yes' if is_surjective(fact.first) else 'no'}")
    if system == REGULAR_EPI_MONO:
        print(f"first fibre-coherent: {'yes' if is_fibre_coherent(fact.first) else 'no'}")
    print(f"second injective: {'yes' if is_injective(fact.second) else 'no'}")
    print(f"second order-preserving: {'yes' if is_order_preserving(fact.second) else 'no'}")
    if system == EPI_REGULAR_MONO:
        print(f"second order-reflecting: {'yes' if is_order_reflecting(fact.second) else 'no'}")
    same = compose(fact.second, fact.first) == doc.map
    print(f"composition equals original: {'yes' if same else 'no'}")
    return 0


def cmd_crosscheck(args) -> int:
    name, poset = _single_poset(_load_posets(args))
    report = cross_check(poset, args.bound)
    print(f"poset {name}: {poset.n} elements")
    for kind in KINDS:
        per_route = " ".join(f"{route}={report.counts[kind][route]}"
                             for route in ("blocks", "quasiorders", "fibres"))
        print(f"{kind}: {per_route}")
    if report.agreement:
        print("agreement: yes")
        return 0
    kind, witness, routes = report.first_discrepancy
    print("agreement: no")
    print(f"first discrepancy: kind={kind} routes={routes[0]}/{routes[1]} witness={witness}")
    return 1


def cmd_dot(args) -> int:
    name, poset = _single_poset(_load_posets(args))
    sys.stdout.write(poset_dot(poset, name))
    return 0


HANDLERS = {
    "validate": cmd_validate,
    "classify": cmd_classify,
    "enumerate": cmd_enumerate,
    "count": cmd_count,
    "factorize": cmd_factorize,
    "crosscheck": cmd_crosscheck,
    "dot": cmd_dot,
}


def run(argv: list[str] | None = None) -> int:
    """Parse arguments and dispatch; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return HANDLERS[args.command](args)
    except ParseError as exc:
        print(f"error: line {exc.line}: {exc}", file=sys.stderr)
        return 2
    except PosetError as exc:
        where = f"line {exc.line}: " if exc.line is not None else ""
        print(f"error: {where}{type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
