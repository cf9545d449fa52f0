"""Exhaustive generation of monotone, regular, and open partitions through
independent routes, plus the cross-checking harness that compares them.

Routes:
  blocks      - walk set partitions, attach admissible block orders directly
  quasiorders - walk quasiorders extending the base order, take class posets
  fibres      - walk codomain posets and surjections, take fibre partitions

Each route is exponential; the bounds below keep the worst cases at desk
scale.  The three routes agreeing on every poset is the point of the harness.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .errors import BoundExceeded
from .maps import (PosetMap, _is_open_assignment, _fibre_partition_unchecked,
                   is_fibre_coherent, order_preserving_assignments)
from .partition import (OrderedPartition, SetPartition,
                        blocks_are_blockwise_classes, open_order,
                        partition_from_block_of, regular_order,
                        upper_sets_are_block_unions)
from .poset import (Poset, Relation, all_posets, transitive_closure,
                    transitive_extensions)
from .quasiorder import (enumerate_extending_quasiorders,
                         induced_poset_of_classes,
                         satisfies_openness_condition,
                         satisfies_regularity_condition)

KINDS = ("monotone", "regular", "open")
ROUTES = ("blocks", "quasiorders", "fibres")

SET_PARTITION_BOUND = 10
KIND_BOUNDS = {"monotone": 6, "regular": 8, "open": 8}
FIBRE_DOMAIN_MAX = 6
FIBRE_CODOMAIN_MAX = 5


@dataclass(frozen=True)
class EnumerationReport:
    poset: Poset
    kind: str
    route: str
    items: tuple[OrderedPartition, ...]
    count: int


@dataclass(frozen=True)
class CrossCheckReport:
    poset: Poset
    counts: dict
    agreement: bool
    first_discrepancy: tuple | None


def partition_sort_key(op: OrderedPartition):
    return (op.support.blocks, op.block_order.rows)


def _require_kind(kind: str) -> None:
    if kind not in KINDS:
        raise ValueError(f"unknown partition kind {kind!r} (want one of {KINDS})")


def enumerate_set_partitions(poset: Poset,
                             bound: int = SET_PARTITION_BOUND) -> Iterator[SetPartition]:
    """All set partitions of the carrier, in restricted-growth order."""
    if poset.n > bound:
        raise BoundExceeded(
            f"carrier has {poset.n} elements; set partition sweep is capped at {bound}")
    n = poset.n
    if n == 0:
        yield SetPartition(poset, (), ())
        return
    word = [0] * n

    def rec(i: int, top: int) -> Iterator[SetPartition]:
        if i == n:
            yield partition_from_block_of(poset, word)
            return
        for b in range(top + 2):
            word[i] = b
            yield from rec(i + 1, max(top, b))

    yield from rec(1, 0)


def _forced_block_order(poset: Poset, support: SetPartition) -> Relation | None:
    """Closure of the block pairs forced by comparable elements, or None when
    that closure is not antisymmetric (no monotone order exists then)."""
    of = support.block_of
    pairs = {(of[i], of[j]) for i, j in poset.strict_pairs}
    closed = transitive_closure(Relation.from_pairs(support.k, pairs, reflexive=True))
    return closed if closed.is_antisymmetric() else None


def monotone_block_orders(poset: Poset, support: SetPartition) -> tuple[Relation, ...]:
    """Every block order making the support monotone (possibly none)."""
    forced = _forced_block_order(poset, support)
    if forced is None:
        return ()
    return tuple(transitive_extensions(forced, antisymmetric=True))


def _blocks_route(poset: Poset, kind: str) -> set[OrderedPartition]:
    items: set[OrderedPartition] = set()
    for support in enumerate_set_partitions(poset, bound=poset.n):
        if kind == "monotone":
            for order in monotone_block_orders(poset, support):
                items.add(OrderedPartition(support, order))
        elif kind == "regular":
            if blocks_are_blockwise_classes(poset, support):
                order = regular_order(poset, support)
                assert order is not None
                items.add(OrderedPartition(support, order))
        else:
            if upper_sets_are_block_unions(poset, support):
                order = open_order(poset, support)
                assert order is not None
                items.add(OrderedPartition(support, order))
    return items


def _quasiorders_route(poset: Poset, kind: str) -> set[OrderedPartition]:
    items: set[OrderedPartition] = set()
    for q in enumerate_extending_quasiorders(poset, bound=poset.n):
        if kind == "regular" and not satisfies_regularity_condition(q, poset):
            continue
        if kind == "open" and not satisfies_openness_condition(q, poset):
            continue
        items.add(induced_poset_of_classes(q))
    return items


def _make_report(poset: Poset, kind: str, route: str,
                 items: set[OrderedPartition]) -> EnumerationReport:
    ordered = tuple(sorted(items, key=partition_sort_key))
    return EnumerationReport(poset, kind, route, ordered, len(ordered))


def enumerate_partitions(poset: Poset, kind: str, route: str = "blocks",
                         bound: int | None = None) -> EnumerationReport:
    """Enumerate the partitions of one kind via the blocks or quasiorders route.

    The quasiorders route exists as an independent check; the blocks route is
    the cheap one and backs count().
    """
    _require_kind(kind)
    if route not in ("blocks", "quasiorders"):
        raise ValueError(f"route must be 'blocks' or 'quasiorders', not {route!r}")
    limit = KIND_BOUNDS[kind] if bound is None else bound
    if poset.n > limit:
        raise BoundExceeded(
            f"carrier has {poset.n} elements; {kind} enumeration is capped at {limit}")
    items = _blocks_route(poset, kind) if route == "blocks" else _quasiorders_route(poset, kind)
    return _make_report(poset, kind, route, items)


@lru_cache(maxsize=None)
def _fibre_route_sets(poset: Poset, codomain_bound: int) -> dict:
    """One sweep over (codomain, surjection) pairs, classified three ways."""
    monotone: set[OrderedPartition] = set()
    regular: set[OrderedPartition] = set()
    open_: set[OrderedPartition] = set()
    for size in range(1, min(codomain_bound, poset.n) + 1):
        for target in all_posets(size):
            for assignment in order_preserving_assignments(poset, target, surjective=True):
                f = PosetMap(poset, target, assignment)
                op = _fibre_partition_unchecked(f)
                monotone.add(op)
                if is_fibre_coherent(f):
                    regular.add(op)
                if _is_open_assignment(poset, target, assignment):
                    open_.add(op)
    return {"monotone": frozenset(monotone), "regular": frozenset(regular),
            "open": frozenset(open_)}


def enumerate_partitions_via_fibres(poset: Poset, kind: str,
                                    codomain_bound: int | None = None) -> EnumerationReport:
    """Enumerate partitions as fibre partitions of surjections onto every
    poset with at most codomain_bound elements, deduplicated.

    Surjections filtered to order-preserving / fibre-coherent / open yield
    exactly the monotone / regular / open partitions.
    """
    _require_kind(kind)
    bound = poset.n if codomain_bound is None else codomain_bound
    if poset.n > FIBRE_DOMAIN_MAX:
        raise BoundExceeded(
            f"carrier has {poset.n} elements; the fibre route is capped at {FIBRE_DOMAIN_MAX}")
    if bound > FIBRE_CODOMAIN_MAX:
        raise BoundExceeded(
            f"codomain bound {bound} exceeds the fibre route cap {FIBRE_CODOMAIN_MAX}")
    return _make_report(poset, kind, "fibres",
                        set(_fibre_route_sets(poset, min(bound, poset.n))[kind]))


def count(poset: Poset, kind: str, bound: int | None = None) -> int:
    """Number of partitions of one kind, via the blocks route."""
    return enumerate_partitions(poset, kind, "blocks", bound).count


def cross_check(poset: Poset, codomain_bound: int | None = None) -> CrossCheckReport:
    """Run all three routes for all three kinds and compare the result sets.

    Disagreement would falsify one of the equivalence theorems and is
    reported with its first witness.
    """
    bound = poset.n if codomain_bound is None else codomain_bound
    sets: dict[tuple[str, str], frozenset] = {}
    for kind in KINDS:
        sets[kind, "blocks"] = frozenset(enumerate_partitions(poset, kind, "blocks").items)
        sets[kind, "quasiorders"] = frozenset(
            enumerate_partitions(poset, kind, "quasiorders").items)
        sets[kind, "fibres"] = frozenset(
            enumerate_partitions_via_fibres(poset, kind, bound).items)
    counts = {kind: {route: len(sets[kind, route]) for route in ROUTES} for kind in KINDS}
    first = None
    for kind in KINDS:
        for ra, rb in (("blocks", "quasiorders"), ("blocks", "fibres"),
                       ("quasiorders", "fibres")):
            diff = sets[kind, ra] ^ sets[kind, rb]
            if diff:
                witness = min(diff, key=partition_sort_key)
                first = (kind, witness, (ra, rb))
                break
        if first:
            break
    return CrossCheckReport(poset, counts, first is None, first)
