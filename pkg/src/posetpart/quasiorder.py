"""Quasiorders on a poset carrier.

A quasiorder induces an equivalence (mutual pairs) whose classes form a
partition, and a partial order on those classes.  Quasiorders extending the
base order are the relational route to monotone partitions; the regularity
and openness side conditions below carve out the other two notions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .errors import BoundExceeded, NotAnExtension
from .partition import OrderedPartition, SetPartition
from .poset import (Poset, Relation, is_partial_order, iter_bits,
                    transitive_closure, transitive_extensions, transpose_rows)

QUASIORDER_ENUMERATION_BOUND = 7


def is_quasiorder(rel: Relation) -> bool:
    return rel.is_reflexive() and rel.is_transitive()


@dataclass(frozen=True)
class Quasiorder:
    """A reflexive transitive relation on the carrier of a base poset."""

    base: Poset
    rel: Relation

    def __post_init__(self) -> None:
        if self.rel.n != self.base.n:
            raise ValueError("relation size does not match the carrier")
        if not is_quasiorder(self.rel):
            raise ValueError("relation is not reflexive and transitive")


def equivalence_classes(q: Quasiorder) -> SetPartition:
    """Blocks of the equivalence: x ~ y iff x and y are mutually related."""
    rows = q.rel.rows
    cols = transpose_rows(rows)
    block_of = [-1] * q.rel.n
    blocks: list[tuple[int, ...]] = []
    for i in range(q.rel.n):
        if block_of[i] >= 0:
            continue
        members = tuple(iter_bits(rows[i] & cols[i]))
        for m in members:
            block_of[m] = len(blocks)
        blocks.append(members)
    return SetPartition(q.base, tuple(blocks), tuple(block_of))


def induced_poset_of_classes(q: Quasiorder) -> OrderedPartition:
    """Equivalence classes ordered by the quasiorder between representatives.

    Any member pair gives the same verdict (mutual pairs compose through
    transitivity), so block minima are used.
    """
    support = equivalence_classes(q)
    reps = [blk[0] for blk in support.blocks]
    k = support.k
    out = []
    for b in range(k):
        src = q.rel.rows[reps[b]]
        row = 0
        for c in range(k):
            if src >> reps[c] & 1:
                row |= 1 << c
        out.append(row)
    order = Relation(k, tuple(out))
    assert is_partial_order(order), "class order of a quasiorder must be a partial order"
    return OrderedPartition(support, order)


def extends_order(q: Quasiorder, poset: Poset) -> bool:
    """True iff every order pair of the poset is a quasiorder pair."""
    if q.base != poset:
        raise ValueError("quasiorder lives on a different poset")
    return all(l & ~r == 0 for l, r in zip(poset.leq.rows, q.rel.rows))


def _require_extension(q: Quasiorder, poset: Poset) -> None:
    if not extends_order(q, poset):
        raise NotAnExtension("quasiorder does not contain the poset order")


def _surplus_rows(q: Quasiorder, poset: Poset) -> tuple[int, ...]:
    rows = q.rel.rows
    cols = transpose_rows(rows)
    return tuple(rows[i] & ~cols[i] & ~poset.leq.rows[i] for i in range(q.rel.n))


def surplus_pairs(q: Quasiorder, poset: Poset) -> frozenset[tuple[int, int]]:
    """Strict, non-mutual quasiorder pairs that the base order does not force:
    (x, y) with x below y but not conversely, and x not below y in the poset."""
    _require_extension(q, poset)
    rows = _surplus_rows(q, poset)
    return frozenset((i, j) for i in range(len(rows)) for j in iter_bits(rows[i]))


def satisfies_regularity_condition(q: Quasiorder, poset: Poset) -> bool:
    """Dropping the surplus pairs and re-closing must rebuild the quasiorder."""
    _require_extension(q, poset)
    surplus = _surplus_rows(q, poset)
    kept = Relation(q.rel.n, tuple(r & ~s for r, s in zip(q.rel.rows, surplus)))
    return transitive_closure(kept).rows == q.rel.rows


def satisfies_openness_condition(q: Quasiorder, poset: Poset) -> bool:
    """Every quasiorder pair (p, r) needs a member of p's class below r."""
    _require_extension(q, poset)
    rows = q.rel.rows
    cols = transpose_rows(rows)
    down = poset.down_masks
    for p in range(q.rel.n):
        cls = rows[p] & cols[p]
        for r in iter_bits(rows[p]):
            if not cls & down[r]:
                return False
    return True


def enumerate_extending_quasiorders(poset: Poset,
                                    bound: int = QUASIORDER_ENUMERATION_BOUND
                                    ) -> Iterator[Quasiorder]:
    """Every quasiorder containing the poset order, exactly once, in ascending
    lexicographic order of the flattened relation matrix."""
    if poset.n > bound:
        raise BoundExceeded(
            f"carrier has {poset.n} elements; exhaustive search is capped at {bound}")
    for rel in transitive_extensions(poset.leq):
        yield Quasiorder(poset, rel)
