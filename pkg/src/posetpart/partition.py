"""Set partitions of a poset carrier and their ordered block structures.

The central gadget is the blockwise quasiorder of a partition: the smallest
quasiorder relating elements through alternating same-block and order steps.
It is computed as the transitive closure of (same-block union leq); the test
suite checks that against a literal alternating-sequence search.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import TYPE_CHECKING, Iterable

from .errors import (EmptyBlock, IncompleteCover, InternalInvariantViolation,
                     OverlappingBlocks)
from .poset import (Poset, Relation, close_rows, is_partial_order, iter_bits,
                    transpose_rows)

if TYPE_CHECKING:
    from .quasiorder import Quasiorder


@dataclass(frozen=True)
class SetPartition:
    """Disjoint nonempty blocks covering the carrier.

    Canonical form: members ascending within each block, blocks sorted by
    smallest member.  Equality and hashing are structural, so partitions can
    be deduplicated across enumeration routes.
    """

    base: Poset
    blocks: tuple[tuple[int, ...], ...]
    block_of: tuple[int, ...]

    def __post_init__(self) -> None:
        assert len(self.block_of) == self.base.n
        assert all(blk for blk in self.blocks)
        assert all(self.block_of[i] == b for b, blk in enumerate(self.blocks) for i in blk)

    @property
    def k(self) -> int:
        return len(self.blocks)

    @cached_property
    def block_masks(self) -> tuple[int, ...]:
        out = []
        for blk in self.blocks:
            mask = 0
            for i in blk:
                mask |= 1 << i
            out.append(mask)
        return tuple(out)

    def __str__(self) -> str:
        labs = self.base.labels
        return "".join("{" + ",".join(labs[i] for i in blk) + "}" for blk in self.blocks)


@dataclass(frozen=True)
class OrderedPartition:
    """A set partition together with a partial order on its blocks."""

    support: SetPartition
    block_order: Relation

    def __post_init__(self) -> None:
        assert self.block_order.n == self.support.k

    def __str__(self) -> str:
        strict = [f"B{i + 1}<=B{j + 1}"
                  for i in range(self.block_order.n)
                  for j in iter_bits(self.block_order.rows[i] & ~(1 << i))]
        if not strict:
            return str(self.support)
        return f"{self.support} | {' '.join(strict)}"


@dataclass(frozen=True)
class PartitionClass:
    """Which of the three partition notions an ordered partition satisfies."""

    monotone: bool
    regular: bool
    open: bool


def partition_from_block_of(poset: Poset, block_of: Iterable[int]) -> SetPartition:
    """Canonicalize an element-to-block-id assignment into a SetPartition.

    Block ids may be arbitrary; blocks are renumbered by first occurrence,
    which coincides with sorting by smallest member.
    """
    ids = list(block_of)
    assert len(ids) == poset.n
    renumber: dict[int, int] = {}
    members: list[list[int]] = []
    for i, b in enumerate(ids):
        slot = renumber.get(b)
        if slot is None:
            slot = renumber[b] = len(members)
            members.append([])
        members[slot].append(i)
    return SetPartition(poset, tuple(tuple(m) for m in members),
                        tuple(renumber[b] for b in ids))


def make_set_partition(poset: Poset, blocks: Iterable[Iterable[str]]) -> SetPartition:
    """Validate labeled blocks into a partition of the carrier."""
    block_of = [-1] * poset.n
    count = 0
    for blk in blocks:
        members = {poset.index(lab) for lab in blk}
        if not members:
            raise EmptyBlock("blocks must be nonempty")
        for m in members:
            if block_of[m] >= 0:
                raise OverlappingBlocks(
                    f"element {poset.labels[m]!r} appears in more than one block")
            block_of[m] = count
        count += 1
    missing = [poset.labels[i] for i, b in enumerate(block_of) if b < 0]
    if missing:
        raise IncompleteCover(f"blocks do not cover: {' '.join(missing)}")
    return partition_from_block_of(poset, block_of)


def _check_base(poset: Poset, partition: SetPartition) -> None:
    if partition.base != poset:
        raise ValueError("partition does not belong to this poset")


def _blockwise_rows(poset: Poset, key) -> tuple[int, ...]:
    """Rows of the blockwise quasiorder for a block assignment.

    ``key`` maps each carrier index to a block id (any hashable); same key
    means same block.  Returns close_rows(same-block union leq).
    """
    masks: dict = {}
    for i, b in enumerate(key):
        masks[b] = masks.get(b, 0) | (1 << i)
    return close_rows(poset.leq.rows[i] | masks[key[i]] for i in range(poset.n))


def blockwise_quasiorder(poset: Poset, partition: SetPartition) -> "Quasiorder":
    """Smallest quasiorder relating elements through same-block and order steps."""
    from .quasiorder import Quasiorder  # deferred: quasiorder imports this module

    _check_base(poset, partition)
    return Quasiorder(poset, Relation(poset.n, _blockwise_rows(poset, partition.block_of)))


def blocks_are_blockwise_classes(poset: Poset, partition: SetPartition) -> bool:
    """True when two elements share a block iff they are mutually blockwise related.

    Exactly the supports with this property carry a (then unique) regular
    block order; see regular_order.
    """
    _check_base(poset, partition)
    rows = _blockwise_rows(poset, partition.block_of)
    cols = transpose_rows(rows)
    masks = partition.block_masks
    return all(rows[i] & cols[i] == masks[partition.block_of[i]]
               for i in range(poset.n))


def is_monotone(poset: Poset, op: OrderedPartition) -> bool:
    """Comparable elements must land in comparable blocks."""
    _check_base(poset, op.support)
    of = op.support.block_of
    order = op.block_order
    return all(order.has(of[i], of[j]) for i, j in poset.strict_pairs)


def is_regular(poset: Poset, op: OrderedPartition) -> bool:
    """The block order must mirror the blockwise quasiorder exactly."""
    _check_base(poset, op.support)
    of = op.support.block_of
    rows = _blockwise_rows(poset, of)
    order = op.block_order
    for i in range(poset.n):
        for j in range(poset.n):
            if bool(rows[i] >> j & 1) != order.has(of[i], of[j]):
                return False
    return True


def _block_up_masks(poset: Poset, partition: SetPartition) -> list[int]:
    rows = poset.leq.rows
    out = []
    for mask in partition.block_masks:
        up = 0
        for i in iter_bits(mask):
            up |= rows[i]
        out.append(up)
    return out


def upper_sets_are_block_unions(poset: Poset, partition: SetPartition) -> bool:
    """Whether the upper set of every block is a union of blocks.

    Equivalently: any block intersecting an upper set is contained in it.
    """
    _check_base(poset, partition)
    ups = _block_up_masks(poset, partition)
    for up in ups:
        for mask in partition.block_masks:
            if up & mask and mask & ~up:
                return False
    return True


def is_open(poset: Poset, op: OrderedPartition) -> bool:
    """Upper sets of blocks are block unions, and blocks are ordered exactly
    when they contain a comparable cross pair."""
    _check_base(poset, op.support)
    if not upper_sets_are_block_unions(poset, op.support):
        return False
    ups = _block_up_masks(poset, op.support)
    masks = op.support.block_masks
    order = op.block_order
    for b in range(op.support.k):
        for c in range(op.support.k):
            if order.has(b, c) != bool(ups[b] & masks[c]):
                return False
    return True


def regular_order(poset: Poset, partition: SetPartition) -> Relation | None:
    """The unique block order making the support regular, if one exists.

    Absent exactly when blocks_are_blockwise_classes fails.  Any member pair
    serves as witness; mutual relatedness inside blocks makes the choice
    irrelevant, so block minima are used.
    """
    _check_base(poset, partition)
    if not blocks_are_blockwise_classes(poset, partition):
        return None
    rows = _blockwise_rows(poset, partition.block_of)
    reps = [blk[0] for blk in partition.blocks]
    k = partition.k
    out = []
    for b in range(k):
        src = rows[reps[b]]
        row = 0
        for c in range(k):
            if src >> reps[c] & 1:
                row |= 1 << c
        out.append(row)
    order = Relation(k, tuple(out))
    if not is_partial_order(order):
        raise InternalInvariantViolation("induced regular block order is not a partial order")
    return order


def open_order(poset: Poset, partition: SetPartition) -> Relation | None:
    """The unique block order making the support open, if one exists.

    Absent exactly when upper_sets_are_block_unions fails.  Antisymmetry of
    the cross-pair order is a theorem for finite carriers; it is re-checked
    here rather than assumed.
    """
    _check_base(poset, partition)
    if not upper_sets_are_block_unions(poset, partition):
        return None
    ups = _block_up_masks(poset, partition)
    masks = partition.block_masks
    k = partition.k
    out = []
    for b in range(k):
        row = 0
        for c in range(k):
            if ups[b] & masks[c]:
                row |= 1 << c
        out.append(row)
    order = Relation(k, tuple(out))
    if not is_partial_order(order):
        raise InternalInvariantViolation("cross-pair block order is not a partial order")
    return order


def classify(poset: Poset, op: OrderedPartition) -> PartitionClass:
    """Evaluate all three notions independently and check the implication chain.

    open implies regular implies monotone is a theorem; evaluating the
    predicates separately keeps it continuously tested instead of assumed.
    """
    m = is_monotone(poset, op)
    r = is_regular(poset, op)
    o = is_open(poset, op)
    if (o and not r) or (r and not m):
        raise InternalInvariantViolation(
            f"classification chain broken: monotone={m} regular={r} open={o}")
    return PartitionClass(m, r, o)
