"""Finite posets on indexed carriers.

Relations are stored as one int bitmask per row: element i relates to j
exactly when bit j of ``rows[i]`` is set.  All values are immutable and all
functions are pure, so everything here is safe for concurrent use.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, NamedTuple

from .errors import CycleDetected, DuplicateLabel, UnknownLabel, ZeroSize


def iter_bits(mask: int) -> Iterator[int]:
    """Indices of the set bits of mask, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def close_rows(rows: Iterable[int]) -> tuple[int, ...]:
    """Transitive closure of bitmask rows (Floyd-Warshall over bit-parallel rows)."""
    out = list(rows)
    n = len(out)
    for k in range(n):
        bit = 1 << k
        row_k = out[k]
        for i in range(n):
            if out[i] & bit:
                out[i] |= row_k
    return tuple(out)


def transpose_rows(rows: Iterable[int]) -> tuple[int, ...]:
    rows = tuple(rows)
    cols = [0] * len(rows)
    for i, row in enumerate(rows):
        for j in iter_bits(row):
            cols[j] |= 1 << i
    return tuple(cols)


@dataclass(frozen=True)
class Relation:
    """Square boolean relation on {0, ..., n-1}."""

    n: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.rows) != self.n:
            raise ValueError("relation needs exactly one row per element")
        full = (1 << self.n) - 1
        if any(row & ~full for row in self.rows):
            raise ValueError("relation row mentions an element outside the carrier")

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, int]],
                   reflexive: bool = False) -> "Relation":
        rows = [1 << i if reflexive else 0 for i in range(n)]
        for i, j in pairs:
            rows[i] |= 1 << j
        return cls(n, tuple(rows))

    @classmethod
    def diagonal(cls, n: int) -> "Relation":
        return cls(n, tuple(1 << i for i in range(n)))

    @classmethod
    def full(cls, n: int) -> "Relation":
        row = (1 << n) - 1
        return cls(n, tuple(row for _ in range(n)))

    def has(self, i: int, j: int) -> bool:
        return bool(self.rows[i] >> j & 1)

    def pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in iter_bits(self.rows[i])]

    def transpose(self) -> "Relation":
        return Relation(self.n, transpose_rows(self.rows))

    def union(self, other: "Relation") -> "Relation":
        return Relation(self.n, tuple(a | b for a, b in zip(self.rows, other.rows)))

    def difference(self, other: "Relation") -> "Relation":
        return Relation(self.n, tuple(a & ~b for a, b in zip(self.rows, other.rows)))

    def is_reflexive(self) -> bool:
        return all(row >> i & 1 for i, row in enumerate(self.rows))

    def is_transitive(self) -> bool:
        return self.rows == close_rows(self.rows)

    def is_antisymmetric(self) -> bool:
        for i, row in enumerate(self.rows):
            for j in iter_bits(row & ~(1 << i)):
                if self.rows[j] >> i & 1:
                    return False
        return True


def transitive_closure(rel: Relation) -> Relation:
    """Smallest transitive relation containing rel; idempotent."""
    return Relation(rel.n, close_rows(rel.rows))


def is_partial_order(rel: Relation) -> bool:
    return rel.is_reflexive() and rel.is_antisymmetric() and rel.is_transitive()


class Element(NamedTuple):
    index: int
    label: str


@dataclass(frozen=True)
class Poset:
    """Labeled carrier with its order relation and derived covering relation."""

    labels: tuple[str, ...]
    leq: Relation
    cover: Relation

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def elements(self) -> tuple[Element, ...]:
        return tuple(Element(i, lab) for i, lab in enumerate(self.labels))

    @cached_property
    def _label_index(self) -> dict[str, int]:
        return {lab: i for i, lab in enumerate(self.labels)}

    def index(self, label: str) -> int:
        try:
            return self._label_index[label]
        except KeyError:
            raise UnknownLabel(f"no element labeled {label!r}") from None

    def leq_holds(self, i: int, j: int) -> bool:
        return self.leq.has(i, j)

    @cached_property
    def down_masks(self) -> tuple[int, ...]:
        """down_masks[j] collects every i with i <= j."""
        return transpose_rows(self.leq.rows)

    @cached_property
    def strict_pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple((i, j) for i in range(self.n)
                     for j in iter_bits(self.leq.rows[i] & ~(1 << i)))

    def __repr__(self) -> str:
        covers = " ".join(f"{self.labels[i]}<{self.labels[j]}"
                          for i, j in self.cover.pairs())
        return f"Poset({' '.join(self.labels)}{'; ' + covers if covers else ''})"


def _covering(leq: Relation) -> Relation:
    """Transitive reduction of a partial order, minus the diagonal."""
    n = leq.n
    strict = [leq.rows[i] & ~(1 << i) for i in range(n)]
    rows = []
    for i in range(n):
        two_steps = 0
        for k in iter_bits(strict[i]):
            two_steps |= strict[k]
        rows.append(strict[i] & ~two_steps)
    return Relation(n, tuple(rows))


def poset_from_leq(labels: Iterable[str], leq: Relation) -> Poset:
    """Wrap an already-validated partial order; callers guarantee validity."""
    labels = tuple(labels)
    assert len(labels) == leq.n and is_partial_order(leq)
    return Poset(labels, leq, _covering(leq))


def make_poset(labels: Iterable[str], covers: Iterable[tuple[str, str]]) -> Poset:
    """Build a poset from labels and generating pairs (covers or any order pairs).

    The pairs are closed reflexively and transitively; redundant pairs are
    tolerated, cycles are not.  The covering relation is recomputed as the
    transitive reduction, whatever shape the input pairs had.
    """
    labels = tuple(labels)
    index: dict[str, int] = {}
    for lab in labels:
        if not lab or any(ch.isspace() for ch in lab):
            raise ValueError(f"label {lab!r} must be a nonempty token without whitespace")
        if lab in index:
            raise DuplicateLabel(f"duplicate label {lab!r}")
        index[lab] = len(index)
    pairs = []
    for x, y in covers:
        for lab in (x, y):
            if lab not in index:
                raise UnknownLabel(f"no element labeled {lab!r}")
        pairs.append((index[x], index[y]))
    closed = transitive_closure(Relation.from_pairs(len(labels), pairs, reflexive=True))
    if not closed.is_antisymmetric():
        raise CycleDetected("pairs contain a cycle, so they generate no partial order")
    return Poset(labels, closed, _covering(closed))


def generate(kind: str, n: int) -> Poset:
    """Standard fixtures: a chain or an antichain on n elements labeled e0..e{n-1}."""
    if n < 1:
        raise ZeroSize("generated posets need at least one element")
    labels = tuple(f"e{i}" for i in range(n))
    if kind == "chain":
        rows = tuple((((1 << n) - 1) & ~((1 << i) - 1)) for i in range(n))
    elif kind == "antichain":
        rows = tuple(1 << i for i in range(n))
    else:
        raise ValueError(f"unknown poset kind {kind!r} (want 'chain' or 'antichain')")
    leq = Relation(n, rows)
    return Poset(labels, leq, _covering(leq))


def up_down_set(poset: Poset, members: Iterable[int], direction: str) -> frozenset[int]:
    """Upper or lower set generated by the given carrier indices."""
    if direction == "up":
        masks = poset.leq.rows
    elif direction == "down":
        masks = poset.down_masks
    else:
        raise ValueError(f"direction must be 'up' or 'down', not {direction!r}")
    out = 0
    for i in members:
        out |= masks[i]
    return frozenset(iter_bits(out))


def _grow_closed(rows: list[int], i: int, j: int, forbidden: list[int],
                 antisymmetric: bool) -> list[int] | None:
    """Add pair (i, j) to a transitively closed relation and re-close it.

    Returns None when the growth would add a forbidden pair or (in
    antisymmetric mode) a mutual pair.
    """
    if antisymmetric and rows[j] >> i & 1:
        return None
    target = rows[j] | (1 << j)
    out = list(rows)
    changed: list[tuple[int, int]] = []
    for a in range(len(rows)):
        if a != i and not rows[a] >> i & 1:
            continue
        added = target & ~out[a]
        if not added:
            continue
        if added & forbidden[a]:
            return None
        out[a] |= added
        changed.append((a, added))
    if antisymmetric:
        for a, added in changed:
            for b in iter_bits(added & ~(1 << a)):
                if out[b] >> a & 1:
                    return None
    return out


def transitive_extensions(rel: Relation, *, antisymmetric: bool = False) -> Iterator[Relation]:
    """All reflexive-transitive supersets of rel, each exactly once.

    With antisymmetric=True only partial orders are produced.  Results come
    out in ascending lexicographic order of the flattened relation matrix;
    the closure of rel itself is always first.
    """
    n = rel.n
    base = close_rows(row | (1 << i) for i, row in enumerate(rel.rows))
    if antisymmetric and not Relation(n, base).is_antisymmetric():
        return
    off_diagonal = [(i, j) for i in range(n) for j in range(n) if i != j]

    def rec(idx: int, rows: list[int], forbidden: list[int]) -> Iterator[Relation]:
        while idx < len(off_diagonal):
            i, j = off_diagonal[idx]
            bit = 1 << j
            if (rows[i] | forbidden[i]) & bit:
                idx += 1
                continue
            forbidden[i] |= bit
            yield from rec(idx + 1, rows, forbidden)
            forbidden[i] &= ~bit
            grown = _grow_closed(rows, i, j, forbidden, antisymmetric)
            if grown is not None:
                yield from rec(idx + 1, grown, forbidden)
            return
        yield Relation(n, tuple(rows))

    yield from rec(0, list(base), [0] * n)


@lru_cache(maxsize=None)
def all_posets(n: int) -> tuple[Poset, ...]:
    """Every partial order on n labeled points q0..q{n-1}, in matrix lex order.

    Sizes grow fast (1, 3, 19, 219, 4231 for n = 1..5); callers enforce their
    own bounds before asking for large n.
    """
    labels = tuple(f"q{i}" for i in range(n))
    return tuple(Poset(labels, rel, _covering(rel))
                 for rel in transitive_extensions(Relation.diagonal(n), antisymmetric=True))
