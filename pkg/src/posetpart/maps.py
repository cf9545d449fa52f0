"""Maps between posets: structural predicates, fibre partitions, kernel
pairs, factorisations, and a bounded universal-property check for regular
epimorphisms.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping

from .errors import (BoundExceeded, InternalInvariantViolation,
                     MissingAssignment, NotOrderPreserving, NotSurjective,
                     UnknownLabel)
from .partition import (OrderedPartition, _blockwise_rows,
                        blocks_are_blockwise_classes, partition_from_block_of,
                        regular_order)
from .poset import Poset, Relation, all_posets, iter_bits, poset_from_leq

REGULAR_EPI_MONO = "regular-epi-mono"
EPI_REGULAR_MONO = "epi-regular-mono"
FACTORISATION_SYSTEMS = (REGULAR_EPI_MONO, EPI_REGULAR_MONO)

COUNTEREXAMPLE_FOUND = "counterexample_found"
NO_COUNTEREXAMPLE = "no_counterexample_up_to_bound"

ORACLE_CODOMAIN_CAP = 4


@dataclass(frozen=True)
class PosetMap:
    """A function between poset carriers; assignment[i] is the codomain index."""

    dom: Poset
    cod: Poset
    assignment: tuple[int, ...]

    def __post_init__(self) -> None:
        assert len(self.assignment) == self.dom.n
        assert all(0 <= v < self.cod.n for v in self.assignment)

    def apply(self, i: int) -> int:
        return self.assignment[i]

    def __repr__(self) -> str:
        sends = " ".join(f"{self.dom.labels[i]}->{self.cod.labels[v]}"
                         for i, v in enumerate(self.assignment))
        return f"PosetMap({sends})"


@dataclass(frozen=True)
class Factorisation:
    """second o first = the factorised map, through the mid poset."""

    system: str
    mid: Poset
    first: PosetMap
    second: PosetMap


def make_map(dom: Poset, cod: Poset, assignment: Mapping[str, str]) -> PosetMap:
    """Build a map from a label-to-label assignment covering the whole domain."""
    for lab in assignment:
        dom.index(lab)
    values = []
    for lab in dom.labels:
        if lab not in assignment:
            raise MissingAssignment(f"domain element {lab!r} has no image")
        values.append(cod.index(assignment[lab]))
    return PosetMap(dom, cod, tuple(values))


def compose(outer: PosetMap, inner: PosetMap) -> PosetMap:
    """outer o inner: apply inner first."""
    if inner.cod != outer.dom:
        raise ValueError("maps do not compose: codomain/domain mismatch")
    return PosetMap(inner.dom, outer.cod,
                    tuple(outer.assignment[v] for v in inner.assignment))


def _preserves_order(dom: Poset, cod: Poset, assignment) -> bool:
    rows = cod.leq.rows
    return all(rows[assignment[i]] >> assignment[j] & 1 for i, j in dom.strict_pairs)


def is_order_preserving(f: PosetMap) -> bool:
    return _preserves_order(f.dom, f.cod, f.assignment)


def is_surjective(f: PosetMap) -> bool:
    return len(set(f.assignment)) == f.cod.n


def is_injective(f: PosetMap) -> bool:
    return len(set(f.assignment)) == f.dom.n


def is_order_reflecting(f: PosetMap) -> bool:
    """Comparable images force comparable sources."""
    rows = f.cod.leq.rows
    a = f.assignment
    for i in range(f.dom.n):
        for j in range(f.dom.n):
            if rows[a[i]] >> a[j] & 1 and not f.dom.leq.has(i, j):
                return False
    return True


def _fibre_partition_unchecked(f: PosetMap) -> OrderedPartition:
    support = partition_from_block_of(f.dom, f.assignment)
    points = [f.assignment[blk[0]] for blk in support.blocks]
    k = support.k
    rows = []
    for b in range(k):
        src = f.cod.leq.rows[points[b]]
        row = 0
        for c in range(k):
            if src >> points[c] & 1:
                row |= 1 << c
        rows.append(row)
    return OrderedPartition(support, Relation(k, tuple(rows)))


def fibre_partition(f: PosetMap) -> OrderedPartition:
    """Fibres of an order-preserving surjection, ordered as their image points."""
    if not is_order_preserving(f):
        raise NotOrderPreserving("fibre partitions are taken of order-preserving maps")
    if not is_surjective(f):
        raise NotSurjective("fibres of a non-surjective map do not cover the carrier")
    return _fibre_partition_unchecked(f)


def is_fibre_coherent(f: PosetMap) -> bool:
    """Images are ordered exactly when the sources are blockwise related over
    the fibres (taken over the image, so surjectivity is not required)."""
    rows = _blockwise_rows(f.dom, f.assignment)
    cod_rows = f.cod.leq.rows
    a = f.assignment
    for i in range(f.dom.n):
        for j in range(f.dom.n):
            if bool(cod_rows[a[i]] >> a[j] & 1) != bool(rows[i] >> j & 1):
                return False
    return True


def _is_open_assignment(dom: Poset, cod: Poset, assignment) -> bool:
    fibre_masks = [0] * cod.n
    for i, v in enumerate(assignment):
        fibre_masks[v] |= 1 << i
    dom_down = dom.down_masks
    cod_down = cod.down_masks
    for u in range(dom.n):
        below_u = dom_down[u]
        for v_img in iter_bits(cod_down[assignment[u]]):
            if not below_u & fibre_masks[v_img]:
                return False
    return True


def is_open_map(f: PosetMap) -> bool:
    """Anything below an image point lifts below its preimage."""
    if not is_order_preserving(f):
        raise NotOrderPreserving("openness is defined for order-preserving maps")
    return _is_open_assignment(f.dom, f.cod, f.assignment)


def kernel_pair(f: PosetMap) -> tuple[Poset, PosetMap, PosetMap]:
    """The poset of equal-image pairs with componentwise order, plus its two
    projections back to the domain."""
    n = f.dom.n
    carrier = [(r1, r2) for r1 in range(n) for r2 in range(n)
               if f.assignment[r1] == f.assignment[r2]]
    labels = tuple(f"({f.dom.labels[r1]},{f.dom.labels[r2]})" for r1, r2 in carrier)
    leq = f.dom.leq
    rows = []
    for r1, r2 in carrier:
        row = 0
        for t, (s1, s2) in enumerate(carrier):
            if leq.has(r1, s1) and leq.has(r2, s2):
                row |= 1 << t
        rows.append(row)
    kernel = poset_from_leq(labels, Relation(len(carrier), tuple(rows)))
    proj1 = PosetMap(kernel, f.dom, tuple(r1 for r1, _ in carrier))
    proj2 = PosetMap(kernel, f.dom, tuple(r2 for _, r2 in carrier))
    return kernel, proj1, proj2


def factorize(f: PosetMap, system: str) -> Factorisation:
    """Factor an order-preserving map through a mid poset.

    regular-epi-mono: project onto the fibres over the image (a fibre-coherent
    surjection), then embed the fibres as their image points.

    epi-regular-mono: corestrict onto the image with the order restricted from
    the codomain (a surjection), then include the image (an order-reflecting
    injection).
    """
    if system not in FACTORISATION_SYSTEMS:
        raise ValueError(f"unknown factorisation system {system!r}")
    if not is_order_preserving(f):
        raise NotOrderPreserving("only order-preserving maps factorise in these systems")

    if system == REGULAR_EPI_MONO:
        support = partition_from_block_of(f.dom, f.assignment)
        if not blocks_are_blockwise_classes(f.dom, support):
            raise InternalInvariantViolation(
                "fibres of an order-preserving map must be blockwise classes")
        order = regular_order(f.dom, support)
        assert order is not None
        labels = tuple("{" + ",".join(f.dom.labels[i] for i in blk) + "}"
                       for blk in support.blocks)
        mid = poset_from_leq(labels, order)
        first = PosetMap(f.dom, mid, support.block_of)
        second = PosetMap(mid, f.cod,
                          tuple(f.assignment[blk[0]] for blk in support.blocks))
    else:
        image = sorted(set(f.assignment))
        position = {q: p for p, q in enumerate(image)}
        rows = []
        for q1 in image:
            row = 0
            for p, q2 in enumerate(image):
                if f.cod.leq.has(q1, q2):
                    row |= 1 << p
            rows.append(row)
        mid = poset_from_leq(tuple(f.cod.labels[q] for q in image),
                             Relation(len(image), tuple(rows)))
        first = PosetMap(f.dom, mid, tuple(position[v] for v in f.assignment))
        second = PosetMap(mid, f.cod, tuple(image))

    assert compose(second, first) == f
    return Factorisation(system, mid, first, second)


def order_preserving_assignments(dom: Poset, cod: Poset, *,
                                 surjective: bool = False) -> Iterator[tuple[int, ...]]:
    """All order-preserving assignments dom -> cod, by backtracking.

    Prunes on partial order violations and (optionally) on surjectivity
    becoming unreachable.  Yields plain index tuples.
    """
    n, k = dom.n, cod.n
    if surjective and k > n:
        return
    cod_rows = cod.leq.rows
    below = [[j for j in iter_bits(dom.down_masks[i] & ((1 << i) - 1))] for i in range(n)]
    above = [[j for j in iter_bits(dom.leq.rows[i] & ((1 << i) - 1))] for i in range(n)]
    assign = [0] * n

    def rec(i: int, used: int, used_count: int) -> Iterator[tuple[int, ...]]:
        if i == n:
            if not surjective or used_count == k:
                yield tuple(assign)
            return
        if surjective and k - used_count > n - i:
            return
        for v in range(k):
            ok = True
            for j in below[i]:
                if not cod_rows[assign[j]] >> v & 1:
                    ok = False
                    break
            if ok:
                for j in above[i]:
                    if not cod_rows[v] >> assign[j] & 1:
                        ok = False
                        break
            if ok:
                assign[i] = v
                bit = 1 << v
                yield from rec(i + 1, used | bit,
                               used_count + (0 if used & bit else 1))

    yield from rec(0, 0, 0)


def regular_epi_oracle(f: PosetMap, codomain_bound: int) -> str:
    """Search for a universal-property counterexample to f being a regular epi.

    Builds the kernel pair, then tries every poset with at most
    codomain_bound elements and every order-preserving map from the domain
    that coequalizes the two projections; f fails when some such map does not
    factor through it by a unique order-preserving comparison map.  Returns
    COUNTEREXAMPLE_FOUND or NO_COUNTEREXAMPLE.
    """
    if codomain_bound > ORACLE_CODOMAIN_CAP:
        raise BoundExceeded(
            f"oracle codomain bound {codomain_bound} exceeds cap {ORACLE_CODOMAIN_CAP}")
    if not is_order_preserving(f):
        raise NotOrderPreserving("the oracle applies to order-preserving surjections")
    if not is_surjective(f):
        raise NotSurjective("the oracle applies to surjections")

    kernel, proj1, proj2 = kernel_pair(f)
    kernel_legs = list(zip(proj1.assignment, proj2.assignment))
    for size in range(1, codomain_bound + 1):
        for target in all_posets(size):
            target_rows = target.leq.rows
            for e_prime in order_preserving_assignments(f.dom, target):
                if any(e_prime[x] != e_prime[y] for x, y in kernel_legs):
                    continue
                # f is surjective, so at most one comparison map exists as a
                # function; it fails exactly when it is not order-preserving.
                comparison = [0] * f.cod.n
                for x, q in enumerate(f.assignment):
                    comparison[q] = e_prime[x]
                ok = all(target_rows[comparison[q1]] >> comparison[q2] & 1
                         for q1, q2 in f.cod.strict_pairs)
                if not ok:
                    return COUNTEREXAMPLE_FOUND
    return NO_COUNTEREXAMPLE
