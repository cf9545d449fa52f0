"""Line-oriented text formats for posets, partitions, and maps, plus DOT export.

Grammar (one directive per line, '#' starts a comment):

    poset <name>                      partition of <poset>
    elements <label>...               block <B> = <label>...
    cover <x> <y>                     order <B> <= <C>

    map <name> : <P> -> <Q>
    send <x> <y>

Labels are whitespace-free tokens.  Elements must be declared before they are
used, so every diagnostic points at the first offending line.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .errors import (CycleDetected, DuplicateLabel, EmptyBlock, IncompleteCover,
                     MissingAssignment, OverlappingBlocks, ParseError,
                     UnknownBlockName, UnknownLabel)
from .partition import SetPartition, partition_from_block_of
from .maps import PosetMap
from .poset import Poset, Relation, make_poset, transitive_closure


@dataclass(frozen=True)
class PosetDocument:
    name: str
    labels: tuple[str, ...]
    covers: tuple[tuple[str, str], ...]

    def build(self) -> Poset:
        return make_poset(self.labels, self.covers)


@dataclass(frozen=True)
class PartitionDocument:
    poset_name: str
    block_names: tuple[str, ...]  # aligned with support.blocks
    support: SetPartition
    block_order: Relation | None


@dataclass(frozen=True)
class MapDocument:
    name: str
    dom_name: str
    cod_name: str
    map: PosetMap


def _fail(exc_type, line: int, message: str):
    err = exc_type(message)
    err.line = line
    raise err


def _directives(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        stripped = raw.split("#", 1)[0].strip()
        if stripped:
            yield lineno, stripped.split()


def parse_poset(text: str) -> PosetDocument:
    """Parse one poset document; raises on the first offending line."""
    name = None
    labels: list[str] = []
    index: dict[str, int] = {}
    covers: list[tuple[str, str]] = []
    rows: list[int] = []  # running reflexive-transitive closure
    for lineno, tokens in _directives(text):
        keyword = tokens[0]
        if keyword == "poset":
            if len(tokens) != 2:
                raise ParseError(lineno, "expected: poset <name>")
            if name is not None:
                raise ParseError(lineno, "duplicate poset header")
            name = tokens[1]
        elif keyword == "elements":
            if name is None:
                raise ParseError(lineno, "poset header must come first")
            if len(tokens) < 2:
                raise ParseError(lineno, "expected: elements <label>...")
            for lab in tokens[1:]:
                if lab in index:
                    _fail(DuplicateLabel, lineno, f"duplicate label {lab!r}")
                index[lab] = len(labels)
                labels.append(lab)
                rows.append(1 << (len(labels) - 1))
        elif keyword == "cover":
            if name is None:
                raise ParseError(lineno, "poset header must come first")
            if len(tokens) != 3:
                raise ParseError(lineno, "expected: cover <x> <y>")
            for lab in tokens[1:]:
                if lab not in index:
                    _fail(UnknownLabel, lineno, f"no element labeled {lab!r}")
            x, y = index[tokens[1]], index[tokens[2]]
            if x != y and rows[y] >> x & 1:
                _fail(CycleDetected, lineno,
                      f"cover {tokens[1]} {tokens[2]} closes a cycle")
            padded = [row | (1 << i) for i, row in enumerate(rows)]
            padded[x] |= 1 << y
            rows = list(transitive_closure(Relation(len(labels), tuple(padded))).rows)
            if not Relation(len(labels), tuple(rows)).is_antisymmetric():
                _fail(CycleDetected, lineno,
                      f"cover {tokens[1]} {tokens[2]} closes a cycle")
            covers.append((tokens[1], tokens[2]))
        else:
            raise ParseError(lineno, f"unknown directive {keyword!r}")
    if name is None:
        raise ParseError(1, "missing poset header")
    return PosetDocument(name, tuple(labels), tuple(covers))


def partition_target_name(text: str) -> str | None:
    """The poset name a partition document targets, or None without a header."""
    for _, tokens in _directives(text):
        if tokens[0] == "partition" and len(tokens) == 3 and tokens[1] == "of":
            return tokens[2]
    return None


def parse_partition(text: str, poset: Poset) -> PartitionDocument:
    """Parse a partition document against an already-built poset."""
    poset_name = None
    header_line = 1
    declared: list[tuple[str, list[int]]] = []
    names_seen: dict[str, int] = {}
    block_of = [-1] * poset.n
    order_pairs: list[tuple[int, int, int]] = []  # declared indices + line
    for lineno, tokens in _directives(text):
        keyword = tokens[0]
        if keyword == "partition":
            if len(tokens) != 3 or tokens[1] != "of":
                raise ParseError(lineno, "expected: partition of <poset>")
            if poset_name is not None:
                raise ParseError(lineno, "duplicate partition header")
            poset_name = tokens[2]
            header_line = lineno
        elif keyword == "block":
            if poset_name is None:
                raise ParseError(lineno, "partition header must come first")
            if len(tokens) < 3 or tokens[2] != "=":
                raise ParseError(lineno, "expected: block <B> = <label>...")
            bname = tokens[1]
            if bname in names_seen:
                raise ParseError(lineno, f"duplicate block name {bname!r}")
            members_tokens = tokens[3:]
            if not members_tokens:
                _fail(EmptyBlock, lineno, f"block {bname!r} has no members")
            members = []
            for lab in members_tokens:
                try:
                    i = poset.index(lab)
                except UnknownLabel:
                    _fail(UnknownLabel, lineno, f"no element labeled {lab!r}")
                if block_of[i] >= 0:
                    _fail(OverlappingBlocks, lineno,
                          f"element {lab!r} appears in more than one block")
                block_of[i] = len(declared)
                members.append(i)
            names_seen[bname] = len(declared)
            declared.append((bname, members))
        elif keyword == "order":
            if poset_name is None:
                raise ParseError(lineno, "partition header must come first")
            if len(tokens) != 4 or tokens[2] != "<=":
                raise ParseError(lineno, "expected: order <B> <= <C>")
            for bname in (tokens[1], tokens[3]):
                if bname not in names_seen:
                    _fail(UnknownBlockName, lineno, f"no block named {bname!r}")
            order_pairs.append((names_seen[tokens[1]], names_seen[tokens[3]], lineno))
        else:
            raise ParseError(lineno, f"unknown directive {keyword!r}")
    if poset_name is None:
        raise ParseError(1, "missing partition header")
    missing = [poset.labels[i] for i, b in enumerate(block_of) if b < 0]
    if missing:
        _fail(IncompleteCover, header_line, f"blocks do not cover: {' '.join(missing)}")

    support = partition_from_block_of(poset, block_of)
    # canonical position of each declared block: where its first member went
    canonical = [support.block_of[members[0]] for _, members in declared]
    names = [""] * support.k
    for (bname, _), pos in zip(declared, canonical):
        names[pos] = bname

    order = None
    if order_pairs:
        rows = [1 << b for b in range(support.k)]
        for b_declared, c_declared, lineno in order_pairs:
            b, c = canonical[b_declared], canonical[c_declared]
            if b != c and rows[c] >> b & 1:
                _fail(CycleDetected, lineno, "order pairs close a cycle between blocks")
            rows[b] |= 1 << c
            rows = list(transitive_closure(Relation(support.k, tuple(rows))).rows)
            if not Relation(support.k, tuple(rows)).is_antisymmetric():
                _fail(CycleDetected, lineno, "order pairs close a cycle between blocks")
        order = Relation(support.k, tuple(rows))
    return PartitionDocument(poset_name, tuple(names), support, order)


def parse_map(text: str, posets: Mapping[str, Poset]) -> MapDocument:
    """Parse a map document, resolving poset names against loaded posets."""
    name = dom_name = cod_name = None
    dom = cod = None
    assignment: dict[int, int] = {}
    header_line = 1
    for lineno, tokens in _directives(text):
        keyword = tokens[0]
        if keyword == "map":
            if len(tokens) != 6 or tokens[2] != ":" or tokens[4] != "->":
                raise ParseError(lineno, "expected: map <name> : <P> -> <Q>")
            if name is not None:
                raise ParseError(lineno, "duplicate map header")
            name, dom_name, cod_name = tokens[1], tokens[3], tokens[5]
            header_line = lineno
            for pname in (dom_name, cod_name):
                if pname not in posets:
                    raise ParseError(lineno,
                                     f"unknown poset {pname!r}; load it with --poset")
            dom, cod = posets[dom_name], posets[cod_name]
        elif keyword == "send":
            if name is None:
                raise ParseError(lineno, "map header must come first")
            if len(tokens) != 3:
                raise ParseError(lineno, "expected: send <x> <y>")
            try:
                x = dom.index(tokens[1])
            except UnknownLabel:
                _fail(UnknownLabel, lineno, f"no domain element labeled {tokens[1]!r}")
            try:
                y = cod.index(tokens[2])
            except UnknownLabel:
                _fail(UnknownLabel, lineno, f"no codomain element labeled {tokens[2]!r}")
            if x in assignment:
                raise ParseError(lineno, f"duplicate assignment for {tokens[1]!r}")
            assignment[x] = y
        else:
            raise ParseError(lineno, f"unknown directive {keyword!r}")
    if name is None:
        raise ParseError(1, "missing map header")
    missing = [dom.labels[i] for i in range(dom.n) if i not in assignment]
    if missing:
        _fail(MissingAssignment, header_line,
              f"domain elements without image: {' '.join(missing)}")
    return MapDocument(name, dom_name, cod_name,
                       PosetMap(dom, cod, tuple(assignment[i] for i in range(dom.n))))


def serialize_poset(poset: Poset, name: str) -> str:
    """Text form that parse_poset maps back to an equal poset."""
    lines = [f"poset {name}"]
    if poset.labels:
        lines.append("elements " + " ".join(poset.labels))
    for i, j in poset.cover.pairs():
        lines.append(f"cover {poset.labels[i]} {poset.labels[j]}")
    return "\n".join(lines) + "\n"


def poset_dot(poset: Poset, name: str) -> str:
    """DOT digraph of the covering relation only, drawn bottom to top."""
    lines = [f'digraph "{name}" {{', "  rankdir=BT;"]
    for lab in poset.labels:
        lines.append(f'  "{lab}";')
    for i, j in poset.cover.pairs():
        lines.append(f'  "{poset.labels[i]}" -> "{poset.labels[j]}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
