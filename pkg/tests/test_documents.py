import pytest
from hypothesis import given, strategies as st

from posetpart.documents import (parse_map, parse_partition, parse_poset,
                                 poset_dot, serialize_poset)
from posetpart.errors import (CycleDetected, DuplicateLabel, EmptyBlock,
                              IncompleteCover, MissingAssignment,
                              OverlappingBlocks, ParseError, PosetError,
                              UnknownBlockName, UnknownLabel)
from posetpart.poset import make_poset

V_TEXT = "poset V\nelements a b c\ncover a c\ncover b c\n"


class TestParsePoset:
    def test_v_fixture(self, v_poset):
        doc = parse_poset(V_TEXT)
        assert doc.name == "V"
        assert doc.build() == v_poset

    def test_comments_and_blank_lines(self):
        text = "# header comment\n\nposet X # trailing\nelements a\n"
        assert parse_poset(text).labels == ("a",)

    def test_unknown_label_at_line(self):
        with pytest.raises(UnknownLabel) as info:
            parse_poset("poset X\nelements a\ncover a b\n")
        assert info.value.line == 3

    def test_cycle_at_line(self):
        with pytest.raises(CycleDetected) as info:
            parse_poset("poset L\nelements a b\ncover a b\ncover b a\n")
        assert info.value.line == 4

    def test_indirect_cycle(self):
        text = "poset L\nelements a b c\ncover a b\ncover b c\ncover c a\n"
        with pytest.raises(CycleDetected) as info:
            parse_poset(text)
        assert info.value.line == 5

    def test_duplicate_label_at_line(self):
        with pytest.raises(DuplicateLabel) as info:
            parse_poset("poset X\nelements a\nelements a\n")
        assert info.value.line == 3

    def test_missing_header(self):
        with pytest.raises(ParseError):
            parse_poset("elements a b\n")

    def test_unknown_directive(self):
        with pytest.raises(ParseError) as info:
            parse_poset("poset X\nelementz a\n")
        assert info.value.line == 2

    def test_duplicate_header(self):
        with pytest.raises(ParseError):
            parse_poset("poset X\nposet Y\n")


class TestParsePartition:
    def test_with_order(self, v_poset):
        text = "partition of V\nblock B1 = a c\nblock B2 = b\norder B2 <= B1\n"
        doc = parse_partition(text, v_poset)
        assert doc.poset_name == "V"
        assert doc.support.blocks == ((0, 2), (1,))
        assert doc.block_names == ("B1", "B2")
        assert doc.block_order is not None
        assert doc.block_order.has(1, 0) and not doc.block_order.has(0, 1)

    def test_support_only(self, v_poset):
        doc = parse_partition("partition of V\nblock B1 = a c\nblock B2 = b\n", v_poset)
        assert doc.block_order is None

    def test_names_follow_canonical_positions(self, v_poset):
        # declaring the b-block first must not displace the names
        text = "partition of V\nblock X = b\nblock Y = a c\n"
        doc = parse_partition(text, v_poset)
        assert doc.support.blocks == ((0, 2), (1,))
        assert doc.block_names == ("Y", "X")

    def test_overlap(self, c2):
        text = "partition of C2\nblock B1 = a\nblock B2 = a b\n"
        with pytest.raises(OverlappingBlocks) as info:
            parse_partition(text, c2)
        assert info.value.line == 3

    def test_incomplete(self, c2):
        with pytest.raises(IncompleteCover):
            parse_partition("partition of C2\nblock B1 = a\n", c2)

    def test_empty_block(self, c2):
        with pytest.raises(EmptyBlock):
            parse_partition("partition of C2\nblock B1 =\n", c2)

    def test_unknown_block_name(self, c2):
        text = "partition of C2\nblock B1 = a b\norder B1 <= B9\n"
        with pytest.raises(UnknownBlockName) as info:
            parse_partition(text, c2)
        assert info.value.line == 3

    def test_order_cycle(self, a2):
        text = ("partition of A2\nblock B1 = a\nblock B2 = b\n"
                "order B1 <= B2\norder B2 <= B1\n")
        with pytest.raises(CycleDetected) as info:
            parse_partition(text, a2)
        assert info.value.line == 5

    def test_unknown_element(self, c2):
        with pytest.raises(UnknownLabel):
            parse_partition("partition of C2\nblock B1 = a z\n", c2)


class TestParseMap:
    def test_valid(self, v_poset):
        q = make_poset(["x", "y"], [("x", "y")])
        doc = parse_map("map f : V -> Q\nsend a x\nsend b x\nsend c y\n",
                        {"V": v_poset, "Q": q})
        assert doc.map.assignment == (0, 0, 1)

    def test_unknown_poset(self, v_poset):
        with pytest.raises(ParseError):
            parse_map("map f : V -> Zzz\nsend a x\n", {"V": v_poset})

    def test_missing_assignment(self, v_poset, c2):
        text = "map f : V -> C2\nsend a a\n"
        with pytest.raises(MissingAssignment):
            parse_map(text, {"V": v_poset, "C2": c2})

    def test_duplicate_send(self, c2):
        text = "map f : C2 -> C2\nsend a a\nsend a b\nsend b b\n"
        with pytest.raises(ParseError) as info:
            parse_map(text, {"C2": c2})
        assert info.value.line == 3

    def test_unknown_element(self, c2):
        with pytest.raises(UnknownLabel):
            parse_map("map f : C2 -> C2\nsend a zzz\n", {"C2": c2})


class TestSerialize:
    def test_round_trip_v(self, v_poset):
        text = serialize_poset(v_poset, "V")
        doc = parse_poset(text)
        rebuilt = doc.build()
        assert rebuilt.labels == v_poset.labels
        assert rebuilt.leq == v_poset.leq

    @given(st.integers(1, 5), st.data())
    def test_round_trip_random(self, n, data):
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
        chosen = data.draw(st.lists(st.sampled_from(pairs),
                                    max_size=len(pairs))) if pairs else []
        labels = [f"e{i}" for i in range(n)]
        poset = make_poset(labels, [(labels[i], labels[j]) for i, j in chosen])
        rebuilt = parse_poset(serialize_poset(poset, "P")).build()
        assert rebuilt.labels == poset.labels and rebuilt.leq == poset.leq


class TestDot:
    def test_v_digraph(self, v_poset):
        out = poset_dot(v_poset, "V")
        assert out.splitlines() == [
            'digraph "V" {',
            "  rankdir=BT;",
            '  "a";',
            '  "b";',
            '  "c";',
            '  "a" -> "c";',
            '  "b" -> "c";',
            "}",
        ]

    def test_edges_are_covers_only(self, c3):
        out = poset_dot(c3, "C3")
        assert '"a" -> "b"' in out and '"b" -> "c"' in out
        assert '"a" -> "c"' not in out  # no transitive edge

    def test_isolated_nodes_present(self, a2):
        out = poset_dot(a2, "A2")
        assert '"a";' in out and '"b";' in out and "->" not in out


class TestParserRobustness:
    NASTY = [
        "",
        "\n\n\n",
        "# only a comment",
        "poset",
        "poset X Y Z",
        "cover a b",
        "block B = a",
        "\x00\x01\x02",
        "poset X\nelements é ß\ncover é ß",
        "e" * 10000,
        "poset X\nelements a\ncover a a",
    ]

    @pytest.mark.parametrize("text", NASTY)
    def test_poset_parser_never_crashes(self, text):
        try:
            parse_poset(text)
        except PosetError:
            pass

    @pytest.mark.parametrize("text", NASTY)
    def test_partition_parser_never_crashes(self, text, v_poset):
        try:
            parse_partition(text, v_poset)
        except PosetError:
            pass
