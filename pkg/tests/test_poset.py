import pytest
from hypothesis import given, strategies as st

from posetpart.errors import (BoundExceeded, CycleDetected, DuplicateLabel,
                              UnknownLabel, ZeroSize)
from posetpart.poset import (Relation, all_posets, generate, is_partial_order,
                             make_poset, transitive_closure,
                             transitive_extensions, up_down_set)

from oracles import all_posets_bruteforce


@st.composite
def posets(draw, max_n=6):
    """Random posets built from an acyclic pair set (i < j positions only)."""
    n = draw(st.integers(min_value=1, max_value=max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), max_size=len(pairs))) if pairs else []
    labels = [f"e{i}" for i in range(n)]
    return make_poset(labels, [(labels[i], labels[j]) for i, j in chosen])


class TestMakePoset:
    def test_two_element_chain(self):
        p = make_poset(["a", "b"], [("a", "b")])
        assert p.leq.has(0, 1) and not p.leq.has(1, 0)
        assert p.cover.pairs() == [(0, 1)]

    def test_v_closure_adds_only_reflexive_pairs(self):
        p = make_poset(["a", "b", "c"], [("a", "c"), ("b", "c")])
        assert sorted(p.leq.pairs()) == [(0, 0), (0, 2), (1, 1), (1, 2), (2, 2)]

    def test_cycle_rejected(self):
        with pytest.raises(CycleDetected):
            make_poset(["a", "b"], [("a", "b"), ("b", "a")])

    def test_duplicate_label(self):
        with pytest.raises(DuplicateLabel):
            make_poset(["a", "a"], [])

    def test_unknown_label_in_cover(self):
        with pytest.raises(UnknownLabel):
            make_poset(["a"], [("a", "b")])

    def test_redundant_full_order_pairs_tolerated(self):
        via_covers = make_poset(["a", "b", "c"], [("a", "b"), ("b", "c")])
        via_order = make_poset(["a", "b", "c"],
                               [("a", "b"), ("b", "c"), ("a", "c"), ("a", "a")])
        assert via_covers == via_order

    def test_whitespace_label_rejected(self):
        with pytest.raises(ValueError):
            make_poset(["a b"], [])

    def test_carrier_order_is_input_order(self):
        p = make_poset(["z", "m", "a"], [])
        assert p.labels == ("z", "m", "a")
        assert p.index("m") == 1


class TestGenerate:
    def test_chain_three(self):
        p = generate("chain", 3)
        assert p.labels == ("e0", "e1", "e2")
        assert p.cover.pairs() == [(0, 1), (1, 2)]

    def test_antichain_two_is_diagonal(self):
        p = generate("antichain", 2)
        assert p.leq == Relation.diagonal(2)

    def test_single_point_chain_equals_antichain(self):
        assert generate("chain", 1) == generate("antichain", 1)

    def test_zero_size(self):
        with pytest.raises(ZeroSize):
            generate("chain", 0)

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            generate("zigzag", 2)

    @pytest.mark.parametrize("n", [1, 2, 5])
    def test_cover_counts(self, n):
        assert len(generate("chain", n).cover.pairs()) == n - 1
        assert len(generate("antichain", n).cover.pairs()) == 0


class TestTransitiveClosure:
    def test_adds_composite_pair(self):
        r = Relation.from_pairs(3, [(0, 1), (1, 2)])
        assert transitive_closure(r).has(0, 2)

    def test_idempotent(self):
        r = Relation.from_pairs(3, [(0, 1), (1, 2)])
        once = transitive_closure(r)
        assert transitive_closure(once) == once

    def test_cycle_closes_onto_diagonal(self):
        r = Relation.from_pairs(2, [(0, 1), (1, 0)])
        closed = transitive_closure(r)
        assert closed.has(0, 0) and closed.has(1, 1)


class TestPredicates:
    def test_diagonal_is_partial_order(self):
        assert is_partial_order(Relation.diagonal(3))

    def test_mutual_pair_breaks_antisymmetry(self):
        r = Relation.from_pairs(2, [(0, 1), (1, 0)], reflexive=True)
        assert not is_partial_order(r)

    @given(posets())
    def test_constructed_leq_is_partial_order(self, p):
        assert is_partial_order(p.leq)
        assert transitive_closure(p.leq) == p.leq


class TestUpDownSet:
    def test_v_up_a(self, v_poset):
        assert up_down_set(v_poset, {0}, "up") == {0, 2}

    def test_v_down_c(self, v_poset):
        assert up_down_set(v_poset, {2}, "down") == {0, 1, 2}

    def test_chain_up_middle(self):
        p = generate("chain", 3)
        assert up_down_set(p, {1}, "up") == {1, 2}

    def test_empty_set(self, v_poset):
        assert up_down_set(v_poset, set(), "up") == frozenset()

    def test_bad_direction(self, v_poset):
        with pytest.raises(ValueError):
            up_down_set(v_poset, {0}, "sideways")

    @given(posets(), st.data())
    def test_monotone_and_idempotent(self, p, data):
        small = data.draw(st.sets(st.integers(0, p.n - 1)))
        big = small | data.draw(st.sets(st.integers(0, p.n - 1)))
        up_small = up_down_set(p, small, "up")
        assert small <= up_small
        assert up_small <= up_down_set(p, big, "up")
        assert up_down_set(p, up_small, "up") == up_small


class TestCover:
    @given(posets())
    def test_reclosing_cover_recovers_leq(self, p):
        regrown = transitive_closure(
            p.cover.union(Relation.diagonal(p.n)))
        assert regrown == p.leq

    @given(posets())
    def test_cover_has_no_two_step_pair(self, p):
        strict = [p.leq.rows[i] & ~(1 << i) for i in range(p.n)]
        for i, j in p.cover.pairs():
            assert not any(strict[k] >> j & 1
                           for k in range(p.n) if strict[i] >> k & 1)


class TestExtensionEnumeration:
    @pytest.mark.parametrize("n,expected", [(1, 1), (2, 3), (3, 19), (4, 219)])
    def test_all_posets_counts(self, n, expected):
        assert len(all_posets(n)) == expected

    def test_all_posets_matches_bruteforce(self):
        for n in range(1, 4):
            assert sorted(p.leq.rows for p in all_posets(n)) == \
                sorted(all_posets_bruteforce(n))

    def test_lexicographic_matrix_order(self):
        seen = [rel.rows for rel in
                transitive_extensions(Relation.diagonal(3))]

        def flat(rows):
            return tuple((rows[i] >> j) & 1 for i in range(3) for j in range(3))

        assert seen == sorted(seen, key=flat)
        assert len(seen) == len(set(seen)) == 29

    def test_base_relation_comes_first(self, c2):
        first = next(transitive_extensions(c2.leq))
        assert first == c2.leq

    def test_antisymmetric_mode_skips_impossible_base(self):
        mutual = Relation.from_pairs(2, [(0, 1), (1, 0)], reflexive=True)
        assert list(transitive_extensions(mutual, antisymmetric=True)) == []
