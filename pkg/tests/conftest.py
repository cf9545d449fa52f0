import pytest

from posetpart.poset import make_poset


@pytest.fixture
def c2():
    return make_poset(["a", "b"], [("a", "b")])


@pytest.fixture
def c3():
    return make_poset(["a", "b", "c"], [("a", "b"), ("b", "c")])


@pytest.fixture
def a2():
    return make_poset(["a", "b"], [])


@pytest.fixture
def a3():
    return make_poset(["a", "b", "c"], [])


@pytest.fixture
def v_poset():
    """Two minimal elements below one top; separates the three notions."""
    return make_poset(["a", "b", "c"], [("a", "c"), ("b", "c")])


@pytest.fixture
def c1():
    return make_poset(["x"], [])
