from __future__ import annotations

import itertools
import random

import pytest
from inline_snapshot import snapshot

from cayley_cli.algebra.classify import classify
from cayley_cli.algebra.closure import closure, is_member
from cayley_cli.exception import GraphTooSmall, MalformedInput, VertexOutOfRange
from cayley_cli.reductions import (
    Digraph,
    element_labels,
    format_graph,
    nilpotent_semigroup,
    parse_graph,
    random_digraph,
    reachable,
    reduce_stconn,
    reduce_stconn_nilpotent,
    reduce_stconn_zero_simple,
    zero_simple_semigroup,
)

PATH = Digraph(3, frozenset({(0, 1), (1, 2)}))


def test_zero_simple_semigroup():
    s = zero_simple_semigroup(2)
    assert s.order == 5
    # (0,1)(1,0) = (0,0); (0,1)(0,1) = 0
    assert s.mul(1, 2) == 0
    assert s.mul(1, 1) == 4
    c = classify(s)
    assert c.zero_simple
    assert c.zero_element == 4


@pytest.mark.parametrize("n", [2, 3, 4])
def test_nilpotent_semigroup(n: int):
    s = nilpotent_semigroup(n)
    assert s.order == n * n * (n - 1) + 1
    c = classify(s)
    assert c.nilpotent
    assert c.zero_element == n * n * (n - 1)


def test_nilpotent_semigroup_products():
    s = nilpotent_semigroup(3)
    # (v, i, w) is encoded as (v * 2 + i - 1) * 3 + w
    assert s.mul((0 * 2 + 0) * 3 + 1, (1 * 2 + 0) * 3 + 2) == (0 * 2 + 1) * 3 + 2
    # layers add up to n and vanish
    assert s.mul((0 * 2 + 1) * 3 + 1, (1 * 2 + 0) * 3 + 1) == 18


def test_nilpotent_semigroup_needs_two_vertices():
    with pytest.raises(GraphTooSmall):
        nilpotent_semigroup(1)
    with pytest.raises(GraphTooSmall):
        reduce_stconn_nilpotent(Digraph(1, frozenset()), 0, 0)


def test_zero_simple_reduction_on_a_path():
    assert is_member(reduce_stconn_zero_simple(PATH, 0, 2))[0]
    assert not is_member(reduce_stconn_zero_simple(PATH, 2, 0))[0]
    for v in range(3):
        assert is_member(reduce_stconn_zero_simple(PATH, v, v))[0]


def test_nilpotent_reduction_on_a_path():
    instance = reduce_stconn_nilpotent(PATH, 0, 2)
    assert instance.target == (0 * 2 + 1) * 3 + 2
    assert is_member(instance)[0]
    for v in range(3):
        assert is_member(reduce_stconn_nilpotent(PATH, v, v))[0]


def test_nilpotent_reduction_without_edges():
    g = Digraph(2, frozenset())
    assert not is_member(reduce_stconn_nilpotent(g, 0, 1))[0]


def test_reduction_checks_vertices():
    with pytest.raises(VertexOutOfRange) as exc_info:
        reduce_stconn_zero_simple(PATH, 0, 5)
    assert str(exc_info.value) == snapshot("Vertex 5 is outside 0..2")
    with pytest.raises(VertexOutOfRange):
        Digraph(2, frozenset({(0, 2)}))
    with pytest.raises(MalformedInput):
        Digraph(0, frozenset())


def test_reachable():
    assert reachable(PATH, 0, 2)
    assert not reachable(PATH, 2, 0)
    assert reachable(PATH, 2, 2)


def test_random_digraph_is_seeded():
    first = random_digraph(random.Random(3), 6)
    second = random_digraph(random.Random(3), 6)
    assert first == second
    assert first.vertex_count == 6
    assert all(u != v for u, v in first.edges)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_reductions_agree_with_reachability(n: int):
    rng = random.Random(n)
    for _ in range(10):
        g = random_digraph(rng, n)
        for kind in ("zero-simple", "nilpotent"):
            members = None
            for s, t in itertools.product(range(n), repeat=2):
                instance = reduce_stconn(kind, g, s, t)
                if members is None:
                    members, _ = closure(instance.semigroup, instance.generators)
                assert (instance.target in members) == reachable(g, s, t)


def test_element_labels():
    assert element_labels("zero-simple", 2) == snapshot(
        """\
0 -> (0,0)
1 -> (0,1)
2 -> (1,0)
3 -> (1,1)
4 -> 0
"""
    )
    assert element_labels("nilpotent", 2) == snapshot(
        """\
0 -> (0,1,0)
1 -> (0,1,1)
2 -> (1,1,0)
3 -> (1,1,1)
4 -> 0
"""
    )


def test_parse_and_format_graph():
    text = "3 2\n0 1\n1 2\n"
    assert parse_graph(text) == PATH
    assert format_graph(PATH) == text
    assert parse_graph("# path\n3 2\n0 1 # first\n1 2\n") == PATH


def test_parse_graph_errors():
    with pytest.raises(MalformedInput):
        parse_graph("")
    with pytest.raises(MalformedInput) as exc_info:
        parse_graph("3 3\n0 1\n1 2\n")
    assert str(exc_info.value) == snapshot("header declares 3 edges, found 2")
    with pytest.raises(MalformedInput):
        parse_graph("3 1\n0 1 2\n")
    with pytest.raises(VertexOutOfRange):
        parse_graph("2 1\n0 2\n")
