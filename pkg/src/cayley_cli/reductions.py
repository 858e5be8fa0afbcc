"""
Membership instances from directed graph reachability.

Both semigroups depend only on the number of vertices; the graph selects the generators.
The zero-simple semigroup has the elements (v, w), encoded as `v * n + w`, and a zero `n**2`.
The nilpotent semigroup has the elements (v, i, w) with `1 <= i < n`, encoded as
`(v * (n - 1) + i - 1) * n + w`, and a zero `n**2 * (n - 1)`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cache
from typing import Literal

import networkx as nx
import numpy as np

from cayley_cli.algebra.semigroup import MembershipInstance, Semigroup
from cayley_cli.exception import GraphTooSmall, MalformedInput, VertexOutOfRange

type ReductionKind = Literal["zero-simple", "nilpotent"]


@dataclass(frozen=True, slots=True)
class Digraph:
    """A directed graph on the vertices `0..n-1`; self-loops are allowed."""

    vertex_count: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        if self.vertex_count < 1:
            raise MalformedInput(f"graph needs at least one vertex, got {self.vertex_count}")
        for edge in sorted(self.edges):
            for vertex in edge:
                self.check_vertex(vertex)

    def check_vertex(self, vertex: int) -> None:
        if not 0 <= vertex < self.vertex_count:
            raise VertexOutOfRange(vertex, self.vertex_count)

    def to_networkx(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(range(self.vertex_count))
        graph.add_edges_from(self.edges)
        return graph


def reachable(g: Digraph, s: int, t: int) -> bool:
    """Whether t can be reached from s; every vertex reaches itself."""
    g.check_vertex(s)
    g.check_vertex(t)
    return s == t or nx.has_path(g.to_networkx(), s, t)


def random_digraph(rng: random.Random, n: int, p: float = 0.3) -> Digraph:
    """A seeded G(n, p) digraph without self-loops."""
    graph = nx.gnp_random_graph(n, p, seed=rng.randrange(2**32), directed=True)
    return Digraph(n, frozenset((int(u), int(v)) for u, v in graph.edges))


@cache
def zero_simple_semigroup(n: int) -> Semigroup:
    """(v, w)(x, y) = (v, y) if w == x, else 0; order `n**2 + 1`."""
    zero = n * n
    idx = np.arange(n * n)
    v, w = idx // n, idx % n
    table = np.full((zero + 1, zero + 1), zero, dtype=np.int64)
    table[:zero, :zero] = np.where(
        w[:, None] == v[None, :], v[:, None] * n + w[None, :], zero
    )
    return Semigroup(table)


@cache
def nilpotent_semigroup(n: int) -> Semigroup:
    """
    (v, i, w)(x, j, y) = (v, i + j, y) if w == x and i + j < n, else 0; order
    `n**2 * (n - 1) + 1`.

    Raises:
        GraphTooSmall: If n < 2.
    """
    if n < 2:
        raise GraphTooSmall(n)
    zero = n * n * (n - 1)
    idx = np.arange(zero)
    v, rest = idx // (n * (n - 1)), idx % (n * (n - 1))
    i, w = rest // n + 1, rest % n
    total = i[:, None] + i[None, :]
    table = np.full((zero + 1, zero + 1), zero, dtype=np.int64)
    table[:zero, :zero] = np.where(
        (w[:, None] == v[None, :]) & (total < n),
        (v[:, None] * (n - 1) + total - 1) * n + w[None, :],
        zero,
    )
    return Semigroup(table)


def _pair(n: int, v: int, w: int) -> int:
    return v * n + w


def _triple(n: int, v: int, i: int, w: int) -> int:
    return (v * (n - 1) + i - 1) * n + w


def reduce_stconn_zero_simple(g: Digraph, s: int, t: int) -> MembershipInstance:
    """
    t is reachable from s iff (s, t) is generated by the edges and the diagonal.

    Raises:
        VertexOutOfRange: If s or t is not a vertex.
    """
    g.check_vertex(s)
    g.check_vertex(t)
    n = g.vertex_count
    generators = {_pair(n, v, w) for v, w in g.edges} | {_pair(n, v, v) for v in range(n)}
    return MembershipInstance(zero_simple_semigroup(n), frozenset(generators), _pair(n, s, t))


def reduce_stconn_nilpotent(g: Digraph, s: int, t: int) -> MembershipInstance:
    """
    t is reachable from s iff (s, n - 1, t) is generated by the layer-1 edges and loops.

    Raises:
        VertexOutOfRange: If s or t is not a vertex.
        GraphTooSmall: If the graph has a single vertex.
    """
    g.check_vertex(s)
    g.check_vertex(t)
    n = g.vertex_count
    if n < 2:
        raise GraphTooSmall(n)
    generators = {_triple(n, v, 1, w) for v, w in g.edges} | {
        _triple(n, v, 1, v) for v in range(n)
    }
    return MembershipInstance(
        nilpotent_semigroup(n), frozenset(generators), _triple(n, s, n - 1, t)
    )


def reduce_stconn(kind: ReductionKind, g: Digraph, s: int, t: int) -> MembershipInstance:
    match kind:
        case "zero-simple":
            return reduce_stconn_zero_simple(g, s, t)
        case "nilpotent":
            return reduce_stconn_nilpotent(g, s, t)


def element_labels(kind: ReductionKind, n: int) -> str:
    """Sidecar text mapping every element index to its pair or triple, in index order."""
    lines: list[str] = []
    match kind:
        case "zero-simple":
            for v in range(n):
                for w in range(n):
                    lines.append(f"{_pair(n, v, w)} -> ({v},{w})")
            lines.append(f"{n * n} -> 0")
        case "nilpotent":
            for v in range(n):
                for i in range(1, n):
                    for w in range(n):
                        lines.append(f"{_triple(n, v, i, w)} -> ({v},{i},{w})")
            lines.append(f"{n * n * (n - 1)} -> 0")
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Digraph:
    """
    Parse a graph file: `n m`, then m lines `u v` with 0-based vertices.

    Raises:
        MalformedInput: If the counts or tokens are wrong.
        VertexOutOfRange: If an endpoint is not a vertex.
    """
    lines = [
        (lineno, line)
        for lineno, raw in enumerate(text.splitlines(), start=1)
        if (line := raw.split("#", 1)[0].strip())
    ]
    if not lines:
        raise MalformedInput("missing 'n m' line")
    parsed: list[tuple[int, int]] = []
    for lineno, line in lines:
        tokens = line.split()
        if len(tokens) != 2:
            raise MalformedInput(f"expected two integers, got {line!r}", lineno)
        try:
            parsed.append((int(tokens[0]), int(tokens[1])))
        except ValueError as e:
            raise MalformedInput(f"expected two integers, got {line!r}", lineno) from e
    (n, m), edges = parsed[0], parsed[1:]
    if len(edges) != m:
        raise MalformedInput(f"header declares {m} edges, found {len(edges)}")
    return Digraph(n, frozenset(edges))


def format_graph(g: Digraph) -> str:
    lines = [f"{g.vertex_count} {len(g.edges)}"]
    lines.extend(f"{u} {v}" for u, v in sorted(g.edges))
    return "\n".join(lines) + "\n"
