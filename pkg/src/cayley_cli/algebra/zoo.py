"""Constructors for the semigroups used as examples, tests and acceptance corpus."""

from __future__ import annotations

import itertools
import random
from collections.abc import Callable, Iterator, Sequence

import numpy as np
from sympy import combinatorics  # pyright: ignore[reportMissingTypeStubs]

from cayley_cli.algebra.closure import generate
from cayley_cli.algebra.semigroup import Semigroup, direct_product
from cayley_cli.reductions import random_digraph, zero_simple_semigroup

type Permutation = tuple[int, ...]


def _from_function(n: int, op: Callable[[int, int], int]) -> Semigroup:
    return Semigroup([[op(a, b) for b in range(n)] for a in range(n)])


def trivial() -> Semigroup:
    return Semigroup([[0]])


def cyclic_group(n: int) -> Semigroup:
    """Z_n written additively."""
    return _from_function(n, lambda a, b: (a + b) % n)


def multiplicative_mod(n: int) -> Semigroup:
    """{0, ..., n-1} under multiplication mod n."""
    return _from_function(n, lambda a, b: (a * b) % n)


def left_zero(n: int) -> Semigroup:
    """x * y = x."""
    return _from_function(n, lambda a, b: a)


def right_zero(n: int) -> Semigroup:
    return _from_function(n, lambda a, b: b)


def null_semigroup(n: int) -> Semigroup:
    """Every product is the zero 0."""
    return _from_function(n, lambda a, b: 0)


def t_min(e: int) -> Semigroup:
    """
    {1, ..., e} with i * j = min(i + j, e), relabeled so that i has index i - 1.

    The zero e gets the index e - 1.
    """
    return _from_function(e, lambda a, b: min(a + b + 1, e - 1))


def semilattice_chain(n: int) -> Semigroup:
    """{0, ..., n-1} under min."""
    return _from_function(n, min)


def permutation_table(perms: Sequence[Permutation]) -> Semigroup:
    """The Cayley table of `perms`, composed left to right, with element i being perms[i]."""
    array = np.array(perms, dtype=np.int64)
    index = {p: i for i, p in enumerate(perms)}
    # row b of array[:, array[a]] is a followed by b
    table = [
        [index[tuple(row)] for row in array[:, array[a]].tolist()] for a in range(len(perms))
    ]
    return Semigroup(table, validate=False)


def from_permutation_group(
    group: combinatorics.PermutationGroup,
) -> tuple[Semigroup, list[Permutation]]:
    """
    A sympy permutation group as a Cayley table.

    Elements are indexed in lexicographic order of their array forms; returns the table and
    the permutation behind every element index.
    """
    perms = sorted(tuple(int(q) for q in p.array_form) for p in group.generate())
    return permutation_table(perms), perms


def symmetric_group(n: int) -> tuple[Semigroup, list[Permutation]]:
    return from_permutation_group(combinatorics.SymmetricGroup(n))


def alternating_group(n: int) -> tuple[Semigroup, list[Permutation]]:
    return from_permutation_group(combinatorics.AlternatingGroup(n))


def dihedral_group(n: int) -> tuple[Semigroup, list[Permutation]]:
    """Symmetries of the n-gon, order 2n."""
    return from_permutation_group(combinatorics.DihedralGroup(n))


# units 1, i, j, k as 0..3; _UNITS[u][v] = (sign, unit) of u * v
_UNITS = (
    ((0, 0), (0, 1), (0, 2), (0, 3)),
    ((0, 1), (1, 0), (0, 3), (1, 2)),
    ((0, 2), (1, 3), (1, 0), (0, 1)),
    ((0, 3), (0, 2), (1, 1), (1, 0)),
)


def quaternion_group() -> Semigroup:
    """Q8; the element ±u has the index 4 * sign + u for u in (1, i, j, k)."""

    def op(a: int, b: int) -> int:
        sign, unit = _UNITS[a % 4][b % 4]
        return 4 * ((a // 4 + b // 4 + sign) % 2) + unit

    return _from_function(8, op)


def named_groups() -> dict[str, tuple[Semigroup, list[frozenset[int]]]]:
    """Non-cyclic groups of the corpus, each with two generating sets given by index."""
    groups: dict[str, tuple[Semigroup, list[frozenset[int]]]] = {}

    def add(name: str, group: tuple[Semigroup, list[Permutation]], *sets: list[Permutation]):
        table, perms = group
        groups[name] = (table, [frozenset(perms.index(p) for p in gens) for gens in sets])

    add(
        "S3",
        symmetric_group(3),
        [(1, 0, 2), (1, 2, 0)],
        [(1, 0, 2), (0, 2, 1)],
    )
    add(
        "D4",
        dihedral_group(4),
        [(1, 2, 3, 0), (0, 3, 2, 1)],
        [(0, 3, 2, 1), (1, 0, 3, 2)],
    )
    add(
        "A4",
        alternating_group(4),
        [(1, 2, 0, 3), (0, 2, 3, 1)],
        [(1, 2, 0, 3), (1, 0, 3, 2)],
    )
    add(
        "S4",
        symmetric_group(4),
        [(1, 0, 2, 3), (1, 2, 3, 0)],
        [(1, 0, 2, 3), (0, 2, 1, 3), (0, 1, 3, 2)],
    )
    groups["Q8"] = (quaternion_group(), [frozenset({1, 2}), frozenset({2, 3})])
    return groups


def cyclic_generating_sets(n: int) -> list[frozenset[int]]:
    if n == 2:
        return [frozenset({1}), frozenset({0, 1})]
    return [frozenset({1}), frozenset({n - 1}), frozenset({2, 3} if n > 3 else {2, 1})]


def _all_tables(n: int) -> np.ndarray:
    tables = np.array(list(itertools.product(range(n), repeat=n * n)), dtype=np.int64)
    return tables.reshape(-1, n, n)


def associative_mask(tables: np.ndarray) -> np.ndarray:
    """For a stack of tables of shape (K, n, n), which of them are associative."""
    count, n, _ = tables.shape
    k = np.arange(count)[:, None, None, None]
    ar = np.arange(n)
    a, b, c = ar[None, :, None, None], ar[None, None, :, None], ar[None, None, None, :]
    left = tables[k, tables[k, a, b], c]
    right = tables[k, a, tables[k, b, c]]
    return (left == right).all(axis=(1, 2, 3))


def associative_tables(n: int) -> Iterator[Semigroup]:
    """Every associative table on n elements, in lexicographic order of the flattened table."""
    tables = _all_tables(n)
    for table in tables[associative_mask(tables)]:
        yield Semigroup(table, validate=False)


def count_associative_tables(n: int) -> int:
    return int(associative_mask(_all_tables(n)).sum())


def commutative_tables(n: int, *, chunk: int = 1 << 14) -> Iterator[Semigroup]:
    """
    Every commutative associative table on n elements.

    Only the upper triangle is enumerated, in lexicographic order, and candidates are screened
    `chunk` at a time, so order 4 (4 ** 10 symmetric tables) fits in a few megabytes.
    """
    rows, cols = np.triu_indices(n)
    cells = itertools.product(range(n), repeat=len(rows))
    while batch := list(itertools.islice(cells, chunk)):
        upper = np.array(batch, dtype=np.int64)
        tables = np.empty((len(batch), n, n), dtype=np.int64)
        tables[:, rows, cols] = upper
        tables[:, cols, rows] = upper
        for table in tables[associative_mask(tables)]:
            yield Semigroup(table, validate=False)


def restrict(s: Semigroup, subset: Sequence[int]) -> Semigroup:
    """The subsemigroup on `subset` (closed under products), relabeled in sorted order."""
    new_to_old = sorted(subset)
    old_to_new = {x: i for i, x in enumerate(new_to_old)}
    return Semigroup([[old_to_new[s.mul(a, b)] for b in new_to_old] for a in new_to_old])


def small_corpus() -> dict[str, Semigroup]:
    """Hand-picked semigroups of order at most 8."""
    corpus: dict[str, Semigroup] = {"trivial": trivial()}
    for n in range(2, 7):
        corpus[f"Z{n}"] = cyclic_group(n)
    corpus["Zx7"] = multiplicative_mod(7)
    corpus["Zx8"] = multiplicative_mod(8)
    corpus["L2"] = left_zero(2)
    corpus["R3"] = right_zero(3)
    corpus["N2"] = null_semigroup(2)
    corpus["N3"] = null_semigroup(3)
    for e in (2, 3, 4):
        corpus[f"Tmin{e}"] = t_min(e)
    corpus["chain3"] = semilattice_chain(3)
    corpus["S3"] = symmetric_group(3)[0]
    corpus["Q8"] = quaternion_group()
    corpus["L2xN2"] = direct_product(left_zero(2), null_semigroup(2))
    corpus["Z2xZ3"] = direct_product(cyclic_group(2), cyclic_group(3))
    return corpus


def random_semigroup(rng: random.Random, max_order: int = 12) -> Semigroup:
    """
    A random semigroup of order at most `max_order`.

    Built from small corpus pieces by direct products, restriction to generated
    subsemigroups and the zero-simple graph construction.
    """
    pieces = [s for s in small_corpus().values() if s.order <= max_order]
    match rng.randrange(4):
        case 0:
            return rng.choice(pieces)
        case 1:
            left = rng.choice(pieces)
            right = rng.choice([p for p in pieces if p.order * left.order <= max_order])
            return direct_product(left, right)
        case 2:
            base = rng.choice(pieces)
            k = rng.randint(1, base.order)
            generators = rng.sample(range(base.order), k)
            return restrict(base, list(generate(generators, base.mul)))
        case _ if max_order >= 5:
            n = 2 if max_order < 10 else rng.choice([2, 3])
            base = zero_simple_semigroup(n)
            graph = random_digraph(rng, n, 0.5)
            edges = sorted(graph.edges) + [(v, v) for v in range(n)]
            return restrict(base, list(generate([u * n + v for u, v in edges], base.mul)))
        case _:
            return rng.choice(pieces)
