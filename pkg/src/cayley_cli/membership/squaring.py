"""
Repeated squaring over width-w predicate tables.

Level 0 relates a vector z of w values to every vector y whose entries are among z, the
generators and their binary products. Level i + 1 is the relational composition of level i
with itself, so level i covers 2^i such steps.
"""

from __future__ import annotations

import math
from collections.abc import Iterable
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from cayley_cli.algebra.semigroup import Semigroup
from cayley_cli.utils.logging import logger


def default_size_bound(order: int) -> int:
    """`ceil(5 * (log2 N + 1) ** 2)`."""
    return math.ceil(5 * (math.log2(order) + 1) ** 2)


@dataclass(frozen=True, slots=True)
class PredicateTable:
    """
    The pairs (z, y) of w-vectors for which the predicate holds at `level`.

    Vectors are indexed in base N with the first coordinate most significant.
    """

    order: int
    width: int
    level: int
    relation: NDArray[np.bool_]

    def index(self, vector: Iterable[int]) -> int:
        index = 0
        for value in vector:
            index = index * self.order + value
        return index

    def holds(self, z: Iterable[int], y: Iterable[int]) -> bool:
        return bool(self.relation[self.index(z), self.index(y)])

    def __len__(self) -> int:
        """Number of related pairs."""
        return int(self.relation.sum())


def _digits(order: int, width: int) -> NDArray[np.int64]:
    """Row v holds the coordinates of the vector with index v."""
    grid = np.indices((order,) * width).reshape(width, -1)
    return grid.T.astype(np.int64)


def dp_base(s: Semigroup, generators: Iterable[int], width: int) -> PredicateTable:
    """
    Level 0: y is related to z iff every y_j is in B(z), where B(z) holds the entries of z,
    the generators, and all binary products of those.
    """
    n = s.order
    xs = np.array(sorted(set(generators)), dtype=np.int64)
    digits = _digits(n, width)
    size = len(digits)
    relation = np.zeros((size, size), dtype=np.bool_)
    for z in range(size):
        values = np.union1d(digits[z], xs)
        allowed = np.zeros(n, dtype=np.bool_)
        allowed[values] = True
        allowed[s.table[np.ix_(values, values)].ravel()] = True
        relation[z] = allowed[digits].all(axis=1)
    return PredicateTable(n, width, 0, relation)


def dp_step(table: PredicateTable) -> PredicateTable:
    """(z, y) holds at the next level iff (z, z') and (z', y) hold for some z'."""
    as_float = table.relation.astype(np.float32)
    relation = (as_float @ as_float) > 0
    return PredicateTable(table.order, table.width, table.level + 1, relation)


def squaring_levels(
    s: Semigroup,
    generators: Iterable[int],
    width: int,
    size_bound: int,
    *,
    relation_warning: int | None = None,
) -> list[PredicateTable]:
    """
    Levels `0..ceil(log2 size_bound)`, stopping early once a level equals its predecessor.
    """
    entries = (s.order**width) ** 2
    if relation_warning is not None and entries > relation_warning:
        logger.warning(
            "Squaring relation has {entries} entries (order {n}, width {w})",
            entries=entries,
            n=s.order,
            w=width,
        )
    top = (size_bound - 1).bit_length()
    levels = [dp_base(s, generators, width)]
    while levels[-1].level < top:
        following = dp_step(levels[-1])
        if np.array_equal(following.relation, levels[-1].relation):
            logger.trace("Squaring reached a fixpoint at level {level}", level=following.level)
            break
        levels.append(following)
    return levels


def final_check(top: PredicateTable, x: int, target: int) -> bool:
    """Whether `(x, ..., x)` is related to `(target, ..., target)`."""
    return top.holds((x,) * top.width, (target,) * top.width)


def dp_membership(
    s: Semigroup,
    generators: Iterable[int],
    target: int,
    width: int = 2,
    size_bound: int | None = None,
    *,
    relation_warning: int | None = None,
) -> bool:
    """
    Decide membership from the top squaring level, starting from the smallest generator.

    True answers are always correct. For commutative semigroups with width 2 and the default
    size bound the answer equals closure membership.
    """
    xs = sorted(set(generators))
    if not xs:
        return False
    bound = size_bound if size_bound is not None else default_size_bound(s.order)
    levels = squaring_levels(s, xs, width, bound, relation_warning=relation_warning)
    return final_check(levels[-1], xs[0], target)
