"""Power-basis decompositions in commutative semigroups and their circuits."""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass

import numpy as np

from cayley_cli.algebra.classify import is_commutative
from cayley_cli.algebra.closure import Generator, Product, closure
from cayley_cli.algebra.semigroup import (
    Semigroup,
    adjoin_identity,
    element_index_period,
    normalize_exponent,
)
from cayley_cli.circuits.cayley import CayleyCircuit, chain_product, power_circuit
from cayley_cli.exception import NotCommutative, TargetNotGenerated
from cayley_cli.utils.logging import logger


@dataclass(frozen=True, slots=True)
class PowerProduct:
    """`x_1 ** i_1 * ... * x_k ** i_k` over distinct generators, sorted by generator."""

    factors: tuple[tuple[int, int], ...]

    def __len__(self) -> int:
        return len(self.factors)

    def evaluate(self, s: Semigroup) -> int:
        return s.product(s.power(x, i) for x, i in self.factors)


class _Normalizer:
    """Caches the index and period of every generator."""

    def __init__(self, s: Semigroup) -> None:
        self.s = s
        self._index_period: dict[int, tuple[int, int]] = {}

    def __call__(self, x: int, i: int) -> int:
        if x not in self._index_period:
            self._index_period[x] = element_index_period(self.s, x)
        return normalize_exponent(i, *self._index_period[x])


def _initial_exponents(
    s: Semigroup, generators: list[int], target: int, normalize: _Normalizer
) -> dict[int, int]:
    """Generator multiplicities along the derivation of `target`, normalized after every sum."""
    _, derivations = closure(s, generators)
    if target not in derivations:
        raise TargetNotGenerated(target)
    counts: dict[int, dict[int, int]] = {}
    # derivations are in derivation order: both factors of a product come first
    for element, derivation in derivations.items():
        match derivation:
            case Generator(x):
                counts[element] = {x: 1}
            case Product(left, right):
                merged = dict(counts[left])
                for x, i in counts[right].items():
                    merged[x] = normalize(x, merged.get(x, 0) + i)
                counts[element] = merged
        if element == target:
            break
    return counts[target]


def _first_collision(s1: Semigroup, powers: list[int]) -> tuple[int, int]:
    """
    The first two subsets (as bitmasks) with equal products over S^1, in increasing mask order.

    Returns `(later, earlier)`.
    """
    identity = s1.order - 1
    values = [identity] * (1 << len(powers))
    seen = {identity: 0}
    for mask in range(1, 1 << len(powers)):
        low = (mask & -mask).bit_length() - 1
        values[mask] = s1.mul(values[mask & (mask - 1)], powers[low])
        if (earlier := seen.get(values[mask])) is not None:
            return mask, earlier
        seen[values[mask]] = mask
    raise AssertionError("no collision among more subsets than elements")


def power_basis_decomposition(s: Semigroup, generators: Iterable[int], y: int) -> PowerProduct:
    """
    Write y as a product of at most `ceil(log2(N + 1))` powers of distinct generators.

    Starts from the generator multiplicities of y's closure derivation. While there are more
    subsets of factors than elements of S^1, two subsets K1 != K2 have the same product, and
    `y = h(K2) * h(complement of K1)` uses fewer distinct generators.

    Raises:
        NotCommutative: If `s` is not commutative.
        TargetNotGenerated: If y is not generated.
    """
    if not is_commutative(s):
        raise NotCommutative()
    xs = sorted(set(generators))
    if y in xs:
        return PowerProduct(((y, 1),))

    normalize = _Normalizer(s)
    exponents = _initial_exponents(s, xs, y, normalize)
    s1 = adjoin_identity(s)
    n = s.order
    while (1 << len(exponents)) > n + 1:
        support = sorted(exponents)
        powers = [s.power(x, exponents[x]) for x in support]
        later, earlier = _first_collision(s1, powers)
        if later & ~earlier == 0:
            later, earlier = earlier, later
        full = (1 << len(support)) - 1
        kept: dict[int, int] = {}
        for mask in (earlier, full & ~later):
            for j, x in enumerate(support):
                if mask >> j & 1:
                    kept[x] = normalize(x, kept.get(x, 0) + exponents[x])
        logger.trace(
            "Collision reduced {before} factors to {after}",
            before=len(exponents),
            after=len(kept),
        )
        exponents = kept

    result = PowerProduct(tuple(sorted(exponents.items())))
    logger.debug("Power basis for {y}: {factors}", y=y, factors=result.factors)
    return result


def commutative_circuit(
    s: Semigroup, generators: Iterable[int], y: int
) -> tuple[CayleyCircuit, tuple[int, ...]]:
    """
    A chain of powering circuits, one per factor of the power-basis decomposition of y.

    Returns the circuit and the generators assigned to its input gates.
    """
    decomposition = power_basis_decomposition(s, generators, y)
    circuit = chain_product([power_circuit(i) for _, i in decomposition.factors])
    return circuit, tuple(x for x, _ in decomposition.factors)


def power_basis_membership(s: Semigroup, generators: Iterable[int], target: int) -> bool:
    """
    Whether `target` is a product of at most `ceil(log2(N + 1))` powers of distinct generators.

    In a commutative semigroup this is exactly closure membership. Layer c holds the values of
    products of c such powers over the generators seen so far.

    Raises:
        NotCommutative: If `s` is not commutative.
    """
    if not is_commutative(s):
        raise NotCommutative()
    k = s.order.bit_length()
    layers = np.zeros((k + 1, s.order), dtype=np.bool_)
    for x in sorted(set(generators)):
        r, p = element_index_period(s, x)
        powers = np.array([s.power(x, i) for i in range(1, r + p)], dtype=np.int64)
        extended = layers.copy()
        extended[1, powers] = True
        for c in range(1, k):
            values = np.flatnonzero(layers[c])
            if values.size:
                extended[c + 1, s.table[np.ix_(values, powers)].ravel()] = True
        layers = extended
    return bool(layers[:, target].any())
