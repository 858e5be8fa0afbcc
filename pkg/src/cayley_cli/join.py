"""
Nilpotent semigroups as quotients of subdirect products of a group and a commutative semigroup.

For a nilpotent S with degree e (every product of e elements is zero) and X = S without the
zero, the group G is generated by permutations pi_x of the words over X shorter than e, where
pi_x appends x to every word shorter than e - 1. A product of fewer than e generators sends the
empty word to the word it spells, so it determines its factorization. The commutative part is
T = {1, ..., e} with `i * j = min(i + j, e)`, and U is generated by the pairs (pi_x, 1).
"""

from __future__ import annotations

import itertools
from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from sympy import combinatorics  # pyright: ignore[reportMissingTypeStubs]

from cayley_cli.algebra.classify import classify, find_zero
from cayley_cli.algebra.closure import right_closure
from cayley_cli.algebra.semigroup import Semigroup
from cayley_cli.algebra.zoo import Permutation, permutation_table, t_min
from cayley_cli.exception import (
    EmptySequence,
    NothingToFactor,
    NotNilpotent,
    WitnessTooLarge,
)
from cayley_cli.utils.logging import logger

type Word = tuple[int, ...]
# (index into the group, length in 1..e)
type Pair = tuple[int, int]


def nilpotency_degree(s: Semigroup) -> int:
    """
    The least e with `S**e == {0}`.

    Raises:
        NotNilpotent: If `s` is not nilpotent.
    """
    if not classify(s).nilpotent:
        raise NotNilpotent()
    zero = find_zero(s)
    products = np.arange(s.order)
    e = 1
    while products.size > 1 or products[0] != zero:
        products = np.unique(s.table[products].ravel())
        e += 1
    return e


class PermutationGroup:
    """
    The group generated by permutations of `0..degree-1`, composed left to right.

    Elements are indexed in lexicographic order of their permutations. The Cayley table is
    only built on request.
    """

    def __init__(self, generators: Sequence[Permutation], *, limit: int | None = None) -> None:
        if not generators:
            raise EmptySequence("permutations")
        self.degree = len(generators[0])
        group = combinatorics.PermutationGroup(
            [combinatorics.Permutation(list(p)) for p in generators]
        )
        order = int(group.order())
        if limit is not None and order > limit:
            raise WitnessTooLarge("group", order, limit)
        self._elements: list[combinatorics.Permutation] = sorted(
            group.generate(), key=lambda p: p.array_form
        )
        self.permutations: tuple[Permutation, ...] = tuple(
            tuple(int(q) for q in p.array_form) for p in self._elements
        )
        self._index = {p: i for i, p in enumerate(self.permutations)}

    @property
    def order(self) -> int:
        return len(self.permutations)

    @property
    def identity(self) -> int:
        return self._index[tuple(range(self.degree))]

    def index(self, permutation: Permutation) -> int:
        return self._index[permutation]

    def mul(self, a: int, b: int) -> int:
        # sympy's p * q applies p first
        product = self._elements[a] * self._elements[b]
        return self._index[tuple(int(q) for q in product.array_form)]

    @cached_property
    def semigroup(self) -> Semigroup:
        return permutation_table(self.permutations)


@dataclass(frozen=True, slots=True)
class JoinWitness:
    degree: int
    """e, the nilpotency degree"""
    zero: int
    words: tuple[Word, ...]
    """Q: the words over X shorter than e, shortest first, then lexicographic"""
    generators: Mapping[int, int]
    """Generator x of S -> group index of pi_x"""
    group: PermutationGroup
    commutative: Semigroup
    """T = {1..e} under min(i + j, e), with i at index i - 1"""
    elements: tuple[Pair, ...]
    """U, in derivation order"""
    phi: Mapping[Pair, int]

    def mul(self, u: Pair, v: Pair) -> Pair:
        return self.group.mul(u[0], v[0]), min(u[1] + v[1], self.degree)


@dataclass(frozen=True, slots=True)
class QuotientVerdict:
    passed: bool
    reason: str | None = None
    witness: tuple[object, ...] | None = None

    def __bool__(self) -> bool:
        return self.passed


def _words(letters: Sequence[int], max_length: int) -> list[Word]:
    words: list[Word] = []
    for length in range(max_length + 1):
        words.extend(itertools.product(letters, repeat=length))
    return words


def _append_permutation(words: Sequence[Word], x: int, max_length: int) -> Permutation:
    """Extend `w -> w x` on words shorter than `max_length` to a permutation of the words."""
    index = {w: i for i, w in enumerate(words)}
    image: list[int | None] = [None] * len(words)
    for i, w in enumerate(words):
        if len(w) < max_length:
            image[i] = index[(*w, x)]
    taken = set(image)
    free_domain = [i for i, target in enumerate(image) if target is None]
    free_range = [j for j in range(len(words)) if j not in taken]
    for i, j in zip(free_domain, free_range, strict=True):
        image[i] = j
    return tuple(j for j in image if j is not None)


def build_join_witness(s: Semigroup, *, max_q: int = 10, max_group: int = 20_000) -> JoinWitness:
    """
    Build G, T, U and phi for a nilpotent semigroup with at least two elements.

    phi sends (g, e) to zero and (g, l) with l < e to the product of the word g spells.

    Raises:
        NotNilpotent: If `s` is not nilpotent.
        NothingToFactor: If `s` has a single element.
        WitnessTooLarge: If the word set or the group exceeds its cap.
    """
    e = nilpotency_degree(s)
    if s.order < 2:
        raise NothingToFactor()
    zero = find_zero(s)
    assert zero is not None
    letters = [x for x in s.elements if x != zero]
    q = sum(len(letters) ** length for length in range(e))
    if q > max_q:
        raise WitnessTooLarge("word set", q, max_q)
    words = _words(letters, e - 1)

    perms = {x: _append_permutation(words, x, e - 1) for x in letters}
    group = PermutationGroup(list(perms.values()), limit=max_group)
    generators = {x: group.index(p) for x, p in perms.items()}

    def mul(u: Pair, v: Pair) -> Pair:
        return group.mul(u[0], v[0]), min(u[1] + v[1], e)

    elements = tuple(right_closure([(generators[x], 1) for x in letters], mul))
    phi: dict[Pair, int] = {}
    for g, length in elements:
        if length == e:
            phi[(g, length)] = zero
        else:
            word = words[group.permutations[g][0]]
            phi[(g, length)] = s.product(word)
    logger.debug(
        "Join witness: e={e}, |Q|={q}, |G|={g}, |U|={u}",
        e=e,
        q=q,
        g=group.order,
        u=len(elements),
    )
    return JoinWitness(
        degree=e,
        zero=zero,
        words=tuple(words),
        generators=generators,
        group=group,
        commutative=t_min(e),
        elements=elements,
        phi=phi,
    )


def verify_quotient(witness: JoinWitness, s: Semigroup) -> QuotientVerdict:
    """
    Check that phi is a surjective morphism from U onto S.

    Checks, in order: every product of fewer than e generators sends the empty word to the
    word it spells (so such products are pairwise distinct); phi(uv) = phi(u) phi(v) for all
    u, v with lengths below e; every pair of length e maps to a zero of S, which covers all
    remaining pairs; phi(U) = S.
    """
    e = witness.degree
    group = witness.group
    for word in witness.words[1:]:
        g = group.identity
        for x in word:
            g = group.mul(g, witness.generators[x])
        if group.permutations[g][0] != witness.words.index(word):
            return QuotientVerdict(False, "separation", (word,))

    short = [u for u in witness.elements if u[1] < e]
    for u in short:
        for v in short:
            uv = witness.mul(u, v)
            if witness.phi.get(uv) != s.mul(witness.phi[u], witness.phi[v]):
                return QuotientVerdict(False, "morphism", (u, v))

    zero = witness.zero
    for u in witness.elements:
        if u[1] == e and witness.phi[u] != zero:
            return QuotientVerdict(False, "morphism", (u,))
    if any(s.mul(zero, y) != zero or s.mul(y, zero) != zero for y in s.elements):
        return QuotientVerdict(False, "morphism", (zero,))

    image = set(witness.phi.values())
    if missing := sorted(set(s.elements) - image):
        return QuotientVerdict(False, "surjectivity", (missing[0],))
    return QuotientVerdict(True)
