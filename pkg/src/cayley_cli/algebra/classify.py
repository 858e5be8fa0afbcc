from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from cayley_cli.algebra.semigroup import Semigroup
from cayley_cli.exception import NotAGroup


@dataclass(frozen=True, slots=True, kw_only=True)
class Classification:
    """Structural properties of a finite semigroup."""

    commutative: bool
    group: bool
    abelian: bool
    identity_element: int | None
    zero_element: int | None
    idempotents: frozenset[int]
    nilpotent: bool
    """The only idempotent is a zero element."""
    zero_simple: bool
    """There is a zero and SsS = S for every nonzero s."""
    band: bool
    semilattice: bool
    rectangular_band: bool

    def as_rows(self) -> list[tuple[str, str]]:
        def show(value: object) -> str:
            match value:
                case bool():
                    return "yes" if value else "no"
                case None:
                    return "none"
                case frozenset():
                    return " ".join(str(v) for v in sorted(value)) or "-"
                case _:
                    return str(value)

        return [(name, show(getattr(self, name))) for name in self.__slots__]


def find_identity(s: Semigroup) -> int | None:
    t = s.table
    ids = np.arange(s.order)
    for e in range(s.order):
        if np.array_equal(t[e], ids) and np.array_equal(t[:, e], ids):
            return e
    return None


def find_zero(s: Semigroup) -> int | None:
    t = s.table
    for z in range(s.order):
        if (t[z] == z).all() and (t[:, z] == z).all():
            return z
    return None


def find_idempotents(s: Semigroup) -> frozenset[int]:
    diagonal = np.diagonal(s.table)
    return frozenset(int(x) for x in np.flatnonzero(diagonal == np.arange(s.order)))


def group_inverses(s: Semigroup) -> tuple[int, tuple[int, ...]]:
    """
    Return the identity and the inverse of every element.

    Raises:
        NotAGroup: If there is no two-sided identity or some element has no two-sided inverse.
    """
    e = find_identity(s)
    if e is None:
        raise NotAGroup()
    t = s.table
    both = (t == e) & (t.T == e)
    inverses: list[int] = []
    for a in range(s.order):
        candidates = np.flatnonzero(both[a])
        if candidates.size == 0:
            raise NotAGroup()
        inverses.append(int(candidates[0]))
    return e, tuple(inverses)


def is_group(s: Semigroup) -> bool:
    try:
        group_inverses(s)
    except NotAGroup:
        return False
    return True


def is_commutative(s: Semigroup) -> bool:
    return bool((s.table == s.table.T).all())


def _is_zero_simple(s: Semigroup, zero: int) -> bool:
    t = s.table
    for x in range(s.order):
        if x == zero:
            continue
        # two_sided[a, b] = (a * x) * b
        two_sided = t[t[:, x]]
        if np.unique(two_sided).size != s.order:
            return False
    return True


def classify(s: Semigroup) -> Classification:
    t = s.table
    commutative = is_commutative(s)
    group = is_group(s)
    zero = find_zero(s)
    idempotents = find_idempotents(s)
    band = len(idempotents) == s.order
    rows = np.arange(s.order)[:, None]
    return Classification(
        commutative=commutative,
        group=group,
        abelian=group and commutative,
        identity_element=find_identity(s),
        zero_element=zero,
        idempotents=idempotents,
        nilpotent=zero is not None and idempotents == {zero},
        zero_simple=zero is not None and _is_zero_simple(s, zero),
        band=band,
        semilattice=band and commutative,
        rectangular_band=band and bool((t[t, rows] == rows).all()),
    )
