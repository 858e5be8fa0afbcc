from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import reduce

import numpy as np
from numpy.typing import ArrayLike, NDArray

from cayley_cli.exception import EntryOutOfRange, MalformedInput, NotAssociative

type Table = NDArray[np.int64]


class Semigroup:
    """
    A finite semigroup given by its Cayley table.

    Elements are the indices `0..N-1`; `table[a, b]` is the product `a * b`. Instances are
    immutable: the table is stored read-only and every operation returns a new object.
    """

    __slots__ = ("_table", "_rows")

    def __init__(self, table: ArrayLike, *, validate: bool = True) -> None:
        arr = np.array(table, dtype=np.int64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
            raise MalformedInput(f"Cayley table must be a nonempty square array, got {arr.shape}")
        if validate:
            _check_range(arr)
            if (triple := find_associativity_violation(arr)) is not None:
                raise NotAssociative(triple)
        arr.setflags(write=False)
        self._table: Table = arr
        self._rows: tuple[tuple[int, ...], ...] = tuple(tuple(row) for row in arr.tolist())

    @property
    def order(self) -> int:
        return len(self._rows)

    @property
    def table(self) -> Table:
        """The read-only Cayley table."""
        return self._table

    @property
    def rows(self) -> tuple[tuple[int, ...], ...]:
        return self._rows

    @property
    def elements(self) -> range:
        return range(len(self._rows))

    def mul(self, a: int, b: int) -> int:
        return self._rows[a][b]

    def product(self, factors: Iterable[int]) -> int:
        """Left-to-right product of a nonempty sequence of elements."""
        return reduce(self.mul, factors)

    def power(self, x: int, e: int) -> int:
        """`x ** e` for `e >= 1`, by repeated squaring."""
        assert e >= 1
        result: int | None = None
        base = x
        while e:
            if e & 1:
                result = base if result is None else self.mul(result, base)
            e >>= 1
            if e:
                base = self.mul(base, base)
        assert result is not None
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Semigroup):
            return NotImplemented
        return self._rows == other._rows

    def __hash__(self) -> int:
        return hash(self._rows)

    def __repr__(self) -> str:
        return f"Semigroup(order={self.order})"


def _check_range(arr: Table) -> None:
    n = arr.shape[0]
    bad = np.argwhere((arr < 0) | (arr >= n))
    if bad.size:
        row, column = (int(v) for v in bad[0])
        raise EntryOutOfRange(row, column, int(arr[row, column]), n)


def find_associativity_violation(table: Table) -> tuple[int, int, int] | None:
    """
    Return the lexicographically first triple `(a, b, c)` with `(ab)c != a(bc)`, or None.

    The check runs one row `a` at a time so memory stays at `N**2`.
    """
    for a in range(table.shape[0]):
        left = table[table[a]]  # left[b, c] = (a*b)*c
        right = table[a][table]  # right[b, c] = a*(b*c)
        diff = np.argwhere(left != right)
        if diff.size:
            b, c = (int(v) for v in diff[0])
            return a, b, c
    return None


def is_associative(table: ArrayLike) -> bool:
    arr = np.asarray(table, dtype=np.int64)
    return find_associativity_violation(arr) is None


@dataclass(frozen=True, slots=True)
class MembershipInstance:
    """A semigroup, a generating set X and a target element t."""

    semigroup: Semigroup
    generators: frozenset[int]
    target: int

    def __post_init__(self) -> None:
        n = self.semigroup.order
        for x in sorted(self.generators):
            if not 0 <= x < n:
                raise MalformedInput(f"Generator {x} is outside 0..{n - 1}")
        if not 0 <= self.target < n:
            raise MalformedInput(f"Target {self.target} is outside 0..{n - 1}")


def _content_lines(text: str) -> list[tuple[int, str]]:
    """Strip comments and blank lines, keeping 1-based line numbers."""
    lines: list[tuple[int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append((lineno, line))
    return lines


def _parse_ints(tokens: Sequence[str], lineno: int) -> list[int]:
    try:
        return [int(token) for token in tokens]
    except ValueError as e:
        raise MalformedInput(f"expected integers, got {' '.join(tokens)!r}", lineno) from e


def _parse_table(lines: list[tuple[int, str]]) -> tuple[Semigroup, int]:
    """Parse a table from the head of `lines`, returning it and the number of lines consumed."""
    if not lines:
        raise MalformedInput("missing order line")
    lineno, first = lines[0]
    header = _parse_ints(first.split(), lineno)
    if len(header) != 1 or header[0] < 1:
        raise MalformedInput("first line must be a single positive order N", lineno)
    n = header[0]
    if len(lines) < n + 1:
        raise MalformedInput(f"expected {n} table rows, got {len(lines) - 1}")
    rows: list[list[int]] = []
    for lineno, line in lines[1 : n + 1]:
        row = _parse_ints(line.split(), lineno)
        if len(row) != n:
            raise MalformedInput(f"expected {n} entries, got {len(row)}", lineno)
        rows.append(row)
    return Semigroup(rows), n + 1


def parse_semigroup(text: str) -> Semigroup:
    """
    Parse a table file: the order N, then N rows of N space-separated entries.

    Raises:
        MalformedInput: If the counts or tokens are wrong.
        EntryOutOfRange: If an entry is not in 0..N-1.
        NotAssociative: If the table is not associative.
    """
    lines = _content_lines(text)
    semigroup, consumed = _parse_table(lines)
    if consumed != len(lines):
        raise MalformedInput("unexpected content after the table", lines[consumed][0])
    return semigroup


def parse_instance(text: str) -> MembershipInstance:
    """Parse an instance file: a table file, a line `X ...` and a line `t <index>`."""
    lines = _content_lines(text)
    semigroup, consumed = _parse_table(lines)
    rest = lines[consumed:]
    if len(rest) != 2:
        raise MalformedInput("expected an 'X' line and a 't' line after the table")
    (x_lineno, x_line), (t_lineno, t_line) = rest
    x_tokens = x_line.split()
    if x_tokens[0] != "X":
        raise MalformedInput("expected a line starting with 'X'", x_lineno)
    t_tokens = t_line.split()
    if t_tokens[0] != "t" or len(t_tokens) != 2:
        raise MalformedInput("expected 't <index>'", t_lineno)
    generators = frozenset(_parse_ints(x_tokens[1:], x_lineno))
    (target,) = _parse_ints(t_tokens[1:], t_lineno)
    return MembershipInstance(semigroup, generators, target)


def format_semigroup(semigroup: Semigroup) -> str:
    lines = [str(semigroup.order)]
    lines.extend(" ".join(str(v) for v in row) for row in semigroup.rows)
    return "\n".join(lines) + "\n"


def format_instance(instance: MembershipInstance) -> str:
    generators = " ".join(str(x) for x in sorted(instance.generators))
    return (
        format_semigroup(instance.semigroup)
        + (f"X {generators}" if generators else "X")
        + f"\nt {instance.target}\n"
    )


def direct_product(s: Semigroup, t: Semigroup) -> Semigroup:
    """Componentwise product; the pair `(a, b)` is encoded as `a * |T| + b`."""
    m = t.order
    # blocks[a, b, c, d] = (a*c) * |T| + (b*d)
    blocks = s.table[:, None, :, None] * m + t.table[None, :, None, :]
    return Semigroup(blocks.reshape(s.order * m, s.order * m), validate=False)


def adjoin_identity(s: Semigroup) -> Semigroup:
    """S with a fresh two-sided identity, which gets the index N."""
    n = s.order
    table = np.empty((n + 1, n + 1), dtype=np.int64)
    table[:n, :n] = s.table
    table[n, :] = np.arange(n + 1)
    table[:, n] = np.arange(n + 1)
    return Semigroup(table, validate=False)


def element_index_period(s: Semigroup, x: int) -> tuple[int, int]:
    """
    The index r and period p of x: minimal r, p >= 1 with `x**(r+p) == x**r`.

    Every power `x**i` with `i >= r` then equals `x**(r + (i - r) % p)`.
    """
    seen: dict[int, int] = {}
    value, exponent = x, 1
    while value not in seen:
        seen[value] = exponent
        value = s.mul(value, x)
        exponent += 1
    r = seen[value]
    return r, exponent - r


def normalize_exponent(i: int, index: int, period: int) -> int:
    """Reduce an exponent into `1..index+period-1` without changing the power."""
    if i < index + period:
        return i
    return index + (i - index) % period
