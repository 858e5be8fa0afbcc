"""
Straight-line programs over finite groups.

`slp_reachability` builds short programs by cube doubling: it keeps elements h_1, ..., h_s
whose cube `K = {h_1^e_1 ... h_s^e_s}` has 2^s distinct elements and adds a new h until the
target is a quotient `a^-1 b` of two cube elements.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

from cayley_cli.algebra.classify import group_inverses
from cayley_cli.algebra.semigroup import Semigroup
from cayley_cli.circuits import cayley
from cayley_cli.circuits.cayley import CayleyCircuit, power_circuit
from cayley_cli.exception import (
    EmptySequence,
    InvalidReference,
    MalformedInput,
    TargetNotGenerated,
)
from cayley_cli.utils.logging import logger


@dataclass(frozen=True, slots=True)
class Gen:
    element: int


@dataclass(frozen=True, slots=True)
class Inv:
    source: int


@dataclass(frozen=True, slots=True)
class Mul:
    left: int
    right: int


type Item = Gen | Inv | Mul


@dataclass(frozen=True, slots=True)
class StraightLineProgram:
    """A sequence of generators, inverses and products of earlier items (0-based)."""

    items: tuple[Item, ...]

    def __post_init__(self) -> None:
        if not self.items:
            raise EmptySequence("items")
        for i, item in enumerate(self.items):
            match item:
                case Gen():
                    refs: tuple[int, ...] = ()
                case Inv(source):
                    refs = (source,)
                case Mul(left, right):
                    refs = (left, right)
            for ref in refs:
                if not 0 <= ref < i:
                    raise InvalidReference(ref, i)

    def __len__(self) -> int:
        return len(self.items)


@dataclass(frozen=True, slots=True)
class SlpResult:
    program: StraightLineProgram
    cube_dimension: int
    """Number of cube doubling steps"""
    bound: float
    """(log2 |G| + 1) ** 2"""

    @property
    def length(self) -> int:
        return len(self.program)

    @property
    def within_bound(self) -> bool:
        return self.length <= self.bound


def evaluate_slp(g: Semigroup, slp: StraightLineProgram) -> tuple[int, ...]:
    """
    The value of every item.

    Raises:
        NotAGroup: If `g` is not a group.
    """
    _, inverses = group_inverses(g)
    values: list[int] = []
    for item in slp.items:
        match item:
            case Gen(x):
                values.append(x)
            case Inv(source):
                values.append(inverses[values[source]])
            case Mul(left, right):
                values.append(g.mul(values[left], values[right]))
    return tuple(values)


def prune_slp(slp: StraightLineProgram) -> StraightLineProgram:
    """Keep only the items the last item depends on, preserving their order."""
    needed = [False] * len(slp.items)
    needed[-1] = True
    for i in range(len(slp.items) - 1, -1, -1):
        if not needed[i]:
            continue
        match slp.items[i]:
            case Inv(source):
                needed[source] = True
            case Mul(left, right):
                needed[left] = needed[right] = True
            case Gen():
                pass
    new_index: dict[int, int] = {}
    items: list[Item] = []
    for i, item in enumerate(slp.items):
        if not needed[i]:
            continue
        match item:
            case Gen():
                items.append(item)
            case Inv(source):
                items.append(Inv(new_index[source]))
            case Mul(left, right):
                items.append(Mul(new_index[left], new_index[right]))
        new_index[i] = len(items) - 1
    return StraightLineProgram(tuple(items))


class _Builder:
    """Appends items, sharing every item whose value already has one."""

    def __init__(self, g: Semigroup, inverses: Sequence[int]) -> None:
        self.g = g
        self.inverses = inverses
        self.items: list[Item] = []
        self.index_of: dict[int, int] = {}

    def _add(self, item: Item, value: int) -> int:
        if (index := self.index_of.get(value)) is not None:
            return index
        self.items.append(item)
        self.index_of[value] = len(self.items) - 1
        return len(self.items) - 1

    def gen(self, x: int) -> int:
        return self._add(Gen(x), x)

    def inv(self, p: int, value: int) -> int:
        return self._add(Inv(p), self.inverses[value])

    def mul(self, p: int, left: int, q: int, right: int) -> int:
        return self._add(Mul(p, q), self.g.mul(left, right))


# indices into the doubling elements h, ascending; the empty subset is the identity
type Subset = tuple[int, ...]


@dataclass(frozen=True, slots=True, order=True)
class _Candidate:
    """`a^-1 b x` for cube elements a, b and a generator x (None: no generator)."""

    cost: int
    position: int
    h: int
    a: Subset
    b: Subset
    x: int | None


class _CubeDoubling:
    def __init__(self, g: Semigroup, generators: Sequence[int]) -> None:
        self.g = g
        self.identity, self.inverses = group_inverses(g)
        self.generators = generators
        self.builder = _Builder(g, self.inverses)
        self.h: list[int] = []
        self.cube: dict[int, Subset] = {self.identity: ()}

    def quotients(self) -> set[int]:
        """K^-1 K."""
        return {self.g.mul(self.inverses[a], b) for a in self.cube for b in self.cube}

    def subset_value(self, subset: Subset) -> int:
        value = self.identity
        for i in subset:
            value = self.g.mul(value, self.h[i])
        return value

    def value(self, a: Subset, b: Subset, x: int | None) -> int:
        value = self.g.mul(self.inverses[self.subset_value(a)], self.subset_value(b))
        return value if x is None else self.g.mul(value, x)

    def _prefixes(self, subset: Subset) -> list[int]:
        values: list[int] = []
        for i in subset:
            values.append(self.h[i] if not values else self.g.mul(values[-1], self.h[i]))
        return values

    def cost(self, a: Subset, b: Subset, x: int | None) -> int:
        """Number of items `emit(a, b, x)` would add."""
        values = self._prefixes(a)
        acc = None
        if values:
            acc = self.inverses[values[-1]]
            values.append(acc)
        b_values = self._prefixes(b)
        values += b_values
        if b_values:
            acc = b_values[-1] if acc is None else self.g.mul(acc, b_values[-1])
            values.append(acc)
        if x is not None:
            acc = x if acc is None else self.g.mul(acc, x)
            values += [x, acc]
        return len({v for v in values if v not in self.builder.index_of})

    def _emit_subset(self, subset: Subset) -> tuple[int, int] | None:
        """Emit the subset product; return (item index, value), or None for the identity."""
        acc: tuple[int, int] | None = None
        for i in subset:
            h = self.h[i]
            item = (self.builder.index_of[h], h)
            acc = item if acc is None else self._mul(acc, item)
        return acc

    def _mul(self, left: tuple[int, int], right: tuple[int, int]) -> tuple[int, int]:
        value = self.g.mul(left[1], right[1])
        return self.builder.mul(left[0], left[1], right[0], right[1]), value

    def emit(self, a: Subset, b: Subset, x: int | None) -> int:
        """Emit `a^-1 b x`, which must not be the empty product, and return its item index."""
        acc: tuple[int, int] | None = None
        if (item := self._emit_subset(a)) is not None:
            index, value = item
            acc = (self.builder.inv(index, value), self.inverses[value])
        if (item := self._emit_subset(b)) is not None:
            acc = item if acc is None else self._mul(acc, item)
        if x is not None:
            item = (self.builder.gen(x), x)
            acc = item if acc is None else self._mul(acc, item)
        assert acc is not None
        return acc[0]

    def step(self, quotients: set[int]) -> bool:
        """
        Add the cheapest h outside K^-1 K, which doubles the cube.

        Candidates are the products `a^-1 b x` over cube subsets a, b and a generator x (or
        none). Every one of them outside K^-1 K doubles the cube, since K and K h are then
        disjoint, so the choice among them only affects the length. The one adding the fewest
        items wins, ties broken by enumeration order, so the program is deterministic. A step
        adds at most `2 k + 2` items for a cube of dimension k, and there are at most
        `m = log2 |G|` steps, so the steps together stay within `m (m + 1) < (m + 1)^2`.

        Returns False when every candidate lies in K^-1 K: then K^-1 K is closed under
        multiplication by the generators and is the whole generated subgroup.
        """
        candidates: list[_Candidate] = []
        for x in (None, *self.generators):
            for a in self.cube.values():
                for b in self.cube.values():
                    h = self.value(a, b, x)
                    if h not in quotients:
                        candidates.append(
                            _Candidate(self.cost(a, b, x), len(candidates), h, a, b, x)
                        )
        if not candidates:
            return False
        chosen = min(candidates)
        self.emit(chosen.a, chosen.b, chosen.x)
        position = len(self.h)
        self.h.append(chosen.h)
        for k, subset in list(self.cube.items()):
            self.cube[self.g.mul(k, chosen.h)] = (*subset, position)
        return True

    def extract(self, target: int) -> None:
        """Emit the cheapest `a^-1 b == target`, preferring a to be the identity."""
        pairs = [
            (a, b)
            for a in self.cube.values()
            for b in self.cube.values()
            if self.value(a, b, None) == target
        ]
        a, b = min(pairs, key=lambda pair: (self.cost(*pair, None), len(pair[0])))
        self.emit(a, b, None)


def slp_reachability(g: Semigroup, generators: Iterable[int], target: int) -> SlpResult:
    """
    A straight-line program over the generators whose last value is `target`.

    Raises:
        NotAGroup: If `g` is not a group.
        TargetNotGenerated: If `target` is not generated.
    """
    xs = sorted(set(generators))
    doubling = _CubeDoubling(g, xs)
    if not xs:
        raise TargetNotGenerated(target)
    bound = (math.log2(g.order) + 1) ** 2

    builder = doubling.builder
    if target in xs:
        builder.gen(target)
    elif target == doubling.identity:
        x = xs[0]
        p = builder.gen(x)
        builder.mul(builder.inv(p, x), doubling.inverses[x], p, x)
    else:
        while target not in (quotients := doubling.quotients()):
            if not doubling.step(quotients):
                raise TargetNotGenerated(target)
        doubling.extract(target)

    # the target may already have an item from an earlier step
    last = builder.index_of[target]
    program = prune_slp(StraightLineProgram(tuple(builder.items[: last + 1])))
    result = SlpResult(program, len(doubling.h), bound)
    logger.debug(
        "SLP for {target}: {length} items after {steps} doubling steps",
        target=target,
        length=result.length,
        steps=result.cube_dimension,
    )
    if not result.within_bound:
        logger.warning(
            "SLP length {length} exceeds (log2 |G| + 1)^2 = {bound:.2f}",
            length=result.length,
            bound=bound,
        )
    return result


def slp_to_circuit(
    slp: StraightLineProgram, order: int
) -> tuple[CayleyCircuit, tuple[int, ...]]:
    """
    Compile a program over a group of order N into a Cayley circuit.

    Inverses become `x ** (N - 1)` powering blocks on the source gate; for N <= 2 every element
    is its own inverse and the source gate is reused.

    Returns the circuit and the generators assigned to its input gates.
    """
    slp = prune_slp(slp)
    inverse_block = power_circuit(order - 1) if order > 2 else None
    gates: list[cayley.Gate] = []
    assignment: list[int] = []
    gate_of: list[int] = []
    for item in slp.items:
        match item:
            case Gen(x):
                gates.append(cayley.INPUT)
                assignment.append(x)
            case Mul(left, right):
                gates.append(cayley.Mul(gate_of[left], gate_of[right]))
            case Inv(source):
                if inverse_block is None:
                    gate_of.append(gate_of[source])
                    continue
                root = gate_of[source]
                block_gate: list[int] = [root]
                for gate in inverse_block.gates[1:]:
                    assert isinstance(gate, cayley.Mul)
                    gates.append(cayley.Mul(block_gate[gate.left], block_gate[gate.right]))
                    block_gate.append(len(gates) - 1)
        gate_of.append(len(gates) - 1)
    return CayleyCircuit(tuple(gates)), tuple(assignment)


def parse_slp(text: str) -> StraightLineProgram:
    """
    Parse an SLP file: `gen <element>`, `inv <p>` or `mul <p> <q>` per line, 1-based references.

    Raises:
        MalformedInput: If a line is not an item.
        InvalidReference: If an item refers to itself or a later item.
    """
    items: list[Item] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            match line.split():
                case ["gen", x]:
                    items.append(Gen(int(x)))
                case ["inv", p]:
                    items.append(Inv(int(p) - 1))
                case ["mul", p, q]:
                    items.append(Mul(int(p) - 1, int(q) - 1))
                case _:
                    raise MalformedInput(f"unknown item: {line!r}", lineno)
        except ValueError as e:
            raise MalformedInput(f"bad item: {line!r}", lineno) from e
    if not items:
        raise MalformedInput("program has no items")
    return StraightLineProgram(tuple(items))


def format_slp(slp: StraightLineProgram) -> str:
    lines: list[str] = []
    for item in slp.items:
        match item:
            case Gen(x):
                lines.append(f"gen {x}")
            case Inv(source):
                lines.append(f"inv {source + 1}")
            case Mul(left, right):
                lines.append(f"mul {left + 1} {right + 1}")
    return "\n".join(lines) + "\n"
