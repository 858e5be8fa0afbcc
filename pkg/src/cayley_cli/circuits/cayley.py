from __future__ import annotations

import itertools
from collections.abc import Callable, Iterator, Sequence
from dataclasses import dataclass
from functools import cached_property
from typing import TYPE_CHECKING

from cayley_cli.exception import (
    ArityMismatch,
    EmptySequence,
    InvalidExponent,
    InvalidReference,
    MalformedInput,
)

if TYPE_CHECKING:
    from cayley_cli.algebra.semigroup import Semigroup


@dataclass(frozen=True, slots=True)
class Input:
    """An input gate; the i-th input gate takes the i-th input value."""


@dataclass(frozen=True, slots=True)
class Mul:
    """A product gate over two earlier gates. `left == right` is a squaring (multi-edge)."""

    left: int
    right: int


type Gate = Input | Mul

INPUT = Input()


@dataclass(frozen=True)
class CayleyCircuit:
    """
    A topologically ordered list of input and product gates.

    Gate indices are 0-based; every product gate refers to strictly smaller indices and the
    output is the last gate.
    """

    gates: tuple[Gate, ...]

    def __post_init__(self) -> None:
        if not self.gates:
            raise EmptySequence("gates")
        for i, gate in enumerate(self.gates):
            if isinstance(gate, Mul):
                for ref in (gate.left, gate.right):
                    if not 0 <= ref < i:
                        raise InvalidReference(ref, i)

    @property
    def size(self) -> int:
        return len(self.gates)

    @cached_property
    def input_count(self) -> int:
        return sum(1 for gate in self.gates if isinstance(gate, Input))

    @property
    def output(self) -> int:
        return len(self.gates) - 1

    def values(self, s: Semigroup, inputs: Sequence[int]) -> list[int]:
        """The value of every gate."""
        if len(inputs) != self.input_count:
            raise ArityMismatch(self.input_count, len(inputs))
        feed = iter(inputs)
        values: list[int] = []
        for gate in self.gates:
            match gate:
                case Input():
                    values.append(next(feed))
                case Mul(left, right):
                    values.append(s.mul(values[left], values[right]))
        return values


def evaluate(circuit: CayleyCircuit, s: Semigroup, inputs: Sequence[int]) -> int:
    """
    The value of the circuit under the semigroup `s` and the input values.

    Raises:
        ArityMismatch: If the number of inputs differs from the number of input gates.
    """
    return circuit.values(s, inputs)[-1]


def power_circuit_size(e: int) -> int:
    """Size of `power_circuit(e)`: one gate per bit after the first, one per extra set bit."""
    if e < 1:
        raise InvalidExponent(e)
    return e.bit_length() + e.bit_count() - 1


def power_circuit(e: int) -> CayleyCircuit:
    """
    A circuit computing `x ** e` from a single input x.

    Even e squares the circuit for e / 2; odd e multiplies the circuit for e - 1 by the input
    gate. The size is 1 for e = 1 and at most 2 * ceil(log2 e) otherwise.

    Raises:
        InvalidExponent: If e < 1.
    """
    if e < 1:
        raise InvalidExponent(e)
    steps: list[bool] = []  # True: square, False: multiply by the input
    while e > 1:
        if e % 2 == 0:
            steps.append(True)
            e //= 2
        else:
            steps.append(False)
            e -= 1
    gates: list[Gate] = [INPUT]
    for square in reversed(steps):
        last = len(gates) - 1
        gates.append(Mul(last, last) if square else Mul(last, 0))
    return CayleyCircuit(tuple(gates))


def _shift(gate: Gate, offset: int) -> Gate:
    match gate:
        case Input():
            return gate
        case Mul(left, right):
            return Mul(left + offset, right + offset)


def chain_product(circuits: Sequence[CayleyCircuit]) -> CayleyCircuit:
    """
    The left-to-right product of the circuits' values, with one extra gate per extra circuit.

    Each circuit is followed immediately by the product gate folding its output into the
    running product. The width of the ordering is then at most the larger of 2 and one more
    than the widest member. Inputs keep their order.

    Raises:
        EmptySequence: If no circuit is given.
    """
    if not circuits:
        raise EmptySequence()
    gates: list[Gate] = []
    acc: int | None = None
    for circuit in circuits:
        offset = len(gates)
        gates.extend(_shift(gate, offset) for gate in circuit.gates)
        out = offset + circuit.output
        if acc is None:
            acc = out
        else:
            gates.append(Mul(acc, out))
            acc = len(gates) - 1
    return CayleyCircuit(tuple(gates))


def ordering_width(circuit: CayleyCircuit) -> int:
    """
    Width of the stored gate order: the maximum, over the cuts after gates 1..m-1, of the
    number of product gates before the cut that feed a gate after it.
    """
    last_use = [-1] * circuit.size
    for i, gate in enumerate(circuit.gates):
        if isinstance(gate, Mul):
            last_use[gate.left] = max(last_use[gate.left], i)
            last_use[gate.right] = max(last_use[gate.right], i)
    width = 0
    for cut in range(1, circuit.size):
        crossing = sum(
            1
            for g in range(cut)
            if isinstance(circuit.gates[g], Mul) and last_use[g] >= cut
        )
        width = max(width, crossing)
    return width


def circuit_count(max_size: int) -> int:
    """Number of raw gate lists of size at most `max_size`."""
    total, running = 0, 1
    for i in range(1, max_size + 1):
        running *= 1 + (i - 1) ** 2
        total += running
    return total


def gate_options(i: int) -> list[Gate]:
    """The choices for gate i, in enumeration order: input first, then products."""
    return [INPUT, *(Mul(left, right) for left in range(i) for right in range(i))]


def iter_circuits(max_size: int) -> Iterator[CayleyCircuit]:
    """Every gate list of size at most `max_size`, by size and then lexicographically."""
    for size in range(1, max_size + 1):
        for gates in itertools.product(*(gate_options(i) for i in range(size))):
            yield CayleyCircuit(gates)


def enumerate_circuits(max_size: int, on_each: Callable[[CayleyCircuit], None]) -> int:
    """Call `on_each` for every circuit of size at most `max_size`; return the count."""
    count = 0
    for circuit in iter_circuits(max_size):
        on_each(circuit)
        count += 1
    return count


def parse_circuit(text: str) -> CayleyCircuit:
    """
    Parse a circuit file: one gate per line, `in` or `mul L R` with 1-based references.

    Raises:
        MalformedInput: If a line is not a gate.
        InvalidReference: If a product gate refers to itself or a later gate.
    """
    gates: list[Gate] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        match line.split():
            case ["in"]:
                gates.append(INPUT)
            case ["mul", left, right]:
                try:
                    gates.append(Mul(int(left) - 1, int(right) - 1))
                except ValueError as e:
                    raise MalformedInput(f"bad gate references: {line!r}", lineno) from e
            case _:
                raise MalformedInput(f"unknown gate: {line!r}", lineno)
    if not gates:
        raise MalformedInput("circuit has no gates")
    return CayleyCircuit(tuple(gates))


def format_circuit(circuit: CayleyCircuit) -> str:
    lines: list[str] = []
    for gate in circuit.gates:
        match gate:
            case Input():
                lines.append("in")
            case Mul(left, right):
                lines.append(f"mul {left + 1} {right + 1}")
    return "\n".join(lines) + "\n"
