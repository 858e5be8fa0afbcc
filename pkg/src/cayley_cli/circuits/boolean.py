"""
Depth-2 Boolean simulation of Cayley circuits.

A circuit with m gates over semigroups of order N becomes one AND gate per guess
`(y_1, ..., y_m)` of all gate values and one OR gate per output bit. The input of the
netlist is the whole Cayley table followed by the circuit inputs, every element written
with `encoding_width(N)` bits, most significant bit first.
"""

from __future__ import annotations

import itertools
from collections.abc import Sequence
from dataclasses import dataclass

from cayley_cli.circuits.cayley import CayleyCircuit, Input, Mul
from cayley_cli.exception import (
    ArityMismatch,
    BudgetExceeded,
    ElementOutOfRange,
    MalformedInput,
)
from cayley_cli.utils.logging import logger

# (bit, polarity); (i, False) is the negated bit i
type Literal = tuple[int, bool]


def encoding_width(order: int) -> int:
    """Bits per element: `max(1, ceil(log2 N))`."""
    return max(1, (order - 1).bit_length())


def encode_element(value: int, width: int) -> tuple[int, ...]:
    return tuple((value >> (width - 1 - i)) & 1 for i in range(width))


@dataclass(frozen=True, slots=True)
class BooleanNetlist:
    """An AND layer over input literals feeding an OR layer, one OR gate per output bit."""

    input_bit_count: int
    and_gates: tuple[tuple[Literal, ...], ...]
    or_gates: tuple[tuple[int, ...], ...]
    order: int
    """N, the order of the semigroups the netlist simulates"""
    gate_count: int
    """m, the size of the compiled circuit"""
    input_count: int
    """k, the number of circuit inputs"""

    def __post_init__(self) -> None:
        for literals in self.and_gates:
            for bit, _ in literals:
                if not 0 <= bit < self.input_bit_count:
                    raise MalformedInput(f"literal {bit} is outside 0..{self.input_bit_count - 1}")
        for members in self.or_gates:
            for index in members:
                if not 0 <= index < len(self.and_gates):
                    raise MalformedInput(f"OR input {index} is not an AND gate")

    @property
    def size(self) -> int:
        """AND plus OR gates; NOT gates are free."""
        return len(self.and_gates) + len(self.or_gates)


def compile_to_boolean(
    circuit: CayleyCircuit, order: int, *, max_and_gates: int | None = None
) -> BooleanNetlist:
    """
    Compile a Cayley circuit for semigroups of order `order` into a depth-2 netlist.

    The AND gate for a guess `y` checks every input gate against its input bits and every
    product gate `Mul(l, r)` against the table entry `(y_l, y_r)`. Exactly one AND gate
    fires on a valid encoding. OR gate j collects the guesses whose output value has bit j
    set.

    Raises:
        BudgetExceeded: If `order ** m` exceeds `max_and_gates`.
    """
    m = circuit.size
    required = order**m
    if max_and_gates is not None and required > max_and_gates:
        raise BudgetExceeded("AND gates", required, max_and_gates)

    width = encoding_width(order)
    table_bits = order * order * width

    def equals(offset: int, value: int) -> list[Literal]:
        return [(offset + i, bool(bit)) for i, bit in enumerate(encode_element(value, width))]

    and_gates: list[tuple[Literal, ...]] = []
    or_gates: list[list[int]] = [[] for _ in range(width)]
    for guess in itertools.product(range(order), repeat=m):
        literals: list[Literal] = []
        next_input = 0
        for i, gate in enumerate(circuit.gates):
            match gate:
                case Input():
                    literals += equals(table_bits + next_input * width, guess[i])
                    next_input += 1
                case Mul(left, right):
                    entry = guess[left] * order + guess[right]
                    literals += equals(entry * width, guess[i])
        index = len(and_gates)
        and_gates.append(tuple(dict.fromkeys(literals)))
        for j, bit in enumerate(encode_element(guess[-1], width)):
            if bit:
                or_gates[j].append(index)

    logger.debug(
        "Compiled a {m}-gate circuit for order {n}: {ands} AND gates, {ors} OR gates",
        m=m,
        n=order,
        ands=len(and_gates),
        ors=width,
    )
    return BooleanNetlist(
        input_bit_count=table_bits + circuit.input_count * width,
        and_gates=tuple(and_gates),
        or_gates=tuple(tuple(members) for members in or_gates),
        order=order,
        gate_count=m,
        input_count=circuit.input_count,
    )


def firing_and_gates(netlist: BooleanNetlist, bits: Sequence[int]) -> list[int]:
    """Indices of the AND gates that evaluate to true."""
    if len(bits) != netlist.input_bit_count:
        raise ArityMismatch(netlist.input_bit_count, len(bits))
    return [
        index
        for index, literals in enumerate(netlist.and_gates)
        if all(bool(bits[bit]) == positive for bit, positive in literals)
    ]


def evaluate_netlist(netlist: BooleanNetlist, bits: Sequence[int]) -> tuple[int, ...]:
    """
    The output bits, most significant first.

    Raises:
        ArityMismatch: If the number of bits differs from the netlist's input width.
    """
    firing = set(firing_and_gates(netlist, bits))
    return tuple(int(any(index in firing for index in members)) for members in netlist.or_gates)


def encode_input(table_rows: Sequence[Sequence[int]], inputs: Sequence[int]) -> tuple[int, ...]:
    """
    The netlist input for a Cayley table (row-major) and the circuit inputs.

    Raises:
        ElementOutOfRange: If an input is not an element of the table.
    """
    order = len(table_rows)
    for value in inputs:
        if not 0 <= value < order:
            raise ElementOutOfRange(value, order)
    width = encoding_width(order)
    bits: list[int] = []
    for row in table_rows:
        for entry in row:
            bits.extend(encode_element(entry, width))
    for value in inputs:
        bits.extend(encode_element(value, width))
    return tuple(bits)


def decode_output(bits: Sequence[int]) -> int:
    value = 0
    for bit in bits:
        value = (value << 1) | int(bit)
    return value


def parse_netlist(text: str) -> BooleanNetlist:
    """
    Parse a netlist file.

    The header is `BSIM <input_bits> <n_and> <n_or> <N> <m> <k>`, followed by one
    `and +i -j ...` line per AND gate (0-based bits, `-` for a negated bit) and one
    `or a b ...` line per OR gate (0-based AND indices).

    Raises:
        MalformedInput: If the header, a gate line or the gate counts are wrong.
    """
    lines = [
        (lineno, line)
        for lineno, raw in enumerate(text.splitlines(), start=1)
        if (line := raw.split("#", 1)[0].strip())
    ]
    if not lines:
        raise MalformedInput("empty netlist")
    lineno, header = lines[0]
    match header.split():
        case ["BSIM", *numbers] if len(numbers) == 6:
            try:
                input_bits, n_and, n_or, order, m, k = (int(v) for v in numbers)
            except ValueError as e:
                raise MalformedInput("header values must be integers", lineno) from e
        case _:
            raise MalformedInput("expected 'BSIM <input_bits> <n_and> <n_or> <N> <m> <k>'", lineno)

    and_gates: list[tuple[Literal, ...]] = []
    or_gates: list[tuple[int, ...]] = []
    for lineno, line in lines[1:]:
        kind, *tokens = line.split()
        try:
            match kind:
                case "and" if not or_gates:
                    and_gates.append(tuple(_parse_literal(token) for token in tokens))
                case "or":
                    or_gates.append(tuple(int(token) for token in tokens))
                case _:
                    raise MalformedInput(f"unexpected line: {line!r}", lineno)
        except ValueError as e:
            raise MalformedInput(f"bad gate line: {line!r}", lineno) from e

    if len(and_gates) != n_and or len(or_gates) != n_or:
        raise MalformedInput(
            f"header declares {n_and} AND and {n_or} OR gates, "
            f"found {len(and_gates)} and {len(or_gates)}"
        )
    return BooleanNetlist(
        input_bit_count=input_bits,
        and_gates=tuple(and_gates),
        or_gates=tuple(or_gates),
        order=order,
        gate_count=m,
        input_count=k,
    )


def _parse_literal(token: str) -> Literal:
    if len(token) < 2 or token[0] not in "+-":
        raise ValueError(token)
    return int(token[1:]), token[0] == "+"


def format_netlist(netlist: BooleanNetlist) -> str:
    lines = [
        " ".join(
            str(v)
            for v in (
                "BSIM",
                netlist.input_bit_count,
                len(netlist.and_gates),
                len(netlist.or_gates),
                netlist.order,
                netlist.gate_count,
                netlist.input_count,
            )
        )
    ]
    for literals in netlist.and_gates:
        lines.append(" ".join(["and", *(f"{'+' if pos else '-'}{bit}" for bit, pos in literals)]))
    for members in netlist.or_gates:
        lines.append(" ".join(["or", *(str(index) for index in members)]))
    return "\n".join(lines) + "\n"
