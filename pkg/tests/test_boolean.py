from __future__ import annotations

import itertools

import pytest
from inline_snapshot import snapshot

from cayley_cli.algebra.zoo import associative_tables, cyclic_group
from cayley_cli.circuits.boolean import (
    BooleanNetlist,
    compile_to_boolean,
    decode_output,
    encode_element,
    encode_input,
    encoding_width,
    evaluate_netlist,
    firing_and_gates,
    format_netlist,
    parse_netlist,
)
from cayley_cli.circuits.cayley import INPUT, CayleyCircuit, Mul, evaluate, iter_circuits
from cayley_cli.exception import ArityMismatch, BudgetExceeded, ElementOutOfRange, MalformedInput

IDENTITY = CayleyCircuit((INPUT,))
SQUARE = CayleyCircuit((INPUT, Mul(0, 0)))
SUM = CayleyCircuit((INPUT, INPUT, Mul(0, 1)))


def run(netlist: BooleanNetlist, rows, inputs) -> int:
    return decode_output(evaluate_netlist(netlist, encode_input(rows, inputs)))


def test_encoding_width():
    assert [encoding_width(n) for n in (1, 2, 3, 4, 5, 8, 9)] == [1, 1, 2, 2, 3, 3, 4]
    assert encode_element(2, 2) == (1, 0)
    assert encode_element(5, 3) == (1, 0, 1)


def test_encode_input_rejects_non_elements():
    with pytest.raises(ElementOutOfRange) as exc_info:
        encode_input(cyclic_group(3).rows, [1, 3])
    assert str(exc_info.value) == snapshot("Element 3 is outside 0..2")
    with pytest.raises(ElementOutOfRange):
        encode_input(cyclic_group(3).rows, [-1])


def test_identity_circuit():
    netlist = compile_to_boolean(IDENTITY, 2)
    assert len(netlist.and_gates) == 2
    assert len(netlist.or_gates) == 1
    for s in associative_tables(2):
        for x in (0, 1):
            assert run(netlist, s.rows, [x]) == x


def test_square_over_z2():
    netlist = compile_to_boolean(SQUARE, 2)
    assert run(netlist, cyclic_group(2).rows, [1]) == 0


def test_sum_over_z3():
    netlist = compile_to_boolean(SUM, 3)
    assert len(netlist.and_gates) == 27
    assert netlist.input_bit_count == 9 * 2 + 2 * 2
    assert run(netlist, cyclic_group(3).rows, [1, 2]) == 0


def test_exactly_one_and_gate_fires_on_valid_encodings():
    netlist = compile_to_boolean(SUM, 3)
    for x, y in itertools.product(range(3), repeat=2):
        bits = encode_input(cyclic_group(3).rows, [x, y])
        assert len(firing_and_gates(netlist, bits)) == 1


def test_no_and_gate_fires_outside_the_encoding():
    netlist = compile_to_boolean(SQUARE, 3)
    # every entry and the input read as 3, which no guess uses
    bits = [1] * netlist.input_bit_count
    assert firing_and_gates(netlist, bits) == []
    assert evaluate_netlist(netlist, bits) == (0, 0)


@pytest.mark.parametrize("order", [1, 2])
def test_netlists_agree_with_direct_evaluation(order: int):
    tables = list(associative_tables(order))
    for circuit in iter_circuits(3):
        netlist = compile_to_boolean(circuit, order)
        assert len(netlist.and_gates) == order**circuit.size
        for s in tables:
            for inputs in itertools.product(range(order), repeat=circuit.input_count):
                bits = encode_input(s.rows, inputs)
                assert run(netlist, s.rows, inputs) == evaluate(circuit, s, inputs)
                assert netlist.size <= len(bits) ** circuit.size


def test_evaluate_netlist_arity():
    netlist = compile_to_boolean(IDENTITY, 2)
    with pytest.raises(ArityMismatch):
        evaluate_netlist(netlist, [0, 1])


def test_budget():
    with pytest.raises(BudgetExceeded) as exc_info:
        compile_to_boolean(CayleyCircuit((INPUT, Mul(0, 0), Mul(1, 1))), 3, max_and_gates=10)
    assert str(exc_info.value) == snapshot("Too many AND gates: 27 exceeds the budget of 10")


def test_format_netlist():
    netlist = compile_to_boolean(IDENTITY, 2)
    text = format_netlist(netlist)
    assert text == snapshot(
        """\
BSIM 5 2 1 2 1 1
and -4
and +4
or 1
"""
    )
    assert parse_netlist(text) == netlist


def test_format_netlist_round_trip_for_products():
    netlist = compile_to_boolean(SUM, 3)
    assert parse_netlist(format_netlist(netlist)) == netlist


def test_parse_netlist_errors():
    with pytest.raises(MalformedInput):
        parse_netlist("")
    with pytest.raises(MalformedInput):
        parse_netlist("NETLIST 5 2 1 2 1 1\n")
    with pytest.raises(MalformedInput) as exc_info:
        parse_netlist("BSIM 5 2 1 2 1 1\nand -4\nor 1\n")
    assert str(exc_info.value) == snapshot(
        "header declares 2 AND and 1 OR gates, found 1 and 1"
    )
    with pytest.raises(MalformedInput):
        parse_netlist("BSIM 5 1 1 2 1 1\nand 4\nor 0\n")
    with pytest.raises(MalformedInput):
        # AND gates must come before OR gates
        parse_netlist("BSIM 5 1 1 2 1 1\nor 0\nand +4\n")
    with pytest.raises(MalformedInput) as exc_info:
        parse_netlist("BSIM 5 1 1 2 1 1\nand +7\nor 0\n")
    assert str(exc_info.value) == snapshot("literal 7 is outside 0..4")
