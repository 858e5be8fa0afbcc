from __future__ import annotations

import math

import pytest
from hypothesis import given
from hypothesis import strategies as st
from inline_snapshot import snapshot

from cayley_cli.algebra.classify import find_identity
from cayley_cli.algebra.semigroup import Semigroup
from cayley_cli.algebra.zoo import cyclic_generating_sets, cyclic_group, named_groups
from cayley_cli.circuits.cayley import INPUT, CayleyCircuit, Mul, evaluate, power_circuit
from cayley_cli.exception import InvalidReference, MalformedInput, NotAGroup, TargetNotGenerated
from cayley_cli.membership import slp
from cayley_cli.membership.slp import (
    Gen,
    Inv,
    StraightLineProgram,
    evaluate_slp,
    format_slp,
    parse_slp,
    prune_slp,
    slp_reachability,
    slp_to_circuit,
)

Z8_SEVEN = StraightLineProgram(
    (Gen(1), slp.Mul(0, 0), slp.Mul(1, 1), slp.Mul(2, 1), slp.Mul(3, 0))
)


def _groups() -> list[tuple[str, Semigroup, list[frozenset[int]]]]:
    groups = [(f"Z{n}", cyclic_group(n), cyclic_generating_sets(n)) for n in range(2, 33)]
    groups.extend((name, g, sets) for name, (g, sets) in named_groups().items())
    return groups


def test_evaluate_slp():
    z5 = cyclic_group(5)
    assert evaluate_slp(z5, StraightLineProgram((Gen(1), Inv(0)))) == (1, 4)
    assert evaluate_slp(z5, StraightLineProgram((Gen(1), slp.Mul(0, 0)))) == (1, 2)
    assert evaluate_slp(cyclic_group(8), Z8_SEVEN) == (1, 2, 4, 6, 7)


def test_evaluate_slp_rejects_non_groups(n2: Semigroup):
    with pytest.raises(NotAGroup):
        evaluate_slp(n2, StraightLineProgram((Gen(1),)))


def test_program_validation():
    with pytest.raises(InvalidReference):
        StraightLineProgram((Gen(1), Inv(1)))
    with pytest.raises(InvalidReference):
        StraightLineProgram((slp.Mul(0, 0),))


def test_reachability_in_z8():
    z8 = cyclic_group(8)
    result = slp_reachability(z8, {1}, 7)
    assert result.bound == 16
    assert result.within_bound
    assert evaluate_slp(z8, result.program)[-1] == 7


def test_reachability_of_a_generator(z6: Semigroup):
    result = slp_reachability(z6, {1, 5}, 5)
    assert result.program == StraightLineProgram((Gen(5),))
    assert result.length == 1


def test_reachability_of_the_identity_in_s3(s3: tuple[Semigroup, list[tuple[int, ...]]]):
    g, perms = s3
    generators = {perms.index((1, 2, 0)), perms.index((1, 0, 2))}
    identity = find_identity(g)
    assert identity is not None
    result = slp_reachability(g, generators, identity)
    assert result.length < 13
    assert evaluate_slp(g, result.program)[-1] == identity


def test_reachability_of_non_members(z6: Semigroup, n2: Semigroup):
    with pytest.raises(TargetNotGenerated):
        slp_reachability(z6, {2}, 3)
    with pytest.raises(TargetNotGenerated):
        slp_reachability(z6, set(), 0)
    with pytest.raises(NotAGroup):
        slp_reachability(n2, {1}, 0)


@pytest.mark.parametrize(
    ("g", "xs"),
    [
        (cyclic_group(32), cyclic_generating_sets(32)[2]),
        (named_groups()["S4"][0], named_groups()["S4"][1][1]),
        (named_groups()["Q8"][0], named_groups()["Q8"][1][0]),
    ],
)
def test_doubling_is_deterministic_and_short(g: Semigroup, xs: frozenset[int]):
    for t in g.elements:
        first = slp_reachability(g, xs, t)
        assert slp_reachability(g, xs, t) == first
        assert first.cube_dimension <= math.log2(g.order)
        assert first.within_bound


def test_reachability_decides_membership(z6: Semigroup):
    for t in (0, 2, 4):
        assert evaluate_slp(z6, slp_reachability(z6, {2}, t).program)[-1] == t
    for t in (1, 3, 5):
        with pytest.raises(TargetNotGenerated):
            slp_reachability(z6, {2}, t)


@pytest.mark.parametrize(
    ("name", "g", "generating_sets"), _groups(), ids=[name for name, _, _ in _groups()]
)
def test_group_pipeline(name: str, g: Semigroup, generating_sets: list[frozenset[int]]):
    circuit_bound = 2 * (math.log2(g.order) + 1) ** 3
    for xs in generating_sets:
        for t in g.elements:
            result = slp_reachability(g, xs, t)
            assert result.within_bound, (name, sorted(xs), t)
            assert evaluate_slp(g, result.program)[-1] == t
            circuit, assignment = slp_to_circuit(result.program, g.order)
            assert circuit.size <= circuit_bound
            assert evaluate(circuit, g, assignment) == t
            assert set(assignment) <= xs


@pytest.mark.parametrize(
    ("name", "g"), [(name, g) for name, g, _ in _groups()], ids=[name for name, _, _ in _groups()]
)
def test_inverse_block_inverts(name: str, g: Semigroup):
    identity = find_identity(g)
    block = power_circuit(g.order - 1)
    for x in g.elements:
        assert g.mul(evaluate(block, g, [x]), x) == identity, (name, x)


@st.composite
def _programs(draw: st.DrawFn, order: int) -> StraightLineProgram:
    elements = st.integers(0, order - 1)
    items: list[slp.Item] = [Gen(draw(elements))]
    for _ in range(draw(st.integers(0, 11))):
        earlier = st.integers(0, len(items) - 1)
        items.append(
            draw(
                st.one_of(
                    st.builds(Gen, elements),
                    st.builds(Inv, earlier),
                    st.builds(slp.Mul, earlier, earlier),
                )
            )
        )
    return StraightLineProgram(tuple(items))


@given(st.sampled_from([g for _, g, _ in _groups()]), st.data())
def test_compiled_programs_agree(g: Semigroup, data: st.DataObject):
    program = data.draw(_programs(g.order))
    circuit, assignment = slp_to_circuit(program, g.order)
    assert evaluate(circuit, g, assignment) == evaluate_slp(g, program)[-1]
    assert set(assignment) <= {item.element for item in program.items if isinstance(item, Gen)}


def test_slp_to_circuit_inverse_block():
    z5 = cyclic_group(5)
    circuit, assignment = slp_to_circuit(StraightLineProgram((Gen(1), Inv(0))), 5)
    assert circuit == CayleyCircuit((INPUT, Mul(0, 0), Mul(1, 1)))
    assert assignment == (1,)
    assert evaluate(circuit, z5, assignment) == 4


def test_slp_to_circuit_in_order_two():
    circuit, assignment = slp_to_circuit(StraightLineProgram((Gen(1), Inv(0))), 2)
    assert circuit == CayleyCircuit((INPUT,))
    assert evaluate(circuit, cyclic_group(2), assignment) == 1


def test_slp_to_circuit_structural():
    circuit, assignment = slp_to_circuit(StraightLineProgram((Gen(3),)), 6)
    assert circuit == CayleyCircuit((INPUT,))
    assert assignment == (3,)

    circuit, assignment = slp_to_circuit(Z8_SEVEN, 8)
    assert circuit.size == 5
    assert evaluate(circuit, cyclic_group(8), assignment) == 7


def test_prune_slp():
    program = StraightLineProgram((Gen(1), Gen(2), slp.Mul(0, 0)))
    assert prune_slp(program) == StraightLineProgram((Gen(1), slp.Mul(0, 0)))
    assert prune_slp(Z8_SEVEN) == Z8_SEVEN


def test_parse_and_format_slp():
    assert format_slp(Z8_SEVEN) == snapshot(
        """\
gen 1
mul 1 1
mul 2 2
mul 3 2
mul 4 1
"""
    )
    assert parse_slp(format_slp(Z8_SEVEN)) == Z8_SEVEN
    assert parse_slp("gen 1\ninv 1  # inverse\n") == StraightLineProgram((Gen(1), Inv(0)))


def test_parse_slp_errors():
    with pytest.raises(MalformedInput):
        parse_slp("")
    with pytest.raises(MalformedInput) as exc_info:
        parse_slp("gen 1\npow 1 2\n")
    assert str(exc_info.value) == snapshot("line 2: unknown item: 'pow 1 2'")
    with pytest.raises(MalformedInput):
        parse_slp("gen x\n")
    with pytest.raises(InvalidReference):
        parse_slp("gen 1\nmul 1 3\n")
