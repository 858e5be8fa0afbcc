from __future__ import annotations

import operator

import pytest
from hypothesis import given
from hypothesis import strategies as st
from sympy.combinatorics import Permutation

from cayley_cli.algebra.closure import (
    Generator,
    Product,
    closure,
    derivation_circuit,
    generate,
    is_member,
    replay,
    right_closure,
)
from cayley_cli.algebra.semigroup import MembershipInstance, Semigroup
from cayley_cli.algebra.zoo import small_corpus, symmetric_group
from cayley_cli.circuits.cayley import INPUT, CayleyCircuit, Mul, evaluate
from cayley_cli.exception import TargetNotGenerated, WitnessTooLarge

CORPUS = list(small_corpus().values())


def test_closure_of_cyclic_subgroup(z6: Semigroup):
    members, _ = closure(z6, [2])
    assert members == {0, 2, 4}


def test_closure_of_empty_set(z6: Semigroup):
    members, derivations = closure(z6, [])
    assert members == frozenset()
    assert derivations == {}


def test_closure_of_generator(z3: Semigroup):
    members, _ = closure(z3, [1])
    assert members == {0, 1, 2}


def test_derivations_are_in_derivation_order(z6: Semigroup):
    _, derivations = closure(z6, [2])
    assert derivations == {2: Generator(2), 4: Product(2, 2), 0: Product(4, 2)}
    assert list(derivations) == [2, 4, 0]


def test_is_member(z6: Semigroup):
    member, derivations = is_member(MembershipInstance(z6, frozenset({2}), 4))
    assert member
    assert derivations is not None
    assert replay(z6, derivations, 4) == 4

    member, derivations = is_member(MembershipInstance(z6, frozenset({2}), 3))
    assert not member
    assert derivations is None


def test_generator_is_a_member(z6: Semigroup):
    for t in z6.elements:
        member, _ = is_member(MembershipInstance(z6, frozenset({t}), t))
        assert member


def test_derivation_circuit(z6: Semigroup):
    _, derivations = closure(z6, [2])
    circuit, assignment = derivation_circuit(derivations, 0)
    assert circuit == CayleyCircuit((INPUT, Mul(0, 0), Mul(1, 0)))
    assert assignment == (2,)
    assert evaluate(circuit, z6, assignment) == 0


def test_derivation_circuit_of_non_member(z6: Semigroup):
    _, derivations = closure(z6, [2])
    with pytest.raises(TargetNotGenerated):
        derivation_circuit(derivations, 3)


def test_generate_limit(z6: Semigroup):
    with pytest.raises(WitnessTooLarge) as exc_info:
        generate([1], z6.mul, limit=3)
    assert exc_info.value.cap == 3


def test_right_closure_matches_generate(s3: tuple[Semigroup, list[tuple[int, ...]]]):
    _, perms = s3
    generators = [Permutation([1, 0, 2]), Permutation([1, 2, 0])]
    members = right_closure(generators, operator.mul)
    assert set(members) == set(generate(generators, operator.mul))
    assert {tuple(p.array_form) for p in members} == set(perms)


def test_right_closure_limit():
    with pytest.raises(WitnessTooLarge):
        right_closure([Permutation([1, 0, 2]), Permutation([1, 2, 0])], operator.mul, limit=4)


@given(st.sampled_from(CORPUS), st.data())
def test_closure_is_closed_and_replays(s: Semigroup, data: st.DataObject):
    xs = data.draw(st.sets(st.sampled_from(list(s.elements)), min_size=1, max_size=3))
    members, derivations = closure(s, xs)
    assert xs <= members
    for a in members:
        for b in members:
            assert s.mul(a, b) in members
    for t in members:
        assert replay(s, derivations, t) == t
        circuit, assignment = derivation_circuit(derivations, t)
        assert evaluate(circuit, s, assignment) == t
        assert set(assignment) <= xs


@given(st.sampled_from(CORPUS), st.data())
def test_closure_is_a_monotone_fixpoint(s: Semigroup, data: st.DataObject):
    elements = st.sampled_from(list(s.elements))
    xs = data.draw(st.sets(elements, max_size=3))
    ys = xs | data.draw(st.sets(elements, max_size=2))
    members, _ = closure(s, xs)
    assert closure(s, members)[0] == members
    assert members <= closure(s, ys)[0]


def test_symmetric_group_generators_generate_everything():
    s, perms = symmetric_group(3)
    members, _ = closure(s, [perms.index((1, 0, 2)), perms.index((1, 2, 0))])
    assert len(members) == 6
