from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st
from inline_snapshot import snapshot

from cayley_cli.algebra.classify import find_identity, is_group
from cayley_cli.algebra.closure import closure
from cayley_cli.algebra.semigroup import (
    MembershipInstance,
    Semigroup,
    adjoin_identity,
    direct_product,
    element_index_period,
    find_associativity_violation,
    format_instance,
    format_semigroup,
    is_associative,
    normalize_exponent,
    parse_instance,
    parse_semigroup,
)
from cayley_cli.algebra.zoo import (
    cyclic_group,
    left_zero,
    null_semigroup,
    small_corpus,
    trivial,
)
from cayley_cli.exception import EntryOutOfRange, MalformedInput, NotAssociative

CORPUS = list(small_corpus().values())


def test_parse_cyclic_group():
    s = parse_semigroup("3\n0 1 2\n1 2 0\n2 0 1")
    assert s == cyclic_group(3)
    assert s.order == 3
    assert s.mul(2, 2) == 1


def test_parse_left_zero():
    assert parse_semigroup("2\n0 0\n1 1") == left_zero(2)


def test_parse_ignores_comments_and_blank_lines():
    text = "# Z2\n2\n\n0 1  # first row\n1 0\n"
    assert parse_semigroup(text) == cyclic_group(2)


def test_parse_rejects_non_associative_table():
    with pytest.raises(NotAssociative) as exc_info:
        parse_semigroup("2\n1 0\n0 0")
    assert exc_info.value.triple == (0, 0, 1)
    assert str(exc_info.value) == snapshot("Table is not associative: (a, b, c) = (0, 0, 1)")


def test_parse_rejects_entry_out_of_range():
    with pytest.raises(EntryOutOfRange) as exc_info:
        parse_semigroup("2\n0 2\n1 1")
    assert str(exc_info.value) == snapshot("Table entry (0, 1) = 2 is outside 0..1")


def test_parse_rejects_malformed_tables():
    with pytest.raises(MalformedInput) as exc_info:
        parse_semigroup("2\n0 1")
    assert str(exc_info.value) == snapshot("expected 2 table rows, got 1")

    with pytest.raises(MalformedInput) as exc_info:
        parse_semigroup("2\n0 1 1\n1 0")
    assert exc_info.value.line == 2
    assert str(exc_info.value) == snapshot("line 2: expected 2 entries, got 3")

    with pytest.raises(MalformedInput):
        parse_semigroup("2\n0 x\n1 0")

    with pytest.raises(MalformedInput):
        parse_semigroup("")


def test_semigroup_rejects_non_square_arrays():
    with pytest.raises(MalformedInput) as exc_info:
        Semigroup([[0, 0, 0], [0, 0, 0]])
    assert str(exc_info.value) == snapshot(
        "Cayley table must be a nonempty square array, got (2, 3)"
    )


def test_table_is_read_only(z3: Semigroup):
    with pytest.raises(ValueError):
        z3.table[0, 0] = 1


def test_find_associativity_violation():
    assert find_associativity_violation(cyclic_group(4).table) is None
    assert is_associative([[1, 0], [0, 0]]) is False


def test_format_semigroup(z3: Semigroup):
    assert format_semigroup(z3) == snapshot("3\n0 1 2\n1 2 0\n2 0 1\n")
    assert parse_semigroup(format_semigroup(z3)) == z3


def test_parse_instance(z6: Semigroup):
    text = format_semigroup(z6) + "X 2\nt 4\n"
    instance = parse_instance(text)
    assert instance == MembershipInstance(z6, frozenset({2}), 4)
    assert format_instance(instance) == text


def test_parse_instance_with_empty_generating_set(z3: Semigroup):
    instance = parse_instance(format_semigroup(z3) + "X\nt 0\n")
    assert instance.generators == frozenset()
    assert format_instance(instance).endswith("X\nt 0\n")


def test_parse_instance_rejects_bad_lines(z3: Semigroup):
    with pytest.raises(MalformedInput):
        parse_instance(format_semigroup(z3) + "t 0\n")
    with pytest.raises(MalformedInput):
        parse_instance(format_semigroup(z3) + "Y 1\nt 0\n")
    with pytest.raises(MalformedInput) as exc_info:
        parse_instance(format_semigroup(z3) + "X 1\nt 5\n")
    assert str(exc_info.value) == snapshot("Target 5 is outside 0..2")


def test_direct_product_of_z2_and_z3_is_cyclic():
    product = direct_product(cyclic_group(2), cyclic_group(3))
    assert product.order == 6
    assert is_group(product)
    # (1, 1) is encoded as 1 * 3 + 1
    members, _ = closure(product, [4])
    assert len(members) == 6


def test_direct_product_of_l2_and_n2():
    product = direct_product(left_zero(2), null_semigroup(2))
    assert product.order == 4
    assert is_associative(product.table)


def test_direct_product_with_trivial(z6: Semigroup):
    assert direct_product(z6, trivial()) == z6


def test_adjoin_identity(n2: Semigroup):
    s1 = adjoin_identity(n2)
    assert s1.order == 3
    assert find_identity(s1) == 2
    assert s1.rows[:2] == ((0, 0, 0), (0, 0, 1))
    assert is_associative(s1.table)


def test_power(z6: Semigroup):
    assert z6.power(2, 1) == 2
    assert z6.power(2, 5) == 4
    assert z6.product([1, 2, 3]) == 0


def test_element_index_period(z6: Semigroup, n2: Semigroup):
    assert element_index_period(z6, 2) == (1, 3)
    assert element_index_period(z6, 0) == (1, 1)
    assert element_index_period(n2, 1) == (2, 1)


def test_normalize_exponent():
    assert normalize_exponent(2, 1, 3) == 2
    assert normalize_exponent(7, 1, 3) == 1
    assert normalize_exponent(5, 2, 1) == 2


@given(st.sampled_from(CORPUS), st.data())
def test_power_matches_iterated_product(s: Semigroup, data: st.DataObject):
    x = data.draw(st.sampled_from(list(s.elements)))
    e = data.draw(st.integers(min_value=1, max_value=40))
    assert s.power(x, e) == s.product([x] * e)
    r, p = element_index_period(s, x)
    assert s.power(x, normalize_exponent(e, r, p)) == s.power(x, e)
