# coding: utf-8
"""Tests for Cantor normal form arithmetic."""
import random

import pytest

from hypothesis import given, settings
from hypothesis import strategies as st

from tamedynfw.core.ordinal import (
    OMEGA, ONE, ZERO, Order, Ordinal, OrdinalSyntaxError, Parity,
    add, cofinal_index, compare, difference, format_ordinal,
    fundamental_sequence, is_limit, parity, parse_ordinal, predecessor,
    split_limit_plus_finite, successor)


def below_omega_cubed(a, b, c):
    """w^2*a + w*b + c."""
    return add(add(Ordinal.omega_power(2, a), Ordinal.omega_power(1, b)), Ordinal.natural(c))


small_ordinals = st.builds(
    below_omega_cubed,
    st.integers(min_value=0, max_value=4),
    st.integers(min_value=0, max_value=4),
    st.integers(min_value=0, max_value=4))

nested_ordinals = st.recursive(
    st.integers(min_value=0, max_value=5).map(Ordinal.natural),
    lambda children: st.tuples(children, st.integers(min_value=1, max_value=3), children).map(
        lambda t: add(Ordinal.omega_power(t[0], t[1]), t[2])),
    max_leaves=6)


def to_pair(a):
    """Encode an ordinal below w*10 as (a, b) for w*a + b."""
    assert a < Ordinal.omega_power(1, 10)
    if a.is_natural:
        return (0, a.to_int())
    limit, n = split_limit_plus_finite(a)
    return (limit.terms[0][1], n)


def pair_add(x, y):
    """Order type of concatenating w*x0+x1 and w*y0+y1."""
    if y[0] > 0:
        return (x[0] + y[0], y[1])
    return (x[0], x[1] + y[1])


def pair_compare(x, y):
    return Order.EQ if x == y else (Order.LT if x < y else Order.GT)


def from_pair(x):
    return add(Ordinal.omega_power(1, x[0]), Ordinal.natural(x[1]))


@pytest.mark.parametrize("text, expected", [
    ("0", ZERO),
    ("w+3", add(OMEGA, Ordinal.natural(3))),
    ("w^2*2+w+1", Ordinal(((Ordinal.natural(2), 2), (ONE, 1), (ZERO, 1)))),
    ("w^(w+1)", Ordinal.omega_power(add(OMEGA, ONE))),
    (" w ^ 2 ", Ordinal.omega_power(2)),
])
def test_parse_ordinal(text, expected):
    assert parse_ordinal(text) == expected


def test_parse_normalizes_term_order():
    assert parse_ordinal("1+w") == OMEGA
    assert parse_ordinal("w+w^2") == Ordinal.omega_power(2)
    assert parse_ordinal("w+w") == Ordinal.omega_power(1, 2)


@pytest.mark.parametrize("text, position", [
    ("", 0),
    ("w+", 2),
    ("x", 0),
    ("w^(w+1", 6),
    ("w*", 2),
    ("3 4", 2),
    ("w^\u00b2", 2),
    ("\u0663", 0),
])
def test_parse_ordinal_syntax_error(text, position):
    with pytest.raises(OrdinalSyntaxError) as excinfo:
        parse_ordinal(text)
    assert excinfo.value.position == position
    assert isinstance(excinfo.value, ValueError)


@given(nested_ordinals)
@settings(max_examples=200)
def test_format_parse_round_trip(a):
    assert parse_ordinal(format_ordinal(a)) == a


def test_format_ordinal():
    assert format_ordinal(parse_ordinal("w^2*2+w+1")) == "w^2*2+w+1"
    assert format_ordinal(parse_ordinal("w^(w+1)*3+5")) == "w^(w+1)*3+5"
    assert str(ZERO) == "0"


@pytest.mark.parametrize("a, b, expected", [
    ("w*2", "w+5", Order.GT),
    ("w", "w", Order.EQ),
    ("w^2+1", "w^2+w", Order.LT),
    ("w^w", "w^100", Order.GT),
])
def test_compare(a, b, expected):
    assert compare(parse_ordinal(a), parse_ordinal(b)) == expected


@pytest.mark.parametrize("a, b, expected", [
    ("3", "w", "w"),
    ("w", "1", "w+1"),
    ("w*2+1", "w", "w*3"),
    ("w^2+w", "w^2", "w^2*2"),
])
def test_add(a, b, expected):
    assert add(parse_ordinal(a), parse_ordinal(b)) == parse_ordinal(expected)


@pytest.mark.parametrize("a, limit, n", [
    ("w+3", "w", 3),
    ("5", "0", 5),
    ("w^2*2", "w^2*2", 0),
])
def test_split_limit_plus_finite(a, limit, n):
    assert split_limit_plus_finite(parse_ordinal(a)) == (parse_ordinal(limit), n)


@pytest.mark.parametrize("a, expected", [
    ("0", Parity.EVEN),
    ("w", Parity.EVEN),
    ("w+3", Parity.ODD),
    ("w^2+w+2", Parity.EVEN),
])
def test_parity(a, expected):
    assert parity(parse_ordinal(a)) == expected


@pytest.mark.parametrize("g, n, expected", [
    ("w", 5, "5"),
    ("w*2", 3, "w+3"),
    ("w^2", 3, "w*4"),
    ("w^w", 2, "w^2"),
    ("w^2+w", 0, "w^2"),
])
def test_fundamental_sequence(g, n, expected):
    assert fundamental_sequence(parse_ordinal(g), n) == parse_ordinal(expected)


@pytest.mark.parametrize("g", ["0", "7", "w+1"])
def test_fundamental_sequence_requires_limit(g):
    with pytest.raises(ValueError):
        fundamental_sequence(parse_ordinal(g), 1)


def test_limit_and_predecessor():
    assert is_limit(parse_ordinal("w^2"))
    assert not is_limit(parse_ordinal("w+1"))
    assert not is_limit(ZERO)
    assert predecessor(parse_ordinal("w+1")) == OMEGA
    assert predecessor(parse_ordinal("w*2+2")) == parse_ordinal("w*2+1")
    for a in ("0", "w", "w^2*3"):
        with pytest.raises(ValueError):
            predecessor(parse_ordinal(a))


@given(small_ordinals, small_ordinals)
@settings(max_examples=300)
def test_difference(a, b):
    if a > b:
        a, b = b, a
    assert add(a, difference(a, b)) == b


@given(small_ordinals, small_ordinals, small_ordinals)
@settings(max_examples=300)
def test_compare_total_order(a, b, c):
    assert compare(a, b) == Order(-compare(b, a))
    if compare(a, b) == Order.EQ:
        assert a == b
    if a <= b and b <= c:
        assert a <= c


def test_random_triples_below_omega_cubed():
    rng = random.Random(0)

    def draw():
        return below_omega_cubed(rng.randint(0, 6), rng.randint(0, 6), rng.randint(0, 6))

    for _ in range(10000):
        a, b, c = draw(), draw(), draw()
        assert add(add(a, b), c) == add(a, add(b, c))
        if a < b and b < c:
            assert a < c
        assert (compare(a, b) == Order.EQ) == (compare(b, a) == Order.EQ)


@given(nested_ordinals, st.integers(min_value=1, max_value=4))
@settings(max_examples=200)
def test_absorption(a, c):
    lead = ZERO if a.is_zero else a.terms[0][0]
    head = Ordinal.omega_power(successor(lead), c)
    assert a < head
    assert add(a, head) == head


@given(nested_ordinals)
@settings(max_examples=200)
def test_parity_flips_under_successor(a):
    limit, n = split_limit_plus_finite(a)
    assert parity(a) == (Parity.EVEN if n % 2 == 0 else Parity.ODD)
    assert add(limit, Ordinal.natural(n)) == a
    assert limit.is_zero or is_limit(limit)
    assert parity(successor(a)) != parity(a)


def test_oracle_below_omega_times_ten():
    pairs = [(i, j) for i in range(10) for j in range(12)]
    for x in pairs:
        for y in pairs:
            a, b = from_pair(x), from_pair(y)
            assert compare(a, b) == pair_compare(x, y)
            s = pair_add(x, y)
            if s[0] < 10:
                assert to_pair(add(a, b)) == s


@pytest.mark.parametrize("g", ["w", "w*3", "w^2", "w^2*2+w", "w^2+w*2"])
def test_fundamental_sequence_is_cofinal(g):
    g = parse_ordinal(g)
    for n in range(6):
        assert fundamental_sequence(g, n) < fundamental_sequence(g, n + 1) < g
    for a in range(3):
        for b in range(4):
            for c in range(4):
                beta = below_omega_cubed(a, b, c)
                if beta < g:
                    n = cofinal_index(g, beta)
                    assert beta < fundamental_sequence(g, n)
                    assert n == 0 or not beta < fundamental_sequence(g, n - 1)


def test_equality_with_naturals():
    assert parse_ordinal("3") == 3
    assert hash(parse_ordinal("3")) == hash(3)
    assert {Ordinal.natural(2): 'x'}[2] == 'x'
