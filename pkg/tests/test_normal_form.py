import pytest
from hypothesis import given, settings, strategies as st

from amalgam.errors import ParamMismatch
from amalgam.normal_form import (
    element_order, from_text, generator, identity, invert, power, reduce, render,
    syllable_length,
)
from amalgam.presentation import RawWord, parse_params

from oracles import sign_class, text_matrix, word_matrix

TRIPLES = [(4, 6, 2), (2, 3, 1), (6, 9, 3), (8, 12, 4), (6, 4, 2), (12, 18, 6)]

letters = st.lists(st.tuples(st.sampled_from("st"), st.integers(-40, 40)), max_size=10)


def nf(params, seq):
    return reduce(RawWord(tuple(seq)), params)


@pytest.mark.parametrize("text, expected", [
    ("s^2 t^-3", "1"),
    ("s^4", "1"),
    ("t^6", "1"),
    ("s^3", "r s"),
    ("t^-1", "r t^2"),
    ("s t s^-1", "r s t s"),
    ("t s t s", "t s t s"),
    ("r", "r"),
    ("r^3", "r"),
    ("s^2 t s^2", "t"),
    ("", "1"),
])
def test_sl2_examples(sl2, text, expected):
    assert render(from_text(text, sl2)) == expected


def test_sl2_examples_agree_with_matrices(sl2):
    for text in ["s^2 t^-3", "s^3", "t^-1", "s t s^-1", "t s t s", "s^2 t s^2"]:
        assert text_matrix(text, sl2) == text_matrix(render(from_text(text, sl2)), sl2)


@pytest.mark.parametrize("text, expected", [
    ("s^2", "1"), ("t^3", "1"), ("s t s t s t", "s t s t s t"), ("s^-1 t^-1", "s t^2"),
])
def test_psl2_examples(psl2, text, expected):
    assert render(from_text(text, psl2)) == expected


def test_generators_have_expected_orders(params):
    assert element_order(generator(params, "s")) == params.m
    assert element_order(generator(params, "t")) == params.n
    assert element_order(generator(params, "r")) == params.d


def test_mixed_product_has_infinite_order(params):
    assert element_order(from_text("s t", params), limit=200) is None


def test_param_mismatch(sl2, psl2):
    with pytest.raises(ParamMismatch):
        generator(sl2, "s") * generator(psl2, "s")


@pytest.mark.parametrize("triple", TRIPLES)
@settings(max_examples=60)
@given(a=letters, b=letters, c=letters)
def test_group_axioms(triple, a, b, c):
    p = parse_params(*triple)
    x, y, z = nf(p, a), nf(p, b), nf(p, c)
    assert (x * y) * z == x * (y * z)
    assert x * ~x == identity(p) == ~x * x
    assert x * identity(p) == x
    assert invert(invert(x)) == x
    assert nf(p, a + b) == x * y


@pytest.mark.parametrize("triple", TRIPLES)
@given(a=letters)
def test_r_is_central(triple, a):
    p = parse_params(*triple)
    x, r = nf(p, a), generator(p, "r")
    assert r * x == x * r


@pytest.mark.parametrize("triple", TRIPLES)
@given(a=letters, k=st.integers(-6, 6))
def test_power_matches_repeated_product(triple, a, k):
    p = parse_params(*triple)
    x = nf(p, a)
    expected = identity(p)
    for _ in range(abs(k)):
        expected = expected * (x if k > 0 else ~x)
    assert power(x, k) == expected


@pytest.mark.parametrize("triple", TRIPLES)
@given(a=letters)
def test_normal_form_shape(triple, a):
    p = parse_params(*triple)
    x = nf(p, a)
    assert 0 <= x.central < p.d
    for (f1, _), (f2, _) in zip(x.syllables, x.syllables[1:]):
        assert f1 != f2
    for factor, e in x.syllables:
        assert 1 <= e < p.cosets(factor)
    assert syllable_length(x) == len(x.syllables)


@given(a=letters)
def test_sl2_normal_form_is_faithful(a):
    p = parse_params(4, 6, 2)
    x = nf(p, a)
    assert word_matrix(a) == text_matrix(render(x), p)


@given(a=letters)
def test_psl2_normal_form_is_faithful(a):
    p = parse_params(2, 3, 1)
    x = nf(p, a)
    assert sign_class(word_matrix(a)) == sign_class(text_matrix(render(x), p))
