import pytest
from hypothesis import given

from conftest import words
from ncfilt import WordPoly, ad_power, nc_order, straighten
from ncfilt.normal import TruncationMismatch

x1, x2 = WordPoly.generator(2, 0), WordPoly.generator(2, 1)


def test_word_rendering():
    assert str(x2 * x1 * x1) == "x2*x1*x1"
    assert str(x1 * x2 - x2 * x1) == "x1*x2 - x2*x1"


@given(words(3), words(3), words(3))
def test_word_product_associative(a, b, c):
    assert (a * b) * c == a * (b * c)


def test_straighten_swap():
    assert straighten(x2 * x1, 2).render() == "x1*x2 - [x1,x2]"


@given(words(2, max_len=4))
def test_expand_is_inverse_of_straighten(w):
    d = 4
    assert straighten(straighten(w, d).expand_to_words(), d) == straighten(w, d)
    assert straighten(w, d).expand_to_words() == w


def test_nc_order_of_brackets():
    c = x1.commutator(x2)
    assert nc_order(c) == 1
    assert nc_order(ad_power(x1, c, 2)) == 3
    assert nc_order(c * c) == 2
    assert nc_order(WordPoly.zero(2)) == float("inf")


def test_different_truncations_are_rejected():
    with pytest.raises(TruncationMismatch):
        straighten(x1, 1) * straighten(x1, 2)


def test_json_roundtrip():
    w = x2 * x1 * 3 - x1
    assert WordPoly.from_json(w.to_json()) == w
