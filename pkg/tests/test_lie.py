import itertools

import pytest

from ncfilt.lie import (
    LieElement, NotALieElement, bracket, decompose_lie, is_lyndon, lie_basis, lyndon_words,
    standard_factorization, witt_dimension,
)
from ncfilt.words import WordPoly


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("k", range(1, 7))
def test_lyndon_counts_match_witt(n, k):
    brute = sum(1 for w in itertools.product(range(n), repeat=k) if is_lyndon(w))
    assert sum(1 for w in lyndon_words(n, k) if len(w) == k) == brute == witt_dimension(n, k)


def test_basis_order_and_names():
    b = lie_basis(2, 3)
    assert [b.name(i) for i in range(len(b))] == ["x1", "x2", "[x1,x2]", "[x1,[x1,x2]]", "[[x1,x2],x2]"]


def test_right_standard_factorization():
    assert standard_factorization((0, 0, 1)) == ((0,), (0, 1))
    assert standard_factorization((0, 1, 1)) == ((0, 1), (1,))
    assert standard_factorization((0, 1, 0, 1, 1)) == ((0, 1), (0, 1, 1))


def test_jacobi_and_antisymmetry():
    a, b, c = (LieElement.generator(3, i) for i in range(3))
    assert bracket(a, b) == -bracket(b, a)
    total = bracket(a, bracket(b, c)) + bracket(b, bracket(c, a)) + bracket(c, bracket(a, b))
    assert not total


def test_decompose_roundtrip():
    a, b = LieElement.generator(2, 0), LieElement.generator(2, 1)
    e = bracket(bracket(a, b), b) + bracket(a, bracket(a, b))
    assert decompose_lie(e.expand_to_words()) == e


def test_decompose_rejects_non_lie_polynomial():
    with pytest.raises(NotALieElement):
        decompose_lie(WordPoly.word(2, (0, 1)))
