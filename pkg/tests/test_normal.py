from hypothesis import given, strategies as st

from conftest import normal_forms, polys, words
from ncfilt import MultiPoly, NormalForm, algebra, graded_count, q_dimension, straighten, structure_eval
from ncfilt.conventions import convention_table
from ncfilt.normal import exponent_maps


def test_convention_table_is_frozen():
    t = convention_table()
    assert (t["product_bracket"], t["swap_bracket"], t["commutation"]) == (-1, -1, -1)


def test_q_dimensions():
    assert [q_dimension(2, d) for d in range(3)] == [1, 1, 3]
    assert graded_count(2, 2, 4) == 5


@given(st.integers(1, 3), st.integers(0, 5))
def test_graded_counts_sum_to_word_count(n, m):
    assert sum(graded_count(n, d, m) for d in range(m + 1)) == n ** m


@given(st.data())
def test_fast_product_matches_word_oracle(data):
    n = data.draw(st.integers(1, 3))
    d = data.draw(st.integers(0, 3))
    a, b = data.draw(words(n)), data.draw(words(n))
    assert straighten(a, d) * straighten(b, d) == straighten(a * b, d)


@given(normal_forms(2, 3), normal_forms(2, 3), normal_forms(2, 3))
def test_associativity(a, b, c):
    assert (a * b) * c == a * (b * c)


@given(normal_forms(3, 3), normal_forms(3, 3))
def test_filtration_is_multiplicative(a, b):
    assert (a * b).nc_order() >= a.nc_order() + b.nc_order()
    assert a.commutator(b).nc_order() >= a.nc_order() + b.nc_order() + 1


@given(polys(2), polys(2))
def test_top_structure_constant_is_product(f, g):
    alg = algebra(2, 2)
    b = alg.basis.index[(0, 1)]
    assert structure_eval(alg, (b,), (b,), (b, b), f, g) == f * g
    assert not structure_eval(alg, (b,), (b,), (b,), f, g)


@given(polys(2), polys(2))
def test_abelianization_is_multiplicative(f, g):
    alg = algebra(2, 3)
    F, G = NormalForm.lift(alg, f), NormalForm.lift(alg, g)
    assert (F * G).abelianize() == f * g


def test_truncation_kills_commutators_at_d0():
    alg = algebra(2, 0)
    x1, x2 = NormalForm.generator(alg, 0), NormalForm.generator(alg, 1)
    assert not x1.commutator(x2)


def test_rendering_groups_repeated_brackets():
    alg = algebra(2, 3)
    c = NormalForm.lie_word(alg, (0, 1))
    e = (c * c * NormalForm.lift(alg, MultiPoly.var(2, 0) + 1)).truncate(2)
    assert e.render() == "(x1 + 1) · [x1,x2]^2"


def test_exponent_maps_have_requested_order():
    alg = algebra(3, 3)
    for d in range(4):
        for lam in exponent_maps(3, d):
            assert alg.ord(lam) == d
