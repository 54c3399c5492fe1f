import pytest
from gmpy2 import mpq
from hypothesis import given, strategies as st

from conftest import normal_forms, polys
from ncfilt import MultiPoly, NormalForm, RatFunc, WordPoly, nc_order, straighten
from ncfilt.maslov import (
    OrderedSymbol, basis_slot, commutation_formula, dn_product, evaluate_to_words,
    normal_order, product_symbol, swap_adjacent, swap_batched, symbols_of, taylor, taylor_x,
)

y = lambda N, i: MultiPoly.var(N, i)


def test_ordering_examples():
    f = (y(2, 0) + y(2, 1)) ** 2
    a = evaluate_to_words(OrderedSymbol.from_letters(2, [0, 1], f))
    b = evaluate_to_words(OrderedSymbol.from_letters(2, [1, 0], f))
    x1, x2 = WordPoly.generator(2, 0), WordPoly.generator(2, 1)
    assert a == x1 * x1 + x1 * x2 * 2 + x2 * x2
    assert b == x1 * x1 + x2 * x1 * 2 + x2 * x2


@given(polys(3, max_deg=2), st.integers(1, 2))
def test_single_swap_preserves_value(f, p):
    sym = OrderedSymbol.from_words(2, [(1,), (0,), (0, 1)], f)
    assert evaluate_to_words(swap_adjacent(sym, p)) == evaluate_to_words(sym)


@pytest.mark.parametrize("l", range(4))
@pytest.mark.parametrize("m", range(4))
def test_batched_swap(l, m):
    sym = OrderedSymbol.from_letters(2, [1, 0], y(2, 0) ** m * y(2, 1) ** l)
    r = swap_batched(sym, 1)
    assert evaluate_to_words(r) == evaluate_to_words(sym)
    assert normal_order(r, 4) == normal_order(sym, 4)


def test_swap_position_out_of_range():
    sym = OrderedSymbol.from_letters(2, [1, 0], y(2, 0))
    with pytest.raises((IndexError, ValueError)):
        swap_adjacent(sym, 2)


@given(normal_forms(2, 3), normal_forms(2, 3))
def test_normal_order_matches_fast_product(a, b):
    assert normal_order(product_symbol(symbols_of(a), symbols_of(b)), 3) == a * b


@given(normal_forms(2, 2), normal_forms(2, 2))
def test_dn_product_with_localized_coefficients(a, b):
    g = y(2, 0)
    got = dn_product(a, b, g=g)
    assert all(c.g == g for c in got.terms.values())
    assert got.map_coefficients(lambda c: c.to_poly()) == a * b


@given(normal_forms(2, 3), polys(2, max_deg=2))
def test_commutation_formula(a, f):
    lhs = a * NormalForm.lift(a.alg, f)
    assert straighten(evaluate_to_words(commutation_formula(a, f)), 3) == lhs


@pytest.mark.parametrize("k", range(6))
def test_taylor_formula(k):
    a, b = WordPoly.generator(2, 0), WordPoly.generator(2, 1)
    assert evaluate_to_words(taylor(MultiPoly.var(1, 0) ** k)) == (a + b) ** k
    assert nc_order(evaluate_to_words(taylor_x(k))) >= (k + 1) // 2


def test_x2_is_half_commutator():
    a, b = WordPoly.generator(2, 0), WordPoly.generator(2, 1)
    assert evaluate_to_words(taylor_x(2)) == (a * b - b * a) * mpq(-1, 2)


def test_rational_symbol_reproduces_right_quotient():
    # slots (x2, x1) with coefficient y1/y2 is the operator x2 x1^-1
    sym = OrderedSymbol.from_letters(2, [1, 0], RatFunc(y(2, 0), y(2, 1)))
    got = normal_order(sym, 2, localize=y(2, 0))
    assert got.render() == "{x2/x1} + {1/x1^2} · [x1,x2] + {1/x1^3} · [x1,[x1,x2]]"


def test_trace_reports_swaps():
    lines = []
    sym = OrderedSymbol(2, [basis_slot((1,)), basis_slot((0,))], y(2, 0) * y(2, 1))
    normal_order(sym, 1, trace=lines.append)
    assert lines and lines[0].startswith("swap at 1:")
