import pytest
from gmpy2 import mpq
from hypothesis import given

from conftest import polys
from ncfilt.arith import (
    CERT_BOUND_ENV, ArithmeticError_, ArityError, LocalizedPoly, MultiPoly, Q, RatFunc,
    difference_quotient, exact_quotient, unit_certificate,
)

x = lambda i, n=2: MultiPoly.var(n, i)


def test_rendering_is_graded_lex_with_x1_smallest():
    p = x(0) ** 2 + x(1) * mpq(3, 4) - 1 + x(0) * x(1)
    assert p.to_string() == "x1*x2 + x1^2 + 3/4*x2 - 1"
    assert str(MultiPoly.zero(2)) == "0"


def test_arity_mismatch_is_rejected():
    with pytest.raises(ArityError):
        x(0, 2) + x(0, 3)


@given(polys(2), polys(2), polys(2))
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == MultiPoly.zero(2)


@given(polys(2), polys(2))
def test_divmod_reconstructs(a, b):
    if not b:
        return
    q, r = a.divmod(b)
    assert q * b + r == a


@given(polys(2), polys(2, max_deg=2))
def test_exact_quotient_matches_divmod(a, b):
    if not b:
        return
    q = exact_quotient(a * b, b)
    assert q == a
    q2, r = a.divmod(b)
    if exact_quotient(a, b) is None:
        assert r
    else:
        assert not r


@given(polys(2), polys(2))
def test_ratfunc_is_reduced_and_structural(a, b):
    if not b or not a:
        return
    r = RatFunc(a * b, b * b)
    assert r == RatFunc(a, b)
    assert r * RatFunc(b, a) == RatFunc.from_poly(MultiPoly.one(2))


def test_ratfunc_zero_denominator():
    with pytest.raises(ZeroDivisionError):
        RatFunc(x(0), MultiPoly.zero(2))


def test_localized_exponent_is_minimal():
    g = x(0) + x(1)
    c = LocalizedPoly(g * g * x(0), 3, g)
    assert (c.num, c.k) == (x(0), 1)
    assert c == LocalizedPoly.from_ratfunc(RatFunc(x(0), g), g)


def test_from_ratfunc_rejects_foreign_denominator():
    with pytest.raises(ArithmeticError_):
        LocalizedPoly.from_ratfunc(RatFunc(MultiPoly.one(2), x(1)), x(0))


def test_difference_quotient_of_power():
    # (y1^3 - y2^3) / (y1 - y2) = y1^2 + y1 y2 + y2^2
    f = MultiPoly.var(1, 0) ** 3
    h = difference_quotient(f, 0)
    y1, y2 = MultiPoly.var(2, 0), MultiPoly.var(2, 1)
    assert h == y1 ** 2 + y1 * y2 + y2 ** 2


@given(polys(2, max_deg=3))
def test_difference_quotient_identity(f):
    h = difference_quotient(f, 0)
    y = [MultiPoly.var(3, i) for i in range(3)]
    left = f.substitute([y[0], y[2]], 3) - f.substitute([y[1], y[2]], 3)
    assert h * (y[0] - y[1]) == left


def test_unit_certificate_and_env_bound(monkeypatch):
    g = x(0) * x(1)
    p, m = unit_certificate(x(0) ** 2, g)
    assert x(0) ** 2 * p == g ** m
    with pytest.raises(ArithmeticError_):
        unit_certificate(x(0) + x(1), g)
    monkeypatch.setenv(CERT_BOUND_ENV, "0")
    with pytest.raises(ArithmeticError_):
        unit_certificate(x(0) ** 2, g)


def test_rational_literals():
    assert Q("3/4") == mpq(3, 4)
    assert Q(1, 3) == mpq(1, 3)
