import pytest
from hypothesis import given, strategies as st

from conftest import normal_forms
from ncfilt import MultiPoly, NormalForm
from ncfilt.localization import (
    ContextMismatch, LeftFraction, LocalizationContext, NotInvertible, from_rational,
    identity_matrix, invert, is_identity_product, matmul, matrix_invert,
    matrix_invert_rational, normalize_right_division, to_rational_normal_form,
)

x = lambda i, n=2: MultiPoly.var(n, i)


def test_left_quotient_is_plain_symbol():
    ctx = LocalizationContext(2, 3, x(0))
    q = invert(ctx.lift(x(0))) * ctx.lift(x(1))
    assert to_rational_normal_form(q).render() == "{x2/x1}"
    assert q.render() == "x1^-1 * ( x2 )"


@pytest.mark.parametrize("d", range(5))
def test_right_quotient_series(d):
    ctx = LocalizationContext(2, d, x(0))
    q = ctx.lift(x(1)) * invert(ctx.lift(x(0)))
    r = to_rational_normal_form(q)
    inner = "x2"
    want = ["{x2/x1}"]
    for m in range(1, d + 1):
        inner = "[x1,x2]" if m == 1 else f"[x1,{inner}]"
        want.append(f"{{1/x1^{m + 1}}} · {inner}")
    assert r.render() == " + ".join(want)
    assert q * ctx.lift(x(0)) == ctx.lift(x(1))


def test_right_division_identity():
    ctx = LocalizationContext(2, 3, x(0) + x(1))
    a = ctx.lift(x(0) * x(1))
    q = normalize_right_division(a.num, ctx)
    assert q * ctx.lift(x(0) + x(1)) == a


@given(normal_forms(2, 2), st.integers(0, 2))
def test_rational_form_round_trip(r, k):
    ctx = LocalizationContext(2, 2, x(0) * x(1))
    f = LeftFraction(ctx, k, r)
    assert from_rational(to_rational_normal_form(f), ctx) == f


@given(normal_forms(2, 2), normal_forms(2, 2))
def test_fraction_product_matches_rational_product(a, b):
    ctx = LocalizationContext(2, 2, x(0))
    fa = LeftFraction(ctx, 1, a)
    fb = LeftFraction(ctx, 2, b)
    assert to_rational_normal_form(fa * fb) == to_rational_normal_form(fa) * to_rational_normal_form(fb)


def test_invert_two_sided():
    ctx = LocalizationContext(2, 2, x(0) + x(1))
    s = ctx.lift(x(0) + x(1))
    si = invert(s)
    assert si * s == ctx.one() and s * si == ctx.one()


def test_non_unit_is_not_invertible():
    ctx = LocalizationContext(2, 2, x(0))
    with pytest.raises(NotInvertible):
        invert(ctx.lift(x(1)))


def test_context_mismatch():
    a = LocalizationContext(2, 2, x(0)).one()
    b = LocalizationContext(2, 2, x(1)).one()
    with pytest.raises(ContextMismatch):
        a + b


def test_tautological_2x2_both_routes():
    n = 4
    det = x(0, n) * x(3, n) - x(1, n) * x(2, n)
    ctx = LocalizationContext(n, 2, det)
    M = [[ctx.lift(x(0, n)), ctx.lift(x(1, n))], [ctx.lift(x(2, n)), ctx.lift(x(3, n))]]
    ident = identity_matrix(2, ctx.one(), ctx.zero())
    fast = matrix_invert(M, ctx)
    slow = matrix_invert(M, ctx, route="fraction")
    assert fast == slow
    assert matmul(M, fast, ctx.zero()) == ident == matmul(fast, M, ctx.zero())
    R = [[to_rational_normal_form(e) for e in row] for row in M]
    Ri = matrix_invert_rational(ctx, R)
    assert is_identity_product(R, Ri, ctx) and is_identity_product(Ri, R, ctx)
    # negative control: a perturbed inverse is rejected
    Ri[0][1] = Ri[0][1] + Ri[0][0]
    assert not is_identity_product(R, Ri, ctx)


def test_rational_form_coefficients_live_in_localization():
    ctx = LocalizationContext(2, 3, x(0) + x(1))
    r = to_rational_normal_form(LeftFraction(ctx, 2, NormalForm.generator(ctx.alg, 0)))
    assert all(c.g == ctx.g for c in r.terms.values())
