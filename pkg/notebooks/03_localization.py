"""
Inverting elements and gluing charts
====================================

x1 becomes invertible after localizing at g = x1.  The two quotients of
x2 by x1 differ: dividing on the left is a single symbol, dividing on the
right produces an infinite bracket series, cut off at the truncation.
"""

import time

from ncfilt import MultiPoly
from ncfilt.acceptance import tautological
from ncfilt.geometry import cocycle_check, line_bundle_cocycle
from ncfilt.localization import (
    LocalizationContext, invert, is_identity_product, matrix_invert_rational, to_rational_normal_form,
)

x1, x2 = MultiPoly.var(2, 0), MultiPoly.var(2, 1)
ctx = LocalizationContext(2, 4, x1)
X1, X2 = ctx.lift(x1), ctx.lift(x2)
print(to_rational_normal_form(invert(X1) * X2))
print(to_rational_normal_form(X2 * invert(X1)))
print(X2 * invert(X1))                     # the same element as a left fraction

# the inverse of x1 + x2
ctx = LocalizationContext(2, 2, x1 + x2)
s = ctx.lift(x1 + x2)
print(to_rational_normal_form(invert(s)))

# the 3 x 3 matrix of generators, inverted over its determinant
t0 = time.perf_counter()
ctx, M = tautological(3, 2)
R = [[to_rational_normal_form(e) for e in row] for row in M]
Ri = matrix_invert_rational(ctx, R)
print(is_identity_product(R, Ri, ctx), is_identity_product(Ri, R, ctx), f"{time.perf_counter() - t0:.1f}s")

# projective plane: the transition functions and the line bundle glue
for d in range(3):
    print("\n".join(cocycle_check(2, d).lines()))
    print("\n".join(line_bundle_cocycle(2, d).lines()))
