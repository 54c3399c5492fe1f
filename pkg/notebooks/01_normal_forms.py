"""
Normal forms in a truncated free algebra
========================================

Every element of C<x1..xn> modulo F^(d+1) is written once and for all as
a sum  [[f]] · M  where [[f]] is a commutative polynomial with its variables
put in the order x1, x2, ... and M is a product of Lie brackets.
"""

from ncfilt import MultiPoly, NormalForm, WordPoly, algebra, q_dimension, straighten
from ncfilt.lie import lie_basis

# the Lyndon basis up to degree 4 on two letters
basis = lie_basis(2, 4)
for i in range(len(basis)):
    print(basis.name(i))

# words are straightened into normal form; d = 2 keeps two brackets
x1, x2 = WordPoly.generator(2, 0), WordPoly.generator(2, 1)
print(straighten(x2 * x1, 2))            # x1*x2 - [x1,x2]
print(straighten(x2 * x2 * x1, 2))

# the same product computed directly on normal forms
alg = algebra(2, 2)
X1, X2 = NormalForm.generator(alg, 0), NormalForm.generator(alg, 1)
print(X2 * X2 * X1 == straighten(x2 * x2 * x1, 2))

# modulo F^2 the product of two lifted polynomials has one bracket layer
alg1 = algebra(2, 1)
f = MultiPoly.var(2, 1) ** 2
g = MultiPoly.var(2, 0) ** 3
print(NormalForm.lift(alg1, f) * NormalForm.lift(alg1, g))

# how many bracket monomials of each order
print([q_dimension(2, d) for d in range(5)])
