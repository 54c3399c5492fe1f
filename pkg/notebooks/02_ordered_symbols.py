"""
Ordered symbols
===============

An ordered symbol is a commutative polynomial whose variables carry
positions; the positions say in which order the operators act.
Swapping two neighbours costs a bracket term, and repeating the swap
brings any symbol to normal form.
"""

from ncfilt import MultiPoly, RatFunc, WordPoly
from ncfilt.maslov import OrderedSymbol, evaluate_to_words, normal_order, swap_adjacent, taylor, taylor_x

y = lambda N, i: MultiPoly.var(N, i)

# (y1 + y2)^2 with x1 first, then with x2 first
f = (y(2, 0) + y(2, 1)) ** 2
print(evaluate_to_words(OrderedSymbol.from_letters(2, [0, 1], f)))
print(evaluate_to_words(OrderedSymbol.from_letters(2, [1, 0], f)))

# one swap: x2 x1 -> x1 x2 + correction
s = OrderedSymbol.from_letters(2, [1, 0], y(2, 0) * y(2, 1))
print(swap_adjacent(s, 1))

# print every swap on the way to normal form
normal_order(OrderedSymbol.from_letters(2, [1, 0, 1], y(3, 0) * y(3, 1) * y(3, 2)), 2, trace=print)

# the Taylor formula for (a + b)^3 and the second correction term
print(evaluate_to_words(taylor(MultiPoly.var(1, 0) ** 3)))
print(evaluate_to_words(taylor_x(2)))

# a rational symbol: x2 first, then 1/x1
q = OrderedSymbol.from_letters(2, [1, 0], RatFunc(y(2, 0), y(2, 1)))
print(normal_order(q, 3, localize=y(2, 0)))
