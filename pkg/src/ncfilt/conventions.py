"""Sign conventions of the ordered-operator formulas, fixed by word-level checks.

Each sign is computed once from a minimal instance in the free algebra on two
letters ``a = 0``, ``b = 1`` and frozen.  The engine reads signs from
:func:`convention_table` instead of hard-coding them.
"""

from functools import lru_cache

from gmpy2 import mpq


def _w(*pairs):
    out = {}
    for c, word in pairs:
        out[word] = out.get(word, 0) + mpq(c)
    return {k: v for k, v in out.items() if v}


def _lin(x, y, s):
    out = dict(x)
    for k, v in y.items():
        out[k] = out.get(k, 0) + s * v
    return {k: v for k, v in out.items() if v}


def _solve_sign(lhs, rhs):
    for s in (1, -1):
        if _lin(lhs, rhs, -s) == {}:
            return s
    raise AssertionError("no sign makes the identity hold")


@lru_cache(maxsize=None)
def convention_table():
    """Return the frozen sign table.

    ``product_bracket``
        ``x2 x1 = x1 x2 + s [x1, x2]``: coefficient of the degree-1 bracket term
        in a product of ordered symbols (the first-order product law).
    ``swap_bracket``
        ``g(b first, a second) - g(a first, b second) = s [a, b] * (divided
        differences)``: the change-of-order correction, minimal case ``g = y1 y2``.
    ``commutation``
        ``a x = x a + s [x, a]``: sign attached to each ``ad(x)`` when moving an
        element to the right of an ordered symbol.
    ``k_reading``
        Reading of the batched swap kernel that reproduces ``b a``; the derivative
        is evaluated at (a first, b last) and the kernel is
        ``(a3 - a1)^l (b2 - b4)^m / (l! m!)``.
    """
    ab = _w((1, (0, 1)))
    ba = _w((1, (1, 0)))
    comm_ab = _lin(ab, ba, -1)
    table = {
        "product_bracket": _solve_sign(_lin(ba, ab, -1), comm_ab),
        "swap_bracket": _solve_sign(_lin(ba, ab, -1), comm_ab),
        "commutation": _solve_sign(_lin(ab, ba, -1), _lin(ba, ab, -1)),
    }
    # batched swap for g = y1*y2: terms (l, m) = (0, 0) and (1, 1) survive;
    # K_11 = (a3 - a1)(b2 - b4) with positions a1 < b2 < a3 < b4
    k11 = _w((1, (1, 0)), (-1, (0, 1)), (-1, (0, 1)), (1, (0, 1)))
    table["k_reading"] = "(a3-a1)^l (b2-b4)^m" if _lin(ab, k11, 1) == ba else None
    if table["k_reading"] is None:
        raise AssertionError("batched swap kernel reading failed its minimal check")
    return table
