"""Ordered symbols and the change-of-order calculus.

An :class:`OrderedSymbol` is a commutative coefficient ``f(y1, ..., yN)``
together with ``N`` slots; slot ``i`` holds a Lie element and ``y_i^k`` stands
for the ``k``-th power of that element placed at position ``i`` in operator
order (slot 1 leftmost).  Slots are stored as sorted tuples of
``(lyndon_word, coefficient)`` pairs, so a slot may hold a sum such as
``a + b``; the ordering algorithms require single basis elements.

The reference path to a normal form is repeated adjacent swapping:

    g(a first, b second) = g(b first, a second)
                           + [a, b] * Dg(a', b', ., b'', a'')

where ``Dg`` is the double difference quotient of ``g`` in the two swapped
variables and the correction symbol has slots ``(a, b, [a, b], b, a)``.
Every correction raises the NC-order, which bounds the work at truncation d.
"""

from math import factorial

from gmpy2 import mpq

from .arith import (LocalizedPoly, MultiPoly, RatFunc, difference_quotient,
                    merge_variables, multi_factorial, multi_indices)
from .conventions import convention_table
from .lie import bracket_string, lie_basis
from .words import WordPoly

__all__ = [
    "OrderedSymbol", "SymbolSum", "basis_slot", "evaluate_to_words",
    "apply_cancellation", "swap_adjacent", "swap_batched", "normal_order",
    "symbols_of", "product_symbol", "commutation_formula", "taylor",
    "taylor_x", "dn_product", "convention_table",
]


# -- slots -------------------------------------------------------------------

def basis_slot(word):
    """Slot holding the Lyndon basis element ``word`` (0-based letters)."""
    return ((tuple(word), mpq(1)),)


def make_slot(coeffs):
    items = sorted(((tuple(w), mpq(c)) for w, c in coeffs.items() if c),
                   key=lambda kv: (len(kv[0]), kv[0]))
    if not items:
        raise ValueError("a slot cannot hold zero")
    return tuple(items)


def is_basis_slot(slot):
    return len(slot) == 1 and slot[0][1] == 1


def slot_key(slot):
    w = slot[0][0]
    return (len(w), w)


def slot_ord(slot):
    return min(len(w) for w, _ in slot) - 1


def slot_string(slot):
    parts = []
    for w, c in slot:
        s = bracket_string(w)
        parts.append(s if c == 1 else f"{c}*{s}")
    s = "+".join(parts)
    return s if len(parts) == 1 else f"({s})"


def _slot_words(n, slot):
    deg = max(len(w) for w, _ in slot)
    basis = lie_basis(n, deg)
    return basis.expand_element({basis.index[w]: c for w, c in slot})


def _bracket_slots(n, a, b):
    deg = max(len(w) for w, _ in a) + max(len(w) for w, _ in b)
    basis = lie_basis(n, deg)
    ea = {basis.index[w]: c for w, c in a}
    eb = {basis.index[w]: c for w, c in b}
    r = basis.bracket_elements(ea, eb)
    return {basis.words[i]: c for i, c in r.items()}


# -- symbols -----------------------------------------------------------------

class OrderedSymbol:
    """``[[ f(y1..yN) ]]`` with slot ``i`` holding a Lie element."""

    __slots__ = ("n", "slots", "coeff")

    def __init__(self, n, slots, coeff):
        slots = tuple(slots)
        if coeff.nvars != len(slots):
            raise ValueError(f"coefficient arity {coeff.nvars} != slot count {len(slots)}")
        for s in slots:
            for w, _ in s:
                if any(a < 0 or a >= n for a in w):
                    raise ValueError(f"slot letter out of range for n={n}")
        self.n = n
        self.slots = slots
        self.coeff = coeff

    @classmethod
    def from_letters(cls, n, letters, coeff):
        """Symbol whose slots are the generators ``letters`` (0-based)."""
        return cls(n, [basis_slot((a,)) for a in letters], coeff)

    @classmethod
    def from_words(cls, n, words, coeff):
        return cls(n, [basis_slot(w) for w in words], coeff)

    def __len__(self):
        return len(self.slots)

    def __eq__(self, other):
        if not isinstance(other, OrderedSymbol):
            return NotImplemented
        return self.n == other.n and self.slots == other.slots and self.coeff == other.coeff

    def __hash__(self):
        return hash((self.n, self.slots))

    def order(self):
        """Least NC-order over the monomials of the coefficient."""
        ords = [slot_ord(s) for s in self.slots]
        num = self.coeff.num if isinstance(self.coeff, RatFunc) else self.coeff
        if not num:
            return float("inf")
        return min(sum(o * k for o, k in zip(ords, e)) for e in num.terms)

    def __repr__(self):
        return f"OrderedSymbol({self})"

    def __str__(self):
        args = ", ".join(f"{slot_string(s)}^{i + 1}" for i, s in enumerate(self.slots))
        names = [f"y{i + 1}" for i in range(len(self.slots))]
        return f"[[ ({self.coeff.to_string(names)})({args}) ]]"


class SymbolSum:
    """Finite sum ``sum c_k S_k`` of ordered symbols."""

    __slots__ = ("n", "items")

    def __init__(self, n, items=()):
        self.n = n
        self.items = [(mpq(c), s) for c, s in items if c and s.coeff]

    @classmethod
    def of(cls, sym, c=1):
        return cls(sym.n, [(c, sym)])

    def __iter__(self):
        return iter(self.items)

    def __len__(self):
        return len(self.items)

    def __add__(self, other):
        return SymbolSum(self.n, self.items + other.items)

    def scale(self, c):
        return SymbolSum(self.n, [(c * k, s) for k, s in self.items])

    def __str__(self):
        if not self.items:
            return "0"
        out = ""
        for c, s in self.items:
            neg = c < 0
            a = -c if neg else c
            body = str(s) if a == 1 else f"{a}*{s}"
            if not out:
                out = f"-{body}" if neg else body
            else:
                out += f" - {body}" if neg else f" + {body}"
        return out

    def __repr__(self):
        return f"SymbolSum({self})"

    def collect(self):
        """Merge symbols with identical slot sequences."""
        acc = {}
        for c, s in self.items:
            t = s.coeff.scale(c) if c != 1 else s.coeff
            acc[s.slots] = acc[s.slots] + t if s.slots in acc else t
        return SymbolSum(self.n, [(1, OrderedSymbol(self.n, k, v)) for k, v in acc.items() if v])


def _as_sum(s):
    return s if isinstance(s, SymbolSum) else SymbolSum.of(s)


# -- evaluation and cancellation -----------------------------------------------

def evaluate_to_words(s):
    """Word expansion of a symbol or symbol sum (polynomial coefficients)."""
    s = _as_sum(s)
    n = s.n
    out = WordPoly.zero(n)
    for c, sym in s:
        coeff = sym.coeff
        if isinstance(coeff, RatFunc):
            if not coeff.is_polynomial():
                raise ValueError("rational coefficient has no word expansion")
            coeff = coeff.to_poly()
        slot_polys = [WordPoly(n, _slot_words(n, sl)) for sl in sym.slots]
        powers = {}
        for e, k in coeff.terms.items():
            term = WordPoly.one(n) * (c * k)
            for i, p in enumerate(e):
                if p:
                    key = (i, p)
                    if key not in powers:
                        powers[key] = slot_polys[i] ** p
                    term = term * powers[key]
            out = out + term
    return out


def apply_cancellation(sym):
    """Delete slots the coefficient ignores and merge equal neighbours."""
    slots = list(sym.slots)
    f = sym.coeff
    changed = True
    while changed:
        changed = False
        for i in range(len(slots) - 1, -1, -1):
            if not f.depends_on(i):
                f = f.remap(len(slots) - 1, [j if j < i else max(j - 1, 0) for j in range(len(slots))])
                del slots[i]
                changed = True
        for i in range(len(slots) - 1):
            if slots[i] == slots[i + 1]:
                f = merge_variables(f, i, i + 1)
                del slots[i + 1]
                changed = True
                break
    return OrderedSymbol(sym.n, slots, f)


def _check_pos(sym, p):
    if not 1 <= p < len(sym.slots):
        raise IndexError(f"swap position {p} out of range for {len(sym.slots)} slots")


def _swap_vars(f, i, j):
    pos = list(range(f.nvars))
    pos[i], pos[j] = j, i
    return f.remap(f.nvars, pos)


def _insert_var(f, at):
    pos = [k if k < at else k + 1 for k in range(f.nvars)]
    return f.remap(f.nvars + 1, pos)


def _var_like(f, i):
    x = MultiPoly.var(f.nvars, i)
    return RatFunc.from_poly(x) if isinstance(f, RatFunc) else x


def swap_adjacent(sym, p):
    """Transpose slots ``p, p+1`` (1-based) and add the bracket correction.

    The correction symbols carry slots ``(a, b, w, b, a)`` where ``w`` runs
    over the basis expansion of ``[a, b]``; the sign comes from the frozen
    convention table.
    """
    _check_pos(sym, p)
    i = p - 1
    n, f, slots = sym.n, sym.coeff, sym.slots
    a, b = slots[i], slots[i + 1]
    head_slots = slots[:i] + (b, a) + slots[i + 2:]
    out = [(1, OrderedSymbol(n, head_slots, _swap_vars(f, i, i + 1)))]
    br = _bracket_slots(n, a, b)
    if not br:
        return SymbolSum(n, out)
    h = difference_quotient(f, i)          # a' at i, a'' at i+1, b at i+2
    h = difference_quotient(h, i + 2)      # b' at i+2, b'' at i+3
    if not h:
        return SymbolSum(n, out)
    N = h.nvars
    # target layout: a'(i) b'(i+1) w(i+2) b''(i+3) a''(i+4)
    pos = []
    for k in range(N):
        if k < i:
            pos.append(k)
        elif k == i:
            pos.append(i)
        elif k == i + 1:
            pos.append(i + 4)
        elif k == i + 2:
            pos.append(i + 1)
        elif k == i + 3:
            pos.append(i + 3)
        else:
            pos.append(k + 1)
    h = h.remap(N + 1, pos)
    h = h * _var_like(h, i + 2)
    sign = -convention_table()["swap_bracket"]
    for w, c in br.items():
        new_slots = slots[:i] + (a, b, basis_slot(w), b, a) + slots[i + 2:]
        out.append((sign * c, apply_cancellation(OrderedSymbol(n, new_slots, h))))
    return SymbolSum(n, out)


def swap_batched(sym, p, d=None):
    """Move slot ``p+1`` in front of slot ``p`` in one step (1-based ``p``).

    With ``b`` at ``p`` and ``a`` at ``p+1``, uses

        g(b first, a second) = sum_{l,m} d^l_a d^m_b g(a, b) * K_{l,m}

    where the derivative's ``a`` sits leftmost, its ``b`` rightmost, and
    ``K_{l,m} = (a3 - a1)^l (b2 - b4)^m / (l! m!)`` over internal positions
    ``a1 < b2 < a3 < b4`` between them.  Terms with ``max(l, m) > d`` are
    dropped when ``d`` is given.
    """
    _check_pos(sym, p)
    if convention_table()["k_reading"] != "(a3-a1)^l (b2-b4)^m":
        raise AssertionError("unexpected batched-swap reading")
    i = p - 1
    n, f, slots = sym.n, sym.coeff, sym.slots
    b, a = slots[i], slots[i + 1]
    N = f.nvars
    num = f.num if isinstance(f, RatFunc) else f
    la = max((e[i + 1] for e in num.terms), default=0) if not isinstance(f, RatFunc) else None
    lb = max((e[i] for e in num.terms), default=0) if not isinstance(f, RatFunc) else None
    if la is None:
        raise ValueError("batched swap needs a polynomial coefficient")
    out = []
    # new layout for positions i..i+5: a, a1, b2, a3, b4, b
    M = N + 4

    def pos_map(k):
        if k < i:
            return k
        if k == i:          # b
            return i + 5
        if k == i + 1:      # a
            return i
        return k + 4

    new_slots = slots[:i] + (a, a, b, a, b, b) + slots[i + 2:]
    ya1, yb2, ya3, yb4 = (MultiPoly.var(M, i + k) for k in (1, 2, 3, 4))
    for l in range(la + 1):
        for m in range(lb + 1):
            if d is not None and max(l, m) > d:
                continue
            alpha = [0] * N
            alpha[i + 1] = l
            alpha[i] = m
            g = f.diff_multi(tuple(alpha))
            if not g:
                continue
            g = g.remap(M, [pos_map(k) for k in range(N)])
            k = (ya3 - ya1) ** l * (yb2 - yb4) ** m
            coeff = g * k
            scale = mpq(1, factorial(l) * factorial(m))
            out.append((scale, apply_cancellation(OrderedSymbol(n, new_slots, coeff))))
    return SymbolSum(n, out)


# -- normal ordering -----------------------------------------------------------

def _truncate(sym, d):
    ords = [slot_ord(s) for s in sym.slots]
    f = sym.coeff
    if isinstance(f, RatFunc):
        num = f.num
        keep = {e: c for e, c in num.terms.items() if sum(o * k for o, k in zip(ords, e)) <= d}
        if len(keep) == len(num.terms):
            return sym
        return OrderedSymbol(sym.n, sym.slots, RatFunc(MultiPoly(num.nvars, keep), f.den))
    keep = {e: c for e, c in f.terms.items() if sum(o * k for o, k in zip(ords, e)) <= d}
    if len(keep) == len(f.terms):
        return sym
    return OrderedSymbol(sym.n, sym.slots, MultiPoly(f.nvars, keep, _clean=True))


def _first_descent(sym):
    keys = [slot_key(s) for s in sym.slots]
    for k in range(len(keys) - 1):
        if keys[k] > keys[k + 1]:
            return k + 1
    return None


def _read_off(sym, alg, out):
    n = alg.n
    slots = sym.slots
    gen_pos = [k for k, s in enumerate(slots) if len(s[0][0]) == 1]
    lie_pos = [k for k, s in enumerate(slots) if len(s[0][0]) > 1]
    gen_letter = {k: slots[k][0][0][0] for k in gen_pos}
    lie_index = {k: alg.basis.index[slots[k][0][0]] for k in lie_pos}
    f = sym.coeff
    rational = isinstance(f, RatFunc)
    num = f.num if rational else f
    positions = [gen_letter.get(k, 0) for k in range(len(slots))]
    if rational:
        for k in lie_pos:
            if f.den.depends_on(k):
                raise ValueError("denominator depends on a bracket slot")
        den = f.den.remap(n, positions)
    groups = {}
    for e, c in num.terms.items():
        lam = []
        for k in lie_pos:
            lam.extend([lie_index[k]] * e[k])
        ce = [0] * n
        for k in gen_pos:
            ce[gen_letter[k]] += e[k]
        groups.setdefault(tuple(sorted(lam)), {})
        g = groups[tuple(sorted(lam))]
        g[tuple(ce)] = g.get(tuple(ce), 0) + c
    for lam, t in groups.items():
        p = MultiPoly(n, {e: c for e, c in t.items() if c})
        if not p:
            continue
        coeff = RatFunc(p, den) if rational else p
        out[lam] = out[lam] + coeff if lam in out else coeff


def normal_order(s, d, trace=None, localize=None):
    """Reduce a symbol sum to the normal form of ``R_d``.

    Repeatedly applies the first out-of-order adjacent swap and the
    cancellation rules, dropping monomials of NC-order above ``d``.
    ``trace`` receives a line per swap.  Rational coefficients give
    :class:`RatFunc` coefficients, or :class:`LocalizedPoly` over
    ``localize`` when that polynomial is given.
    """
    from .normal import NormalForm, algebra
    s = _as_sum(s)
    alg = algebra(s.n, d)
    out = {}
    pending = s.collect()
    while pending.items:
        nxt = []
        for c, sym in pending:
            for sl in sym.slots:
                if not is_basis_slot(sl):
                    raise ValueError("normal ordering needs basis-element slots; expand sums first")
            sym = _truncate(apply_cancellation(sym), d)
            if not sym.coeff:
                continue
            if c != 1:
                sym = OrderedSymbol(sym.n, sym.slots, sym.coeff.scale(c))
            p = _first_descent(sym)
            if p is None:
                _read_off(sym, alg, out)
                continue
            res = swap_adjacent(sym, p)
            if trace is not None:
                trace(f"swap at {p}: {sym}  ->  {res}")
            nxt.extend(res.items)
        pending = SymbolSum(s.n, nxt).collect()
    terms = {}
    for lam, c in out.items():
        if isinstance(c, RatFunc):
            if localize is not None:
                c = LocalizedPoly.from_ratfunc(c, localize)
            elif c.is_polynomial():
                c = c.to_poly()
        elif localize is not None and isinstance(c, MultiPoly):
            c = LocalizedPoly(c, 0, localize, _reduced=True)
        if c:
            terms[lam] = c
    return NormalForm(alg, terms)


# -- symbols of normal forms -----------------------------------------------

def _to_ratfunc(c):
    if isinstance(c, RatFunc):
        return c
    if isinstance(c, LocalizedPoly):
        return c.to_ratfunc()
    return c


def symbols_of(a):
    """Symbol sum ``sum [[f_lam]] M_lam`` of a normal form."""
    alg = a.alg
    n = alg.n
    items = []
    for lam, f in a.terms.items():
        f = _to_ratfunc(f)
        distinct = sorted(set(lam))
        N = n + len(distinct)
        coeff = f.remap(N, list(range(n)))
        for k, b in enumerate(distinct):
            y = MultiPoly.var(N, n + k) ** lam.count(b)
            coeff = coeff * (RatFunc.from_poly(y) if isinstance(coeff, RatFunc) else y)
        slots = [basis_slot((i,)) for i in range(n)] + [basis_slot(alg.basis.words[b]) for b in distinct]
        items.append((1, OrderedSymbol(n, slots, coeff)))
    return SymbolSum(n, items)


def _concat(s1, s2):
    n = s1.n
    N1, N2 = len(s1.slots), len(s2.slots)
    N = N1 + N2
    f1 = s1.coeff.remap(N, list(range(N1)))
    f2 = s2.coeff.remap(N, list(range(N1, N)))
    if isinstance(f1, RatFunc) and not isinstance(f2, RatFunc):
        f2 = RatFunc.from_poly(f2)
    if isinstance(f2, RatFunc) and not isinstance(f1, RatFunc):
        f1 = RatFunc.from_poly(f1)
    return OrderedSymbol(n, s1.slots + s2.slots, f1 * f2)


def product_symbol(*factors):
    """Symbol sum of the operator product of symbol sums, left to right."""
    factors = [_as_sum(f) for f in factors]
    n = factors[0].n
    acc = [(mpq(1), OrderedSymbol(n, (), MultiPoly.one(0)))]
    for fac in factors:
        acc = [(c1 * c2, _concat(s1, s2)) for c1, s1 in acc for c2, s2 in fac]
    return SymbolSum(n, acc)


def dn_product(a, b, d=None, g=None):
    """Product of normal forms with rational coefficients via ordered symbols.

    Independent of the bidifferential product in :mod:`ncfilt.normal`: the
    operator product is written as one symbol and normal-ordered by swaps.
    With ``g`` given, every coefficient must lie in ``C[x][1/g]``.
    """
    if (a.alg.n, a.alg.d) != (b.alg.n, b.alg.d):
        from .normal import TruncationMismatch
        raise TruncationMismatch("operands live in different truncations")
    d = a.alg.d if d is None else d
    if g is not None:
        for x in (a, b):
            for c in x.terms.values():
                LocalizedPoly.from_ratfunc(_to_ratfunc(c) if not isinstance(c, MultiPoly)
                                           else c.to_ratfunc(), g)
    return normal_order(product_symbol(symbols_of(a), symbols_of(b)), d, localize=g)


# -- commutation and Taylor formulas --------------------------------------------

def commutation_formula(a, f):
    """Move a normal form ``a`` to the right of ``[[f]]``.

    Returns the symbol sum of ``sum_i (1/i!) [[d^i f]] ad(x_n)^{i_n} ... ad(x_1)^{i_1}(a)``
    with ``ad(x)`` carrying the frozen commutation sign, evaluated in ``R_d``.
    """
    from .normal import NormalForm
    alg = a.alg
    n, d = alg.n, alg.d
    sign = convention_table()["commutation"]
    gens = [NormalForm.generator(alg, j) for j in range(n)]

    def ad(j, y):
        return (gens[j] * y - y * gens[j]).scale(sign)

    cache = {(0,) * n: a}

    def ad_power(i):
        r = cache.get(i)
        if r is None:
            j = max(k for k, v in enumerate(i) if v)
            prev = list(i)
            prev[j] -= 1
            r = cache[i] = ad(j, ad_power(tuple(prev)))
        return r

    total = SymbolSum(n)
    for t in range(d + 1):
        for i in multi_indices(n, t):
            df = f.diff_multi(i)
            if not df:
                continue
            y = ad_power(i)
            if not y:
                continue
            head = OrderedSymbol.from_letters(n, range(n), df * mpq(1, multi_factorial(i)))
            total = total + product_symbol(head, symbols_of(y))
    return total


def taylor_x(k):
    """``X_k``: slots ``(a, a + b, b)`` with coefficient ``(y2 - y1 - y3)^k / k!``."""
    y1, y2, y3 = (MultiPoly.var(3, i) for i in range(3))
    coeff = (y2 - y1 - y3) ** k * mpq(1, factorial(k))
    slots = [basis_slot((0,)), make_slot({(0,): 1, (1,): 1}), basis_slot((1,))]
    return OrderedSymbol(2, slots, coeff)


def taylor(f, d=None):
    """Symbol sum ``sum_k [[ f^(k)(a1 + b3) X_k ]]`` for univariate ``f``.

    ``a = x1``, ``b = x2``.  With ``d`` given, terms whose ``X_k`` vanishes
    modulo ``F^{d+1}`` (``floor((k+1)/2) > d``) are omitted.
    """
    if f.nvars != 1:
        raise ValueError("taylor expects a univariate polynomial")
    y1, y2, y3 = (MultiPoly.var(3, i) for i in range(3))
    top = f.total_degree()
    items = []
    for k in range(top + 1):
        if d is not None and (k + 1) // 2 > d:
            continue
        fk = f.diff(0, k) if k else f
        fk = fk.substitute([y1 + y3], 3)
        x = taylor_x(k)
        items.append((1, apply_cancellation(OrderedSymbol(2, x.slots, fk * x.coeff))))
    return SymbolSum(2, items)
