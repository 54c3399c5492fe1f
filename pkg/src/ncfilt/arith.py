"""Exact commutative arithmetic: rationals, multivariate polynomials, rational
functions and polynomials localized at a fixed denominator.

Variables are indexed from 0 internally and rendered as ``x1, x2, ...``.
Monomials are ordered graded-lexicographically with ``x1 < x2 < ... < xn``.
"""

import heapq
import os
import itertools
from math import factorial

from gmpy2 import mpq

__all__ = [
    "Q", "ArithmeticError_", "ArityError", "InexactDivisionError",
    "MultiPoly", "RatFunc", "LocalizedPoly",
    "partial_derivative", "difference_quotient", "difference_derivative",
    "merge_variables", "format_rational",
]


def Q(x, y=None):
    """Exact rational constructor (accepts ints, strings like '3/4', mpq)."""
    if y is None:
        return mpq(x)
    return mpq(x, y)


CERT_BOUND_ENV = "NCFILT_CERT_BOUND"


class ArithmeticError_(ArithmeticError):
    pass


class ArityError(ArithmeticError_, ValueError):
    pass


class InexactDivisionError(ArithmeticError_):
    pass


def format_rational(c):
    return str(mpq(c))


def _grlex_key(e):
    # x1 < x2 < ... < xn: compare total degree, then exponents from x_n down
    return (sum(e), e[::-1])


def _mono_str(e, names=None):
    parts = []
    for i, k in enumerate(e):
        if k == 0:
            continue
        name = names[i] if names else f"x{i + 1}"
        parts.append(name if k == 1 else f"{name}^{k}")
    return "*".join(parts)


class MultiPoly:
    """Polynomial with exact rational coefficients in a fixed number of variables.

    ``terms`` maps exponent tuples to nonzero ``mpq`` coefficients.  Instances
    are treated as immutable.
    """

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars, terms=None, _clean=False):
        self.nvars = nvars
        self._hash = None
        if terms is None:
            self.terms = {}
        elif _clean:
            self.terms = terms
        else:
            t = {}
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != nvars:
                    raise ArityError(f"exponent {e} has wrong length for {nvars} variables")
                c = mpq(c)
                if c:
                    t[e] = t.get(e, 0) + c
            self.terms = {e: c for e, c in t.items() if c}

    # constructors
    @classmethod
    def constant(cls, nvars, c):
        c = mpq(c)
        return cls(nvars, {(0,) * nvars: c} if c else {}, _clean=True)

    @classmethod
    def zero(cls, nvars):
        return cls(nvars, {}, _clean=True)

    @classmethod
    def one(cls, nvars):
        return cls.constant(nvars, 1)

    @classmethod
    def var(cls, nvars, i):
        if not 0 <= i < nvars:
            raise IndexError(f"variable index {i} out of range for {nvars} variables")
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): mpq(1)}, _clean=True)

    @classmethod
    def monomial(cls, exps, c=1):
        exps = tuple(exps)
        c = mpq(c)
        return cls(len(exps), {exps: c} if c else {}, _clean=True)

    # basic protocol
    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, type(mpq(0)))):
            return self.terms == ({(0,) * self.nvars: mpq(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        return f"MultiPoly({self.nvars}, {str(self)!r})"

    def __str__(self):
        return self.to_string()

    def to_string(self, names=None):
        if not self.terms:
            return "0"
        out = []
        for e in sorted(self.terms, key=_grlex_key, reverse=True):
            c = self.terms[e]
            mono = _mono_str(e, names)
            sign = "-" if c < 0 else "+"
            a = -c if c < 0 else c
            if not mono:
                body = format_rational(a)
            elif a == 1:
                body = mono
            else:
                body = f"{format_rational(a)}*{mono}"
            out.append((sign, body))
        s = ("-" if out[0][0] == "-" else "") + out[0][1]
        for sign, body in out[1:]:
            s += f" {sign} {body}"
        return s

    def _check(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.constant(self.nvars, other)
        elif other.nvars != self.nvars:
            raise ArityError(f"arity mismatch: {self.nvars} vs {other.nvars}")
        return other

    # ring operations
    def __add__(self, other):
        if isinstance(other, (RatFunc, LocalizedPoly)):
            return NotImplemented
        other = self._check(other)
        if len(other.terms) > len(self.terms):
            a, b = other.terms, self.terms
        else:
            a, b = self.terms, other.terms
        t = dict(a)
        for e, c in b.items():
            v = t.get(e)
            if v is None:
                t[e] = c
            else:
                v = v + c
                if v:
                    t[e] = v
                else:
                    del t[e]
        return MultiPoly(self.nvars, t, _clean=True)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.nvars, {e: -c for e, c in self.terms.items()}, _clean=True)

    def __sub__(self, other):
        if isinstance(other, (RatFunc, LocalizedPoly)):
            return NotImplemented
        return self + (-self._check(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = mpq(c)
        if not c:
            return MultiPoly.zero(self.nvars)
        return MultiPoly(self.nvars, {e: v * c for e, v in self.terms.items()}, _clean=True)

    def __mul__(self, other):
        if isinstance(other, (RatFunc, LocalizedPoly)):
            return NotImplemented
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        other = self._check(other)
        if not self.terms or not other.terms:
            return MultiPoly.zero(self.nvars)
        t = {}
        get = t.get
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple([a + b for a, b in zip(e1, e2)])
                t[e] = get(e, 0) + c1 * c2
        return MultiPoly(self.nvars, {e: c for e, c in t.items() if c}, _clean=True)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = MultiPoly.one(self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # inspection
    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def constant_term(self):
        return self.terms.get((0,) * self.nvars, mpq(0))

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def degree(self, i):
        return max((e[i] for e in self.terms), default=-1)

    def max_exponents(self):
        m = [0] * self.nvars
        for e in self.terms:
            for i, k in enumerate(e):
                if k > m[i]:
                    m[i] = k
        return tuple(m)

    def depends_on(self, i):
        return any(e[i] for e in self.terms)

    def leading(self):
        e = max(self.terms, key=_grlex_key)
        return e, self.terms[e]

    def homogeneous_part(self, k):
        return MultiPoly(self.nvars, {e: c for e, c in self.terms.items() if sum(e) == k}, _clean=True)

    # calculus
    def diff(self, i, k=1):
        if not 0 <= i < self.nvars:
            raise IndexError(f"variable index {i} out of range for {self.nvars} variables")
        t = {}
        for e, c in self.terms.items():
            if e[i] >= k:
                f = 1
                for j in range(k):
                    f *= e[i] - j
                ne = list(e)
                ne[i] -= k
                t[tuple(ne)] = c * f
        return MultiPoly(self.nvars, t, _clean=True)

    def diff_multi(self, alpha):
        """Mixed partial derivative of multi-order ``alpha``."""
        t = {}
        for e, c in self.terms.items():
            f = 1
            ok = True
            for k, a in zip(e, alpha):
                if k < a:
                    ok = False
                    break
                for j in range(a):
                    f *= k - j
            if ok:
                t[tuple([k - a for k, a in zip(e, alpha)])] = c * f
        return MultiPoly(self.nvars, t, _clean=True)

    def evaluate(self, point):
        total = mpq(0)
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v *= mpq(x) ** k
            total += v
        return total

    def substitute(self, images, target_nvars=None):
        """Replace variable ``i`` by ``images[i]`` (polynomials of a common arity)."""
        if target_nvars is None:
            target_nvars = images[0].nvars if images else 0
        result = MultiPoly.zero(target_nvars)
        powers = {}
        for e, c in self.terms.items():
            m = MultiPoly.constant(target_nvars, c)
            for i, k in enumerate(e):
                if k:
                    key = (i, k)
                    if key not in powers:
                        powers[key] = images[i] ** k
                    m = m * powers[key]
            result = result + m
        return result

    def remap(self, nvars, positions):
        """Move variable ``i`` to position ``positions[i]`` in a ring of ``nvars`` variables."""
        t = {}
        for e, c in self.terms.items():
            ne = [0] * nvars
            for i, k in enumerate(e):
                if k:
                    ne[positions[i]] += k
            ne = tuple(ne)
            t[ne] = t.get(ne, 0) + c
        return MultiPoly(nvars, {e: c for e, c in t.items() if c}, _clean=True)

    # division
    def divmod(self, other):
        """Multivariate division by ``other`` with respect to graded lex order."""
        other = self._check(other)
        if not other:
            raise ZeroDivisionError("division by zero polynomial")
        lt_e, lt_c = other.leading()
        rest = [(e, c) for e, c in other.terms.items() if e != lt_e]
        rem = dict(self.terms)
        heap = [(_neg_key(e), e) for e in rem]
        heapq.heapify(heap)
        quot, r = {}, {}
        while heap:
            _, e = heapq.heappop(heap)
            c = rem.pop(e, None)
            if c is None:
                continue
            if all(a >= b for a, b in zip(e, lt_e)):
                m = tuple([a - b for a, b in zip(e, lt_e)])
                q = c / lt_c
                quot[m] = quot.get(m, 0) + q
                for be, bc in rest:
                    ne = tuple([a + b for a, b in zip(m, be)])
                    v = rem.get(ne)
                    if v is None:
                        rem[ne] = -q * bc
                        heapq.heappush(heap, (_neg_key(ne), ne))
                    else:
                        v = v - q * bc
                        if v:
                            rem[ne] = v
                        else:
                            del rem[ne]
            else:
                r[e] = c
        return (MultiPoly(self.nvars, {e: c for e, c in quot.items() if c}, _clean=True),
                MultiPoly(self.nvars, r, _clean=True))

    def exact_div(self, other):
        """Exact quotient; raises :class:`InexactDivisionError` on a nonzero remainder."""
        q, r = self.divmod(other)
        if r:
            raise InexactDivisionError(f"{other} does not divide {self}")
        return q

    def divides(self, other):
        if not self:
            return False
        if not other:
            return True
        if other.total_degree() < self.total_degree():
            return False
        return not other.divmod(self)[1]

    def to_ratfunc(self):
        return RatFunc(self, MultiPoly.one(self.nvars))


_KEYS = {}


def _neg_key_cached(e):
    k = _KEYS.get(e)
    if k is None:
        if len(_KEYS) > 1_000_000:
            _KEYS.clear()
        k = _KEYS[e] = _neg_key(e)
    return k


def _neg_key(e):
    return (-sum(e), tuple(-k for k in reversed(e)))


# -- gcd via sympy's sparse polynomial rings ---------------------------------

_RINGS = {}


def _sympy_ring(nvars):
    if nvars not in _RINGS:
        from sympy import QQ
        from sympy.polys.rings import ring
        names = ",".join(f"x{i + 1}" for i in range(nvars)) if nvars else "x0"
        R = ring(names, QQ)[0]
        _RINGS[nvars] = R
    return _RINGS[nvars]


def _to_sympy(p):
    from sympy import QQ
    R = _sympy_ring(p.nvars)
    if p.nvars == 0:
        return R({(0,): QQ(int(c.numerator), int(c.denominator)) for c in p.terms.values()})
    return R({e: QQ(int(c.numerator), int(c.denominator)) for e, c in p.terms.items()})


def _from_sympy(P, nvars):
    t = {}
    for e, c in P.terms():
        e = tuple(e) if nvars else ()
        t[e] = mpq(int(c.numerator), int(c.denominator))
    return MultiPoly(nvars, {e: c for e, c in t.items() if c}, _clean=True)


def poly_gcd(a, b):
    """Monic (under grlex) gcd of two polynomials."""
    if not a:
        return _monic(b) if b else b
    if not b:
        return _monic(a)
    if a.is_constant() or b.is_constant():
        return MultiPoly.one(a.nvars)
    if a.nvars == 0:
        return MultiPoly.one(0)
    G = _to_sympy(a).gcd(_to_sympy(b))
    return _monic(_from_sympy(G, a.nvars))


def _monic(p):
    _, c = p.leading()
    return p.scale(1 / c)


class RatFunc:
    """Reduced quotient of two polynomials with a monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, _reduced=False):
        if den is None:
            den = MultiPoly.one(num.nvars)
        if num.nvars != den.nvars:
            raise ArityError("numerator and denominator arities differ")
        if not den:
            raise ZeroDivisionError("zero denominator")
        if _reduced:
            self.num, self.den = num, den
            return
        if not num:
            self.num, self.den = num, MultiPoly.one(num.nvars)
            return
        if not den.is_constant():
            g = poly_gcd(num, den)
            if not g.is_constant():
                num = num.exact_div(g)
                den = den.exact_div(g)
        _, c = den.leading()
        self.num, self.den = num.scale(1 / c), den.scale(1 / c)

    @property
    def nvars(self):
        return self.num.nvars

    @classmethod
    def from_poly(cls, p):
        return cls(p, MultiPoly.one(p.nvars), _reduced=True)

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        if isinstance(other, MultiPoly):
            return self.den.is_constant() and self.num == other
        if isinstance(other, LocalizedPoly):
            return self == other.to_ratfunc()
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RatFunc({str(self)!r})"

    def __str__(self):
        return self.to_string()

    def to_string(self, names=None):
        n = self.num.to_string(names)
        if self.den.is_constant():
            return n
        return f"({n})/({self.den.to_string(names)})"

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, MultiPoly):
            return RatFunc.from_poly(other)
        if isinstance(other, LocalizedPoly):
            return other.to_ratfunc()
        return RatFunc.from_poly(MultiPoly.constant(self.nvars, other))

    def __add__(self, other):
        o = self._coerce(other)
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        return RatFunc(self.num.scale(c), self.den, _reduced=bool(mpq(c)))

    def __mul__(self, other):
        if not isinstance(other, (RatFunc, MultiPoly, LocalizedPoly)):
            return self.scale(other)
        o = self._coerce(other)
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("inverse of zero")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        return RatFunc(self.num ** k, self.den ** k)

    def diff(self, i):
        n, d = self.num, self.den
        return RatFunc(n.diff(i) * d - n * d.diff(i), d * d)

    def diff_multi(self, alpha):
        r = self
        for i, a in enumerate(alpha):
            for _ in range(a):
                r = r.diff(i)
        return r

    def depends_on(self, i):
        return self.num.depends_on(i) or self.den.depends_on(i)

    def is_polynomial(self):
        return self.den.is_constant()

    def to_poly(self):
        if not self.den.is_constant():
            raise InexactDivisionError(f"{self} is not a polynomial")
        return self.num.scale(1 / self.den.constant_term())

    def evaluate(self, point):
        return self.num.evaluate(point) / self.den.evaluate(point)

    def remap(self, nvars, positions):
        return RatFunc(self.num.remap(nvars, positions), self.den.remap(nvars, positions))


class LocalizedPoly:
    """Element ``num / g**k`` of ``C[x][1/g]`` for a fixed polynomial ``g``.

    The exponent ``k`` is kept minimal, which makes the representation
    canonical: equal elements have equal ``(num, k)``.
    """

    __slots__ = ("num", "k", "g")

    def __init__(self, num, k=0, g=None, _reduced=False):
        if g is None:
            raise ValueError("LocalizedPoly needs its denominator polynomial g")
        if num.nvars != g.nvars:
            raise ArityError("numerator and g arities differ")
        if k < 0:
            num = num * g ** (-k)
            k = 0
        if not _reduced:
            if not num:
                k = 0
            while k:
                q = exact_quotient(num, g)
                if q is None:
                    break
                num = q
                k -= 1
        self.num, self.k, self.g = num, k, g

    @property
    def nvars(self):
        return self.num.nvars

    @classmethod
    def from_poly(cls, p, g):
        return cls(p, 0, g, _reduced=True)

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if isinstance(other, LocalizedPoly):
            if self.g == other.g:
                return self.k == other.k and self.num == other.num
            return self.to_ratfunc() == other.to_ratfunc()
        if isinstance(other, MultiPoly):
            return self.k == 0 and self.num == other
        if isinstance(other, RatFunc):
            return self.to_ratfunc() == other
        if isinstance(other, (int, type(mpq(0)))):
            return self.k == 0 and self.num == other
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.k))

    def __repr__(self):
        return f"LocalizedPoly({str(self)!r})"

    def __str__(self):
        return self.to_string()

    def to_string(self, names=None):
        n = self.num.to_string(names)
        if not self.k:
            return n
        gs = self.g.to_string(names)
        den = f"({gs})" if len(self.g) > 1 or (self.g.is_constant()) else gs
        if self.k > 1:
            den = f"{den}^{self.k}"
        return f"({n})/{den}"

    def _coerce(self, other):
        if isinstance(other, LocalizedPoly):
            if other.g != self.g:
                raise ArithmeticError_(f"localizations differ: {self.g} vs {other.g}")
            return other
        if isinstance(other, MultiPoly):
            return LocalizedPoly(other, 0, self.g, _reduced=True)
        if isinstance(other, RatFunc):
            return LocalizedPoly.from_ratfunc(other, self.g)
        return LocalizedPoly(MultiPoly.constant(self.nvars, other), 0, self.g, _reduced=True)

    def __add__(self, other):
        o = self._coerce(other)
        if self.k == o.k:
            return LocalizedPoly(self.num + o.num, self.k, self.g)
        if self.k > o.k:
            return LocalizedPoly(self.num + o.num * self.g ** (self.k - o.k), self.k, self.g, _reduced=True)
        return LocalizedPoly(o.num + self.num * self.g ** (o.k - self.k), o.k, self.g, _reduced=True)

    __radd__ = __add__

    def __neg__(self):
        return LocalizedPoly(-self.num, self.k, self.g, _reduced=True)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = mpq(c)
        if not c:
            return LocalizedPoly(MultiPoly.zero(self.nvars), 0, self.g, _reduced=True)
        return LocalizedPoly(self.num.scale(c), self.k, self.g, _reduced=True)

    def __mul__(self, other):
        if not isinstance(other, (LocalizedPoly, MultiPoly, RatFunc)):
            return self.scale(other)
        o = self._coerce(other)
        return LocalizedPoly(self.num * o.num, self.k + o.k, self.g)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        return LocalizedPoly(self.num ** k, self.k * k, self.g)

    def diff(self, i):
        # (n / g^k)' = (n' g - k n g') / g^(k+1)
        if not self.k:
            return LocalizedPoly(self.num.diff(i), 0, self.g, _reduced=True)
        n, g, k = self.num, self.g, self.k
        return LocalizedPoly(n.diff(i) * g - n * g.diff(i) * k, k + 1, g)

    def diff_multi(self, alpha):
        if not self.k:
            return LocalizedPoly(self.num.diff_multi(alpha), 0, self.g, _reduced=True)
        r = self
        for i, a in enumerate(alpha):
            for _ in range(a):
                r = r.diff(i)
        return r

    def unit_certificate(self, bound=None):
        """Return ``(p, m)`` with ``num * p == g**m`` if this element is a unit."""
        p, m = unit_certificate(self.num, self.g, bound)
        return p, m

    def inverse(self):
        p, m = unit_certificate(self.num, self.g)
        # (num/g^k)^-1 = g^k p / g^m
        return LocalizedPoly(p * self.g ** self.k, m, self.g)

    def is_polynomial(self):
        return self.k == 0

    def to_poly(self):
        if self.k:
            raise InexactDivisionError(f"{self} is not a polynomial")
        return self.num

    def to_ratfunc(self):
        return RatFunc(self.num, self.g ** self.k)

    @classmethod
    def from_ratfunc(cls, r, g):
        """Write ``r`` with a power of ``g`` as denominator, if possible."""
        den = r.den
        if den.is_constant():
            return cls(r.num.scale(1 / den.constant_term()), 0, g)
        for k in range(1, den.total_degree() + 1):
            gk = g ** k
            q, rem = gk.divmod(den)
            if not rem:
                return cls(r.num * q, k, g)
        raise ArithmeticError_(f"denominator {den} is not a divisor of a power of {g}")

    def evaluate(self, point):
        return self.num.evaluate(point) / self.g.evaluate(point) ** self.k


def exact_quotient(p, g):
    """``p / g`` if ``g`` divides ``p`` exactly, else ``None``.

    Cheap necessary conditions (degrees, leading and trailing monomials) are
    tried first; the division itself stops at the first leading term that
    the leading term of ``g`` does not divide.
    """
    if g.is_constant():
        return p.scale(1 / g.constant_term())
    if not p:
        return p
    if p.total_degree() < g.total_degree():
        return None
    pm, gm = p.max_exponents(), g.max_exponents()
    if any(a < b for a, b in zip(pm, gm)):
        return None
    lt_e, lt_c = g.leading()
    if any(a < b for a, b in zip(max(p.terms, key=_grlex_key), lt_e)):
        return None
    lo_g = min(g.terms, key=_grlex_key)
    if any(a < b for a, b in zip(min(p.terms, key=_grlex_key), lo_g)):
        return None
    rest = [(e, c) for e, c in g.terms.items() if e != lt_e]
    nz = [i for i, a in enumerate(lt_e) if a]
    rem = dict(p.terms)
    key = _neg_key_cached
    heap = [(key(e), e) for e in rem]
    heapq.heapify(heap)
    quot = {}
    pop, push, get = heapq.heappop, heapq.heappush, rem.get
    inv_lt = 1 / lt_c
    while heap:
        _, e = pop(heap)
        c = rem.pop(e, None)
        if c is None:
            continue
        for i in nz:
            if e[i] < lt_e[i]:
                return None
        m = tuple([a - b for a, b in zip(e, lt_e)])
        q = c * inv_lt
        quot[m] = q
        for be, bc in rest:
            ne = tuple([a + b for a, b in zip(m, be)])
            v = get(ne)
            if v is None:
                rem[ne] = -q * bc
                push(heap, (key(ne), ne))
            else:
                v = v - q * bc
                if v:
                    rem[ne] = v
                else:
                    del rem[ne]
    return MultiPoly(p.nvars, {e: c for e, c in quot.items() if c}, _clean=True)


def unit_certificate(a, g, bound=None):
    """Find ``(p, m)`` with ``a * p == g**m``, i.e. ``a`` is a unit of ``C[x][1/g]``.

    If ``a`` is a unit then every irreducible factor of ``a`` divides ``g`` with
    multiplicity at most ``deg(a)``, so ``m <= deg(a)`` always suffices; a
    smaller ``bound`` may be passed to cut the search, or set through the
    ``NCFILT_CERT_BOUND`` environment variable.
    """
    if not a:
        raise ArithmeticError_("zero is not invertible")
    if bound is None:
        env = os.environ.get(CERT_BOUND_ENV)
        bound = int(env) if env else max(a.total_degree(), 0)
    gm = MultiPoly.one(a.nvars)
    for m in range(bound + 1):
        if m:
            gm = gm * g
        q, r = gm.divmod(a)
        if not r:
            return q, m
    raise ArithmeticError_(f"abelianization not invertible on D_g: {a} does not divide a power of {g} (m <= {bound})")


# -- derivatives and difference derivatives ----------------------------------

def partial_derivative(f, i):
    """Formal partial derivative in variable ``i`` (0-based)."""
    if not 0 <= i < f.nvars:
        raise IndexError(f"variable index {i} out of range for {f.nvars} variables")
    return f.diff(i)


def _split_positions(nvars, i):
    # variable i stays at i, the new copy goes to i+1, later variables shift right
    return [j if j <= i else j + 1 for j in range(nvars)]


def difference_quotient(f, i):
    """Difference quotient ``(f(..y'..) - f(..y''..)) / (y' - y'')`` in variable ``i``.

    The result has one more variable: ``y'`` sits at position ``i`` and
    ``y''`` at position ``i + 1``.
    """
    if isinstance(f, RatFunc):
        return _ratfunc_difference_quotient(f, i)
    n = f.nvars
    t = {}
    for e, c in f.terms.items():
        k = e[i]
        if not k:
            continue
        head, tail = e[:i], e[i + 1:]
        for p in range(k):
            ne = head + (p, k - 1 - p) + tail
            t[ne] = t.get(ne, 0) + c
    return MultiPoly(n + 1, {e: c for e, c in t.items() if c}, _clean=True)


def _ratfunc_difference_quotient(f, i):
    n = f.nvars
    pos1 = _split_positions(n, i)
    pos2 = list(pos1)
    pos2[i] = i + 1
    N1, D1 = f.num.remap(n + 1, pos1), f.den.remap(n + 1, pos1)
    N2, D2 = f.num.remap(n + 1, pos2), f.den.remap(n + 1, pos2)
    diff = MultiPoly.var(n + 1, i) - MultiPoly.var(n + 1, i + 1)
    top = (N1 * D2 - N2 * D1).exact_div(diff)
    return RatFunc(top, D1 * D2)


def difference_derivative(f, m, var=0):
    """``m``-fold divided difference of ``f`` in variable ``var``.

    The variable is replaced by ``m + 1`` slot variables at positions
    ``var, ..., var + m``.  For a univariate ``f`` this is the classical
    divided difference ``f[xi_0, ..., xi_m]``.
    """
    r = f
    for j in range(m):
        r = difference_quotient(r, var + j)
    return r


def divided_difference_sum(f, points):
    """Divided difference of a univariate ``f`` by the explicit sum formula."""
    total = mpq(0)
    for j, pj in enumerate(points):
        den = mpq(1)
        for i, pi in enumerate(points):
            if i != j:
                den *= mpq(pj) - mpq(pi)
        total += f.evaluate([pj]) / den
    return total


def merge_variables(f, i, j):
    """Substitute variable ``j`` by variable ``i`` and drop ``j`` (arity drops by one)."""
    n = f.nvars
    if not (0 <= i < n and 0 <= j < n) or i == j:
        raise IndexError(f"bad merge indices {i}, {j} for {n} variables")
    positions = []
    for k in range(n):
        if k == j:
            positions.append(i if i < j else i - 1)
        else:
            positions.append(k if k < j else k - 1)
    return f.remap(n - 1, positions)


def multi_indices(n, total):
    """All exponent tuples of length ``n`` with sum exactly ``total``."""
    if n == 0:
        if total == 0:
            yield ()
        return
    for c in itertools.combinations_with_replacement(range(n), total):
        e = [0] * n
        for k in c:
            e[k] += 1
        yield tuple(e)


def multi_factorial(alpha):
    r = 1
    for a in alpha:
        r *= factorial(a)
    return r
