"""Ore localization of ``R_d`` at the lift of a polynomial ``g``.

Two representations are kept side by side:

* left fractions ``[[g]]^{-k} r`` with ``r`` a polynomial normal form and
  ``k`` minimal, manipulated with the right-division identity
  ``r s^{-l} = s^{-(l+d)} sum_m C(m+l-1, m) s^{d-m} ad(s)^m(r)``
  (``ad(s)^{d+1}`` vanishes in ``R_d``);
* rational normal forms, i.e. :class:`NormalForm` with coefficients in
  ``C[x][1/g]``, where ``[[g]]^{-1} = sum_j (-e)^j [[1/g]]`` with
  ``e = [[1/g]][[g]] - 1`` of NC-order >= 1.

Both are exact; conversions go both ways.
"""

from math import comb

from gmpy2 import mpq

from .arith import ArithmeticError_, LocalizedPoly, MultiPoly, RatFunc, unit_certificate
from .normal import NormalForm, algebra, multiply

__all__ = [
    "ContextMismatch", "NotInvertible", "LocalizationContext", "LeftFraction",
    "normalize_right_division", "invert", "matrix_invert", "matrix_invert_rational",
    "to_rational_normal_form", "from_rational", "matmul", "identity_matrix",
    "rational_one", "rational_invert", "relocalize", "is_identity_product",
]


class ContextMismatch(ValueError):
    pass


class NotInvertible(ArithmeticError_):
    pass


class LocalizationContext:
    """``R_d[[[g]]^{-1}]`` on ``n`` generators."""

    def __init__(self, n, d, g):
        if isinstance(g, (int, type(mpq(0)))):
            g = MultiPoly.constant(n, g)
        if not g:
            raise ValueError("localization at zero")
        if g.nvars != n:
            raise ValueError(f"g has {g.nvars} variables, expected {n}")
        self.n, self.d, self.g = n, d, g
        self.alg = algebra(n, d)
        self.G = NormalForm.lift(self.alg, g)
        self._gpow = [NormalForm.lift(self.alg, 1), self.G]
        self._ginv = None

    def __eq__(self, other):
        return (isinstance(other, LocalizationContext)
                and (self.n, self.d, self.g) == (other.n, other.d, other.g))

    def __hash__(self):
        return hash((self.n, self.d, self.g))

    def __repr__(self):
        return f"LocalizationContext(n={self.n}, d={self.d}, g={self.g})"

    def gpow(self, k):
        while len(self._gpow) <= k:
            self._gpow.append(self._gpow[-1] * self.G)
        return self._gpow[k]

    # constructors
    def lift(self, x):
        """Fraction with denominator exponent 0 (polynomial or normal form)."""
        if isinstance(x, LeftFraction):
            return x
        if isinstance(x, NormalForm):
            return LeftFraction(self, 0, x)
        if not isinstance(x, MultiPoly):
            x = MultiPoly.constant(self.n, x)
        return LeftFraction(self, 0, NormalForm.lift(self.alg, x))

    def one(self):
        return self.lift(1)

    def zero(self):
        return self.lift(0)

    def g_inverse(self):
        """``[[g]]^{-1}`` as a fraction."""
        return LeftFraction(self, 1, NormalForm.lift(self.alg, 1))

    def localized(self, p):
        return LocalizedPoly(p, 0, self.g, _reduced=True) if isinstance(p, MultiPoly) else p

    def rational(self, a):
        """A polynomial normal form re-expressed with coefficients in ``C[x][1/g]``."""
        return NormalForm(a.alg, {lam: self.localized(c) for lam, c in a.terms.items()})

    def rational_g_inverse(self):
        if self._ginv is None:
            alg = self.alg
            u = NormalForm(alg, {(): LocalizedPoly(MultiPoly.one(self.n), 1, self.g)})
            e = u * self.rational(self.G) - NormalForm(alg, {(): LocalizedPoly(MultiPoly.one(self.n), 0, self.g)})
            acc = u
            term = u
            for _ in range(self.d):
                term = -(e * term)
                if not term:
                    break
                acc = acc + term
            self._ginv = acc
        return self._ginv

    def left_divide(self, r):
        """``q`` with ``[[g]] q = r``, or ``None`` if ``r`` is not left-divisible."""
        alg = self.alg
        residual = r
        q = NormalForm.zero(alg)
        g = self.g
        for layer in range(self.d + 1):
            part = {}
            for lam, c in residual.terms.items():
                if alg.ord(lam) == layer:
                    if isinstance(c, LocalizedPoly):
                        return None
                    qq, rem = c.divmod(g)
                    if rem:
                        return None
                    part[lam] = qq
            if part:
                piece = NormalForm(alg, part)
                q = q + piece
                residual = residual - self.G * piece
        if residual:
            return None
        return q


class LeftFraction:
    """``[[g]]^{-k} * num`` in canonical form (minimal ``k``)."""

    __slots__ = ("ctx", "k", "num")

    def __init__(self, ctx, k, num, canonical=False):
        if num.alg is not ctx.alg:
            if (num.alg.n, num.alg.d) != (ctx.n, ctx.d):
                raise ContextMismatch("numerator lives in another truncation")
        if not canonical:
            if not num:
                k = 0
            while k > 0:
                q = ctx.left_divide(num)
                if q is None:
                    break
                num, k = q, k - 1
        self.ctx, self.k, self.num = ctx, k, num

    def _check(self, other):
        if not isinstance(other, LeftFraction):
            raise TypeError(f"expected LeftFraction, got {type(other).__name__}")
        if other.ctx != self.ctx:
            raise ContextMismatch(f"{self.ctx} vs {other.ctx}")

    def _coerce(self, other):
        if isinstance(other, LeftFraction):
            self._check(other)
            return other
        return self.ctx.lift(other)

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if not isinstance(other, LeftFraction):
            try:
                other = self.ctx.lift(other)
            except (TypeError, ValueError):
                return NotImplemented
        if other.ctx != self.ctx:
            return False
        # canonical forms are unique; cross-multiplication for safety
        k = max(self.k, other.k)
        return self.ctx.gpow(k - self.k) * self.num == self.ctx.gpow(k - other.k) * other.num

    def __hash__(self):
        return hash((self.k, self.num))

    def __add__(self, other):
        o = self._coerce(other)
        k = max(self.k, o.k)
        num = self.ctx.gpow(k - self.k) * self.num + self.ctx.gpow(k - o.k) * o.num
        return LeftFraction(self.ctx, k, num)

    __radd__ = __add__

    def __neg__(self):
        return LeftFraction(self.ctx, self.k, -self.num, canonical=True)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        return LeftFraction(self.ctx, self.k, self.num.scale(c))

    def __mul__(self, other):
        if not isinstance(other, (LeftFraction, NormalForm, MultiPoly)):
            return self.scale(other)
        o = self._coerce(other)
        # g^-k r * g^-k' r' = g^-k (r g^-k') r'
        moved = _right_divide(self.ctx, self.num, o.k)
        return LeftFraction(self.ctx, self.k + moved.k, moved.num * o.num)

    def __rmul__(self, other):
        return self._coerce(other) * self

    def __pow__(self, e):
        if e < 0:
            return invert(self) ** (-e)
        r = self.ctx.one()
        for _ in range(e):
            r = r * self
        return r

    def abelianize(self):
        """Commutative image as an element of ``C[x][1/g]``."""
        return LocalizedPoly(self.num.abelianize(), self.k, self.ctx.g)

    def is_polynomial(self):
        return self.k == 0

    def to_rational(self):
        return to_rational_normal_form(self)

    def __repr__(self):
        return f"LeftFraction({self})"

    def __str__(self):
        return self.render()

    def render(self):
        body = self.num.render()
        if not self.k:
            return body
        g = self.ctx.g.to_string()
        base = g if len(self.ctx.g) == 1 and "*" not in g and "^" not in g else f"({g})"
        return f"{base}^-{self.k} * ( {body} )"


def _ad(s, a):
    return s * a - a * s


def _right_divide(ctx, r, l):
    """``r [[g]]^{-l}`` as a left fraction."""
    if l == 0 or not r:
        return LeftFraction(ctx, 0, r, canonical=True)
    d = ctx.d
    total = NormalForm.zero(ctx.alg)
    adm = r
    for m in range(d + 1):
        if not adm:
            break
        total = total + (ctx.gpow(d - m) * adm).scale(comb(m + l - 1, m))
        adm = _ad(ctx.G, adm)
    return LeftFraction(ctx, l + d, total)


def normalize_right_division(a, ctx):
    """``a [[g]]^{-1}`` as a canonical left fraction."""
    if isinstance(a, LeftFraction):
        if a.ctx != ctx:
            raise ContextMismatch("fraction belongs to another context")
        return a * ctx.g_inverse()
    if (a.alg.n, a.alg.d) != (ctx.n, ctx.d):
        raise ContextMismatch("element lives in another truncation")
    return _right_divide(ctx, a, 1)


def _unit_lift(ctx, p0):
    """Left fraction with abelianization ``1 / p0`` (``p0`` a unit of ``C[x][1/g]``)."""
    if isinstance(p0, LocalizedPoly):
        num, k = p0.num, p0.k
    else:
        num, k = p0, 0
    try:
        p, m = unit_certificate(num, ctx.g)
    except ArithmeticError_ as exc:
        raise NotInvertible(str(exc)) from None
    # 1/(num/g^k) = g^k p / g^m
    return LeftFraction(ctx, m, NormalForm.lift(ctx.alg, p * ctx.g ** k))


def invert(a):
    """Two-sided inverse by a finite Neumann series."""
    if not isinstance(a, LeftFraction):
        raise TypeError("invert expects a LeftFraction")
    ctx = a.ctx
    b = _unit_lift(ctx, a.abelianize())
    u = b * a - ctx.one()
    acc = b
    term = b
    for _ in range(ctx.d):
        term = -(u * term)
        if not term:
            break
        acc = acc + term
    return acc


# -- matrices --------------------------------------------------------------

def identity_matrix(size, one, zero):
    return [[one if i == j else zero for j in range(size)] for i in range(size)]


def matmul(A, B, zero):
    n, m, p = len(A), len(B), len(B[0])
    out = []
    for i in range(n):
        row = []
        for j in range(p):
            s = zero
            for k in range(m):
                if A[i][k] and B[k][j]:
                    s = s + A[i][k] * B[k][j]
            row.append(s)
        out.append(row)
    return out


def _abelian_inverse(ctx, M):
    """Inverse of the abelianized matrix, entries in ``C[x][1/g]``.

    Gauss-Jordan over the rational function field, then each entry is
    rewritten with a power of ``g`` as denominator.
    """
    size = len(M)
    n = ctx.n
    A = [[_abelianize_entry(ctx, x).to_ratfunc() for x in row] for row in M]
    one, zero = RatFunc.from_poly(MultiPoly.one(n)), RatFunc.from_poly(MultiPoly.zero(n))
    inv = identity_matrix(size, one, zero)
    for col in range(size):
        piv = next((r for r in range(col, size) if A[r][col]), None)
        if piv is None:
            raise NotInvertible("abelianized matrix is singular")
        A[col], A[piv] = A[piv], A[col]
        inv[col], inv[piv] = inv[piv], inv[col]
        pinv = A[col][col].inverse()
        A[col] = [x * pinv for x in A[col]]
        inv[col] = [x * pinv for x in inv[col]]
        for r in range(size):
            if r != col and A[r][col]:
                f = A[r][col]
                A[r] = [x - f * y for x, y in zip(A[r], A[col])]
                inv[r] = [x - f * y for x, y in zip(inv[r], inv[col])]
    try:
        return [[LocalizedPoly.from_ratfunc(x, ctx.g) for x in row] for row in inv]
    except ArithmeticError_ as exc:
        raise NotInvertible(f"abelianized inverse not regular on D_g: {exc}") from None


def _abelianize_entry(ctx, x):
    if isinstance(x, LeftFraction):
        return x.abelianize()
    if isinstance(x, NormalForm):
        c = x.abelianize()
        return c if isinstance(c, LocalizedPoly) else LocalizedPoly(c, 0, ctx.g)
    return LocalizedPoly(x, 0, ctx.g)


def _neumann(B, M, one, zero, d):
    size = len(M)
    I = identity_matrix(size, one, zero)
    BM = matmul(B, M, zero)
    U = [[BM[i][j] - I[i][j] for j in range(size)] for i in range(size)]
    acc = B
    term = B
    for _ in range(d):
        term = [[-x for x in row] for row in matmul(U, term, zero)]
        if not any(x for row in term for x in row):
            break
        acc = [[acc[i][j] + term[i][j] for j in range(size)] for i in range(size)]
    return acc


def matrix_invert_rational(ctx, M):
    """Inverse of a square matrix of rational normal forms (coefficients in ``C[x][1/g]``)."""
    Bab = _abelian_inverse(ctx, M)
    alg = ctx.alg
    B = [[NormalForm(alg, {(): x}) for x in row] for row in Bab]
    Mr = [[x if isinstance(x, NormalForm) else ctx.rational(NormalForm.lift(alg, x)) for x in row] for row in M]
    Mr = [[ctx.rational(x) for x in row] for row in Mr]
    one = NormalForm(alg, {(): LocalizedPoly(MultiPoly.one(ctx.n), 0, ctx.g)})
    zero = NormalForm.zero(alg)
    return _neumann(B, Mr, one, zero, ctx.d)


def is_identity_product(A, B, ctx):
    """Whether ``A B`` is the identity, for matrices of rational normal forms.

    Entries are multiplied without cancelling powers of ``g``; an entry
    ``sum num / g^k`` is then compared with ``0`` or ``1`` after clearing
    denominators, which needs no polynomial division.
    """
    size = len(A)
    g = ctx.g
    for i in range(size):
        for j in range(size):
            levels = {}
            for k in range(size):
                if not A[i][k] or not B[k][j]:
                    continue
                for lam, c in multiply(A[i][k], B[k][j], reduce=False).terms.items():
                    if not isinstance(c, LocalizedPoly):
                        c = LocalizedPoly(c, 0, g, _reduced=True)
                    lv = levels.setdefault(lam, {})
                    lv[c.k] = lv[c.k] + c.num if c.k in lv else c.num
            if i == j:
                levels.setdefault((), {})
            for lam, lv in levels.items():
                top = max(lv, default=0)
                total = MultiPoly.zero(ctx.n)
                for k, num in lv.items():
                    total = total + num * g ** (top - k)
                want = g ** top if (i == j and lam == ()) else MultiPoly.zero(ctx.n)
                if total != want:
                    return False
    return True


def matrix_invert(M, ctx, route="rational"):
    """Inverse of a square matrix of left fractions.

    ``route="rational"`` computes in rational normal form (fast) and converts
    back; ``route="fraction"`` runs the Neumann series in the fraction calculus.
    For large matrices call :func:`matrix_invert_rational` directly and stay in
    rational normal form: the conversion back to fractions dominates.
    """
    M = [[ctx.lift(x) for x in row] for row in M]
    if route == "fraction":
        Bab = _abelian_inverse(ctx, M)
        B = [[_unit_or_zero(ctx, x) for x in row] for row in Bab]
        return _neumann(B, M, ctx.one(), ctx.zero(), ctx.d)
    R = [[to_rational_normal_form(x) for x in row] for row in M]
    inv = matrix_invert_rational(ctx, R)
    return [[from_rational(x, ctx) for x in row] for row in inv]


def _unit_or_zero(ctx, x):
    # an entry p / g^k of C[x][1/g] as the fraction [[g]]^-k [[p]]
    if not x:
        return ctx.zero()
    return LeftFraction(ctx, x.k, NormalForm.lift(ctx.alg, x.num))


# -- rational normal form ------------------------------------------------------

def to_rational_normal_form(a):
    """Image of a left fraction as a normal form over ``C[x][1/g]``."""
    ctx = a.ctx
    r = ctx.rational(a.num)
    ginv = ctx.rational_g_inverse()
    for _ in range(a.k):
        r = ginv * r
    return r


def from_rational(x, ctx):
    """Left fraction equal to a rational normal form with denominators powers of ``g``."""
    kmax = 0
    for c in x.terms.values():
        if isinstance(c, LocalizedPoly):
            if c.g != ctx.g:
                raise ContextMismatch("coefficient localized at another polynomial")
            kmax = max(kmax, c.k)
    y = x
    G = ctx.rational(ctx.G)
    for _ in range(kmax):
        y = G * y
    for K in range(kmax, (kmax + 2) * (ctx.d + 1) + 1):
        if all(not isinstance(c, LocalizedPoly) or c.k == 0 for c in y.terms.values()):
            num = NormalForm(ctx.alg, {lam: (c.num if isinstance(c, LocalizedPoly) else c)
                                       for lam, c in y.terms.items()})
            return LeftFraction(ctx, K, num)
        y = G * y
    raise ArithmeticError_("could not clear denominators")


def rational_one(ctx):
    return NormalForm(ctx.alg, {(): LocalizedPoly(MultiPoly.one(ctx.n), 0, ctx.g)})


def rational_invert(a, ctx):
    """Inverse of a rational normal form whose abelianization is a unit of ``C[x][1/g]``."""
    a0 = a.abelianize()
    if not isinstance(a0, LocalizedPoly):
        a0 = LocalizedPoly(a0, 0, ctx.g)
    try:
        u0 = a0.inverse()
    except ArithmeticError_ as exc:
        raise NotInvertible(str(exc)) from None
    u = NormalForm(ctx.alg, {(): u0})
    e = u * a - rational_one(ctx)
    acc = term = u
    for _ in range(ctx.d):
        term = -(e * term)
        if not term:
            break
        acc = acc + term
    return acc


def relocalize(x, g):
    """Rewrite the coefficients of a rational normal form over powers of ``g``."""
    out = {}
    for lam, c in x.terms.items():
        r = c.to_ratfunc() if isinstance(c, (LocalizedPoly, MultiPoly)) else c
        out[lam] = LocalizedPoly.from_ratfunc(r, g)
    return NormalForm(x.alg, out)
