"""The truncated algebra ``R_d = C<x1..xn> / F^{d+1}`` in normal form.

An element is a finite sum ``sum_lam [[f_lam(x)]] M_lam`` where ``[[f]]`` is the
standard-ordered lift of a commutative coefficient and ``M_lam`` an ordered
product of Lie basis elements of degree >= 2.  ``lam`` is stored as a
nondecreasing tuple of global basis indices, e.g. ``(2, 2, 5)``.

Multiplication uses the fact that the coefficient of ``M_nu`` in
``[[f]] M_lam * [[g]] M_mu`` is a bilinear differential operator in ``(f, g)``
with constant coefficients (translation invariance) that respects the letter
multidegree.  The constants are read off once per algebra from PBW
straightening of small monomials.  Coefficients may therefore be any
D-module algebra element: polynomials, localized polynomials, rational
functions.
"""

import itertools
from functools import lru_cache
from math import comb

from gmpy2 import mpq

from .arith import LocalizedPoly, MultiPoly, RatFunc, multi_factorial, multi_indices
from .conventions import convention_table
from .lie import _word_mul, lie_basis
from .pbw import PBWEngine

__all__ = [
    "TruncationMismatch", "Algebra", "algebra", "NormalForm",
    "multiply", "structure_eval", "abelianize", "gr_project",
    "q_dimension", "graded_count", "exponent_maps",
]


class TruncationMismatch(ValueError):
    pass


class Algebra:
    """Structure data for ``R_d`` on ``n`` generators (use :func:`algebra`)."""

    def __init__(self, n, d):
        if n < 1 or d < 0:
            raise ValueError("need n >= 1 and d >= 0")
        self.n = n
        self.d = d
        self.basis = lie_basis(n, d + 1)
        self.pbw = PBWEngine(self.basis, d)
        self.ords = self.basis.ords
        self._table00 = None
        self._ad = {}
        self._lie_mul = {}
        self._sign = convention_table()["commutation"]

    def __repr__(self):
        return f"Algebra(n={self.n}, d={self.d})"

    # exponent maps
    def ord(self, lam):
        o = self.ords
        return sum(o[i] for i in lam)

    def lam_degree(self, lam):
        deg = self.basis.degrees
        return sum(deg[i] for i in lam)

    def lam_content(self, lam):
        c = [0] * self.n
        for i in lam:
            for k, v in enumerate(self.basis.content(i)):
                c[k] += v
        return tuple(c)

    def lam_string(self, lam):
        parts = []
        for i, grp in itertools.groupby(lam):
            m = len(list(grp))
            name = self.basis.name(i)
            parts.append(name if m == 1 else f"{name}^{m}")
        return " ".join(parts)

    def split(self, seq):
        """Split a normal PBW monomial into (coefficient exponents, lam)."""
        n = self.n
        e = [0] * n
        k = 0
        for k, i in enumerate(seq):
            if i >= n:
                return tuple(e), seq[k:]
            e[i] += 1
        return tuple(e), ()

    @staticmethod
    def letters(exps):
        out = []
        for i, k in enumerate(exps):
            out.extend([i] * k)
        return tuple(out)

    # structure constants for [[f]] * [[g]]
    def table00(self):
        """Constants ``c`` with ``[[f]][[g]] = sum c d^a f d^b g M_nu``.

        Returned as ``{(alpha, beta): [(nu, c), ...]}``, excluding the trivial
        entry ``alpha = beta = 0, nu = ()``.
        """
        if self._table00 is None:
            n, pbw = self.n, self.pbw
            table = {}
            for k in range(2, 2 * self.d + 1):
                for delta in multi_indices(n, k):
                    for alpha in itertools.product(*(range(v + 1) for v in delta)):
                        beta = tuple(v - a for v, a in zip(delta, alpha))
                        if not any(alpha) or not any(beta):
                            continue
                        top = max(i for i, a in enumerate(alpha) if a)
                        low = min(i for i, b in enumerate(beta) if b)
                        if top <= low:
                            continue
                        nf = pbw.normalize(self.letters(alpha) + self.letters(beta))
                        scale = mpq(1, multi_factorial(alpha) * multi_factorial(beta))
                        entries = [(s, c * scale) for s, c in nf.items() if s and s[0] >= n]
                        if entries:
                            table[(alpha, tuple(beta))] = entries
            self._table00 = table
        return self._table00

    def ad_table(self, lam, i):
        """``ad(x_n)^{i_n} ... ad(x_1)^{i_1} (M_lam)`` as a Lie-only normal form.

        ``ad(x)`` here is ``s * [x, .]`` with ``s`` the commutation sign, so
        that ``M * [[f]] = sum_i [[d^i f / i!]] * ad_table(M, i)``.
        """
        key = (lam, i)
        r = self._ad.get(key)
        if r is not None:
            return r
        if not any(i):
            r = {lam: mpq(1)}
        elif not lam:
            r = {}
        else:
            j = max(k for k, v in enumerate(i) if v)
            prev = list(i)
            prev[j] -= 1
            r = {}
            for seq, c in self.ad_table(lam, tuple(prev)).items():
                for seq2, c2 in self._ad_generator(seq, j).items():
                    r[seq2] = r.get(seq2, 0) + c * c2
            r = {s: c for s, c in r.items() if c}
        self._ad[key] = r
        return r

    def _ad_generator(self, seq, j):
        # derivation Y -> s*[x_j, Y] = -s*[Y, x_j] on a product of Lie basis elements
        out = {}
        sign = -self._sign
        pbw = self.pbw
        for p, b in enumerate(seq):
            for w, c in self.basis.bracket(b, j).items():
                nf = pbw.mul_nf_seq({seq[:p]: mpq(1)}, (w,) + seq[p + 1:])
                for s, c2 in nf.items():
                    out[s] = out.get(s, 0) + sign * c * c2
        return {s: c for s, c in out.items() if c}

    def lie_mul(self, a, b):
        """Normal form of ``M_a * M_b`` (both Lie-only)."""
        if not a:
            return {b: mpq(1)}
        if not b:
            return {a: mpq(1)}
        key = (a, b)
        r = self._lie_mul.get(key)
        if r is None:
            r = self.pbw.mul_nf_seq({a: mpq(1)}, b)
            self._lie_mul[key] = r
        return r


@lru_cache(maxsize=None)
def algebra(n, d):
    return Algebra(n, d)


@lru_cache(maxsize=None)
def _indices_up_to(n, k):
    out = []
    for t in range(k + 1):
        out.extend(multi_indices(n, t))
    return tuple(out)


def _deriv(cache, p, alpha):
    r = cache.get(alpha)
    if r is None:
        r = cache[alpha] = p.diff_multi(alpha)
    return r


def _may_be_nonzero(p, alpha):
    # polynomial coefficients vanish under high derivatives; others never do
    if isinstance(p, MultiPoly):
        m = _maxexp(p)
        return all(a <= b for a, b in zip(alpha, m))
    return True


def _maxexp(p):
    return p.max_exponents()


class _Acc:
    """Sum of coefficients; localized terms are combined over a common power of g."""

    __slots__ = ("plain", "levels", "g")

    def __init__(self):
        self.plain = None
        self.levels = {}
        self.g = None

    def add(self, c):
        if isinstance(c, LocalizedPoly):
            self.g = c.g
            lv = self.levels
            lv[c.k] = lv[c.k] + c.num if c.k in lv else c.num
        else:
            self.plain = c if self.plain is None else self.plain + c

    def value(self, reduce=True):
        if not self.levels:
            return self.plain
        top = max(self.levels)
        g = self.g
        total = None
        for k, num in self.levels.items():
            t = num * g ** (top - k) if k != top else num
            total = t if total is None else total + t
        r = LocalizedPoly(total, top, g, _reduced=not reduce)
        return r + self.plain if self.plain is not None else r


def _raw_mul(a, b):
    # product without cancelling powers of g; only fed to an _Acc
    if isinstance(a, LocalizedPoly) and isinstance(b, LocalizedPoly):
        return LocalizedPoly(a.num * b.num, a.k + b.k, a.g, _reduced=True)
    return a * b


def _accumulate(acc, key, c):
    a = acc.get(key)
    if a is None:
        a = acc[key] = _Acc()
    a.add(c)


def _finish(acc, reduce=True):
    out = {}
    for k, a in acc.items():
        v = a.value(reduce)
        if v:
            out[k] = v
    return out


def mul00(alg, f, g, max_ord, fcache=None, gcache=None, reduce=True):
    """Normal form of ``[[f]] * [[g]]`` truncated at NC-order ``max_ord``."""
    fcache = {} if fcache is None else fcache
    gcache = {} if gcache is None else gcache
    out = {}
    _accumulate(out, (), _raw_mul(f, g))
    if max_ord <= 0:
        return _finish(out, reduce)
    fm = _maxexp(f) if isinstance(f, MultiPoly) else None
    gm = _maxexp(g) if isinstance(g, MultiPoly) else None
    ords = alg.ords
    for (alpha, beta), entries in alg.table00().items():
        if fm is not None and any(a > b for a, b in zip(alpha, fm)):
            continue
        if gm is not None and any(a > b for a, b in zip(beta, gm)):
            continue
        prod = None
        for nu, c in entries:
            if sum(ords[i] for i in nu) > max_ord:
                continue
            if prod is None:
                da = _deriv(fcache, f, alpha)
                if not da:
                    break
                db = _deriv(gcache, g, beta)
                if not db:
                    break
                prod = _raw_mul(da, db)
                if not prod:
                    break
            _accumulate(out, nu, prod * c)
    return _finish(out, reduce)


def _multiply_terms(alg, a_terms, b_terms, reduce=True):
    d = alg.d
    out = {}
    n = alg.n
    for lam, f in a_terms.items():
        ol = alg.ord(lam)
        fcache = {}
        for mu, g in b_terms.items():
            budget = d - ol - alg.ord(mu)
            if budget < 0:
                continue
            gcache = {}
            idx = _indices_up_to(n, budget) if lam else ((0,) * n,)
            for i in idx:
                ad = alg.ad_table(lam, i)
                if not ad:
                    continue
                if any(i):
                    if not _may_be_nonzero(g, i):
                        continue
                    gi = _deriv(gcache, g, i)
                    if not gi:
                        continue
                    gi = gi * mpq(1, multi_factorial(i))
                else:
                    gi = g
                for nu, h in mul00(alg, f, gi, budget - sum(i), fcache, reduce=False).items():
                    for rho, c in ad.items():
                        left = alg.lie_mul(nu, rho)
                        for sig, c2 in left.items():
                            for tau, c3 in alg.lie_mul(sig, mu).items():
                                _accumulate(out, tau, h * (c * c2 * c3))
    return _finish(out, reduce)


class NormalForm:
    """Element ``sum [[f_lam]] M_lam`` of ``R_d`` (or of its localizations).

    ``terms`` maps ``lam`` tuples to nonzero coefficients; coefficients are
    :class:`MultiPoly` for ``R_d`` itself, :class:`LocalizedPoly` or
    :class:`RatFunc` for the rational variant.
    """

    __slots__ = ("alg", "terms")

    def __init__(self, alg, terms=None):
        self.alg = alg
        d = alg.d
        t = {}
        for lam, c in (terms or {}).items():
            lam = tuple(lam)
            if c and alg.ord(lam) <= d:
                t[lam] = c
        self.terms = t

    # constructors
    @classmethod
    def zero(cls, alg):
        return cls(alg, {})

    @classmethod
    def one(cls, alg):
        return cls(alg, {(): MultiPoly.one(alg.n)})

    @classmethod
    def lift(cls, alg, f):
        """Standard-ordered lift ``[[f]]`` of a commutative coefficient."""
        if isinstance(f, (int, type(mpq(0)))):
            f = MultiPoly.constant(alg.n, f)
        if f.nvars != alg.n:
            raise ValueError(f"coefficient has {f.nvars} variables, algebra has {alg.n}")
        return cls(alg, {(): f})

    @classmethod
    def generator(cls, alg, i):
        return cls(alg, {(): MultiPoly.var(alg.n, i)})

    @classmethod
    def bracket_monomial(cls, alg, lam, coeff=1):
        lam = tuple(sorted(lam))
        if not isinstance(coeff, (MultiPoly, RatFunc, LocalizedPoly)):
            coeff = MultiPoly.constant(alg.n, coeff)
        return cls(alg, {lam: coeff})

    @classmethod
    def lie_word(cls, alg, word, coeff=1):
        """``coeff * b_w`` for the Lyndon word ``w`` (0-based letters)."""
        i = alg.basis.index[tuple(word)]
        if i < alg.n:
            return cls(alg, {(): MultiPoly.var(alg.n, i) * coeff})
        return cls.bracket_monomial(alg, (i,), coeff)

    # protocol
    @property
    def n(self):
        return self.alg.n

    @property
    def d(self):
        return self.alg.d

    def __bool__(self):
        return bool(self.terms)

    def _check(self, other):
        if not isinstance(other, NormalForm):
            raise TypeError(f"expected NormalForm, got {type(other).__name__}")
        if other.alg.n != self.alg.n or other.alg.d != self.alg.d:
            raise TruncationMismatch(
                f"(n, d) = ({self.alg.n}, {self.alg.d}) vs ({other.alg.n}, {other.alg.d})")

    def __eq__(self, other):
        if isinstance(other, (int, type(mpq(0)))):
            other = NormalForm.lift(self.alg, other)
        if not isinstance(other, NormalForm):
            return NotImplemented
        if (self.alg.n, self.alg.d) != (other.alg.n, other.alg.d):
            return False
        if self.terms.keys() != other.terms.keys():
            return False
        return all(self.terms[k] == other.terms[k] for k in self.terms)

    def __hash__(self):
        return hash((self.alg.n, self.alg.d, frozenset(self.terms)))

    def __add__(self, other):
        if not isinstance(other, NormalForm):
            other = NormalForm.lift(self.alg, other)
        self._check(other)
        t = dict(self.terms)
        for lam, c in other.terms.items():
            t[lam] = t[lam] + c if lam in t else c
        return NormalForm(self.alg, t)

    __radd__ = __add__

    def __neg__(self):
        return NormalForm(self.alg, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, NormalForm):
            other = NormalForm.lift(self.alg, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        return NormalForm(self.alg, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, NormalForm):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k):
        result = NormalForm.lift(self.alg, 1).with_coefficients_like(self)
        for _ in range(k):
            result = result * self
        return result

    def with_coefficients_like(self, other):
        """Re-express a polynomial-coefficient element in ``other``'s coefficient ring."""
        sample = next(iter(other.terms.values()), None)
        if isinstance(sample, LocalizedPoly):
            return NormalForm(self.alg, {k: LocalizedPoly(v, 0, sample.g) if isinstance(v, MultiPoly) else v
                                         for k, v in self.terms.items()})
        return self

    def commutator(self, other):
        return self * other - other * self

    def map_coefficients(self, fn):
        return NormalForm(self.alg, {k: fn(v) for k, v in self.terms.items()})

    # projections
    def abelianize(self):
        c = self.terms.get(())
        if c is None:
            return MultiPoly.zero(self.alg.n)
        return c

    def gr_project(self, k):
        if k > self.alg.d:
            raise ValueError(f"layer {k} above truncation {self.alg.d}")
        return NormalForm(self.alg, {lam: c for lam, c in self.terms.items() if self.alg.ord(lam) == k})

    def nc_order(self):
        """Smallest ``ord(lam)`` in the support; ``inf`` for zero."""
        if not self.terms:
            return float("inf")
        return min(self.alg.ord(lam) for lam in self.terms)

    def truncate(self, d):
        """Image in ``R_d`` for a smaller truncation ``d``."""
        return NormalForm(algebra(self.alg.n, d), self.terms)

    def is_polynomial(self):
        return all(isinstance(c, MultiPoly) or c.is_polynomial() for c in self.terms.values())

    def expand_to_words(self):
        """Word-level expansion (polynomial coefficients only)."""
        from .words import WordPoly
        alg = self.alg
        basis = alg.basis
        out = {}
        for lam, f in self.terms.items():
            if not isinstance(f, MultiPoly):
                if f.is_polynomial():
                    f = f.to_poly()
                else:
                    raise ValueError("rational coefficients have no word expansion")
            tail = {(): mpq(1)}
            for i in lam:
                tail = _word_mul(tail, basis.expand(i))
            for exps, c in f.terms.items():
                head = alg.letters(exps)
                for w, c2 in tail.items():
                    k = head + w
                    out[k] = out.get(k, 0) + c * c2
        return WordPoly(alg.n, {k: v for k, v in out.items() if v})

    # rendering
    def __repr__(self):
        return f"NormalForm(n={self.alg.n}, d={self.alg.d}: {self})"

    def __str__(self):
        return self.render()

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: (self.alg.ord(kv[0]), kv[0]))

    def render(self):
        if not self.terms:
            return "0"
        pieces = []
        for lam, c in self.sorted_terms():
            pieces.append(_render_term(self.alg, lam, c))
        s = pieces[0]
        for p in pieces[1:]:
            s += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return s


def _ratio_string(num, den):
    ns = num.to_string()
    if len(num) > 1:
        ns = f"({ns})"
    ds = den.to_string()
    if not ds.isalnum():
        ds = f"({ds})"
    return "{" + f"{ns}/{ds}" + "}"


def _render_coeff(c):
    """Coefficient text and whether it needs parentheses before a bracket monomial."""
    if isinstance(c, LocalizedPoly):
        if c.k == 0:
            return c.num.to_string(), len(c.num) > 1
        g = c.g
        gs = g.to_string()
        base = gs if gs.isalnum() else f"({gs})"
        den = base if c.k == 1 else f"{base}^{c.k}"
        ns = c.num.to_string()
        if len(c.num) > 1:
            ns = f"({ns})"
        return "{" + f"{ns}/{den}" + "}", False
    if isinstance(c, RatFunc):
        if c.is_polynomial():
            p = c.to_poly()
            return p.to_string(), len(p) > 1
        return _ratio_string(c.num, c.den), False
    return c.to_string(), len(c) > 1


def _render_term(alg, lam, c):
    cs, compound = _render_coeff(c)
    if not lam:
        return cs
    mono = alg.lam_string(lam)
    if cs == "1":
        return mono
    if cs == "-1":
        return "-" + mono
    if compound:
        cs = f"({cs})"
    return f"{cs} · {mono}"


def multiply(a, b, reduce=True):
    """Product in ``R_d`` (or its localization, for rational coefficients).

    ``reduce=False`` leaves localized coefficients as ``num / g^k`` without
    cancelling common powers of ``g``; such a result is correct but not
    canonical, so compare it only after clearing denominators.
    """
    a._check(b)
    return NormalForm(a.alg, _multiply_terms(a.alg, a.terms, b.terms, reduce))


def structure_eval(alg, lam, mu, nu, f, g):
    """Coefficient of ``M_nu`` in ``[[f]] M_lam * [[g]] M_mu``."""
    lam, mu, nu = tuple(sorted(lam)), tuple(sorted(mu)), tuple(sorted(nu))
    for x in (lam, mu, nu):
        if alg.ord(x) > alg.d:
            raise ValueError("exponent map above the truncation")
    p = NormalForm(alg, {lam: f}) * NormalForm(alg, {mu: g})
    c = p.terms.get(nu)
    return c if c is not None else MultiPoly.zero(alg.n)


def abelianize(a):
    return a.abelianize()


def gr_project(a, k):
    return a.gr_project(k)


# -- combinatorics of Q^d ----------------------------------------------------

def exponent_maps(n, d):
    """All ``lam`` with ``ord(lam) == d`` as nondecreasing index tuples."""
    basis = lie_basis(n, d + 1)
    lie = [i for i in range(len(basis)) if basis.degrees[i] >= 2]
    out = []

    def rec(start, remaining, acc):
        if remaining == 0:
            out.append(tuple(acc))
            return
        for k in range(start, len(lie)):
            i = lie[k]
            o = basis.ords[i]
            if o <= remaining:
                acc.append(i)
                rec(k, remaining - o, acc)
                acc.pop()

    rec(0, d, [])
    return out


def q_dimension(n, d):
    """Number of bracket monomials ``M_lam`` with ``ord(lam) == d``."""
    return len(exponent_maps(n, d))


def graded_count(n, d, m):
    """Dimension of the word-degree-``m`` part of ``gr^d``: ``S(V) (x) Q^d`` in degree ``m``."""
    if d == 0:
        return comb(n + m - 1, n - 1) if m >= 0 else 0
    basis = lie_basis(n, d + 1)
    total = 0
    for lam in exponent_maps(n, d):
        r = m - sum(basis.degrees[i] for i in lam)
        if r >= 0:
            total += comb(n + r - 1, n - 1)
    return total
