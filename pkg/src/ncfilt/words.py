"""Word-level free associative algebra: the reference representation.

A :class:`WordPoly` is a finite combination of words over the letters
``0 .. n-1`` (rendered ``x1 .. xn``).  Straightening into the PBW normal form
goes through the generic engine in :mod:`ncfilt.pbw`, which only knows Lie
brackets of basis elements; nothing here depends on the fast product of
:mod:`ncfilt.normal`, so it serves as an oracle for it.
"""

import json

from gmpy2 import mpq

from .arith import ArityError, Q, format_rational
from .lie import _word_mul

__all__ = ["WordPoly", "mul_words", "straighten", "nc_order", "ad_power", "word_string"]


def word_string(w):
    if not w:
        return "1"
    return "*".join(f"x{a + 1}" for a in w)


class WordPoly:
    """Exact noncommutative polynomial ``sum c_w w``."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=None):
        self.nvars = nvars
        t = {}
        for w, c in (terms or {}).items():
            w = tuple(w)
            if any(a < 0 or a >= nvars for a in w):
                raise ValueError(f"letter out of range in {w} for n={nvars}")
            if c:
                t[w] = t.get(w, 0) + mpq(c)
        self.terms = {w: c for w, c in t.items() if c}

    @classmethod
    def word(cls, nvars, letters, c=1):
        return cls(nvars, {tuple(letters): c})

    @classmethod
    def generator(cls, nvars, i):
        return cls(nvars, {(i,): 1})

    @classmethod
    def one(cls, nvars):
        return cls(nvars, {(): 1})

    @classmethod
    def zero(cls, nvars):
        return cls(nvars, {})

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if not isinstance(other, WordPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def _check(self, other):
        if not isinstance(other, WordPoly):
            raise TypeError(f"expected WordPoly, got {type(other).__name__}")
        if other.nvars != self.nvars:
            raise ArityError(f"arity mismatch: {self.nvars} vs {other.nvars}")

    def __add__(self, other):
        self._check(other)
        t = dict(self.terms)
        for w, c in other.terms.items():
            t[w] = t.get(w, 0) + c
        return WordPoly(self.nvars, t)

    def __neg__(self):
        return WordPoly(self.nvars, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, WordPoly):
            return mul_words(self, other)
        c = Q(other)
        return WordPoly(self.nvars, {w: v * c for w, v in self.terms.items()})

    def __rmul__(self, other):
        return self * other

    def __pow__(self, k):
        r = WordPoly.one(self.nvars)
        for _ in range(k):
            r = r * self
        return r

    def commutator(self, other):
        return self * other - other * self

    def degree(self):
        return max((len(w) for w in self.terms), default=0)

    def homogeneous_part(self, m):
        return WordPoly(self.nvars, {w: c for w, c in self.terms.items() if len(w) == m})

    def __repr__(self):
        return f"WordPoly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms, key=lambda u: (len(u), u)):
            c = self.terms[w]
            s = word_string(w)
            if c == 1:
                parts.append(s)
            elif c == -1:
                parts.append("-" + s)
            elif not w:
                parts.append(format_rational(c))
            else:
                parts.append(f"{format_rational(c)}*{s}")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    # JSON: list of [coefficient, letters] pairs, letters 1-based
    def to_json_obj(self):
        items = sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0]))
        return {"n": self.nvars,
                "terms": [[format_rational(c), [a + 1 for a in w]] for w, c in items]}

    def to_json(self):
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, obj):
        return cls(obj["n"], {tuple(a - 1 for a in w): Q(c) for c, w in obj["terms"]})

    @classmethod
    def from_json(cls, s):
        return cls.from_json_obj(json.loads(s))


def mul_words(a, b):
    a._check(b)
    return WordPoly(a.nvars, _word_mul(a.terms, b.terms))


def straighten(w, d):
    """PBW normal form of ``w`` modulo ``F^{d+1}``."""
    from .arith import MultiPoly
    from .normal import NormalForm, algebra
    alg = algebra(w.nvars, d)
    out = {}
    for word, c in w.terms.items():
        for seq, c2 in alg.pbw.normalize(word).items():
            exps, lam = alg.split(seq)
            out.setdefault(lam, {})
            out[lam][exps] = out[lam].get(exps, 0) + c * c2
    return NormalForm(alg, {lam: MultiPoly(w.nvars, t) for lam, t in out.items()})


def nc_order(w):
    """NC-order of a word polynomial; ``inf`` for zero."""
    if not w:
        return float("inf")
    return straighten(w, max(w.degree(), 1)).nc_order()


def ad_power(s, a, i):
    """``ad(s)^i (a)`` with ``ad(s)(a) = s a - a s``."""
    r = a
    for _ in range(i):
        r = s.commutator(r)
    return r
