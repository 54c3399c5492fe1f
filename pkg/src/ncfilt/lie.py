"""Free Lie algebra on n generators with the Lyndon basis.

Letters are 0-based integers; the letter ``i`` is the generator ``x{i+1}``.
Basis elements are indexed globally by (degree, lexicographic) order, so the
generators occupy indices ``0 .. n-1``.
"""

from functools import lru_cache

from gmpy2 import mpq
from sympy import divisors, mobius

__all__ = [
    "NotALieElement", "is_lyndon", "lyndon_words", "standard_factorization",
    "witt_dimension", "LieBasis", "lie_basis", "bracket_string",
]


class NotALieElement(ValueError):
    pass


def is_lyndon(w):
    """True if ``w`` is strictly smaller than each of its proper rotations."""
    w = tuple(w)
    if not w:
        return False
    return all(w < w[i:] + w[:i] for i in range(1, len(w)))


def lyndon_words(n, max_degree):
    """Lyndon words over ``range(n)`` of length <= ``max_degree`` in (length, lex) order."""
    out = []
    if n <= 0 or max_degree <= 0:
        return out
    # Duval's generation algorithm
    w = [-1]
    while w:
        w[-1] += 1
        out.append(tuple(w))
        m = len(w)
        while len(w) < max_degree:
            w.append(w[len(w) - m])
        while w and w[-1] == n - 1:
            w.pop()
    out.sort(key=lambda u: (len(u), u))
    return out


def standard_factorization(w):
    """Split a Lyndon word as ``u v`` with ``v`` its longest proper Lyndon suffix."""
    w = tuple(w)
    for i in range(1, len(w)):
        if is_lyndon(w[i:]):
            return w[:i], w[i:]
    raise ValueError(f"{w} has no standard factorization")


def witt_dimension(n, k):
    """Dimension of the degree-``k`` part of the free Lie algebra on ``n`` generators."""
    if k < 1:
        raise ValueError("degree must be >= 1")
    total = sum(int(mobius(e)) * n ** (k // e) for e in divisors(k))
    return total // k


def bracket_string(w):
    if len(w) == 1:
        return f"x{w[0] + 1}"
    u, v = standard_factorization(w)
    return f"[{bracket_string(u)},{bracket_string(v)}]"


def _word_mul(a, b):
    out = {}
    for u, c in a.items():
        for v, e in b.items():
            k = u + v
            out[k] = out.get(k, 0) + c * e
    return {k: c for k, c in out.items() if c}


def _word_add(a, b, scale=1):
    out = dict(a)
    for k, c in b.items():
        v = out.get(k, 0) + scale * c
        if v:
            out[k] = v
        else:
            out.pop(k, None)
    return out


def word_commutator(a, b):
    return _word_add(_word_mul(a, b), _word_mul(b, a), -1)


class LieBasis:
    """Lyndon basis of the free Lie algebra up to a maximal degree.

    Word polynomials are plain dicts ``{letters tuple: mpq}`` here; the
    richer :class:`ncfilt.words.WordPoly` wraps the same data.
    """

    def __init__(self, n, max_degree):
        self.n = n
        self.max_degree = max_degree
        self.words = lyndon_words(n, max_degree)
        self.index = {w: i for i, w in enumerate(self.words)}
        self.degrees = [len(w) for w in self.words]
        self.ords = [len(w) - 1 for w in self.words]
        self._expansions = {}
        self._brackets = {}
        self._contents = {}

    def __len__(self):
        return len(self.words)

    def __repr__(self):
        return f"LieBasis(n={self.n}, max_degree={self.max_degree})"

    def name(self, i):
        return bracket_string(self.words[i])

    def content(self, i):
        """Letter multiplicities of basis element ``i``."""
        c = self._contents.get(i)
        if c is None:
            e = [0] * self.n
            for a in self.words[i]:
                e[a] += 1
            c = self._contents[i] = tuple(e)
        return c

    def expand(self, i):
        """Expansion of basis element ``i`` into words."""
        e = self._expansions.get(i)
        if e is None:
            w = self.words[i]
            if len(w) == 1:
                e = {w: mpq(1)}
            else:
                u, v = standard_factorization(w)
                e = word_commutator(self.expand(self.index[u]), self.expand(self.index[v]))
            self._expansions[i] = e
        return e

    def expand_element(self, elem):
        out = {}
        for i, c in elem.items():
            out = _word_add(out, self.expand(i), c)
        return out

    def decompose(self, wp):
        """Write a word polynomial as a combination of basis elements.

        Triangular elimination against lexicographically least words; raises
        :class:`NotALieElement` if ``wp`` is not in the span.
        """
        residual = {k: mpq(c) for k, c in wp.items() if c}
        out = {}
        while residual:
            w = min(residual, key=lambda u: (len(u), u))
            c = residual[w]
            i = self.index.get(w)
            if i is None:
                if len(w) > self.max_degree and is_lyndon(w):
                    raise ValueError(f"degree {len(w)} exceeds basis range {self.max_degree}")
                raise NotALieElement(f"not a Lie element (residual word {w})")
            out[i] = out.get(i, 0) + c
            residual = _word_add(residual, self.expand(i), -c)
        return {i: c for i, c in out.items() if c}

    def bracket(self, i, j):
        """``[b_i, b_j]`` in the basis; terms above ``max_degree`` are dropped."""
        key = (i, j)
        r = self._brackets.get(key)
        if r is None:
            if i == j or self.degrees[i] + self.degrees[j] > self.max_degree:
                r = {}
            elif (j, i) in self._brackets:
                r = {k: -c for k, c in self._brackets[(j, i)].items()}
            else:
                r = self.decompose(word_commutator(self.expand(i), self.expand(j)))
            self._brackets[key] = r
        return r

    def bracket_elements(self, a, b):
        out = {}
        for i, c in a.items():
            for j, e in b.items():
                for k, f in self.bracket(i, j).items():
                    out[k] = out.get(k, 0) + c * e * f
        return {k: c for k, c in out.items() if c}


@lru_cache(maxsize=None)
def lie_basis(n, max_degree):
    return LieBasis(n, max_degree)


class LieElement:
    """Finite combination of Lyndon basis elements, keyed by Lyndon word."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n, coeffs=None):
        self.n = n
        self.coeffs = {tuple(w): mpq(c) for w, c in (coeffs or {}).items() if c}

    @classmethod
    def basis_element(cls, n, word):
        word = tuple(word)
        if not is_lyndon(word):
            raise ValueError(f"{word} is not a Lyndon word")
        return cls(n, {word: 1})

    @classmethod
    def generator(cls, n, i):
        return cls(n, {(i,): 1})

    def degree(self):
        return max((len(w) for w in self.coeffs), default=0)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, LieElement):
            return NotImplemented
        return self.n == other.n and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.n, frozenset(self.coeffs.items())))

    def __add__(self, other):
        out = dict(self.coeffs)
        for w, c in other.coeffs.items():
            out[w] = out.get(w, 0) + c
        return LieElement(self.n, out)

    def __neg__(self):
        return LieElement(self.n, {w: -c for w, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        return LieElement(self.n, {w: v * mpq(c) for w, v in self.coeffs.items()})

    __rmul__ = __mul__

    def __repr__(self):
        return f"LieElement({self})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for w in sorted(self.coeffs, key=lambda u: (len(u), u)):
            c = self.coeffs[w]
            s = bracket_string(w)
            parts.append(s if c == 1 else (f"-{s}" if c == -1 else f"{c}*{s}"))
        return " + ".join(parts).replace("+ -", "- ")

    def _basis(self, degree):
        return lie_basis(self.n, max(degree, 1))

    def expand_to_words(self):
        from .words import WordPoly
        basis = self._basis(self.degree())
        return WordPoly(self.n, basis.expand_element({basis.index[w]: c for w, c in self.coeffs.items()}))

    def bracket(self, other):
        basis = self._basis(self.degree() + other.degree())
        a = {basis.index[w]: c for w, c in self.coeffs.items()}
        b = {basis.index[w]: c for w, c in other.coeffs.items()}
        r = basis.bracket_elements(a, b)
        return LieElement(self.n, {basis.words[i]: c for i, c in r.items()})


def expand_to_words(e):
    return e.expand_to_words()


def decompose_lie(w):
    """Inverse of :func:`expand_to_words` on the Lie subspace of the free algebra."""
    basis = lie_basis(w.nvars, max(w.degree(), 1))
    r = basis.decompose(w.terms)
    return LieElement(w.nvars, {basis.words[i]: c for i, c in r.items()})


def bracket(a, b):
    return a.bracket(b)


def lyndon_basis(n, max_degree):
    """Ordered list of Lyndon basis elements as :class:`LieElement` objects."""
    return [LieElement(n, {w: 1}) for w in lyndon_words(n, max_degree)]
