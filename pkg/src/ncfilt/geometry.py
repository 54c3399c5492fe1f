"""First-order thickening, NC projective space gluing and Poisson-envelope counts.

Chart ``i`` of projective n-space has coordinates ``x_j^(i) = t_j t_i^{-1}``
for ``j != i``; inside the package they are relabelled as generators
``0 .. n-1`` in increasing ``j``.  Transition from chart ``i`` to chart ``k``:

    x_j^(k) = x_j^(i) (x_k^(i))^{-1}   (j != i, k),      x_i^(k) = (x_k^(i))^{-1}.

Identities on overlaps are checked in the rational normal form of chart
``i``, localized at the product of the chart-``i`` coordinates that must be
inverted, through a substitution homomorphism.
"""

import itertools
import random
from dataclasses import dataclass, field

from gmpy2 import mpq

from .arith import MultiPoly, RatFunc
from .lie import standard_factorization
from .localization import (LocalizationContext, invert, rational_invert,
                           rational_one, relocalize, to_rational_normal_form)
from .normal import NormalForm, algebra, graded_count

__all__ = [
    "TrivialExtensionElement", "trivial_extension_mul", "first_order_map",
    "first_order_inverse", "compare_first_order", "chart_var", "projective_transition",
    "classical_transition", "cocycle_check", "line_bundle_cocycle",
    "poisson_envelope_dims", "word_filtration_rank", "word_gr_rank", "CheckReport",
]


# -- the algebra C[x] + Omega^2 ---------------------------------------------

class TrivialExtensionElement:
    """Pair ``(f, omega)`` with ``omega = sum_{i<j} w_ij dx_i ^ dx_j``."""

    __slots__ = ("n", "f", "omega")

    def __init__(self, f, omega=None):
        self.n = f.nvars
        self.f = f
        om = {}
        for (i, j), c in (omega or {}).items():
            if i == j or not c:
                continue
            if i > j:
                i, j, c = j, i, -c
            om[(i, j)] = om[(i, j)] + c if (i, j) in om else c
        self.omega = {k: v for k, v in om.items() if v}

    def __eq__(self, other):
        if not isinstance(other, TrivialExtensionElement):
            return NotImplemented
        return self.f == other.f and self.omega == other.omega

    def __add__(self, other):
        om = dict(self.omega)
        for k, v in other.omega.items():
            om[k] = om[k] + v if k in om else v
        return TrivialExtensionElement(self.f + other.f, om)

    def __sub__(self, other):
        return self + TrivialExtensionElement(-other.f, {k: -v for k, v in other.omega.items()})

    def __mul__(self, other):
        return trivial_extension_mul(self, other)

    def __repr__(self):
        return f"TrivialExtensionElement({self})"

    def __str__(self):
        parts = [f"dx{i + 1}^dx{j + 1}: {v}" for (i, j), v in sorted(self.omega.items())]
        return f"({self.f}, {{{', '.join(parts)}}})"


def trivial_extension_mul(a, b):
    """``(f1, w1)(f2, w2) = (f1 f2, f1 w2 + f2 w1 + df1 ^ df2)``."""
    n = a.n
    om = {}
    for k, v in a.omega.items():
        om[k] = v * b.f
    for k, v in b.omega.items():
        om[k] = om[k] + v * a.f if k in om else v * a.f
    da = [a.f.diff(i) for i in range(n)]
    db = [b.f.diff(i) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            w = da[i] * db[j] - da[j] * db[i]
            if w:
                om[(i, j)] = om[(i, j)] + w if (i, j) in om else w
    return TrivialExtensionElement(a.f * b.f, om)


def first_order_map(a):
    """The homomorphism ``R_1 -> C[x] + Omega^2`` determined by ``x_i -> (x_i, 0)``.

    ``[[h]] -> (h, sum_{i<j} d_i d_j h dx_i^dx_j)`` and
    ``[[h]] [x_i, x_j] -> (0, 2 h dx_i^dx_j)``.
    """
    alg = a.alg
    if alg.d != 1:
        raise ValueError("first-order comparison lives at d = 1")
    n = alg.n
    f = a.terms.get((), MultiPoly.zero(n))
    om = {}
    for i in range(n):
        for j in range(i + 1, n):
            w = f.diff(i).diff(j)
            if w:
                om[(i, j)] = w
    for lam, c in a.terms.items():
        if not lam:
            continue
        (b,) = lam
        i, j = alg.basis.words[b]
        om[(i, j)] = om[(i, j)] + c * 2 if (i, j) in om else c * 2
    return TrivialExtensionElement(f, om)


def first_order_inverse(e, n):
    """Inverse of :func:`first_order_map`."""
    alg = algebra(n, 1)
    terms = {(): e.f}
    for i in range(n):
        for j in range(i + 1, n):
            w = e.omega.get((i, j), MultiPoly.zero(n)) - e.f.diff(i).diff(j)
            if w:
                terms[(alg.basis.index[(i, j)],)] = w * mpq(1, 2)
    return NormalForm(alg, terms)


def _naive_map(a):
    # [[f]] -> (f, 0), [x_i, x_j] -> (0, dx_i ^ dx_j)
    alg = a.alg
    om = {}
    for lam, c in a.terms.items():
        if lam:
            (b,) = lam
            om[tuple(alg.basis.words[b])] = c
    return TrivialExtensionElement(a.terms.get((), MultiPoly.zero(alg.n)), om)


def _random_poly(rng, n, deg, terms=3):
    t = {}
    for _ in range(terms):
        e = [0] * n
        for _ in range(rng.randint(0, deg)):
            e[rng.randrange(n)] += 1
        t[tuple(e)] = mpq(rng.randint(-4, 4))
    return MultiPoly(n, t)


def _random_r1(rng, n, deg):
    alg = algebra(n, 1)
    terms = {(): _random_poly(rng, n, deg)}
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < 0.5:
                terms[(alg.basis.index[(i, j)],)] = _random_poly(rng, n, deg - 1)
    return NormalForm(alg, terms)


@dataclass
class CheckReport:
    """Outcome of a family of exact identity checks."""

    name: str
    passed: bool = True
    checks: int = 0
    failures: list = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    def record(self, label, ok, residual=None):
        self.checks += 1
        if not ok:
            self.passed = False
            self.failures.append((label, residual))

    def lines(self):
        out = [f"{self.name}: {'PASS' if self.passed else 'FAIL'} ({self.checks} checks)"]
        for label, res in self.failures:
            out.append(f"  FAIL {label}" + (f": residual {res}" if res is not None else ""))
        return out

    def __bool__(self):
        return self.passed


def compare_first_order(n, trials=20, seed=0, deg=3):
    """Check that :func:`first_order_map` is an algebra isomorphism ``R_1 -> C[x] + Omega^2``."""
    if n < 2:
        raise ValueError("need n >= 2")
    rng = random.Random(seed)
    rep = CheckReport(f"first-order comparison n={n}")
    alg = algebra(n, 1)
    one = NormalForm.lift(alg, 1)
    rep.record("unit", first_order_map(one) == TrivialExtensionElement(MultiPoly.one(n)))
    for t in range(trials):
        a, b = _random_r1(rng, n, deg), _random_r1(rng, n, deg)
        lhs = first_order_map(a * b)
        rhs = first_order_map(a) * first_order_map(b)
        rep.record(f"product #{t}", lhs == rhs, None if lhs == rhs else lhs - rhs)
        rep.record(f"inverse #{t}", first_order_inverse(first_order_map(a), n) == a)
    # the map [[f]] -> (f, 0) is not multiplicative: x1 * x2 is a witness
    x1, x2 = NormalForm.generator(alg, 0), NormalForm.generator(alg, 1)
    naive_ok = _naive_map(x1 * x2) == _naive_map(x1) * _naive_map(x2)
    rep.notes["naive_map_multiplicative"] = naive_ok
    rep.notes["bracket_count"] = len([w for w in alg.basis.words if len(w) == 2])
    rep.notes["two_form_count"] = n * (n - 1) // 2
    rep.record("gr^1 dimension", rep.notes["bracket_count"] == rep.notes["two_form_count"])
    return rep


# -- projective space --------------------------------------------------------

def chart_var(i, j):
    """Generator index of ``x_j^(i)`` inside chart ``i``."""
    if i == j:
        raise ValueError("chart coordinate x_i^(i) does not exist")
    return j if j < i else j - 1


def projective_transition(i, k, n, d):
    """Chart-``k`` coordinates as left fractions in chart ``i`` (localized at ``x_k^(i)``)."""
    if i == k:
        raise ValueError("transition needs two different charts")
    g = MultiPoly.var(n, chart_var(i, k))
    ctx = LocalizationContext(n, d, g)
    xk_inv = invert(ctx.lift(g))
    out = {}
    for j in range(n + 1):
        if j == k:
            continue
        if j == i:
            out[j] = xk_inv
        else:
            out[j] = ctx.lift(MultiPoly.var(n, chart_var(i, j))) * xk_inv
    return out


def classical_transition(i, k, n):
    """Commutative transition functions ``y_j / y_k`` and ``1 / y_k``."""
    yk = MultiPoly.var(n, chart_var(i, k))
    out = {}
    for j in range(n + 1):
        if j == k:
            continue
        num = MultiPoly.one(n) if j == i else MultiPoly.var(n, chart_var(i, j))
        out[j] = RatFunc(num, yk)
    return out


def _substitute(r, images, target_alg, one):
    """Image of a polynomial normal form under generator images (a homomorphism)."""
    src = r.alg
    n = src.n
    cache = {}

    def basis_image(b):
        v = cache.get(b)
        if v is None:
            w = src.basis.words[b]
            if len(w) == 1:
                v = images[w[0]]
            else:
                u, t = standard_factorization(w)
                A, B = basis_image(src.basis.index[u]), basis_image(src.basis.index[t])
                v = A * B - B * A
            cache[b] = v
        return v

    powers = {}

    def gen_power(i, k):
        key = (i, k)
        if key not in powers:
            powers[key] = one if k == 0 else gen_power(i, k - 1) * images[i]
        return powers[key]

    total = NormalForm.zero(target_alg)
    for lam, f in r.terms.items():
        tail = one
        for b in lam:
            tail = tail * basis_image(b)
        for e, c in f.terms.items():
            m = one
            for i in range(n):
                if e[i]:
                    m = m * gen_power(i, e[i])
            total = total + (m * tail).scale(c)
    return total


def _fraction_image(fr, images, ctx_target):
    """Image of a left fraction ``[[h]]^{-k} r`` under a substitution into rational normal forms."""
    one = rational_one(ctx_target)
    num = _substitute(fr.num, images, ctx_target.alg, one)
    if not fr.k:
        return num
    h = _substitute(fr.ctx.G, images, ctx_target.alg, one)
    hinv = rational_invert(h, ctx_target)
    for _ in range(fr.k):
        num = hinv * num
    return num


def _overlap_ctx(n, d, i, coords):
    g = MultiPoly.one(n)
    for j in coords:
        g = g * MultiPoly.var(n, chart_var(i, j))
    return LocalizationContext(n, d, g)


def _abelian_report(rep, n, d):
    for i in range(n + 1):
        for k in range(n + 1):
            if i == k:
                continue
            tr = projective_transition(i, k, n, d)
            cl = classical_transition(i, k, n)
            for j, fr in tr.items():
                ok = fr.abelianize().to_ratfunc() == cl[j]
                rep.record(f"abelianized {i}->{k} coordinate x{j}", ok)


def cocycle_check(n, d):
    """Check ``T_{j->k} o T_{i->j} = T_{i->k}`` on every coordinate and ordered triple."""
    rep = CheckReport(f"cocycle n={n} d={d}")
    _abelian_report(rep, n, d)
    charts = range(n + 1)
    # pairs: going i -> k -> i is the identity
    for i, k in itertools.permutations(charts, 2):
        ctx = _overlap_ctx(n, d, i, [k])
        back = projective_transition(k, i, n, d)
        forward = projective_transition(i, k, n, d)
        images = [None] * n
        for j, fr in forward.items():
            images[chart_var(k, j)] = relocalize(to_rational_normal_form(fr), ctx.g)
        for j, fr in back.items():
            got = _fraction_image(fr, images, ctx)
            want = ctx.rational(NormalForm.generator(ctx.alg, chart_var(i, j)))
            rep.record(f"round trip {i}->{k}->{i} coordinate x{j}", got == want, got - want)
    for i, j, k in itertools.permutations(charts, 3):
        ctx = _overlap_ctx(n, d, i, [j, k])
        t_ij = projective_transition(i, j, n, d)
        images = [None] * n
        for c, fr in t_ij.items():
            images[chart_var(j, c)] = relocalize(to_rational_normal_form(fr), ctx.g)
        t_jk = projective_transition(j, k, n, d)
        t_ik = projective_transition(i, k, n, d)
        for c, fr in t_jk.items():
            got = _fraction_image(fr, images, ctx)
            want = relocalize(to_rational_normal_form(t_ik[c]), ctx.g)
            rep.record(f"triple ({i},{j},{k}) coordinate x{c}", got == want, got - want)
    return rep


def _phi(i, j, n, d, ctx):
    """``phi_ij = t_i t_j^{-1} = (x_j^(i))^{-1}`` in the rational normal form of chart ``i``."""
    x = ctx.rational(NormalForm.generator(ctx.alg, chart_var(i, j)))
    return rational_invert(x, ctx)


def line_bundle_cocycle(n, d):
    """Check ``phi_ij * phi_jk = phi_ik`` (left-to-right products) in chart ``i`` coordinates."""
    rep = CheckReport(f"line bundle cocycle n={n} d={d}")
    charts = range(n + 1)
    for i, j in itertools.permutations(charts, 2):
        ctx = _overlap_ctx(n, d, i, [j])
        # phi_ji = t_j t_i^{-1} = x_j^(i)
        phi_ji = ctx.rational(NormalForm.generator(ctx.alg, chart_var(i, j)))
        prod = _phi(i, j, n, d, ctx) * phi_ji
        one = rational_one(ctx)
        rep.record(f"phi_{i}{j} phi_{j}{i} = 1", prod == one, prod - one)
    for i, j, k in itertools.permutations(charts, 3):
        ctx = _overlap_ctx(n, d, i, [j, k])
        t_ij = projective_transition(i, j, n, d)
        images = [None] * n
        for c, fr in t_ij.items():
            images[chart_var(j, c)] = relocalize(to_rational_normal_form(fr), ctx.g)
        # phi_jk in chart j is (x_k^(j))^{-1}; transport it to chart i
        ctx_j = LocalizationContext(n, d, MultiPoly.var(n, chart_var(j, k)))
        phi_jk_frac = invert(ctx_j.lift(MultiPoly.var(n, chart_var(j, k))))
        phi_jk = _fraction_image(phi_jk_frac, images, ctx)
        lhs = _phi(i, j, n, d, ctx) * phi_jk
        rhs = _phi(i, k, n, d, ctx)
        rep.record(f"phi_{i}{j} phi_{j}{k} = phi_{i}{k}", lhs == rhs, lhs - rhs)
    if d == 0:
        rep.notes["classical"] = "transition 1/y_k on every overlap"
    return rep


# -- Poisson envelope dimensions ---------------------------------------------

def poisson_envelope_dims(n, d, m):
    """Dimension of the word-degree-``m`` part of ``P^d`` for the free case."""
    return graded_count(n, d, m)


def _right_normed(letters):
    # [a1, [a2, [..., ak]]] as a word dict
    w = {(letters[-1],): 1}
    for a in reversed(letters[:-1]):
        out = {}
        for u, c in w.items():
            out[(a,) + u] = out.get((a,) + u, 0) + c
            out[u + (a,)] = out.get(u + (a,), 0) - c
        w = {k: v for k, v in out.items() if v}
    return w


def _block_shapes(m, d):
    # sequences of block lengths summing to m; blocks >= 2 are brackets,
    # total bracket weight sum(len - 1) == d
    def rec(rem, weight):
        if rem == 0:
            if weight == 0:
                yield ()
            return
        for size in range(1, rem + 1):
            w = size - 1
            if w > weight:
                break
            for rest in rec(rem - size, weight - w):
                yield (size,) + rest
    return list(rec(m, d))


def _rank(vectors, dim_cap):
    """Exact rank of sparse rational vectors (dicts) by incremental elimination."""
    pivots = {}
    rank = 0
    for v in vectors:
        v = {k: mpq(c) for k, c in v.items() if c}
        while v:
            p = min(v)
            row = pivots.get(p)
            if row is None:
                inv = 1 / v[p]
                pivots[p] = {k: c * inv for k, c in v.items()}
                rank += 1
                break
            c = v[p]
            for k, r in row.items():
                nv = v.get(k, 0) - c * r
                if nv:
                    v[k] = nv
                else:
                    v.pop(k, None)
        if rank == dim_cap:
            break
    return rank


def word_filtration_rank(n, d, m):
    """``dim (F^d cap V^{(x)m})`` from products of words and right-normed brackets."""
    if d == 0:
        return n ** m
    vecs = []
    for shape in _block_shapes(m, d):
        for letters in itertools.product(range(n), repeat=m):
            pos = 0
            acc = {(): 1}
            zero = False
            for size in shape:
                chunk = letters[pos:pos + size]
                pos += size
                blk = {chunk: 1} if size == 1 else _right_normed(chunk)
                if not blk:
                    zero = True
                    break
                acc = {u + v: c * e for u, c in acc.items() for v, e in blk.items()}
            if not zero:
                vecs.append(acc)
    return _rank(vecs, n ** m)


def word_gr_rank(n, d, m):
    """``dim gr^d`` in word degree ``m``, computed at the word level."""
    return word_filtration_rank(n, d, m) - word_filtration_rank(n, d + 1, m)
