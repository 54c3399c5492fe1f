"""Acceptance suite shared by ``ncfilt selftest`` and the test-suite.

Each ``criterion_k`` returns a :class:`Outcome` listing exact checks.  All
comparisons are equalities of exact objects; there are no tolerances.
Randomness is seeded, so every run checks the same cases.
"""

import itertools
import json
import random
import time
from dataclasses import dataclass, field
from pathlib import Path

from gmpy2 import mpq

from .arith import LocalizedPoly, MultiPoly, RatFunc
from .conventions import convention_table
from .geometry import (
    _rank, compare_first_order, cocycle_check, line_bundle_cocycle,
    poisson_envelope_dims, word_gr_rank,
)
from .lie import is_lyndon, lyndon_words, witt_dimension
from .localization import (
    LeftFraction, LocalizationContext, from_rational, identity_matrix, invert,
    is_identity_product, matmul, matrix_invert, matrix_invert_rational, to_rational_normal_form,
)
from .maslov import (
    OrderedSymbol, commutation_formula, dn_product, evaluate_to_words,
    normal_order, product_symbol, swap_adjacent, swap_batched, symbols_of, taylor, taylor_x,
)
from .normal import NormalForm, algebra, exponent_maps, graded_count, q_dimension
from .words import WordPoly, nc_order, straighten

FIXTURE_DIR = Path(__file__).parent / "fixtures"


@dataclass
class Outcome:
    number: int
    title: str
    checks: int = 0
    failures: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self):
        return not self.failures

    def check(self, ok, label):
        self.checks += 1
        if not ok:
            self.failures.append(label)
        return ok

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] criterion {self.number}: {self.title} ({self.checks} exact checks, {self.seconds:.1f}s)"


# -- random inputs --------------------------------------------------------------

def random_words(rng, n, deg, terms=3):
    t = {}
    for _ in range(terms):
        w = tuple(rng.randrange(n) for _ in range(rng.randint(0, deg)))
        t[w] = t.get(w, 0) + rng.randint(-3, 3)
    return WordPoly(n, t)


def random_poly(rng, n, deg, terms=3):
    t = {}
    for _ in range(terms):
        e = [0] * n
        for _ in range(rng.randint(0, deg)):
            e[rng.randrange(n)] += 1
        t[tuple(e)] = mpq(rng.randint(-4, 4), rng.choice([1, 1, 2, 3]))
    return MultiPoly(n, t)


def random_nf(rng, n, d, deg=3):
    return straighten(random_words(rng, n, deg), d)


def random_fraction(rng, ctx, kmax=2):
    r = random_nf(rng, ctx.n, ctx.d, 2)
    return LeftFraction(ctx, rng.randint(0, kmax), r)


def _var(n, i):
    return MultiPoly.var(n, i)


# -- criteria -------------------------------------------------------------------

def criterion_1():
    out = Outcome(1, "basis combinatorics")
    for n in (1, 2, 3):
        for k in range(1, 7):
            brute = sum(1 for w in itertools.product(range(n), repeat=k) if is_lyndon(w))
            gen = sum(1 for w in lyndon_words(n, k) if len(w) == k)
            out.check(brute == gen == witt_dimension(n, k), f"Lyndon count n={n} k={k}")
    out.check(q_dimension(2, 1) == 1, "q_dimension(2,1) = 1")
    out.check(q_dimension(2, 2) == 3, "q_dimension(2,2) = 3")
    for n in (1, 2, 3):
        for m in range(6):
            total = sum(graded_count(n, d, m) for d in range(m + 1))
            out.check(total == n ** m, f"sum_d graded_count({n},d,{m}) = n^m")
            for d in range(m + 1):
                if n ** m > 250:
                    continue
                out.check(graded_count(n, d, m) == word_gr_rank(n, d, m),
                          f"graded_count({n},{d},{m}) = word rank")
    # normal monomials [[x^e]] M_lam of word degree m span the degree-m words
    for n, m in ((2, 4), (3, 3)):
        alg = algebra(n, m)
        vecs = []
        for d in range(m + 1):
            for lam in exponent_maps(n, d):
                r = m - alg.lam_degree(lam)
                if r < 0:
                    continue
                for e in itertools.product(range(r + 1), repeat=n):
                    if sum(e) == r:
                        a = NormalForm(alg, {lam: MultiPoly.monomial(e)})
                        vecs.append(a.expand_to_words().terms)
        out.check(len(vecs) == n ** m and _rank(vecs, n ** m) == n ** m,
                  f"PBW monomials form a basis of degree-{m} words, n={n}")
    return out


def criterion_2():
    out = Outcome(2, "fast product vs word oracle; symbol routes vs fast product")
    rng = random.Random(2)
    for t in range(60):
        n, d = rng.randint(1, 3), rng.randint(0, 3)
        a, b = random_words(rng, n, 3), random_words(rng, n, 3)
        out.check(straighten(a, d) * straighten(b, d) == straighten(a * b, d), f"straighten pair #{t}")
    for t in range(50):
        n, d = rng.randint(1, 3), rng.randint(0, 3)
        A, B = random_nf(rng, n, d), random_nf(rng, n, d)
        P = A * B
        out.check(normal_order(product_symbol(symbols_of(A), symbols_of(B)), d) == P,
                  f"normal_order pair #{t}")
        g = _var(n, 0)
        want = P.map_coefficients(lambda c: LocalizedPoly(c, 0, g))
        out.check(dn_product(A, B, g=g) == want, f"dn_product pair #{t}")
    return out


def criterion_3():
    out = Outcome(3, "associativity and filtration")
    rng = random.Random(3)
    for t in range(30):
        n, d = rng.randint(1, 3), rng.randint(0, 3)
        a, b, c = (random_nf(rng, n, d) for _ in range(3))
        out.check((a * b) * c == a * (b * c), f"associativity #{t}")
    for t in range(50):
        n, d = rng.randint(2, 3), rng.randint(1, 4)
        a, b = random_nf(rng, n, d), random_nf(rng, n, d)
        oa, ob = a.nc_order(), b.nc_order()
        out.check((a * b).nc_order() >= oa + ob, f"ord(ab) #{t}")
        out.check(a.commutator(b).nc_order() >= oa + ob + 1, f"ord([a,b]) #{t}")
    return out


def criterion_4():
    out = Outcome(4, "degree-1 product law and first-order model")
    rng = random.Random(4)
    s = convention_table()["product_bracket"]
    for t in range(20):
        n = rng.randint(2, 3)
        alg = algebra(n, 1)
        f, g = random_poly(rng, n, 3), random_poly(rng, n, 3)
        got = NormalForm.lift(alg, f) * NormalForm.lift(alg, g)
        want = NormalForm.lift(alg, f * g)
        for i in range(n):
            for j in range(i + 1, n):
                c = f.diff(j) * g.diff(i)
                if c:
                    lam = (alg.basis.index[(i, j)],)
                    want = want + NormalForm(alg, {lam: c.scale(s)})
        out.check(got == want, f"degree-1 law #{t}")
    x1, x2 = (NormalForm.generator(algebra(2, 1), i) for i in range(2))
    out.check(x2 * x1 == x1 * x2 - x1.commutator(x2) and s == -1, "x2 x1 = x1 x2 - [x1,x2]")
    for n in (2, 3):
        rep = compare_first_order(n)
        out.check(rep.passed, f"compare_first_order n={n}")
        out.check(rep.notes["naive_map_multiplicative"] is False, "naive map is not multiplicative")
    return out


def criterion_5():
    out = Outcome(5, "ordered-symbol formulas at word level")
    rng = random.Random(5)
    for t in range(30):
        n = rng.randint(2, 3)
        N = rng.randint(2, 4)
        words = [rng.choice([(0,), (1,), (n - 1,), (0, 1), (0, 0, 1)]) for _ in range(N)]
        sym = OrderedSymbol.from_words(n, words, random_poly(rng, N, 3))
        p = rng.randint(1, N - 1)
        out.check(evaluate_to_words(swap_adjacent(sym, p)) == evaluate_to_words(sym),
                  f"single swap #{t}")
    y = lambda N, i: MultiPoly.var(N, i)
    for l in range(4):
        for m in range(4):
            for pad in (False, True):
                N = 3 if pad else 2
                f = y(N, 0) ** m * y(N, 1) ** l
                letters = [1, 0]
                if pad:
                    f = f * (y(N, 2) + y(N, 0))
                    letters = [1, 0, 1]
                sym = OrderedSymbol.from_letters(2, letters, f)
                r = swap_batched(sym, 1)
                out.check(evaluate_to_words(r) == evaluate_to_words(sym), f"batched swap l={l} m={m} pad={pad}")
                out.check(normal_order(r, 4) == normal_order(sym, 4), f"batched swap normal order l={l} m={m}")
    for t in range(12):
        n, d = rng.randint(2, 3), 3
        a = random_nf(rng, n, d)
        f = random_poly(rng, n, 3)
        lhs = a * NormalForm.lift(a.alg, f)
        out.check(straighten(evaluate_to_words(commutation_formula(a, f)), d) == lhs,
                  f"commutation formula #{t}")
    for k in range(6):
        f = MultiPoly.var(1, 0) ** k
        a, b = WordPoly.generator(2, 0), WordPoly.generator(2, 1)
        out.check(evaluate_to_words(taylor(f)) == (a + b) ** k, f"Taylor formula y^{k}")
        out.check(nc_order(evaluate_to_words(taylor_x(k))) >= (k + 1) // 2, f"ord X_{k}")
    x2 = evaluate_to_words(taylor_x(2))
    out.check(x2 == (WordPoly.word(2, (0, 1)) - WordPoly.word(2, (1, 0))) * mpq(-1, 2), "X_2 = -1/2 [a,b]")
    return out


def expected_flagship(d):
    """The printed expansion of x2 x1^-1: [[x2/x1]] + sum_m [[1/x1^(m+1)]] ad(x1)^(m-1) [x1,x2]."""
    alg = algebra(2, d)
    g = _var(2, 0)
    terms = {(): LocalizedPoly(_var(2, 1), 1, g)}
    for m in range(1, d + 1):
        lam = (alg.basis.index[(0,) * m + (1,)],)
        terms[lam] = LocalizedPoly(MultiPoly.one(2), m + 1, g)
    return NormalForm(alg, terms)


def criterion_6():
    out = Outcome(6, "flagship localization example")
    for d in range(5):
        ctx = LocalizationContext(2, d, _var(2, 0))
        X1, X2 = ctx.lift(_var(2, 0)), ctx.lift(_var(2, 1))
        q = to_rational_normal_form(X2 * invert(X1))
        want = expected_flagship(d)
        for lam in set(q.terms) | set(want.terms):
            out.check(q.terms.get(lam) == want.terms.get(lam), f"d={d} term {lam}")
        left = to_rational_normal_form(invert(X1) * X2)
        out.check(left == NormalForm(ctx.alg, {(): LocalizedPoly(_var(2, 1), 1, _var(2, 0))}),
                  f"x1^-1 x2 = [[x2/x1]] at d={d}")
    return out


def tautological(m, d):
    n = m * m
    X = [[_var(n, m * i + j) for j in range(m)] for i in range(m)]
    det = _det(X)
    ctx = LocalizationContext(n, d, det)
    return ctx, [[ctx.lift(x) for x in row] for row in X]


def _det(X):
    if len(X) == 1:
        return X[0][0]
    total = None
    for j in range(len(X)):
        minor = [row[:j] + row[j + 1:] for row in X[1:]]
        t = X[0][j] * _det(minor)
        t = t if j % 2 == 0 else -t
        total = t if total is None else total + t
    return total


def criterion_7():
    out = Outcome(7, "inversion")
    ctx = LocalizationContext(2, 2, _var(2, 0) + _var(2, 1))
    s = ctx.lift(_var(2, 0) + _var(2, 1))
    si = invert(s)
    out.check(si * s == ctx.one() and s * si == ctx.one(), "invert(x1+x2) two-sided at d=2")
    ctx, M = tautological(2, 2)
    Mi = matrix_invert(M, ctx)
    ident = identity_matrix(2, ctx.one(), ctx.zero())
    out.check(matmul(M, Mi, ctx.zero()) == ident and matmul(Mi, M, ctx.zero()) == ident,
              "2x2 tautological inverse two-sided (left fractions)")
    for m in (2, 3):
        t0 = time.perf_counter()
        ctx, M = tautological(m, 2)
        R = [[to_rational_normal_form(x) for x in row] for row in M]
        Ri = matrix_invert_rational(ctx, R)
        ok = is_identity_product(R, Ri, ctx) and is_identity_product(Ri, R, ctx)
        dt = time.perf_counter() - t0
        out.check(ok, f"{m}x{m} tautological inverse two-sided (rational normal form)")
        if m == 3:
            out.check(dt < 60, f"3x3 runtime {dt:.1f}s < 60s")
    return out


def criterion_8():
    out = Outcome(8, "gr of the localization")
    rng = random.Random(8)
    gs = [lambda n: _var(n, 0), lambda n: _var(n, 0) + _var(n, 1), lambda n: _var(n, 0) * _var(n, 1)]
    for t in range(12):
        n, d = rng.randint(2, 3), rng.randint(1, 3)
        g = rng.choice(gs)(n)
        ctx = LocalizationContext(n, d, g)
        x = random_fraction(rng, ctx)
        if not x:
            continue
        y = to_rational_normal_form(x)
        kmax = 0
        for c in y.terms.values():
            ok = isinstance(c, LocalizedPoly) and c.g == g
            out.check(ok, f"fraction #{t}: coefficient in C[x][1/g]")
            kmax = max(kmax, c.k)
        for layer in range(d + 1):
            part = y.gr_project(layer)
            cleared = {lam: c.num * g ** (kmax - c.k) for lam, c in part.terms.items()}
            out.check(all(isinstance(c, MultiPoly) for c in cleared.values()),
                      f"fraction #{t}: layer {layer} clears to polynomials")
        # the lowest layer is the polynomial layer of the numerator divided by g^k
        p0 = x.num.nc_order()
        low = y.gr_project(p0)
        want = {lam: LocalizedPoly(c, x.k, g) for lam, c in x.num.gr_project(p0).terms.items()}
        out.check(low.terms == want, f"fraction #{t}: leading layer is g^-k times numerator layer")
        out.check(from_rational(y, ctx) == x, f"fraction #{t}: rational form converts back")
    return out


def criterion_9():
    out = Outcome(9, "geometry")
    for n in (1, 2):
        for d in range(4):
            out.check(cocycle_check(n, d).passed, f"cocycle P^{n} d={d}")
        for d in range(3):
            out.check(line_bundle_cocycle(n, d).passed, f"line bundle P^{n} d={d}")
    for n in (1, 2, 3):
        for d in range(4):
            for m in range(6):
                out.check(poisson_envelope_dims(n, d, m) == word_gr_rank(n, d, m),
                          f"Poisson envelope n={n} d={d} m={m}")
    return out


def random_values(rng, count=100):
    """Mixed random values for round-trip checks: (value, session parameters or None)."""
    vals = []
    for t in range(count):
        kind = t % 5
        n = rng.randint(1, 3)
        if kind == 0:
            d = rng.randint(0, 3)
            vals.append((random_nf(rng, n, d), (n, d, None)))
        elif kind == 1:
            n = max(n, 2)
            d = rng.randint(0, 2)
            g = rng.choice([_var(n, 0), _var(n, 0) + _var(n, 1), _var(n, 1) * _var(n, 0)])
            ctx = LocalizationContext(n, d, g)
            vals.append((random_fraction(rng, ctx), (n, d, g)))
        elif kind == 2:
            vals.append((random_words(rng, n, 4), None))
        elif kind == 3:
            vals.append((random_poly(rng, n, 4), None))
        else:
            den = random_poly(rng, n, 2)
            if not den:
                den = MultiPoly.one(n)
            vals.append((RatFunc(random_poly(rng, n, 3), den), None))
    return vals


def criterion_10(fixtures=None):
    from . import serialize
    from .parsing import Session, evaluate, parse, to_text
    out = Outcome(10, "determinism and round trips")
    rng = random.Random(10)
    for t, (v, sess) in enumerate(random_values(rng, 120)):
        s = serialize.dumps(v)
        back = serialize.loads(s)
        out.check(back == v and serialize.dumps(back) == s, f"JSON round trip #{t} ({type(v).__name__})")
        if sess is not None:
            S = Session(*sess)
            for rational in (True, False):
                text = to_text(v, rational=rational)
                out.check(evaluate(parse(text), S) == v, f"parse/print round trip #{t}")
    report = run_fixtures(fixtures)
    for name, ok, _ in report:
        out.check(ok, f"fixture {name}")
    return out


CRITERIA = {k: globals()[f"criterion_{k}"] for k in range(1, 11)}


def run(numbers=None, fixtures=None):
    """Run the selected criteria (default: all) and return their outcomes."""
    outcomes = []
    for k in numbers or sorted(CRITERIA):
        t0 = time.perf_counter()
        fn = CRITERIA[k]
        res = fn(fixtures) if k == 10 else fn()
        res.seconds = time.perf_counter() - t0
        outcomes.append(res)
    return outcomes


# -- golden fixtures --------------------------------------------------------------

def _fixture_files(directory=None):
    d = Path(directory) if directory else FIXTURE_DIR
    return sorted(d.glob("*.json"))


def run_fixture(case):
    """Evaluate one golden case; returns ``(ok, message)``."""
    from . import serialize
    from .geometry import TrivialExtensionElement
    from .normal import structure_eval
    from .parsing import Session, evaluate, parse, parse_commutative, to_text
    kind = case["kind"]
    if kind == "expr":
        S = Session(case["n"], case["d"], case.get("g"))
        got = to_text(evaluate(parse(case["input"]), S))
        return got == case["expected"], got
    if kind == "symbol_words":
        n = case["n"]
        f = parse_commutative(case["coeff"], len(case["letters"])).to_poly()
        sym = OrderedSymbol.from_letters(n, [a - 1 for a in case["letters"]], f)
        got = evaluate_to_words(sym)
        want = WordPoly.from_json_obj({"n": n, "terms": case["expected"]})
        return got == want, str(got)
    if kind == "structure":
        n, d = case["n"], case["d"]
        alg = algebra(n, d)
        idx = lambda ws: tuple(alg.basis.index[tuple(a - 1 for a in w)] for w in ws)
        f = parse_commutative(case["f"], n).to_poly()
        g = parse_commutative(case["g"], n).to_poly()
        got = structure_eval(alg, idx(case["lam"]), idx(case["mu"]), idx(case["nu"]), f, g)
        want = parse_commutative(case["expected"], n).to_poly()
        return got == want, str(got)
    if kind == "trivial_extension":
        n = case["n"]
        def elem(o):
            om = {(i - 1, j - 1): parse_commutative(v, n).to_poly() for (i, j), v in o["omega"]}
            return TrivialExtensionElement(parse_commutative(o["f"], n).to_poly(), om)
        got = elem(case["left"]) * elem(case["right"])
        return got == elem(case["expected"]), str(got)
    if kind == "tautological_inverse":
        ctx, M = tautological(case["m"], case["d"])
        Mi = matrix_invert(M, ctx)
        ident = identity_matrix(case["m"], ctx.one(), ctx.zero())
        ok = matmul(M, Mi, ctx.zero()) == ident and matmul(Mi, M, ctx.zero()) == ident
        return ok == case["expected"], "two-sided identity" if ok else "product differs from identity"
    if kind == "json":
        v = serialize.from_obj(case["value"])
        return serialize.to_obj(v) == case["value"], serialize.dumps(v)
    raise ValueError(f"unknown fixture kind {kind!r}")


def run_fixtures(directory=None):
    report = []
    for path in _fixture_files(directory):
        for case in json.loads(path.read_text()):
            name = f"{path.stem}/{case['name']}"
            try:
                ok, msg = run_fixture(case)
            except Exception as exc:  # a crashing fixture is a failing fixture
                ok, msg = False, f"{type(exc).__name__}: {exc}"
            report.append((name, ok, msg))
    return report
