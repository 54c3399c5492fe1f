"""JSON import/export for every value type.

Coefficients travel as exact rational strings (``"-3/4"``), so a dump and a
load reproduce the value bit for bit.  Every object carries a ``type`` tag;
``dumps``/``loads`` dispatch on it.
"""

import json

from .arith import LocalizedPoly, MultiPoly, Q, RatFunc, format_rational
from .lie import LieElement
from .maslov import OrderedSymbol, SymbolSum
from .words import WordPoly

__all__ = ["to_obj", "from_obj", "dumps", "loads"]


def _poly(p):
    items = sorted(p.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]))
    return {"type": "poly", "n": p.nvars,
            "terms": [[format_rational(c), list(e)] for e, c in items]}


def _load_poly(o):
    return MultiPoly(o["n"], {tuple(e): Q(c) for c, e in o["terms"]})


def _coeff(c):
    if isinstance(c, MultiPoly):
        return _poly(c)
    if isinstance(c, LocalizedPoly):
        return {"type": "localized", "num": _poly(c.num), "k": c.k, "g": _poly(c.g)}
    if isinstance(c, RatFunc):
        return {"type": "ratfunc", "num": _poly(c.num), "den": _poly(c.den)}
    raise TypeError(f"cannot serialize coefficient {type(c).__name__}")


def _nf(a):
    basis = a.alg.basis
    terms = []
    for lam, c in a.sorted_terms():
        terms.append({
            "coeff": _coeff(c),
            "brackets": [basis.name(i) for i in lam],
            "words": [[x + 1 for x in basis.words[i]] for i in lam],
        })
    return {"type": "nf", "n": a.alg.n, "d": a.alg.d, "terms": terms}


def _load_nf(o):
    from .normal import NormalForm, algebra
    alg = algebra(o["n"], o["d"])
    terms = {}
    for t in o["terms"]:
        lam = tuple(alg.basis.index[tuple(x - 1 for x in w)] for w in t["words"])
        if lam != tuple(sorted(lam)):
            raise ValueError("bracket factors must be in basis order")
        terms[lam] = from_obj(t["coeff"])
    return NormalForm(alg, terms)


def to_obj(x):
    """JSON-ready dict for a value of any supported type."""
    from .localization import LeftFraction
    from .normal import NormalForm
    if isinstance(x, (MultiPoly, LocalizedPoly, RatFunc)):
        return _coeff(x)
    if isinstance(x, WordPoly):
        return {"type": "words", **x.to_json_obj()}
    if isinstance(x, LieElement):
        items = sorted(x.coeffs.items(), key=lambda kv: (len(kv[0]), kv[0]))
        return {"type": "lie", "n": x.n,
                "terms": [[format_rational(c), [a + 1 for a in w]] for w, c in items]}
    if isinstance(x, NormalForm):
        return _nf(x)
    if isinstance(x, LeftFraction):
        return {"type": "fraction", "n": x.ctx.n, "d": x.ctx.d, "g": _poly(x.ctx.g),
                "denom_exp": x.k, "numerator": _nf(x.num)}
    if isinstance(x, OrderedSymbol):
        return {"type": "symbol", "n": x.n,
                "slots": [[[format_rational(c), [a + 1 for a in w]] for w, c in s] for s in x.slots],
                "coeff": _poly(x.coeff)}
    if isinstance(x, SymbolSum):
        return {"type": "symbol_sum", "n": x.n,
                "items": [[format_rational(c), to_obj(s)] for c, s in x.items]}
    raise TypeError(f"cannot serialize {type(x).__name__}")


def from_obj(o):
    """Inverse of :func:`to_obj`."""
    t = o.get("type")
    if t == "poly":
        return _load_poly(o)
    if t == "localized":
        return LocalizedPoly(_load_poly(o["num"]), o["k"], _load_poly(o["g"]))
    if t == "ratfunc":
        return RatFunc(_load_poly(o["num"]), _load_poly(o["den"]))
    if t == "words":
        return WordPoly.from_json_obj(o)
    if t == "lie":
        return LieElement(o["n"], {tuple(a - 1 for a in w): Q(c) for c, w in o["terms"]})
    if t == "nf":
        return _load_nf(o)
    if t == "fraction":
        from .localization import LeftFraction, LocalizationContext
        ctx = LocalizationContext(o["n"], o["d"], _load_poly(o["g"]))
        num = _load_nf(o["numerator"])
        return LeftFraction(ctx, o["denom_exp"], num, canonical=True)
    if t == "symbol":
        from .maslov import make_slot
        slots = [make_slot({tuple(a - 1 for a in w): Q(c) for c, w in s}) for s in o["slots"]]
        return OrderedSymbol(o["n"], slots, _load_poly(o["coeff"]))
    if t == "symbol_sum":
        return SymbolSum(o["n"], [(Q(c), from_obj(s)) for c, s in o["items"]])
    raise ValueError(f"unknown JSON value type {t!r}")


def dumps(x, **kw):
    return json.dumps(to_obj(x), **kw)


def loads(s):
    return from_obj(json.loads(s))
