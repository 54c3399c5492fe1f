"""Expression language: tokenizer, parser, evaluator.

Grammar (``*``, ``·`` and juxtaposition are the noncommutative product)::

    expr    := term (("+" | "-") term)*
    term    := unary (("*" | "·")? unary)*
    unary   := "-" unary | power
    power   := atom ("^" ["-"] INT)?
    atom    := NUMBER ["/" NUMBER] | "x" INT | "(" expr ")" | "[" expr "," expr "]"
             | "inv" "(" expr ")" | "sym" "(" STRING ")" | "{" ratexpr "}"

Powers bind tighter than everything; a commutator is an atom, so it binds
tighter than products, which bind tighter than sums.  ``{f}`` and
``sym("f")`` are the ordered lift of a commutative rational expression
``f`` (which may use ``/``).  Negative powers and ``inv`` need a session
localized at some ``g``.
"""

import re
from dataclasses import dataclass

from gmpy2 import mpq

from .arith import LocalizedPoly, MultiPoly, RatFunc

__all__ = [
    "ParseError", "EvalError", "Node", "parse", "parse_commutative",
    "Session", "evaluate", "to_text",
]


class ParseError(ValueError):
    def __init__(self, msg, pos, src=""):
        self.pos = pos
        self.src = src
        super().__init__(f"{msg} at position {pos}")


class EvalError(ValueError):
    def __init__(self, msg, pos=None):
        self.pos = pos
        super().__init__(msg if pos is None else f"{msg} (at position {pos})")


_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<num>\d+)
  | (?P<var>x(?P<idx>\d+))
  | (?P<name>inv|sym)
  | (?P<str>"[^"]*")
  | (?P<op>[-+*/^(),\[\]{}]|·)
""", re.VERBOSE)


@dataclass
class Tok:
    kind: str
    text: str
    pos: int


def tokenize(src):
    out = []
    pos = 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if not m:
            raise ParseError(f"unexpected character {src[pos]!r}", pos, src)
        kind = m.lastgroup
        if kind == "idx":
            kind = "var"
        if kind != "ws":
            if kind == "var":
                out.append(Tok("var", m.group("idx"), pos))
            else:
                out.append(Tok(kind, m.group(kind), pos))
        pos = m.end()
    out.append(Tok("end", "", pos))
    return out


@dataclass
class Node:
    kind: str          # num, var, add, sub, mul, neg, pow, comm, inv, sym
    args: tuple = ()
    value: object = None
    pos: int = 0


class _Parser:
    def __init__(self, src):
        self.src = src
        self.toks = tokenize(src)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, text=None, kind=None):
        t = self.toks[self.i]
        if text is not None and t.text != text:
            raise ParseError(f"expected {text!r}, found {t.text or 'end of input'!r}", t.pos, self.src)
        if kind is not None and t.kind != kind:
            raise ParseError(f"expected {kind}, found {t.text or 'end of input'!r}", t.pos, self.src)
        self.i += 1
        return t

    def parse(self):
        e = self.expr()
        t = self.peek()
        if t.kind != "end":
            raise ParseError(f"unexpected {t.text!r}", t.pos, self.src)
        return e

    def expr(self):
        left = self.term()
        while self.peek().text in ("+", "-"):
            t = self.take()
            right = self.term()
            left = Node("add" if t.text == "+" else "sub", (left, right), pos=t.pos)
        return left

    def _starts_atom(self, t):
        return t.kind in ("num", "var", "name") or t.text in ("(", "[", "{")

    def term(self):
        left = self.unary()
        while True:
            t = self.peek()
            if t.text in ("*", "·"):
                self.take()
                right = self.unary()
            elif self._starts_atom(t):
                right = self.unary()
            else:
                return left
            left = Node("mul", (left, right), pos=t.pos)

    def unary(self):
        t = self.peek()
        if t.text == "-":
            self.take()
            return Node("neg", (self.unary(),), pos=t.pos)
        return self.power()

    def power(self):
        base = self.atom()
        t = self.peek()
        if t.text == "^":
            self.take()
            sign = 1
            if self.peek().text == "-":
                self.take()
                sign = -1
            k = self.take(kind="num")
            return Node("pow", (base,), value=sign * int(k.text), pos=t.pos)
        return base

    def atom(self):
        t = self.peek()
        if t.kind == "num":
            self.take()
            v = mpq(int(t.text))
            if self.peek().text == "/" and self.toks[self.i + 1].kind == "num":
                self.take()
                v = v / int(self.take().text)
            return Node("num", value=v, pos=t.pos)
        if t.kind == "var":
            self.take()
            k = int(t.text)
            if k < 1:
                raise ParseError("variables are x1, x2, ...", t.pos, self.src)
            return Node("var", value=k - 1, pos=t.pos)
        if t.text == "(":
            self.take()
            e = self.expr()
            self.take(")")
            return e
        if t.text == "[":
            self.take()
            a = self.expr()
            self.take(",")
            b = self.expr()
            self.take("]")
            return Node("comm", (a, b), pos=t.pos)
        if t.kind == "name" and t.text == "inv":
            self.take()
            self.take("(")
            e = self.expr()
            self.take(")")
            return Node("inv", (e,), pos=t.pos)
        if t.kind == "name" and t.text == "sym":
            self.take()
            self.take("(")
            s = self.take(kind="str")
            self.take(")")
            return Node("sym", value=s.text[1:-1], pos=t.pos)
        if t.text == "{":
            start = t.pos + 1
            depth = 0
            j = self.i
            while True:
                tt = self.toks[j]
                if tt.kind == "end":
                    raise ParseError("unterminated '{'", t.pos, self.src)
                if tt.text == "{":
                    depth += 1
                elif tt.text == "}":
                    depth -= 1
                    if depth == 0:
                        break
                j += 1
            inner = self.src[start:self.toks[j].pos]
            self.i = j + 1
            return Node("sym", value=inner, pos=t.pos)
        raise ParseError(f"unexpected {t.text or 'end of input'!r}", t.pos, self.src)


def parse(src):
    """Parse an expression into a :class:`Node` tree."""
    return _Parser(src).parse()


# -- commutative sub-language ----------------------------------------------------

def parse_commutative(src, n):
    """Evaluate a commutative rational expression in ``x1..xn`` to a :class:`RatFunc`."""
    p = _Parser(src)
    toks = p.toks
    state = {"i": 0}

    def peek():
        return toks[state["i"]]

    def take(text=None):
        t = toks[state["i"]]
        if text is not None and t.text != text:
            raise ParseError(f"expected {text!r}", t.pos, src)
        state["i"] += 1
        return t

    def expr():
        v = term()
        while peek().text in ("+", "-"):
            op = take().text
            r = term()
            v = v + r if op == "+" else v - r
        return v

    def term():
        v = unary()
        while peek().text in ("*", "/", "·") or peek().kind in ("num", "var") or peek().text == "(":
            if peek().text in ("*", "·"):
                take()
                v = v * unary()
            elif peek().text == "/":
                take()
                d = unary()
                if not d:
                    raise ParseError("division by zero", peek().pos, src)
                v = v / d
            else:
                v = v * unary()
        return v

    def unary():
        if peek().text == "-":
            take()
            return -unary()
        return power()

    def power():
        b = atom()
        if peek().text == "^":
            take()
            sign = 1
            if peek().text == "-":
                take()
                sign = -1
            k = int(take().text)
            b = b ** (sign * k) if sign > 0 else b.inverse() ** k
        return b

    def atom():
        t = peek()
        if t.kind == "num":
            take()
            return RatFunc.from_poly(MultiPoly.constant(n, int(t.text)))
        if t.kind == "var":
            take()
            k = int(t.text) - 1
            if not 0 <= k < n:
                raise ParseError(f"unknown variable x{k + 1} (n = {n})", t.pos, src)
            return RatFunc.from_poly(MultiPoly.var(n, k))
        if t.text == "(":
            take()
            v = expr()
            take(")")
            return v
        raise ParseError(f"unexpected {t.text or 'end of input'!r}", t.pos, src)

    v = expr()
    if peek().kind != "end":
        raise ParseError(f"unexpected {peek().text!r}", peek().pos, src)
    return v


# -- evaluation --------------------------------------------------------------------

class Session:
    """Arity ``n``, truncation ``d`` and optional localization polynomial ``g``.

    Without ``g`` values are :class:`NormalForm` (polynomial coefficients);
    with ``g`` they are :class:`LeftFraction`.  ``mul`` may be replaced, e.g.
    by the ordered-symbol product for tracing.
    """

    def __init__(self, n, d, g=None, trace=None):
        from .normal import algebra
        if n < 1 or d < 0:
            raise ValueError("need n >= 1 and d >= 0")
        self.n, self.d = n, d
        self.alg = algebra(n, d)
        self.trace = trace
        if isinstance(g, str):
            g = parse_commutative(g, n)
            if not g.is_polynomial():
                raise ValueError("localization polynomial must be a polynomial")
            g = g.to_poly()
        if g is not None and not g:
            raise ValueError("cannot localize at zero")
        self.g = g
        self.ctx = None
        if g is not None:
            from .localization import LocalizationContext
            self.ctx = LocalizationContext(n, d, g)

    @property
    def localized(self):
        return self.ctx is not None

    def const(self, c):
        from .normal import NormalForm
        v = NormalForm.lift(self.alg, c)
        return self.ctx.lift(v) if self.ctx else v

    def var(self, i, pos=None):
        from .normal import NormalForm
        if not 0 <= i < self.n:
            raise EvalError(f"unknown variable x{i + 1} (n = {self.n})", pos)
        v = NormalForm.generator(self.alg, i)
        return self.ctx.lift(v) if self.ctx else v

    def mul(self, a, b):
        if self.trace is not None and not self.ctx:
            from .maslov import normal_order, product_symbol, symbols_of
            return normal_order(product_symbol(symbols_of(a), symbols_of(b)), self.d, trace=self.trace)
        return a * b

    def symbol(self, text, pos=None):
        from .normal import NormalForm
        f = parse_commutative(text, self.n)
        if f.is_polynomial():
            return self.const(0) + (self.ctx.lift(NormalForm.lift(self.alg, f.to_poly())) if self.ctx
                                    else NormalForm.lift(self.alg, f.to_poly()))
        if not self.ctx:
            raise EvalError("rational symbol requires a localization context", pos)
        from .localization import from_rational
        try:
            c = LocalizedPoly.from_ratfunc(f, self.g)
        except ArithmeticError as exc:
            raise EvalError(str(exc), pos) from None
        return from_rational(NormalForm(self.alg, {(): c}), self.ctx)

    def invert(self, a, pos=None):
        if not self.ctx:
            raise EvalError("inversion requires a localization context", pos)
        from .localization import invert
        return invert(a)


def evaluate(node, session):
    """Evaluate a parse tree in a :class:`Session`."""
    k = node.kind
    if k == "num":
        return session.const(node.value)
    if k == "var":
        return session.var(node.value, node.pos)
    if k == "add":
        return evaluate(node.args[0], session) + evaluate(node.args[1], session)
    if k == "sub":
        return evaluate(node.args[0], session) - evaluate(node.args[1], session)
    if k == "neg":
        return -evaluate(node.args[0], session)
    if k == "mul":
        return session.mul(evaluate(node.args[0], session), evaluate(node.args[1], session))
    if k == "comm":
        a, b = evaluate(node.args[0], session), evaluate(node.args[1], session)
        return session.mul(a, b) - session.mul(b, a)
    if k == "pow":
        base = evaluate(node.args[0], session)
        e = node.value
        if e < 0:
            base = session.invert(base, node.pos)
            e = -e
        r = session.const(1)
        for _ in range(e):
            r = session.mul(r, base)
        return r
    if k == "inv":
        return session.invert(evaluate(node.args[0], session), node.pos)
    if k == "sym":
        return session.symbol(node.value, node.pos)
    raise EvalError(f"unknown node {k}")


def to_text(value, rational=True):
    """Canonical text of a value (fractions through their rational normal form)."""
    from .localization import LeftFraction, to_rational_normal_form
    if isinstance(value, LeftFraction):
        return to_rational_normal_form(value).render() if rational else value.render()
    return value.render() if hasattr(value, "render") else str(value)
