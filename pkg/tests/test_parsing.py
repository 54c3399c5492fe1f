import pytest
from hypothesis import given, strategies as st

from conftest import normal_forms
from ncfilt.localization import LeftFraction
from ncfilt.parsing import EvalError, ParseError, Session, evaluate, parse, to_text


def ev(src, n=2, d=2, g=None):
    return to_text(evaluate(parse(src), Session(n, d, g)))


def test_precedence_and_structure():
    t = parse("x2*x1 - x1*x2")
    assert t.kind == "sub" and t.args[0].kind == "mul"
    t = parse("[x1,x2]^2")
    assert t.kind == "pow" and t.args[0].kind == "comm" and t.value == 2
    t = parse("x1 + x2 x1^2")
    assert t.kind == "add" and t.args[1].kind == "mul" and t.args[1].args[1].kind == "pow"


def test_spec_examples():
    assert ev("x2*x1") == "x1*x2 - [x1,x2]"
    assert ev("x1*x2 - x2*x1", d=0) == "0"
    assert ev("x2*inv(x1)", d=3, g="x1") == (
        "{x2/x1} + {1/x1^2} · [x1,x2] + {1/x1^3} · [x1,[x1,x2]] + {1/x1^4} · [x1,[x1,[x1,x2]]]")


def test_juxtaposition_and_middle_dot():
    assert ev("x2 x1") == ev("x2·x1") == ev("x2*x1")


def test_rational_literals_and_symbols():
    assert ev("3/4*x1 - 1/2") == "3/4*x1 - 1/2"
    assert ev('sym("x2*x1")') == "x1*x2"
    assert ev("{x2/x1}", g="x1") == "{x2/x1}"


def test_inverse_needs_localization():
    with pytest.raises(EvalError, match="inversion requires a localization context"):
        ev("inv(x1)")
    with pytest.raises(EvalError, match="localization context"):
        ev("x1^-1")


@pytest.mark.parametrize("src,pos", [("x1 +", 4), ("(x1", 3), ("x1 $ x2", 3), ("[x1 x2]", 6)])
def test_syntax_errors_carry_position(src, pos):
    with pytest.raises(ParseError) as e:
        parse(src)
    assert e.value.pos == pos


def test_unknown_variable():
    with pytest.raises(EvalError, match="unknown variable x3"):
        ev("x3")


@given(normal_forms(3, 3))
def test_print_parse_round_trip(a):
    S = Session(3, 3)
    assert evaluate(parse(a.render()), S) == a


@given(normal_forms(2, 2), st.integers(0, 3), st.sampled_from(["x1", "x1 + x2", "x1*x2"]))
def test_fraction_round_trip(r, k, g):
    S = Session(2, 2, g)
    f = LeftFraction(S.ctx, k, r)
    assert evaluate(parse(to_text(f)), S) == f
    assert evaluate(parse(to_text(f, rational=False)), S) == f


def test_trace_session_matches_plain():
    lines = []
    a = evaluate(parse("x2*x1*x2"), Session(2, 3, trace=lines.append))
    assert a == evaluate(parse("x2*x1*x2"), Session(2, 3))
    assert lines
