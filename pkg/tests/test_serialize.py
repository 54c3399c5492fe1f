import json
import random

from hypothesis import given

from conftest import normal_forms, polys, words
from ncfilt import LieElement, RatFunc, serialize
from ncfilt.acceptance import random_values
from ncfilt.maslov import symbols_of


def _round_trip(v):
    s = serialize.dumps(v)
    back = serialize.loads(s)
    assert back == v
    assert serialize.dumps(back) == s


@given(normal_forms(3, 3))
def test_normal_form(v):
    _round_trip(v)


@given(words(3))
def test_words(v):
    _round_trip(v)


@given(polys(3), polys(3))
def test_ratfunc(a, b):
    if b:
        _round_trip(RatFunc(a, b))
    _round_trip(a)


def test_mixed_random_values():
    for v, _ in random_values(random.Random(7), 100):
        _round_trip(v)


def test_lie_and_symbols():
    _round_trip(LieElement(2, {(0, 1): 2, (0, 0, 1): -1}))
    v, _ = random_values(random.Random(1), 1)[0]
    s = serialize.dumps(symbols_of(v))
    assert serialize.dumps(serialize.loads(s)) == s


def test_normal_form_layout():
    from ncfilt.parsing import Session, evaluate, parse
    o = json.loads(serialize.dumps(evaluate(parse("x2*x1"), Session(2, 2))))
    assert o["type"] == "nf" and (o["n"], o["d"]) == (2, 2)
    assert [t["brackets"] for t in o["terms"]] == [[], ["[x1,x2]"]]
    assert o["terms"][1]["coeff"]["terms"] == [["-1", [0, 0]]]


def test_fraction_layout():
    from ncfilt.parsing import Session, evaluate, parse
    o = json.loads(serialize.dumps(evaluate(parse("x2*inv(x1)"), Session(2, 2, "x1"))))
    assert o["type"] == "fraction" and o["denom_exp"] == 3
    assert o["numerator"]["type"] == "nf"
