import json
import random

import pytest

from qboson.foundations import CartanMatrix, RatScalar
from qboson.syntax import (ParseError, element_from_json, element_to_json, format_element,
                           format_scalar, format_word, parse_element, parse_scalar, parse_word,
                           scalar_from_json, scalar_to_json)
from qboson.verify import random_element


@pytest.mark.parametrize("text", [
    "1", "-1", "q", "q^-2", "1/(1-q^2)", "(2+q^-2)/((1-q^2)^3*(1-q^4))", "-q^2/(1-q^2)",
    "3*q^5-q", "(q+q^-1)/(1-q^6)",
])
def test_scalar_round_trip(text):
    x = parse_scalar(text)
    assert parse_scalar(format_scalar(x)) == x
    assert scalar_from_json(json.loads(json.dumps(scalar_to_json(x)))) == x


def test_scalar_json_schema():
    obj = scalar_to_json(parse_scalar("q/(1-q^2)"))
    assert obj == {"num": [[1, 1]], "den": [[0, 1], [2, -1]]}


def test_element_round_trip_random(rank2):
    rng = random.Random(5)
    for _ in range(100):
        x = random_element(rng, rank2, (-1, 0, 1, 2, 8), 4, terms=3)
        assert parse_element(format_element(x), rank2) == x
        assert element_from_json(json.loads(json.dumps(element_to_json(x))), rank2) == x


def test_word_syntax(a2):
    w = parse_word("[0:i,8:j,1:i,2:i]", a2)
    assert [(x.level, x.vertex) for x in w] == [(0, 0), (8, 1), (1, 0), (2, 0)]
    assert format_word(w, a2) == "[0:i,8:j,1:i,2:i]"
    assert parse_word("[-1:j]", a2)[0].level == -1
    assert parse_word("[]", a2) == ()


def test_straighten_example_prints_as_specified(a2):
    from qboson.straighten import straighten
    sl2 = CartanMatrix.preset("SL2")
    out = straighten(parse_element("[1:i,0:i]", sl2))
    assert format_element(out) == "q^-2*[0:i,1:i] + (1/(1-q^2))*[]"


@pytest.mark.parametrize("text,pos", [
    ("[0:i,", 5), ("[0:k]", 3), ("q^", 2), ("2*[0:i]]", 7), ("[0:i] +", 7),
])
def test_parse_errors_carry_positions(a2, text, pos):
    with pytest.raises(ParseError) as info:
        parse_element(text, a2)
    assert info.value.pos == pos
    assert f"position {pos}" in str(info.value)


def test_scalar_division_by_zero_is_an_error():
    with pytest.raises((ParseError, ZeroDivisionError)):
        parse_scalar("1/(q-q)")


def test_scalar_parse_rejects_words():
    with pytest.raises(ParseError):
        parse_scalar("[0:i]")


def test_element_arithmetic_in_syntax(a2):
    x = parse_element("([0:i] + q*[0:j])*[1:i]", a2)
    assert x == parse_element("[0:i,1:i] + q*[0:j,1:i]", a2)
    assert parse_element("(1/(1-q^2))", a2).coefficient(()) == parse_scalar("1/(1-q^2)")
    assert parse_element("0", a2).is_zero()
    assert isinstance(parse_scalar("q").num.to_dict(), dict)
    assert parse_scalar("q") == RatScalar.q(1)
