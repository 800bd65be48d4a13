import random

import pytest

from qboson.foundations import ONE, RatScalar, q_int
from qboson.freealg import (AlgElement, ZLetter, bar_map, d_map, dbar_map, divided_power,
                            embed_boson, embed_level, is_coreduced, is_reduced, serre_element,
                            unembed_level, weight_of)
from qboson.syntax import parse_element, parse_scalar as S, parse_word
from qboson.verify import random_element, random_word


def W(text, cm):
    return parse_element(text, cm)


def test_concatenation_and_scalars(a2):
    assert W("[0:i]", a2) * W("[1:j]", a2) == W("[0:i,1:j]", a2)
    assert W("q*[0:i]", a2) * W("q*[]", a2) == W("q^2*[0:i]", a2)
    assert (W("[0:i]", a2) + W("[1:i]", a2)) * W("[0:i]", a2) == W("[0:i,0:i] + [1:i,0:i]", a2)


def test_mixed_cartan_data_refused(a2, b2):
    with pytest.raises(ValueError):
        W("[0:i]", a2) * W("[0:i]", b2)


def test_zero_coefficients_dropped(a2):
    x = W("[0:i] - [0:i]", a2)
    assert x.is_zero() and len(x) == 0


def test_weights(a2):
    assert weight_of(parse_word("[0:i,1:i]", a2), 2) == (0, 0)
    assert weight_of(parse_word("[0:i,0:i,1:j]", a2), 2) == (2, -1)
    assert weight_of((), 2) == (0, 0)


def test_weight_additive(a2):
    rng = random.Random(3)
    for _ in range(100):
        u = random_word(rng, 2, (-1, 0, 1, 2), rng.randint(0, 5))
        v = random_word(rng, 2, (-1, 0, 1, 2), rng.randint(0, 5))
        assert weight_of(u + v, 2) == tuple(a + b for a, b in zip(weight_of(u, 2), weight_of(v, 2)))
        image = next(iter(d_map(AlgElement.word(a2, u)).terms))
        assert weight_of(image, 2) == tuple(-a for a in weight_of(u, 2))


def test_bar_map_examples(a2):
    assert bar_map(W("q*[0:i,1:j]", a2)) == W("q^-1*[1:j,0:i]", a2)
    assert bar_map(W("[0:i]", a2)) == W("[0:i]", a2)


def test_d_maps(a2):
    assert d_map(W("[0:i,1:j]", a2)) == W("[2:j,1:i]", a2)
    assert d_map(W("q*[]", a2)) == W("q^-1*[]", a2)
    x = W("q*[0:i,1:j] + (1/(1-q^2))*[2:i]", a2)
    assert d_map(d_map(x)) == dbar_map(x, 2)
    assert dbar_map(W("[0:i,1:j]", a2)) == W("[1:i,2:j]", a2)
    assert dbar_map(W("q*[]", a2)) == W("q*[]", a2)
    assert dbar_map(x) == bar_map(d_map(x))


def test_anti_and_automorphisms(rank2):
    rng = random.Random(11)
    for _ in range(60):
        x = random_element(rng, rank2, (-1, 0, 1), 3)
        y = random_element(rng, rank2, (-1, 0, 1), 3)
        assert bar_map(x * y) == bar_map(y) * bar_map(x)
        assert d_map(x * y) == d_map(y) * d_map(x)
        assert dbar_map(x * y) == dbar_map(x) * dbar_map(y)
        assert bar_map(bar_map(x)) == x
        assert bar_map(x.scale(RatScalar.q(1))) == bar_map(x).scale(RatScalar.q(-1))


def test_embed_level(a2):
    assert embed_level(2, W("[0:i,0:j]", a2)) == W("[2:i,2:j]", a2)
    x = W("q*[0:i,0:j] + [0:j]", a2)
    assert embed_level(0, x) == x
    assert unembed_level(3, embed_level(3, x)) == x
    with pytest.raises(ValueError):
        embed_level(1, W("[1:i]", a2))


def test_embed_boson():
    assert embed_boson([("E", 0), ("F", 0)]) == (ZLetter(0, 0), ZLetter(1, 0))
    assert embed_boson([("F", 1), ("E", 0)]) == (ZLetter(1, 1), ZLetter(0, 0))
    assert embed_boson([]) == ()
    with pytest.raises(ValueError):
        embed_boson([("G", 0)])


def test_serre_elements(a2):
    want = W("[0:i,0:i,0:j] - (q+q^-1)*[0:i,0:j,0:i] + [0:j,0:i,0:i]", a2)
    assert serre_element(a2, 0, 1, 0) == want
    a1a1 = type(a2).preset("A1XA1")
    # the k = 0 summand carries the plus sign, so E_j E_i comes first
    assert serre_element(a1a1, 0, 1, 0) == W("[0:j,0:i] - [0:i,0:j]", a1a1)
    assert serre_element(a2, 0, 1, 1) == dbar_map(serre_element(a2, 0, 1, 0))
    with pytest.raises(ValueError):
        serre_element(a2, 0, 0, 0)


def test_serre_weight(b2):
    for i, j in ((0, 1), (1, 0)):
        for n in (-1, 0, 1, 2):
            s = serre_element(b2, i, j, n)
            sign = -1 if n % 2 else 1
            want = [0, 0]
            want[i] += sign * (1 - b2.c(i, j))
            want[j] += sign
            assert {weight_of(w, 2) for w in s.terms} == {tuple(want)}


def test_divided_powers(a2, b2):
    assert divided_power(a2, 0, 0, 0) == AlgElement.one(a2)
    assert divided_power(a2, 0, 3, 1) == W("[3:i]", a2)
    assert divided_power(a2, 0, 0, 2) == W("[0:i,0:i]", a2).scale(q_int(a2, 0, 2).inverse())
    assert divided_power(b2, 1, 0, 2).coefficient(parse_word("[0:j,0:j]", b2)) == S("q^2/(1+q^4)")


def test_reducedness():
    w = (ZLetter(0, 0), ZLetter(0, 1), ZLetter(1, 0))
    assert is_reduced(w) and not is_coreduced(w)
    assert not is_reduced((ZLetter(1, 0), ZLetter(0, 0)))
    assert is_coreduced((ZLetter(1, 0), ZLetter(0, 0)))
    assert is_reduced(()) and is_coreduced(())


def test_vertex_out_of_range(a2):
    with pytest.raises(ValueError):
        AlgElement.word(a2, [ZLetter(0, 5)])


def test_power_and_division(a2):
    e = W("[0:i]", a2)
    assert e ** 3 == W("[0:i,0:i,0:i]", a2)
    assert (e * 2) / 2 == e
    assert e ** 0 == AlgElement.one(a2)
    assert (AlgElement.one(a2) + 1).coefficient(()) == ONE + ONE
