import itertools
import random

import pytest

from qboson.diagrams import form_graph
from qboson.foundations import ONE, ZERO, RatScalar
from qboson.freealg import AlgElement, embed_level, serre_element
from qboson.lusztig import form_lusztig, form_lusztig_words, serre_pairing_row, twisted_derivation
from qboson.straighten import form_alg
from qboson.syntax import parse_element, parse_scalar as S
from qboson.verify import all_words, random_word


def W(text, cm):
    return parse_element(text, cm)


def test_twisted_derivation_examples(a2, b2):
    assert twisted_derivation(0, AlgElement.one(a2)).is_zero()
    assert twisted_derivation(0, W("[0:i]", a2)) == W("(1/(1-q^2))*[]", a2)
    assert twisted_derivation(0, W("[0:j,0:i]", a2)) == W("(q/(1-q^2))*[0:j]", a2)
    assert twisted_derivation(0, W("[0:j,0:i]", b2)) == W("(q^2/(1-q^2))*[0:j]", b2)


def test_twisted_derivation_rejects_mixed_levels(a2):
    with pytest.raises(ValueError):
        twisted_derivation(0, W("[0:i,1:i]", a2))


def test_form_examples(a2, sl2):
    assert form_lusztig(W("[0:i]", a2), W("[0:i]", a2)) == S("1/(1-q^2)")
    assert form_lusztig(W("[0:i]", a2), W("[0:j]", a2)) == ZERO
    assert form_lusztig(AlgElement.one(a2), AlgElement.one(a2)) == ONE
    e2 = W("[0:i,0:i]", sl2)
    assert form_lusztig(e2, e2) == S("(1+q^-2)/(1-q^2)^2")


def test_level_mismatch_rejected(a2):
    with pytest.raises(ValueError):
        form_lusztig(W("[0:i]", a2), W("[1:i]", a2))
    with pytest.raises(ValueError):
        form_lusztig(W("[0:i,1:i]", a2), W("[0:i,1:i]", a2))


def test_adjoint_property(rank2):
    rng = random.Random(17)
    for _ in range(80):
        i = rng.randrange(2)
        x = AlgElement.word(rank2, random_word(rng, 2, (0,), rng.randint(0, 3)))
        y = AlgElement.word(rank2, random_word(rng, 2, (0,), rng.randint(1, 4)))
        ei = AlgElement.word(rank2, [(0, i)])
        assert form_lusztig(ei * x, y) == form_lusztig(x, twisted_derivation(i, y))


def test_level_invariance(b2):
    for u in all_words(2, (0,), 3):
        for v in all_words(2, (0,), 3):
            x, y = AlgElement.word(b2, u), AlgElement.word(b2, v)
            base = form_lusztig(x, y)
            for n in (-1, 2):
                assert form_lusztig(embed_level(n, x), embed_level(n, y)) == base


def test_three_engines_on_small_words(rank2):
    for u in all_words(2, (0,), 3):
        for v in all_words(2, (0,), 3):
            x, y = AlgElement.word(rank2, u), AlgElement.word(rank2, v)
            assert form_lusztig(x, y) == form_alg(x, y) == form_graph(x, y)


def test_semilinear_in_first_argument(a2):
    x, y = W("q*[0:i,0:j] + [0:j,0:i]", a2), W("[0:i,0:j]", a2)
    want = RatScalar.q(-1) * form_lusztig(W("[0:i,0:j]", a2), y) + form_lusztig(W("[0:j,0:i]", a2), y)
    assert form_lusztig(x, y) == want


def test_serre_rows(a2):
    probes = [w for w in all_words(2, (0,), 3, 3) if sorted(v for _, v in w) == [0, 0, 1]]
    assert len(probes) == 3
    assert serre_pairing_row(a2, 0, 1, 0, probes) == [ZERO] * 3
    a1a1 = type(a2).preset("A1XA1")
    probes = [((0, 0), (0, 1)), ((0, 1), (0, 0))]
    assert serre_pairing_row(a1a1, 0, 1, 0, probes) == [ZERO, ZERO]
    assert serre_pairing_row(a2, 0, 1, 0, []) == []


def test_serre_row_weight_mismatch_warns(a2):
    with pytest.warns(UserWarning):
        row = serre_pairing_row(a2, 0, 1, 0, [((0, 0),)])
    assert row == [ZERO]


@pytest.mark.parametrize("level", [0, 1])
def test_serre_row_all_levels(b2, level):
    for i, j in itertools.permutations(range(2)):
        s = serre_element(b2, i, j, level)
        content = sorted(x.vertex for x in next(iter(s.terms)))
        probes = [tuple((level, v) for v in p) for p in set(itertools.permutations(content))]
        assert all(v.is_zero() for v in serre_pairing_row(b2, i, j, level, probes))


def test_words_numerator_matches_scalar(b2):
    f = form_lusztig_words([(0, 1), (0, 1)], [(0, 1), (0, 1)], b2)
    assert f.to_scalar(b2) == S("(1+q^-4)/(1-q^4)^2")
