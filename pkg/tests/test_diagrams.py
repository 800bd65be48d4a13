import itertools
import random

import pytest

from qboson import _kernels
from qboson.diagrams import (Boundary, Chord, Endpoint, crossing_pairs, degree, enumerate_matchings,
                             form_graph, form_graph_words, grdim_hom_a2, is_a2_admissible, kappa)
from qboson.foundations import ONE, ZERO, RatScalar
from qboson.freealg import AlgElement, ZLetter, dbar_map
from qboson.straighten import form_alg
from qboson.syntax import parse_element, parse_scalar as S, parse_word
from qboson.verify import all_words, random_word

BOTTOM, TOP = "[0:i,8:j,1:i,2:i]", "[2:i,1:i,0:i,8:j]"


def W(text, cm):
    return parse_element(text, cm)


def test_worked_example_matchings(a2):
    ms = enumerate_matchings(Boundary.parse(BOTTOM, TOP, a2))
    assert len(ms) == 3
    assert all(m.is_valid() for m in ms)
    assert [degree(m) for m in ms] == [0, 0, -2]
    assert all(kappa(m) == (3, 1) for m in ms)
    # the all-through matching has degree -d_i C_ii
    through = [m for m in ms if all(c.kind == "through" for c in m.chords())]
    assert len(through) == 1 and degree(through[0]) == -a2.sym(0, 0)


def test_odd_and_cap_boundaries(a2):
    assert enumerate_matchings(Boundary.parse("[]", "[0:i]", a2)) == []
    caps = enumerate_matchings(Boundary.parse("[0:i,1:i]", "[]", a2))
    assert len(caps) == 1 and caps[0].chords()[0].kind == "cap"
    assert kappa(caps[0]) == (1, 0)
    assert enumerate_matchings(Boundary.parse("[1:i,0:i]", "[]", a2)) == []


def test_empty_matching(a2):
    ms = enumerate_matchings(Boundary.parse("[]", "[]", a2))
    assert len(ms) == 1 and kappa(ms[0]) == (0, 0) and degree(ms[0]) == 0


def _matching(b, pairs):
    from qboson.diagrams import Matching
    return Matching(frozenset(frozenset(p) for p in pairs), b)


def test_crossing_examples(a2):
    bot, top = Endpoint("bottom", 1), Endpoint("top", 1)
    b = Boundary.parse("[0:i,0:i]", "[0:i,0:i]", a2)
    m = _matching(b, [(Endpoint("bottom", 1), Endpoint("top", 2)), (Endpoint("bottom", 2), top)])
    assert len(crossing_pairs(m)) == 1
    b = Boundary.parse("[0:i,0:j,0:j,1:i]", "[0:j,0:j]", a2)
    m = _matching(b, [(Endpoint("bottom", 1), Endpoint("bottom", 4)),
                      (Endpoint("bottom", 2), Endpoint("top", 1)),
                      (Endpoint("bottom", 3), Endpoint("top", 2))])
    assert m.is_valid()
    assert len(crossing_pairs(m)) == 2
    b = Boundary.parse("[0:i,1:i]", "[1:i,0:i]", a2)
    m = _matching(b, [(bot, Endpoint("bottom", 2)), (top, Endpoint("top", 2))])
    assert m.is_valid() and crossing_pairs(m) == set()


def test_crossing_two_throughs_degree(rank2):
    b = Boundary.parse("[1:i,0:i]", "[0:i,1:i]", rank2)
    (m,) = enumerate_matchings(b)
    assert degree(m) == 2 * rank2.d(0)
    assert degree(m, alternative=True) == degree(m)


def test_invalid_matchings_rejected(a2):
    b = Boundary.parse("[0:i]", "[1:i]", a2)
    m = _matching(b, [(Endpoint("bottom", 1), Endpoint("top", 1))])
    assert not m.is_valid()
    b = Boundary.parse("[0:i,1:j]", "[]", a2)
    m = _matching(b, [(Endpoint("bottom", 1), Endpoint("bottom", 2))])
    assert not m.is_valid()


def test_form_graph_examples(a2, b2, backend):
    assert form_graph(W(BOTTOM, a2), W(TOP, a2)) == S("(2+q^-2)/((1-q^2)^3*(1-q^2))")
    assert form_graph(W(BOTTOM, b2), W(TOP, b2)) == S("(2+q^-2)/((1-q^2)^3*(1-q^4))")
    assert form_graph(AlgElement.one(a2), AlgElement.one(a2)) == ONE
    assert form_graph(W("[0:i,1:i]", a2), W("[0:i,1:i]", a2)) == S("1/(1-q^2)^2")


def test_form_graph_bar_on_first_argument(a2):
    x, y = W("q*[0:i]", a2), W("q*[0:i]", a2)
    assert form_graph(x, y) == form_graph(W("[0:i]", a2), W("[0:i]", a2))


def test_engines_agree_sample(rank2, backend):
    rng = random.Random(21)
    for _ in range(150):
        n = rng.randint(0, 3)
        u = random_word(rng, 2, (-1, 0, 1, 2), n)
        v = list(u)
        rng.shuffle(v)
        v = [ZLetter(x.level + rng.choice((0, 0, 2)), x.vertex) for x in v]
        x, y = AlgElement.word(rank2, u), AlgElement.word(rank2, v)
        assert form_graph(x, y) == form_alg(x, y)


def test_adjunction_and_dbar(a2, backend):
    rng = random.Random(8)
    for _ in range(60):
        x = AlgElement.word(a2, random_word(rng, 2, (0, 1, 2), rng.randint(0, 3)))
        y = AlgElement.word(a2, random_word(rng, 2, (0, 1, 2), rng.randint(0, 3)))
        i, n = rng.randrange(2), rng.choice((0, 1, 2))
        e = AlgElement.word(a2, [(n, i)])
        up = AlgElement.word(a2, [(n + 1, i)])
        assert form_graph(e * x, y) == form_graph(x, up * y)
        assert form_graph(x, y) == form_graph(dbar_map(x), dbar_map(y))


def test_weight_orthogonality(a2, backend):
    assert form_graph(W("[0:i]", a2), W("[0:j]", a2)) == ZERO
    assert form_graph(W("[0:i,1:j]", a2), W("[]", a2)) == ZERO


def _flip(w):
    return tuple(ZLetter(1 - x.level, x.vertex) for x in reversed(w))


def test_horizontal_flip(b2, backend):
    for u in all_words(2, (0, 1), 3):
        for v in all_words(2, (0, 1), 3):
            if (len(u) + len(v)) % 2:
                continue
            assert form_graph_words(u, v, b2).to_scalar(b2) == \
                form_graph_words(_flip(u), _flip(v), b2).to_scalar(b2)


def test_a2_admissibility(a2):
    (m,) = enumerate_matchings(Boundary.parse("[1:i,0:i]", "[0:i,1:i]", a2))
    assert not is_a2_admissible(m)
    (m,) = enumerate_matchings(Boundary.parse("[0:i,1:j]", "[1:j,0:i]", a2))
    assert is_a2_admissible(m)
    (m,) = enumerate_matchings(Boundary.parse("[0:i,1:i]", "[]", a2))
    assert is_a2_admissible(m)
    (m,) = enumerate_matchings(Boundary.parse("[2:i]", "[2:i]", a2))
    with pytest.raises(ValueError):
        is_a2_admissible(m)


def test_hom_dimensions(a2, backend):
    assert grdim_hom_a2((), parse_word("[1:i,0:i]", a2), a2).value == S("1/(1-q^2)")
    assert grdim_hom_a2(parse_word("[1:i,0:i]", a2), parse_word("[0:i,1:i]", a2), a2).value == ZERO
    assert grdim_hom_a2((), (), a2).value == ONE
    with pytest.raises(ValueError):
        grdim_hom_a2(parse_word("[2:i]", a2), parse_word("[2:i]", a2), a2)


def test_hom_dimension_series_nonnegative(b2, backend):
    for u in all_words(2, (0, 1), 4):
        for v in all_words(2, (0, 1), 2):
            g = grdim_hom_a2(u, v, b2)
            assert all(c >= 0 for c in g.series(-12, 12).values())


def test_a2_count_agrees_with_admissible_matchings(a2, backend):
    for u in all_words(2, (0, 1), 3):
        for v in all_words(2, (0, 1), 3):
            ms = enumerate_matchings(Boundary(u, v, a2))
            adm = [m for m in ms if is_a2_admissible(m)]
            want = S("0")
            for m in adm:
                den = RatScalar(1)
                for i, k in enumerate(kappa(m)):
                    den = den * S(f"1/(1-q^{2 * a2.d(i)})") ** k if k else den
                want = want + RatScalar.q(degree(m)) * den
            assert grdim_hom_a2(u, v, a2).value == want


def test_reduced_hom_factorization(a2, backend):
    words0 = all_words(2, (0,), 2)
    for i, i2, j, j2 in itertools.product(words0, repeat=4):
        if len(i) != len(i2) or len(j) != len(j2):
            continue
        sj = tuple(ZLetter(1, x.vertex) for x in j)
        sj2 = tuple(ZLetter(1, x.vertex) for x in j2)
        lhs = grdim_hom_a2(i + sj, i2 + sj2, a2).value
        rhs = grdim_hom_a2(i, i2, a2).value * grdim_hom_a2(sj, sj2, a2).value
        assert lhs == rhs


def test_chord_dataclass_fields(a2):
    (m,) = enumerate_matchings(Boundary.parse("[0:i,1:i]", "[]", a2))
    (c,) = m.chords()
    assert isinstance(c, Chord) and (c.first_level, c.second_level) == (0, 1)


def test_backends_enumerate_identically(b2):
    if len(_kernels.available()) < 2:
        pytest.skip("compiled kernels not built")
    sym = b2.sym_table()
    from qboson.straighten import encode
    rng = random.Random(30)
    for _ in range(100):
        u = encode(random_word(rng, 2, (0, 1, 2), rng.randint(0, 4)))
        v = encode(random_word(rng, 2, (0, 1, 2), rng.choice((0, 2, 4)) - len(u) % 2 + 1))
        for flags in ((False, False), (True, False), (False, True)):
            assert (_kernels.python_backend.matching_degrees(u, v, sym, *flags)
                    == _kernels.compiled_backend.matching_degrees(u, v, sym, *flags))
