import random
from fractions import Fraction

import pytest

from qboson.foundations import (ONE, ZERO, CartanError, CartanMatrix, KappaFraction, LaurentPoly,
                                RatScalar, SizeGuardError, bar, cyclotomic, kappa_denominator,
                                q_binom, q_fact, q_int, q_power_i, series_expand,
                                validate_cartan, weight_form)
from qboson.syntax import parse_scalar as S


def test_presets_validate():
    for name in ("A1", "SL2", "A2", "B2", "A1XA1", "G2"):
        validate_cartan(CartanMatrix.preset(name))


def test_b2_symmetrizability_by_hand(b2):
    assert b2.d(0) * b2.c(0, 1) == b2.d(1) * b2.c(1, 0) == -2


@pytest.mark.parametrize("entries,sym,axiom", [
    ([[2, -1], [0, 2]], [1, 1], "zero_pattern"),
    ([[1, -1], [-1, 2]], [1, 1], "diagonal"),
    ([[2, 1], [1, 2]], [1, 1], "off_diagonal_sign"),
    ([[2, -1], [-1, 2]], [1, 2], "symmetrizable"),
    ([[2, -1], [-1, 2]], [2, 2], "gcd"),
    ([[2, -1], [-1, 2]], [0, 0], "symmetrizer_positive"),
    ([[2, -1]], [1, 1], "shape"),
])
def test_each_axiom_is_reported(entries, sym, axiom):
    with pytest.raises(CartanError) as info:
        CartanMatrix.checked(["i", "j"], entries, sym)
    assert info.value.axiom == axiom


def test_unknown_preset_and_label(a2):
    with pytest.raises((KeyError, ValueError)):
        CartanMatrix.preset("Z9")
    with pytest.raises(KeyError):
        a2.index("k")
    assert a2.index("j") == 1


def test_q_power_i(a2, b2):
    assert q_power_i(a2, 0, 2) == RatScalar.q(2)
    assert q_power_i(b2, 1, 1) == RatScalar.q(2)
    assert q_power_i(b2, 1, 0) == ONE


def test_quantum_integers(a2, b2):
    assert q_int(a2, 0, 2) == S("q+q^-1")
    assert q_int(b2, 1, 2) == S("q^2+q^-2")
    assert q_fact(a2, 0, 0) == ONE
    assert q_binom(a2, 0, 2, 1) == q_int(a2, 0, 2)
    with pytest.raises(ValueError):
        q_binom(a2, 0, 2, 3)


@pytest.mark.parametrize("preset,i", [("A2", 0), ("B2", 1), ("G2", 0)])
def test_binomials_match_factorial_quotients(preset, i):
    cm = CartanMatrix.preset(preset)
    for n in range(9):
        for k in range(n + 1):
            want = q_fact(cm, i, n) / (q_fact(cm, i, k) * q_fact(cm, i, n - k))
            got = q_binom(cm, i, n, k)
            assert got == want and got.is_laurent()


def test_weight_form(a2, b2):
    assert weight_form(a2, (1, 0), (1, 0)) == 2
    assert weight_form(a2, (1, 0), (0, 1)) == -1
    assert weight_form(b2, (0, 1), (1, 0)) == -2
    for cm in (a2, b2):
        for a in ((1, 0), (0, 1), (2, -1)):
            for b in ((1, 0), (0, 1), (1, 3)):
                assert weight_form(cm, a, b) == weight_form(cm, b, a)


def test_bar_examples():
    assert bar(RatScalar.q(2)) == RatScalar.q(-2)
    assert bar(S("1/(1-q^2)")) == S("-q^2/(1-q^2)")
    assert bar(ONE) == ONE


def test_canonical_form_is_structural():
    x = S("(1-q^4)/(1-q^2)")
    assert x == S("1+q^2")
    assert x.den == LaurentPoly.from_dict({0: 1})
    y = S("1/(q^2-1)")
    assert y == S("-1/(1-q^2)")
    assert y.den.to_dict()[0] > 0


def test_inverse_and_zero_division():
    x = S("(1+q)/(1-q^3)")
    assert x * x.inverse() == ONE
    with pytest.raises(ZeroDivisionError):
        ZERO.inverse()


_POOL = ["1", "q", "-q^-1", "1/(1-q^2)", "(1+q^-2)/(1-q^2)^2", "q^3/(1-q^4)", "2-q", "(q+q^-1)/(1-q^6)"]


def test_randomized_field_laws():
    rng = random.Random(7)
    for _ in range(200):
        a, b, c = (S(rng.choice(_POOL)) * RatScalar.q(rng.randint(-2, 2)) for _ in range(3))
        assert (a + b) * c == a * c + b * c
        assert a * (b * c) == (a * b) * c
        assert (a + b).bar() == a.bar() + b.bar()
        assert (a * b).bar() == a.bar() * b.bar()
        assert a.bar().bar() == a
        assert a - a == ZERO


def test_series_examples():
    assert series_expand(S("1/(1-q^2)"), 0, 4) == {0: 1, 2: 1, 4: 1}
    assert series_expand(S("q^-2/(1-q^2)"), -2, 0) == {-2: 1, 0: 1}
    assert series_expand(S("1+q"), 0, 1) == {0: 1, 1: 1}


def test_series_of_non_unit_denominator_is_rational():
    out = series_expand(S("1/(2-q)"), 0, 2)
    assert out == {0: Fraction(1, 2), 1: Fraction(1, 4), 2: Fraction(1, 8)}


def test_boson_ring_membership(a2, b2):
    assert S("q^-3/(1-q^2)^2").in_boson_ring(a2)
    assert not S("1/(1-q^4)").in_boson_ring(a2)
    assert S("1/(1-q^4)").in_boson_ring(b2)
    assert S("1/(1+q)").in_boson_ring(a2)
    assert not S("1/(1-q^3)").in_boson_ring(a2)
    assert not S("1/2").in_boson_ring(a2)


def test_kappa_fraction_round_trip(b2):
    kf = KappaFraction(LaurentPoly.from_dict({-2: 1, 0: 2}), (3, 1))
    assert kf.to_scalar(b2) == S("(2+q^-2)/((1-q^2)^3*(1-q^4))")
    assert kappa_denominator((1, 2), (3, 1)) == LaurentPoly.from_dict({0: 1, 2: -1}) ** 3 * LaurentPoly.from_dict({0: 1, 4: -1})


def test_cyclotomic_factors():
    prod = LaurentPoly.from_dict({0: 1})
    for d in (1, 2, 3, 6):
        prod = prod * cyclotomic(d)
    assert prod == LaurentPoly.from_dict({0: -1, 6: 1}) or prod == LaurentPoly.from_dict({0: 1, 6: -1})


def test_size_guard_error_names_guard():
    err = SizeGuardError("max_words", 10, 5)
    assert err.guard == "max_words" and "max_words" in str(err)
