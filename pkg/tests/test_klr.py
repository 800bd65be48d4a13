import itertools
import random
from fractions import Fraction

import pytest

from qboson.diagrams import grdim_hom_a2
from qboson.foundations import ZERO, CartanMatrix, RatScalar, SizeGuardError
from qboson.klr import (KLRAlgebra, KLRBasisElement, KLRParams, boson_grdim_identity,
                        bridge_check, check_relations, grdim_block, klr_degree, klr_multiply,
                        parse_klr, parse_sequence, q_polynomial, sequences)
from qboson.syntax import ParseError, parse_scalar as S
from qboson.verify import check_associativity, random_klr_triple


@pytest.fixture
def alg(a2):
    return KLRAlgebra(a2)


def test_q_polynomials(a2, b2):
    assert q_polynomial(a2, 0, 1) == {(1, 0): 1, (0, 1): 1}
    assert q_polynomial(a2, 0, 0) == {}
    a1a1 = CartanMatrix.preset("A1XA1")
    assert q_polynomial(a1a1, 0, 1, KLRParams({(0, 1): 3, (1, 0): 3})) == {(0, 0): 3}
    # B2: Q_ij = t_ij u^2 + t_ji v, homogeneous of degree 4 = -d_i C_ij * 2
    assert q_polynomial(b2, 0, 1) == {(2, 0): 1, (0, 1): 1}
    assert q_polynomial(b2, 1, 0) == {(1, 0): 1, (0, 2): 1}


@pytest.fixture
def affine():
    """C_ij = C_ji = -2 leaves room for one interior term u v in Q_ij."""
    return CartanMatrix.checked(["i", "j"], [[2, -2], [-2, 2]], [1, 1])


S_PARAMS = {(0, 1, 1, 1): 5, (1, 0, 1, 1): 5}


def test_q_polynomial_symmetry_and_homogeneity(affine, b2):
    params = KLRParams({(0, 1): 2, (1, 0): Fraction(1, 3)}, S_PARAMS)
    params.validate(affine)
    assert q_polynomial(affine, 0, 1, params) == {(2, 0): 2, (1, 1): 5, (0, 2): Fraction(1, 3)}
    for cm, p in ((affine, params), (b2, KLRParams({(0, 1): 7}))):
        for i, j in itertools.permutations(range(2)):
            qij = q_polynomial(cm, i, j, p)
            qji = q_polynomial(cm, j, i, p)
            assert qij == {(b, a): c for (a, b), c in qji.items()}
            degs = {2 * cm.d(i) * a + 2 * cm.d(j) * b for a, b in qij}
            assert degs == {-2 * cm.sym(i, j)}


@pytest.mark.parametrize("t,s", [
    ({(0, 1): 0}, {}),
    ({(0, 0): 1}, {}),
    ({}, {(0, 1, 0, 0): 1}),
    ({}, {(0, 1, 1, 1): 1}),
    ({}, {(0, 1, 2, 0): 1, (1, 0, 0, 2): 1}),
])
def test_invalid_params(affine, t, s):
    with pytest.raises(ValueError):
        KLRParams(t, s).validate(affine)


def test_t_symmetry_needed_when_orthogonal():
    a1a1 = CartanMatrix.preset("A1XA1")
    with pytest.raises(ValueError):
        KLRParams({(0, 1): 2, (1, 0): 3}).validate(a1a1)


def test_params_from_config(affine, b2):
    p = KLRParams.from_config({"t": {"i,j": 2, "1,0": "1/2"}, "s": {"i,j,1,1": 4, "j,i,1,1": 4}}, affine)
    assert p.t_of(0, 1) == 2 and p.t_of(1, 0) == Fraction(1, 2)
    assert p.s_of(0, 1, 1, 1) == 4
    assert KLRParams.from_config(None, b2) == KLRParams()
    with pytest.raises(KeyError):
        KLRParams.from_config({"t": {"i,k": 2}}, b2)


def test_degrees(a2, b2):
    for cm in (a2, b2):
        assert klr_degree(KLRBasisElement((0, 1), (0, 1), (0, 0)), cm) == 0
        for v in (0, 1):
            d = cm.d(v)
            assert klr_degree(KLRBasisElement((v, v), (0, 1), (1, 0)), cm) == 2 * d
            assert klr_degree(KLRBasisElement((v, v), (1, 0), (0, 0)), cm) == -2 * d


def test_basis_element_validation():
    with pytest.raises(ValueError):
        KLRBasisElement((0, 1), (0, 0), (0, 0))
    with pytest.raises(ValueError):
        KLRBasisElement((0, 1), (0, 1), (0,))
    with pytest.raises(ValueError):
        KLRBasisElement((0,), (0,), (-1,))


def test_block_dimensions(a2, b2):
    assert grdim_block((0, 0), (0, 0), a2).value == S("(1+q^-2)/(1-q^2)^2")
    assert grdim_block((1, 1), (1, 1), b2).value == S("(1+q^-4)/(1-q^4)^2")
    for cm in (a2, b2):
        want = RatScalar.q(-cm.sym(0, 1)) * S(f"1/((1-q^{2 * cm.d(0)})*(1-q^{2 * cm.d(1)}))")
        assert grdim_block((0, 1), (1, 0), cm).value == want
    assert grdim_block((0, 0), (0, 1), a2).value == ZERO


def test_relation_examples(alg):
    # tau_1^2 1_(ij) = Q_ij(x_1, x_2)
    t = alg.tau(1, (0, 1))
    assert str(alg.multiply(alg.tau(1, (1, 0)), t)) == "x2*1_(i,j) + x1*1_(i,j)"
    # (tau_1 x_2 - x_1 tau_1) 1_(ii) = 1_(ii)
    lhs = alg.multiply(alg.tau(1, (0, 0)), alg.dot(2, (0, 0))) - \
        alg.multiply(alg.dot(1, (0, 0)), alg.tau(1, (0, 0)))
    assert lhs == alg.idempotent((0, 0))
    # orthogonal idempotents
    one = alg.idempotent((0, 1))
    assert alg.multiply(one, one) == one
    assert alg.multiply(one, alg.idempotent((1, 0))) == 0
    # nilHecke square
    assert alg.multiply(alg.tau(1, (0, 0)), alg.tau(1, (0, 0))) == 0


def test_parse_and_print(alg):
    assert parse_klr("t1*x2*1_(i,i) - x1*t1*1_(i,i)", alg) == alg.idempotent((0, 0))
    x = parse_klr("2*x1^2*t1*1_(i,j)", alg)
    assert str(x) == "2*x1^2*t1*1_(i,j)"
    assert parse_klr(str(x), alg) == x
    y = parse_klr("2*x1^2*t1*1_(i,j) - 1/2*x2*1_(j,i) + t1*1_(j,i)", alg)
    assert len(y.terms) == 3 and parse_klr(str(y), alg) == y
    assert parse_sequence("i,j,i", alg.cartan) == (0, 1, 0)
    assert parse_sequence("", alg.cartan) == ()


@pytest.mark.parametrize("text", ["t1*x2", "x1*1_(i,k)", "1_(i) +", "y1*1_(i)"])
def test_parse_errors(alg, text):
    with pytest.raises(ParseError) as info:
        parse_klr(text, alg)
    assert info.value.pos >= 0


def test_size_guard(a2):
    alg = KLRAlgebra(a2, max_size=2)
    with pytest.raises(SizeGuardError) as info:
        alg.idempotent((0, 1, 0))
    assert info.value.guard == "klr_size"
    with pytest.raises(ValueError):
        KLRAlgebra(a2, max_size=0)


def test_weight_mismatch(alg):
    with pytest.raises(ValueError):
        alg.multiply(alg.idempotent((0, 0)), alg.idempotent((0, 1)))


def test_generator_ranges(alg):
    with pytest.raises(ValueError):
        alg.tau(2, (0, 1))
    with pytest.raises(ValueError):
        alg.dot(0, (0, 1))
    with pytest.raises(ValueError):
        alg.idempotent((0, 4))


@pytest.mark.parametrize("preset", ["A2", "B2", "A1XA1", "G2"])
def test_all_relations(preset):
    rep = check_relations(KLRAlgebra(CartanMatrix.preset(preset)), 4)
    assert rep.ok, rep.failures[:5]
    assert set(rep.checked) == {str(k) for k in range(1, 9)}


def test_relations_with_nondefault_params(affine, b2):
    params = KLRParams({(0, 1): 2, (1, 0): Fraction(-1, 3)}, S_PARAMS)
    for cm, p in ((affine, params), (b2, KLRParams({(0, 1): 3, (1, 0): Fraction(1, 2)}))):
        rep = check_relations(KLRAlgebra(cm, p), 4)
        assert rep.ok, rep.failures[:5]
        assert check_associativity(KLRAlgebra(cm, p), random.Random(1), 30).ok


def test_associativity(rank2):
    res = check_associativity(KLRAlgebra(rank2), random.Random(99), 60)
    assert res.ok and res.checked == 60


def test_degree_additivity(b2):
    alg = KLRAlgebra(b2)
    rng = random.Random(5)
    for _ in range(80):
        a, b, _c = random_klr_triple(alg, rng, rng.randint(1, 3))
        prod = klr_multiply(a, b)
        (da,), (db,) = a.degrees(), b.degrees()
        assert prod.is_zero() or prod.degrees() == {da + db}


def test_identity_decomposition(a2):
    alg = KLRAlgebra(a2)
    rng = random.Random(6)
    for weight in ([0], [0, 1], [0, 0, 1], [0, 1, 1]):
        one = alg.identity(weight)
        for _ in range(10):
            idem = tuple(rng.sample(weight, len(weight)))
            perm = list(range(len(weight)))
            rng.shuffle(perm)
            x = alg.basis(idem, perm, [rng.randint(0, 2) for _ in weight])
            assert alg.multiply(one, x) == x == alg.multiply(x, one)


def test_closure_on_basis_pairs(a2):
    alg = KLRAlgebra(a2)
    for seq in sequences(2, 2):
        for perm in itertools.permutations(range(2)):
            b = alg.basis(seq, perm, (1, 0))
            top = next(iter(b.terms)).target
            for perm2 in itertools.permutations(range(2)):
                a = alg.basis(top, perm2, (0, 1))
                prod = alg.multiply(a, b)
                assert all(isinstance(k, KLRBasisElement) for k in prod.terms)


def test_bridge_small(rank2):
    n, fails = bridge_check(rank2, 3)
    assert fails == [] and n > 0


def test_bridge_by_hand(a2):
    src, dst = (0, 1), (1, 0)
    bottom = [(0, v) for v in reversed(src)]
    top = [(0, v) for v in reversed(dst)]
    assert grdim_block(src, dst, a2).value == grdim_hom_a2(bottom, top, a2).value


def test_boson_identity_examples(a2):
    # empty source, empty contexts, i = j
    assert grdim_hom_a2((), ((1, 0), (0, 0)), a2).value == S("1/(1-q^2)")
    assert grdim_hom_a2((), ((0, 0), (1, 0)), a2).value == ZERO
    rep = boson_grdim_identity(a2, 0, 0, max_source=0, max_context=0)
    assert rep.ok and rep.checked == 1 and rep.nontrivial == 1
    rep = boson_grdim_identity(a2, 0, 1, max_source=2, max_context=1)
    assert rep.ok and rep.checked > rep.nontrivial > 0


def test_boson_identity_small_grid(rank2):
    for i, j in itertools.product(range(2), repeat=2):
        rep = boson_grdim_identity(rank2, i, j, max_source=2, max_context=2)
        assert rep.ok, rep.failures[:3]


def test_multiplication_is_parameter_sensitive(b2):
    """t_ij enters tau^2, so a different parameter changes the product."""
    p = KLRParams({(0, 1): 2})
    a, b = KLRAlgebra(b2), KLRAlgebra(b2, p)
    sq = lambda alg: alg.multiply(alg.tau(1, (1, 0)), alg.tau(1, (0, 1)))
    assert str(sq(a)) != str(sq(b))
    assert str(sq(b)) == "x2*1_(i,j) + 2*x1^2*1_(i,j)"
