"""Seeded property suites shared by ``qboson verify`` and the test-suite.

Each check returns a :class:`CheckResult` counting instances and collecting
failing ones.  Suites group checks and time them.  Random instances always
come from ``random.Random(seed)`` so runs are reproducible.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from . import _kernels
from .diagrams import Boundary, degree, enumerate_matchings, form_graph, form_graph_words
from .foundations import CartanMatrix, LaurentPoly, RatScalar
from .freealg import (AlgElement, ZLetter, bar_map, dbar_map, serre_element, weight_of)
from .gram import (kernel_rank, gram_matrix, positivity_probe, quotient_dim, sz_bar_check,
                   sz_product_check, words_with_content)
from .klr import KLRAlgebra, boson_grdim_identity, bridge_check, check_relations
from .lusztig import form_lusztig_words
from .straighten import encode, form_alg, form_alg_words, straighten_with_strategy

__all__ = [
    "CheckResult", "SuiteResult", "SUITES", "run_suite", "DEFAULT_SEED", "random_word",
    "random_element", "random_scalar", "equal_weight_pairs", "all_words", "check_worked_example",
    "check_dual_oracle", "check_triple_oracle", "check_form_axioms", "serre_probes", "check_serre",
    "check_confluence", "check_degree_alternatives", "check_associativity", "random_klr_triple",
    "worked_example_value", "random_matched_boundary",
]

DEFAULT_SEED = 20240501


@dataclass
class CheckResult:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def record(self, ok: bool, instance=None) -> None:
        self.checked += 1
        if not ok:
            self.failures.append(instance)


@dataclass
class SuiteResult:
    name: str
    checks: list
    seconds: float

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)


# ---------------------------------------------------------------------------
# instance generators
# ---------------------------------------------------------------------------

def all_words(rank: int, levels: Sequence[int], max_len: int, min_len: int = 0) -> list[tuple]:
    letters = [ZLetter(lv, v) for lv in levels for v in range(rank)]
    return [w for n in range(min_len, max_len + 1) for w in itertools.product(letters, repeat=n)]


def equal_weight_pairs(rank: int, levels: Sequence[int], max_total: int,
                       max_each: int | None = None) -> Iterable[tuple]:
    """All (u, v) of equal weight with len(u) + len(v) <= max_total and each <= max_each."""
    each = max_total if max_each is None else max_each
    by_weight: dict = {}
    for w in all_words(rank, levels, each):
        by_weight.setdefault((len(w), weight_of(w, rank)), []).append(w)
    for (lu, wt), us in by_weight.items():
        for lv in range(min(each, max_total - lu) + 1):
            for v in by_weight.get((lv, wt), ()):
                for u in us:
                    yield u, v


def random_word(rng: random.Random, rank: int, levels: Sequence[int], length: int) -> tuple:
    return tuple(ZLetter(rng.choice(levels), rng.randrange(rank)) for _ in range(length))


def random_matched_boundary(rng: random.Random, rank: int, levels: Sequence[int],
                            chords: int) -> tuple[tuple, tuple]:
    """A random boundary that admits at least one matching (built from one)."""
    lo, hi = min(levels), max(levels)
    n_bottom = rng.randint(0, 2 * chords)
    slots = list(range(2 * chords))
    rng.shuffle(slots)
    letters: dict = {}
    for k in range(chords):
        a, b = sorted(slots[2 * k:2 * k + 2])
        v = rng.randrange(rank)
        a_bot, b_bot = a < n_bottom, b < n_bottom
        if a_bot != b_bot:
            m = rng.randint(lo, hi)
            letters[a] = letters[b] = (m, v)
        elif a_bot:
            m = rng.randint(lo, hi - 1)
            letters[a], letters[b] = (m, v), (m + 1, v)
        else:
            # top positions count from the left of the top word
            m = rng.randint(lo, hi - 1)
            letters[a], letters[b] = (m + 1, v), (m, v)
    word = [ZLetter(*letters[k]) for k in range(2 * chords)]
    return tuple(word[:n_bottom]), tuple(word[n_bottom:])


_COEFFS = ["1", "-1", "q", "q^-1", "1/(1-q^2)", "2*q^2", "1+q^-2", "q^3/(1-q^4)"]


def random_scalar(rng: random.Random) -> RatScalar:
    from .syntax import parse_scalar
    return parse_scalar(rng.choice(_COEFFS))


def random_element(rng: random.Random, cm: CartanMatrix, levels: Sequence[int], max_len: int,
                   terms: int = 2) -> AlgElement:
    out = {}
    for _ in range(terms):
        w = random_word(rng, cm.rank, levels, rng.randint(0, max_len))
        out[w] = random_scalar(rng)
    return AlgElement(cm, out)


def _homogeneous(rng: random.Random, cm: CartanMatrix, levels: Sequence[int], length: int,
                 terms: int = 2) -> AlgElement:
    """A combination of permutations of one random word (so one weight and content)."""
    w = list(random_word(rng, cm.rank, levels, length))
    out = {}
    for _ in range(terms):
        rng.shuffle(w)
        out[tuple(w)] = random_scalar(rng)
    return AlgElement(cm, out)


# ---------------------------------------------------------------------------
# forms
# ---------------------------------------------------------------------------

WORKED_BOTTOM = "[0:i,8:j,1:i,2:i]"
WORKED_TOP = "[2:i,1:i,0:i,8:j]"


def worked_example_value(cm: CartanMatrix) -> RatScalar:
    """(2 + q_i^-2) / ((1 - q_i^2)^3 (1 - q_j^2)) with i, j the first two vertices."""
    from .syntax import parse_scalar
    di, dj = cm.d(0), cm.d(1)
    return parse_scalar(f"(2+q^-{2 * di})/((1-q^{2 * di})^3*(1-q^{2 * dj}))")


def check_worked_example(cms: Sequence[CartanMatrix]) -> CheckResult:
    from .syntax import parse_element
    res = CheckResult("worked example")
    for cm in cms:
        x, y = parse_element(WORKED_BOTTOM, cm), parse_element(WORKED_TOP, cm)
        want = worked_example_value(cm)
        res.record(form_graph(x, y) == want and form_alg(x, y) == want, cm.labels)
    return res


def check_dual_oracle(cm: CartanMatrix, pairs: Iterable[tuple]) -> CheckResult:
    res = CheckResult("graph = alg")
    for u, v in pairs:
        g = form_graph_words(u, v, cm)
        a = form_alg_words(u, v, cm)
        res.record(g.num == a.num and (g.num.is_zero() or g.kappa == a.kappa), (u, v))
    return res


def check_triple_oracle(cm: CartanMatrix, pairs: Iterable[tuple]) -> CheckResult:
    res = CheckResult("lusztig = alg = graph")
    for u, v in pairs:
        g = form_graph_words(u, v, cm).num
        a = form_alg_words(u, v, cm).num
        lz = form_lusztig_words(u, v, cm).num
        res.record(g == a == lz, (u, v))
    return res


def check_form_axioms(cm: CartanMatrix, rng: random.Random, n: int,
                      form: Callable = form_alg) -> list[CheckResult]:
    levels = (-1, 0, 1, 2)
    semi = CheckResult("q-semilinearity")
    sym = CheckResult("symmetry")
    orth = CheckResult("weight orthogonality")
    dbar = CheckResult("Dbar invariance")
    adj_l = CheckResult("left adjunction")
    adj_r = CheckResult("right adjunction")
    fact = CheckResult("factorization")
    for _ in range(n):
        length = rng.randint(0, 3)
        x = _homogeneous(rng, cm, levels, length)
        y = _homogeneous(rng, cm, levels, length + rng.choice((0, 2)))
        c = random_scalar(rng)
        semi.record(form(x.scale(c), y) == c.bar() * form(x, y)
                    and form(x, y.scale(c)) == c * form(x, y), (x, y, c))
        sym.record(form(bar_map(x), y) == form(bar_map(y), x), (x, y))
        dbar.record(form(x, y) == form(dbar_map(x), dbar_map(y)), (x, y))
        i, lv = rng.randrange(cm.rank), rng.choice(levels)
        e_here = AlgElement.word(cm, (ZLetter(lv, i),))
        e_up = AlgElement.word(cm, (ZLetter(lv + 1, i),))
        e_down = AlgElement.word(cm, (ZLetter(lv - 1, i),))
        y1 = _homogeneous(rng, cm, levels, length + 1)
        adj_l.record(form(e_here * x, y1) == form(x, e_up * y1), (lv, i, x, y1))
        adj_r.record(form(x * e_here, y1) == form(x, y1 * e_down), (lv, i, x, y1))
        m = rng.choice((0, 1))
        hi, lo = (m + 1, m + 2), (m - 1, m)
        xx = _homogeneous(rng, cm, hi, rng.randint(0, 2))
        ww = _homogeneous(rng, cm, hi, rng.randint(0, 2))
        yy = _homogeneous(rng, cm, lo, rng.randint(0, 2))
        zz = _homogeneous(rng, cm, lo, rng.randint(0, 2))
        ax = weight_of(next(iter(xx.terms)), cm.rank)
        az = weight_of(next(iter(zz.terms)), cm.rank)
        pair = sum(ax[a] * az[b] * cm.sym(a, b) for a in range(cm.rank) for b in range(cm.rank))
        fact.record(form(xx * yy, zz * ww) == RatScalar.q(-pair) * form(xx, ww) * form(yy, zz),
                    (xx, yy, zz, ww))
    while orth.checked < n:
        u = random_word(rng, cm.rank, levels, rng.randint(0, 4))
        v = random_word(rng, cm.rank, levels, rng.randint(0, 4))
        if weight_of(u, cm.rank) != weight_of(v, cm.rank):
            orth.record(form(AlgElement.word(cm, u), AlgElement.word(cm, v)).is_zero(), (u, v))
    return [semi, sym, orth, dbar, adj_l, adj_r, fact]


def serre_probes(cm: CartanMatrix, levels: Sequence[int] = (0, 1), max_ctx: int = 2,
                 max_z: int = 6, rng: random.Random | None = None, sample: int | None = None):
    """Yield (Z, W, s, W') with s a Serre element and Z of matching weight."""
    ctx = all_words(cm.rank, levels, max_ctx)
    zs_by_weight: dict = {}
    for z in all_words(cm.rank, levels, max_z):
        zs_by_weight.setdefault(weight_of(z, cm.rank), []).append(z)
    cases = []
    for i, j in itertools.permutations(range(cm.rank), 2):
        for n in levels:
            s = serre_element(cm, i, j, n)
            sw = weight_of(next(iter(s.terms)), cm.rank)
            slen = len(next(iter(s.terms)))
            for w1 in ctx:
                for w2 in ctx:
                    wt = tuple(a + b + c for a, b, c in zip(weight_of(w1, cm.rank), sw,
                                                            weight_of(w2, cm.rank)))
                    total = len(w1) + slen + len(w2)
                    for z in zs_by_weight.get(wt, ()):
                        if (len(z) + total) % 2 == 0:
                            cases.append((z, w1, s, w2))
    if rng is not None and sample is not None and sample < len(cases):
        cases = rng.sample(cases, sample)
    return cases


def check_serre(cm: CartanMatrix, cases) -> CheckResult:
    """(Z, W s W') = 0 for every case.

    All words of W s W' share one letter content, hence one kappa denominator,
    and the Serre coefficients are Laurent polynomials, so the sum is formed
    on numerators.  Word-pair values are shared between cases.
    """
    res = CheckResult("Serre kernel")
    memo: dict = {}
    expanded: dict = {}
    for z, w1, s, w2 in cases:
        key = (w1, id(s), w2)
        if key not in expanded:
            assert all(c.is_laurent() for c in s.terms.values())
            expanded[key] = [(w1 + v + w2, c.num) for v, c in s.terms.items()]
        val = LaurentPoly()
        for v, c in expanded[key]:
            f = memo.get((z, v))
            if f is None:
                f = memo[(z, v)] = form_graph_words(z, v, cm).num
            if not f.is_zero():
                val = val + c * f
        res.record(val.is_zero(), (z, w1, w2))
    return res


def check_confluence(cm: CartanMatrix, words: Iterable[tuple], rng: random.Random,
                     strategies: int = 3) -> CheckResult:
    """Compare the kernel normal form with leftmost, rightmost and random strategies."""
    res = CheckResult("confluence")
    sym = cm.sym_table()
    chooser_list = [lambda ds: ds[0], lambda ds: ds[-1]]
    caches = [{} for _ in chooser_list]
    for w in words:
        codes = encode(w)
        ref = _kernels.active.straighten_word(codes, sym)
        ok = all(straighten_with_strategy(codes, cm, ch, cache) == ref
                 for ch, cache in zip(chooser_list, caches))
        for _ in range(strategies):
            ok = ok and straighten_with_strategy(codes, cm, lambda ds: rng.choice(ds), {}) == ref
        res.record(ok, w)
    return res


def check_degree_alternatives(cm: CartanMatrix, boundaries: Iterable[tuple]) -> CheckResult:
    """Canonical vs alternative legs on every matching (python objects and kernel)."""
    res = CheckResult("alternative legs")
    sym = cm.sym_table()
    for bottom, top in boundaries:
        b = Boundary(bottom, top, cm)
        ms = enumerate_matchings(b)
        ok = all(degree(m) == degree(m, alternative=True) for m in ms)
        hist = {}
        for m in ms:
            hist[degree(m)] = hist.get(degree(m), 0) + 1
        for be in _kernels.available():
            mod = _kernels.python_backend if be == "python" else _kernels.compiled_backend
            ok = ok and mod.matching_degrees(encode(bottom), encode(top), sym) == hist
            ok = ok and mod.matching_degrees(encode(bottom), encode(top), sym, False, True) == hist
        res.record(ok, (bottom, top))
    return res


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------

def _cartans() -> list[tuple[str, CartanMatrix]]:
    return [(name, CartanMatrix.preset(name)) for name in ("A2", "B2")]


def _tag(checks: list[CheckResult], tag: str) -> list[CheckResult]:
    for c in checks:
        c.name = f"{c.name} [{tag}]"
    return checks


def suite_forms(seed: int = DEFAULT_SEED, scale: int = 1) -> list[CheckResult]:
    rng = random.Random(seed)
    cms = _cartans()
    out = [check_worked_example([cm for _, cm in cms])]
    for name, cm in cms:
        pairs = list(equal_weight_pairs(cm.rank, (-1, 0, 1, 2), 6))
        part = [check_dual_oracle(cm, rng.sample(pairs, min(len(pairs), 400 * scale))),
                check_triple_oracle(cm, list(equal_weight_pairs(cm.rank, (0,), 8, 4)))]
        part += check_form_axioms(cm, rng, 40 * scale)
        part.append(check_serre(cm, serre_probes(cm, max_ctx=1, max_z=5, rng=rng, sample=100 * scale)))
        out += _tag(part, name)
    cm = cms[0][1]
    words = [random_word(rng, cm.rank, (0, 1, 2), rng.randint(0, 7)) for _ in range(100 * scale)]
    out.append(check_confluence(cm, words, rng))
    bnds = []
    for _ in range(60 * scale):
        n = rng.choice((2, 4, 6))
        k = rng.randint(0, n)
        bnds.append((random_word(rng, cm.rank, (0, 1, 2), k), random_word(rng, cm.rank, (0, 1, 2), n - k)))
    out.append(check_degree_alternatives(cm, bnds))
    return out


def suite_klr(seed: int = DEFAULT_SEED, scale: int = 1) -> list[CheckResult]:
    rng = random.Random(seed)
    out = []
    for name, cm in _cartans():
        part = []
        alg = KLRAlgebra(cm)
        rep = check_relations(alg, 4)
        res = CheckResult("KLR relations 1-8")
        res.checked = sum(rep.checked.values())
        res.failures = list(rep.failures)
        part.append(res)
        part.append(check_associativity(alg, rng, 50 * scale))
        n, fails = bridge_check(cm, 4)
        res = CheckResult("decategorification bridge")
        res.checked, res.failures = n, fails
        part.append(res)
        res = CheckResult("boson grdim identity")
        for i, j in itertools.product(range(cm.rank), repeat=2):
            rep = boson_grdim_identity(cm, i, j, max_source=3, max_context=2)
            res.checked += rep.checked
            res.failures += rep.failures
        part.append(res)
        out += _tag(part, name)
    return out


def random_klr_triple(alg: KLRAlgebra, rng: random.Random, size: int, max_dot: int = 2):
    """Three composable basis elements c, b, a (a * b * c is defined)."""
    weight = [rng.randrange(alg.cartan.rank) for _ in range(size)]

    def pick(idem):
        perm = list(range(size))
        rng.shuffle(perm)
        exps = [rng.randint(0, max_dot) for _ in range(size)]
        return alg.basis(idem, perm, exps)

    c = pick(tuple(rng.sample(weight, size)))
    b = pick(next(iter(c.terms)).target)
    a = pick(next(iter(b.terms)).target)
    return a, b, c


def check_associativity(alg: KLRAlgebra, rng: random.Random, n: int, max_size: int = 3) -> CheckResult:
    res = CheckResult("KLR associativity")
    for _ in range(n):
        a, b, c = random_klr_triple(alg, rng, rng.randint(1, max_size))
        res.record(alg.multiply(alg.multiply(a, b), c) == alg.multiply(a, alg.multiply(b, c)),
                   (a, b, c))
    return res


def suite_sz(seed: int = DEFAULT_SEED, scale: int = 1) -> list[CheckResult]:
    cm = CartanMatrix.preset("A1")
    out = []
    n, fails = sz_product_check(cm, 3)
    out.append(CheckResult("S_Z product formula", n, fails))
    n, fails = sz_bar_check(cm, 3)
    out.append(CheckResult("S_Z bar formula", n, fails))
    rep = positivity_probe(cm, (0, 1), 2)
    out.append(CheckResult("positivity window (heuristic)", rep.checked, rep.window_failures))
    res = CheckResult("quotient dimensions")
    for a, b in itertools.product(range(4), repeat=2):
        content = [(0, 0)] * a + [(1, 0)] * b
        res.record(quotient_dim(cm, content) == min(a, b) + 1, (a, b))
    out.append(res)
    a2 = CartanMatrix.preset("A2")
    res = CheckResult("Serre spans the A2 kernel")
    for i, j in ((0, 1), (1, 0)):
        words = words_with_content([(0, i), (0, i), (0, j)])
        rank, kernel = kernel_rank(gram_matrix(words, "graphical", a2))
        s = serre_element(a2, i, j, 0)
        ok = rank == 2 and len(kernel) == 1
        if ok:
            k = kernel[0]
            w0 = next(iter(s.terms))
            ratio = k.coefficient(w0) / s.coefficient(w0)
            ok = all(k.coefficient(w) == ratio * c for w, c in s.terms.items())
        res.record(ok, (i, j))
    out.append(res)
    return out


SUITES = {"forms": suite_forms, "klr": suite_klr, "sz": suite_sz}


def run_suite(name: str, seed: int = DEFAULT_SEED, scale: int = 1) -> SuiteResult:
    t0 = time.perf_counter()
    checks = SUITES[name](seed, scale)
    return SuiteResult(name, checks, time.perf_counter() - t0)
