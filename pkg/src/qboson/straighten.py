"""Straightening into reduced words, the projection P and the algebraic form.

The rewrite rule acts on an adjacent pair ``E_{i,n+k} E_{j,n}`` with ``k >= 1``::

    E_{i,n+k} E_{j,n} -> q^((-1)^k d_i C_ij) E_{j,n} E_{i,n+k}
                         + [i = j and k = 1] / (1 - q_i^2)

Each step lowers the inversion count or shortens the word, so rewriting
terminates; the normal form is supported on reduced words (weakly increasing
levels).  P is the empty-word coefficient of the normal form.  A nonempty
reduced word has nonzero weight at its lowest level, so P kills it, and P is
determined by the empty-word coefficient alone.

>>> from qboson.foundations import CartanMatrix
>>> from qboson.syntax import parse_element
>>> cm = CartanMatrix.preset("A1")
>>> print(straighten(parse_element("[1:i,0:i]", cm)))
q^-2*[0:i,1:i] + (1/(1-q^2))*[]
>>> print(form_alg(parse_element("[1:i,0:i]", cm), parse_element("[0:i,1:i]", cm)))
q^2/(1-q^2)^2
"""

from __future__ import annotations

import random
from typing import Callable, Sequence

from . import _kernels
from .foundations import ZERO, CartanMatrix, KappaFraction, LaurentPoly, RatScalar, kappa_denominator
from .freealg import AlgElement, ZLetter, d_map

__all__ = [
    "encode", "decode", "straighten", "project_p", "form_alg", "form_alg_words",
    "confluence_check", "straighten_with_strategy", "word_kappa",
]


def encode(w: Sequence) -> tuple[int, ...]:
    return tuple((lv << 6) + v for lv, v in w)


def decode(codes: Sequence[int]) -> tuple:
    return tuple(ZLetter(c >> 6, c & 63) for c in codes)


def word_kappa(w: Sequence, rank: int) -> tuple[int, ...] | None:
    """Half the letter count per vertex; None if some count is odd."""
    counts = [0] * rank
    for _, v in w:
        counts[v] += 1
    if any(c & 1 for c in counts):
        return None
    return tuple(c // 2 for c in counts)


def _deleted_scalar(cm: CartanMatrix, num: dict, before: Sequence[int], after: Sequence[int]) -> RatScalar:
    n = cm.rank
    counts = [0] * n
    for c in before:
        counts[c & 63] += 1
    for c in after:
        counts[c & 63] -= 1
    kappa = tuple(c // 2 for c in counts)
    return RatScalar(LaurentPoly.from_dict(num), kappa_denominator(cm.symmetrizers, kappa))


def straighten(x: AlgElement) -> AlgElement:
    """Reduced normal form under the leftmost-descent strategy."""
    cm = x.cartan
    sym = cm.sym_table()
    out: dict = {}
    for w, c in x.terms.items():
        codes = encode(w)
        for red, num in _kernels.active.straighten_word(codes, sym).items():
            s = c * _deleted_scalar(cm, num, codes, red)
            key = decode(red)
            out[key] = out[key] + s if key in out else s
    return AlgElement(cm, out)


def _p_word(cm: CartanMatrix, codes: tuple[int, ...], sym) -> RatScalar:
    num = _kernels.active.p_numerator(codes, sym)
    if not num:
        return ZERO
    kappa = word_kappa(decode(codes), cm.rank)
    return RatScalar(LaurentPoly.from_dict(num), kappa_denominator(cm.symmetrizers, kappa))


def project_p(x: AlgElement) -> RatScalar:
    cm = x.cartan
    sym = cm.sym_table()
    total = ZERO
    for w, c in x.terms.items():
        total = total + c * _p_word(cm, encode(w), sym)
    return total


def form_alg_words(u: Sequence, v: Sequence, cm: CartanMatrix) -> KappaFraction:
    """(E_u, E_v) for two words, as a numerator over its kappa denominator."""
    kappa = word_kappa(tuple(u) + tuple(v), cm.rank)
    if kappa is None:
        return KappaFraction(LaurentPoly(), (0,) * cm.rank)
    codes = tuple(((lv + 1) << 6) + vx for lv, vx in reversed(u)) + encode(v)
    num = _kernels.active.p_numerator(codes, cm.sym_table())
    return KappaFraction.from_dict(num, kappa)


def form_alg(x: AlgElement, y: AlgElement) -> RatScalar:
    """(X, Y) = P(D(X) Y): bar-semilinear in X, linear in Y."""
    x._check(y)
    cm = x.cartan
    sym = cm.sym_table()
    dx = d_map(x)
    total = ZERO
    for u, a in dx.terms.items():
        cu = encode(u)
        for v, b in y.terms.items():
            p = _p_word(cm, cu + encode(v), sym)
            if not p.is_zero():
                total = total + a * b * p
    return total


# ---------------------------------------------------------------------------
# alternative rewrite orders
# ---------------------------------------------------------------------------

Chooser = Callable[[tuple], int]


def _descents(w: tuple) -> list[int]:
    return [k for k in range(len(w) - 1) if (w[k] >> 6) > (w[k + 1] >> 6)]


def _add_shifted(acc: dict, src: dict, e: int) -> None:
    for k, c in src.items():
        k += e
        s = acc.get(k, 0) + c
        if s:
            acc[k] = s
        else:
            acc.pop(k, None)


def _rewrite(w: tuple, sym, choose: Chooser, cache: dict) -> dict:
    hit = cache.get(w)
    if hit is not None:
        return hit
    ds = _descents(w)
    if not ds:
        res = {w: {0: 1}}
        cache[w] = res
        return res
    k = choose(tuple(ds))
    a, b = w[k], w[k + 1]
    va, vb = a & 63, b & 63
    diff = (a >> 6) - (b >> 6)
    e = sym[va][vb] if diff % 2 == 0 else -sym[va][vb]
    res: dict = {}
    for red, num in _rewrite(w[:k] + (b, a) + w[k + 2:], sym, choose, cache).items():
        _add_shifted(res.setdefault(red, {}), num, e)
    if va == vb and diff == 1:
        for red, num in _rewrite(w[:k] + w[k + 2:], sym, choose, cache).items():
            _add_shifted(res.setdefault(red, {}), num, 0)
    res = {red: num for red, num in res.items() if num}
    cache[w] = res
    return res


def straighten_with_strategy(codes: Sequence[int], cm: CartanMatrix, choose: Chooser,
                             cache: dict | None = None) -> dict:
    """Normal form of one word (as codes) when ``choose`` picks the rewrite site.

    ``choose`` receives the tuple of descent positions and returns one of them.
    Results map reduced code tuples to numerators over the implied denominator.
    """
    return _rewrite(tuple(codes), cm.sym_table(), choose, {} if cache is None else cache)


def confluence_check(x: AlgElement, trials: int = 50, seed: int = 0) -> bool:
    """True iff ``trials`` random rewrite orders all reproduce the default normal form."""
    cm = x.cartan
    sym = cm.sym_table()
    rng = random.Random(seed)
    reference = {encode(w): _kernels.active.straighten_word(encode(w), sym) for w in x.terms}
    for _ in range(trials):
        choose = lambda ds: rng.choice(ds)  # noqa: E731
        for codes, ref in reference.items():
            if _rewrite(codes, sym, choose, {}) != ref:
                return False
    return True
