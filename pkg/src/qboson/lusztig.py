"""Lusztig's form on a single level, through the twisted derivations F_i'.

``F_i'(1) = 0`` and ``F_i'(E_j X) = q_i^(-C_ij) E_j F_i'(X) + delta_ij X / (1 - q_i^2)``.
Unrolled, F_i' deletes one letter ``i`` at a time, weighted by
``q^(-(alpha_i, prefix))``.  The form of monomials ``E_{i_1..i_k}`` and ``Y`` is
the constant term of ``F'_{i_k} ... F'_{i_1}(Y)``; general X is handled
bar-semilinearly.

>>> from qboson.foundations import CartanMatrix
>>> from qboson.syntax import parse_element
>>> cm = CartanMatrix.preset("A1")
>>> e2 = parse_element("[0:i,0:i]", cm)
>>> print(form_lusztig(e2, e2))
(1+q^-2)/(1-q^2)^2
"""

from __future__ import annotations

import warnings
from functools import lru_cache
from typing import Sequence

from .foundations import ZERO, CartanMatrix, KappaFraction, LaurentPoly, RatScalar
from .freealg import AlgElement, serre_element, weight_of
from .straighten import word_kappa

__all__ = ["twisted_derivation", "form_lusztig", "form_lusztig_words", "serre_pairing_row"]


def _single_level(x: AlgElement) -> int | None:
    levels = x.levels()
    if len(levels) > 1:
        raise ValueError(f"expected a single-level element, found levels {sorted(levels)}")
    return next(iter(levels)) if levels else None


def twisted_derivation(i: int, x: AlgElement) -> AlgElement:
    cm = x.cartan
    _single_level(x)
    inv = RatScalar(1, LaurentPoly.one_minus_q(2 * cm.d(i)))
    out: dict = {}
    for w, c in x.terms.items():
        shift = 0
        for k, letter in enumerate(w):
            if letter.vertex == i:
                s = c * RatScalar.q(-shift) * inv
                key = w[:k] + w[k + 1:]
                out[key] = out[key] + s if key in out else s
            shift += cm.sym(i, letter.vertex)
    return AlgElement(cm, out)


@lru_cache(maxsize=None)
def _lusztig_num(x: tuple, y: tuple, sym: tuple) -> tuple:
    """Numerator of (E_x, E_y)_L over prod_k 1/(1 - q_{x_k}^2), as sorted items."""
    if not x:
        return ((0, 1),) if not y else ()
    i = x[0]
    acc: dict = {}
    shift = 0
    for k, v in enumerate(y):
        if v == i:
            for e, c in _lusztig_num(x[1:], y[:k] + y[k + 1:], sym):
                e -= shift
                s = acc.get(e, 0) + c
                if s:
                    acc[e] = s
                else:
                    acc.pop(e, None)
        shift += sym[i][v]
    return tuple(sorted(acc.items()))


def form_lusztig_words(u: Sequence, v: Sequence, cm: CartanMatrix) -> KappaFraction:
    """(E_u, E_v)_L for two single-level words (levels must agree)."""
    levels = {lv for lv, _ in u} | {lv for lv, _ in v}
    if len(levels) > 1:
        raise ValueError("both words must sit on one common level")
    kap = word_kappa(tuple(u) + tuple(v), cm.rank)
    if kap is None or sorted(x for _, x in u) != sorted(x for _, x in v):
        return KappaFraction(LaurentPoly(), (0,) * cm.rank)
    num = _lusztig_num(tuple(x for _, x in u), tuple(x for _, x in v), cm.sym_table())
    return KappaFraction(LaurentPoly.from_dict(dict(num)), kap)


def form_lusztig(x: AlgElement, y: AlgElement) -> RatScalar:
    """The form (bar X, Y)_L; bar-semilinear in X."""
    x._check(y)
    lx, ly = _single_level(x), _single_level(y)
    if lx is not None and ly is not None and lx != ly:
        raise ValueError(f"level mismatch: {lx} vs {ly}")
    cm = x.cartan
    total = ZERO
    for u, a in x.terms.items():
        for v, b in y.terms.items():
            val = form_lusztig_words(u, v, cm)
            if not val.is_zero():
                total = total + a.bar() * b * val.to_scalar(cm)
    return total


def serre_pairing_row(cm: CartanMatrix, i: int, j: int, n: int, probes: Sequence) -> list[RatScalar]:
    """Forms of each probe word against the Serre element at level n (all zero)."""
    s = serre_element(cm, i, j, n)
    target = weight_of(next(iter(s.terms)), cm.rank)
    out = []
    for w in probes:
        if weight_of(w, cm.rank) != target:
            warnings.warn(f"probe {w} has the wrong weight; its pairing is trivially zero",
                          stacklevel=2)
        out.append(form_lusztig(AlgElement.word(cm, w), s))
    return out
