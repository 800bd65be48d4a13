"""The graphical form: level-compatible perfect matchings with crossing degrees.

A boundary has a bottom word (source) and a top word (target).  A chord joins

* a bottom and a top endpoint with equal levels (a *through* chord),
* two bottom endpoints ``a`` left of ``b`` with ``level(b) = level(a) + 1`` (a cap),
* two top endpoints ``c`` left of ``d`` with ``level(c) = level(d) + 1`` (a cup),

and always two endpoints with the same vertex.  Two chords cross iff their
endpoints interleave in the circular order: bottom left to right, then top
right to left.  A crossing with bottom-left label ``(m, i)`` and bottom-right
label ``(n, j)`` has degree ``f(n - m) d_i C_ij`` where ``f(k) = (-1)^k`` for
``k >= 1`` and ``(-1)^(k+1)`` otherwise.  Which legs supply ``m`` and ``n`` is
fixed per chord-type pair by :func:`crossing_labels`.

>>> from qboson.foundations import CartanMatrix
>>> cm = CartanMatrix.preset("A2")
>>> b = Boundary.parse("[0:i,8:j,1:i,2:i]", "[2:i,1:i,0:i,8:j]", cm)
>>> sorted(degree(m) for m in enumerate_matchings(b))
[-2, 0, 0]
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from . import _kernels
from .foundations import ZERO, CartanMatrix, KappaFraction, LaurentPoly, RatScalar, series_expand
from .freealg import AlgElement, ZLetter
from .straighten import encode, word_kappa

__all__ = [
    "Boundary", "Endpoint", "Chord", "Matching", "GradedDim", "enumerate_matchings",
    "crossing_pairs", "crossing_labels", "crossing_degree", "degree", "kappa",
    "form_graph", "form_graph_words", "is_a2_admissible", "grdim_hom_a2",
]


@dataclass(frozen=True)
class Boundary:
    bottom: tuple
    top: tuple
    cartan: CartanMatrix

    def __post_init__(self):
        object.__setattr__(self, "bottom", tuple(ZLetter(*x) for x in self.bottom))
        object.__setattr__(self, "top", tuple(ZLetter(*x) for x in self.top))

    @classmethod
    def parse(cls, bottom: str, top: str, cm: CartanMatrix) -> "Boundary":
        from .syntax import parse_word
        return cls(parse_word(bottom, cm), parse_word(top, cm), cm)

    def letter(self, e: "Endpoint") -> ZLetter:
        word = self.bottom if e.side == "bottom" else self.top
        return word[e.index - 1]


@dataclass(frozen=True, order=True)
class Endpoint:
    side: str   # "bottom" or "top"
    index: int  # 1-based, left to right

    def circular(self, b: Boundary) -> int:
        """Position in the circular order: bottom left to right, then top right to left."""
        if self.side == "bottom":
            return self.index - 1
        return len(b.bottom) + len(b.top) - self.index


@dataclass(frozen=True)
class Chord:
    kind: str            # "through", "cap" or "cup"
    first: Endpoint      # bottom end of a through chord; left end otherwise
    second: Endpoint
    vertex: int
    first_level: int
    second_level: int

    def span(self, b: Boundary) -> tuple[int, int]:
        x, y = self.first.circular(b), self.second.circular(b)
        return (x, y) if x < y else (y, x)


@dataclass(frozen=True)
class Matching:
    pairs: frozenset
    boundary: Boundary

    def chords(self) -> list[Chord]:
        out = []
        for e, f in sorted(tuple(sorted(p)) for p in self.pairs):
            le = self.boundary.letter(e)
            if e.side != f.side:
                bot, top = (e, f) if e.side == "bottom" else (f, e)
                kind, first, second = "through", bot, top
            else:
                kind = "cap" if e.side == "bottom" else "cup"
                first, second = (e, f) if e.index < f.index else (f, e)
            l1 = self.boundary.letter(first).level
            l2 = self.boundary.letter(second).level
            out.append(Chord(kind, first, second, le.vertex, l1, l2))
        return out

    def is_valid(self) -> bool:
        b = self.boundary
        ends = [Endpoint("bottom", k + 1) for k in range(len(b.bottom))]
        ends += [Endpoint("top", k + 1) for k in range(len(b.top))]
        used = [e for p in self.pairs for e in p]
        if sorted(used) != sorted(ends):
            return False
        for c in self.chords():
            if b.letter(c.first).vertex != b.letter(c.second).vertex:
                return False
            if c.kind == "through" and c.first_level != c.second_level:
                return False
            if c.kind == "cap" and c.second_level != c.first_level + 1:
                return False
            if c.kind == "cup" and c.first_level != c.second_level + 1:
                return False
        return True


@dataclass(frozen=True)
class GradedDim:
    """A graded dimension, kept as an exact rational function of q."""
    value: RatScalar

    def series(self, low: int, high: int) -> dict:
        return series_expand(self.value, low, high)

    def __str__(self):
        return str(self.value)


def enumerate_matchings(b: Boundary) -> list[Matching]:
    """All level-compatible perfect matchings, in a deterministic order."""
    p = len(b.bottom)

    def ep(k: int) -> Endpoint:
        return Endpoint("bottom", k + 1) if k < p else Endpoint("top", k - p + 1)

    out = []
    for pairs in _kernels.python_backend.list_matchings(encode(b.bottom), encode(b.top)):
        out.append(Matching(frozenset(frozenset((ep(x), ep(y))) for x, y in pairs), b))
    return out


def _cross(c1: Chord, c2: Chord, b: Boundary) -> bool:
    x1, y1 = c1.span(b)
    x2, y2 = c2.span(b)
    return x1 < x2 < y1 < y2 or x2 < x1 < y2 < y1


def crossing_pairs(m: Matching) -> set[frozenset]:
    chords = m.chords()
    return {frozenset((c1, c2))
            for k, c1 in enumerate(chords) for c2 in chords[k + 1:]
            if _cross(c1, c2, m.boundary)}


_ORDER = {"through": 0, "cap": 1, "cup": 2}


def crossing_labels(c1: Chord, c2: Chord, alternative: bool = False) -> tuple[int, int]:
    """The (bottom-left, bottom-right) level labels of a crossing.

    The canonical choice per chord-type pair:

    ========================  ==============================  =========================
    pair                      canonical (m, n)                alternative (m, n)
    ========================  ==============================  =========================
    through x through         left bottom foot first          (same)
    cap x through             (cap left level, through)       (through, cap right level)
    cup x through             (through, cup left level)       (cup right level, through)
    cap x cap, a<a'<b<b'      (level a', level b)             (level b, level b')
    cup x cup, c<c'<d<d'      (level d, level c')             (level c', level c)
    ========================  ==============================  =========================

    Every alternative replaces ``n - m = k`` by ``1 - k``, which leaves the
    sign rule unchanged; checking both on a corpus guards the table.
    """
    if _ORDER[c1.kind] > _ORDER[c2.kind]:
        c1, c2 = c2, c1
    kinds = (c1.kind, c2.kind)
    if kinds == ("through", "through"):
        if c1.first.index > c2.first.index:
            c1, c2 = c2, c1
        return c1.first_level, c2.first_level
    if kinds == ("through", "cap"):
        n, m = c1.first_level, c2.first_level
        return (n, m + 1) if alternative else (m, n)
    if kinds == ("through", "cup"):
        n = c1.first_level
        return (c2.second_level, n) if alternative else (n, c2.first_level)
    if kinds in (("cap", "cap"), ("cup", "cup")):
        if c1.first.index > c2.first.index:
            c1, c2 = c2, c1
        if kinds[0] == "cap":
            return (c1.second_level, c2.second_level) if alternative else (c2.first_level, c1.second_level)
        return (c2.first_level, c1.first_level) if alternative else (c1.second_level, c2.first_level)
    raise ValueError("a cap and a cup never cross")


def _sign(k: int) -> int:
    if k >= 1:
        return -1 if k % 2 else 1
    return 1 if k % 2 else -1


def crossing_degree(c1: Chord, c2: Chord, cm: CartanMatrix, alternative: bool = False) -> int:
    m, n = crossing_labels(c1, c2, alternative)
    return _sign(n - m) * cm.sym(c1.vertex, c2.vertex)


def degree(m: Matching, alternative: bool = False) -> int:
    cm = m.boundary.cartan
    return sum(crossing_degree(*tuple(pair), cm, alternative) for pair in crossing_pairs(m))


def kappa(m: Matching) -> tuple[int, ...]:
    counts = [0] * m.boundary.cartan.rank
    for c in m.chords():
        counts[c.vertex] += 1
    return tuple(counts)


def _histogram_to_fraction(hist: dict, kap: tuple[int, ...]) -> KappaFraction:
    return KappaFraction(LaurentPoly.from_dict(hist), kap)


def form_graph_words(u: Sequence, v: Sequence, cm: CartanMatrix) -> KappaFraction:
    """Sum of q^deg over the matchings of (u, v), over its kappa denominator."""
    kap = word_kappa(tuple(u) + tuple(v), cm.rank)
    if kap is None:
        return KappaFraction(LaurentPoly(), (0,) * cm.rank)
    hist = _kernels.active.matching_degrees(encode(u), encode(v), cm.sym_table())
    return _histogram_to_fraction(hist, kap)


def form_graph(x: AlgElement, y: AlgElement) -> RatScalar:
    """Bilinear extension with the first coefficient bar-conjugated."""
    x._check(y)
    cm = x.cartan
    total = ZERO
    for u, a in x.terms.items():
        abar = a.bar()
        for v, b in y.terms.items():
            val = form_graph_words(u, v, cm)
            if not val.is_zero():
                total = total + abar * b * val.to_scalar(cm)
    return total


def _check_levels(words: Iterable[Sequence]) -> None:
    for w in words:
        for lv, _ in w:
            if lv not in (0, 1):
                raise ValueError(f"A2 boundaries need levels in {{0, 1}}, found {lv}")


def is_a2_admissible(m: Matching) -> bool:
    """False iff two through chords cross with a level-1 foot left of a level-0 foot."""
    b = m.boundary
    _check_levels((b.bottom, b.top))
    for pair in crossing_pairs(m):
        c1, c2 = tuple(pair)
        if c1.kind == c2.kind == "through":
            if c1.first.index > c2.first.index:
                c1, c2 = c2, c1
            if c1.first_level == 1 and c2.first_level == 0:
                return False
    return True


def grdim_hom_a2(source: Sequence, target: Sequence, cm: CartanMatrix) -> GradedDim:
    """Graded dimension of Hom(E_source, E_target) in the diagram category."""
    _check_levels((source, target))
    kap = word_kappa(tuple(source) + tuple(target), cm.rank)
    if kap is None:
        return GradedDim(ZERO)
    hist = _kernels.active.matching_degrees(encode(source), encode(target), cm.sym_table(), True)
    return GradedDim(_histogram_to_fraction(hist, kap).to_scalar(cm))
