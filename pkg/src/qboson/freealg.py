"""The free algebra on generators E_{i,n} with coefficients in Q(q).

A word is a tuple of :class:`ZLetter` ``(level, vertex)`` where ``vertex`` is an
index into the Cartan labels.  An :class:`AlgElement` is a finite linear
combination of words; elements never store zero coefficients.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Mapping, NamedTuple, Sequence

from .foundations import ONE, ZERO, CartanMatrix, RatScalar, q_binom, q_fact

__all__ = [
    "ZLetter", "AlgElement", "word_key", "multiply", "weight_of", "bar_map",
    "d_map", "dbar_map", "embed_level", "unembed_level", "embed_boson",
    "serre_element", "divided_power", "is_reduced", "is_coreduced",
    "shift_word", "word_content",
]


class ZLetter(NamedTuple):
    level: int
    vertex: int


Word = tuple  # tuple[ZLetter, ...]


def word_key(w: Word):
    """Total order on words: length first, then lexicographic on (level, vertex)."""
    return (len(w), w)


def _as_word(letters: Iterable) -> Word:
    return tuple(ZLetter(int(a), int(b)) for a, b in letters)


class AlgElement:
    """Finite Q(q)-linear combination of words over a fixed Cartan datum."""

    __slots__ = ("cartan", "terms")

    def __init__(self, cartan: CartanMatrix, terms: Mapping[Word, RatScalar] | None = None):
        self.cartan = cartan
        clean: dict[Word, RatScalar] = {}
        if terms:
            n = cartan.rank
            for w, c in terms.items():
                if isinstance(c, int):
                    c = RatScalar(c)
                if c.is_zero():
                    continue
                w = _as_word(w)
                for letter in w:
                    if not 0 <= letter.vertex < n:
                        raise ValueError(f"vertex index {letter.vertex} out of range")
                clean[w] = clean[w] + c if w in clean else c
            clean = {w: c for w, c in clean.items() if not c.is_zero()}
        self.terms: dict[Word, RatScalar] = dict(sorted(clean.items(), key=lambda t: word_key(t[0])))

    # -- constructors ---------------------------------------------------------

    @classmethod
    def word(cls, cartan: CartanMatrix, letters: Iterable, coeff: RatScalar | int = 1) -> "AlgElement":
        return cls(cartan, {_as_word(letters): coeff})

    @classmethod
    def one(cls, cartan: CartanMatrix) -> "AlgElement":
        return cls(cartan, {(): ONE})

    @classmethod
    def zero(cls, cartan: CartanMatrix) -> "AlgElement":
        return cls(cartan)

    @classmethod
    def scalar(cls, cartan: CartanMatrix, c: RatScalar | int) -> "AlgElement":
        return cls(cartan, {(): c})

    @classmethod
    def _raw(cls, cartan, terms):
        el = cls.__new__(cls)
        el.cartan = cartan
        el.terms = dict(sorted(terms.items(), key=lambda t: word_key(t[0])))
        return el

    # -- inspection -----------------------------------------------------------

    def __iter__(self) -> Iterator[tuple[Word, RatScalar]]:
        return iter(self.terms.items())

    def __len__(self):
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, w: Iterable) -> RatScalar:
        return self.terms.get(_as_word(w), ZERO)

    def support(self) -> list[Word]:
        return list(self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1 and next(iter(self.terms.values())) == ONE

    def levels(self) -> set[int]:
        return {x.level for w in self.terms for x in w}

    def __eq__(self, other):
        if not isinstance(other, AlgElement):
            return NotImplemented
        return self.cartan == other.cartan and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(self.terms.items()))

    def __repr__(self):
        from .syntax import format_element
        return f"AlgElement({format_element(self)!r})"

    def __str__(self):
        from .syntax import format_element
        return format_element(self)

    # -- arithmetic -----------------------------------------------------------

    def _check(self, other: "AlgElement"):
        if self.cartan != other.cartan:
            raise ValueError("elements live over different Cartan data")

    def __add__(self, other):
        if isinstance(other, (int, RatScalar)):
            other = AlgElement.scalar(self.cartan, other)
        if not isinstance(other, AlgElement):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out[w] + c if w in out else c
            if s.is_zero():
                out.pop(w, None)
            else:
                out[w] = s
        return AlgElement._raw(self.cartan, out)

    __radd__ = __add__

    def __neg__(self):
        return AlgElement._raw(self.cartan, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, RatScalar)):
            other = AlgElement.scalar(self.cartan, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: RatScalar | int) -> "AlgElement":
        if isinstance(c, int):
            c = RatScalar(c)
        if c.is_zero():
            return AlgElement.zero(self.cartan)
        return AlgElement._raw(self.cartan, {w: c * v for w, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, RatScalar)):
            return self.scale(other)
        if not isinstance(other, AlgElement):
            return NotImplemented
        return multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, RatScalar)):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, c):
        if isinstance(c, int):
            c = RatScalar(c)
        return self.scale(c.inverse())

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a free-algebra element")
        out = AlgElement.one(self.cartan)
        for _ in range(n):
            out = out * self
        return out

    def map_words(self, f, coeff_bar: bool = False) -> "AlgElement":
        out: dict[Word, RatScalar] = {}
        for w, c in self.terms.items():
            nw = f(w)
            c = c.bar() if coeff_bar else c
            out[nw] = out[nw] + c if nw in out else c
        return AlgElement(self.cartan, out)


def multiply(x: AlgElement, y: AlgElement) -> AlgElement:
    """Bilinear extension of word concatenation."""
    x._check(y)
    out: dict[Word, RatScalar] = {}
    for u, a in x.terms.items():
        for v, b in y.terms.items():
            w = u + v
            c = a * b
            out[w] = out[w] + c if w in out else c
    return AlgElement(x.cartan, out)


def weight_of(w: Iterable, rank: int) -> tuple[int, ...]:
    """Sum of (-1)^level alpha_vertex over the letters of w."""
    coords = [0] * rank
    for level, vertex in w:
        coords[vertex] += -1 if level & 1 else 1
    return tuple(coords)


def word_content(w: Iterable) -> tuple:
    """The letter multiset of a word, as a sorted tuple."""
    return tuple(sorted(w))


def shift_word(w: Word, k: int) -> Word:
    return tuple(ZLetter(x.level + k, x.vertex) for x in w)


def bar_map(x: AlgElement) -> AlgElement:
    """Antiautomorphism fixing generators and sending q to q^-1."""
    return x.map_words(lambda w: w[::-1], coeff_bar=True)


def d_map(x: AlgElement) -> AlgElement:
    """Antiautomorphism E_{i,n} -> E_{i,n+1}, q -> q^-1."""
    return x.map_words(lambda w: shift_word(w[::-1], 1), coeff_bar=True)


def dbar_map(x: AlgElement, times: int = 1) -> AlgElement:
    """Automorphism E_{i,n} -> E_{i,n+times}, q-linear."""
    return x.map_words(lambda w: shift_word(w, times))


def embed_level(n: int, x: AlgElement) -> AlgElement:
    """Move an element supported on level-0 words to level n."""
    if any(letter.level != 0 for w in x.terms for letter in w):
        raise ValueError("embed_level expects an element supported on level 0")
    return dbar_map(x, n)


def unembed_level(n: int, x: AlgElement) -> AlgElement:
    if any(letter.level != n for w in x.terms for letter in w):
        raise ValueError(f"element is not supported on level {n}")
    return dbar_map(x, -n)


def embed_boson(letters: Iterable[tuple[str, int]]) -> Word:
    """E_i -> E_{i,0}, F_i -> E_{i,1}; letters are (kind, vertex) pairs."""
    out = []
    for kind, vertex in letters:
        if kind == "E":
            out.append(ZLetter(0, vertex))
        elif kind == "F":
            out.append(ZLetter(1, vertex))
        else:
            raise ValueError(f"boson letter kind must be 'E' or 'F', got {kind!r}")
    return tuple(out)


def serre_element(cm: CartanMatrix, i: int, j: int, n: int = 0) -> AlgElement:
    """sum_k (-1)^k [1-C_ij choose k]_i E_i^k E_j E_i^(1-C_ij-k), all at level n."""
    if i == j:
        raise ValueError("Serre element needs i != j")
    top = 1 - cm.c(i, j)
    ei, ej = ZLetter(n, i), ZLetter(n, j)
    terms = {}
    for k in range(top + 1):
        c = q_binom(cm, i, top, k)
        terms[(ei,) * k + (ej,) + (ei,) * (top - k)] = -c if k & 1 else c
    return AlgElement(cm, terms)


def divided_power(cm: CartanMatrix, i: int, n: int, a: int) -> AlgElement:
    """E_{i,n}^a / [a]_i!."""
    if a < 0:
        raise ValueError("divided power needs a >= 0")
    return AlgElement(cm, {(ZLetter(n, i),) * a: q_fact(cm, i, a).inverse()})


def is_reduced(w: Sequence) -> bool:
    return all(w[k][0] <= w[k + 1][0] for k in range(len(w) - 1))


def is_coreduced(w: Sequence) -> bool:
    return all(w[k][0] >= w[k + 1][0] for k in range(len(w) - 1))
