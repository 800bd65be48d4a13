"""Cartan data and exact arithmetic in Z[q, q^-1] and Q(q).

Laurent polynomials are stored densely as ``(low, coeffs)`` where ``coeffs[k]``
is the coefficient of ``q**(low + k)``.  Rational functions are kept as reduced
fractions of Laurent polynomials with a fixed normalisation, so two scalars are
equal exactly when their stored parts are equal.

>>> q = RatScalar.q()
>>> (1 / (1 - q**2)).bar() == -q**2 / (1 - q**2)
True
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Mapping, Sequence

__all__ = [
    "CartanError", "SizeGuardError", "CartanMatrix", "LaurentPoly", "RatScalar",
    "validate_cartan", "q_power_i", "q_int", "q_fact", "q_binom",
    "weight_form", "bar", "series_expand", "cyclotomic", "KappaFraction",
    "kappa_denominator",
]


# ---------------------------------------------------------------------------
# Cartan data
# ---------------------------------------------------------------------------

class SizeGuardError(RuntimeError):
    """A computation was refused because it would exceed a size guard."""

    def __init__(self, guard: str, value: int, limit: int):
        super().__init__(f"size guard {guard!r}: {value} exceeds the limit {limit}")
        self.guard = guard


class CartanError(ValueError):
    """A generalized Cartan matrix violates one of the axioms.

    ``axiom`` is a short machine-readable code: ``shape``, ``diagonal``,
    ``off_diagonal_sign``, ``zero_pattern``, ``symmetrizer_positive``,
    ``symmetrizable`` or ``gcd``.
    """

    def __init__(self, axiom: str, message: str):
        super().__init__(message)
        self.axiom = axiom


@dataclass(frozen=True)
class CartanMatrix:
    labels: tuple[str, ...]
    entries: tuple[tuple[int, ...], ...]
    symmetrizers: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(str(x) for x in self.labels))
        object.__setattr__(self, "entries", tuple(tuple(int(c) for c in row) for row in self.entries))
        object.__setattr__(self, "symmetrizers", tuple(int(d) for d in self.symmetrizers))

    @classmethod
    def checked(cls, labels: Sequence[str], entries: Sequence[Sequence[int]],
                symmetrizers: Sequence[int]) -> "CartanMatrix":
        cm = cls(tuple(labels), tuple(tuple(r) for r in entries), tuple(symmetrizers))
        validate_cartan(cm)
        return cm

    @classmethod
    def preset(cls, name: str) -> "CartanMatrix":
        """Built-in data: ``A1`` (sl2), ``A2``, ``B2`` (d = (1, 2)), ``A1xA1``, ``G2``."""
        key = name.upper().replace("_", "")
        if key not in _PRESETS:
            raise KeyError(f"unknown Cartan preset {name!r}; known: {sorted(_PRESETS)}")
        return cls.checked(*_PRESETS[key])

    @property
    def rank(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"unknown vertex label {label!r}") from None

    def d(self, i: int) -> int:
        return self.symmetrizers[i]

    def c(self, i: int, j: int) -> int:
        return self.entries[i][j]

    def sym(self, i: int, j: int) -> int:
        """The symmetric pairing d_i * C_ij of simple roots."""
        return self.symmetrizers[i] * self.entries[i][j]

    def sym_table(self) -> tuple[tuple[int, ...], ...]:
        n = self.rank
        return tuple(tuple(self.sym(i, j) for j in range(n)) for i in range(n))


_PRESETS = {
    "A1": (("i",), ((2,),), (1,)),
    "SL2": (("i",), ((2,),), (1,)),
    "A2": (("i", "j"), ((2, -1), (-1, 2)), (1, 1)),
    "B2": (("i", "j"), ((2, -2), (-1, 2)), (1, 2)),
    "A1XA1": (("i", "j"), ((2, 0), (0, 2)), (1, 1)),
    "G2": (("i", "j"), ((2, -1), (-3, 2)), (3, 1)),
}


def validate_cartan(cm: CartanMatrix) -> None:
    """Raise :class:`CartanError` naming the first violated axiom."""
    n = len(cm.labels)
    if len(set(cm.labels)) != n:
        raise CartanError("shape", "vertex labels must be distinct")
    if len(cm.entries) != n or any(len(row) != n for row in cm.entries):
        raise CartanError("shape", f"matrix must be {n}x{n}")
    if len(cm.symmetrizers) != n:
        raise CartanError("shape", f"expected {n} symmetrizers")
    C = cm.entries
    for i in range(n):
        if C[i][i] != 2:
            raise CartanError("diagonal", f"C_ii = 2 fails at i={cm.labels[i]}")
    for i in range(n):
        for j in range(n):
            if i != j and C[i][j] > 0:
                raise CartanError("off_diagonal_sign",
                                  f"C_ij <= 0 fails at ({cm.labels[i]}, {cm.labels[j]})")
    for i in range(n):
        for j in range(n):
            if (C[i][j] == 0) != (C[j][i] == 0):
                raise CartanError("zero_pattern",
                                  f"C_ij=0 iff C_ji=0 fails at ({cm.labels[i]}, {cm.labels[j]})")
    D = cm.symmetrizers
    if any(x <= 0 for x in D):
        raise CartanError("symmetrizer_positive", "symmetrizers must be positive")
    for i in range(n):
        for j in range(n):
            if D[i] * C[i][j] != D[j] * C[j][i]:
                raise CartanError("symmetrizable",
                                  f"d_i C_ij = d_j C_ji fails at ({cm.labels[i]}, {cm.labels[j]})")
    g = 0
    for x in D:
        g = gcd(g, x)
    if n and g != 1:
        raise CartanError("gcd", f"symmetrizers must be coprime, gcd is {g}")


# ---------------------------------------------------------------------------
# dense integer polynomial helpers (coefficient tuples, lowest degree first)
# ---------------------------------------------------------------------------

def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _content(c: Sequence[int]) -> int:
    g = 0
    for x in c:
        g = gcd(g, x)
        if g == 1:
            break
    return g


def _mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _exact_div(a: Sequence[int], b: Sequence[int]) -> list[int] | None:
    """Quotient a / b in Z[q], or None when b does not divide a."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if not a:
        return []
    n, m = len(a), len(b)
    if n < m:
        return None
    rem = list(a)
    lead = b[-1]
    quo = [0] * (n - m + 1)
    for k in range(n - m, -1, -1):
        top = rem[k + m - 1]
        if top == 0:
            continue
        qk, r = divmod(top, lead)
        if r:
            return None
        quo[k] = qk
        for j in range(m):
            rem[k + j] -= qk * b[j]
    if any(rem[: m - 1]):
        return None
    return _trim(quo)


def _prem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder of a by b (both nonzero, lowest degree first)."""
    rem = list(a)
    m = len(b)
    lead = b[-1]
    while len(rem) >= m:
        top = rem[-1]
        shift = len(rem) - m
        rem = [x * lead for x in rem]
        for j in range(m):
            rem[shift + j] -= top * b[j]
        rem.pop()
        _trim(rem)
    return rem


def _primitive(c: list[int]) -> list[int]:
    g = _content(c)
    if g > 1:
        c = [x // g for x in c]
    if c and c[-1] < 0:
        c = [-x for x in c]
    return c


@lru_cache(maxsize=65536)
def _zz_gcd(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    """gcd in Z[q] of two nonzero polynomials, positive leading coefficient."""
    cg = gcd(_content(a), _content(b))
    if len(a) == 1 or len(b) == 1:
        return (cg,)
    x, y = _primitive(list(a)), _primitive(list(b))
    if len(x) < len(y):
        x, y = y, x
    while y:
        if len(y) == 1:
            return (cg,)
        x, y = y, _primitive(_prem(x, y))
    return tuple(cg * v for v in x)


# ---------------------------------------------------------------------------
# Laurent polynomials
# ---------------------------------------------------------------------------

class LaurentPoly:
    """An element of Z[q, q^-1]; immutable."""

    __slots__ = ("low", "coeffs", "_hash")

    def __init__(self, low: int = 0, coeffs: Iterable[int] = ()):
        c = list(coeffs)
        _trim(c)
        k = 0
        while k < len(c) and c[k] == 0:
            k += 1
        self.coeffs: tuple[int, ...] = tuple(c[k:])
        self.low: int = low + k if self.coeffs else 0
        self._hash = None

    @classmethod
    def from_dict(cls, terms: Mapping[int, int]) -> "LaurentPoly":
        terms = {e: c for e, c in terms.items() if c}
        if not terms:
            return cls()
        lo, hi = min(terms), max(terms)
        return cls(lo, [terms.get(e, 0) for e in range(lo, hi + 1)])

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> "LaurentPoly":
        return cls(exp, (coeff,))

    @classmethod
    def one_minus_q(cls, k: int) -> "LaurentPoly":
        """The polynomial 1 - q^k, k > 0."""
        return cls(0, [1] + [0] * (k - 1) + [-1])

    def to_dict(self) -> dict[int, int]:
        return {self.low + k: c for k, c in enumerate(self.coeffs) if c}

    def terms(self):
        """(exponent, coefficient) pairs, ascending exponent."""
        return [(self.low + k, c) for k, c in enumerate(self.coeffs) if c]

    @property
    def high(self) -> int:
        return self.low + len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monomial(self) -> bool:
        return sum(1 for c in self.coeffs if c) == 1

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly(0, (other,))
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.low == other.low and self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.low, self.coeffs))
        return self._hash

    def __repr__(self):
        return f"LaurentPoly({self.to_dict()})"

    def __neg__(self):
        return LaurentPoly(self.low, [-c for c in self.coeffs])

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPoly(0, (other,))
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if not self.coeffs:
            return other
        if not other.coeffs:
            return self
        lo = min(self.low, other.low)
        hi = max(self.high, other.high)
        out = [0] * (hi - lo + 1)
        for k, c in enumerate(self.coeffs):
            out[self.low - lo + k] += c
        for k, c in enumerate(other.coeffs):
            out[other.low - lo + k] += c
        return LaurentPoly(lo, out)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentPoly(0, (other,))
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPoly(self.low, [c * other for c in self.coeffs])
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return LaurentPoly(self.low + other.low, _mul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a Laurent polynomial")
        out = LaurentPoly(0, (1,))
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def shift(self, k: int) -> "LaurentPoly":
        return LaurentPoly(self.low + k, self.coeffs) if self.coeffs else self

    def bar(self) -> "LaurentPoly":
        """q -> q^-1."""
        return LaurentPoly(-self.high, self.coeffs[::-1]) if self.coeffs else self

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly | None":
        quo = _exact_div(self.coeffs, other.coeffs)
        if quo is None:
            return None
        return LaurentPoly(self.low - other.low, quo)

    def evaluate(self, x):
        total = 0
        for e, c in self.terms():
            total += c * x ** e
        return total


_L_ONE = LaurentPoly(0, (1,))
_L_ZERO = LaurentPoly()


# ---------------------------------------------------------------------------
# Rational functions
# ---------------------------------------------------------------------------

class RatScalar:
    """An element of Q(q) as a reduced fraction of Laurent polynomials.

    Canonical form: the denominator is a polynomial with nonzero, positive
    constant term; numerator and denominator share no common factor in Z[q].
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=0, den=1, *, _reduced: bool = False):
        if isinstance(num, int):
            num = LaurentPoly(0, (num,))
        if isinstance(den, int):
            den = LaurentPoly(0, (den,))
        if _reduced:
            self.num, self.den = num, den
        else:
            self.num, self.den = _normalize(num, den)
        self._hash = None

    @classmethod
    def q(cls, exp: int = 1) -> "RatScalar":
        return cls(LaurentPoly(exp, (1,)), _L_ONE, _reduced=True)

    @classmethod
    def from_laurent(cls, p: LaurentPoly) -> "RatScalar":
        return cls(p, _L_ONE, _reduced=True)

    @classmethod
    def from_dict(cls, terms: Mapping[int, int]) -> "RatScalar":
        return cls(LaurentPoly.from_dict(terms), _L_ONE, _reduced=True)

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.num.coeffs

    def __bool__(self):
        return bool(self.num.coeffs)

    def is_laurent(self) -> bool:
        return self.den.coeffs == (1,)

    def in_boson_ring(self, cm: CartanMatrix) -> bool:
        """Membership in Z[q, q^-1][1/(1 - q_i^2)]: the reduced denominator
        divides a power of the product of the 1 - q^(2 d_i)."""
        if _content(self.den.coeffs) != 1:
            return False
        rest = self.den
        ks = sorted({2 * d for d in cm.symmetrizers})
        for k in ks:
            for phi in _cyclotomic_divisors(k):
                while True:
                    quo = rest.exact_div(phi)
                    if quo is None:
                        break
                    rest = quo
        return rest.coeffs in ((1,), (-1,))

    # -- arithmetic ---------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            return self.den.coeffs == (1,) and self.num == other
        if not isinstance(other, RatScalar):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __repr__(self):
        from .syntax import format_scalar
        return f"RatScalar({format_scalar(self)!r})"

    def __str__(self):
        from .syntax import format_scalar
        return format_scalar(self)

    def __neg__(self):
        return RatScalar(-self.num, self.den, _reduced=True)

    def __add__(self, other):
        if isinstance(other, int):
            other = RatScalar(other)
        if not isinstance(other, RatScalar):
            return NotImplemented
        if not self.num.coeffs:
            return other
        if not other.num.coeffs:
            return self
        if self.den == other.den:
            return RatScalar(self.num + other.num, self.den)
        return RatScalar(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            other = RatScalar(other)
        if not isinstance(other, RatScalar):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return ZERO
            return RatScalar(self.num * other, self.den)
        if isinstance(other, LaurentPoly):
            other = RatScalar.from_laurent(other)
        if not isinstance(other, RatScalar):
            return NotImplemented
        if not self.num.coeffs or not other.num.coeffs:
            return ZERO
        if self.den.coeffs == (1,) and other.den.coeffs == (1,):
            return RatScalar(self.num * other.num, _L_ONE, _reduced=True)
        return RatScalar(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatScalar":
        if not self.num.coeffs:
            raise ZeroDivisionError("inverse of zero in Q(q)")
        return RatScalar(self.den, self.num)

    def __truediv__(self, other):
        if isinstance(other, int):
            other = RatScalar(other)
        if not isinstance(other, RatScalar):
            return NotImplemented
        if not other.num.coeffs:
            raise ZeroDivisionError("division by zero in Q(q)")
        return RatScalar(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return RatScalar(other) / self

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return RatScalar(self.num ** n, self.den ** n, _reduced=True)

    def bar(self) -> "RatScalar":
        """The field involution q -> q^-1."""
        return RatScalar(self.num.bar(), self.den.bar())


def _normalize(num: LaurentPoly, den: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    if not den.coeffs:
        raise ZeroDivisionError("zero denominator in Q(q)")
    if not num.coeffs:
        return _L_ZERO, _L_ONE
    shift = num.low - den.low
    a, b = num.coeffs, den.coeffs
    if len(b) == 1:
        g = gcd(_content(a), b[0])
    else:
        g = _zz_gcd(a, b)
    if g != (1,) and g != 1:
        if isinstance(g, int):
            a = tuple(x // g for x in a)
            b = (b[0] // g,)
        else:
            a = tuple(_exact_div(a, g))
            b = tuple(_exact_div(b, g))
    if b[0] < 0:
        a = tuple(-x for x in a)
        b = tuple(-x for x in b)
    return LaurentPoly(shift, a), LaurentPoly(0, b)


ZERO = RatScalar(_L_ZERO, _L_ONE, _reduced=True)
ONE = RatScalar(_L_ONE, _L_ONE, _reduced=True)


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> LaurentPoly:
    """The n-th cyclotomic polynomial."""
    poly = LaurentPoly.one_minus_q(n) * -1  # q^n - 1
    for k in range(1, n):
        if n % k == 0:
            poly = poly.exact_div(cyclotomic(k))
    return poly


def _cyclotomic_divisors(n: int) -> list[LaurentPoly]:
    return [cyclotomic(k) for k in range(1, n + 1) if n % k == 0]


# ---------------------------------------------------------------------------
# quantum numbers and forms on the root lattice
# ---------------------------------------------------------------------------

def q_power_i(cm: CartanMatrix, i: int, n: int) -> RatScalar:
    """q_i^n = q^(d_i n)."""
    return RatScalar.q(cm.d(i) * n)


def q_int(cm: CartanMatrix, i: int, n: int) -> RatScalar:
    """[n]_i = q_i^(n-1) + q_i^(n-3) + ... + q_i^(1-n)."""
    if n < 0:
        raise ValueError("q_int needs n >= 0")
    d = cm.d(i)
    return RatScalar.from_dict({d * (n - 1 - 2 * k): 1 for k in range(n)})


def q_fact(cm: CartanMatrix, i: int, n: int) -> RatScalar:
    if n < 0:
        raise ValueError("q_fact needs n >= 0")
    out = ONE
    for k in range(1, n + 1):
        out = out * q_int(cm, i, k)
    return out


def q_binom(cm: CartanMatrix, i: int, n: int, k: int) -> RatScalar:
    """Gaussian binomial via the q-Pascal rule (stays in Z[q, q^-1])."""
    if n < 0 or not 0 <= k <= n:
        raise ValueError(f"q_binom needs 0 <= k <= n, got n={n}, k={k}")
    d = cm.d(i)
    return RatScalar.from_laurent(_binom_laurent(d, n, k))


@lru_cache(maxsize=None)
def _binom_laurent(d: int, n: int, k: int) -> LaurentPoly:
    if k == 0 or k == n:
        return _L_ONE
    # [n k] = q^(-k) [n-1 k] + q^(n-k) [n-1 k-1], in powers of q_i
    return (_binom_laurent(d, n - 1, k).shift(-d * k)
            + _binom_laurent(d, n - 1, k - 1).shift(d * (n - k)))


def weight_form(cm: CartanMatrix, alpha: Sequence[int], beta: Sequence[int]) -> int:
    """(alpha, beta) with (alpha_i, alpha_j) = d_i C_ij, for coordinate vectors."""
    n = cm.rank
    if len(alpha) != n or len(beta) != n:
        raise ValueError(f"weights must have {n} coordinates")
    return sum(alpha[i] * beta[j] * cm.sym(i, j)
               for i in range(n) if alpha[i] for j in range(n) if beta[j])


def bar(x: RatScalar) -> RatScalar:
    return x.bar()


def series_expand(x: RatScalar, low: int, high: int) -> dict[int, int | Fraction]:
    """Nonzero coefficients of the Laurent expansion of x at q = 0 in [low, high]."""
    den = x.den.coeffs
    if not den or den[0] == 0:
        raise ValueError("series expansion needs a denominator with nonzero constant term")
    if not x.num.coeffs or high < low:
        return {}
    start = x.num.low - x.den.low
    num = x.num.coeffs
    d0 = den[0]
    out: dict[int, int | Fraction] = {}
    series: list[Fraction] = []
    for k in range(0, high - start + 1):
        acc = Fraction(num[k]) if k < len(num) else Fraction(0)
        for j in range(1, min(k, len(den) - 1) + 1):
            acc -= den[j] * series[k - j]
        c = acc / d0
        series.append(c)
        e = start + k
        if e >= low and c:
            out[e] = int(c) if c.denominator == 1 else c
    return out


# ---------------------------------------------------------------------------
# numerators over the implied per-vertex denominator
# ---------------------------------------------------------------------------

@lru_cache(maxsize=4096)
def kappa_denominator(symmetrizers: tuple[int, ...], kappa: tuple[int, ...]) -> LaurentPoly:
    """prod_v (1 - q^(2 d_v))^kappa_v."""
    out = _L_ONE
    for d, k in zip(symmetrizers, kappa):
        if k:
            out = out * LaurentPoly.one_minus_q(2 * d) ** k
    return out


@dataclass(frozen=True)
class KappaFraction:
    """A Laurent numerator over prod_v (1 - q_v^2)^kappa_v, left unreduced.

    Form values of monomial pairs come out in this shape from both engines,
    so they can be compared without any gcd work.
    """
    num: LaurentPoly
    kappa: tuple[int, ...]

    @classmethod
    def from_dict(cls, terms: Mapping[int, int], kappa: Sequence[int]) -> "KappaFraction":
        return cls(LaurentPoly.from_dict(terms), tuple(kappa))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def to_scalar(self, cm: CartanMatrix) -> RatScalar:
        if self.num.is_zero():
            return ZERO
        return RatScalar(self.num, kappa_denominator(cm.symmetrizers, self.kappa))
