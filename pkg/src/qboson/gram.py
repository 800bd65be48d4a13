"""Gram matrices of the form, their kernels, and basis expansions.

Elimination is fraction-free (Bareiss) over Z[q]: every row is first cleared
of denominators, then each step divides exactly by the previous pivot.
Kernel vectors are recovered by back substitution in Q(q).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .diagrams import form_graph, form_graph_words
from .foundations import (ONE, ZERO, CartanMatrix, LaurentPoly, RatScalar, SizeGuardError,
                          _exact_div, _zz_gcd, q_fact, series_expand)
from .freealg import AlgElement, ZLetter, bar_map, divided_power, embed_level
from .lusztig import form_lusztig
from .straighten import form_alg, form_alg_words, straighten

__all__ = [
    "SizeGuardError", "SingularGramError", "InconsistentError", "GramMatrix",
    "gram_matrix", "kernel_rank", "words_with_content", "quotient_dim", "expand_in_basis",
    "sz_basis_sl2", "PositivityReport", "positivity_probe", "form_words",
    "sz_product_check", "sz_bar_check",
]

DEFAULT_WORD_LIMIT = 2000


class SingularGramError(ArithmeticError):
    pass


class InconsistentError(ArithmeticError):
    pass


def form_words(u: Sequence, v: Sequence, cm: CartanMatrix, engine: str = "graphical") -> RatScalar:
    if engine == "graphical":
        return form_graph_words(u, v, cm).to_scalar(cm)
    if engine == "algebraic":
        return form_alg_words(u, v, cm).to_scalar(cm)
    raise ValueError(f"unknown engine {engine!r}")


def _form(x: AlgElement, y: AlgElement, engine: str) -> RatScalar:
    return form_graph(x, y) if engine == "graphical" else form_alg(x, y)


@dataclass
class GramMatrix:
    row_basis: list
    col_basis: list
    entries: list
    engine: str
    cartan: CartanMatrix = field(repr=False)

    def to_csv(self) -> str:
        from .syntax import format_scalar, format_word
        cm = self.cartan
        head = [""] + [format_word(w, cm) for w in self.col_basis]
        lines = [",".join(f'"{h}"' for h in head)]
        for w, row in zip(self.row_basis, self.entries):
            cells = [format_word(w, cm)] + [format_scalar(x) for x in row]
            lines.append(",".join(f'"{c}"' for c in cells))
        return "\n".join(lines) + "\n"


def gram_matrix(words: Sequence, engine: str = "graphical", cm: CartanMatrix | None = None,
                cols: Sequence | None = None) -> GramMatrix:
    """Entries form(row word, column word); columns default to the rows."""
    if cm is None:
        raise ValueError("gram_matrix needs the Cartan datum")
    rows = [tuple(ZLetter(*x) for x in w) for w in words]
    colw = rows if cols is None else [tuple(ZLetter(*x) for x in w) for w in cols]
    entries = [[form_words(u, v, cm, engine) for v in colw] for u in rows]
    return GramMatrix(rows, list(colw), entries, engine, cm)


# ---------------------------------------------------------------------------
# fraction-free elimination
# ---------------------------------------------------------------------------

def _poly_lcm(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    # both are polynomials with positive constant term (canonical denominators)
    if a.coeffs == (1,):
        return b
    if b.coeffs == (1,):
        return a
    g = _zz_gcd(a.coeffs, b.coeffs)
    if isinstance(g, int):
        g = (g,)
    return LaurentPoly(0, _exact_div(a.coeffs, g)) * b


def _clear_row(row: Sequence[RatScalar]) -> list[LaurentPoly]:
    den = LaurentPoly(0, (1,))
    for x in row:
        if not x.is_zero():
            den = _poly_lcm(den, x.den)
    out = []
    for x in row:
        if x.is_zero():
            out.append(LaurentPoly())
        else:
            out.append(x.num * den.exact_div(x.den))
    low = min((p.low for p in out if not p.is_zero()), default=0)
    return [p.shift(-low) if not p.is_zero() else p for p in out]


def _bareiss(rows: list[list[LaurentPoly]]) -> tuple[list[list[LaurentPoly]], list[int]]:
    m = [list(r) for r in rows]
    n_rows = len(m)
    n_cols = len(m[0]) if m else 0
    pivots: list[int] = []
    prev = LaurentPoly(0, (1,))
    r = 0
    for c in range(n_cols):
        if r >= n_rows:
            break
        pr = next((k for k in range(r, n_rows) if not m[k][c].is_zero()), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        piv = m[r][c]
        for k in range(r + 1, n_rows):
            lead = m[k][c]
            for cc in range(c, n_cols):
                val = piv * m[k][cc] - lead * m[r][cc]
                if not val.is_zero():
                    q = val.exact_div(prev)
                    if q is None:
                        raise ArithmeticError("Bareiss step lost exactness")
                    val = q
                m[k][cc] = val
            # column c of row k is now zero
        # rows above r keep their entries; earlier rows stay scaled consistently
        for k in range(r + 1, n_rows):
            for cc in range(0, c):
                if not m[k][cc].is_zero():
                    m[k][cc] = LaurentPoly()
        prev = piv
        pivots.append(c)
        r += 1
    return m, pivots


def kernel_rank(g: GramMatrix) -> tuple[int, list[AlgElement]]:
    """Rank and a basis of the right kernel (as combinations of column words)."""
    cm = g.cartan
    if not g.entries or not g.col_basis:
        kern = [AlgElement.word(cm, w) for w in g.col_basis]
        return 0, kern
    rows = [_clear_row(r) for r in g.entries]
    ech, pivots = _bareiss(rows)
    rank = len(pivots)
    n_cols = len(g.col_basis)
    free = [c for c in range(n_cols) if c not in pivots]
    kernel = []
    for f in free:
        x: dict[int, RatScalar] = {f: ONE}
        for k in range(rank - 1, -1, -1):
            pc = pivots[k]
            acc = ZERO
            for c in range(pc + 1, n_cols):
                if c in x and not ech[k][c].is_zero():
                    acc = acc + RatScalar.from_laurent(ech[k][c]) * x[c]
            x[pc] = -acc / RatScalar.from_laurent(ech[k][pc])
        kernel.append(AlgElement(cm, {g.col_basis[c]: v for c, v in x.items()}))
    return rank, kernel


# ---------------------------------------------------------------------------
# quotient dimensions
# ---------------------------------------------------------------------------

def words_with_content(content: Iterable) -> list[tuple]:
    """Distinct orderings of a letter multiset, in lexicographic order."""
    letters = sorted(ZLetter(*x) for x in content)
    out = []

    def rec(prefix: list, rest: list):
        if not rest:
            out.append(tuple(prefix))
            return
        for k, x in enumerate(rest):
            if k and rest[k - 1] == x:
                continue
            rec(prefix + [x], rest[:k] + rest[k + 1:])

    rec([], letters)
    return out


def _multinomial(content: Sequence) -> int:
    counts: dict = {}
    for x in content:
        counts[tuple(x)] = counts.get(tuple(x), 0) + 1
    out = math.factorial(len(content))
    for c in counts.values():
        out //= math.factorial(c)
    return out


def quotient_dim(cm: CartanMatrix, content: Sequence, engine: str = "graphical",
                 limit: int = DEFAULT_WORD_LIMIT) -> int:
    """Dimension of the span of all words with the given letter multiset, modulo the kernel."""
    n_words = _multinomial(content)
    if n_words > limit:
        raise SizeGuardError("max_words", n_words, limit)
    words = words_with_content(content)
    rank, _ = kernel_rank(gram_matrix(words, engine, cm))
    return rank


# ---------------------------------------------------------------------------
# expansion in a basis
# ---------------------------------------------------------------------------

def _solve(matrix: list[list[RatScalar]], rhs: list[RatScalar]) -> list[RatScalar]:
    n = len(matrix)
    a = [list(r) + [b] for r, b in zip(matrix, rhs)]
    for c in range(n):
        pr = next((k for k in range(c, n) if not a[k][c].is_zero()), None)
        if pr is None:
            raise SingularGramError("the Gram block of the basis is singular")
        a[c], a[pr] = a[pr], a[c]
        inv = a[c][c].inverse()
        a[c] = [x * inv for x in a[c]]
        for k in range(n):
            if k != c and not a[k][c].is_zero():
                f = a[k][c]
                a[k] = [x - f * y for x, y in zip(a[k], a[c])]
    return [a[k][n] for k in range(n)]


def _level_blocks(x: AlgElement) -> dict:
    """Group reduced words by their per-level letter multisets."""
    blocks: dict = {}
    for w in x.terms:
        key = tuple(sorted(w))
        blocks.setdefault(key, []).append(w)
    return blocks


def _reduced_words_with_content(content: tuple) -> list[tuple]:
    by_level: dict = {}
    for x in content:
        by_level.setdefault(x.level, []).append(x)
    parts = [words_with_content(by_level[lv]) for lv in sorted(by_level)]
    return [sum(combo, ()) for combo in itertools.product(*parts)]


def _is_null(x: AlgElement, engine: str) -> bool:
    """Whether x lies in the kernel of the form.

    After straightening, x is a combination of reduced words; the form pairs
    reduced words only within the same per-level content, so testing against
    every reduced word of each occurring content decides membership.
    """
    red = straighten(x)
    cm = x.cartan
    for content, _ in _level_blocks(red).items():
        for z in _reduced_words_with_content(content):
            if not _form(AlgElement.word(cm, z), red, engine).is_zero():
                return False
    return True


def expand_in_basis(target: AlgElement, basis: Sequence[AlgElement],
                    engine: str = "graphical") -> list[RatScalar]:
    """Coefficients x with target = sum x_k basis_k modulo the kernel of the form."""
    if not basis:
        if _is_null(target, engine):
            return []
        raise InconsistentError("target is nonzero and the basis is empty")
    g = [[_form(b, c, engine) for c in basis] for b in basis]
    rhs = [_form(b, target, engine) for b in basis]
    x = _solve(g, rhs)
    residual = target
    for coef, b in zip(x, basis):
        residual = residual - b.scale(coef)
    if any(not _form(b, residual, engine).is_zero() for b in basis):
        raise InconsistentError("residual is not orthogonal to the basis")
    if not _is_null(residual, engine):
        raise InconsistentError("target lies outside the span of the basis modulo the kernel")
    return x


# ---------------------------------------------------------------------------
# sl2: products of divided powers across levels
# ---------------------------------------------------------------------------

def _require_rank_one(cm: CartanMatrix) -> None:
    if cm.rank != 1:
        raise ValueError("this construction needs a rank-1 Cartan datum")


def sz_basis_sl2(cm: CartanMatrix, levels: Iterable[int], max_power: int) -> list[AlgElement]:
    """All products of E^(a_n) at level n over ascending levels, a_n <= max_power."""
    _require_rank_one(cm)
    lv = sorted(set(levels))
    out = []
    for powers in itertools.product(range(max_power + 1), repeat=len(lv)):
        x = AlgElement.one(cm)
        for n, a in zip(lv, powers):
            x = x * embed_level(n, divided_power(cm, 0, 0, a))
        out.append(straighten(x))
    return out


@dataclass
class PositivityReport:
    """Outcome of the heuristic positivity probe on structure constants.

    ``window_failures`` lists coefficients whose series window has a negative
    or non-integral entry.  ``shape_failures`` lists coefficients whose
    reduced denominator is not a power of 1 - q^2 (up to units); these are
    reported separately because divided powers genuinely produce factors
    such as 1 - q^4.
    """
    checked: int
    window_failures: list
    shape_failures: list
    window: tuple[int, int]
    heuristic: bool = True

    @property
    def ok(self) -> bool:
        return not self.window_failures


def _basis_coefficients(x: AlgElement, cm: CartanMatrix) -> dict:
    """Coefficients of a reduced element on the divided-power products."""
    out = {}
    for w, c in straighten(x).terms.items():
        scale = ONE
        counts: dict = {}
        for letter in w:
            counts[letter.level] = counts.get(letter.level, 0) + 1
        for a in counts.values():
            scale = scale * q_fact(cm, 0, a)
        out[w] = c * scale
    return out


def positivity_probe(cm: CartanMatrix, levels: Iterable[int] = (0, 1), max_power: int = 2,
                     window: tuple[int, int] = (-10, 10)) -> PositivityReport:
    """Expand all products of two basis elements and inspect each coefficient."""
    _require_rank_one(cm)
    basis = sz_basis_sl2(cm, levels, max_power)
    window_failures, shape_failures = [], []
    checked = 0
    for x, y in itertools.product(basis, repeat=2):
        for w, c in _basis_coefficients(x * y, cm).items():
            checked += 1
            series = series_expand(c, *window)
            if not all(isinstance(v, int) and v >= 0 for v in series.values()):
                window_failures.append((x, y, w, c))
            if not c.in_boson_ring(cm):
                shape_failures.append((x, y, w, c))
    return PositivityReport(checked, window_failures, shape_failures, window)


def _two_level(cm: CartanMatrix, a: int, b: int) -> AlgElement:
    return divided_power(cm, 0, 0, a) * divided_power(cm, 0, 1, b)


def sz_product_check(cm: CartanMatrix, max_power: int = 3, engine: str = "graphical") -> tuple[int, list]:
    """(X, Y) = (E^(a), E^(a'))_L (E^(b), E^(b'))_L whenever a <= a' and b <= b'.

    X = E_0^(a) E_1^(b) and Y = E_0^(a') E_1^(b').  Returns (checked, failures).
    """
    _require_rank_one(cm)
    dp = [divided_power(cm, 0, 0, a) for a in range(max_power + 1)]
    checked, failures = 0, []
    for a, b, a2, b2 in itertools.product(range(max_power + 1), repeat=4):
        if a > a2 or b > b2:
            continue
        checked += 1
        lhs = _form(_two_level(cm, a, b), _two_level(cm, a2, b2), engine)
        rhs = form_lusztig(dp[a], dp[a2]) * form_lusztig(dp[b], dp[b2])
        if lhs != rhs:
            failures.append((a, b, a2, b2))
    return checked, failures


def sz_bar_check(cm: CartanMatrix, max_power: int = 3, engine: str = "graphical") -> tuple[int, list]:
    """(bar X, Y) = q^c (rev X_0, Y_0)_L (rev X_1, Y_1)_L with c = (gr X_0, gr X_1).

    rev fixes divided powers, and ``form_lusztig`` already conjugates its first
    argument, so the Lusztig factors are taken on conjugated divided powers.
    """
    _require_rank_one(cm)
    dp = [divided_power(cm, 0, 0, a) for a in range(max_power + 1)]
    sym = cm.sym(0, 0)
    checked, failures = 0, []
    for a, b, a2, b2 in itertools.product(range(max_power + 1), repeat=4):
        checked += 1
        lhs = _form(bar_map(_two_level(cm, a, b)), _two_level(cm, a2, b2), engine)
        rhs = (RatScalar.q(sym * a * b) * form_lusztig(bar_map(dp[a]), dp[a2])
               * form_lusztig(bar_map(dp[b]), dp[b2]))
        if lhs != rhs:
            failures.append((a, b, a2, b2))
    return checked, failures
