"""Text and JSON forms of scalars, words and elements.

Scalars are rational expressions in ``q`` such as ``q^2/(1-q^2)^2``.  A word is
written ``[0:i,1:j]`` (level, colon, vertex label).  Elements combine both, e.g.
``q^-2*[0:i,1:i] + (1/(1-q^2))*[]``; a product of two words concatenates them.
Everything the printers emit is accepted by the parser.

>>> from qboson.foundations import CartanMatrix
>>> cm = CartanMatrix.preset("A1")
>>> x = parse_element("q^-2*[0:i,1:i] + (1/(1-q^2))*[]", cm)
>>> format_element(x)
'q^-2*[0:i,1:i] + (1/(1-q^2))*[]'
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

from .foundations import ONE, CartanMatrix, LaurentPoly, RatScalar
from .freealg import AlgElement, ZLetter

__all__ = [
    "ParseError", "format_laurent", "format_scalar", "format_word",
    "format_element", "parse_scalar", "parse_word", "parse_element",
    "scalar_to_json", "scalar_from_json", "element_to_json",
    "element_from_json", "denominator_hints", "format_form_value",
]


class ParseError(ValueError):
    def __init__(self, message: str, text: str = "", pos: int = -1):
        where = f" at position {pos}" if pos >= 0 else ""
        super().__init__(f"{message}{where}" + (f" in {text!r}" if text else ""))
        self.pos = pos


# ---------------------------------------------------------------------------
# printing
# ---------------------------------------------------------------------------

def _monomial(exp: int, coeff: int, first: bool) -> str:
    sign = "-" if coeff < 0 else ("" if first else "+")
    c = abs(coeff)
    if exp == 0:
        return f"{sign}{c}"
    qpart = "q" if exp == 1 else f"q^{exp}"
    return f"{sign}{qpart}" if c == 1 else f"{sign}{c}*{qpart}"


def format_laurent(p: LaurentPoly) -> str:
    """Terms in descending exponent order, e.g. ``2+q^-2``."""
    terms = sorted(p.terms(), reverse=True)
    if not terms:
        return "0"
    return "".join(_monomial(e, c, k == 0) for k, (e, c) in enumerate(terms))


def _wrap(s: str, n_terms: int) -> str:
    return f"({s})" if n_terms > 1 else s


def denominator_hints(cm: CartanMatrix) -> list[int]:
    """The exponents 2*d_v, one per vertex in label order."""
    return [2 * d for d in cm.symmetrizers]


def _factor_denominator(den: LaurentPoly, hints: Sequence[int]) -> list[str]:
    rest = den
    factors: list[str] = []
    candidates = list(hints) + list(range(max(rest.high, 0), 0, -1))
    seen: set[int] = set()
    for k in candidates:
        if k <= 0 or (k in seen and k not in hints):
            continue
        seen.add(k)
        f = LaurentPoly.one_minus_q(k)
        mult = 0
        while rest.high >= k:
            quo = rest.exact_div(f)
            if quo is None:
                break
            rest, mult = quo, mult + 1
        if mult:
            factors.append(f"(1-q^{k})" + (f"^{mult}" if mult > 1 else ""))
    if rest.coeffs != (1,):
        n_terms = sum(1 for c in rest.coeffs if c)
        factors.insert(0, _wrap(format_laurent(rest), n_terms))
    return factors


def format_scalar(x: RatScalar, hints: Sequence[int] = ()) -> str:
    """Print a scalar; denominators are split into ``(1-q^k)`` factors.

    ``hints`` lists factor exponents to try first, in order, and may repeat
    an exponent to print one factor per vertex.
    """
    num = format_laurent(x.num)
    if x.den.coeffs == (1,):
        return num
    n_num = sum(1 for c in x.num.coeffs if c)
    factors = _factor_denominator(x.den, hints)
    den = factors[0] if len(factors) == 1 else "(" + "*".join(factors) + ")"
    return f"{_wrap(num, n_num)}/{den}"


def format_form_value(x: RatScalar, cm: CartanMatrix, kappa: Sequence[int]) -> str:
    """Print a form value as numerator over per-vertex factors (1-q^(2 d_v))^kappa_v.

    Falls back to :func:`format_scalar` if the value does not fit that shape.
    """
    den = LaurentPoly(0, (1,))
    factors = []
    for v, k in enumerate(kappa):
        if k:
            e = 2 * cm.d(v)
            den = den * LaurentPoly.one_minus_q(e) ** k
            factors.append(f"(1-q^{e})" + (f"^{k}" if k > 1 else ""))
    if not factors or x.is_zero():
        return format_scalar(x)
    num = x * RatScalar.from_laurent(den)
    if not num.is_laurent():
        return format_scalar(x)
    n_num = sum(1 for c in num.num.coeffs if c)
    d = factors[0] if len(factors) == 1 else "(" + "*".join(factors) + ")"
    return f"{_wrap(format_laurent(num.num), n_num)}/{d}"


def format_word(w: Sequence, cm: CartanMatrix) -> str:
    return "[" + ",".join(f"{lv}:{cm.labels[v]}" for lv, v in w) + "]"


def format_element(x: AlgElement, hints: Sequence[int] = ()) -> str:
    """Terms are printed longest word first (the reverse of the storage order)."""
    if x.is_zero():
        return "0"
    parts: list[str] = []
    for k, (w, c) in enumerate(reversed(x.terms.items())):
        ws = format_word(w, x.cartan)
        neg = False
        if c == ONE:
            piece = ws
        elif c == -ONE:
            piece, neg = ws, True
        elif c.is_laurent() and c.num.is_monomial():
            (e, coeff), = c.num.terms()
            neg = coeff < 0
            piece = _monomial(e, abs(coeff), True) + "*" + ws
        else:
            piece = "(" + format_scalar(c, hints) + ")*" + ws
        if k == 0:
            parts.append(("-" if neg else "") + piece)
        else:
            parts.append((" - " if neg else " + ") + piece)
    return "".join(parts)


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|(q)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


@dataclass
class _Tok:
    kind: str
    text: str
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    toks: list[_Tok] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        if m.group(0).strip() == "":
            break
        start = m.start(m.lastindex)
        if m.group(1):
            toks.append(_Tok("int", m.group(1), start))
        elif m.group(2):
            toks.append(_Tok("q", "q", start))
        elif m.group(3):
            toks.append(_Tok("name", m.group(3), start))
        else:
            toks.append(_Tok("op", m.group(4), start))
        pos = m.end()
    toks.append(_Tok("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, cm: CartanMatrix | None):
        self.text = text
        self.cm = cm
        self.toks = _tokenize(text)
        self.k = 0

    def peek(self) -> _Tok:
        return self.toks[self.k]

    def take(self) -> _Tok:
        t = self.toks[self.k]
        self.k += 1
        return t

    def expect(self, op: str) -> _Tok:
        t = self.take()
        if t.text != op:
            self.fail(f"expected {op!r}, found {t.text or 'end of input'!r}", t.pos)
        return t

    def fail(self, msg: str, pos: int):
        raise ParseError(msg, self.text, pos)

    # values are RatScalar or AlgElement
    def parse(self):
        v = self.expr()
        t = self.peek()
        if t.kind != "end":
            self.fail(f"unexpected {t.text!r}", t.pos)
        return v

    def expr(self):
        v = self.term()
        while self.peek().text in ("+", "-") and self.peek().kind == "op":
            op = self.take().text
            rhs = self.term()
            v = self.combine(v, rhs, op)
        return v

    def combine(self, a, b, op):
        if isinstance(a, AlgElement) or isinstance(b, AlgElement):
            a, b = self.lift(a), self.lift(b)
        return a + b if op == "+" else a - b

    def lift(self, v) -> AlgElement:
        if isinstance(v, AlgElement):
            return v
        return AlgElement.scalar(self.cm, v)

    def term(self):
        v = self.unary()
        while self.peek().kind == "op" and self.peek().text in ("*", "/"):
            op = self.take()
            rhs = self.unary()
            if op.text == "*":
                if isinstance(v, AlgElement) and isinstance(rhs, AlgElement):
                    v = v * rhs
                elif isinstance(v, AlgElement):
                    v = v.scale(rhs)
                elif isinstance(rhs, AlgElement):
                    v = rhs.scale(v)
                else:
                    v = v * rhs
            else:
                if isinstance(rhs, AlgElement):
                    self.fail("cannot divide by an element", op.pos)
                if rhs.is_zero():
                    self.fail("division by zero", op.pos)
                v = v / rhs
        return v

    def unary(self):
        t = self.peek()
        if t.kind == "op" and t.text in ("-", "+"):
            self.take()
            v = self.unary()
            return -v if t.text == "-" else v
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek().kind == "op" and self.peek().text == "^":
            self.take()
            n = self.signed_int()
            if isinstance(base, AlgElement):
                if n < 0:
                    self.fail("negative power of an element", self.peek().pos)
                return base ** n
            if n < 0 and base.is_zero():
                self.fail("division by zero", self.peek().pos)
            return base ** n
        return base

    def signed_int(self) -> int:
        sign = 1
        t = self.peek()
        if t.kind == "op" and t.text in ("-", "+"):
            self.take()
            sign = -1 if t.text == "-" else 1
        t = self.take()
        if t.kind == "op" and t.text == "(":
            n = self.signed_int()
            self.expect(")")
            return sign * n
        if t.kind != "int":
            self.fail("expected an integer", t.pos)
        return sign * int(t.text)

    def atom(self):
        t = self.take()
        if t.kind == "int":
            return RatScalar(int(t.text))
        if t.kind == "q":
            return RatScalar.q()
        if t.kind == "op" and t.text == "(":
            v = self.expr()
            self.expect(")")
            return v
        if t.kind == "op" and t.text == "[":
            if self.cm is None:
                self.fail("words need a Cartan datum", t.pos)
            return AlgElement.word(self.cm, self.word_body())
        self.fail(f"unexpected {t.text or 'end of input'!r}", t.pos)

    def word_body(self) -> tuple:
        letters = []
        if self.peek().text == "]":
            self.take()
            return ()
        while True:
            level = self.signed_int()
            self.expect(":")
            t = self.take()
            if t.kind not in ("name", "int", "q"):
                self.fail("expected a vertex label", t.pos)
            try:
                v = self.cm.index(t.text)
            except KeyError:
                self.fail(f"unknown vertex label {t.text!r}", t.pos)
            letters.append(ZLetter(level, v))
            t = self.take()
            if t.text == "]":
                return tuple(letters)
            if t.text != ",":
                self.fail("expected ',' or ']'", t.pos)


def parse_scalar(text: str) -> RatScalar:
    v = _Parser(text, None).parse()
    if isinstance(v, AlgElement):
        raise ParseError("expected a scalar", text)
    return v


def parse_element(text: str, cm: CartanMatrix) -> AlgElement:
    v = _Parser(text, cm).parse()
    return v if isinstance(v, AlgElement) else AlgElement.scalar(cm, v)


def parse_word(text: str, cm: CartanMatrix) -> tuple:
    p = _Parser(text, cm)
    p.expect("[")
    w = p.word_body()
    t = p.peek()
    if t.kind != "end":
        p.fail("trailing input after word", t.pos)
    return w


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------

def scalar_to_json(x: RatScalar) -> dict:
    return {"num": [[e, c] for e, c in x.num.terms()],
            "den": [[e, c] for e, c in x.den.terms()]}


def scalar_from_json(obj: dict) -> RatScalar:
    try:
        num = LaurentPoly.from_dict({int(e): int(c) for e, c in obj["num"]})
        den = LaurentPoly.from_dict({int(e): int(c) for e, c in obj.get("den", [[0, 1]])})
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed scalar JSON: {exc}") from None
    if den.is_zero():
        raise ParseError("scalar JSON has a zero denominator")
    return RatScalar(num, den)


def element_to_json(x: AlgElement) -> list:
    return [{"scalar": scalar_to_json(c), "word": format_word(w, x.cartan)}
            for w, c in x.terms.items()]


def element_from_json(obj: list, cm: CartanMatrix) -> AlgElement:
    terms: dict = {}
    for item in obj:
        w = parse_word(item["word"], cm)
        c = scalar_from_json(item["scalar"])
        terms[w] = terms[w] + c if w in terms else c
    return AlgElement(cm, terms)
