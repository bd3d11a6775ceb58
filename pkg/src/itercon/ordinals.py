"""Ordinal notations in Cantor normal form below epsilon_0.

A notation is a finite sum  w^e1*c1 + ... + w^ek*ck  with exponents themselves
notations, strictly decreasing, and coefficients >= 1.  The empty sum is 0.

Text grammar (no whitespace):

    ord    := "0" | term ("+" term)*
    term   := NUM | "w" ("^" factor)? ("*" NUM)?
    factor := NUM | "w" | "(" ord ")"

Canonical text omits "*1" and "^1"; parse and render are mutually inverse on
canonical text, and parse rejects well-formed but non-canonical spellings
(wrong term order, "w*1", "w^1", "(2)") with NonCanonical.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from functools import lru_cache, total_ordering

from .errors import NonCanonical, NotALimit, NotASuccessor, ParseError, SizeCapExceeded

SIZE_CAP = 512


class Order(enum.Enum):
    LT = "LT"
    EQ = "EQ"
    GT = "GT"


class Kind(enum.Enum):
    ZERO = "Zero"
    SUCCESSOR = "Successor"
    LIMIT = "Limit"


@total_ordering
@dataclass(frozen=True)
class Ordinal:
    """Cantor normal form: tuple of (exponent, coefficient) pairs."""

    terms: tuple[tuple["Ordinal", int], ...] = ()

    def __post_init__(self):
        for exp, coeff in self.terms:
            if coeff < 1:
                raise ValueError("coefficients must be >= 1")
        for (e1, _), (e2, _) in zip(self.terms, self.terms[1:]):
            if compare(e1, e2) is not Order.GT:
                raise ValueError("exponents must be strictly decreasing")
        if self.size() > SIZE_CAP:
            raise SizeCapExceeded(f"notation exceeds {SIZE_CAP} nodes")

    def size(self) -> int:
        return sum(1 + exp.size() for exp, _ in self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __str__(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return f"Ordinal({render(self)!r})"

    def __eq__(self, other):
        if not isinstance(other, Ordinal):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(self.terms)

    def __lt__(self, other):
        if not isinstance(other, Ordinal):
            return NotImplemented
        return compare(self, other) is Order.LT


ZERO = Ordinal()
ONE = Ordinal(((ZERO, 1),))
OMEGA = Ordinal(((ONE, 1),))


def from_int(n: int) -> Ordinal:
    if n < 0:
        raise ValueError("finite ordinals are non-negative")
    return Ordinal(((ZERO, n),)) if n else ZERO


def as_int(a: Ordinal) -> int | None:
    """The natural number a denotes, or None if a >= w."""
    if a.is_zero():
        return 0
    if len(a.terms) == 1 and a.terms[0][0].is_zero():
        return a.terms[0][1]
    return None


def omega_power(exp: Ordinal, coeff: int = 1) -> Ordinal:
    return Ordinal(((exp, coeff),))


def compare(a: Ordinal, b: Ordinal) -> Order:
    """Total order on notations; lexicographic on the term sequences."""
    for (ea, ca), (eb, cb) in zip(a.terms, b.terms):
        by_exp = compare(ea, eb)
        if by_exp is not Order.EQ:
            return by_exp
        if ca != cb:
            return Order.LT if ca < cb else Order.GT
    if len(a.terms) == len(b.terms):
        return Order.EQ
    # equal prefix: the longer sum adds smaller terms on top, so it is larger
    return Order.LT if len(a.terms) < len(b.terms) else Order.GT


def classify(a: Ordinal) -> Kind:
    if a.is_zero():
        return Kind.ZERO
    last_exp, _ = a.terms[-1]
    return Kind.SUCCESSOR if last_exp.is_zero() else Kind.LIMIT


def predecessor(a: Ordinal) -> Ordinal:
    if classify(a) is not Kind.SUCCESSOR:
        raise NotASuccessor(f"{render(a)} is not a successor")
    head, (exp, coeff) = a.terms[:-1], a.terms[-1]
    if coeff > 1:
        return Ordinal(head + ((exp, coeff - 1),))
    return Ordinal(head)


def fundamental_step(a: Ordinal, n: int) -> Ordinal:
    """n-th member of the standard fundamental sequence of a limit notation.

    w^(b+1) steps through w^b*n and a limit exponent steps inside:
    w^lam steps through w^(lam[n]).  Leading summands are carried over, a
    trailing coefficient c > 1 splits off c - 1 copies first.
    """
    if n < 0:
        raise ValueError("fundamental sequence index must be >= 0")
    if classify(a) is not Kind.LIMIT:
        raise NotALimit(f"{render(a)} is not a limit")
    head, (exp, coeff) = a.terms[:-1], a.terms[-1]
    if coeff > 1:
        head = head + ((exp, coeff - 1),)
    if classify(exp) is Kind.SUCCESSOR:
        step = ((predecessor(exp), n),) if n > 0 else ()
    else:  # limit exponent
        step = ((fundamental_step(exp, n), 1),)
    return Ordinal(head + step)


# --- text form ---------------------------------------------------------------


def render(a: Ordinal) -> str:
    if a.is_zero():
        return "0"
    return "+".join(_render_term(exp, coeff) for exp, coeff in a.terms)


def _render_term(exp: Ordinal, coeff: int) -> str:
    if exp.is_zero():
        return str(coeff)
    text = "w"
    if exp != ONE:
        text += "^" + _render_factor(exp)
    if coeff != 1:
        text += "*" + str(coeff)
    return text


def _render_factor(exp: Ordinal) -> str:
    if exp == OMEGA:
        return "w"
    n = as_int(exp)
    if n is not None:
        return str(n)
    return "(" + render(exp) + ")"


_TOKEN = re.compile(r"0|[1-9][0-9]*|[w^*+()]")


def _tokenize(text: str) -> list[str]:
    tokens, pos = [], 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"bad character at position {pos}: {text[pos]!r}")
        tokens.append(m.group())
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, tokens: list[str]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> str | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self) -> str:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input")
        self.pos += 1
        return tok

    def expect(self, tok: str):
        got = self.take()
        if got != tok:
            raise ParseError(f"expected {tok!r}, got {got!r}")

    def parse_ord(self) -> Ordinal:
        if self.peek() == "0":
            self.take()
            return ZERO
        terms = [self.parse_term()]
        while self.peek() == "+":
            self.take()
            terms.append(self.parse_term())
        for (e1, _), (e2, _) in zip(terms, terms[1:]):
            if compare(e1, e2) is not Order.GT:
                raise NonCanonical("terms must have strictly decreasing exponents")
        return Ordinal(tuple(terms))

    def parse_term(self) -> tuple[Ordinal, int]:
        tok = self.take()
        if tok.isdigit():
            if tok == "0":
                raise ParseError("0 is not a summand")
            return (ZERO, int(tok))
        if tok != "w":
            raise ParseError(f"expected a term, got {tok!r}")
        exp = ONE
        if self.peek() == "^":
            self.take()
            exp = self.parse_factor()
        coeff = 1
        if self.peek() == "*":
            self.take()
            num = self.take()
            if not num.isdigit() or num == "0":
                raise ParseError("coefficient must be a decimal >= 1")
            coeff = int(num)
            if coeff == 1:
                raise NonCanonical("canonical text omits *1")
        return (exp, coeff)

    def parse_factor(self) -> Ordinal:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input")
        if tok.isdigit():
            self.take()
            if tok == "0":
                raise ParseError("w^0 is not canonical (write the coefficient)")
            if tok == "1":
                raise NonCanonical("canonical text omits ^1")
            return from_int(int(tok))
        if tok == "w":
            self.take()
            return OMEGA
        if tok == "(":
            self.take()
            inner = self.parse_ord()
            self.expect(")")
            if inner.is_zero():
                raise ParseError("w^0 is not canonical (write the coefficient)")
            if _render_factor(inner) != "(" + render(inner) + ")":
                # a bare NUM or w must not be parenthesized
                raise NonCanonical("factor parentheses only around compound exponents")
            return inner
        raise ParseError(f"expected a factor, got {tok!r}")


@lru_cache(maxsize=4096)
def parse_ordinal(text: str) -> Ordinal:
    parser = _Parser(_tokenize(text))
    result = parser.parse_ord()
    if parser.peek() is not None:
        raise ParseError(f"trailing input: {parser.tokens[parser.pos:]}")
    if render(result) != text:
        raise NonCanonical(f"{text!r} is not canonical (canonical: {render(result)!r})")
    return result


class NotationSystem:
    """Minimal interface for an elementary linear order with a step function.

    The construction machinery only needs compare/classify/predecessor/
    fundamental_step, so alternative notation systems can slot in here.
    """

    zero: object

    def compare(self, a, b) -> Order:
        raise NotImplementedError

    def classify(self, a) -> Kind:
        raise NotImplementedError

    def predecessor(self, a):
        raise NotImplementedError

    def fundamental_step(self, a, n: int):
        raise NotImplementedError


class CantorNormalForm(NotationSystem):
    zero = ZERO
    compare = staticmethod(compare)
    classify = staticmethod(classify)
    predecessor = staticmethod(predecessor)
    fundamental_step = staticmethod(fundamental_step)
    parse = staticmethod(parse_ordinal)
    render = staticmethod(render)


CANTOR = CantorNormalForm()
