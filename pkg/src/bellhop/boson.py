"""Symbolic boson operator algebra: words in a / a-dagger, exact rational
expressions, normal ordering under [a, ad] = 1, forgetful ordering, and
coherent-state expectation values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import ExpressionParseError, ResourceLimitError

# word letters
A = 0   # annihilation operator a
AD = 1  # creation operator a-dagger

ORDERING_LIMIT = 12
MOMENT_LIMIT = 24

Word = tuple[int, ...]


class BosonExpression:
    """Finite rational linear combination of boson words."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[Word, Fraction] | None = None):
        self.terms: dict[Word, Fraction] = {}
        if terms:
            for w, c in terms.items():
                c = Fraction(c)
                if c:
                    self.terms[w] = c

    @classmethod
    def a(cls) -> "BosonExpression":
        return cls({(A,): Fraction(1)})

    @classmethod
    def ad(cls) -> "BosonExpression":
        return cls({(AD,): Fraction(1)})

    @classmethod
    def one(cls) -> "BosonExpression":
        return cls({(): Fraction(1)})

    @classmethod
    def from_word(cls, word: Iterable[int], coeff=1) -> "BosonExpression":
        return cls({tuple(word): Fraction(coeff)})

    def __add__(self, other: "BosonExpression") -> "BosonExpression":
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, Fraction(0)) + c
        return BosonExpression(out)

    def __sub__(self, other: "BosonExpression") -> "BosonExpression":
        return self + (other * -1)

    def __mul__(self, other) -> "BosonExpression":
        if isinstance(other, (int, Fraction)):
            return BosonExpression({w: c * other for w, c in self.terms.items()})
        out: dict[Word, Fraction] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                out[w] = out.get(w, Fraction(0)) + c1 * c2
        return BosonExpression(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "BosonExpression":
        out = BosonExpression.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, BosonExpression) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def max_word_length(self) -> int:
        return max((len(w) for w in self.terms), default=0)

    def __str__(self) -> str:
        return format_expression(self)

    def __repr__(self) -> str:
        return f"BosonExpression({format_expression(self)!r})"


class NormalOrderedForm:
    """sum c_{rs} (ad)^r a^s with exact rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[tuple[int, int], Fraction] | None = None):
        self.terms: dict[tuple[int, int], Fraction] = {}
        if terms:
            for rs, c in terms.items():
                c = Fraction(c)
                if c:
                    self.terms[rs] = c

    def coefficient(self, r: int, s: int) -> Fraction:
        return self.terms.get((r, s), Fraction(0))

    def __eq__(self, other) -> bool:
        return isinstance(other, NormalOrderedForm) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def to_expression(self) -> BosonExpression:
        return BosonExpression(
            {(AD,) * r + (A,) * s: c for (r, s), c in self.terms.items()}
        )

    def __str__(self) -> str:
        return format_normal_form(self)

    def __repr__(self) -> str:
        return f"NormalOrderedForm({format_normal_form(self)!r})"


@lru_cache(maxsize=None)
def _normal_order_word(word: Word) -> tuple[tuple[tuple[int, int], int], ...]:
    # Left-to-right fold: append each letter to a normal-ordered accumulator.
    # Appending a is a shift; appending ad uses a^s ad = ad a^s + s a^(s-1).
    terms: dict[tuple[int, int], int] = {(0, 0): 1}
    for letter in word:
        new: dict[tuple[int, int], int] = {}
        for (r, s), c in terms.items():
            if letter == A:
                key = (r, s + 1)
                new[key] = new.get(key, 0) + c
            else:
                key = (r + 1, s)
                new[key] = new.get(key, 0) + c
                if s:
                    key = (r, s - 1)
                    new[key] = new.get(key, 0) + c * s
        terms = new
    return tuple(sorted(terms.items()))


def normal_order(expr: BosonExpression, limit: int = 2 * MOMENT_LIMIT) -> NormalOrderedForm:
    """Rewrite an expression under [a, ad] = 1 with all annihilators right.

    Words longer than ``limit`` letters are refused: the intermediate term
    count grows quadratically with word length.
    """
    out: dict[tuple[int, int], Fraction] = {}
    for word, coeff in expr.terms.items():
        if len(word) > limit:
            raise ResourceLimitError(
                f"word of length {len(word)} exceeds the ordering limit {limit}"
            )
        for rs, c in _normal_order_word(word):
            out[rs] = out.get(rs, Fraction(0)) + coeff * c
    return NormalOrderedForm(out)


def forgetful_normal_order(expr: BosonExpression) -> NormalOrderedForm:
    """Move creators left of annihilators, discarding commutator terms."""
    out: dict[tuple[int, int], Fraction] = {}
    for word, coeff in expr.terms.items():
        rs = (sum(1 for x in word if x == AD), sum(1 for x in word if x == A))
        out[rs] = out.get(rs, Fraction(0)) + coeff
    return NormalOrderedForm(out)


def number_word(n: int = 1) -> BosonExpression:
    """(ad a)^n as an expression."""
    return BosonExpression.from_word((AD, A)) ** n


def stirling_via_ordering(n: int, limit: int = ORDERING_LIMIT) -> tuple[int, ...]:
    """Diagonal coefficients S(n, 1..n) read off normal_order((ad a)^n)."""
    if n < 1:
        raise ValueError("n must be positive")
    if n > limit:
        raise ResourceLimitError(f"ordering for n={n} exceeds the limit {limit}")
    form = normal_order(number_word(n))
    out = []
    for k in range(1, n + 1):
        c = form.coefficient(k, k)
        if c.denominator != 1:
            raise AssertionError("diagonal coefficient is not an integer")
        out.append(c.numerator)
    return tuple(out)


# --------------------------------------------------------------------------
# Coherent states
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class CoherentParam:
    """Coherent-state label z.

    mod_sq, when set, carries |z|^2 exactly for a real nonnegative z; matrix
    elements with r+s even then evaluate in exact rational arithmetic even
    when z itself is irrational.
    """

    z: complex = 1
    mod_sq: Fraction | None = None

    @classmethod
    def from_mod_sq(cls, mod_sq) -> "CoherentParam":
        mod_sq = Fraction(mod_sq)
        if mod_sq < 0:
            raise ValueError("|z|^2 must be nonnegative")
        return cls(z=math.sqrt(mod_sq), mod_sq=mod_sq)

    def powers(self, r: int, s: int):
        """conj(z)^r * z^s, exact when possible."""
        if self.mod_sq is not None:
            if (r + s) % 2 == 0:
                return self.mod_sq ** ((r + s) // 2)
            return float(self.mod_sq) ** ((r + s - 1) // 2) * math.sqrt(self.mod_sq)
        z = self.z
        if isinstance(z, (int, Fraction)):
            return Fraction(z) ** (r + s)
        z = complex(z)
        return z.conjugate() ** r * z**s


def coherent_expectation(form: NormalOrderedForm, z) -> Fraction | float | complex:
    """<z| form |z> by the eigenvalue property: (r,s) term -> conj(z)^r z^s."""
    param = z if isinstance(z, CoherentParam) else CoherentParam(z=z)
    acc = None
    for (r, s), c in form.terms.items():
        contrib = c * param.powers(r, s)
        acc = contrib if acc is None else acc + contrib
    return Fraction(0) if acc is None else acc


def word_moments(w: BosonExpression, nmax: int, z, limit: int = MOMENT_LIMIT) -> list:
    """Moments W_n = <z| w^n |z> for n = 0..nmax; W_0 = 1."""
    if nmax < 0:
        raise ValueError("nmax must be nonnegative")
    if nmax > limit or nmax * w.max_word_length() > limit * 2:
        raise ResourceLimitError(
            f"moment order {nmax} for word length {w.max_word_length()} "
            f"exceeds the limit {limit}"
        )
    moments: list = [Fraction(1)]
    power = BosonExpression.one()
    for _ in range(nmax):
        power = power * w
        moments.append(coherent_expectation(normal_order(power), z))
    return moments


# --------------------------------------------------------------------------
# Text syntax:  letters `a` and `ad`, `+`, `-`, rational scalars, `^`, parens
# --------------------------------------------------------------------------


def format_expression(expr: BosonExpression) -> str:
    """Canonical text form, e.g. '2 ad a + 1/2 a^2'; parseable back."""
    if not expr.terms:
        return "0"

    def word_str(word: Word) -> str:
        parts = []
        i = 0
        while i < len(word):
            j = i
            while j < len(word) and word[j] == word[i]:
                j += 1
            name = "ad" if word[i] == AD else "a"
            parts.append(name if j - i == 1 else f"{name}^{j - i}")
            i = j
        return " ".join(parts)

    keyed = sorted(expr.terms.items(), key=lambda kv: (len(kv[0]), kv[0]))
    parts = []
    for i, (word, c) in enumerate(keyed):
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if not word:
            body = str(mag)
        elif mag == 1:
            body = word_str(word)
        else:
            body = f"{mag} {word_str(word)}"
        if i == 0:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts)


def format_normal_form(form: NormalOrderedForm, ascending: bool = False) -> str:
    """Print 'ad^r a^s' terms; descending (r, s) by default, e.g.
    'ad^2 a^2 + ad a'."""
    if not form.terms:
        return "0"
    keyed = sorted(form.terms.items(), reverse=not ascending)
    parts = []
    for i, ((r, s), c) in enumerate(keyed):
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        word = []
        if r:
            word.append("ad" if r == 1 else f"ad^{r}")
        if s:
            word.append("a" if s == 1 else f"a^{s}")
        if not word:
            body = str(mag)
        elif mag == 1:
            body = " ".join(word)
        else:
            body = f"{mag} " + " ".join(word)
        if i == 0:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts)


class _Tokenizer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.tokens: list[tuple[str, object, int]] = []
        self._scan()
        self.index = 0

    def _scan(self):
        text = self.text
        i = 0
        while i < len(text):
            ch = text[i]
            if ch.isspace():
                i += 1
                continue
            if ch in "+-()^*":
                self.tokens.append((ch, ch, i))
                i += 1
                continue
            if ch.isdigit():
                j = i
                while j < len(text) and text[j].isdigit():
                    j += 1
                num = int(text[i:j])
                if j < len(text) and text[j] == "/":
                    k = j + 1
                    while k < len(text) and text[k].isdigit():
                        k += 1
                    if k == j + 1:
                        raise ExpressionParseError("expected denominator", j + 1)
                    self.tokens.append(("num", Fraction(num, int(text[j + 1:k])), i))
                    i = k
                else:
                    self.tokens.append(("num", Fraction(num), i))
                    i = j
                continue
            if ch == "a":
                if text[i:i + 2] == "ad" and (i + 2 >= len(text) or not text[i + 2].isalnum()):
                    self.tokens.append(("ad", AD, i))
                    i += 2
                elif i + 1 >= len(text) or not text[i + 1].isalnum():
                    self.tokens.append(("a", A, i))
                    i += 1
                else:
                    raise ExpressionParseError(f"unknown symbol {text[i]!r}", i)
                continue
            raise ExpressionParseError(f"unexpected character {ch!r}", i)

    def peek(self) -> tuple[str, object, int]:
        if self.index < len(self.tokens):
            return self.tokens[self.index]
        return ("end", None, len(self.text))

    def next(self) -> tuple[str, object, int]:
        tok = self.peek()
        self.index += 1
        return tok


class _ExpressionParser:
    """Grammar:
    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor (['*'] factor)*
    factor := atom ['^' integer]
    atom   := 'a' | 'ad' | rational | '(' expr ')'
    """

    def __init__(self, text: str):
        if not text.strip():
            raise ExpressionParseError("empty expression", 0)
        self.toks = _Tokenizer(text)

    def parse(self) -> BosonExpression:
        expr = self.parse_expr()
        kind, _, pos = self.toks.peek()
        if kind != "end":
            raise ExpressionParseError("unexpected trailing input", pos)
        return expr

    def parse_expr(self) -> BosonExpression:
        sign = 1
        if self.toks.peek()[0] in "+-":
            sign = -1 if self.toks.next()[0] == "-" else 1
        acc = self.parse_term() * sign
        while self.toks.peek()[0] in "+-":
            sign = -1 if self.toks.next()[0] == "-" else 1
            acc = acc + self.parse_term() * sign
        return acc

    def parse_term(self) -> BosonExpression:
        acc = self.parse_factor()
        while True:
            kind = self.toks.peek()[0]
            if kind == "*":
                self.toks.next()
                acc = acc * self.parse_factor()
            elif kind in ("a", "ad", "num", "("):
                acc = acc * self.parse_factor()
            else:
                return acc

    def parse_factor(self) -> BosonExpression:
        atom = self.parse_atom()
        if self.toks.peek()[0] == "^":
            self.toks.next()
            kind, value, pos = self.toks.next()
            if kind != "num" or value.denominator != 1 or value < 0:
                raise ExpressionParseError("exponent must be a nonnegative integer", pos)
            return atom ** value.numerator
        return atom

    def parse_atom(self) -> BosonExpression:
        kind, value, pos = self.toks.next()
        if kind == "a":
            return BosonExpression.a()
        if kind == "ad":
            return BosonExpression.ad()
        if kind == "num":
            return BosonExpression.one() * value
        if kind == "(":
            inner = self.parse_expr()
            kind2, _, pos2 = self.toks.next()
            if kind2 != ")":
                raise ExpressionParseError("expected ')'", pos2)
            return inner
        raise ExpressionParseError("expected 'a', 'ad', a number, or '('", pos)


def parse_expression(text: str) -> BosonExpression:
    """Parse the boson-word text syntax, e.g. '(ad a)^3' or 'ad + a'."""
    return _ExpressionParser(text).parse()
