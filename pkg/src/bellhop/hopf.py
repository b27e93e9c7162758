"""The BELL Hopf algebra: the free commutative algebra on generators
y_1, y_2, ... with every generator primitive, together with machine
checks of the Hopf axioms, the single-variable specialization, and the
coding of set-partition diagrams by monomials.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator

from .errors import ExpressionParseError

Rational = Fraction | int


@dataclass(frozen=True, order=True)
class Monomial:
    """A commutative word in the alphabet {y_1, y_2, ...}.

    Letters are stored as a sorted tuple of positive indices; the empty
    tuple is the algebra unit.  weight = sum of indices, degree = number
    of letters.
    """

    letters: tuple[int, ...] = ()

    def __post_init__(self):
        if any(k < 1 for k in self.letters):
            raise ValueError("letter indices must be positive")
        object.__setattr__(self, "letters", tuple(sorted(self.letters)))

    @property
    def weight(self) -> int:
        return sum(self.letters)

    @property
    def degree(self) -> int:
        return len(self.letters)

    def __mul__(self, other: "Monomial") -> "Monomial":
        return Monomial(self.letters + other.letters)

    def multiplicities(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for k in self.letters:
            out[k] = out.get(k, 0) + 1
        return out

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        parts = []
        for k, m in sorted(self.multiplicities().items()):
            parts.append(f"y{k}" if m == 1 else f"y{k}^{m}")
        return "*".join(parts)


UNIT = Monomial()


class HopfElement:
    """Finite rational linear combination of monomials."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[Monomial, Rational] | None = None):
        self.terms: dict[Monomial, Fraction] = {}
        if terms:
            for m, c in terms.items():
                c = Fraction(c)
                if c:
                    self.terms[m] = c

    @classmethod
    def unit(cls, c: Rational = 1) -> "HopfElement":
        return cls({UNIT: c})

    @classmethod
    def generator(cls, k: int) -> "HopfElement":
        return cls({Monomial((k,)): 1})

    @classmethod
    def from_monomial(cls, m: Monomial, c: Rational = 1) -> "HopfElement":
        return cls({m: c})

    def __add__(self, other: "HopfElement") -> "HopfElement":
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, Fraction(0)) + c
        return HopfElement(out)

    def __sub__(self, other: "HopfElement") -> "HopfElement":
        return self + (other * -1)

    def __mul__(self, other) -> "HopfElement":
        if isinstance(other, (int, Fraction)):
            return HopfElement({m: c * other for m, c in self.terms.items()})
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = m1 * m2
                out[m] = out.get(m, Fraction(0)) + c1 * c2
        return HopfElement(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "HopfElement":
        out = HopfElement.unit()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, HopfElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def __str__(self) -> str:
        return format_element(self)

    def __repr__(self) -> str:
        return f"HopfElement({format_element(self)!r})"


class TensorElement:
    """Element of BELL (x) BELL: rational combination of monomial pairs."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[tuple[Monomial, Monomial], Rational] | None = None):
        self.terms: dict[tuple[Monomial, Monomial], Fraction] = {}
        if terms:
            for p, c in terms.items():
                c = Fraction(c)
                if c:
                    self.terms[p] = c

    @classmethod
    def pure(cls, left: Monomial, right: Monomial, c: Rational = 1) -> "TensorElement":
        return cls({(left, right): c})

    def __add__(self, other: "TensorElement") -> "TensorElement":
        out = dict(self.terms)
        for p, c in other.terms.items():
            out[p] = out.get(p, Fraction(0)) + c
        return TensorElement(out)

    def __sub__(self, other: "TensorElement") -> "TensorElement":
        return self + (other * -1)

    def __mul__(self, other) -> "TensorElement":
        if isinstance(other, (int, Fraction)):
            return TensorElement({p: c * other for p, c in self.terms.items()})
        out: dict[tuple[Monomial, Monomial], Fraction] = {}
        for (l1, r1), c1 in self.terms.items():
            for (l2, r2), c2 in other.terms.items():
                key = (l1 * l2, r1 * r2)
                out[key] = out.get(key, Fraction(0)) + c1 * c2
        return TensorElement(out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, TensorElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def swap(self) -> "TensorElement":
        return TensorElement({(r, l): c for (l, r), c in self.terms.items()})


def product(a: HopfElement, b: HopfElement) -> HopfElement:
    return a * b


def _coproduct_monomial(m: Monomial) -> TensorElement:
    # Primitive generators: Delta(y_k) = y_k (x) 1 + 1 (x) y_k, extended as
    # an algebra homomorphism.  For y_k^mult this is a binomial expansion.
    out = TensorElement.pure(UNIT, UNIT)
    for k, mult in m.multiplicities().items():
        factor = TensorElement(
            {
                (Monomial((k,) * j), Monomial((k,) * (mult - j))): math.comb(mult, j)
                for j in range(mult + 1)
            }
        )
        out = out * factor
    return out


def coproduct(a: HopfElement) -> TensorElement:
    out = TensorElement()
    for m, c in a.terms.items():
        out = out + _coproduct_monomial(m) * c
    return out


def counit(a: HopfElement) -> Fraction:
    return a.terms.get(UNIT, Fraction(0))


def antipode(a: HopfElement) -> HopfElement:
    # Sign by degree: the anti-homomorphic extension of y_k -> -y_k
    # coincides with the homomorphic one since the algebra is commutative.
    return HopfElement({m: c * (-1) ** m.degree for m, c in a.terms.items()})


def poly_specialize(a: HopfElement) -> HopfElement:
    """Collapse every generator onto the single generator y_1.

    The image lives in the one-variable subalgebra (the single-generator
    polynomial Hopf algebra); degree is preserved, weight is forgotten.
    """
    out: dict[Monomial, Fraction] = {}
    for m, c in a.terms.items():
        key = Monomial((1,) * m.degree)
        out[key] = out.get(key, Fraction(0)) + c
    return HopfElement(out)


def code_diagram(sp) -> Monomial:
    """Code a set partition by its block-size multiset: a block of size k
    contributes one letter y_k."""
    return Monomial(tuple(len(block) for block in sp.blocks))


# --------------------------------------------------------------------------
# Axiom checks
# --------------------------------------------------------------------------


@dataclass
class CheckReport:
    name: str
    ok: bool
    checked: int
    counterexample: str | None = None

    def __str__(self) -> str:
        status = "pass" if self.ok else "FAIL"
        extra = "" if self.ok else f" counterexample: {self.counterexample}"
        return f"{self.name}: {status} ({self.checked} cases){extra}"


def _integer_partitions(n: int) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return

    def rec(remaining: int, largest: int):
        if remaining == 0:
            yield ()
            return
        for part in range(min(remaining, largest), 0, -1):
            for rest in rec(remaining - part, part):
                yield (part,) + rest

    yield from rec(n, n)


def basis_monomials(max_weight: int) -> list[Monomial]:
    """All monomials of weight <= max_weight (one per integer partition)."""
    out = []
    for w in range(max_weight + 1):
        for parts in _integer_partitions(w):
            out.append(Monomial(parts))
    return out


def random_element(rng: random.Random, max_weight: int, nterms: int = 4) -> HopfElement:
    basis = basis_monomials(max_weight)
    terms: dict[Monomial, Fraction] = {}
    for _ in range(nterms):
        m = rng.choice(basis)
        c = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
        terms[m] = terms.get(m, Fraction(0)) + c
    return HopfElement(terms)


def _triple_coproduct(t: TensorElement, left_first: bool) -> dict[tuple[Monomial, Monomial, Monomial], Fraction]:
    out: dict[tuple[Monomial, Monomial, Monomial], Fraction] = {}
    for (l, r), c in t.terms.items():
        inner = _coproduct_monomial(l if left_first else r)
        for (p, q), d in inner.terms.items():
            key = (p, q, r) if left_first else (l, p, q)
            val = out.get(key, Fraction(0)) + c * d
            if val:
                out[key] = val
            else:
                out.pop(key, None)
    return out


def check_coassociativity(max_weight: int) -> CheckReport:
    checked = 0
    for m in basis_monomials(max_weight):
        delta = _coproduct_monomial(m)
        lhs = _triple_coproduct(delta, left_first=True)
        rhs = _triple_coproduct(delta, left_first=False)
        checked += 1
        if lhs != rhs:
            return CheckReport("coassociativity", False, checked, str(m))
    return CheckReport("coassociativity", True, checked)


def check_counit(max_weight: int) -> CheckReport:
    checked = 0
    for m in basis_monomials(max_weight):
        delta = _coproduct_monomial(m)
        left = HopfElement()
        right = HopfElement()
        for (l, r), c in delta.terms.items():
            left = left + HopfElement.from_monomial(r, c * counit(HopfElement.from_monomial(l)))
            right = right + HopfElement.from_monomial(l, c * counit(HopfElement.from_monomial(r)))
        checked += 1
        if left != HopfElement.from_monomial(m) or right != HopfElement.from_monomial(m):
            return CheckReport("counit", False, checked, str(m))
    return CheckReport("counit", True, checked)


def check_antipode(
    max_weight: int,
    antipode_fn: Callable[[HopfElement], HopfElement] = antipode,
) -> CheckReport:
    """Convolution identity m(S (x) id)Delta = unit . counit = m(id (x) S)Delta.

    antipode_fn is injectable so a deliberately corrupted antipode can be
    shown to fail.
    """
    checked = 0
    for m in basis_monomials(max_weight):
        delta = _coproduct_monomial(m)
        left = HopfElement()
        right = HopfElement()
        for (l, r), c in delta.terms.items():
            left = left + antipode_fn(HopfElement.from_monomial(l, c)) * HopfElement.from_monomial(r)
            right = right + HopfElement.from_monomial(l, c) * antipode_fn(HopfElement.from_monomial(r))
        expected = HopfElement.unit(counit(HopfElement.from_monomial(m)))
        checked += 1
        if left != expected or right != expected:
            return CheckReport("antipode", False, checked, str(m))
    return CheckReport("antipode", True, checked)


def check_bialgebra(max_weight: int, samples: int = 100, seed: int = 2024) -> CheckReport:
    """Delta(AB) = Delta(A)Delta(B) and epsilon(AB) = epsilon(A)epsilon(B)
    on random element pairs."""
    rng = random.Random(seed)
    checked = 0
    for _ in range(samples):
        a = random_element(rng, max_weight)
        b = random_element(rng, max_weight)
        checked += 1
        if coproduct(a * b) != coproduct(a) * coproduct(b):
            return CheckReport("bialgebra", False, checked, f"A={a}, B={b}")
        if counit(a * b) != counit(a) * counit(b):
            return CheckReport("bialgebra", False, checked, f"A={a}, B={b}")
    return CheckReport("bialgebra", True, checked)


def check_cocommutativity(max_weight: int) -> CheckReport:
    checked = 0
    for m in basis_monomials(max_weight):
        delta = _coproduct_monomial(m)
        checked += 1
        if delta.swap() != delta:
            return CheckReport("cocommutativity", False, checked, str(m))
    return CheckReport("cocommutativity", True, checked)


def check_commutativity(max_weight: int, samples: int = 100, seed: int = 2025) -> CheckReport:
    rng = random.Random(seed)
    checked = 0
    for _ in range(samples):
        a = random_element(rng, max_weight)
        b = random_element(rng, max_weight)
        checked += 1
        if a * b != b * a:
            return CheckReport("commutativity", False, checked, f"A={a}, B={b}")
    return CheckReport("commutativity", True, checked)


def run_all_checks(
    max_weight: int,
    antipode_fn: Callable[[HopfElement], HopfElement] = antipode,
) -> list[CheckReport]:
    return [
        check_coassociativity(max_weight),
        check_counit(max_weight),
        check_antipode(max_weight, antipode_fn),
        check_bialgebra(max_weight),
        check_commutativity(max_weight),
        check_cocommutativity(max_weight),
    ]


# --------------------------------------------------------------------------
# Text form and JSON
# --------------------------------------------------------------------------


def format_element(a: HopfElement) -> str:
    """Canonical text form, e.g. '3/2*y1^2*y3 + y2'."""
    if not a.terms:
        return "0"
    keyed = sorted(a.terms.items(), key=lambda kv: (kv[0].weight, kv[0].degree, kv[0].letters))
    parts = []
    for i, (m, c) in enumerate(keyed):
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if m is UNIT or not m.letters:
            body = str(mag)
        elif mag == 1:
            body = str(m)
        else:
            body = f"{mag}*{m}"
        if i == 0:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts)


class _ElementParser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, msg: str):
        raise ExpressionParseError(msg, self.pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse(self) -> HopfElement:
        self.skip_ws()
        if self.pos >= len(self.text):
            self.error("empty element")
        out = HopfElement()
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.peek() == "-" else 1
            self.pos += 1
        out = out + self.parse_term(sign)
        while self.peek() in ("+", "-"):
            sign = -1 if self.peek() == "-" else 1
            self.pos += 1
            out = out + self.parse_term(sign)
        self.skip_ws()
        if self.pos != len(self.text):
            self.error("unexpected trailing input")
        return out

    def parse_term(self, sign: int) -> HopfElement:
        coeff = Fraction(sign)
        letters: list[int] = []
        saw_factor = False
        while True:
            ch = self.peek()
            if ch == "y":
                self.pos += 1
                k = self.parse_int("generator index")
                if k < 1:
                    self.error("generator index must be at least 1")
                mult = 1
                if self.peek() == "^":
                    self.pos += 1
                    mult = self.parse_int("exponent")
                letters.extend([k] * mult)
                saw_factor = True
            elif ch.isdigit():
                coeff *= self.parse_rational()
                saw_factor = True
            else:
                self.error("expected coefficient or generator")
            if self.peek() == "*":
                self.pos += 1
                continue
            break
        if not saw_factor:
            self.error("empty term")
        return HopfElement({Monomial(tuple(letters)): coeff})

    def parse_int(self, what: str) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error(f"expected {what}")
        return int(self.text[start:self.pos])

    def parse_rational(self) -> Fraction:
        num = self.parse_int("numerator")
        if self.pos < len(self.text) and self.text[self.pos] == "/":
            self.pos += 1
            den = self.parse_int("denominator")
            return Fraction(num, den)
        return Fraction(num)


def parse_element(text: str) -> HopfElement:
    """Parse the canonical text form produced by format_element."""
    return _ElementParser(text).parse()


def element_to_json(a: HopfElement) -> str:
    terms = sorted(a.terms.items(), key=lambda kv: (kv[0].weight, kv[0].degree, kv[0].letters))
    return json.dumps(
        {"terms": [{"monomial": list(m.letters), "coeff": str(c)} for m, c in terms]}
    )


def element_from_json(text: str) -> HopfElement:
    data = json.loads(text)
    return HopfElement(
        {Monomial(tuple(t["monomial"])): Fraction(t["coeff"]) for t in data["terms"]}
    )


def tensor_to_json(t: TensorElement) -> str:
    terms = sorted(t.terms.items(), key=lambda kv: (kv[0][0].letters, kv[0][1].letters))
    return json.dumps(
        {
            "terms": [
                {"left": list(l.letters), "right": list(r.letters), "coeff": str(c)}
                for (l, r), c in terms
            ]
        }
    )
