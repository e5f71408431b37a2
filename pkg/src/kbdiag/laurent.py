"""Exact arithmetic in Z[A, A^-1] and its fraction field.

A Laurent polynomial is stored as a dict mapping exponent to a nonzero
Python int, so coefficients never overflow and equality is structural.
Rational functions are kept in a canonical reduced form at all times:

* the denominator is an ordinary polynomial with minimal exponent 0,
* its leading coefficient is positive,
* numerator and denominator have no common polynomial factor over Q
  and no common integer content,
* zero is represented as 0/1.

Orders at infinity and at zero take values in Z extended by two explicit
infinities ``NEG_INF`` and ``POS_INF``; they are never encoded as large
sentinel integers.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd as _int_gcd
from typing import Iterable, Mapping, Union

__all__ = [
    "NEG_INF",
    "POS_INF",
    "ExtendedOrder",
    "LaurentPoly",
    "RationalFn",
    "breadth",
    "circ",
    "delta",
    "ord_inf",
    "ord_zero",
    "parse_laurent",
    "parse_rational",
]


class ExtendedOrder:
    """One of the two infinite order values.

    Compares correctly against ints and against the other infinity.
    Only two instances exist, ``NEG_INF`` and ``POS_INF``.
    """

    __slots__ = ("_sign",)

    def __init__(self, sign: int):
        self._sign = sign

    def __neg__(self) -> "ExtendedOrder":
        return NEG_INF if self._sign > 0 else POS_INF

    def __lt__(self, other) -> bool:
        if isinstance(other, ExtendedOrder):
            return self._sign < other._sign
        return self._sign < 0

    def __le__(self, other) -> bool:
        return self < other or self == other

    def __gt__(self, other) -> bool:
        if isinstance(other, ExtendedOrder):
            return self._sign > other._sign
        return self._sign > 0

    def __ge__(self, other) -> bool:
        return self > other or self == other

    def __eq__(self, other) -> bool:
        return isinstance(other, ExtendedOrder) and other._sign == self._sign

    def __hash__(self) -> int:
        return hash(("ExtendedOrder", self._sign))

    def __repr__(self) -> str:
        return "-inf" if self._sign < 0 else "+inf"


NEG_INF = ExtendedOrder(-1)
POS_INF = ExtendedOrder(+1)

Order = Union[int, ExtendedOrder]


class LaurentPoly:
    """An element of Z[A, A^-1].

    Invariant: ``terms`` maps exponent to coefficient and stores no zero
    coefficient.  Instances are treated as immutable; all operators
    return fresh objects.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        clean: dict[int, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for exp, coeff in items:
            if coeff:
                c = clean.get(exp, 0) + coeff
                if c:
                    clean[exp] = c
                elif exp in clean:
                    del clean[exp]
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({0: 1})

    @classmethod
    def monomial(cls, coeff: int = 1, exp: int = 0) -> "LaurentPoly":
        return cls({exp: coeff})

    # -- queries -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def min_exp(self) -> int:
        if not self.terms:
            raise ValueError("zero polynomial has no minimal exponent")
        return min(self.terms)

    def max_exp(self) -> int:
        if not self.terms:
            raise ValueError("zero polynomial has no maximal exponent")
        return max(self.terms)

    def coeff(self, exp: int) -> int:
        return self.terms.get(exp, 0)

    def content(self) -> int:
        c = 0
        for v in self.terms.values():
            c = _int_gcd(c, abs(v))
        return c

    def is_symmetric(self) -> bool:
        """True when the substitution A -> A^-1 fixes the polynomial."""
        return all(self.terms.get(-e, 0) == c for e, c in self.terms.items())

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            elif e in out:
                del out[e]
        r = LaurentPoly.__new__(LaurentPoly)
        r.terms = out
        return r

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __neg__(self) -> "LaurentPoly":
        r = LaurentPoly.__new__(LaurentPoly)
        r.terms = {e: -c for e, c in self.terms.items()}
        return r

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        out: dict[int, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                elif e in out:
                    del out[e]
        r = LaurentPoly.__new__(LaurentPoly)
        r.terms = out
        return r

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            raise ValueError("negative power of a Laurent polynomial; use RationalFn")
        acc = LaurentPoly.one()
        base = self
        while n:
            if n & 1:
                acc = acc * base
            base = base * base
            n >>= 1
        return acc

    def scale(self, k: int) -> "LaurentPoly":
        return LaurentPoly({e: c * k for e, c in self.terms.items()})

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by A^k."""
        r = LaurentPoly.__new__(LaurentPoly)
        r.terms = {e + k: c for e, c in self.terms.items()}
        return r

    def mirror(self) -> "LaurentPoly":
        """Substitute A -> A^-1."""
        r = LaurentPoly.__new__(LaurentPoly)
        r.terms = {-e: c for e, c in self.terms.items()}
        return r

    # -- comparison --------------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, LaurentPoly) and other.terms == self.terms

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.terms.items())))

    def key(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(self.terms.items()))

    # -- rendering ---------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts: list[str] = []
        for exp in sorted(self.terms, reverse=True):
            c = self.terms[exp]
            mag = abs(c)
            if exp == 0:
                body = str(mag)
            else:
                a = "A" if exp == 1 else f"A^{exp}"
                body = a if mag == 1 else f"{mag}*{a}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"


_TERM_RE = re.compile(
    r"^(?P<sign>[+-])?(?P<coeff>\d+)?\*?(?P<var>A(?:\^(?P<exp>-?\d+))?)?$"
)


def parse_laurent(text: str) -> LaurentPoly:
    """Parse the rendering produced by ``LaurentPoly.__str__``.

    Accepts any whitespace-insensitive sum of integer-coefficient powers
    of A, e.g. ``-A^2 - A^-2`` or ``3*A - 5``.
    """
    compact = text.replace(" ", "")
    if not compact:
        raise ValueError("empty polynomial text")
    if compact == "0":
        return LaurentPoly.zero()
    # split keeping signs attached to the following term
    pieces = re.findall(r"[+-]?[^+-]+(?:\^-\d+)?", _protect_negexp(compact))
    total: dict[int, int] = {}
    for piece in pieces:
        piece = piece.replace("~", "-")
        m = _TERM_RE.match(piece)
        if not m or (m.group("coeff") is None and m.group("var") is None):
            raise ValueError(f"unparseable term {piece!r} in {text!r}")
        coeff = 1 if m.group("coeff") is None else int(m.group("coeff"))
        if m.group("sign") == "-":
            coeff = -coeff
        if m.group("var") is None:
            exp = 0
        else:
            exp_s = m.group("exp")
            exp = 1 if exp_s is None else int(exp_s)
        total[exp] = total.get(exp, 0) + coeff
    return LaurentPoly(total)


def _protect_negexp(compact: str) -> str:
    # rewrite exponent minus signs so the term splitter ignores them
    return re.sub(r"\^-", "^~", compact)


# -- polynomial gcd over Q, returned primitive over Z -----------------------


def _poly_divmod_q(
    num: dict[int, Fraction], den: dict[int, Fraction]
) -> tuple[dict[int, Fraction], dict[int, Fraction]]:
    num = dict(num)
    quot: dict[int, Fraction] = {}
    dmax = max(den)
    dlead = den[dmax]
    while num and max(num) >= dmax:
        e = max(num)
        q = num[e] / dlead
        quot[e - dmax] = q
        for de, dc in den.items():
            ne = de + e - dmax
            v = num.get(ne, Fraction(0)) - q * dc
            if v:
                num[ne] = v
            elif ne in num:
                del num[ne]
    return quot, num


def _dense(p: LaurentPoly) -> list[int]:
    out = [0] * (p.max_exp() + 1)
    for e, c in p.terms.items():
        out[e] = c
    return out


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _content_of(a: list[int]) -> int:
    c = 0
    for v in a:
        c = _int_gcd(c, abs(v))
    return c


def _make_primitive(a: list[int]) -> list[int]:
    c = _content_of(a)
    if c > 1:
        a = [v // c for v in a]
    return a


def _pseudo_rem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder of dense int polynomials, content-reduced."""
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    while len(a) - 1 >= db and a:
        da, la = len(a) - 1, a[-1]
        # scale so the leading term cancels without fractions
        g = _int_gcd(abs(la), abs(lb))
        mul_a, mul_b = lb // g, la // g
        for i in range(da + 1):
            a[i] *= mul_a
        for i, bv in enumerate(b):
            a[i + da - db] -= mul_b * bv
        _trim(a)
        if a:
            a = _make_primitive(a)
    return a


def _poly_gcd(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """Primitive gcd over Q[A] of two ordinary (min_exp >= 0) polynomials.

    Uses a primitive pseudo-remainder sequence over Z, which keeps
    coefficients small enough in practice.
    """
    a = _make_primitive(_dense(p))
    b = _make_primitive(_dense(q))
    if len(a) < len(b):
        a, b = b, a
    while b:
        a, b = b, _pseudo_rem(a, b)
    if a and a[-1] < 0:
        a = [-v for v in a]
    return LaurentPoly({e: c for e, c in enumerate(a)})


def _poly_exact_div(p: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    a = {e: Fraction(c) for e, c in p.terms.items()}
    b = {e: Fraction(c) for e, c in g.terms.items()}
    quot, rem = _poly_divmod_q(a, b)
    if rem:
        raise ArithmeticError("inexact polynomial division during reduction")
    out = {}
    for e, c in quot.items():
        if c.denominator != 1:
            raise ArithmeticError("non-integral quotient during reduction")
        if c:
            out[e] = int(c)
    return LaurentPoly(out)


class RationalFn:
    """An element of Q(A), always held in canonical reduced form."""

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: LaurentPoly | None = None):
        if den is None:
            den = LaurentPoly.one()
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        self.num, self.den = self._reduce(num, den)

    @staticmethod
    def _reduce(num: LaurentPoly, den: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
        if num.is_zero():
            return LaurentPoly.zero(), LaurentPoly.one()
        a, b = num.min_exp(), den.min_exp()
        p, q = num.shift(-a), den.shift(-b)
        if len(p.terms) > 1 and len(q.terms) > 1:
            g = _poly_gcd(p, q)
            if g.max_exp() > 0 or g.coeff(0) != 1:
                p, q = _poly_exact_div(p, g), _poly_exact_div(q, g)
        c = _int_gcd(p.content(), q.content())
        if c > 1:
            p = LaurentPoly({e: v // c for e, v in p.terms.items()})
            q = LaurentPoly({e: v // c for e, v in q.terms.items()})
        if q.coeff(q.max_exp()) < 0:
            p, q = -p, -q
        # the denominator keeps minimal exponent 0; A-powers live on the numerator
        return p.shift(a - b), q

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "RationalFn":
        return cls(LaurentPoly.zero())

    @classmethod
    def one(cls) -> "RationalFn":
        return cls(LaurentPoly.one())

    @classmethod
    def from_int(cls, n: int) -> "RationalFn":
        return cls(LaurentPoly.monomial(n, 0))

    @classmethod
    def monomial(cls, coeff: int = 1, exp: int = 0) -> "RationalFn":
        return cls(LaurentPoly.monomial(coeff, exp))

    # -- queries -----------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num == LaurentPoly.one() and self.den == LaurentPoly.one()

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "RationalFn") -> "RationalFn":
        return RationalFn(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other: "RationalFn") -> "RationalFn":
        return RationalFn(self.num * other.den - other.num * self.den, self.den * other.den)

    def __neg__(self) -> "RationalFn":
        r = RationalFn.__new__(RationalFn)
        r.num, r.den = -self.num, self.den
        return r

    def __mul__(self, other: "RationalFn") -> "RationalFn":
        return RationalFn(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "RationalFn") -> "RationalFn":
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFn(self.num * other.den, self.den * other.num)

    def __pow__(self, n: int) -> "RationalFn":
        if n < 0:
            if self.is_zero():
                raise ZeroDivisionError("negative power of zero")
            return RationalFn(self.den, self.num) ** (-n)
        acc = RationalFn.one()
        base = self
        while n:
            if n & 1:
                acc = acc * base
            base = base * base
            n >>= 1
        return acc

    def mirror(self) -> "RationalFn":
        """Substitute A -> A^-1."""
        return RationalFn(self.num.mirror(), self.den.mirror())

    # -- orders and breadth --------------------------------------------------

    def ord_inf(self) -> Order:
        """Degree-like order at infinity; NEG_INF exactly for zero."""
        if self.is_zero():
            return NEG_INF
        return self.num.max_exp() - self.den.max_exp()

    def ord_zero(self) -> Order:
        """Valuation-like order at zero; POS_INF exactly for zero."""
        if self.is_zero():
            return POS_INF
        return self.num.min_exp() - self.den.min_exp()

    def breadth(self) -> int:
        """ord_inf - ord_zero, with the zero function assigned breadth 0."""
        if self.is_zero():
            return 0
        return self.num.max_exp() - self.den.max_exp() - self.num.min_exp() + self.den.min_exp()

    def is_symmetric(self) -> bool:
        return self.mirror() == self

    # -- comparison --------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RationalFn)
            and other.num == self.num
            and other.den == self.den
        )

    def __hash__(self) -> int:
        return hash((self.num.key(), self.den.key()))

    def key(self):
        return (self.num.key(), self.den.key())

    # -- rendering ---------------------------------------------------------

    def __str__(self) -> str:
        if self.den == LaurentPoly.one():
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self) -> str:
        return f"RationalFn({self})"


def parse_rational(text: str) -> RationalFn:
    """Parse ``(num)/(den)`` or a bare polynomial rendering."""
    stripped = text.strip()
    m = re.match(r"^\((?P<num>.*)\)/\((?P<den>.*)\)$", stripped)
    if m:
        return RationalFn(parse_laurent(m.group("num")), parse_laurent(m.group("den")))
    return RationalFn(parse_laurent(stripped))


# -- module-level order helpers ---------------------------------------------


def ord_inf(f: RationalFn) -> Order:
    return f.ord_inf()


def ord_zero(f: RationalFn) -> Order:
    return f.ord_zero()


def breadth(f: RationalFn) -> int:
    return f.breadth()


def circ(n: int) -> LaurentPoly:
    """Value of an n-colored trivial circle.

    circ(n) = (-1)^n * (A^{2(n+1)} - A^{-2(n+1)}) / (A^2 - A^{-2}), which
    expands to the n+1 terms A^{2n} + A^{2n-4} + ... + A^{-2n} up to sign.
    circ(0) = 1 and circ(1) is the loop value -A^2 - A^-2.
    """
    if n < 0:
        raise ValueError("negative color")
    sign = -1 if n % 2 else 1
    return LaurentPoly({2 * n - 4 * j: sign for j in range(n + 1)})


def delta() -> LaurentPoly:
    """The trivial-circle multiplier -A^2 - A^-2."""
    return circ(1)
