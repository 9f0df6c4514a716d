"""Exact arithmetic in a real quadratic field Q(sqrt(d)).

Elements are stored as three integers ``(p, q, c)`` meaning ``(p + q*sqrt(d)) / c``
with ``c > 0`` and ``gcd(p, q, c) == 1``, which keeps equality componentwise
and hashing cheap.  The rational parts are exposed as :class:`fractions.Fraction`.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from numbers import Rational
from typing import Union

DEFAULT_RADICAND = 5

Number = Union["QuadraticScalar", int, Fraction]


class RadicandMismatch(ValueError):
    pass


class ScalarParseError(ValueError):
    def __init__(self, message: str, text: str, position: int) -> None:
        super().__init__(f"{message} at position {position}: {text!r}")
        self.text = text
        self.position = position


@lru_cache(maxsize=None)
def _check_radicand(d: int) -> int:
    if not isinstance(d, int) or d < 2:
        raise ValueError(f"radicand must be an integer > 1, got {d!r}")
    k = 2
    while k * k <= d:
        if d % (k * k) == 0:
            raise ValueError(f"radicand {d} is not squarefree")
        k += 1
    return d


class QuadraticScalar:
    __slots__ = ("_p", "_q", "_c", "_d")

    def __init__(self, a: int | Fraction = 0, b: int | Fraction = 0, radicand: int = DEFAULT_RADICAND) -> None:
        a = Fraction(a)
        b = Fraction(b)
        c = a.denominator * b.denominator // gcd(a.denominator, b.denominator)
        self._set(a.numerator * (c // a.denominator), b.numerator * (c // b.denominator), c, _check_radicand(radicand))

    def _set(self, p: int, q: int, c: int, d: int) -> None:
        if c < 0:
            p, q, c = -p, -q, -c
        g = gcd(p, q, c)
        if g > 1:
            p //= g
            q //= g
            c //= g
        self._p = p
        self._q = q
        self._c = c
        self._d = d

    @classmethod
    def _raw(cls, p: int, q: int, c: int, d: int) -> QuadraticScalar:
        obj = cls.__new__(cls)
        obj._set(p, q, c, d)
        return obj

    @classmethod
    def sqrt_radicand(cls, radicand: int = DEFAULT_RADICAND) -> QuadraticScalar:
        return cls._raw(0, 1, 1, _check_radicand(radicand))

    # -- components ---------------------------------------------------------

    @property
    def a(self) -> Fraction:
        return Fraction(self._p, self._c)

    @property
    def b(self) -> Fraction:
        return Fraction(self._q, self._c)

    @property
    def radicand(self) -> int:
        return self._d

    def is_rational(self) -> bool:
        return self._q == 0

    def __bool__(self) -> bool:
        return self._p != 0 or self._q != 0

    def conjugate(self) -> QuadraticScalar:
        return QuadraticScalar._raw(self._p, -self._q, self._c, self._d)

    def norm(self) -> Fraction:
        return Fraction(self._p * self._p - self._d * self._q * self._q, self._c * self._c)

    # -- coercion -----------------------------------------------------------

    def _coerce(self, other: object) -> QuadraticScalar | None:
        if isinstance(other, QuadraticScalar):
            if other._d != self._d:
                raise RadicandMismatch(f"radicands differ: {self._d} vs {other._d}")
            return other
        if isinstance(other, int):
            return QuadraticScalar._raw(other, 0, 1, self._d)
        if isinstance(other, Rational):
            return QuadraticScalar._raw(other.numerator, 0, other.denominator, self._d)
        return None

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: object) -> QuadraticScalar:
        y = self._coerce(other)
        if y is None:
            return NotImplemented
        if self._c == y._c:
            return QuadraticScalar._raw(self._p + y._p, self._q + y._q, self._c, self._d)
        return QuadraticScalar._raw(
            self._p * y._c + y._p * self._c, self._q * y._c + y._q * self._c, self._c * y._c, self._d
        )

    __radd__ = __add__

    def __neg__(self) -> QuadraticScalar:
        return QuadraticScalar._raw(-self._p, -self._q, self._c, self._d)

    def __pos__(self) -> QuadraticScalar:
        return self

    def __sub__(self, other: object) -> QuadraticScalar:
        y = self._coerce(other)
        if y is None:
            return NotImplemented
        return self + (-y)

    def __rsub__(self, other: object) -> QuadraticScalar:
        y = self._coerce(other)
        if y is None:
            return NotImplemented
        return y + (-self)

    def __mul__(self, other: object) -> QuadraticScalar:
        y = self._coerce(other)
        if y is None:
            return NotImplemented
        p1, q1, p2, q2 = self._p, self._q, y._p, y._q
        return QuadraticScalar._raw(p1 * p2 + self._d * q1 * q2, p1 * q2 + p2 * q1, self._c * y._c, self._d)

    __rmul__ = __mul__

    def inverse(self) -> QuadraticScalar:
        if not self:
            raise ZeroDivisionError("division by zero in quadratic field")
        p, q, c = self._p, self._q, self._c
        return QuadraticScalar._raw(c * p, -c * q, p * p - self._d * q * q, self._d)

    def __truediv__(self, other: object) -> QuadraticScalar:
        y = self._coerce(other)
        if y is None:
            return NotImplemented
        return self * y.inverse()

    def __rtruediv__(self, other: object) -> QuadraticScalar:
        y = self._coerce(other)
        if y is None:
            return NotImplemented
        return y * self.inverse()

    def __pow__(self, n: int) -> QuadraticScalar:
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = QuadraticScalar._raw(1, 0, 1, self._d)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- ordering -----------------------------------------------------------

    def sign(self) -> int:
        return _sign_pq(self._p, self._q, self._d)

    def __eq__(self, other: object) -> bool:
        try:
            y = self._coerce(other)
        except RadicandMismatch:
            return False
        if y is None:
            return NotImplemented
        return self._p == y._p and self._q == y._q and self._c == y._c

    def __hash__(self) -> int:
        if self._q == 0:
            return hash(Fraction(self._p, self._c))
        return hash((self._p, self._q, self._c, self._d))

    def _cmp(self, other: object) -> int | None:
        y = self._coerce(other)
        if y is None:
            return None
        return (self - y).sign()

    def __lt__(self, other: object) -> bool:
        s = self._cmp(other)
        return NotImplemented if s is None else s < 0

    def __le__(self, other: object) -> bool:
        s = self._cmp(other)
        return NotImplemented if s is None else s <= 0

    def __gt__(self, other: object) -> bool:
        s = self._cmp(other)
        return NotImplemented if s is None else s > 0

    def __ge__(self, other: object) -> bool:
        s = self._cmp(other)
        return NotImplemented if s is None else s >= 0

    def __abs__(self) -> QuadraticScalar:
        return -self if self.sign() < 0 else self

    # -- text ---------------------------------------------------------------

    def __repr__(self) -> str:
        return f"QuadraticScalar({format_scalar(self)!r})"

    def __str__(self) -> str:
        return format_scalar(self)

    def __float__(self) -> float:
        return float(to_float(self, 20))

    def __reduce__(self):
        return (QuadraticScalar._raw, (self._p, self._q, self._c, self._d))


def _sign_int(n: int) -> int:
    return (n > 0) - (n < 0)


def _sign_pq(p: int, q: int, d: int) -> int:
    """Exact sign of ``p + q*sqrt(d)`` for integers p, q."""
    sp, sq = _sign_int(p), _sign_int(q)
    if sp == 0:
        return sq
    if sq == 0 or sp == sq:
        return sp
    # mixed signs: the larger magnitude wins
    return sp * _sign_int(p * p - d * q * q)


def sign(x: QuadraticScalar) -> int:
    return x.sign()


def scalar(value: Number, radicand: int = DEFAULT_RADICAND) -> QuadraticScalar:
    if isinstance(value, QuadraticScalar):
        if value.radicand != radicand:
            raise RadicandMismatch(f"radicands differ: {value.radicand} vs {radicand}")
        return value
    return QuadraticScalar(value, 0, radicand)


def arithmetic(op: str, x: QuadraticScalar, y: QuadraticScalar) -> QuadraticScalar:
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown operation {op!r}")


# -- text form ---------------------------------------------------------------


def _format_rational(f: Fraction) -> str:
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"


def format_scalar(x: QuadraticScalar) -> str:
    """Canonical text: ``a``, ``b r5``, ``a+b r5`` or ``a-b r5`` (no inner spaces)."""
    a, b = x.a, x.b
    tag = f"r{x.radicand}"
    if b == 0:
        return _format_rational(a)
    if a == 0:
        return _format_rational(b) + tag
    op = "+" if b > 0 else "-"
    return f"{_format_rational(a)}{op}{_format_rational(abs(b))}{tag}"


_TOKEN = re.compile(r"\s*(?:(?P<rat>\d+(?:\s*/\s*\d+)?)|(?P<op>[+-])|(?P<rad>r(?P<d>\d+)))")


def parse_scalar(text: str, radicand: int = DEFAULT_RADICAND) -> QuadraticScalar:
    """Parse ``R``, ``R+R rD`` or ``R-R rD`` where ``R := [-] digits [/ digits]``.

    A bare ``R rD`` (no rational part) is accepted as well.
    """
    pos = 0
    n = len(text)
    tokens: list[tuple[str, str, int]] = []
    while pos < n:
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ScalarParseError("unexpected character", text, start)
        start = m.start(m.lastgroup) if m.lastgroup != "d" else m.start("rad")
        if m.group("rat") is not None:
            tokens.append(("rat", m.group("rat"), start))
        elif m.group("op") is not None:
            tokens.append(("op", m.group("op"), start))
        else:
            tokens.append(("rad", m.group("d"), m.start("rad")))
        pos = m.end()
    if not tokens:
        raise ScalarParseError("empty scalar", text, 0)

    i = 0

    def signed_rational() -> Fraction:
        nonlocal i
        neg = False
        if i < len(tokens) and tokens[i] == ("op", "-", tokens[i][2]):
            neg = True
            i += 1
        if i >= len(tokens) or tokens[i][0] != "rat":
            where = tokens[i][2] if i < len(tokens) else len(text)
            raise ScalarParseError("expected number", text, where)
        num, _, den = tokens[i][1].partition("/")
        if den and int(den) == 0:
            raise ScalarParseError("zero denominator", text, tokens[i][2])
        value = Fraction(int(num), int(den) if den else 1)
        i += 1
        return -value if neg else value

    def radical() -> None:
        nonlocal i
        if i >= len(tokens) or tokens[i][0] != "rad":
            where = tokens[i][2] if i < len(tokens) else len(text)
            raise ScalarParseError("expected radical 'r%d'" % radicand, text, where)
        if int(tokens[i][1]) != radicand:
            raise ScalarParseError(f"radical r{tokens[i][1]} does not match field r{radicand}", text, tokens[i][2])
        i += 1

    first = signed_rational()
    a, b = first, Fraction(0)
    if i < len(tokens) and tokens[i][0] == "rad":
        radical()
        a, b = Fraction(0), first
    elif i < len(tokens):
        if tokens[i][0] != "op":
            raise ScalarParseError("expected '+' or '-'", text, tokens[i][2])
        negate = tokens[i][1] == "-"
        i += 1
        b = signed_rational()
        radical()
        if negate:
            b = -b
    if i != len(tokens):
        raise ScalarParseError("trailing input", text, tokens[i][2])
    return QuadraticScalar(a, b, radicand)


# -- decimal approximation ---------------------------------------------------


def _floor(x: QuadraticScalar) -> int:
    p, q, c, d = x._p, x._q, x._c, x._d
    root = isqrt(q * q * d)
    guess = (p + (root if q >= 0 else -root)) // c
    # guess is within one of the true floor; settle exactly
    while _sign_pq(p - guess * c, q, d) < 0:
        guess -= 1
    while _sign_pq(p - (guess + 1) * c, q, d) >= 0:
        guess += 1
    return guess


def to_float(x: QuadraticScalar, precision: int) -> str:
    """Correctly rounded decimal text with ``precision`` digits after the point.

    Exact ties (possible only for rationals) round half to even.
    """
    if precision < 1:
        raise ValueError("precision must be >= 1")
    negative = x.sign() < 0
    scaled = abs(x) * (10 ** precision)
    lower = _floor(scaled)
    half = (scaled - lower - Fraction(1, 2)).sign()
    n = lower + 1 if half > 0 or (half == 0 and lower % 2 == 1) else lower
    digits = str(n).rjust(precision + 1, "0")
    text = f"{digits[:-precision]}.{digits[-precision:]}"
    return "-" + text if negative and n != 0 else text


# -- named constants ---------------------------------------------------------


def golden_ratio(radicand: int = 5) -> QuadraticScalar:
    if radicand != 5:
        raise ValueError("the golden ratio lives in Q(sqrt 5)")
    return QuadraticScalar(Fraction(1, 2), Fraction(1, 2), 5)


ZERO = QuadraticScalar(0)
ONE = QuadraticScalar(1)
PHI = golden_ratio()
