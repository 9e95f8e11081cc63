"""
Exact and approximate numbers used throughout cdsclear.

Rationals are ``fractions.Fraction``. Irrational clearing rates of the
quadratic kind (``1 - sqrt(2)/2``, ``(3 - sqrt(5))/2``) are ``QuadraticSurd``
values ``a + b*sqrt(d)`` with rational ``a``, ``b`` and square-free ``d``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal
from enum import Enum
from fractions import Fraction
from typing import Union

import mpmath
from sympy.ntheory.factor_ import core as squarefree_part

from cdsclear.exceptions import IncompatibleRadicands, ModeMismatch, NegativeSqrtOperand

Rational = Fraction


class NumericMode(str, Enum):
    """Arithmetic a recovery vector is evaluated in, ordered by promotion rank."""

    RATIONAL = "rational"
    SURD = "surd"
    FLOAT = "float"

    @property
    def rank(self) -> int:
        return _MODE_RANK[self]

    @property
    def exact(self) -> bool:
        return self is not NumericMode.FLOAT


_MODE_RANK = {NumericMode.RATIONAL: 0, NumericMode.SURD: 1, NumericMode.FLOAT: 2}


def promote(*modes: NumericMode) -> NumericMode:
    """Return the widest of the given modes (rational -> surd -> float)."""
    return max(modes, key=lambda m: m.rank)


def as_rational(value: object) -> Fraction:
    """Parse ``value`` into an exact rational.

    Accepts ints, Fractions, Decimals, and strings such as ``"2/3"``, ``"0.25"``
    or ``"7"``. Floats are converted exactly from their binary value.

    Raises:
        ValueError: If the value is not a finite rational.
    """
    if isinstance(value, bool):
        raise ValueError(f"not a rational: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Decimal)):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"not a rational: {value!r}")
        return Fraction(value)
    if isinstance(value, QuadraticSurd) and value.is_rational:
        return value.a
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational: {value!r}") from exc
    raise ValueError(f"not a rational: {value!r}")


@dataclass(frozen=True, eq=False)
class QuadraticSurd:
    """The number ``a + b*sqrt(d)``.

    After construction ``d`` is square-free, and ``b == 0`` (with ``d == 0``)
    exactly when the value is rational.
    """

    a: Fraction
    b: Fraction = Fraction(0)
    d: int = 0

    def __post_init__(self) -> None:
        a, b, d = Fraction(self.a), Fraction(self.b), int(self.d)
        if d < 0:
            raise NegativeSqrtOperand(f"negative radicand {d}")
        if b != 0 and d > 0:
            free = int(squarefree_part(d))
            b *= math.isqrt(d // free)
            d = free
            if d == 1:
                a, b, d = a + b, Fraction(0), 0
        else:
            b, d = Fraction(0), 0
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", d)

    @classmethod
    def sqrt(cls, value: Fraction | int) -> QuadraticSurd:
        """Exact square root of a non-negative rational."""
        q = Fraction(value)
        if q < 0:
            raise NegativeSqrtOperand(f"square root of negative value {q}")
        return cls(Fraction(0), Fraction(1, q.denominator), q.numerator * q.denominator)

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def to_rational(self) -> Fraction:
        if not self.is_rational:
            raise ModeMismatch(f"{self} is irrational")
        return self.a

    def conjugate(self) -> QuadraticSurd:
        return QuadraticSurd(self.a, -self.b, self.d)

    def sign(self) -> int:
        """Exact sign: -1, 0 or 1."""
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sb == 0:
            return sa
        if sa >= 0 and sb > 0:
            return 1
        if sa <= 0 and sb < 0:
            return -1
        # opposite signs: the larger of a^2 and b^2*d wins
        if self.a * self.a > self.b * self.b * self.d:
            return sa
        return sb

    # ------------------------------------------------------------------
    # arithmetic
    # ------------------------------------------------------------------

    @staticmethod
    def _lift(other: object) -> QuadraticSurd | None:
        if isinstance(other, QuadraticSurd):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return QuadraticSurd(Fraction(other))
        return None

    def _radicand(self, other: QuadraticSurd) -> int:
        if self.d == 0 or other.d == 0 or self.d == other.d:
            return self.d or other.d
        raise IncompatibleRadicands(f"sqrt({self.d}) and sqrt({other.d}) do not share a quadratic field")

    def __add__(self, other: object):
        if isinstance(other, float):
            return float(self) + other
        rhs = self._lift(other)
        if rhs is None:
            return NotImplemented
        return QuadraticSurd(self.a + rhs.a, self.b + rhs.b, self._radicand(rhs))

    __radd__ = __add__

    def __neg__(self) -> QuadraticSurd:
        return QuadraticSurd(-self.a, -self.b, self.d)

    def __pos__(self) -> QuadraticSurd:
        return self

    def __sub__(self, other: object):
        if isinstance(other, float):
            return float(self) - other
        rhs = self._lift(other)
        if rhs is None:
            return NotImplemented
        return self + (-rhs)

    def __rsub__(self, other: object):
        if isinstance(other, float):
            return other - float(self)
        lhs = self._lift(other)
        if lhs is None:
            return NotImplemented
        return lhs + (-self)

    def __mul__(self, other: object):
        if isinstance(other, float):
            return float(self) * other
        rhs = self._lift(other)
        if rhs is None:
            return NotImplemented
        d = self._radicand(rhs)
        return QuadraticSurd(
            self.a * rhs.a + self.b * rhs.b * d,
            self.a * rhs.b + self.b * rhs.a,
            d,
        )

    __rmul__ = __mul__

    def inverse(self) -> QuadraticSurd:
        norm = self.a * self.a - self.b * self.b * self.d
        if norm == 0:
            raise ZeroDivisionError("division by zero surd")
        return QuadraticSurd(self.a / norm, -self.b / norm, self.d)

    def __truediv__(self, other: object):
        if isinstance(other, float):
            return float(self) / other
        rhs = self._lift(other)
        if rhs is None:
            return NotImplemented
        return self * rhs.inverse()

    def __rtruediv__(self, other: object):
        if isinstance(other, float):
            return other / float(self)
        lhs = self._lift(other)
        if lhs is None:
            return NotImplemented
        return lhs * self.inverse()

    def __abs__(self) -> QuadraticSurd:
        return -self if self.sign() < 0 else self

    # ------------------------------------------------------------------
    # comparison
    # ------------------------------------------------------------------

    def _compare(self, other: object) -> int | None:
        if isinstance(other, float):
            value = float(self)
            return (value > other) - (value < other)
        rhs = self._lift(other)
        if rhs is None:
            return None
        return (self - rhs).sign()

    def __eq__(self, other: object) -> bool:
        result = self._compare(other)
        return NotImplemented if result is None else result == 0

    def __lt__(self, other: object) -> bool:
        result = self._compare(other)
        return NotImplemented if result is None else result < 0

    def __le__(self, other: object) -> bool:
        result = self._compare(other)
        return NotImplemented if result is None else result <= 0

    def __gt__(self, other: object) -> bool:
        result = self._compare(other)
        return NotImplemented if result is None else result > 0

    def __ge__(self, other: object) -> bool:
        result = self._compare(other)
        return NotImplemented if result is None else result >= 0

    def __hash__(self) -> int:
        if self.is_rational:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    # ------------------------------------------------------------------
    # conversion
    # ------------------------------------------------------------------

    def to_mpf(self, digits: int = 50) -> mpmath.mpf:
        with mpmath.workdps(digits):
            a = mpmath.mpf(self.a.numerator) / self.a.denominator
            b = mpmath.mpf(self.b.numerator) / self.b.denominator
            return a + b * mpmath.sqrt(self.d)

    def __float__(self) -> float:
        return float(self.to_mpf())

    def to_decimal(self, digits: int = 30) -> str:
        """Decimal expansion with ``digits`` significant digits."""
        return mpmath.nstr(self.to_mpf(digits + 10), digits)

    def __str__(self) -> str:
        if self.is_rational:
            return format_number(self.a)
        denominator = math.lcm(self.a.denominator, self.b.denominator)
        head = self.a * denominator
        tail = abs(self.b) * denominator
        op = "-" if self.b < 0 else "+"
        body = f"{head} {op} {tail}*sqrt({self.d})"
        return body if denominator == 1 else f"({body})/{denominator}"


Number = Union[Fraction, QuadraticSurd, float]


def mode_of(value: Number) -> NumericMode:
    if isinstance(value, float):
        return NumericMode.FLOAT
    if isinstance(value, QuadraticSurd) and not value.is_rational:
        return NumericMode.SURD
    return NumericMode.RATIONAL


def coerce(value: object, mode: NumericMode) -> Number:
    """Convert ``value`` into the representation used by ``mode``.

    Raises:
        ModeMismatch: If an irrational or float value is forced into an exact
            narrower mode.
    """
    if mode is NumericMode.FLOAT:
        return float(value)
    if isinstance(value, QuadraticSurd):
        if value.is_rational:
            return value.a
        if mode is NumericMode.SURD:
            return value
        raise ModeMismatch(f"{value} is not rational")
    if isinstance(value, float):
        raise ModeMismatch(f"float value {value!r} in {mode.value} mode")
    return as_rational(value)


def simplify(value: Number) -> Number:
    """Collapse rational surds to Fractions."""
    if isinstance(value, QuadraticSurd) and value.is_rational:
        return value.a
    return value


def numeric_sqrt(value: Number) -> Number:
    """Square root in the arithmetic of ``value``.

    Rationals give a Fraction when they are perfect squares and a
    QuadraticSurd otherwise; floats give floats.

    Raises:
        NegativeSqrtOperand: For negative operands.
        IncompatibleRadicands: For irrational surds (the result is not quadratic).
    """
    if isinstance(value, float):
        if value < 0:
            raise NegativeSqrtOperand(f"square root of negative value {value}")
        return math.sqrt(value)
    if isinstance(value, QuadraticSurd):
        if not value.is_rational:
            raise IncompatibleRadicands(f"square root of {value} is not a quadratic surd")
        value = value.a
    return simplify(QuadraticSurd.sqrt(Fraction(value)))


def bit_size(value: Number) -> int:
    """Largest bit length among the numerators and denominators of ``value``."""
    if isinstance(value, float):
        return 0
    if isinstance(value, QuadraticSurd):
        return max(bit_size(value.a), bit_size(value.b), value.d.bit_length())
    value = Fraction(value)
    return max(abs(value.numerator).bit_length(), value.denominator.bit_length())


def format_number(value: Number, digits: int = 10) -> str:
    """Render exact values exactly and floats with ``digits`` significant digits."""
    if isinstance(value, float):
        return format(value, f".{digits}g")
    if isinstance(value, QuadraticSurd):
        return str(value)
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"
