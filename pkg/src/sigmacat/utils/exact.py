"""Exact comparisons for rationals and square-root lengths."""

from __future__ import annotations

from dataclasses import dataclass
from functools import total_ordering

import sympy

ZERO = sympy.Integer(0)
ONE = sympy.Integer(1)


def rational(value: object) -> sympy.Rational:
    """Convert ints, strings such as ``"3/4"`` and sympy numbers to a Rational."""
    if isinstance(value, sympy.Rational):
        return value
    if isinstance(value, str):
        value = value.strip()
    converted = sympy.Rational(value)
    if not isinstance(converted, sympy.Rational):
        msg = f"Not an exact rational: {value!r}"
        raise ValueError(msg)
    return converted


class UndecidedSignError(ArithmeticError):
    """Raised when the sign of an expression cannot be settled exactly."""


def sign(value: sympy.Expr) -> int:
    """Return the sign of an exact real number built from rationals and roots."""
    value = sympy.sympify(value)
    if value.is_Rational:
        return bool(value > 0) - bool(value < 0)
    for form in (value, sympy.expand(value), sympy.radsimp(value)):
        if form.is_zero:
            return 0
        if form.is_positive:
            return 1
        if form.is_negative:
            return -1
    msg = f"Cannot decide the sign of {value}"
    raise UndecidedSignError(msg)


def compare(left: sympy.Expr, right: sympy.Expr) -> int:
    """Three-way comparison of two exact real numbers."""
    return sign(sympy.sympify(left) - sympy.sympify(right))


def exact_min(values: list[sympy.Expr]) -> sympy.Expr:
    """Minimum of a nonempty list of exact reals."""
    best = values[0]
    for value in values[1:]:
        if compare(value, best) < 0:
            best = value
    return best


def exact_max(values: list[sympy.Expr]) -> sympy.Expr:
    """Maximum of a nonempty list of exact reals."""
    best = values[0]
    for value in values[1:]:
        if compare(value, best) > 0:
            best = value
    return best


@total_ordering
@dataclass(frozen=True)
class Length:
    """A nonnegative length stored through its exact square."""

    squared: sympy.Rational

    @classmethod
    def of(cls, value: object) -> Length:
        """Build the length whose value is the given nonnegative rational."""
        value = rational(value)
        return cls(value * value)

    @property
    def value(self) -> sympy.Expr:
        """The length itself, possibly an exact square root."""
        return sympy.sqrt(self.squared)

    def scaled(self, factor_squared: sympy.Rational) -> Length:
        """Multiply by a factor given through its square."""
        return Length(self.squared * factor_squared)

    def bounds(self, value: sympy.Rational) -> bool:
        """Return True when ``|value| <= self``."""
        value = rational(value)
        return value * value <= self.squared

    def at_least(self, value: sympy.Rational) -> bool:
        """Return True when ``value <= self``."""
        value = rational(value)
        return value <= 0 or value * value <= self.squared

    def __lt__(self, other: Length) -> bool:
        return self.squared < other.squared

    def __str__(self) -> str:
        return str(self.value)


ZERO_LENGTH = Length(ZERO)
