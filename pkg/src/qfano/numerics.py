"""Exact rational arithmetic and modular helpers.

Rationals are :class:`fractions.Fraction`; it is already canonical (reduced,
positive denominator), hashable on the canonical form and backed by Python's
arbitrary precision integers.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

Rational = Fraction


class InvalidInput(ValueError):
    pass


class NotInvertible(ArithmeticError):
    pass


def normalize(numerator: int, denominator: int) -> Rational:
    if denominator == 0:
        raise InvalidInput("zero denominator")
    return Fraction(numerator, denominator)


def residue(x: int, r: int) -> int:
    """Least non-negative representative of ``x`` modulo ``r``."""
    if r <= 0:
        raise InvalidInput(f"modulus must be positive, got {r}")
    return x % r


def inverse_mod(a: int, r: int) -> int:
    if r < 2:
        raise InvalidInput(f"modulus must be at least 2, got {r}")
    if gcd(a, r) != 1:
        raise NotInvertible(f"{a} is not invertible modulo {r}")
    return pow(a, -1, r)


def ceil_div(a: Rational | int, b: Rational | int) -> int:
    """Exact ceiling of ``a / b`` for rationals."""
    x = Fraction(a) / Fraction(b)
    return -((-x.numerator) // x.denominator)


def format_rational(x: Rational | int) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Rational:
    text = text.strip()
    num, sep, den = text.partition("/")
    try:
        if not sep:
            return Fraction(int(num))
        return normalize(int(num), int(den))
    except ValueError as exc:
        if isinstance(exc, InvalidInput):
            raise
        raise InvalidInput(f"not a rational: {text!r}") from None
