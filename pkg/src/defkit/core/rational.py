"""Rational scalars.

``fractions.Fraction`` already keeps values in lowest terms with a positive
denominator, so it is used directly as the scalar type.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational as _RationalABC

Rational = Fraction


def to_rational(x) -> Fraction:
    """Coerce ints, Fractions and "p/q" strings to a Fraction.

    Floats are refused: silently converting 0.1 would smuggle a binary
    rounding error into an exact computation.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, (int, _RationalABC)):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def format_rational(x) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(s) -> Fraction:
    if isinstance(s, int) and not isinstance(s, bool):
        return Fraction(s)
    if not isinstance(s, str):
        raise TypeError(f"expected a 'p/q' string, got {s!r}")
    text = s.strip()
    if "." in text or "e" in text.lower():
        raise ValueError(f"not an exact rational literal: {s!r}")
    return Fraction(text)
