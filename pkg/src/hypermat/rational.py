"""Exact rational scalars and their string forms.

Every invariant in this package is computed over arbitrary-precision
rationals so that identity checks can demand residuals of exactly zero.
``fractions.Fraction`` already guarantees lowest terms and a positive
denominator; this module adds the coercion and formatting conventions used
everywhere else. Inexact (floating) values are rejected here and must be
opted into explicitly where supported.
"""

from __future__ import annotations

from fractions import Fraction

Scalar = Fraction


def as_scalar(value) -> Fraction:
    """Coerce an int, a Fraction, or a string like ``"p/q"`` or ``"3"``."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int) and not isinstance(value, bool):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"not an exact scalar: {value!r}")


def format_scalar(value) -> str:
    """Render as ``"p/q"``, omitting the denominator when it is 1."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"
