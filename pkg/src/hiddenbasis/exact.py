"""Rendering and parsing of exact rationals."""
from __future__ import annotations

import decimal
from fractions import Fraction

SIG_DIGITS = 12


def to_decimal(x: Fraction | int, digits: int = SIG_DIGITS) -> str:
    """Round to ``digits`` significant digits, plain notation, trailing zeros dropped."""
    x = Fraction(x)
    ctx = decimal.Context(prec=digits, rounding=decimal.ROUND_HALF_EVEN)
    d = ctx.divide(decimal.Decimal(x.numerator), decimal.Decimal(x.denominator))
    if d == 0:
        return "0"
    text = format(d.normalize(ctx), "f")
    return text


def parse_rational(text: str) -> Fraction:
    """Exact parse of '3', '-1/4', '0.125' or '1e-3'."""
    text = text.strip()
    if not text:
        raise ValueError("empty number")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {text!r}") from exc
