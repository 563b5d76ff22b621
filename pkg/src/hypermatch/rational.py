"""Exact rational parsing and formatting for the wire formats."""

from __future__ import annotations

import re
from decimal import ROUND_HALF_UP, Decimal, localcontext
from fractions import Fraction

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_rational(value: str | int | Fraction) -> Fraction:
    """Parse ``"a/b"``, ``"-a/b"`` or an integer; floats are refused."""
    if isinstance(value, bool):
        raise ValueError(f"not a rational: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if not isinstance(value, str):
        raise ValueError(f"not a rational: {value!r}")
    m = _RATIONAL_RE.match(value)
    if m is None:
        raise ValueError(f"not an exact rational string: {value!r}")
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator: {value!r}")
    return Fraction(int(m.group(1)), den)


def format_rational(value: Fraction | int) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def round_decimal(value: Fraction | Decimal | str, places: int = 4) -> str:
    """Round half-up to a fixed number of decimal places, for display columns."""
    with localcontext() as ctx:
        ctx.prec = 60
        if isinstance(value, Fraction):
            d = Decimal(value.numerator) / Decimal(value.denominator)
        else:
            d = Decimal(value)
        return str(d.quantize(Decimal(1).scaleb(-places), rounding=ROUND_HALF_UP))
