"""Exact rational input parsing and output formatting."""

from __future__ import annotations

import re
from decimal import Decimal, localcontext
from fractions import Fraction

_FRACTION_RE = re.compile(r"^\s*([+-]?\d+)\s*/\s*(\d+)\s*$")
_DECIMAL_RE = re.compile(r"^\s*[+-]?(\d+(\.\d*)?|\.\d+)\s*$")


def parse_ratio(value) -> Fraction:
    """Convert ``value`` to a :class:`Fraction` without ever going through a float.

    Accepts ``Fraction``, ``int``, ``"p/q"`` strings and finite decimal
    strings such as ``"0.05"`` (read as ``5/100``). Floats are rejected
    because their binary expansion rarely equals the decimal the user typed.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not ratios")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise TypeError(f"refusing float {value!r}; pass a 'p/q' or decimal string instead")
    if isinstance(value, str):
        m = _FRACTION_RE.match(value)
        if m:
            den = int(m.group(2))
            if den == 0:
                raise ValueError(f"zero denominator in {value!r}")
            return Fraction(int(m.group(1)), den)
        if _DECIMAL_RE.match(value):
            return Fraction(value.strip())
        raise ValueError(f"not an exact rational: {value!r}")
    raise TypeError(f"cannot interpret {type(value).__name__} as an exact ratio")


def format_ratio(x: Fraction) -> str:
    """Serialize as ``"p/q"``; the denominator is always written, even when 1."""
    return f"{x.numerator}/{x.denominator}"


def decimal_approx(x: Fraction, digits: int = 12) -> str:
    """Display-only decimal rendering with ``digits`` significant digits."""
    with localcontext() as ctx:
        ctx.prec = digits
        d = Decimal(x.numerator) / Decimal(x.denominator)
    return format(d, f".{digits}g") if d != 0 else "0"
