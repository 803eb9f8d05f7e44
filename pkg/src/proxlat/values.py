"""Exact proximity values on the unit interval.

Values are plain :class:`fractions.Fraction` instances restricted to [0, 1].
``Fraction`` already keeps numerator and denominator in lowest terms with a
positive denominator, so equality and hashing are structural on the
canonical form.
"""

from __future__ import annotations

import re
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from typing import Iterable, Union

from .exceptions import ParseError

ProximityValue = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)

ValueLike = Union[Fraction, int, str]

_RATIO = re.compile(r"^\s*(\d+)\s*/\s*(\d+)\s*$")
_DECIMAL = re.compile(r"^\s*\d*(\.\d*)?([eE][+-]?\d+)?\s*$")


def as_value(x: ValueLike) -> Fraction:
    """Coerce ``x`` to a proximity value, rejecting anything outside [0, 1].

    Floats are refused: they cannot carry the exact rationals the algebra
    depends on. Strings go through :func:`parse_value`.
    """
    if isinstance(x, str):
        return parse_value(x)
    if isinstance(x, bool) or isinstance(x, float):
        raise TypeError(f"proximity values must be exact, got {type(x).__name__} {x!r}")
    try:
        v = Fraction(x)
    except (TypeError, ValueError):
        raise TypeError(f"cannot interpret {x!r} as a proximity value") from None
    if not ZERO <= v <= ONE:
        raise ValueError(f"proximity value {v} outside [0, 1]")
    return v


def mul(x: Fraction, y: Fraction) -> Fraction:
    return x * y


def residuate(x: Fraction, y: Fraction) -> Fraction:
    """``x ⊢ y``: the largest ``z`` with ``z * x <= y``.

    Equals ``y / x`` when ``y < x`` and 1 otherwise (so ``residuate(0, y) == 1``).
    """
    # cross-multiplied integers: much cheaper than Fraction.__lt__
    yn, yd, xn, xd = y.numerator, y.denominator, x.numerator, x.denominator
    if yn * xd < xn * yd:
        return Fraction(yn * xd, yd * xn)
    return ONE


def meet(xs: Iterable[Fraction]) -> Fraction:
    """Minimum; the empty meet is 1."""
    return min(xs, default=ONE)


def join(xs: Iterable[Fraction]) -> Fraction:
    """Maximum; the empty join is 0."""
    return max(xs, default=ZERO)


def from_stars(k: int, s_max: int) -> Fraction:
    """Convert a rating of ``k`` stars out of ``s_max`` to ``k / s_max``."""
    if s_max < 1:
        raise ValueError(f"star scale must be at least 1, got {s_max}")
    if not 0 <= k <= s_max:
        raise ValueError(f"star rating {k} outside 0..{s_max}")
    return Fraction(k, s_max)


def parse_value(text: str) -> Fraction:
    """Parse ``"p/q"``, a decimal literal, or an integer into an exact value.

    >>> parse_value("0.8")
    Fraction(4, 5)
    """
    token = text.strip()
    m = _RATIO.match(token)
    if m:
        p, q = int(m.group(1)), int(m.group(2))
        if q == 0:
            raise ParseError(f"zero denominator in {text!r}", token=text)
        v = Fraction(p, q)
    elif token and token != "." and _DECIMAL.match(token):
        try:
            v = Fraction(Decimal(token))
        except InvalidOperation:
            raise ParseError(f"malformed value {text!r}", token=text) from None
    else:
        raise ParseError(f"malformed value {text!r}", token=text)
    if v > ONE:
        raise ParseError(f"value {text!r} outside [0, 1]", token=text)
    return v


def format_value(x: Fraction) -> str:
    """Canonical text form: ``"0"``, ``"1"`` or ``"p/q"``."""
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"
