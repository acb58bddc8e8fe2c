"""Exact rational plumbing: parsing, proportion construction, decimal rendering.

Every probability the engine emits is a reduced ``Fraction`` in [0, 1] built
as (qualifying outcomes) / (total outcomes). Binary floats are rejected on
input because value equality and tie detection must be exact.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

from .errors import DomainError

RationalLike = Union[int, str, Fraction]


def as_rational(value: RationalLike) -> Fraction:
    """Parse an exact rational from an int, Fraction, or string.

    Strings may be integers ("42"), decimals ("0.05"), or ratios ("1/3"),
    all parsed exactly. Floats are refused: 0.1 as a binary float is not
    the decimal 0.1.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise DomainError(f"not an exact rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise DomainError(
            f"binary float {value!r} is not exact; pass the value as a string"
        )
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"not an exact rational: {value!r}") from exc
    raise DomainError(f"not an exact rational: {value!r}")


def proportion(count: int, total: int) -> Fraction:
    """Reduced count/total, validated to lie in [0, 1]."""
    if total < 1:
        raise DomainError(f"proportion denominator must be positive, got {total}")
    if count < 0 or count > total:
        raise DomainError(f"proportion count {count} outside [0, {total}]")
    return Fraction(count, total)


def render_decimal(value: Fraction, places: int = 4) -> str:
    """Decimal rendering rounded half-even to `places` digits.

    Pure integer arithmetic; never loses the tie direction to binary
    floating point.
    """
    if places < 0:
        raise DomainError(f"decimal places must be >= 0, got {places}")
    num, den = value.numerator, value.denominator
    sign = "-" if num < 0 else ""
    scaled = abs(num) * 10**places
    q, r = divmod(scaled, den)
    if 2 * r > den or (2 * r == den and q % 2 == 1):
        q += 1
    if places == 0:
        return sign + str(q)
    digits = str(q).rjust(places + 1, "0")
    return f"{sign}{digits[:-places]}.{digits[-places:]}"
