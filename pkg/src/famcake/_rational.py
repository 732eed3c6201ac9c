from fractions import Fraction

from .errors import FamcakeError


class ParseError(FamcakeError, ValueError):
    pass


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool) or isinstance(x, float):
        raise TypeError(f"refusing inexact value {x!r}")
    return Fraction(x)


def fmt(x: Fraction) -> str:
    """Always ``p/q``, even for integers."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse(s, field: str = "value") -> Fraction:
    if isinstance(s, bool) or isinstance(s, float):
        raise ParseError(f"{field}: expected a rational string 'p/q', got {s!r}")
    if isinstance(s, int):
        return Fraction(s)
    if not isinstance(s, str):
        raise ParseError(f"{field}: expected a rational string 'p/q', got {s!r}")
    try:
        return Fraction(s.strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"{field}: cannot parse rational {s!r}") from None
