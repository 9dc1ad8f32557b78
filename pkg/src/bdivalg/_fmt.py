"""Rational <-> document conversions shared by the serializers."""
from __future__ import annotations

from fractions import Fraction


def q_to_doc(x) -> int | str:
    """Integral values become JSON ints, everything else a "p/q" string."""
    x = Fraction(x)
    if x.denominator == 1:
        return int(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def q_from_doc(x) -> Fraction:
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"expected an int or a 'p/q' string, got {x!r}")


def vec_to_doc(v) -> list:
    return [q_to_doc(c) for c in v]


def vec_from_doc(v) -> tuple[Fraction, ...]:
    return tuple(q_from_doc(c) for c in v)
