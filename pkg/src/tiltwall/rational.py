"""Small helpers around :class:`fractions.Fraction` that refuse floats."""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational

from .errors import InputError

RationalLike = int | Fraction | str


def q(x: RationalLike) -> Fraction:
    """Coerce ``x`` to a Fraction, rejecting floats so no rounding can sneak in."""
    if isinstance(x, bool):
        raise InputError("booleans are not rationals")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"not a rational literal: {x!r}") from exc
    raise InputError(f"expected an exact rational, got {type(x).__name__}")


def is_integer(x: Fraction) -> bool:
    return x.denominator == 1


def floor(x: Fraction) -> int:
    return math.floor(x)


def ceil(x: Fraction) -> int:
    return math.ceil(x)


def sign(x: Fraction | int) -> int:
    return (x > 0) - (x < 0)


def lcm(*values: int) -> int:
    out = 1
    for v in values:
        out = out * v // math.gcd(out, v)
    return out


class PlusInfinity:
    """The +infinity slope value; compares above every rational."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INFINITY"

    __str__ = __repr__

    def __eq__(self, other: object) -> bool:
        return other is self

    def __hash__(self) -> int:
        return hash("tiltwall.infinity")

    def __lt__(self, other: object) -> bool:
        return False

    def __le__(self, other: object) -> bool:
        return other is self

    def __gt__(self, other: object) -> bool:
        return other is not self

    def __ge__(self, other: object) -> bool:
        return True


INFINITY = PlusInfinity()

Slope = Fraction | PlusInfinity
