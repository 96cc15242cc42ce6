"""Tilt slopes, numerical heart conditions and the Bogomolov-Gieseker form.

All quantities use normalised characters; the BG form is returned with its
natural ``H^6`` scaling so values agree with the un-normalised definition.
"""

from __future__ import annotations

import math
from enum import Enum
from fractions import Fraction

from .errors import DegenerateBG, NegativeDiscriminant, NotInU
from .plane import PlaneLine, QuadNum, parabola_roots
from .rational import INFINITY, RationalLike, Slope, q
from .threefold import KClass, ThreefoldModel, ch_b, delta_normalised


class Positivity(str, Enum):
    VIOLATES = "violates"
    BOUNDARY = "boundary"
    INTERIOR = "interior"


def nu(b: RationalLike, w: RationalLike, v: KClass, X: ThreefoldModel | None = None) -> Slope:
    """Tilt slope (ch2.H - w ch0 H^3) / ch1^b.H^2, or INFINITY when the denominator vanishes."""
    b, w = q(b), q(w)
    if not w > b * b / 2:
        raise NotInU(f"({b}, {w}) is not above the parabola")
    den = v.c - b * v.r
    if den == 0:
        return INFINITY
    return (v.s - w * v.r) / den


def heart_positivity(b: RationalLike, v: KClass, X: ThreefoldModel | None = None) -> Positivity:
    """Sign of ch1^b.H^2: the b-dependent necessary condition for lying in the tilted heart."""
    x = v.c - q(b) * v.r
    if x > 0:
        return Positivity.INTERIOR
    if x == 0:
        return Positivity.BOUNDARY
    return Positivity.VIOLATES


def heart_w_condition(w: RationalLike, v: KClass) -> bool:
    """Second heart condition, relevant on the boundary: ch2.H - w ch0 H^3 >= 0."""
    return v.s - q(w) * v.r >= 0


def bg_quadratic(b: RationalLike, w: RationalLike, v: KClass, X: ThreefoldModel) -> Fraction:
    """(2w - b^2) Delta + 4 (ch2^b.H)^2 - 6 (ch1^b.H^2) ch3^b, scaled by H^6."""
    b, w = q(b), q(w)
    t = ch_b(v, b)
    val = (2 * w - b * b) * delta_normalised(v) + 4 * t.s * t.s - 6 * t.c * t.d
    return X.h6 * val


def bg_linear(b: RationalLike, w: RationalLike, v: KClass, X: ThreefoldModel) -> Fraction:
    """Half the BG form written as an affine function of (b, w)."""
    b, w = q(b), q(w)
    r, c, s, d = v.as_tuple()
    val = (c * c - 2 * r * s) * w + (3 * r * d - c * s) * b + (2 * s * s - 3 * c * d)
    return X.h6 * val


def bg_form(b: RationalLike, w: RationalLike, v: KClass, X: ThreefoldModel) -> Fraction:
    """The BG form, cross-checked against twice its affine expression."""
    quad = bg_quadratic(b, w, v, X)
    lin = bg_linear(b, w, v, X)
    if quad != 2 * lin:
        raise ArithmeticError("quadratic and affine BG evaluations disagree")
    return quad


def bg_line(v: KClass, X: ThreefoldModel | None = None) -> PlaneLine:
    """Zero line of the BG form; needs Delta > 0 so that it is a graph over b."""
    r, c, s, d = v.as_tuple()
    disc = delta_normalised(v)
    if disc == 0:
        raise DegenerateBG("Delta = 0: the BG zero locus is not a line over b")
    if disc < 0:
        raise NegativeDiscriminant("Delta < 0")
    return PlaneLine.make(3 * r * d - c * s, disc, 3 * c * d - 2 * s * s)


def lf_roots(v_n0: KClass, X: ThreefoldModel | None = None) -> tuple[QuadNum, QuadNum]:
    return parabola_roots(bg_line(v_n0, X))


def li_region(b: RationalLike, w: RationalLike) -> bool:
    """w > b^2/2 + (b - floor b)(floor b + 1 - b)/2."""
    b, w = q(b), q(w)
    fb = math.floor(b)
    return w > b * b / 2 + (b - fb) * (fb + 1 - b) / 2
