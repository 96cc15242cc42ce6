import random
from fractions import Fraction as F

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from conftest import random_rational
from tiltwall.errors import DegenerateBG, NegativeDiscriminant, NotInU
from tiltwall.plane import PlaneLine, PlanePoint, line_through, pi, pi_prime
from tiltwall.rational import INFINITY
from tiltwall.stability import (
    Positivity,
    bg_form,
    bg_linear,
    bg_line,
    bg_quadratic,
    heart_positivity,
    heart_w_condition,
    li_region,
    lf_roots,
    nu,
)
from tiltwall.threefold import QUINTIC, KClass, line_bundle, subtract_line_bundle

fractions = st.fractions(min_value=-30, max_value=30, max_denominator=12)
classes = st.builds(KClass, st.integers(-4, 4), fractions, fractions, fractions)
O_D = KClass(0, 1, F(-1, 2), F(1, 6))


def test_nu_examples():
    assert nu(0, 3, line_bundle(-2), QUINTIC) == F(1, 2)
    assert nu(1, 5, KClass(0, 0, 3, 1), QUINTIC) is INFINITY
    with pytest.raises(NotInU):
        nu(2, 2, O_D, QUINTIC)


def test_nu_is_gradient_to_projection():
    rng = random.Random(3)
    for _ in range(200):
        v = KClass(rng.choice([-2, -1, 1, 3]), random_rational(rng), random_rational(rng), random_rational(rng))
        b = random_rational(rng)
        w = b * b / 2 + abs(random_rational(rng)) + F(1, 7)
        p = pi(v)
        if p.b == b:
            continue
        assert nu(b, w, v, QUINTIC) == line_through(PlanePoint(b, w), p).slope


@given(classes, fractions, fractions)
def test_nu_rank_zero_constant(v, b, extra):
    if v.r != 0 or v.c == 0:
        return
    w = b * b / 2 + abs(extra) + 1
    assert nu(b, w, v, QUINTIC) == v.s / v.c


def test_heart_positivity_examples():
    ox = line_bundle(0)
    assert heart_positivity(-1, ox, QUINTIC) is Positivity.INTERIOR
    assert heart_positivity(0, ox, QUINTIC) is Positivity.BOUNDARY
    n = 3
    assert heart_positivity(-2, line_bundle(-n), QUINTIC) is Positivity.VIOLATES
    assert heart_positivity(-2, -line_bundle(-n), QUINTIC) is Positivity.INTERIOR
    assert heart_w_condition(0, KClass(0, 0, 1, 0))
    assert not heart_w_condition(1, line_bundle(0))


@given(classes, fractions, fractions)
def test_bg_quadratic_is_twice_affine(v, b, w):
    assert bg_quadratic(b, w, v, QUINTIC) == 2 * bg_linear(b, w, v, QUINTIC)
    assert bg_form(b, w, v, QUINTIC) == bg_quadratic(b, w, v, QUINTIC)


def test_bg_affine_form_symbolically():
    b, w, r, c, s, d = sympy.symbols("b w r c s d")
    cb, sb = c - b * r, s - b * c + b**2 * r / 2
    db = d - b * s + b**2 * c / 2 - b**3 * r / 6
    quad = (2 * w - b**2) * (c**2 - 2 * r * s) + 4 * sb**2 - 6 * cb * db
    lin = (c**2 - 2 * r * s) * w + (3 * r * d - c * s) * b + (2 * s**2 - 3 * c * d)
    assert sympy.expand(quad - 2 * lin) == 0


def test_bg_vanishes_for_point_class_and_line_bundles():
    pt = KClass(0, 0, 0, F(1, 5))
    assert bg_form(F(1, 3), 7, pt, QUINTIC) == 0
    for n in range(-3, 4):
        ln = line_bundle(n)
        for b in (F(-7, 2), F(0), F(5, 3)):
            # Delta = 0, so the form does not depend on w
            assert bg_form(b, 100, ln, QUINTIC) == bg_form(b, 1, ln, QUINTIC)
        assert bg_form(n, 50, ln, QUINTIC) == 0


def test_bg_line_example():
    v = subtract_line_bundle(O_D, 10)
    line = bg_line(v, QUINTIC)
    assert pi(v) == PlanePoint(-11, F(101, 2))
    assert line.contains(pi(v))
    assert line.contains(pi_prime(v))


@given(classes)
def test_bg_line_through_both_projections(v):
    if v.r == 0 or v.c == 0 or v.c * v.c - 2 * v.r * v.s <= 0:
        return
    line = bg_line(v, QUINTIC)
    assert line.contains(pi(v)) and line.contains(pi_prime(v))


def _lf_oracle(c, s0, d0, n0):
    """The zero line of BG for v - O(-n0), written out in closed form: 4w = slope*b + intercept."""
    den = 2 * c * n0 + c * c + 2 * s0
    slope = -n0 + (n0 * (6 * s0 + c * c) + 4 * (c * s0 + 3 * d0)) / den
    intercept = n0 * n0 + (n0 * n0 * (6 * s0 - c * c) + 4 * (3 * d0 * n0 + 3 * d0 * c - 2 * s0 * s0)) / den
    return PlaneLine.make(-slope, 4, intercept)


def test_bg_line_matches_closed_form():
    rng = random.Random(17)
    for _ in range(20):
        c = F(rng.randint(1, 15), 5)
        s0 = random_rational(rng)
        d0 = random_rational(rng)
        n0 = rng.randint(20, 200)
        v = subtract_line_bundle(KClass(0, c, s0, d0), n0)
        assert bg_line(v, QUINTIC) == _lf_oracle(c, s0, d0, n0)


def test_bg_line_errors():
    with pytest.raises(DegenerateBG):
        bg_line(line_bundle(3), QUINTIC)
    with pytest.raises(NegativeDiscriminant):
        bg_line(KClass(1, 0, 1, 0), QUINTIC)


def test_lf_roots():
    v = subtract_line_bundle(O_D, 1000)
    b1, b2 = lf_roots(v, QUINTIC)
    assert b1 < b2
    line = bg_line(v, QUINTIC)
    for x in (b1, b2):
        assert line.w_at(x) == x * x / 2
    assert abs(float((b1 + 1000 - F(1, 3)).to_decimal(30))) * 1000 < 5


def test_li_region_examples():
    assert li_region(0, F(1, 10))
    assert not li_region(F(1, 2), F(1, 4))
    assert li_region(F(1, 2), F(3, 8))


@given(st.integers(-50, 50), st.fractions(min_value=0, max_value=20, max_denominator=50))
def test_li_region_integer_b(b, extra):
    if extra == 0:
        return
    assert li_region(b, F(b * b, 2) + extra)


@given(st.integers(-50, 50), st.fractions(min_value=0, max_value=2, max_denominator=64))
def test_li_region_half_integer_b(k, t):
    b = F(2 * k + 1, 2)
    w = b * b / 2 + t / 8
    assert li_region(b, w) == (t > 1)
