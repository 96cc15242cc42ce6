"""Exact geometry of the (b, w)-plane.

Points and lines have rational coordinates.  Intersections with the parabola
``w = b^2/2`` live in a real quadratic field and are held as :class:`QuadNum`
values ``a + b*sqrt(D)``, compared exactly by sign analysis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal, localcontext
from enum import Enum
from fractions import Fraction

from .errors import (
    ChOneZero,
    CoincidentPoints,
    InputError,
    NoIntersection,
    RankZero,
    VerticalLine,
)
from .rational import RationalLike, lcm, q, sign
from .threefold import KClass

_SMALL_PRIMES = [p for p in range(2, 2000) if all(p % k for k in range(2, math.isqrt(p) + 1))]


def _split_square(n: int) -> tuple[int, int]:
    """Write n = f^2 * k pulling out squares of small primes (and n itself if square)."""
    root = math.isqrt(n)
    if root * root == n:
        return root, 1
    f = 1
    for p in _SMALL_PRIMES:
        pp = p * p
        if pp > n:
            break
        while n % pp == 0:
            n //= pp
            f *= p
    root = math.isqrt(n)
    if root * root == n:
        return f * root, 1
    return f, n


def _sign_two_radicals(p: Fraction, x: Fraction, d1: int, y: Fraction, d2: int) -> int:
    """Exact sign of p + x*sqrt(d1) + y*sqrt(d2) with d1, d2 >= 0."""
    sx = sign(x) if d1 else 0
    sy = sign(y) if d2 else 0
    if sx == 0 and sy == 0:
        return sign(p)
    if sy == 0:
        return QuadNum.make(p, x, d1).sign()
    if sx == 0:
        return QuadNum.make(p, y, d2).sign()
    if d1 == d2:
        return QuadNum.make(p, x + y, d1).sign()
    # sign of the radical part u = x*sqrt(d1) + y*sqrt(d2)
    if sx == sy:
        su = sx
    else:
        su = sx * sign(x * x * d1 - y * y * d2)
    sp = sign(p)
    if su == 0 or sp == 0 or su == sp:
        return sp or su
    # opposite signs: compare p^2 with u^2 = x^2 d1 + y^2 d2 + 2xy sqrt(d1 d2)
    diff = QuadNum.make(p * p - x * x * d1 - y * y * d2, -2 * x * y, d1 * d2)
    return sp * diff.sign()


@dataclass(frozen=True)
class QuadNum:
    """The real number a + b*sqrt(dd) with rational a, b and an integer radicand dd.

    Canonical form: if the radicand is a rational square the value is stored
    as (a, 0, 0); otherwise dd is an integer >= 2 with small square factors
    removed.  Exact comparison works across different radicands.
    """

    a: Fraction
    b: Fraction
    dd: int

    @staticmethod
    def make(a: RationalLike, b: RationalLike = 0, dd: RationalLike = 0) -> QuadNum:
        a, b, Dq = q(a), q(b), q(dd)
        if Dq < 0:
            raise InputError("radicand must be nonnegative")
        if b == 0 or Dq == 0:
            return QuadNum(a, Fraction(0), 0)
        # sqrt(p/r) = sqrt(p*r)/r
        n = Dq.numerator * Dq.denominator
        f, k = _split_square(n)
        b = b * f / Dq.denominator
        if k == 1:
            return QuadNum(a + b, Fraction(0), 0)
        return QuadNum(a, b, k)

    @staticmethod
    def rational(a: RationalLike) -> QuadNum:
        return QuadNum(q(a), Fraction(0), 0)

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise InputError(f"{self} is irrational")
        return self.a

    def sign(self) -> int:
        sa, sb = sign(self.a), sign(self.b)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        return sa * sign(self.a * self.a - self.b * self.b * self.dd)

    def conjugate(self) -> QuadNum:
        return QuadNum(self.a, -self.b, self.dd)

    # arithmetic ---------------------------------------------------------
    def _coerce(self, other: object) -> QuadNum:
        if isinstance(other, QuadNum):
            return other
        if isinstance(other, (int, Fraction)):
            return QuadNum.rational(other)
        return NotImplemented  # type: ignore[return-value]

    def _common(self, other: QuadNum) -> int:
        if self.dd and other.dd and self.dd != other.dd:
            raise InputError("arithmetic between different quadratic fields")
        return self.dd or other.dd

    def __add__(self, other: object) -> QuadNum:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QuadNum.make(self.a + o.a, self.b + o.b, self._common(o))

    __radd__ = __add__

    def __neg__(self) -> QuadNum:
        return QuadNum(-self.a, -self.b, self.dd)

    def __sub__(self, other: object) -> QuadNum:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: object) -> QuadNum:
        return (-self) + other

    def __mul__(self, other: object) -> QuadNum:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        D = self._common(o)
        return QuadNum.make(self.a * o.a + self.b * o.b * D, self.a * o.b + self.b * o.a, D)

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> QuadNum:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        norm = o.a * o.a - o.b * o.b * o.dd
        if norm == 0:
            raise ZeroDivisionError("division by zero QuadNum")
        num = self * o.conjugate()
        return QuadNum.make(num.a / norm, num.b / norm, num.dd)

    def __rtruediv__(self, other: object) -> QuadNum:
        return QuadNum._coerce(self, other) / self

    # comparison ---------------------------------------------------------
    def compare(self, other: object) -> int:
        o = self._coerce(other)
        if o is NotImplemented:
            raise TypeError(f"cannot compare QuadNum with {type(other).__name__}")
        return _sign_two_radicals(self.a - o.a, self.b, self.dd, -o.b, o.dd)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, (QuadNum, int, Fraction)):
            return NotImplemented
        return self.compare(other) == 0

    def __hash__(self) -> int:
        # equal values share a, whatever square factors remain in dd
        return hash(self.a) if self.is_rational else hash(("quad", self.a))

    def __lt__(self, other: object) -> bool:
        return self.compare(other) < 0

    def __le__(self, other: object) -> bool:
        return self.compare(other) <= 0

    def __gt__(self, other: object) -> bool:
        return self.compare(other) > 0

    def __ge__(self, other: object) -> bool:
        return self.compare(other) >= 0

    # rounding -----------------------------------------------------------
    def to_decimal(self, digits: int = 50) -> Decimal:
        """Value rounded to ``digits`` significant digits."""
        with localcontext() as ctx:
            scale = max(len(str(abs(self.a.numerator))), len(str(abs(self.b.numerator))), 1)
            ctx.prec = digits + scale + 20
            val = Decimal(self.a.numerator) / Decimal(self.a.denominator)
            if self.b:
                val += Decimal(self.b.numerator) / Decimal(self.b.denominator) * Decimal(self.dd).sqrt()
            ctx.prec = digits
            return +val

    def floor(self) -> int:
        if self.is_rational:
            return math.floor(self.a)
        guess = int(math.floor(self.to_decimal(60)))
        while self < guess:
            guess -= 1
        while self >= guess + 1:
            guess += 1
        return guess

    def ceil(self) -> int:
        return -(-self).floor()

    def __str__(self) -> str:
        if self.is_rational:
            return str(self.a)
        return f"{self.a} + {self.b}*sqrt({self.dd})"

    def to_json(self) -> dict:
        from .serialize import rat

        return {"a": rat(self.a), "b": rat(self.b), "D": rat(Fraction(self.dd))}


def rational_between(lo: QuadNum, hi: QuadNum) -> Fraction:
    """A deterministic rational strictly between lo < hi (simplest by denominator)."""
    if not lo < hi:
        raise InputError("empty interval")
    den = 1
    while True:
        k = (lo * den).floor() + 1
        if QuadNum.rational(Fraction(k, den)) < hi:
            return Fraction(k, den)
        den *= 2


@dataclass(frozen=True)
class PlanePoint:
    b: Fraction
    w: Fraction

    def __init__(self, b: RationalLike, w: RationalLike):
        object.__setattr__(self, "b", q(b))
        object.__setattr__(self, "w", q(w))


class Side(str, Enum):
    ABOVE = "above"
    ON = "on"
    BELOW = "below"


@dataclass(frozen=True)
class PlaneLine:
    """The line A*b + B*w = C with primitive integer coefficients.

    Sign convention: B > 0, or B = 0 and A > 0.
    """

    A: int
    B: int
    C: int

    @staticmethod
    def make(A: RationalLike, B: RationalLike, C: RationalLike) -> PlaneLine:
        A, B, C = q(A), q(B), q(C)
        if A == 0 and B == 0:
            raise InputError("line needs A or B nonzero")
        m = lcm(A.denominator, B.denominator, C.denominator)
        a, b, c = int(A * m), int(B * m), int(C * m)
        g = math.gcd(math.gcd(a, b), c)
        a, b, c = a // g, b // g, c // g
        if b < 0 or (b == 0 and a < 0):
            a, b, c = -a, -b, -c
        return PlaneLine(a, b, c)

    @staticmethod
    def through_with_slope(p: PlanePoint, slope: RationalLike) -> PlaneLine:
        m = q(slope)
        # w - p.w = m (b - p.b)  <=>  -m b + w = p.w - m p.b
        return PlaneLine.make(-m, 1, p.w - m * p.b)

    @property
    def is_vertical(self) -> bool:
        return self.B == 0

    @property
    def slope(self) -> Fraction:
        if self.is_vertical:
            raise VerticalLine("vertical line has no slope")
        return Fraction(-self.A, self.B)

    def w_at(self, b: RationalLike | QuadNum):
        if self.is_vertical:
            raise VerticalLine("vertical line is not a graph over b")
        if isinstance(b, QuadNum):
            return (QuadNum.rational(self.C) - b * self.A) / self.B
        return (self.C - self.A * q(b)) / Fraction(self.B)

    def contains(self, p: PlanePoint) -> bool:
        return self.A * p.b + self.B * p.w == self.C

    def translate_through(self, p: PlanePoint) -> PlaneLine:
        return PlaneLine.make(self.A, self.B, self.A * p.b + self.B * p.w)

    def as_triple(self) -> list[int]:
        return [self.A, self.B, self.C]

    def __str__(self) -> str:
        return f"{self.A}*b + {self.B}*w = {self.C}"


def pi(v: KClass) -> PlanePoint:
    if v.r == 0:
        raise RankZero("projection is undefined for rank zero classes")
    return PlanePoint(v.c / v.r, v.s / v.r)


def pi_prime(v: KClass) -> PlanePoint:
    if v.c == 0:
        raise ChOneZero("second projection needs ch1 nonzero")
    return PlanePoint(2 * v.s / v.c, 3 * v.d / v.c)


def line_through(p: PlanePoint, q_: PlanePoint) -> PlaneLine:
    if p == q_:
        raise CoincidentPoints("a line needs two distinct points")
    # (w_q - w_p) b - (b_q - b_p) w = (w_q - w_p) b_p - (b_q - b_p) w_p
    A = q_.w - p.w
    B = -(q_.b - p.b)
    return PlaneLine.make(A, B, A * p.b + B * p.w)


def parabola_discriminant(line: PlaneLine) -> Fraction:
    """Radicand of the roots of b^2/2 = line_w(b); roots are -A/B +- sqrt(radicand)."""
    if line.is_vertical:
        raise VerticalLine("vertical line")
    t = Fraction(line.A, line.B)
    return t * t + Fraction(2 * line.C, line.B)


def parabola_roots(line: PlaneLine) -> tuple[QuadNum, QuadNum]:
    if line.is_vertical:
        x = QuadNum.rational(Fraction(line.C, line.A))
        return x, x
    disc = parabola_discriminant(line)
    if disc < 0:
        raise NoIntersection("line misses the parabola")
    mid = Fraction(-line.A, line.B)
    return QuadNum.make(mid, -1, disc), QuadNum.make(mid, 1, disc)


def in_U(p: PlanePoint) -> bool:
    return p.w > p.b * p.b / 2


def point_side(line: PlaneLine, p: PlanePoint) -> Side:
    diff = sign(p.w - line.w_at(p.b))
    return Side.ABOVE if diff > 0 else Side.BELOW if diff < 0 else Side.ON


def segment_contains_integer_b(line: PlaneLine) -> int | None:
    """Smallest integer b with (b, line_w(b)) strictly inside U, or None."""
    b1, b2 = parabola_roots(line)
    if line.is_vertical:
        x = b1.as_fraction()
        return int(x) if x.denominator == 1 else None
    k = b1.floor() + 1
    return k if b2 > k else None


def region_U_of(w_n: KClass, lf: PlaneLine, p: PlanePoint) -> bool:
    """On or above the translate of lf through pi(w_n), and strictly right of pi(w_n)."""
    if lf.is_vertical:
        raise VerticalLine("reference line must be a graph over b")
    corner = pi(w_n)
    shifted = lf.translate_through(corner)
    return point_side(shifted, p) is not Side.BELOW and p.b > corner.b


def line_on_or_above(line: PlaneLine, reference: PlaneLine) -> bool:
    """Whether ``line`` is on or above ``reference`` over reference's chord in U.

    The chord is the closed b-interval between the parabola roots of the
    reference line; if the reference misses U the condition is vacuous.
    """
    if line.is_vertical or reference.is_vertical:
        raise VerticalLine("comparison needs graphs over b")
    try:
        r1, r2 = parabola_roots(reference)
    except NoIntersection:
        return True
    return all(line.w_at(r) >= reference.w_at(r) for r in (r1, r2))


def line_strictly_above(line: PlaneLine, reference: PlaneLine) -> bool:
    """On or above the reference chord and not equal to the reference line."""
    return line != reference and line_on_or_above(line, reference)
