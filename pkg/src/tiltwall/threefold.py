"""Numerical K-theory of a polarised Calabi-Yau threefold of Picard rank one.

A class is stored through its normalised Chern character
``(r, c, s, d) = (ch0, ch1.H^2/H^3, ch2.H/H^3, ch3/H^3)``.  Everything is exact
rational arithmetic; Riemann-Roch uses ``td(X) = 1 + c2(X)/12`` so that

    chi(v) = d*H^3 + c*(c2.H)/12.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError, NonIntegerEuler, OutOfRange, ZeroClass
from .rational import RationalLike, is_integer, q


@dataclass(frozen=True)
class ThreefoldModel:
    name: str
    h3: int
    c2h: int
    tors: int = 1
    cmin: Fraction = Fraction(1)
    calabi_yau: bool = True

    def __post_init__(self) -> None:
        object.__setattr__(self, "cmin", q(self.cmin))
        if not isinstance(self.h3, int) or self.h3 < 1:
            raise InputError("h3 must be a positive integer")
        if not isinstance(self.c2h, int):
            raise InputError("c2h must be an integer")
        if not isinstance(self.tors, int) or self.tors < 1:
            raise InputError("tors must be a positive integer")
        if self.cmin <= 0 or not is_integer(self.cmin * self.h3):
            raise InputError("cmin must be positive with cmin*h3 an integer")

    @property
    def h6(self) -> int:
        return self.h3 * self.h3


QUINTIC = ThreefoldModel("quintic", h3=5, c2h=50, tors=1, cmin=Fraction(1), calabi_yau=True)

BUILTIN_MODELS = {"quintic": QUINTIC}


@dataclass(frozen=True, order=True)
class KClass:
    r: Fraction
    c: Fraction
    s: Fraction
    d: Fraction

    def __init__(self, r: RationalLike, c: RationalLike, s: RationalLike, d: RationalLike):
        rr = q(r)
        if not is_integer(rr):
            raise InputError(f"rank must be an integer, got {rr}")
        object.__setattr__(self, "r", rr)
        object.__setattr__(self, "c", q(c))
        object.__setattr__(self, "s", q(s))
        object.__setattr__(self, "d", q(d))

    def __add__(self, other: KClass) -> KClass:
        return KClass(self.r + other.r, self.c + other.c, self.s + other.s, self.d + other.d)

    def __sub__(self, other: KClass) -> KClass:
        return KClass(self.r - other.r, self.c - other.c, self.s - other.s, self.d - other.d)

    def __neg__(self) -> KClass:
        return KClass(-self.r, -self.c, -self.s, -self.d)

    def scale(self, k: RationalLike) -> KClass:
        k = q(k)
        return KClass(k * self.r, k * self.c, k * self.s, k * self.d)

    def as_tuple(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.r, self.c, self.s, self.d)

    def truncated(self) -> tuple[Fraction, Fraction, Fraction]:
        """The ch<=2 part (r, c, s)."""
        return (self.r, self.c, self.s)

    def is_zero(self) -> bool:
        return not any(self.as_tuple())

    def __repr__(self) -> str:
        return f"KClass({self.r}, {self.c}, {self.s}, {self.d})"


ZERO = KClass(0, 0, 0, 0)
STRUCTURE_SHEAF = KClass(1, 0, 0, 0)


def line_bundle(n: RationalLike) -> KClass:
    """Normalised Chern character of O(n)."""
    return ch_twist(STRUCTURE_SHEAF, n)


def ch_twist(v: KClass, n: RationalLike) -> KClass:
    """Multiply the Chern character by exp(nH)."""
    n = q(n)
    r, c, s, d = v.as_tuple()
    return KClass(
        r,
        c + n * r,
        s + n * c + n * n * r / 2,
        d + n * s + n * n * c / 2 + n * n * n * r / 6,
    )


def ch_b(v: KClass, b: RationalLike) -> KClass:
    """The b-twisted character ch * exp(-bH)."""
    return ch_twist(v, -q(b))


def dual(v: KClass) -> KClass:
    return KClass(v.r, -v.c, v.s, -v.d)


def product(v: KClass, w: KClass) -> KClass:
    """Degree-truncated product of normalised characters (Picard rank one)."""
    return KClass(
        v.r * w.r,
        v.r * w.c + v.c * w.r,
        v.r * w.s + v.c * w.c + v.s * w.r,
        v.r * w.d + v.c * w.s + v.s * w.c + v.d * w.r,
    )


def delta(v: KClass, X: ThreefoldModel) -> Fraction:
    """Discriminant (ch1.H^2)^2 - 2(ch2.H)ch0 H^3."""
    return X.h6 * (v.c * v.c - 2 * v.s * v.r)


def delta_normalised(v: KClass) -> Fraction:
    """The discriminant divided by (H^3)^2; handy when only signs matter."""
    return v.c * v.c - 2 * v.s * v.r


def euler(v: KClass, X: ThreefoldModel) -> Fraction:
    return v.d * X.h3 + v.c * Fraction(X.c2h, 12)


def euler_pair(v: KClass, w: KClass, X: ThreefoldModel) -> Fraction:
    """chi(v, w) = chi(v^dual * w)."""
    return euler(product(dual(v), w), X)


def signed_euler(chi: RationalLike) -> Fraction:
    """(-1)^(chi-1) * chi for an integral chi."""
    chi = q(chi)
    if not is_integer(chi):
        raise NonIntegerEuler(f"Euler pairing {chi} is not an integer")
    return chi if (int(chi) - 1) % 2 == 0 else -chi


def chi_bar(v: KClass, w: KClass, X: ThreefoldModel) -> Fraction:
    return signed_euler(euler_pair(v, w, X))


def integrality_check(v: KClass, X: ThreefoldModel) -> bool:
    """Integer rank and ch1.H^2, and integer Euler characteristic on four consecutive twists."""
    if not is_integer(v.r) or not is_integer(v.c * X.h3):
        return False
    return all(is_integer(euler(ch_twist(v, n), X)) for n in range(4))


def ch2_lattice_offset(r: Fraction, c: Fraction, X: ThreefoldModel) -> Fraction:
    """Return sigma with s in sigma + (1/H^3)Z for every integral class with given (r, c).

    This is the binomial-basis condition on the t^1 coefficient of the Hilbert
    polynomial; ch3 then lives in a coset of (1/H^3)Z fixed by c.
    """
    return -(r / 6 + c / 2) - Fraction(X.c2h, 12 * X.h3) * r


def ch3_lattice_offset(c: Fraction, X: ThreefoldModel) -> Fraction:
    """Return tau with d in tau + (1/H^3)Z for every integral class with ch1 = c."""
    return -c * Fraction(X.c2h, 12 * X.h3)


def ch2_is_integral(r: Fraction, c: Fraction, s: Fraction, X: ThreefoldModel) -> bool:
    if not is_integer(r) or not is_integer(c * X.h3):
        return False
    return is_integer((s - ch2_lattice_offset(r, c, X)) * X.h3)


def stable_pair_class(
    beta_h: RationalLike, m: RationalLike, n: int, X: ThreefoldModel
) -> tuple[KClass, KClass]:
    """Classes of I = [O -> F] with ch(F) = (0,0,beta,m), and of (I^dual)[1] twisted by O(-n)."""
    beta_h, m = q(beta_h), q(m)
    if beta_h <= 0:
        raise OutOfRange("beta_h must be positive")
    pair = KClass(1, 0, -beta_h, -m)
    shifted_dual = -dual(pair)
    return pair, ch_twist(shifted_dual, -q(n))


# Hilbert polynomials -------------------------------------------------------


@dataclass(frozen=True)
class HilbertPolynomial:
    """Polynomial with exact coefficients, highest degree first."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        coeffs = tuple(q(a) for a in self.coeffs)
        if not coeffs or coeffs[0] == 0:
            raise ZeroClass("leading coefficient must be nonzero")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Fraction:
        return self.coeffs[0]

    def __call__(self, t: RationalLike) -> Fraction:
        t = q(t)
        acc = Fraction(0)
        for a in self.coeffs:
            acc = acc * t + a
        return acc

    def __str__(self) -> str:
        terms = []
        for k, a in enumerate(self.coeffs):
            p = self.degree - k
            if a:
                terms.append(f"{a}" + (f"*t^{p}" if p > 1 else "*t" if p == 1 else ""))
        return " + ".join(terms) if terms else "0"


def hilbert(v: KClass, X: ThreefoldModel) -> HilbertPolynomial:
    """P(t) = chi(v(t)) as an explicit cubic, trimmed to its true degree."""
    if v.is_zero():
        raise ZeroClass("the zero class has no Hilbert polynomial")
    h3, k = X.h3, Fraction(X.c2h, 12)
    coeffs = [
        h3 * v.r / 6,
        h3 * v.c / 2,
        h3 * v.s + k * v.r,
        h3 * v.d + k * v.c,
    ]
    while coeffs and coeffs[0] == 0:
        coeffs.pop(0)
    if not coeffs:
        raise ZeroClass("class has vanishing Hilbert polynomial")
    return HilbertPolynomial(tuple(coeffs))


def reduced(P: HilbertPolynomial) -> HilbertPolynomial:
    lead = P.leading
    return HilbertPolynomial(tuple(a / lead for a in P.coeffs))


def truncated(P: HilbertPolynomial) -> HilbertPolynomial:
    """Monic polynomial with its constant term dropped (a constant stays 1)."""
    p = reduced(P)
    if p.degree == 0:
        return p
    return HilbertPolynomial(p.coeffs[:-1] + (Fraction(0),))


def precedes(p: HilbertPolynomial, q_: HilbertPolynomial) -> bool:
    """Strict order: higher degree first, then p(t) < q(t) for t >> 0."""
    if p.degree != q_.degree:
        return p.degree > q_.degree
    for a, b in zip(p.coeffs, q_.coeffs):
        if a != b:
            return a < b
    return False



def subtract_line_bundle(v: KClass, n0: RationalLike) -> KClass:
    """The class v - [O(-n0)]."""
    return v - line_bundle(-q(n0))
