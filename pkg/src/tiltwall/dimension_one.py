"""Walls for rank one objects built from O(-n) and one-dimensional sheaves.

Classes are integer triples (r, c, s) = (rank, ch2.H, ch3) and the slope
depends on a single real parameter theta.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .errors import InvalidTriple, NonPositiveC
from .rational import INFINITY, RationalLike, Slope, q
from .serialize import rat
from .threefold import KClass, ThreefoldModel
from .wcf import J_gieseker, PT, Poly, Relation, require_calabi_yau

LARGE_VOLUME_LABEL = "stable pairs"
VANISHING_ASSUMPTION = (
    "caller asserts n is large enough that H^1(F(n)) = 0 for every Gieseker semistable "
    "one-dimensional F with 0 <= ch2(F).H <= c and ch3(F)/ch2(F).H >= theta_JS - 1"
)


@dataclass(frozen=True)
class ClTriple:
    r: int
    c: int
    s: int

    def __post_init__(self) -> None:
        for name in ("r", "c", "s"):
            x = getattr(self, name)
            if isinstance(x, bool) or not isinstance(x, int):
                raise InvalidTriple(f"{name} must be an integer")
        if self.r < 0 or self.c < 0:
            raise InvalidTriple("r and c must be nonnegative")
        if self.r == 0 and self.c == 0 and self.s < 0:
            raise InvalidTriple("a zero-dimensional class needs s >= 0")


@dataclass(frozen=True)
class Ch3Bound:
    """Lower bound L(n, c_budget) for ch3 of quotients of O(-n) with ch2.H <= c_budget."""

    fn: Callable[[int, int], RationalLike]
    label: str = "custom"

    def __call__(self, n: int, budget: int) -> Fraction:
        return q(self.fn(n, budget))


def constant_ch3_bound(value: RationalLike = 0) -> Ch3Bound:
    v = q(value)
    return Ch3Bound(lambda n, budget: v, label=f"constant {v}")


DEFAULT_CH3_BOUND = constant_ch3_bound(0)


def nu_theta(theta: RationalLike, t: ClTriple) -> Slope:
    if t.r != 0:
        return q(theta)
    if t.c != 0:
        return Fraction(t.s, t.c)
    return INFINITY


def theta_js(c: int, s: int) -> Fraction:
    if c <= 0:
        raise NonPositiveC("theta_JS needs c > 0")
    return Fraction(s, c)


@dataclass(frozen=True)
class Dim1Wall:
    theta: Fraction
    witnesses: tuple[tuple[int, int], ...]


def dim1_walls(c: int, s: int, bound: Ch3Bound = DEFAULT_CH3_BOUND, n: int = 0) -> list[Dim1Wall]:
    """theta_JS followed by candidate walls s0/c0 with 0 < c0 < c, s0/c0 > s/c and
    s - s0 >= max(0, s/c) + bound(n, c - c0)."""
    js = theta_js(c, s)
    found: dict[Fraction, list[tuple[int, int]]] = {}
    for c0 in range(1, c):
        lo = math.floor(js * c0) + 1  # s0/c0 > s/c
        hi = math.floor(s - max(Fraction(0), js) - bound(n, c - c0))
        for s0 in range(lo, hi + 1):
            theta = Fraction(s0, c0)
            if not theta > js > Fraction(s - s0, c - c0):
                raise ArithmeticError("see-saw ordering violated")
            found.setdefault(theta, []).append((c0, s0))
    walls = [Dim1Wall(js, ((c, s),))]
    for theta in sorted(found):
        if theta == js:
            continue
        walls.append(Dim1Wall(theta, tuple(sorted(found[theta]))))
    return walls


def chamber_report(c: int, s: int, n: int, bound: Ch3Bound = DEFAULT_CH3_BOUND) -> dict:
    js = theta_js(c, s)
    walls = dim1_walls(c, s, bound, n)[1:]
    return {
        "theta_js": rat(js),
        "empty_chamber": [rat(js - 1), rat(js)],
        "walls": [{"theta": rat(w.theta), "witnesses": [list(x) for x in w.witnesses]} for w in walls],
        "large_volume": LARGE_VOLUME_LABEL,
        "assumption": VANISHING_ASSUMPTION,
        "ch3_bound": bound.label,
        "n": n,
    }


def easy_js_coefficient(beta_h: int, m: int, n: int) -> int:
    k = m + n * beta_h
    return k if (k - 1) % 2 == 0 else -k


def easy_js_relation(beta_h: int, m: int, n: int, X: ThreefoldModel) -> Relation:
    """PT_{beta, m + n beta.H} = (-1)^(k-1) k J(0, 0, beta, m) with k = m + n beta.H."""
    require_calabi_yau(X)
    k = m + n * beta_h
    coef = easy_js_coefficient(beta_h, m, n)
    cls = KClass(0, 0, Fraction(beta_h, X.h3), Fraction(m, X.h3))
    prov = ({"citation_tag": "dimension_one_base", "beta_h": beta_h, "m": m, "n": n},)
    return Relation(PT(beta_h, k), Poly.product(coef, [J_gieseker(cls)]), prov)


__all__ = [
    "ClTriple",
    "Ch3Bound",
    "constant_ch3_bound",
    "DEFAULT_CH3_BOUND",
    "nu_theta",
    "theta_js",
    "Dim1Wall",
    "dim1_walls",
    "chamber_report",
    "easy_js_coefficient",
    "easy_js_relation",
]
