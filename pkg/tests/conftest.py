"""Shared fixtures, independent oracles and the acceptance summary hook."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from tiltwall.threefold import QUINTIC, KClass


@pytest.fixture
def X():
    return QUINTIC


@pytest.fixture
def rng():
    return random.Random(20240611)


def _poly_chi(n: int) -> int:
    # the polynomial C(n+4,4) - C(n-1,4) written out, valid for every integer n
    num = (n + 4) * (n + 3) * (n + 2) * (n + 1) - (n - 1) * (n - 2) * (n - 3) * (n - 4)
    return num // 24


def chi_divisor_twist(n: int) -> int:
    """chi(O_D(n)) for a hyperplane section D from the restriction sequence."""
    return _poly_chi(n) - _poly_chi(n - 1)


def random_rational(r: random.Random, num: int = 20, den: int = 12) -> Fraction:
    return Fraction(r.randint(-num, num), r.randint(1, den))


def random_integral_class(r: random.Random, h3: int = 5) -> KClass:
    """Signed sums of line bundles plus (0, 0, a/h3, b/h3), which O_l(k) and points generate."""
    total = KClass(0, 0, 0, 0)
    for _ in range(r.randint(1, 3)):
        n = Fraction(r.randint(-4, 4))
        total = total + KClass(1, n, n**2 / 2, n**3 / 6).scale(r.choice([-1, 1]))
    return total + KClass(0, 0, Fraction(r.randint(-3, 3), h3), Fraction(r.randint(-5, 5), h3))


_RESULTS: dict[str, bool] = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not report.failed:
        return
    for key, value in report.user_properties:
        if key == "criterion":
            _RESULTS[value] = _RESULTS.get(value, True) and report.passed


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_RESULTS, key=lambda label: int(label.split()[0][2:])):
        terminalreporter.write_line(f"{'PASS' if _RESULTS[name] else 'FAIL'}  {name}")
