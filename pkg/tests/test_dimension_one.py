import json
from fractions import Fraction as F

import pytest

from tiltwall.dimension_one import (
    LARGE_VOLUME_LABEL,
    Ch3Bound,
    ClTriple,
    chamber_report,
    constant_ch3_bound,
    dim1_walls,
    easy_js_coefficient,
    easy_js_relation,
    nu_theta,
    theta_js,
)
from tiltwall.errors import InvalidTriple, NonPositiveC, NotCalabiYau
from tiltwall.rational import INFINITY
from tiltwall.threefold import QUINTIC, KClass, ThreefoldModel
from tiltwall.wcf import PT, J_gieseker


def test_nu_theta_examples():
    assert nu_theta(F(3, 7), ClTriple(1, 0, 0)) == F(3, 7)
    for theta in (F(-5), F(0), F(9, 2)):
        assert nu_theta(theta, ClTriple(0, 2, 3)) == F(3, 2)
    assert nu_theta(1, ClTriple(0, 0, 5)) is INFINITY


def test_cl_triple_invariants():
    for bad in ((-1, 0, 0), (0, -1, 0), (0, 0, -1)):
        with pytest.raises(InvalidTriple):
            ClTriple(*bad)
    with pytest.raises(InvalidTriple):
        ClTriple(F(1, 2), 0, 0)
    with pytest.raises(InvalidTriple):
        ClTriple(True, 0, 0)
    ClTriple(0, 1, -7)


def test_theta_js():
    assert theta_js(1, 1) == 1
    assert theta_js(2, -3) == F(-3, 2)
    with pytest.raises(NonPositiveC):
        theta_js(0, 1)


def test_dim1_walls_single_curve_class():
    for bound in (constant_ch3_bound(0), constant_ch3_bound(-100)):
        walls = dim1_walls(1, 1, bound, 10)
        assert [w.theta for w in walls] == [1]


def test_dim1_walls_stated_box():
    walls = dim1_walls(2, 0, constant_ch3_bound(-3), 7)
    assert [w.theta for w in walls] == [0, 1, 2, 3]
    assert [w.witnesses for w in walls[1:]] == [((1, 1),), ((1, 2),), ((1, 3),)]


def _oracle(c, s, bound_value):
    """Scan a wide box of (c0, s0) and keep those satisfying the three inequalities."""
    out = {}
    for c0 in range(1, c):
        for s0 in range(-500, 501):
            if F(s0, c0) <= F(s, c):
                continue
            if s - s0 < max(F(0), F(s, c)) + bound_value:
                continue
            out.setdefault(F(s0, c0), []).append((c0, s0))
    return [F(s, c)] + sorted(t for t in out if t != F(s, c)), out


@pytest.mark.parametrize("bound_value", [F(0), F(-3), F(-17, 2), F(2)])
def test_dim1_walls_match_exhaustive_scan(bound_value):
    bound = constant_ch3_bound(bound_value)
    for c in range(1, 5):
        for s in range(-6, 7):
            walls = dim1_walls(c, s, bound, 0)
            thetas, witnesses = _oracle(c, s, bound_value)
            assert [w.theta for w in walls] == thetas
            for w in walls[1:]:
                assert list(w.witnesses) == sorted(witnesses[w.theta])
            assert all(a < b for a, b in zip(thetas, thetas[1:]))


def test_dim1_walls_seesaw():
    for c in range(1, 7):
        for s in range(-10, 11):
            for w in dim1_walls(c, s, constant_ch3_bound(-5), 0)[1:]:
                assert w.theta > F(s, c)
                for c0, s0 in w.witnesses:
                    assert F(s - s0, c - c0) < F(s, c) < F(s0, c0)


def test_bound_depends_on_budget():
    calls = []

    def fn(n, budget):
        calls.append((n, budget))
        return -budget

    walls = dim1_walls(3, 0, Ch3Bound(fn, "linear"), 4)
    assert {b for _, b in calls} == {1, 2} and {n for n, _ in calls} == {4}
    # c0 = 1 leaves budget 2, so s0 <= 2; c0 = 2 leaves budget 1, so s0 <= 1
    assert {x for w in walls[1:] for x in w.witnesses} == {(1, 1), (1, 2), (2, 1)}


def test_chamber_report():
    rep = chamber_report(1, 1, 20)
    assert rep["theta_js"] == [1, 1]
    assert rep["empty_chamber"] == [[0, 1], [1, 1]]
    assert rep["walls"] == []
    assert rep["large_volume"] == LARGE_VOLUME_LABEL
    assert json.dumps(rep, sort_keys=True) == json.dumps(chamber_report(1, 1, 20), sort_keys=True)
    rep = chamber_report(3, -2, 5, constant_ch3_bound(-4))
    lo, hi = (F(*x) for x in rep["empty_chamber"])
    assert hi - lo == 1 and hi == F(-2, 3)
    assert all(F(*w["theta"]) > hi for w in rep["walls"])


def test_easy_js_examples():
    assert easy_js_coefficient(1, 1, 2) == 3
    assert easy_js_coefficient(1, 1, 0) == 1
    for m in range(-5, 6):
        k = m + 6
        a, b = easy_js_coefficient(2, m, 3), easy_js_coefficient(2, m + 1, 3)
        assert a == (-1) ** (k - 1) * k
        # the sign alternates in m while |k| grows by one
        if k > 0:
            assert (a > 0) != (b > 0) and abs(b) == abs(a) + 1


def test_easy_js_relation():
    rel = easy_js_relation(1, 1, 2, QUINTIC)
    assert rel.left == PT(1, 3)
    assert rel.coefficient_of(J_gieseker(KClass(0, 0, F(1, 5), F(1, 5)))) == 3
    assert len(rel.right.symbols()) == 1
    with pytest.raises(NotCalabiYau):
        easy_js_relation(1, 1, 2, ThreefoldModel("p3", h3=1, c2h=6, calabi_yau=False))
