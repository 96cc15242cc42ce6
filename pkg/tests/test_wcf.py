import json
import random
from fractions import Fraction as F

import pytest

from conftest import chi_divisor_twist
from tiltwall.errors import (
    DegenerateClass,
    NonMinusOneRank,
    NotAdmissible,
    NotBaseCase,
    NotCalabiYau,
    SlopeMismatch,
)
from tiltwall.threefold import (
    QUINTIC,
    KClass,
    ThreefoldModel,
    ch_twist,
    delta_normalised,
    euler_pair,
    hilbert,
    line_bundle,
    reduced,
    stable_pair_class,
    subtract_line_bundle,
    truncated,
)
from tiltwall.plane import PlaneLine
from tiltwall.walls import Wall, WallKind, js_wall
from tiltwall.wcf import (
    CONST_TORS,
    LARGE_VOLUME,
    PT,
    Chamber,
    Derivation,
    InvariantSymbol,
    J_at,
    J_gieseker,
    Poly,
    Relation,
    compose_with_pt,
    gieseker_tilt_skeleton,
    is_primitive,
    js_base_relation,
    placeholder_C,
    pt_bridge,
    two_factor_crossing,
    walk_walls,
)

O_D = KClass(0, 1, F(-1, 2), F(1, 6))
NON_CY = ThreefoldModel("p3", h3=1, c2h=6, calabi_yau=False)


def signed(chi):
    chi = F(chi)
    return chi if chi % 2 else -chi


# polynomials and serialisation ----------------------------------------------


def test_poly_arithmetic():
    x, y = J_gieseker(O_D), PT(1, 2)
    px, py = Poly.symbol(x), Poly.symbol(y)
    assert (px + py) - py == px
    assert (px - px).is_zero()
    sq = (px + py) * (px + py)
    assert sq.as_dict()[((x, 2),)] == 1
    assert sq == px * px + (px * py).scale(2) + py * py
    assert sq.substitute(y, Poly.constant(3)) == px * px + px.scale(6) + Poly.constant(9)
    assert (px * Poly.constant(0)).is_zero()
    assert sq.symbols() == {x, y}


def test_symbols_round_trip():
    line = js_wall(subtract_line_bundle(O_D, 10), 10).line
    syms = [
        J_at(O_D, LARGE_VOLUME),
        J_at(O_D, Chamber("above", line)),
        J_gieseker(O_D),
        PT(1270, -161925),
        CONST_TORS,
        placeholder_C("multi_factor", [O_D, O_D.scale(2)], QUINTIC),
    ]
    for s in syms:
        again = InvariantSymbol.from_json(json.loads(json.dumps(s.to_json())))
        assert again == s and again.key == s.key


def test_placeholder_records_pairings():
    a, b = O_D, line_bundle(-3)
    c = placeholder_C("x", [a, b], QUINTIC)
    label, classes, pairings = c.payload
    assert classes == (a, b)
    assert pairings[0][1] == euler_pair(a, b, QUINTIC)
    assert pairings[1][0] == -pairings[0][1]


def test_derivation_json_round_trip_is_byte_identical():
    d = walk_walls(O_D, 254, QUINTIC)
    text = json.dumps(d.to_json(), sort_keys=True)
    again = Derivation.from_json(json.loads(text))
    assert json.dumps(again.to_json(), sort_keys=True) == text
    assert again.final == d.final


# two-factor crossing --------------------------------------------------------


def test_two_factor_crossing_js_coefficient():
    for n0 in (10, 254):
        vn = subtract_line_bundle(O_D, n0)
        wall = js_wall(vn, n0)
        a1 = -line_bundle(-n0)
        rel = two_factor_crossing(vn, a1, O_D, wall, QUINTIC)
        above = Chamber("above", wall.line)
        coef = rel.coefficient_of(J_at(a1, above), J_at(O_D, above))
        # J_above - J_below = chibar(v(n0)) J(O(-n0)[1]) J(v)
        assert -coef == signed(chi_divisor_twist(n0))
        assert rel.left == J_at(vn, Chamber("below", wall.line))
        assert rel.coefficient_of(J_at(vn, above)) == 1
        swapped = two_factor_crossing(vn, O_D, a1, wall, QUINTIC)
        assert swapped == rel


def test_two_factor_crossing_zero_pairing():
    # O_D minus five points has chi = 0, so it pairs trivially with O on the wall w = -b/2
    a1, a2 = line_bundle(0), O_D - KClass(0, 0, 0, 1)
    assert euler_pair(a1, a2, QUINTIC) == 0
    v = a1 + a2
    line = PlaneLine.make(1, 2, 0)
    wall = Wall(line, (), WallKind.GENERIC, line.slope)
    rel = two_factor_crossing(v, a1, a2, wall, QUINTIC)
    assert rel.right == Poly.symbol(J_at(v, Chamber("above", line)))


def test_two_factor_crossing_errors():
    vn = subtract_line_bundle(O_D, 10)
    wall = js_wall(vn, 10)
    with pytest.raises(SlopeMismatch):
        two_factor_crossing(vn, -line_bundle(-10), O_D.scale(2), wall, QUINTIC)
    with pytest.raises(SlopeMismatch):
        two_factor_crossing(vn, -line_bundle(-9), vn + line_bundle(-9), wall, QUINTIC)
    with pytest.raises(NotCalabiYau):
        two_factor_crossing(vn, -line_bundle(-10), O_D, wall, NON_CY)


# base case and the walk -----------------------------------------------------


def test_js_base_relation_examples():
    rel = js_base_relation(O_D, 10, QUINTIC)
    assert rel.left == J_at(subtract_line_bundle(O_D, 10), LARGE_VOLUME)
    assert rel.coefficient_of(J_at(O_D, LARGE_VOLUME)) == -230
    tors3 = ThreefoldModel("quintic_t3", h3=5, c2h=50, tors=3)
    assert js_base_relation(O_D, 10, tors3).coefficient_of(J_at(O_D, LARGE_VOLUME)) == -690
    for n0 in range(1, 40):
        chi = chi_divisor_twist(n0)
        coef = js_base_relation(O_D, n0, QUINTIC).coefficient_of(J_at(O_D, LARGE_VOLUME))
        assert (coef < 0) == (chi % 2 == 0) and abs(coef) == chi
    with pytest.raises(NotBaseCase):
        js_base_relation(O_D.scale(2), 10, QUINTIC)
    with pytest.raises(NotCalabiYau):
        js_base_relation(O_D, 10, NON_CY)


def test_walk_walls_base_case():
    n0 = 254
    d = walk_walls(O_D, n0, QUINTIC)
    start_wall, start = d.steps[0]
    assert start_wall is None and start.right.is_zero()
    assert len(d.walls) == 1
    assert d.walls[0]["kind"] == "joyce_song"
    base = js_base_relation(O_D, n0, QUINTIC)
    assert d.final.left == base.left
    assert d.final.right == base.right
    assert base.coefficient_of(J_at(O_D, LARGE_VOLUME)) == -160660


def test_walk_walls_preconditions():
    with pytest.raises(NotAdmissible):
        walk_walls(O_D, 10, QUINTIC)
    with pytest.raises(DegenerateClass):
        walk_walls(line_bundle(0), 254, QUINTIC)
    with pytest.raises(NotCalabiYau):
        walk_walls(O_D, 254, NON_CY)


def test_is_primitive():
    assert is_primitive(O_D, QUINTIC)
    assert not is_primitive(line_bundle(0).scale(2), QUINTIC)
    # half of (0, 2, -1, 1/3) would have ch1 = 1 = cmin and is O_D, which is integral
    assert not is_primitive(KClass(0, 2, -1, F(1, 3)), QUINTIC)
    assert is_primitive(KClass(0, 2, 0, F(1, 3)), QUINTIC)


# Gieseker versus tilt --------------------------------------------------------


def test_gieseker_skeleton_primitive():
    rel = gieseker_tilt_skeleton(O_D, QUINTIC)
    assert rel.left == J_gieseker(O_D)
    assert rel.right == Poly.symbol(J_at(O_D, LARGE_VOLUME))


def test_gieseker_skeleton_double():
    v = O_D.scale(2)
    rel = gieseker_tilt_skeleton(v, QUINTIC)
    assert rel.coefficient_of(J_at(v, LARGE_VOLUME)) == 1
    cterm = placeholder_C("gieseker_tilt", [O_D, O_D], QUINTIC)
    assert rel.coefficient_of(cterm, J_at(O_D, LARGE_VOLUME), J_at(O_D, LARGE_VOLUME)) == 1
    target = truncated(reduced(hilbert(v, QUINTIC)))
    for s in rel.right.symbols():
        if s.kind == "placeholder_C":
            for piece in s.payload[1]:
                assert piece.r == 0 and piece.c > 0
                assert truncated(reduced(hilbert(piece, QUINTIC))) == target


def test_gieseker_skeleton_errors():
    with pytest.raises(DegenerateClass):
        gieseker_tilt_skeleton(line_bundle(0), QUINTIC)


# stable pairs ----------------------------------------------------------------


def test_pt_bridge_round_trip():
    rng = random.Random(2)
    for _ in range(50):
        beta = F(rng.randint(1, 20), 5)
        m = F(rng.randint(-40, 40), 5)
        n = rng.randint(0, 50)
        _, shifted = stable_pair_class(beta, m, n, QUINTIC)
        rel = pt_bridge(shifted, QUINTIC)
        assert rel.right == Poly.product(QUINTIC.tors, [PT(beta * 5, m * 5)])
        assert rel.left == J_at(shifted, LARGE_VOLUME)
    tors2 = ThreefoldModel("quintic_t2", h3=5, c2h=50, tors=2)
    _, shifted = stable_pair_class(F(1, 5), 0, 3, tors2)
    assert pt_bridge(shifted, tors2).coefficient_of(PT(1, 0)) == 2
    with pytest.raises(NonMinusOneRank):
        pt_bridge(O_D, QUINTIC)


def test_pt_bridge_base_case_value():
    vn = subtract_line_bundle(O_D, 254)
    # untwisting by 255 kills ch1; the remaining ch2 and ch3 give beta.H and chi
    untwisted = ch_twist(vn, 255)
    assert untwisted.r == -1 and untwisted.c == 0
    beta_h, chi = untwisted.s * 5, -untwisted.d * 5
    assert pt_bridge(vn, QUINTIC) == Relation(J_at(vn, LARGE_VOLUME), Poly.product(1, [PT(beta_h, chi)]))
    assert (beta_h, chi) == (1270, -161925)


def test_compose_with_pt_only_expected_symbols():
    rel = compose_with_pt(walk_walls(O_D, 254, QUINTIC), QUINTIC)
    assert rel.left == PT(1270, -161925)
    for s in rel.right.symbols():
        if s.kind == "J_at":
            assert s.payload[0].r == 0 and s.payload[1] == LARGE_VOLUME
        else:
            assert s.kind in ("PT", "placeholder_C", "const_tors")
    assert rel.coefficient_of(J_at(O_D, LARGE_VOLUME)) == -160660


def test_walk_rank_minus_one_symbols_drop_c():
    d = walk_walls(O_D, 254, QUINTIC)
    parent_c = d.final.left.payload[0].c
    for _, rel in d.steps:
        for s in rel.right.symbols():
            if s.kind == "J_at" and s.payload[0].r == -1:
                assert s.payload[0].c < parent_c
                assert delta_normalised(s.payload[0]) >= 0
