import json
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tiltwall.errors import InputError
from tiltwall.plane import PlaneLine, PlanePoint, QuadNum
from tiltwall.serialize import (
    class_from_json,
    class_to_json,
    dumps,
    line_from_json,
    line_to_json,
    loads,
    model_from_json,
    model_to_json,
    parse_int,
    parse_rat,
    point_from_json,
    point_to_json,
    quad_decimal,
    quad_from_json,
    quad_to_json,
    rat,
)
from tiltwall.threefold import QUINTIC, KClass, ThreefoldModel

rats = st.fractions(max_denominator=50).filter(lambda x: abs(x) < 10**6)


def test_parse_rat_forms():
    assert parse_rat([6, -4]) == F(-3, 2)
    assert parse_rat(7) == 7
    assert parse_rat("-1/2") == F(-1, 2)
    for bad in (True, [1, 0], [1, 2, 3], 1.5, None, [1.0, 2]):
        with pytest.raises(InputError):
            parse_rat(bad)
    assert parse_int("4") == 4
    with pytest.raises(InputError):
        parse_int("1/3")


@given(rats)
def test_rat_round_trip(x):
    enc = rat(x)
    assert parse_rat(enc) == x and enc[1] > 0


@given(st.integers(-5, 5), rats, rats, rats)
def test_class_round_trip(r, c, s, d):
    v = KClass(r, c, s, d)
    assert class_from_json(json.loads(json.dumps(class_to_json(v)))) == v
    assert class_from_json([r, rat(c), str(s), rat(d)]) == v


def test_class_errors():
    for bad in ({"r": 0, "c": 1}, [0, 1, 2], "O_D", {"r": "1/2", "c": 0, "s": 0, "d": 0}):
        with pytest.raises(InputError):
            class_from_json(bad)


def test_model_round_trip_and_errors():
    assert model_from_json("quintic") == QUINTIC
    X = ThreefoldModel("t", h3=2, c2h=24, tors=3, cmin=F(1, 2), calabi_yau=False)
    assert model_from_json(model_to_json(X)) == X
    enc = model_to_json(X)
    for key in enc:
        partial = {k: val for k, val in enc.items() if k != key}
        with pytest.raises(InputError):
            model_from_json(partial)
    with pytest.raises(InputError):
        model_from_json({**enc, "calabi_yau": 1})
    with pytest.raises(InputError):
        model_from_json("nope")
    with pytest.raises(InputError):
        model_from_json([1])


def test_plane_round_trips():
    p = PlanePoint(F(-1, 3), F(5, 2))
    assert point_from_json(point_to_json(p)) == p
    assert point_from_json([rat(p.b), "5/2"]) == p
    line = PlaneLine.make(2, 4, -6)
    assert line_to_json(line) == [1, 2, -3]
    assert line_from_json(line_to_json(line)) == line
    for bad in ([1, 2], {"b": 1}, "x"):
        with pytest.raises(InputError):
            line_from_json(bad)
    for bad in ([1, 2, 3], {"b": 1}, "x"):
        with pytest.raises(InputError):
            point_from_json(bad)


def test_quad_round_trip_and_decimal():
    x = QuadNum.make(F(1, 2), 3, 12)
    assert quad_from_json(json.loads(json.dumps(quad_to_json(x)))) == x
    assert quad_decimal(QuadNum.make(0, 1, 2), 6) == "1.414214"
    with pytest.raises(InputError):
        quad_from_json({"a": 1})


def test_dumps_is_canonical():
    a = dumps({"b": 1, "a": [1, 2]})
    assert a == dumps({"a": [1, 2], "b": 1}) and a.endswith("\n")
    assert loads(a) == {"a": [1, 2], "b": 1}
    with pytest.raises(InputError):
        loads("{")
