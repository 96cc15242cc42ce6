from fractions import Fraction as F

import pytest

from tiltwall.errors import InputError
from tiltwall.plot import PlotSpec, figure_spec, render_svg, spec_from_walls
from tiltwall.threefold import QUINTIC, KClass, subtract_line_bundle
from tiltwall.walls import js_wall

O_D = KClass(0, 1, F(-1, 2), F(1, 6))


def test_render_is_byte_deterministic():
    spec = figure_spec(O_D, 10, QUINTIC)
    a = render_svg(spec)
    b = render_svg(PlotSpec.from_json(spec.to_json()))
    assert a == b
    reordered = PlotSpec(spec.b_range, spec.w_range, tuple(reversed(spec.elements)), spec.precision)
    assert render_svg(reordered) == a


def test_empty_spec_draws_parabola():
    svg = render_svg(PlotSpec((F(-2), F(2)), (F(0), F(3))))
    assert svg.count("<polyline") == 1 and svg.rstrip().endswith("</svg>")


def test_figure_spec_contents():
    spec = figure_spec(O_D, 10, QUINTIC)
    labels = {e.get("label") for e in spec.elements}
    assert {"U(v)", "l_f", "l_JS", "Pi(v_n0)"} <= labels
    js = next(e for e in spec.elements if e.get("label") == "l_JS")
    vn = subtract_line_bundle(O_D, 10)
    assert js["line"] == js_wall(vn, 10).line.as_triple()
    # the JS wall meets the parabola at -10 and 9, both inside the b-range
    assert spec.b_range[0] <= -10 and spec.b_range[1] >= 9
    svg = render_svg(spec)
    assert "l_JS" in svg and "stroke-dasharray" in svg


def test_spec_from_walls():
    walls = {"walls": [{"line": js_wall(subtract_line_bundle(O_D, 10), 10).line.as_triple()}]}
    spec = spec_from_walls(walls)
    assert [e["type"] for e in spec.elements].count("line") == 1
    assert spec.b_range == (F(-11), F(10))
    assert spec_from_walls([]).b_range == (F(-4), F(4))
    with pytest.raises(InputError):
        spec_from_walls({"walls": 3})


def test_precision_changes_output():
    spec = figure_spec(O_D, 10, QUINTIC)
    coarse = PlotSpec(spec.b_range, spec.w_range, spec.elements, 2)
    assert render_svg(coarse) != render_svg(spec)


@pytest.mark.parametrize(
    "kwargs",
    [
        {"b_range": (F(1), F(1))},
        {"w_range": (F(2), F(0))},
        {"elements": ({"type": "point", "label": "a"}, {"type": "line", "label": "a"})},
        {"elements": ({"type": "circle"},)},
        {"precision": 0},
        {"precision": 41},
    ],
)
def test_spec_validation(kwargs):
    base = {"b_range": (F(-1), F(1)), "w_range": (F(0), F(1)), "elements": (), "precision": 12}
    base.update(kwargs)
    with pytest.raises(InputError):
        PlotSpec(**base)


def test_from_json_errors():
    for bad in ([], {"b_range": [0, 1]}, {"b_range": [0], "w_range": [0, 1]},
                {"b_range": [0, 1], "w_range": [0, 1], "elements": [1]}):
        with pytest.raises(InputError):
            PlotSpec.from_json(bad)
