"""JSON encodings shared by the library and the CLI.

Rationals are ``[numerator, denominator]`` pairs in lowest terms.  Output is
produced with sorted keys so identical values give identical bytes.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .errors import InputError
from .plane import PlaneLine, PlanePoint, QuadNum
from .rational import q
from .threefold import BUILTIN_MODELS, KClass, ThreefoldModel


def rat(x: Fraction | int) -> list[int]:
    x = q(x)
    return [x.numerator, x.denominator]


def parse_rat(obj: Any) -> Fraction:
    """Accept [n, d], an integer, or a string literal such as "-1/2"."""
    if isinstance(obj, bool):
        raise InputError("booleans are not rationals")
    if isinstance(obj, int):
        return Fraction(obj)
    if isinstance(obj, str):
        return q(obj)
    if isinstance(obj, list) and len(obj) == 2 and all(
        isinstance(t, int) and not isinstance(t, bool) for t in obj
    ):
        if obj[1] == 0:
            raise InputError("zero denominator")
        return Fraction(obj[0], obj[1])
    raise InputError(f"not a rational: {obj!r}")


def parse_int(obj: Any) -> int:
    x = parse_rat(obj)
    if x.denominator != 1:
        raise InputError(f"expected an integer, got {x}")
    return x.numerator


# ---------------------------------------------------------------------------
# models and classes


def model_to_json(X: ThreefoldModel) -> dict:
    return {
        "name": X.name,
        "h3": X.h3,
        "c2h": X.c2h,
        "tors": X.tors,
        "cmin": rat(X.cmin),
        "calabi_yau": X.calabi_yau,
    }


def model_from_json(obj: Any) -> ThreefoldModel:
    if isinstance(obj, str):
        if obj in BUILTIN_MODELS:
            return BUILTIN_MODELS[obj]
        raise InputError(f"unknown built-in model {obj!r}")
    if not isinstance(obj, dict):
        raise InputError("model must be a JSON object")
    required = {"name", "h3", "c2h", "tors", "cmin", "calabi_yau"}
    missing = required - set(obj)
    if missing:
        raise InputError(f"model is missing {sorted(missing)}")
    if not isinstance(obj["name"], str):
        raise InputError("model name must be a string")
    if not isinstance(obj["calabi_yau"], bool):
        raise InputError("calabi_yau must be a boolean")
    return ThreefoldModel(
        name=obj["name"],
        h3=parse_int(obj["h3"]),
        c2h=parse_int(obj["c2h"]),
        tors=parse_int(obj["tors"]),
        cmin=parse_rat(obj["cmin"]),
        calabi_yau=obj["calabi_yau"],
    )


def class_to_json(v: KClass) -> dict:
    return {"r": int(v.r), "c": rat(v.c), "s": rat(v.s), "d": rat(v.d)}


def class_from_json(obj: Any) -> KClass:
    """Accept {r, c, s, d} or a four-element array of rationals."""
    if isinstance(obj, dict):
        missing = {"r", "c", "s", "d"} - set(obj)
        if missing:
            raise InputError(f"class is missing {sorted(missing)}")
        return KClass(parse_int(obj["r"]), parse_rat(obj["c"]), parse_rat(obj["s"]), parse_rat(obj["d"]))
    if isinstance(obj, list) and len(obj) == 4:
        return KClass(parse_int(obj[0]), parse_rat(obj[1]), parse_rat(obj[2]), parse_rat(obj[3]))
    raise InputError("class must be {r, c, s, d} or an array of four rationals")


# ---------------------------------------------------------------------------
# plane


def point_to_json(p: PlanePoint) -> dict:
    return {"b": rat(p.b), "w": rat(p.w)}


def point_from_json(obj: Any) -> PlanePoint:
    if isinstance(obj, dict) and {"b", "w"} <= set(obj):
        return PlanePoint(parse_rat(obj["b"]), parse_rat(obj["w"]))
    if isinstance(obj, list) and len(obj) == 2:
        return PlanePoint(parse_rat(obj[0]), parse_rat(obj[1]))
    raise InputError("point must be {b, w} or [b, w]")


def line_to_json(line: PlaneLine) -> list[int]:
    return line.as_triple()


def line_from_json(obj: Any) -> PlaneLine:
    if not (isinstance(obj, list) and len(obj) == 3):
        raise InputError("line must be [A, B, C]")
    return PlaneLine.make(*(parse_rat(t) for t in obj))


def quad_to_json(x: QuadNum) -> dict:
    return x.to_json()


def quad_from_json(obj: Any) -> QuadNum:
    if not (isinstance(obj, dict) and {"a", "b", "D"} <= set(obj)):
        raise InputError("QuadNum must be {a, b, D}")
    return QuadNum.make(parse_rat(obj["a"]), parse_rat(obj["b"]), parse_rat(obj["D"]))


def quad_decimal(x: QuadNum, digits: int = 12) -> str:
    """Fixed-point rendering for human consumption; never parsed back."""
    return f"{x.to_decimal(digits + 10):.{digits}f}"


# ---------------------------------------------------------------------------
# output


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from exc
