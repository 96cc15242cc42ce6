"""Command-line front end.

Exit codes: 0 ok, 1 input error, 2 limits exceeded, 3 model assumption
violated, 4 admissibility failure.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import replace
from fractions import Fraction
from typing import Any, Sequence

from . import __version__
from .dimension_one import chamber_report, constant_ch3_bound, dim1_walls
from .errors import (
    AdmissibilityFailure,
    InputError,
    LimitsExceeded,
    ModelAssumption,
    NegativeDiscriminant,
    NoIntersection,
    TiltwallError,
)
from .plane import PlanePoint, parabola_roots, pi, pi_prime
from .plot import PlotSpec, figure_spec, render_svg, spec_from_walls
from .serialize import (
    class_from_json,
    class_to_json,
    dumps,
    line_from_json,
    line_to_json,
    loads,
    model_from_json,
    model_to_json,
    parse_rat,
    point_to_json,
    rat,
)
from .stability import bg_line, li_region
from .threefold import (
    BUILTIN_MODELS,
    KClass,
    ThreefoldModel,
    delta,
    euler,
    hilbert,
    integrality_check,
    subtract_line_bundle,
)
from .walls import (
    IrrationalLine,
    Limits,
    Region,
    admissibility_report,
    classify_destabilizer,
    close_to,
    js_wall,
    minimal_admissible_n0,
    safe_line,
    safe_slope,
    vn0_walls,
    wall_candidates,
    _chord,
)
from .wcf import classification_to_json, compose_with_pt, require_calabi_yau, walk_walls, wall_to_json

EXIT_OK, EXIT_INPUT, EXIT_LIMITS, EXIT_MODEL, EXIT_ADMISSIBILITY = 0, 1, 2, 3, 4


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse would exit with 2, which means limits here
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------------------
# argument helpers


def _read_json_arg(text: str) -> Any:
    """Inline JSON, '-' for stdin, or a file path."""
    stripped = text.strip()
    if stripped == "-":
        return loads(sys.stdin.read())
    if stripped[:1] in "{[":
        return loads(stripped)
    try:
        with open(text, encoding="utf-8") as fh:
            return loads(fh.read())
    except OSError as exc:
        raise InputError(f"cannot read {text!r}: {exc.strerror}") from exc


def _model(args: argparse.Namespace) -> ThreefoldModel:
    name = args.model
    if name in BUILTIN_MODELS:
        return BUILTIN_MODELS[name]
    return model_from_json(_read_json_arg(name))


def _limits(args: argparse.Namespace) -> Limits:
    lim = Limits.from_env()
    for key in ("max_abs_rank", "max_denominator", "max_ch3_lifts", "max_candidates"):
        val = getattr(args, key, None)
        if val is not None:
            if val < 1:
                raise InputError(f"--{key.replace('_', '-')} must be positive")
            lim = replace(lim, **{key: val})
    if getattr(args, "threads", None) is not None:
        if args.threads < 1:
            raise InputError("--threads must be positive")
        lim = replace(lim, threads=args.threads)
    return lim


def _emit(obj: Any, args: argparse.Namespace) -> None:
    text = dumps(obj)
    out = getattr(args, "output", None)
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _warn(msg: str) -> None:
    sys.stderr.write(f"warning: {msg}\n")


# ---------------------------------------------------------------------------
# commands


def cmd_model(args: argparse.Namespace) -> int:
    if args.action == "validate":
        X = model_from_json(_read_json_arg(args.file))
        _emit({"valid": True, "model": model_to_json(X)}, args)
    else:
        X = _model(args)
        _emit({"model": model_to_json(X), "h6": X.h6, "builtin": X.name in BUILTIN_MODELS}, args)
    return EXIT_OK


def cmd_class_info(args: argparse.Namespace) -> int:
    X = _model(args)
    v = class_from_json(_read_json_arg(args.cls))
    info: dict = {
        "class": class_to_json(v),
        "integral": integrality_check(v, X),
        "delta": rat(delta(v, X)),
        "euler": rat(euler(v, X)),
    }
    if not v.is_zero():
        try:
            info["hilbert"] = [rat(a) for a in hilbert(v, X).coeffs]
        except InputError:
            info["hilbert"] = None
    info["pi"] = point_to_json(pi(v)) if v.r != 0 else None
    info["pi_prime"] = point_to_json(pi_prime(v)) if v.c != 0 else None
    try:
        info["bg_line"] = line_to_json(bg_line(v))
    except InputError:
        info["bg_line"] = None
    _emit(info, args)
    return EXIT_OK


def _li_check(line, mode: str) -> bool | None:
    """Whether the wall meets the restricted region at its simplest interior point."""
    if mode == "off":
        return None
    from .plane import rational_between

    chord = _chord(line)
    if chord is None:
        return False
    b = rational_between(*chord)
    return li_region(b, line.w_at(b))


def cmd_walls(args: argparse.Namespace) -> int:
    X = _model(args)
    limits = _limits(args)
    v = class_from_json(_read_json_arg(args.cls))
    result: dict = {"model": X.name, "class": class_to_json(v)}
    if args.n0 is not None:
        n0 = parse_rat(args.n0)
        vn = subtract_line_bundle(v, n0)
        walls = vn0_walls(v, n0, X, limits)
        witness = close_to(vn, v, n0, X)
        out = []
        for w in walls:
            cls = [classification_to_json(classify_destabilizer(vn, witness, w, d, n0, X)) for d in w.decompositions]
            out.append(wall_to_json(w, cls))
        result.update({"n0": rat(n0), "decomposed": class_to_json(vn), "pi": point_to_json(pi(vn))})
    else:
        above = line_from_json(_read_json_arg(args.above)) if args.above else None
        right = parse_rat(args.right_of) if args.right_of is not None else None
        walls = wall_candidates(v, Region(above, right), X, limits)
        out = [wall_to_json(w) for w in walls]
        result["pi"] = point_to_json(pi(v)) if v.r != 0 else None
    kept = []
    for w, js in zip(walls, out):
        flag = _li_check(w.line, args.li_region)
        if flag is not None:
            js["li_region"] = flag
            if not flag:
                if args.li_region == "filter":
                    continue
                _warn(f"wall {w.line} misses the restricted BG region at its sample point")
        kept.append(js)
    result["walls"] = kept
    _emit(result, args)
    return EXIT_OK


def cmd_js_wall(args: argparse.Namespace) -> int:
    X = _model(args)
    w_n = class_from_json(_read_json_arg(args.cls))
    wall = js_wall(w_n, parse_rat(args.n), X)
    _emit(wall_to_json(wall), args)
    return EXIT_OK


def cmd_safe_line(args: argparse.Namespace) -> int:
    X = _model(args)
    v = class_from_json(_read_json_arg(args.cls))
    cap = parse_rat(args.cap)
    slope = safe_slope(v, cap, X)
    out: dict = {"class": class_to_json(v), "cap": rat(cap), "slope": slope.to_json(), "pi": point_to_json(pi(v))}
    try:
        out["line"] = line_to_json(safe_line(v, cap, X))
    except IrrationalLine:
        out["line"] = None
    _emit(out, args)
    return EXIT_OK


def cmd_dim1(args: argparse.Namespace) -> int:
    bound = constant_ch3_bound(parse_rat(args.bound))
    if args.action == "walls":
        walls = dim1_walls(args.c, args.s, bound, args.n)
        _emit(
            {"walls": [{"theta": rat(w.theta), "witnesses": [list(x) for x in w.witnesses]} for w in walls]},
            args,
        )
    else:
        _emit(chamber_report(args.c, args.s, args.n, bound), args)
    return EXIT_OK


def cmd_derive(args: argparse.Namespace) -> int:
    X = _model(args)
    require_calabi_yau(X)
    limits = _limits(args)
    v = class_from_json(_read_json_arg(args.cls))
    if args.n0 == "auto":
        n0 = minimal_admissible_n0(v, X, limits)
    else:
        n0 = parse_rat(args.n0)
    report = admissibility_report(v, n0, X)
    failed = sorted(k for k, ok in report.items() if not ok)
    if failed and not args.skip_admissibility:
        raise AdmissibilityFailure(f"n0 = {n0} fails the admissibility checklist: {', '.join(failed)}")
    if failed:
        _warn(f"n0 = {n0} fails {', '.join(failed)}; the walk is run without that guarantee")
    derivation = walk_walls(v, n0, X, limits, check_admissible=not args.skip_admissibility)
    out = {
        "model": X.name,
        "class": class_to_json(v),
        "n0": rat(n0),
        "n0_source": "auto" if args.n0 == "auto" else "given",
        "admissibility": report,
        "admissibility_skipped": bool(failed and args.skip_admissibility),
        "derivation": derivation.to_json(),
    }
    if args.pt:
        out["pt_relation"] = compose_with_pt(derivation, X).to_json()
    _emit(out, args)
    return EXIT_OK


def cmd_plot(args: argparse.Namespace) -> int:
    if args.spec:
        spec = PlotSpec.from_json(_read_json_arg(args.spec))
    elif args.walls:
        spec = spec_from_walls(_read_json_arg(args.walls))
    elif args.cls and args.n0 is not None:
        X = _model(args)
        spec = figure_spec(class_from_json(_read_json_arg(args.cls)), parse_rat(args.n0), X)
    else:
        raise InputError("plot needs --spec, --walls, or --class with --n0")
    if args.precision is not None:
        spec = replace(spec, precision=args.precision)
    svg = render_svg(spec)
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(svg)
    else:
        sys.stdout.write(svg)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--model", default="quintic", help="built-in model name or model JSON (inline or path)")
    common.add_argument("-o", "--output", help="write to this file instead of stdout")

    lim = _Parser(add_help=False)
    lim.add_argument("--threads", type=int, help="worker threads (also TILTWALL_THREADS)")
    lim.add_argument("--max-abs-rank", dest="max_abs_rank", type=int)
    lim.add_argument("--max-denominator", dest="max_denominator", type=int)
    lim.add_argument("--max-ch3-lifts", dest="max_ch3_lifts", type=int)
    lim.add_argument("--max-candidates", dest="max_candidates", type=int)

    p = _Parser(prog="tiltwall", description="Exact tilt-stability walls and wall-crossing relations.")
    p.add_argument("--version", action="version", version=f"tiltwall {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    m = sub.add_parser("model", help="validate or describe a threefold model")
    msub = m.add_subparsers(dest="action", required=True, parser_class=_Parser)
    mv = msub.add_parser("validate", parents=[common])
    mv.add_argument("file")
    msub.add_parser("info", parents=[common])
    m.set_defaults(func=cmd_model)

    c = sub.add_parser("class", help="invariants of a class")
    csub = c.add_subparsers(dest="action", required=True, parser_class=_Parser)
    ci = csub.add_parser("info", parents=[common])
    ci.add_argument("--class", dest="cls", required=True)
    c.set_defaults(func=cmd_class_info)

    w = sub.add_parser("walls", parents=[common, lim], help="candidate walls")
    w.add_argument("--class", dest="cls", required=True)
    w.add_argument("--n0", help="treat the class as v and list walls for v - [O(-n0)] above l_f")
    w.add_argument("--above", help="region line [A, B, C]")
    w.add_argument("--right-of", dest="right_of")
    w.add_argument("--li-region", dest="li_region", choices=["warn", "filter", "off"], default="warn")
    w.set_defaults(func=cmd_walls)

    j = sub.add_parser("js-wall", parents=[common], help="Joyce-Song wall of w_n")
    j.add_argument("--class", dest="cls", required=True)
    j.add_argument("--n", required=True)
    j.set_defaults(func=cmd_js_wall)

    s = sub.add_parser("safe-line", parents=[common], help="safe line of a rank -1 class")
    s.add_argument("--class", dest="cls", required=True)
    s.add_argument("--cap", required=True)
    s.set_defaults(func=cmd_safe_line)

    d1 = sub.add_parser("dim1", help="dimension one walls")
    d1sub = d1.add_subparsers(dest="action", required=True, parser_class=_Parser)
    for name in ("walls", "report"):
        sp = d1sub.add_parser(name, parents=[common])
        sp.add_argument("--c", type=int, required=True)
        sp.add_argument("--s", type=int, required=True)
        sp.add_argument("--n", type=int, default=0)
        sp.add_argument("--bound", default="0", help="constant lower ch3 bound")
    d1.set_defaults(func=cmd_dim1)

    dv = sub.add_parser("derive", parents=[common, lim], help="wall-crossing derivation")
    dv.add_argument("--class", dest="cls", required=True)
    dv.add_argument("--n0", default="auto")
    dv.add_argument("--pt", action="store_true", help="append the stable pair form of the final relation")
    dv.add_argument(
        "--skip-admissibility",
        dest="skip_admissibility",
        action="store_true",
        help="run the walk even if n0 fails the conservative checklist (warns)",
    )
    dv.set_defaults(func=cmd_derive)

    pl = sub.add_parser("plot", parents=[common], help="SVG of the (b, w)-plane")
    pl.add_argument("--spec")
    pl.add_argument("--walls")
    pl.add_argument("--class", dest="cls")
    pl.add_argument("--n0")
    pl.add_argument("--precision", type=int)
    pl.set_defaults(func=cmd_plot)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except LimitsExceeded as exc:
        sys.stderr.write(dumps({"error": str(exc), "kind": type(exc).__name__, "partial": False}))
        return EXIT_LIMITS
    except ModelAssumption as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_MODEL
    except AdmissibilityFailure as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_ADMISSIBILITY
    except (InputError, TiltwallError) as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return EXIT_INPUT
    except (KeyError, TypeError) as exc:
        sys.stderr.write(f"error: malformed input: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
