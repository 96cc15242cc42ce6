"""Symbolic wall-crossing relations among counting invariants.

Invariants are formal symbols; relations are polynomials in them with exact
rational coefficients.  Only the two-factor coefficient is explicit.  Every
other universal coefficient is a ``placeholder_C`` symbol carrying its
arguments.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Any, Iterable

from .errors import (
    DegenerateClass,
    InputError,
    NonMinusOneRank,
    NotAdmissible,
    NotBaseCase,
    NotCalabiYau,
    SlopeMismatch,
    UnboundedSearch,
)
from .plane import PlaneLine, pi, rational_between
from .rational import RationalLike, q
from .serialize import class_from_json, class_to_json, line_from_json, line_to_json, parse_rat, rat
from .stability import nu
from .threefold import (
    KClass,
    ThreefoldModel,
    chi_bar,
    delta_normalised,
    euler,
    euler_pair,
    hilbert,
    integrality_check,
    signed_euler,
    subtract_line_bundle,
    truncated,
    ch_twist,
)
from .walls import (
    Case,
    Decomposition,
    Limits,
    Wall,
    classify_destabilizer,
    close_to,
    lf_line,
    n0_admissible,
    vn0_walls,
    _chord,
)

CANDIDATE_CAVEAT = "numerical candidate walls; terms on unrealised walls may vanish"


def require_calabi_yau(X: ThreefoldModel) -> None:
    if not X.calabi_yau:
        raise NotCalabiYau(
            f"model {X.name!r} is not flagged Calabi-Yau; relations assume K_X = O_X and H^1(O_X) = 0"
        )


# ---------------------------------------------------------------------------
# symbols


@dataclass(frozen=True)
class Chamber:
    """large_volume, or adjacent to a wall: above / below a line."""

    tag: str
    line: PlaneLine | None = None

    def __post_init__(self) -> None:
        if self.tag not in {"large_volume", "above", "below"}:
            raise InputError(f"unknown chamber tag {self.tag!r}")
        if (self.tag == "large_volume") != (self.line is None):
            raise InputError("only wall-adjacent chambers carry a line")

    def to_json(self) -> dict:
        out: dict = {"tag": self.tag}
        if self.line is not None:
            out["line"] = line_to_json(self.line)
        return out

    @staticmethod
    def from_json(obj: Any) -> Chamber:
        line = line_from_json(obj["line"]) if "line" in obj else None
        return Chamber(obj["tag"], line)


LARGE_VOLUME = Chamber("large_volume")


@dataclass(frozen=True)
class InvariantSymbol:
    """kind is one of J_at, J_gieseker, PT, const_tors, placeholder_C."""

    kind: str
    payload: tuple = ()

    def to_json(self) -> dict:
        k, p = self.kind, self.payload
        if k == "J_at":
            return {"kind": k, "class": class_to_json(p[0]), "chamber": p[1].to_json()}
        if k == "J_gieseker":
            return {"kind": k, "class": class_to_json(p[0])}
        if k == "PT":
            return {"kind": k, "beta_h": rat(p[0]), "chi": rat(p[1])}
        if k == "const_tors":
            return {"kind": k}
        if k == "placeholder_C":
            label, classes, pairings = p
            return {
                "kind": k,
                "label": label,
                "classes": [class_to_json(a) for a in classes],
                "pairings": [[rat(x) for x in row] for row in pairings],
            }
        raise InputError(f"unknown symbol kind {k!r}")

    @staticmethod
    def from_json(obj: Any) -> InvariantSymbol:
        k = obj.get("kind")
        if k == "J_at":
            return J_at(class_from_json(obj["class"]), Chamber.from_json(obj["chamber"]))
        if k == "J_gieseker":
            return J_gieseker(class_from_json(obj["class"]))
        if k == "PT":
            return PT(parse_rat(obj["beta_h"]), parse_rat(obj["chi"]))
        if k == "const_tors":
            return CONST_TORS
        if k == "placeholder_C":
            classes = tuple(class_from_json(a) for a in obj["classes"])
            pairings = tuple(tuple(parse_rat(x) for x in row) for row in obj["pairings"])
            return InvariantSymbol(k, (obj["label"], classes, pairings))
        raise InputError(f"unknown symbol kind {k!r}")

    @property
    def key(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))

    def __str__(self) -> str:
        k, p = self.kind, self.payload
        if k == "J_at":
            where = p[1].tag if p[1].line is None else f"{p[1].tag}[{p[1].line}]"
            return f"J_{where}{p[0].as_tuple()}".replace("Fraction", "")
        if k == "J_gieseker":
            return f"J{p[0]}"
        if k == "PT":
            return f"PT({p[0]}, {p[1]})"
        if k == "const_tors":
            return "tors"
        return f"C[{p[0]}]"


def J_at(v: KClass, chamber: Chamber) -> InvariantSymbol:
    return InvariantSymbol("J_at", (v, chamber))


def J_gieseker(v: KClass) -> InvariantSymbol:
    return InvariantSymbol("J_gieseker", (v,))


def PT(beta_h: RationalLike, chi: RationalLike) -> InvariantSymbol:
    return InvariantSymbol("PT", (q(beta_h), q(chi)))


CONST_TORS = InvariantSymbol("const_tors")


def placeholder_C(label: str, classes: Iterable[KClass], X: ThreefoldModel) -> InvariantSymbol:
    """Opaque universal coefficient, recorded with its classes and their Euler pairing matrix."""
    classes = tuple(classes)
    pairings = tuple(tuple(euler_pair(a, b, X) for b in classes) for a in classes)
    return InvariantSymbol("placeholder_C", (label, classes, pairings))


# ---------------------------------------------------------------------------
# polynomials

Monomial = tuple  # tuple of (InvariantSymbol, exponent), sorted by symbol key


def _monomial(factors: Iterable[InvariantSymbol]) -> Monomial:
    counts: dict[InvariantSymbol, int] = {}
    for f in factors:
        counts[f] = counts.get(f, 0) + 1
    return tuple(sorted(counts.items(), key=lambda t: t[0].key))


def _mono_key(m: Monomial) -> tuple:
    return tuple((s.key, e) for s, e in m)


@dataclass(frozen=True)
class Poly:
    terms: tuple = ()  # ((Monomial, Fraction), ...) sorted, nonzero coefficients

    @staticmethod
    def of(mapping: dict) -> Poly:
        items = [(m, c) for m, c in mapping.items() if c != 0]
        items.sort(key=lambda t: _mono_key(t[0]))
        return Poly(tuple(items))

    @staticmethod
    def symbol(s: InvariantSymbol, coef: RationalLike = 1) -> Poly:
        return Poly.of({_monomial([s]): q(coef)})

    @staticmethod
    def product(coef: RationalLike, factors: Iterable[InvariantSymbol]) -> Poly:
        return Poly.of({_monomial(factors): q(coef)})

    @staticmethod
    def constant(c: RationalLike) -> Poly:
        return Poly.of({(): q(c)})

    def as_dict(self) -> dict:
        return dict(self.terms)

    def __add__(self, other: Poly) -> Poly:
        acc = self.as_dict()
        for m, c in other.terms:
            acc[m] = acc.get(m, Fraction(0)) + c
        return Poly.of(acc)

    def scale(self, k: RationalLike) -> Poly:
        k = q(k)
        return Poly.of({m: c * k for m, c in self.terms})

    def __sub__(self, other: Poly) -> Poly:
        return self + other.scale(-1)

    def __mul__(self, other: Poly) -> Poly:
        acc: dict = {}
        for m1, c1 in self.terms:
            for m2, c2 in other.terms:
                m = _monomial([s for s, e in m1 for _ in range(e)] + [s for s, e in m2 for _ in range(e)])
                acc[m] = acc.get(m, Fraction(0)) + c1 * c2
        return Poly.of(acc)

    def substitute(self, s: InvariantSymbol, value: Poly) -> Poly:
        out = Poly()
        for m, c in self.terms:
            term = Poly.constant(c)
            for sym, e in m:
                base = value if sym == s else Poly.symbol(sym)
                for _ in range(e):
                    term = term * base
            out = out + term
        return out

    def symbols(self) -> set[InvariantSymbol]:
        return {s for m, _ in self.terms for s, _ in m}

    def is_zero(self) -> bool:
        return not self.terms

    def to_json(self) -> list:
        return [
            {"coefficient": rat(c), "factors": [[s.to_json(), e] for s, e in m]}
            for m, c in self.terms
        ]

    @staticmethod
    def from_json(obj: Any) -> Poly:
        acc: dict = {}
        for term in obj:
            factors = []
            for s, e in term["factors"]:
                factors.extend([InvariantSymbol.from_json(s)] * int(e))
            m = _monomial(factors)
            acc[m] = acc.get(m, Fraction(0)) + parse_rat(term["coefficient"])
        return Poly.of(acc)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.terms:
            body = "*".join(str(s) if e == 1 else f"{s}^{e}" for s, e in m)
            parts.append(f"({c})" + (f"*{body}" if body else ""))
        return " + ".join(parts)


@dataclass(frozen=True)
class Relation:
    """left = right."""

    left: InvariantSymbol
    right: Poly
    provenance: tuple = field(default=(), compare=False)

    def to_json(self) -> dict:
        return {
            "left": self.left.to_json(),
            "right": self.right.to_json(),
            "provenance": list(self.provenance),
        }

    @staticmethod
    def from_json(obj: Any) -> Relation:
        return Relation(
            InvariantSymbol.from_json(obj["left"]),
            Poly.from_json(obj["right"]),
            tuple(obj.get("provenance", [])),
        )

    def coefficient_of(self, *factors: InvariantSymbol) -> Fraction:
        return self.right.as_dict().get(_monomial(factors), Fraction(0))

    def __str__(self) -> str:
        return f"{self.left} = {self.right}"


@dataclass(frozen=True)
class Derivation:
    steps: tuple  # ((wall json or None, Relation), ...)
    final: Relation

    def to_json(self) -> dict:
        return {
            "steps": [{"wall": w, "relation": r.to_json()} for w, r in self.steps],
            "final": self.final.to_json(),
        }

    @staticmethod
    def from_json(obj: Any) -> Derivation:
        steps = tuple((s["wall"], Relation.from_json(s["relation"])) for s in obj["steps"])
        return Derivation(steps, Relation.from_json(obj["final"]))

    @property
    def walls(self) -> list:
        return [w for w, _ in self.steps if w is not None]


# ---------------------------------------------------------------------------
# wall JSON (lives here to avoid a cycle with walls <-> serialize)


def decomposition_to_json(dec: Decomposition, classification: dict | None = None) -> dict:
    out = {"v0": class_to_json(dec.v0), "v1": class_to_json(dec.v1)}
    if dec.n is not None:
        out["n"] = rat(dec.n)
        out["c_prime"] = rat(dec.c_prime)
        out["s_prime"] = rat(dec.s_prime)
        out["d_prime"] = rat(dec.d_prime)
    out["classification"] = classification
    return out


def wall_to_json(wall: Wall, classifications: list | None = None) -> dict:
    b1, b2 = wall.roots()
    decs = [
        decomposition_to_json(d, None if classifications is None else classifications[i])
        for i, d in enumerate(wall.decompositions)
    ]
    return {
        "line": line_to_json(wall.line),
        "kind": wall.kind.value,
        "slope": rat(wall.slope),
        "endpoints": [b1.to_json(), b2.to_json()],
        "decompositions": decs,
        "status": "candidate",
    }


def wall_from_json(obj: Any) -> Wall:
    from .walls import WallKind

    line = line_from_json(obj["line"])
    decs = tuple(
        Decomposition(
            class_from_json(d["v0"]),
            class_from_json(d["v1"]),
            parse_rat(d["n"]) if "n" in d else None,
        )
        for d in obj["decompositions"]
    )
    return Wall(line, decs, WallKind(obj["kind"]), parse_rat(obj["slope"]))


def classification_to_json(cls) -> dict:
    data = {}
    for k, v in sorted(cls.data.items()):
        data[k] = rat(v) if isinstance(v, (Fraction, int)) and not isinstance(v, bool) else v
    return {"case": cls.case.value, "data": data}


# ---------------------------------------------------------------------------
# crossing formulas


def _sample_point(line: PlaneLine) -> tuple[Fraction, Fraction]:
    chord = _chord(line)
    if chord is None:
        raise SlopeMismatch("the wall does not meet U")
    b = rational_between(*chord)
    return b, line.w_at(b)


def _orientation(v: KClass, a1: KClass, a2: KClass, line: PlaneLine) -> tuple[KClass, KClass]:
    """(up, down): the factor with larger nu just above the wall comes first."""
    b, _ = _sample_point(line)
    x, x1 = v.c - b * v.r, a1.c - b * a1.r
    rate = (v.r * a1.c - a1.r * v.c) * (1 if x * x1 > 0 else -1)
    if rate == 0:
        raise SlopeMismatch("factor slopes agree with v on both sides; not a wall")
    return (a1, a2) if rate > 0 else (a2, a1)


def two_factor_crossing(v: KClass, a1: KClass, a2: KClass, wall: Wall, X: ThreefoldModel) -> Relation:
    """J_below(v) = J_above(v) + chibar(up, down) J_above(a1) J_above(a2)."""
    require_calabi_yau(X)
    if a1 + a2 != v:
        raise SlopeMismatch("factors do not add up to v")
    b, w = _sample_point(wall.line)
    target = nu(b, w, v)
    if nu(b, w, a1) != target or nu(b, w, a2) != target:
        raise SlopeMismatch("factor slopes differ from v on the wall")
    up, down = _orientation(v, a1, a2, wall.line)
    coef = chi_bar(up, down, X)
    above, below = Chamber("above", wall.line), Chamber("below", wall.line)
    right = Poly.symbol(J_at(v, above)) + Poly.product(coef, [J_at(a1, above), J_at(a2, above)])
    prov = (
        {
            "citation_tag": "two_factor_crossing",
            "wall": line_to_json(wall.line),
            "orientation": {"up": class_to_json(up), "down": class_to_json(down)},
            "coefficients": {"chi_bar": rat(coef)},
            "caveat": CANDIDATE_CAVEAT,
        },
    )
    return Relation(J_at(v, below), right, prov)


def js_base_relation(v: KClass, n0: RationalLike, X: ThreefoldModel) -> Relation:
    """J_{b,inf}(v - O(-n0)) = chibar(v(n0)) tors J_{b,inf}(v) when ch1(v) is minimal."""
    require_calabi_yau(X)
    n0 = q(n0)
    if v.r != 0 or v.c != X.cmin:
        raise NotBaseCase(f"base case needs rank 0 and c = cmin = {X.cmin}")
    coef = signed_euler(euler(ch_twist(v, n0), X)) * X.tors
    vn = subtract_line_bundle(v, n0)
    prov = (
        {
            "citation_tag": "joyce_song_base",
            "n0": rat(n0),
            "coefficients": {"chi_bar": rat(coef / X.tors), "tors": X.tors},
        },
    )
    return Relation(J_at(vn, LARGE_VOLUME), Poly.product(coef, [J_at(v, LARGE_VOLUME)]), prov)


# ---------------------------------------------------------------------------
# the wall walk


def is_primitive(u: KClass, X: ThreefoldModel, limit: int = 1000) -> bool:
    """No k >= 2 with u/k an integral class that an object could carry.

    k must divide the rank, and a rank 0 part must keep ch1 >= cmin (or vanish).
    """
    nums = [abs(x.numerator) for x in (u.r, u.c * X.h3, u.s * X.h3 * 12, u.d * X.h3 * 6) if x]
    top = min(limit, max(nums, default=1))
    for k in range(2, top + 1):
        if u.r % k:
            continue
        part = u.scale(Fraction(1, k))
        if u.r == 0 and part.c != 0 and abs(part.c) < X.cmin:
            continue
        if integrality_check(part, X):
            return False
    return True


def _wall_terms(
    vn: KClass, wall: Wall, X: ThreefoldModel, tors_value: int
) -> tuple[Poly, list[dict]]:
    """Sum over decompositions of coefficient * J_above(a1) * J_above(a2), with simplifications.

    A rank -1 factor with Delta = 0 counts twists of a line bundle by Pic^0,
    contributing tors.  A rank 0 factor above l_f is in its large volume chamber.
    """
    above = Chamber("above", wall.line)
    total = Poly()
    notes = []

    def sym(a: KClass) -> Poly:
        if a.r == -1 and delta_normalised(a) == 0:
            return Poly.constant(tors_value)
        if a.r == 0:
            return Poly.symbol(J_at(a, LARGE_VOLUME))
        return Poly.symbol(J_at(a, above))

    for dec in wall.decompositions:
        a1, a2 = dec.v0, dec.v1
        if is_primitive(a1, X) and is_primitive(a2, X):
            up, down = _orientation(vn, a1, a2, wall.line)
            coef = chi_bar(up, down, X)
            total = total + Poly.constant(coef) * sym(a1) * sym(a2)
            notes.append({"v0": class_to_json(a1), "v1": class_to_json(a2), "coefficient": rat(coef)})
        else:
            c = placeholder_C("imprimitive_pair", (a1, a2), X)
            total = total + Poly.symbol(c) * sym(a1) * sym(a2)
            notes.append({"v0": class_to_json(a1), "v1": class_to_json(a2), "coefficient": "placeholder"})
    if len(wall.decompositions) > 1:
        # several splittings on one wall allow configurations with three or more factors
        pieces = sorted({p for d in wall.decompositions for p in (d.v0, d.v1)})
        total = total + Poly.symbol(placeholder_C("multi_factor", pieces, X))
        notes.append({"coefficient": "placeholder", "factors": "m >= 3"})
    return total, notes


def walk_walls(
    v: KClass,
    n0: RationalLike,
    X: ThreefoldModel,
    limits: Limits | None = None,
    check_admissible: bool = True,
) -> Derivation:
    """Walk up from just below l_f, where J(v_{n0}) = 0, to the large volume chamber."""
    require_calabi_yau(X)
    n0 = q(n0)
    if v.r != 0 or v.c <= 0:
        raise DegenerateClass("v must have rank 0 and c > 0")
    if not integrality_check(v, X):
        raise InputError("v is not an integral class")
    if check_admissible and not n0_admissible(v, n0, X):
        raise NotAdmissible(f"n0 = {n0} fails the admissibility checklist")
    vn = subtract_line_bundle(v, n0)
    lf = lf_line(v, n0)
    walls = sorted(vn0_walls(v, n0, X, limits), key=lambda w: (w.slope, w.line.as_triple()))
    witness = close_to(vn, v, n0, X)

    start = Relation(
        J_at(vn, Chamber("below", lf)),
        Poly(),
        ({"citation_tag": "zero_below_lf", "line": line_to_json(lf)},),
    )
    steps: list = [(None, start)]
    current = Poly()
    for wall in walls:
        classes = [
            classification_to_json(classify_destabilizer(vn, witness, wall, d, n0, X))
            for d in wall.decompositions
        ]
        terms, notes = _wall_terms(vn, wall, X, X.tors)
        # J_- = J_+ + terms, so J_+ = J_- - terms
        current = current - terms
        rel = Relation(
            J_at(vn, Chamber("above", wall.line)),
            current,
            (
                {
                    "citation_tag": "two_factor_crossing",
                    "wall": line_to_json(wall.line),
                    "terms": notes,
                    "caveat": CANDIDATE_CAVEAT,
                },
            ),
        )
        steps.append((wall_to_json(wall, classes), rel))
    final = Relation(
        J_at(vn, LARGE_VOLUME),
        current,
        (
            {
                "citation_tag": "large_volume",
                "n0": rat(n0),
                "walls_crossed": len(walls),
                "caveat": CANDIDATE_CAVEAT,
            },
        ),
    )
    return Derivation(tuple(steps), final)


# ---------------------------------------------------------------------------
# Gieseker versus tilt, and stable pairs


def _rank0_ch3_cap(c: Fraction, s: Fraction) -> Fraction:
    return s * s / (2 * c) + c**3 / 24


def _partitions(total: Fraction, parts: int, lo: Fraction, step: Fraction) -> Iterable[tuple]:
    """Nondecreasing tuples of lattice values >= lo summing to total."""
    units = total / step
    lo_u = -(-lo // step) if lo > 0 else 1

    def rec(remaining: Fraction, k: int, minimum: int):
        if k == 1:
            if remaining >= minimum and remaining.denominator == 1:
                yield (int(remaining),)
            return
        m = minimum
        while m * k <= remaining:
            for rest in rec(remaining - m, k - 1, m):
                yield (m,) + rest
            m += 1

    for t in rec(units, parts, int(lo_u)):
        yield tuple(x * step for x in t)


def gieseker_tilt_skeleton(v: KClass, X: ThreefoldModel, limits: Limits | None = None) -> Relation:
    """J(v) = J_{b,inf}(v) + sum over splittings with equal truncated reduced Hilbert polynomial."""
    require_calabi_yau(X)
    limits = limits or Limits()
    if v.r != 0 or v.c <= 0:
        raise DegenerateClass("v must have rank 0 and c > 0")
    target = truncated(hilbert(v, X))
    step = Fraction(1, X.h3)
    right = Poly.symbol(J_at(v, LARGE_VOLUME))
    count = 0
    max_parts = min(limits.max_factors, int(v.c // X.cmin))
    for m in range(2, max_parts + 1):
        for cs in _partitions(v.c, m, X.cmin, step):
            ss = [ci * v.s / v.c for ci in cs]
            caps = [_rank0_ch3_cap(ci, si) for ci, si in zip(cs, ss)]
            for ds in _ch3_splits(v.d, cs, caps, X, limits):
                pieces = [KClass(0, ci, si, di) for ci, si, di in zip(cs, ss, ds)]
                if not all(integrality_check(p, X) for p in pieces):
                    continue
                if any(truncated(hilbert(p, X)) != target for p in pieces):
                    continue
                count += 1
                if count > limits.max_candidates:
                    raise UnboundedSearch("too many Gieseker splittings")
                c = placeholder_C("gieseker_tilt", pieces, X)
                right = right + Poly.product(1, [c] + [J_at(p, LARGE_VOLUME) for p in pieces])
    prov = ({"citation_tag": "gieseker_tilt", "max_factors": max_parts},)
    return Relation(J_gieseker(v), right, prov)


def _ch3_splits(d: Fraction, cs: tuple, caps: list, X: ThreefoldModel, limits: Limits):
    """ch3 tuples in the right cosets, each below its cap, summing to d; equal c's kept sorted."""
    step = Fraction(1, X.h3)
    from .threefold import ch3_lattice_offset

    n = len(cs)

    def rec(i: int, remaining: Fraction, prev: Fraction | None):
        if i == n - 1:
            off = ch3_lattice_offset(cs[i], X)
            if remaining <= caps[i] and ((remaining - off) / step).denominator == 1:
                if prev is None or cs[i] != cs[i - 1] or remaining >= prev:
                    yield (remaining,)
            return
        off = ch3_lattice_offset(cs[i], X)
        lo = remaining - sum(caps[i + 1 :])
        if prev is not None and cs[i] == cs[i - 1]:
            lo = max(lo, prev)
        kmin = -(-(lo - off) // step)
        kmax = (caps[i] - off) // step
        if kmax - kmin + 1 > limits.max_ch3_lifts:
            raise UnboundedSearch("too many ch3 splittings")
        for k in range(int(kmin), int(kmax) + 1):
            di = off + k * step
            for rest in rec(i + 1, remaining - di, di):
                yield (di,) + rest

    yield from rec(0, d, None)


def stable_pair_data(v: KClass, X: ThreefoldModel) -> tuple[Fraction, Fraction, Fraction]:
    """(n, beta_h, chi) with v = ch_twist((-1, 0, beta, -m), -n)."""
    if v.r != -1:
        raise NonMinusOneRank("stable pair classes have rank -1")
    n = v.c
    beta = v.s + n * n / 2
    m = -v.d - n * beta + n**3 / 6
    return n, beta * X.h3, m * X.h3


def pt_bridge(v: KClass, X: ThreefoldModel) -> Relation:
    """J_{b,inf}(v) = tors * PT(beta.H, chi) for a rank -1 class at large volume."""
    require_calabi_yau(X)
    n, beta_h, chi = stable_pair_data(v, X)
    prov = ({"citation_tag": "stable_pair_bridge", "twist": rat(n), "coefficients": {"tors": X.tors}},)
    return Relation(J_at(v, LARGE_VOLUME), Poly.product(X.tors, [PT(beta_h, chi)]), prov)


def compose_with_pt(derivation: Derivation, X: ThreefoldModel) -> Relation:
    """Rewrite a walk's large volume relation with PT symbols on the left and for rank -1 terms."""
    require_calabi_yau(X)
    final = derivation.final
    vn = final.left.payload[0]
    left = pt_bridge(vn, X)
    (pt_sym,) = left.right.symbols()
    right = final.right
    for s in sorted(right.symbols(), key=lambda t: t.key):
        if s.kind == "J_at" and s.payload[1] == LARGE_VOLUME and s.payload[0].r == -1:
            right = right.substitute(s, pt_bridge(s.payload[0], X).right)
    prov = ({"citation_tag": "stable_pair_bridge", "source": "walk_walls"},)
    return Relation(pt_sym, right.scale(Fraction(1, X.tors)), prov)


__all__ = [
    "Chamber",
    "LARGE_VOLUME",
    "InvariantSymbol",
    "J_at",
    "J_gieseker",
    "PT",
    "CONST_TORS",
    "placeholder_C",
    "Poly",
    "Relation",
    "Derivation",
    "two_factor_crossing",
    "js_base_relation",
    "walk_walls",
    "gieseker_tilt_skeleton",
    "pt_bridge",
    "compose_with_pt",
    "stable_pair_data",
    "wall_to_json",
    "wall_from_json",
    "decomposition_to_json",
    "classification_to_json",
    "require_calabi_yau",
    "is_primitive",
]
