"""Numerical walls of instability and the destabiliser bookkeeping around them.

A wall for a class ``v`` is a line in the (b, w)-plane along which some
splitting ``v = u + u'`` has equal tilt slopes.  Enumeration follows the
finiteness argument for the large volume chamber: fix a rational ``b0`` met
by every wall of interest, bound ``ch1^{b0}`` and the discriminants of the
pieces, and read off finitely many ``(ch0, ch1, ch2)`` triples.  Each
splitting is then lifted to full classes by enumerating the ch3 values
allowed by the BG inequality along the wall.
"""

from __future__ import annotations

import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction

from .errors import (
    DegenerateClass,
    InconsistentDecomposition,
    InputError,
    IrrationalLine,
    NegativeDiscriminant,
    NoIntersection,
    NonMinusOneRank,
    OutOfRange,
    UnboundedSearch,
    ZeroClass,
)
from .plane import (
    PlaneLine,
    PlanePoint,
    QuadNum,
    Side,
    line_on_or_above,
    line_through,
    parabola_roots,
    pi,
    point_side,
    rational_between,
)
from .rational import RationalLike, lcm, q
from .stability import bg_line
from .threefold import (
    KClass,
    ThreefoldModel,
    ch2_lattice_offset,
    ch3_lattice_offset,
    delta_normalised,
    line_bundle,
    subtract_line_bundle,
)

# ---------------------------------------------------------------------------
# configuration


@dataclass(frozen=True)
class Limits:
    """Explicit enumeration caps; exceeding any of them raises UnboundedSearch."""

    max_abs_rank: int = 4000
    max_denominator: int = 10**6
    max_ch3_lifts: int = 20000
    max_candidates: int = 2_000_000
    max_n0: int = 2**40
    max_factors: int = 4
    threads: int = 1

    @staticmethod
    def from_env(base: Limits | None = None) -> Limits:
        """Apply overrides from TILTWALL_LIMITS (a JSON object) and TILTWALL_THREADS."""
        lim = base or Limits()
        raw = os.environ.get("TILTWALL_LIMITS")
        if raw:
            try:
                data = json.loads(raw)
            except json.JSONDecodeError as exc:
                raise InputError(f"TILTWALL_LIMITS is not valid JSON: {exc}") from exc
            if not isinstance(data, dict):
                raise InputError("TILTWALL_LIMITS must be a JSON object")
            known = set(Limits.__dataclass_fields__)
            bad = set(data) - known
            if bad:
                raise InputError(f"unknown limit keys: {sorted(bad)}")
            if not all(isinstance(x, int) and not isinstance(x, bool) and x > 0 for x in data.values()):
                raise InputError("limit values must be positive integers")
            lim = replace(lim, **data)
        threads = os.environ.get("TILTWALL_THREADS")
        if threads:
            try:
                t = int(threads)
            except ValueError as exc:
                raise InputError("TILTWALL_THREADS must be an integer") from exc
            if t < 1:
                raise InputError("TILTWALL_THREADS must be positive")
            lim = replace(lim, threads=t)
        return lim


@dataclass(frozen=True)
class Region:
    """Walls must lie on or above ``above_line`` over its chord in U, and reach b > ``right_of``."""

    above_line: PlaneLine | None = None
    right_of: Fraction | None = None


# ---------------------------------------------------------------------------
# records


class WallKind(str, Enum):
    JOYCE_SONG = "joyce_song"
    GENERIC = "generic"


@dataclass(frozen=True)
class Decomposition:
    """A splitting v = v0 + v1.

    For the rank -1 classes w_n = (0, c, s, d) - [O(-n)] the rank 0 piece is
    ``v0`` and ``n`` is recorded so that the primed quantities
    ``ch(v1) = (-1, n + c', -n^2/2 + s', n^3/6 + d')`` are available.
    """

    v0: KClass
    v1: KClass
    n: Fraction | None = None

    @property
    def total(self) -> KClass:
        return self.v0 + self.v1

    @property
    def c_prime(self) -> Fraction | None:
        return None if self.n is None else self.v1.c - self.n

    @property
    def s_prime(self) -> Fraction | None:
        return None if self.n is None else self.v1.s + self.n * self.n / 2

    @property
    def d_prime(self) -> Fraction | None:
        return None if self.n is None else self.v1.d - self.n**3 / 6

    def sort_key(self) -> tuple:
        return (self.v0.c, self.v0.s, self.v0.d, self.v0.r, self.v1.as_tuple())


@dataclass(frozen=True)
class Wall:
    line: PlaneLine
    decompositions: tuple[Decomposition, ...]
    kind: WallKind
    slope: Fraction

    def roots(self) -> tuple[QuadNum, QuadNum]:
        return parabola_roots(self.line)


def _wall_sort_key(wall: Wall) -> tuple:
    return (-wall.slope, wall.line.as_triple())


# ---------------------------------------------------------------------------
# wall geometry helpers


def numerical_wall(v: KClass, u: KClass) -> PlaneLine | None:
    """The locus nu(u) = nu(v); None when the slopes agree everywhere or nowhere."""
    r, c, s = v.r, v.c, v.s
    A = s * u.r - u.s * r
    B = r * u.c - u.r * c
    C = s * u.c - u.s * c
    if A == 0 and B == 0:
        return None
    return PlaneLine.make(A, B, C)


def _chord(line: PlaneLine) -> tuple[QuadNum, QuadNum] | None:
    """Open chord of the line inside U, or None if it misses U."""
    if line.is_vertical:
        return None
    try:
        b1, b2 = parabola_roots(line)
    except NoIntersection:
        return None
    if not b1 < b2:
        return None
    return b1, b2


def _interior_point(lo: QuadNum, hi: QuadNum) -> Fraction:
    return rational_between(lo, hi)


def _in_region(line: PlaneLine, chord: tuple[QuadNum, QuadNum], region: Region) -> bool:
    if region.above_line is not None and not line_on_or_above(line, region.above_line):
        return False
    if region.right_of is not None and not chord[1] > region.right_of:
        return False
    return True


# ---------------------------------------------------------------------------
# ch3 lifting


def _bg_ch3_cap(u: KClass, line: PlaneLine, chord: tuple[QuadNum, QuadNum]) -> QuadNum | None:
    """Largest ch3 for which B_{b,w}(u) >= 0 on the closed chord; None if unbounded.

    With x = ch1^b(u) > 0 the BG form reads
    Delta w - c s b + 2 s^2 - 3 d x >= 0, an upper bound on d that is a
    Moebius function of b along the line, so its minimum is at an endpoint.
    """
    disc = delta_normalised(u)
    best: QuadNum | None = None
    for beta in chord:
        x = QuadNum.rational(u.c) - beta * u.r
        if x.sign() <= 0:
            continue
        w = line.w_at(beta)
        num = w * disc - beta * (u.c * u.s) + 2 * u.s * u.s
        cap = num / (x * 3)
        if best is None or cap < best:
            best = cap
    return best


def _forced_ch3(u: KClass) -> Fraction | None:
    """ch3 of a rank +-k class with Delta = 0 is that of k copies of a line bundle."""
    if u.r != 0 and delta_normalised(u) == 0:
        return u.c**3 / (6 * u.r * u.r)
    return None


def _lattice_points(lo: QuadNum | None, hi: QuadNum | None, offset: Fraction, step: Fraction,
                    limit: int) -> list[Fraction]:
    """offset + k*step in [lo, hi]; both bounds must be finite."""
    if lo is None or hi is None:
        raise UnboundedSearch("ch3 of a factor is not bounded by the BG inequality")
    if lo > hi:
        return []
    kmin = ((lo - offset) / step).ceil()
    kmax = ((hi - offset) / step).floor()
    if kmax - kmin + 1 > limit:
        raise UnboundedSearch(f"{kmax - kmin + 1} ch3 lifts exceed max_ch3_lifts={limit}")
    return [offset + k * step for k in range(kmin, kmax + 1)]


def lift_ch3(
    v: KClass,
    u0: tuple[Fraction, Fraction, Fraction],
    line: PlaneLine,
    chord: tuple[QuadNum, QuadNum],
    X: ThreefoldModel,
    limits: Limits,
    extra_cap0: Fraction | None = None,
) -> list[Fraction]:
    """Integral ch3 values d0 of the piece with truncation u0 compatible with the BG inequality.

    Both pieces u0 = (r0, c0, s0, d0) and u1 = v - u0 must satisfy
    B_{b,w} >= 0 along the closed chord of the wall.  ``extra_cap0`` is an
    additional upper bound on d0.
    """
    r0, c0, s0 = u0
    trial0 = KClass(r0, c0, s0, 0)
    trial1 = v - trial0
    cap0 = _bg_ch3_cap(trial0, line, chord)
    cap1 = _bg_ch3_cap(KClass(trial1.r, trial1.c, trial1.s, 0), line, chord)
    if extra_cap0 is not None:
        e = QuadNum.rational(extra_cap0)
        cap0 = e if cap0 is None or e < cap0 else cap0
    forced0 = _forced_ch3(trial0)
    forced1 = _forced_ch3(trial1)
    offset = ch3_lattice_offset(c0, X)
    step = Fraction(1, X.h3)
    candidates: list[Fraction]
    if forced0 is not None or forced1 is not None:
        values = set()
        if forced0 is not None:
            values.add(forced0)
        if forced1 is not None:
            values.add(v.d - forced1)
        if len(values) != 1:
            return []
        candidates = list(values)
        if ((candidates[0] - offset) / step).denominator != 1:
            return []
        d0 = candidates[0]
        if cap0 is not None and QuadNum.rational(d0) > cap0:
            return []
        if cap1 is not None and QuadNum.rational(v.d - d0) > cap1:
            return []
        return candidates
    lo = None if cap1 is None else QuadNum.rational(v.d) - cap1
    return _lattice_points(lo, cap0, offset, step, limits.max_ch3_lifts)


# ---------------------------------------------------------------------------
# general enumeration


def _b0_for(v: KClass, region: Region) -> Fraction | None:
    """A rational b crossed by every wall that can satisfy the region; None if there are none."""
    if v.r == 0:
        return v.s / v.c
    if region.above_line is not None and not region.above_line.is_vertical:
        try:
            b1, b2 = parabola_roots(region.above_line)
        except NoIntersection:
            b1 = b2 = None
        if b1 is not None and b1 < b2:
            return Fraction(-region.above_line.A, region.above_line.B)
    disc = delta_normalised(v)
    root = QuadNum.make(0, 1, disc)
    if root.is_rational:
        return v.c / v.r + root.a
    raise UnboundedSearch(
        "walls of a rank != 0 class need a region line crossing U, or a square discriminant"
    )


def _s_range(r1: int, c1: Fraction, lo_delta: Fraction, hi_delta: Fraction) -> tuple[Fraction, Fraction]:
    """s with c1^2 - 2 r1 s in [lo_delta, hi_delta]."""
    a = (c1 * c1 - hi_delta) / (2 * r1)
    b = (c1 * c1 - lo_delta) / (2 * r1)
    return (a, b) if a <= b else (b, a)


def _lattice_in(lo: Fraction, hi: Fraction, offset: Fraction, step: Fraction) -> range:
    kmin = math.ceil((lo - offset) / step)
    kmax = math.floor((hi - offset) / step)
    return range(kmin, kmax + 1)


def _enumerate_truncations(v: KClass, b0: Fraction, ranks: list[int], X: ThreefoldModel):
    """Yield ch<=2 triples (r1, c1, s1) for one piece, per the finiteness argument."""
    r, c, s = v.r, v.c, v.s
    disc = delta_normalised(v)
    xv = c - b0 * r
    step = Fraction(1, X.h3)
    for r1 in ranks:
        r2 = r - r1
        if r1 == 0 and r2 == 0:
            continue
        # 0 < c1 - b0 r1 < xv
        cmin = b0 * r1
        for k in _lattice_in(cmin, cmin + xv, Fraction(0), step):
            c1 = k * step
            x1 = c1 - b0 * r1
            if not 0 < x1 < xv:
                continue
            c2 = c - c1
            if r1 != 0:
                lo, hi = _s_range(int(r1), c1, Fraction(0), disc)
                off = ch2_lattice_offset(Fraction(r1), c1, X)
                for j in _lattice_in(lo, hi, off, step):
                    s1 = off + j * step
                    yield (Fraction(r1), c1, s1)
            else:
                lo, hi = _s_range(int(r2), c2, Fraction(0), disc - c1 * c1)
                off = ch2_lattice_offset(Fraction(r2), c2, X)
                if disc - c1 * c1 < 0:
                    continue
                for j in _lattice_in(lo, hi, off, step):
                    s2 = off + j * step
                    yield (Fraction(0), c1, s - s2)


def _split_in_threads(items: list, threads: int, fn) -> list:
    if threads <= 1 or len(items) <= 1:
        return [fn(items)]
    size = math.ceil(len(items) / threads)
    chunks = [items[i : i + size] for i in range(0, len(items), size)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, chunks))


def _order_pair(a: KClass, b: KClass) -> tuple[KClass, KClass]:
    """Canonical order: higher rank first, then lexicographic."""
    if (a.r, a.as_tuple()) >= (b.r, b.as_tuple()):
        return a, b
    return b, a


def _is_js_type(dec: Decomposition) -> bool:
    return dec.v0.r == 0 and dec.v1.r == -1 and delta_normalised(dec.v1) == 0


def _assemble(walls: dict[PlaneLine, set[Decomposition]]) -> list[Wall]:
    out = []
    for line, decs in walls.items():
        if not decs:
            continue
        ordered = tuple(sorted(decs, key=Decomposition.sort_key))
        kind = WallKind.JOYCE_SONG if any(_is_js_type(d) for d in ordered) else WallKind.GENERIC
        out.append(Wall(line, ordered, kind, line.slope))
    out.sort(key=_wall_sort_key)
    return out


def _rank_bound(v: KClass, b0: Fraction, xv: Fraction, X: ThreefoldModel) -> int:
    N = b0.denominator
    L = lcm(12 * X.h3, N * X.h3, 2 * N * N)
    return math.floor(max(xv * xv, delta_normalised(v)) / 2 * L) + abs(int(v.r))


def search_rank_bound(v: KClass, region: Region | None, X: ThreefoldModel) -> int:
    """Largest |ch0| of a piece that wall_candidates examines for v in this region."""
    region = region or Region()
    work = -v if v.r == 0 and v.c < 0 else v
    b0 = _b0_for(work, region)
    return _rank_bound(work, b0, abs(work.c - b0 * work.r), X)


def wall_candidates(
    v: KClass, region: Region | None, X: ThreefoldModel, limits: Limits | None = None
) -> list[Wall]:
    """All numerical candidate walls for v inside the region, with their lifted splittings.

    A splitting qualifies when both pieces have ch1^b in (0, ch1^b(v)) along
    the wall, nonnegative discriminants summing to at most Delta(v), and an
    integral ch3 lift satisfying the BG inequality on the wall.
    """
    limits = limits or Limits()
    region = region or Region()
    if not any(v.truncated()):
        raise ZeroClass("ch<=2 of the class vanishes")
    disc = delta_normalised(v)
    if disc < 0:
        raise NegativeDiscriminant("Delta(v) < 0")
    if v.r == 0 and v.c == 0:
        return []
    if disc == 0:
        # no walls for Delta = 0 classes
        return []
    sign_flip = False
    work = v
    if v.r == 0 and v.c < 0:
        work, sign_flip = -v, True
    b0 = _b0_for(work, region)
    if b0.denominator > limits.max_denominator:
        raise UnboundedSearch(f"b0 = {b0} has denominator above max_denominator")
    xv = work.c - b0 * work.r
    if xv == 0:
        return []
    if xv < 0:
        work, sign_flip = -work, not sign_flip
        xv = -xv
    rank_bound = _rank_bound(work, b0, xv, X)
    if rank_bound > limits.max_abs_rank:
        raise UnboundedSearch(
            f"rank box {rank_bound} exceeds max_abs_rank={limits.max_abs_rank}"
        )
    ranks = list(range(-rank_bound, rank_bound + 1))

    def scan(chunk: list[int]) -> dict[PlaneLine, set[Decomposition]]:
        found: dict[PlaneLine, set[Decomposition]] = {}
        count = 0
        for r1, c1, s1 in _enumerate_truncations(work, b0, chunk, X):
            count += 1
            if count > limits.max_candidates:
                raise UnboundedSearch("candidate count exceeds max_candidates")
            u = KClass(r1, c1, s1, 0)
            rest = work - u
            if delta_normalised(u) < 0 or delta_normalised(rest) < 0:
                continue
            if delta_normalised(u) + delta_normalised(rest) > disc:
                continue
            line = numerical_wall(work, u)
            if line is None or line.is_vertical:
                continue
            if not line.w_at(b0) > b0 * b0 / 2:
                continue
            chord = _chord(line)
            if chord is None or not _in_region(line, chord, region):
                continue
            for d1 in lift_ch3(work, (r1, c1, s1), line, chord, X, limits):
                a = KClass(r1, c1, s1, d1)
                b = work - a
                if sign_flip:
                    a, b = -a, -b
                p0, p1 = _order_pair(a, b)
                found.setdefault(line, set()).add(Decomposition(p0, p1))
        return found

    merged: dict[PlaneLine, set[Decomposition]] = {}
    for part in _split_in_threads(ranks, limits.threads, scan):
        for line, decs in part.items():
            merged.setdefault(line, set()).update(decs)
    return _assemble(merged)


# ---------------------------------------------------------------------------
# Joyce-Song and safe lines


def _wn_parts(w_n: KClass, n: Fraction) -> tuple[Fraction, Fraction, Fraction]:
    """(c, s, d) with ch(w_n) = (0, c, s, d) - ch(O(-n))."""
    return w_n.c - n, w_n.s + n * n / 2, w_n.d - n**3 / 6


def js_wall(w_n: KClass, n: RationalLike, X: ThreefoldModel | None = None) -> Wall:
    """The wall through Pi(w_n) and Pi(O(-n))."""
    n = q(n)
    if w_n.r != -1:
        raise DegenerateClass("w_n must have rank -1")
    c, s, d = _wn_parts(w_n, n)
    if c <= 0:
        raise DegenerateClass("w_n = (0, c, s, d) - [O(-n)] needs c > 0")
    line = line_through(pi(w_n), pi(line_bundle(-n)))
    dec = Decomposition(KClass(0, c, s, d), -line_bundle(-n), n)
    return Wall(line, (dec,), WallKind.JOYCE_SONG, line.slope)


def _check_safe_inputs(v: KClass, cap_c: Fraction) -> Fraction:
    if v.r != -1:
        raise NonMinusOneRank("safe lines are defined for rank -1 classes")
    if cap_c <= 0:
        raise OutOfRange("the cap c must be positive")
    disc = delta_normalised(v)
    if disc < 0:
        raise NegativeDiscriminant("Delta(v) < 0")
    return disc


def safe_slope(v: KClass, cap_c: RationalLike, X: ThreefoldModel | None = None) -> QuadNum:
    """Slope of the safe line through Pi(v).

    Write t = slope - Pi(v).b.  The chord endpoints are Pi(v).b + t -+ sqrt(t^2 - Delta),
    so the balance condition splits into the branch
    t = 3 sqrt(Delta/8) (valid when Delta <= 2 cap^2) and the branch
    t = (cap^2 + Delta) / (2 cap) (valid when Delta >= 2 cap^2).
    """
    cap = q(cap_c)
    disc = _check_safe_inputs(v, cap)
    if disc >= 2 * cap * cap:
        t = QuadNum.rational((cap * cap + disc) / (2 * cap))
    else:
        t = QuadNum.make(0, 3, disc / 8)
    return t - v.c


def _safe_identity_holds(v: KClass, cap: Fraction, slope: QuadNum) -> bool:
    """Check ch1(v) + b1 = min(cap, b2 - b1) for the line through Pi(v) with this slope."""
    m = slope
    pb = -v.c
    radicand = (m - pb) * (m - pb) - delta_normalised(v)
    if radicand.sign() < 0:
        return False
    if not radicand.is_rational:
        # irrational slope: verify the branch equation t = 3 sqrt(t^2 - Delta)
        t = m - pb
        return (t * t * 8 - delta_normalised(v) * 9).sign() == 0 and 2 * cap * cap >= delta_normalised(v)
    root = QuadNum.make(0, 1, radicand.as_fraction())
    b1, b2 = m - root, m + root
    lhs = b1 + v.c
    width = b2 - b1
    rhs = width if width < cap else QuadNum.rational(cap)
    return lhs == rhs


def safe_line(v: KClass, cap_c: RationalLike, X: ThreefoldModel | None = None) -> PlaneLine:
    cap = q(cap_c)
    slope = safe_slope(v, cap, X)
    if not _safe_identity_holds(v, cap, slope):
        raise ArithmeticError("safe line failed its defining identity")
    if not slope.is_rational:
        raise IrrationalLine(f"safe line slope {slope} is irrational")
    return PlaneLine.through_with_slope(pi(v), slope.as_fraction())


def in_safe_area(p: PlanePoint, v: KClass, cap_c: RationalLike, X: ThreefoldModel | None = None) -> bool:
    """Strictly above the safe line and strictly right of Pi(v)."""
    corner = pi(v)
    if not p.b > corner.b:
        return False
    return safe_slope(v, cap_c, X) < (p.w - corner.w) / (p.b - corner.b)


# ---------------------------------------------------------------------------
# closeness


@dataclass(frozen=True)
class CloseWitness:
    n: Fraction
    delta_n: Fraction
    s: Fraction
    d: Fraction
    bounds_report: dict = field(hash=False, compare=True)
    reference: KClass | None = None
    n0: Fraction | None = None

    @property
    def close(self) -> bool:
        return all(self.bounds_report.values())


def close_to(w_n: KClass, v: KClass, n0: RationalLike, X: ThreefoldModel) -> CloseWitness:
    """Evaluate each defining bound of closeness of w_n to v - [O(-n0)]."""
    n0 = q(n0)
    if v.r != 0 or v.c <= 0:
        raise DegenerateClass("reference class must have rank 0 and c > 0")
    if w_n.r != -1:
        raise NonMinusOneRank("w_n must have rank -1")
    c, s0, d0 = v.c, v.s, v.d
    n = w_n.c - c
    s = w_n.s + n * n / 2
    d = w_n.d - n**3 / 6
    dn = n0 - n
    H = X.h3
    lattice = (n * H).denominator == 1
    report = {
        "delta_range": lattice and 0 <= dn <= c / 3,
        "s_bounds": -n0 * dn - abs(s0) <= s <= -Fraction(3, 4) * n0 * dn + (c + abs(s0) * H) * dn + s0,
        "d_bound": d
        >= Fraction(15, 32) * n0 * n0 * dn - n0 * dn * (abs(s0) * H + c) - dn * (s0 * H) ** 2 + d0,
        "above_lf": point_side(bg_line(subtract_line_bundle(v, n0)), pi(w_n)) is not Side.BELOW,
    }
    return CloseWitness(n, dn, s, d, report, v, n0)


# ---------------------------------------------------------------------------
# shifted classes and classification


def shifted_class(
    c: RationalLike,
    c_prime: RationalLike,
    s_prime: RationalLike,
    d_prime: RationalLike,
    n: RationalLike,
    delta_n: RationalLike,
) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """Rewrite (-1, n + c', -n^2/2 + s', n^3/6 + d') as (0, c, s~, d~) - [O(-n')]."""
    c, cp, sp, dp, n, dn = (q(x) for x in (c, c_prime, s_prime, d_prime, n, delta_n))
    if not 0 < cp < c:
        raise OutOfRange("shifted class needs 0 < c' < c")
    k = c - cp
    n_new = n - k
    s_t = sp - k * n + k * k / 2
    d_t = dp + n * n * k / 2 - n * k * k / 2 + k**3 / 6
    return n_new, s_t, d_t, dn + k


class Case(str, Enum):
    JS_WALL_T_FACTOR = "js_wall_T_factor"
    CLOSE_DESCENT = "close_descent"
    SAFE_DESCENT = "safe_descent"
    EXCLUDED = "excluded"


@dataclass(frozen=True)
class Classification:
    case: Case
    data: dict = field(default_factory=dict, hash=False)


def _safe_inequality(v1: KClass, cap: Fraction, line: PlaneLine) -> bool:
    """ch1(v1) + b1 < min(cap, b2 - b1) on the given wall."""
    chord = _chord(line)
    if chord is None:
        return False
    b1, b2 = chord
    lhs = b1 + v1.c
    width = b2 - b1
    return lhs < cap and lhs < width


def classify_destabilizer(
    w_n: KClass,
    params: CloseWitness,
    wall: Wall,
    dec: Decomposition,
    n0: RationalLike,
    X: ThreefoldModel,
) -> Classification:
    n0 = q(n0)
    if dec.v0 + dec.v1 != w_n:
        raise InconsistentDecomposition("pieces do not add up to w_n")
    if dec.v0.r != 0 or dec.v1.r != -1:
        raise InconsistentDecomposition("pieces must have ranks 0 and -1")
    if not wall.line.contains(pi(w_n)) or not wall.line.contains(pi(dec.v1)):
        raise InconsistentDecomposition("wall must pass through Pi(w_n) and Pi(v1)")
    n, dn = params.n, params.delta_n
    c = w_n.c - n
    cp = dec.v1.c - n
    sp = dec.v1.s + n * n / 2
    dp = dec.v1.d - n**3 / 6
    base = {"c_prime": cp, "s_prime": sp, "d_prime": dp}
    if dec.v0.c <= 0 or cp < 0 or cp >= c:
        return Classification(Case.EXCLUDED, {**base, "reason": "c' outside [0, c)"})
    if cp == 0:
        if dn == 0 and sp == 0 and dp == 0:
            return Classification(Case.JS_WALL_T_FACTOR, {**base, "multiplicity": X.tors})
        return Classification(Case.EXCLUDED, {**base, "reason": "c' = 0 off the Joyce-Song configuration"})
    safe = _safe_inequality(dec.v1, c, wall.line)
    if cp < dn + Fraction(2, 3) * c:
        return Classification(
            Case.SAFE_DESCENT, {**base, "reason": "c' < delta_n + 2c/3", "safe_inequality": safe}
        )
    if safe:
        return Classification(Case.SAFE_DESCENT, {**base, "reason": "safe inequality", "safe_inequality": True})
    n_new, s_t, d_t, dn_new = shifted_class(c, cp, sp, dp, n, dn)
    shifted = {"n_prime": n_new, "s_tilde": s_t, "d_tilde": d_t, "delta_n_prime": dn_new}
    if params.reference is not None:
        witness = close_to(dec.v1, params.reference, n0, X)
        if not witness.close:
            return Classification(Case.EXCLUDED, {**base, **shifted, "reason": "neither close nor safe"})
    return Classification(Case.CLOSE_DESCENT, {**base, **shifted})


# ---------------------------------------------------------------------------
# walls for v_{n0} above l_f


def _rank0_sheaf_ch3_cap(c0: Fraction, s0: Fraction) -> Fraction:
    """ch3 bound for tilt-semistable rank 0 sheaves: s^2/(2c) + c^3/24."""
    return s0 * s0 / (2 * c0) + c0**3 / 24


def vn0_walls(v: KClass, n0: RationalLike, X: ThreefoldModel, limits: Limits | None = None) -> list[Wall]:
    """Candidate walls for v_{n0} = v - [O(-n0)] on or above l_f, right of Pi(v_{n0}).

    Uses the structure of destabilising pieces for large n0: a rank 0
    sheaf with cmin <= ch1 <= 4c/3 and a rank -1 piece.  The rank 0 sheaf
    obeys its ch3 bound; both pieces obey BG along the wall.
    """
    limits = limits or Limits()
    n0 = q(n0)
    if v.r != 0 or v.c <= 0:
        raise DegenerateClass("v must have rank 0 and c > 0")
    c = v.c
    vn = subtract_line_bundle(v, n0)
    lf = bg_line(vn)
    lf_chord = _chord(lf)
    if lf_chord is None:
        raise NoIntersection("l_f misses U")
    corner = pi(vn)
    region = Region(above_line=lf, right_of=corner.b)
    disc = delta_normalised(vn)
    step = Fraction(1, X.h3)
    c0_values = [k * step for k in _lattice_in(X.cmin, Fraction(4, 3) * c, Fraction(0), step)]

    def scan(chunk: list[Fraction]) -> dict[PlaneLine, set[Decomposition]]:
        found: dict[PlaneLine, set[Decomposition]] = {}
        for c0 in chunk:
            c1 = vn.c - c0
            # Delta(v1) >= 0 and Delta(v0) + Delta(v1) <= Delta(vn); slope at least that of l_f
            s_hi = vn.s + c1 * c1 / 2
            s_lo = max((c0 * c0 + c1 * c1 - disc) / 2 + vn.s, c0 * lf.slope)
            s_lo = min(s_lo, s_hi + 1)
            off = ch2_lattice_offset(Fraction(0), c0, X)
            rng = _lattice_in(s_lo, s_hi, off, step)
            if len(rng) > limits.max_candidates:
                raise UnboundedSearch("ch2 range exceeds max_candidates")
            for j in rng:
                s0p = off + j * step
                u = KClass(0, c0, s0p, 0)
                rest = vn - u
                if delta_normalised(rest) < 0 or c0 * c0 + delta_normalised(rest) > disc:
                    continue
                line = PlaneLine.through_with_slope(corner, s0p / c0)
                chord = _chord(line)
                if chord is None or not chord[0] > corner.b:
                    continue
                if not _in_region(line, chord, region):
                    continue
                if not chord[0] + rest.c >= 0:
                    continue
                cap = _rank0_sheaf_ch3_cap(c0, s0p)
                for d0 in lift_ch3(vn, (Fraction(0), c0, s0p), line, chord, X, limits, extra_cap0=cap):
                    a = KClass(0, c0, s0p, d0)
                    found.setdefault(line, set()).add(Decomposition(a, vn - a, n0))
        return found

    merged: dict[PlaneLine, set[Decomposition]] = {}
    for part in _split_in_threads(c0_values, limits.threads, scan):
        for line, decs in part.items():
            merged.setdefault(line, set()).update(decs)
    return _assemble(merged)


# ---------------------------------------------------------------------------
# admissibility of n0


def _admissibility_report(v: KClass, n0: Fraction, X: ThreefoldModel) -> dict[str, bool]:
    c, s0, d0 = v.c, v.s, v.d
    H = X.h3
    report: dict[str, bool] = {}
    report["integer_n0"] = n0.denominator == 1 and n0 >= 1
    report["dominance"] = n0 >= dominance_threshold(v, X)
    vn = subtract_line_bundle(v, n0)
    if delta_normalised(vn) <= 0:
        report["lf_defined"] = False
        return report
    report["lf_defined"] = True
    lf = bg_line(vn)
    report["lf_slope"] = lf.slope > -n0 / 4 - abs(s0) * H
    try:
        b1, b2 = parabola_roots(lf)
    except NoIntersection:
        report["lf_meets_U"] = False
        return report
    report["lf_meets_U"] = b1 < b2
    width = b2 - b1
    report["left_root"] = b1 < -n0 + c / 3 + Fraction(1, 3 * H)
    report["rank_split"] = QuadNum.rational(n0 + c) < b2 - b1 * 2
    report["rank0_pieces"] = width > Fraction(4, 3) * c
    report["separation"] = width >= Fraction(3, 2) * n0 - separation_slack(v)
    return report


def dominance_threshold(v: KClass, X: ThreefoldModel) -> Fraction:
    """n0 beyond which the cubic terms dominate the discarded quadratic ones (a conservative choice)."""
    H = X.h3
    c, s0, d0 = v.c, v.s, v.d
    return 8 * H * (1 + c + c**3 + abs(s0) * H + abs(d0) * H)


def separation_slack(v: KClass) -> Fraction:
    """K in the requirement b2^f - b1^f >= 3 n0 / 2 - K."""
    return Fraction(5, 12) * v.c + Fraction(3, 2) * abs(v.s) / v.c + 1


def n0_admissible(v: KClass, n0: RationalLike, X: ThreefoldModel) -> bool:
    """Conservative sufficient checklist; False is not a proof of inadmissibility."""
    if v.r != 0 or v.c <= 0:
        raise DegenerateClass("v must have rank 0 and c > 0")
    n0 = q(n0)
    return all(_admissibility_report(v, n0, X).values())


def admissibility_report(v: KClass, n0: RationalLike, X: ThreefoldModel) -> dict[str, bool]:
    if v.r != 0 or v.c <= 0:
        raise DegenerateClass("v must have rank 0 and c > 0")
    return _admissibility_report(v, q(n0), X)


def minimal_admissible_n0(v: KClass, X: ThreefoldModel, limits: Limits | None = None) -> Fraction:
    """Smallest integer n0 accepted by the checklist, by doubling then bisection."""
    limits = limits or Limits()
    hi = 1
    while not n0_admissible(v, hi, X):
        hi *= 2
        if hi > limits.max_n0:
            raise UnboundedSearch("no admissible n0 below max_n0")
    lo = hi // 2
    if lo < 1:
        return Fraction(hi)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if n0_admissible(v, mid, X):
            hi = mid
        else:
            lo = mid
    return Fraction(hi)


def rank0_no_walls_above(
    v0: KClass, lf: PlaneLine, X: ThreefoldModel, limits: Limits | None = None
) -> bool:
    if v0.r != 0:
        raise DegenerateClass("expected a rank 0 class")
    return not wall_candidates(v0, Region(above_line=lf), X, limits)


def lf_line(v: KClass, n0: RationalLike) -> PlaneLine:
    """l_f for v - [O(-n0)]."""
    return bg_line(subtract_line_bundle(v, n0))


__all__ = [
    "Limits",
    "Region",
    "WallKind",
    "Decomposition",
    "Wall",
    "CloseWitness",
    "Case",
    "Classification",
    "numerical_wall",
    "lift_ch3",
    "wall_candidates",
    "search_rank_bound",
    "js_wall",
    "safe_slope",
    "safe_line",
    "in_safe_area",
    "close_to",
    "shifted_class",
    "classify_destabilizer",
    "vn0_walls",
    "n0_admissible",
    "admissibility_report",
    "minimal_admissible_n0",
    "dominance_threshold",
    "separation_slack",
    "rank0_no_walls_above",
    "lf_line",
    "IrrationalLine",
]
