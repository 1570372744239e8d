"""Planar geometry kernel: circles, graphs of quadratics, eps-robust predicates.

Every predicate takes an explicit `Tolerance`. The rest of the package
expects families in general position at that tolerance: boundary crossings
stay clear of tangency by more than eps, no pairwise intersection point
lies within eps of a third boundary, and (for curve families) no two
intersection points on a common curve share an x-coordinate within eps.
`validate_general_position` checks exactly that and reports violations as
data rather than exceptions.

All operations are pure functions of their inputs.
"""

from __future__ import annotations

import enum
import math
from collections import defaultdict
from dataclasses import dataclass

import numpy as np

from .errors import CoincidentError, TangencyError

_CHUNK = 8192  # row block size for point-by-member matrices


def _require_finite(obj: str, **values: float) -> None:
    for name, value in values.items():
        if not math.isfinite(value):
            raise ValueError(f"{obj}.{name} must be finite, got {value!r}")


@dataclass(frozen=True)
class Point:
    x: float
    y: float

    def __post_init__(self) -> None:
        _require_finite("Point", x=self.x, y=self.y)


@dataclass(frozen=True)
class Circle:
    """Closed disc given by its boundary circle."""

    id: int
    cx: float
    cy: float
    r: float

    def __post_init__(self) -> None:
        _require_finite("Circle", cx=self.cx, cy=self.cy, r=self.r)
        if self.r <= 0:
            raise ValueError(f"Circle radius must be positive, got {self.r}")


@dataclass(frozen=True)
class QuadCurve:
    """Graph of y = a*x^2 + b*x + c; a == 0 gives a line."""

    id: int
    a: float
    b: float
    c: float

    def __post_init__(self) -> None:
        _require_finite("QuadCurve", a=self.a, b=self.b, c=self.c)

    def y_at(self, x: float) -> float:
        return (self.a * x + self.b) * x + self.c


@dataclass(frozen=True)
class Tolerance:
    """Separation threshold, in plane units, for general-position tests."""

    eps: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.eps) and self.eps > 0):
            raise ValueError(f"Tolerance.eps must be a positive finite value, got {self.eps!r}")


class Location(enum.Enum):
    INSIDE = "inside"
    BOUNDARY = "boundary"
    OUTSIDE = "outside"


class Side(enum.Enum):
    ABOVE = "above"
    ON = "on"
    BELOW = "below"


def circle_circle_intersections(c1: Circle, c2: Circle, tol: Tolerance) -> list[Point]:
    """Crossing points of two boundary circles: exactly 0 or 2, sorted by (x, y).

    Raises CoincidentError for identical circles and TangencyError when the
    center distance is within eps of either tangency configuration; touching
    is excluded by the general-position contract, not silently truncated.
    """
    eps = tol.eps
    d = math.hypot(c2.cx - c1.cx, c2.cy - c1.cy)
    rsum = c1.r + c2.r
    rdif = abs(c1.r - c2.r)
    if d <= eps and rdif <= eps:
        raise CoincidentError(f"circles {c1.id} and {c2.id} coincide within eps={eps:g}")
    if abs(d - rsum) <= eps or abs(d - rdif) <= eps:
        raise TangencyError(
            f"circles {c1.id} and {c2.id} are tangent within eps={eps:g} (d={d:.12g})")
    if d > rsum or d < rdif:
        return []
    a = (c1.r * c1.r - c2.r * c2.r + d * d) / (2.0 * d)
    h = math.sqrt(max(c1.r * c1.r - a * a, 0.0))
    ux, uy = (c2.cx - c1.cx) / d, (c2.cy - c1.cy) / d
    bx, by = c1.cx + a * ux, c1.cy + a * uy
    pts = [Point(bx - h * uy, by + h * ux), Point(bx + h * uy, by - h * ux)]
    pts.sort(key=lambda p: (p.x, p.y))
    return pts


def curve_curve_intersections(q1: QuadCurve, q2: QuadCurve, tol: Tolerance) -> list[Point]:
    """Intersection points of two quadratic graphs: 0, 1 or 2, sorted by x.

    The points are the real roots of the difference polynomial q1 - q2.
    A single simple root is a transversal crossing and yields one point.
    """
    eps = tol.eps
    da, db, dc = q1.a - q2.a, q1.b - q2.b, q1.c - q2.c
    if max(abs(da), abs(db), abs(dc)) <= eps:
        raise CoincidentError(f"curves {q1.id} and {q2.id} coincide within eps={eps:g}")
    if abs(da) <= eps:
        # difference is (numerically) linear
        if abs(db) <= eps:
            return []  # parallel offset, never meet
        x = -dc / db
        return [Point(x, q1.y_at(x))]
    disc = db * db - 4.0 * da * dc
    # root separation of the quadratic is sqrt(|disc|)/|da|
    if math.sqrt(abs(disc)) / abs(da) <= eps:
        raise TangencyError(
            f"curves {q1.id} and {q2.id} are tangent within eps={eps:g} (disc={disc:.6g})")
    if disc < 0:
        return []
    sq = math.sqrt(disc)
    q = -0.5 * (db + math.copysign(sq, db))
    xs = sorted((q / da, dc / q))
    return [Point(x, q1.y_at(x)) for x in xs]


def contains_point(c: Circle, p: Point, tol: Tolerance) -> Location:
    """Classify p against the closed disc c with an eps boundary band."""
    d = math.hypot(p.x - c.cx, p.y - c.cy)
    if abs(d - c.r) <= tol.eps:
        return Location.BOUNDARY
    return Location.INSIDE if d < c.r else Location.OUTSIDE


def above_status(q: QuadCurve, p: Point, tol: Tolerance) -> Side:
    """Whether p lies above, on, or below the curve q at abscissa p.x."""
    dy = p.y - q.y_at(p.x)
    if abs(dy) <= tol.eps:
        return Side.ON
    return Side.ABOVE if dy > 0 else Side.BELOW


@dataclass(frozen=True)
class Violation:
    """One general-position defect; `members` holds the offending ids."""

    kind: str  # "coincident" | "tangency" | "triple-point" | "x-collision"
    members: tuple[int, ...]
    point: Point | None
    detail: str


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def summary(self, limit: int = 5) -> str:
        if self.ok:
            return "general position: ok"
        head = "; ".join(
            f"{v.kind} {v.members}" for v in self.violations[:limit])
        extra = len(self.violations) - limit
        return f"{len(self.violations)} violation(s): {head}" + (
            f" (+{extra} more)" if extra > 0 else "")


def circle_arrays(circles) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    cx = np.array([c.cx for c in circles], dtype=float)
    cy = np.array([c.cy for c in circles], dtype=float)
    r = np.array([c.r for c in circles], dtype=float)
    return cx, cy, r


def curve_arrays(curves) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    a = np.array([q.a for q in curves], dtype=float)
    b = np.array([q.b for q in curves], dtype=float)
    c = np.array([q.c for q in curves], dtype=float)
    return a, b, c


def disc_crossing_points(cx, cy, r, i, j):
    """Vectorized boundary points for strictly crossing circle pairs (i, j).

    Returns (px, py, pa, pb) with two rows per input pair; pa < pb are the
    pair indices repeated for both points.
    """
    d = np.hypot(cx[j] - cx[i], cy[j] - cy[i])
    a = (r[i] ** 2 - r[j] ** 2 + d * d) / (2.0 * d)
    h = np.sqrt(np.maximum(r[i] ** 2 - a * a, 0.0))
    ux, uy = (cx[j] - cx[i]) / d, (cy[j] - cy[i]) / d
    bx, by = cx[i] + a * ux, cy[i] + a * uy
    px = np.concatenate([bx - h * uy, bx + h * uy])
    py = np.concatenate([by + h * ux, by - h * ux])
    pa = np.concatenate([i, i])
    pb = np.concatenate([j, j])
    return px, py, pa, pb


def validate_general_position(members, tol: Tolerance) -> ValidationReport:
    """Check a homogeneous member list for general-position defects.

    Reported violations: (a) pairwise tangency or coincidence, (b) a pairwise
    intersection point within eps of a third member's boundary, and (c) for
    curve families, two intersection points on a common curve whose
    x-coordinates are closer than eps. An empty violation list means the
    family is accepted.
    """
    if not members:
        raise ValueError("validate_general_position needs at least one member")
    if isinstance(members[0], Circle):
        violations = _validate_discs(members, tol)
    elif isinstance(members[0], QuadCurve):
        violations = _validate_curves(members, tol)
    else:
        raise TypeError(f"unsupported member type {type(members[0]).__name__}")
    return ValidationReport(tuple(violations))


def _validate_discs(circles, tol: Tolerance) -> list[Violation]:
    eps = tol.eps
    out: list[Violation] = []
    n = len(circles)
    if n < 2:
        return out
    cx, cy, r = circle_arrays(circles)
    ids = [c.id for c in circles]
    iu, ju = np.triu_indices(n, 1)
    d = np.hypot(cx[iu] - cx[ju], cy[iu] - cy[ju])
    rsum = r[iu] + r[ju]
    rdif = np.abs(r[iu] - r[ju])
    coincident = (d <= eps) & (rdif <= eps)
    tangent = ~coincident & (
        (np.abs(d - rsum) <= eps) | (np.abs(d - rdif) <= eps))
    for idx in np.nonzero(coincident)[0]:
        a, b = ids[iu[idx]], ids[ju[idx]]
        out.append(Violation("coincident", (a, b), None, "identical circles"))
    for idx in np.nonzero(tangent)[0]:
        a, b = ids[iu[idx]], ids[ju[idx]]
        out.append(Violation("tangency", (a, b), None, f"center distance {d[idx]:.12g}"))
    crossing = ~coincident & ~tangent & (d > rdif) & (d < rsum)
    if not crossing.any():
        return out
    px, py, pa, pb = disc_crossing_points(cx, cy, r, iu[crossing], ju[crossing])
    for s in range(0, len(px), _CHUNK):
        sl = slice(s, min(s + _CHUNK, len(px)))
        dist = np.hypot(px[sl, None] - cx[None, :], py[sl, None] - cy[None, :])
        near = np.abs(dist - r[None, :]) <= eps
        rows = np.arange(near.shape[0])
        near[rows, pa[sl]] = False
        near[rows, pb[sl]] = False
        for row, k in zip(*np.nonzero(near)):
            g = s + row
            out.append(Violation(
                "triple-point",
                (ids[pa[g]], ids[pb[g]], ids[k]),
                Point(px[g], py[g]),
                f"pair intersection within eps of circle {ids[k]}"))
    return out


def _validate_curves(curves, tol: Tolerance) -> list[Violation]:
    eps = tol.eps
    out: list[Violation] = []
    n = len(curves)
    if n < 2:
        return out
    xs: list[float] = []
    ys: list[float] = []
    pa: list[int] = []
    pb: list[int] = []
    ids = [q.id for q in curves]
    for i in range(n):
        for j in range(i + 1, n):
            try:
                pts = curve_curve_intersections(curves[i], curves[j], tol)
            except CoincidentError:
                out.append(Violation("coincident", (ids[i], ids[j]), None, "identical curves"))
                continue
            except TangencyError:
                out.append(Violation("tangency", (ids[i], ids[j]), None, "near-double root"))
                continue
            for p in pts:
                xs.append(p.x)
                ys.append(p.y)
                pa.append(i)
                pb.append(j)
    if not xs:
        return out
    X = np.array(xs)
    Y = np.array(ys)
    A = np.array(pa)
    B = np.array(pb)
    a, b, c = curve_arrays(curves)
    for s in range(0, len(X), _CHUNK):
        sl = slice(s, min(s + _CHUNK, len(X)))
        vals = (a[None, :] * X[sl, None] + b[None, :]) * X[sl, None] + c[None, :]
        near = np.abs(Y[sl, None] - vals) <= eps
        rows = np.arange(near.shape[0])
        near[rows, A[sl]] = False
        near[rows, B[sl]] = False
        for row, k in zip(*np.nonzero(near)):
            g = s + row
            out.append(Violation(
                "triple-point",
                (ids[A[g]], ids[B[g]], ids[k]),
                Point(X[g], Y[g]),
                f"pair intersection within eps of curve {ids[k]}"))
    # x-coordinate collisions among the points on each single curve
    per_curve: dict[int, list[float]] = defaultdict(list)
    for x, i, j in zip(xs, pa, pb):
        per_curve[i].append(x)
        per_curve[j].append(x)
    for idx in sorted(per_curve):
        vals = sorted(per_curve[idx])
        for x0, x1 in zip(vals, vals[1:]):
            if x1 - x0 < eps:
                out.append(Violation(
                    "x-collision", (ids[idx],), None,
                    f"two intersection points at x={x0:.12g} and x={x1:.12g}"))
    return out
