"""Arrangement vertices: intersection points, depths, and the depth profile.

For disc families, the depth of a boundary-boundary intersection point is
the number of members whose closed set contains it; the two definers
always count, so depth >= 2, and depth == 2 exactly when the point lies on
the boundary of the union (transversal crossings leave one quadrant
uncovered). g(k) counts the points of depth at most k, so g(2) is the
union complexity. For curve families the per-point statistic is instead
the number of non-definer curves the point lies strictly above.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import CoincidentError, KindError, TangencyError
from .families import Family, FamilyKind
from .geom_core import (
    Circle,
    Location,
    Point,
    circle_arrays,
    contains_point,
    curve_arrays,
    curve_curve_intersections,
    disc_crossing_points,
)

_CHUNK = 8192
GRID_THRESHOLD = 500  # definitional scan is the default below this size

E = math.e
G_RATIO_SOFT = 3.0 * E   # g(k) <= 3e*k*n, reported as the primary bound
G_RATIO_HARD = 6.0 * E   # values beyond this indicate a bug, not slack
UNION_C = 6.0            # hereditary union-complexity constant for discs


@dataclass(frozen=True)
class IntersectionPoint:
    """A boundary-boundary crossing with its two definers.

    Exactly one of `depth` (disc families) and `above_count` (curve
    families) is set.
    """

    p: Point
    definers: tuple[int, int]
    depth: int | None = None
    above_count: int | None = None


def _disc_pair_geometry(f: Family):
    cx, cy, r = circle_arrays(f.members)
    n = f.n
    iu, ju = np.triu_indices(n, 1)
    d = np.hypot(cx[iu] - cx[ju], cy[iu] - cy[ju])
    rsum = r[iu] + r[ju]
    rdif = np.abs(r[iu] - r[ju])
    eps = f.tol.eps
    coincident = (d <= eps) & (rdif <= eps)
    if coincident.any():
        a, b = iu[coincident.argmax()], ju[coincident.argmax()]
        raise CoincidentError(f"circles {a} and {b} coincide; family not validated?")
    tangent = (np.abs(d - rsum) <= eps) | (np.abs(d - rdif) <= eps)
    if tangent.any():
        a, b = iu[tangent.argmax()], ju[tangent.argmax()]
        raise TangencyError(f"circles {a} and {b} tangent; family not validated?")
    return cx, cy, r, iu, ju, d, rsum, rdif


def _depths_scan(px, py, cx, cy, r, eps):
    """Definitional depth: test every member against every point."""
    m = len(px)
    depths = np.full(m, 2, dtype=np.int64)
    inner = r - eps
    for s in range(0, m, _CHUNK):
        sl = slice(s, min(s + _CHUNK, m))
        dist = np.hypot(px[sl, None] - cx[None, :], py[sl, None] - cy[None, :])
        depths[sl] += (dist < inner[None, :]).sum(axis=1)
    return depths


def _depths_grid(px, py, cx, cy, r, eps):
    """Grid-bucketed depth: identical counts, fewer candidate tests.

    Discs are bucketed into every cell their bounding box overlaps, with the
    cell size set to the largest disc diameter, so the bucket of a point's
    cell is a superset of the discs containing it.
    """
    m = len(px)
    depths = np.full(m, 2, dtype=np.int64)
    if m == 0:
        return depths
    cell = 2.0 * float(r.max())
    ox = float((cx - r).min())
    oy = float((cy - r).min())
    buckets: dict[tuple[int, int], list[int]] = {}
    for k in range(len(cx)):
        x0 = int((cx[k] - r[k] - ox) // cell)
        x1 = int((cx[k] + r[k] - ox) // cell)
        y0 = int((cy[k] - r[k] - oy) // cell)
        y1 = int((cy[k] + r[k] - oy) // cell)
        for gx in range(x0, x1 + 1):
            for gy in range(y0, y1 + 1):
                buckets.setdefault((gx, gy), []).append(k)
    pgx = ((px - ox) // cell).astype(np.int64)
    pgy = ((py - oy) // cell).astype(np.int64)
    inner = r - eps
    # group points by cell so each candidate set is tested vectorized
    order = np.lexsort((pgy, pgx))
    sorted_cells = np.stack([pgx[order], pgy[order]], axis=1)
    boundaries = np.nonzero(np.any(np.diff(sorted_cells, axis=0) != 0, axis=1))[0] + 1
    for group in np.split(order, boundaries):
        key = (int(pgx[group[0]]), int(pgy[group[0]]))
        cand = buckets.get(key)
        if not cand:
            continue
        cand = np.asarray(cand)
        dist = np.hypot(px[group, None] - cx[cand][None, :],
                        py[group, None] - cy[cand][None, :])
        depths[group] += (dist < inner[cand][None, :]).sum(axis=1)
    return depths


def intersection_points(f: Family, method: str = "auto") -> list[IntersectionPoint]:
    """All pairwise boundary intersections, annotated and sorted by (x, y).

    `method` selects the depth computation for disc families: "scan"
    (definitional), "grid" (bucketed fast path), or "auto" (scan below
    500 members).
    """
    if method not in ("auto", "scan", "grid"):
        raise ValueError(f"unknown method {method!r}")
    if f.kind is FamilyKind.DISCS:
        return _disc_points(f, method)
    return _curve_points(f)


def _disc_points(f: Family, method: str) -> list[IntersectionPoint]:
    if f.n < 2:
        return []
    cx, cy, r, iu, ju, d, rsum, rdif = _disc_pair_geometry(f)
    crossing = (d > rdif) & (d < rsum)
    if not crossing.any():
        return []
    px, py, pa, pb = disc_crossing_points(cx, cy, r, iu[crossing], ju[crossing])
    use_grid = method == "grid" or (method == "auto" and f.n >= GRID_THRESHOLD)
    depth_fn = _depths_grid if use_grid else _depths_scan
    depths = depth_fn(px, py, cx, cy, r, f.tol.eps)
    pts = [
        IntersectionPoint(Point(float(px[i]), float(py[i])),
                          (int(pa[i]), int(pb[i])),
                          depth=int(depths[i]))
        for i in range(len(px))
    ]
    pts.sort(key=lambda q: (q.p.x, q.p.y, q.definers))
    return pts


def _curve_points(f: Family) -> list[IntersectionPoint]:
    if f.n < 2:
        return []
    xs: list[float] = []
    ys: list[float] = []
    pa: list[int] = []
    pb: list[int] = []
    for i in range(f.n):
        for j in range(i + 1, f.n):
            for p in curve_curve_intersections(f.members[i], f.members[j], f.tol):
                xs.append(p.x)
                ys.append(p.y)
                pa.append(i)
                pb.append(j)
    if not xs:
        return []
    X = np.array(xs)
    Y = np.array(ys)
    a, b, c = curve_arrays(f.members)
    eps = f.tol.eps
    counts = np.zeros(len(X), dtype=np.int64)
    for s in range(0, len(X), _CHUNK):
        sl = slice(s, min(s + _CHUNK, len(X)))
        vals = (a[None, :] * X[sl, None] + b[None, :]) * X[sl, None] + c[None, :]
        counts[sl] = (Y[sl, None] - vals > eps).sum(axis=1)
    pts = [
        IntersectionPoint(Point(xs[i], ys[i]), (pa[i], pb[i]),
                          above_count=int(counts[i]))
        for i in range(len(xs))
    ]
    pts.sort(key=lambda q: (q.p.x, q.p.y, q.definers))
    return pts


def union_complexity(f: Family, points: list[IntersectionPoint] | None = None) -> int:
    """Number of intersection points on the boundary of the union (depth 2)."""
    if f.kind is not FamilyKind.DISCS:
        raise KindError("union_complexity is defined for disc families")
    if points is None:
        points = intersection_points(f)
    return sum(1 for q in points if q.depth == 2)


@dataclass(frozen=True)
class DepthProfile:
    """g(k) for k = 2..max_depth, plus the point count |Z|."""

    g: dict[int, int]
    z_count: int
    max_depth: int


def depth_profile(f: Family, points: list[IntersectionPoint] | None = None) -> DepthProfile:
    if f.kind is not FamilyKind.DISCS:
        raise KindError("depth_profile is defined for disc families")
    if points is None:
        points = intersection_points(f)
    if not points:
        return DepthProfile({2: 0}, 0, 2)
    depths = np.array([q.depth for q in points])
    max_depth = int(depths.max())
    g = {k: int((depths <= k).sum()) for k in range(2, max_depth + 1)}
    return DepthProfile(g, len(points), max_depth)


@dataclass(frozen=True)
class DepthBoundRow:
    k: int
    g: int
    ratio: float          # g / (k*n)
    ok: bool              # g <= 3e*k*n
    flagged: bool         # 3e*k*n < g <= 6e*k*n: soft zone, not a failure
    hard_fail: bool       # g > 6e*k*n


@dataclass(frozen=True)
class DepthBoundReport:
    """Per-k ratio checks plus the 6n-12 union-complexity bound."""

    n: int
    z_count: int
    max_depth: int
    rows: tuple[DepthBoundRow, ...]
    union_complexity: int
    union_bound: int | None        # None when n < 3 (bound vacuous)
    union_ok: bool | None
    omega: int | None = None
    depth_le_omega: bool | None = None

    @property
    def flags(self) -> int:
        return sum(1 for row in self.rows if row.flagged)

    @property
    def max_ratio(self) -> float:
        return max((row.ratio for row in self.rows), default=0.0)

    @property
    def passed(self) -> bool:
        if any(row.hard_fail for row in self.rows):
            return False
        if self.union_ok is False:
            return False
        if self.depth_le_omega is False:
            return False
        return True

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "z_count": self.z_count,
            "max_depth": self.max_depth,
            "rows": [
                {"k": r.k, "g": r.g, "ratio": r.ratio, "pass": r.ok,
                 "flag": r.flagged, "hard_fail": r.hard_fail}
                for r in self.rows
            ],
            "union_complexity": self.union_complexity,
            "union_bound": self.union_bound,
            "union_pass": self.union_ok,
            "union_note": None if self.union_bound is not None else "n < 3: bound vacuous",
            "omega": self.omega,
            "max_depth_le_omega": self.depth_le_omega,
            "flags": self.flags,
            "max_ratio": self.max_ratio,
            "pass": self.passed,
        }


def check_depth_bounds(f: Family,
                       points: list[IntersectionPoint] | None = None,
                       omega: int | None = None) -> DepthBoundReport:
    """Check g(k) against 3e*k*n (soft up to 6e*k*n) and g(2) against 6n-12."""
    if f.kind is not FamilyKind.DISCS:
        raise KindError("check_depth_bounds is defined for disc families")
    if points is None:
        points = intersection_points(f)
    profile = depth_profile(f, points)
    n = f.n
    rows = []
    for k in range(2, profile.max_depth + 1):
        g = profile.g[k]
        soft = G_RATIO_SOFT * k * n
        hard = G_RATIO_HARD * k * n
        rows.append(DepthBoundRow(
            k=k, g=g, ratio=g / (k * n),
            ok=g <= soft,
            flagged=soft < g <= hard,
            hard_fail=g > hard))
    uc = union_complexity(f, points)
    if n >= 3:
        union_bound: int | None = 6 * n - 12
        union_ok: bool | None = uc <= union_bound
    else:
        union_bound = None
        union_ok = None
    depth_le_omega = None if omega is None else profile.max_depth <= max(omega, 2)
    return DepthBoundReport(
        n=n, z_count=profile.z_count, max_depth=profile.max_depth,
        rows=tuple(rows), union_complexity=uc,
        union_bound=union_bound, union_ok=union_ok,
        omega=omega, depth_le_omega=depth_le_omega)


@dataclass(frozen=True)
class CommonPointRow:
    k: int
    g: int
    bound: int
    ok: bool


@dataclass(frozen=True)
class CommonPointReport:
    """g(k) <= 2(k-1)n check for a family sharing the interior point `point`."""

    point: Point
    all_members_contain: bool
    rows: tuple[CommonPointRow, ...]

    @property
    def passed(self) -> bool:
        return self.all_members_contain and all(r.ok for r in self.rows)

    def to_dict(self) -> dict:
        return {
            "point": [self.point.x, self.point.y],
            "all_members_contain": self.all_members_contain,
            "rows": [{"k": r.k, "g": r.g, "bound": r.bound, "pass": r.ok}
                     for r in self.rows],
            "pass": self.passed,
        }


def check_common_point_bound(f: Family, o: Point,
                             points: list[IntersectionPoint] | None = None
                             ) -> CommonPointReport:
    """Verify g(k) <= 2(k-1)n for every k, given a shared interior point o.

    Checking k up to max_depth suffices: beyond it g is constant while the
    bound keeps growing.
    """
    if f.kind is not FamilyKind.DISCS:
        raise KindError("check_common_point_bound is defined for disc families")
    all_inside = all(
        contains_point(m, o, f.tol) is Location.INSIDE for m in f.members)
    profile = depth_profile(f, points if points is not None
                            else intersection_points(f))
    rows = tuple(
        CommonPointRow(k=k, g=profile.g[k], bound=2 * (k - 1) * f.n,
                       ok=profile.g[k] <= 2 * (k - 1) * f.n)
        for k in range(2, profile.max_depth + 1))
    return CommonPointReport(point=o, all_members_contain=all_inside, rows=rows)


def find_common_point(f: Family, iterations: int = 5000) -> Point | None:
    """Best-effort search for a point strictly inside every disc.

    Projects onto the most-violated margin-shrunk disc until all are
    satisfied; returns None if the cap is hit (which does not prove that no
    common point exists).
    """
    if f.kind is not FamilyKind.DISCS:
        raise KindError("find_common_point is defined for disc families")
    cx, cy, r = circle_arrays(f.members)
    shrunk = r - 2.0 * f.tol.eps
    if (shrunk <= 0).any():
        return None
    x = float(cx.mean())
    y = float(cy.mean())
    for _ in range(iterations):
        d = np.hypot(x - cx, y - cy)
        excess = d - shrunk
        worst = int(excess.argmax())
        if excess[worst] <= 0:
            return Point(x, y)
        # pull onto the boundary of the worst shrunk disc
        scale = shrunk[worst] / d[worst]
        x = cx[worst] + (x - cx[worst]) * scale
        y = cy[worst] + (y - cy[worst]) * scale
    return None


@dataclass
class PointIncidence:
    """Flattened containment structure of the intersection points.

    Row i corresponds to points[i] from `intersection_points`. The
    containers arrays list, per point, the members other than the definers
    whose open disc contains it.
    """

    n: int
    defs_a: np.ndarray
    defs_b: np.ndarray
    depths: np.ndarray
    containers_flat: np.ndarray
    containers_ptidx: np.ndarray

    @property
    def z_count(self) -> int:
        return len(self.defs_a)

    def containers_per_point(self) -> list[np.ndarray]:
        split = np.searchsorted(self.containers_ptidx,
                                np.arange(1, self.z_count))
        return np.split(self.containers_flat, split)


def point_incidence(f: Family,
                    points: list[IntersectionPoint] | None = None) -> PointIncidence:
    if f.kind is not FamilyKind.DISCS:
        raise KindError("point_incidence is defined for disc families")
    if points is None:
        points = intersection_points(f)
    m = len(points)
    defs_a = np.array([q.definers[0] for q in points], dtype=np.int64)
    defs_b = np.array([q.definers[1] for q in points], dtype=np.int64)
    depths = np.array([q.depth for q in points], dtype=np.int64)
    px = np.array([q.p.x for q in points])
    py = np.array([q.p.y for q in points])
    cx, cy, r = circle_arrays(f.members)
    inner = r - f.tol.eps
    flat: list[np.ndarray] = []
    ptidx: list[np.ndarray] = []
    for s in range(0, m, _CHUNK):
        sl = slice(s, min(s + _CHUNK, m))
        dist = np.hypot(px[sl, None] - cx[None, :], py[sl, None] - cy[None, :])
        rows, cols = np.nonzero(dist < inner[None, :])
        flat.append(cols.astype(np.int64))
        ptidx.append(rows.astype(np.int64) + s)
    containers_flat = np.concatenate(flat) if flat else np.empty(0, np.int64)
    containers_ptidx = np.concatenate(ptidx) if ptidx else np.empty(0, np.int64)
    inc = PointIncidence(f.n, defs_a, defs_b, depths,
                         containers_flat, containers_ptidx)
    # the flattened structure must agree with the stored depths
    counts = np.bincount(containers_ptidx, minlength=m)
    if m and not np.array_equal(counts + 2, depths):
        raise AssertionError("containment structure disagrees with depths")
    return inc


def masked_union_complexity(inc: PointIncidence, picked: np.ndarray) -> int:
    """Union complexity of the subfamily selected by the boolean mask.

    A point survives on the subfamily's union boundary iff both definers
    are picked and none of its other containers is.
    """
    both = picked[inc.defs_a] & picked[inc.defs_b]
    if len(inc.containers_flat):
        sel = picked[inc.containers_flat]
        hits = np.bincount(inc.containers_ptidx[sel], minlength=inc.z_count) > 0
        both &= ~hits
    return int(both.sum())


def masked_union_complexity_batch(inc: PointIncidence, picks: np.ndarray) -> np.ndarray:
    """Vectorized `masked_union_complexity` over rows of a (t, n) pick matrix."""
    t = picks.shape[0]
    m = inc.z_count
    out = np.zeros(t, dtype=np.int64)
    if m == 0:
        return out
    P = picks.astype(np.float32)
    survive = picks[:, inc.defs_a] & picks[:, inc.defs_b]
    block = max(1, (1 << 22) // max(t, 1))
    for s in range(0, m, block):
        e = min(s + block, m)
        in_chunk = (inc.containers_ptidx >= s) & (inc.containers_ptidx < e)
        ptl = inc.containers_ptidx[in_chunk] - s
        mem = inc.containers_flat[in_chunk]
        C = np.zeros((e - s, inc.n), dtype=np.float32)
        C[ptl, mem] = 1.0
        hits = P @ C.T > 0.5
        out += (survive[:, s:e] & ~hits).sum(axis=1)
    return out
