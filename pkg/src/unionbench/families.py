"""Family model, seeded generators, and JSON persistence.

Generators are pure functions of their parameters: the whole family is
re-sampled from a fresh derived seed until it passes general-position
validation, so seed -> family is a simple deterministic map. Families are
immutable after construction.
"""

from __future__ import annotations

import enum
import json
import math
import random
from dataclasses import dataclass
from pathlib import Path

from .errors import FormatError, GenerationFailure, ParameterError, ValidationError
from .geom_core import (
    Circle,
    Point,
    QuadCurve,
    Tolerance,
    ValidationReport,
    validate_general_position,
)

# eps defaults to this fraction of the family extent; families reject
# tolerances coarser than extent / 1e3.
EPS_SCALE = 1e-9
MAX_EPS_FRACTION = 1e-3


class FamilyKind(str, enum.Enum):
    DISCS = "discs"
    CURVES = "curves"


def family_bbox(kind: FamilyKind, members) -> tuple[float, float, float, float]:
    """Bounding box of the members (for curves: of their characteristic points)."""
    if kind is FamilyKind.DISCS:
        x0 = min(c.cx - c.r for c in members)
        y0 = min(c.cy - c.r for c in members)
        x1 = max(c.cx + c.r for c in members)
        y1 = max(c.cy + c.r for c in members)
    else:
        # vertex for genuine parabolas, y-intercept for (near-)lines; the
        # vertex blows up as a -> 0, so fall back below a fixed threshold
        pts = []
        for q in members:
            if abs(q.a) > 1e-3:
                vx = -q.b / (2.0 * q.a)
                pts.append((vx, q.y_at(vx)))
            else:
                pts.append((0.0, q.c))
        x0 = min(p[0] for p in pts)
        y0 = min(p[1] for p in pts)
        x1 = max(p[0] for p in pts)
        y1 = max(p[1] for p in pts)
    return x0, y0, x1, y1


def family_extent(kind: FamilyKind, members) -> float:
    x0, y0, x1, y1 = family_bbox(kind, members)
    return max(1.0, math.hypot(x1 - x0, y1 - y0))


def default_tolerance(kind: FamilyKind, members) -> Tolerance:
    return Tolerance(EPS_SCALE * family_extent(kind, members))


@dataclass(frozen=True)
class Family:
    """Homogeneous collection of circles or quadratic graphs.

    Invariants: at least one member, ids contiguous from 0 in order, and
    eps well below the family extent. General-position validity is enforced
    at the boundaries (generators and the loader), not by the constructor;
    use `validate_family` to re-check.
    """

    kind: FamilyKind
    members: tuple[Circle, ...] | tuple[QuadCurve, ...]
    tol: Tolerance
    label: str = ""

    def __post_init__(self) -> None:
        if not self.members:
            raise ValueError("a family needs at least one member")
        want = Circle if self.kind is FamilyKind.DISCS else QuadCurve
        for pos, member in enumerate(self.members):
            if not isinstance(member, want):
                raise ValueError(
                    f"member {pos} is {type(member).__name__}, expected {want.__name__}")
            if member.id != pos:
                raise ValueError("member ids must be 0..n-1 in order")
        limit = family_extent(self.kind, self.members) * MAX_EPS_FRACTION
        if self.tol.eps >= limit:
            raise ValueError(
                f"eps={self.tol.eps:g} too coarse for family extent (limit {limit:g})")

    @property
    def n(self) -> int:
        return len(self.members)

    def bbox(self) -> tuple[float, float, float, float]:
        return family_bbox(self.kind, self.members)


def validate_family(f: Family) -> ValidationReport:
    return validate_general_position(list(f.members), f.tol)


@dataclass(frozen=True)
class GeneratorParams:
    """Knobs for the randomized generators; unused fields are ignored."""

    n: int
    seed: int = 0
    box: float = 10.0                 # disc centers drawn from [0, box]^2
    r_min: float = 0.5
    r_max: float = 2.0
    margin: float = 0.05              # common-point generator: depth of O inside each disc
    coeff_a: tuple[float, float] = (-1.5, 1.5)
    coeff_b: tuple[float, float] = (-4.0, 4.0)
    coeff_c: tuple[float, float] = (-6.0, 6.0)
    max_rounds: int = 100

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ParameterError(f"n must be >= 1, got {self.n}")
        if not (0 < self.r_min <= self.r_max):
            raise ParameterError(f"bad radius range [{self.r_min}, {self.r_max}]")
        if self.margin < 0:
            raise ParameterError(f"margin must be >= 0, got {self.margin}")
        if self.box <= 0:
            raise ParameterError(f"box must be positive, got {self.box}")
        for name in ("coeff_a", "coeff_b", "coeff_c"):
            lo, hi = getattr(self, name)
            if not (math.isfinite(lo) and math.isfinite(hi) and lo <= hi):
                raise ParameterError(f"bad coefficient range {name}={lo, hi}")
        if self.max_rounds < 1:
            raise ParameterError("max_rounds must be >= 1")


def _round_rng(params: GeneratorParams, attempt: int) -> random.Random:
    # string seeding keeps the (seed, attempt) -> stream map stable
    return random.Random(f"{params.seed}:{attempt}")


def gen_random_discs(params: GeneratorParams) -> Family:
    """n circles with uniform centers and radii, re-sampled until valid."""
    for attempt in range(params.max_rounds):
        rng = _round_rng(params, attempt)
        members = tuple(
            Circle(i,
                   rng.uniform(0.0, params.box),
                   rng.uniform(0.0, params.box),
                   rng.uniform(params.r_min, params.r_max))
            for i in range(params.n))
        tol = default_tolerance(FamilyKind.DISCS, members)
        if validate_general_position(list(members), tol).ok:
            return Family(FamilyKind.DISCS, members, tol,
                          label=f"random-discs n={params.n} seed={params.seed}")
    raise GenerationFailure(
        f"no valid disc family after {params.max_rounds} rounds (seed={params.seed})")


def gen_common_point_discs(params: GeneratorParams, o: Point) -> Family:
    """n circles whose interiors all contain the point o with the given margin."""
    if params.margin >= params.r_min:
        raise ParameterError(
            f"margin {params.margin} must be smaller than r_min {params.r_min}")
    for attempt in range(params.max_rounds):
        rng = _round_rng(params, attempt)
        members = []
        for i in range(params.n):
            radius = rng.uniform(params.r_min, params.r_max)
            rho = rng.uniform(0.0, radius - params.margin)
            theta = rng.uniform(0.0, 2.0 * math.pi)
            members.append(Circle(i,
                                  o.x + rho * math.cos(theta),
                                  o.y + rho * math.sin(theta),
                                  radius))
        members = tuple(members)
        tol = default_tolerance(FamilyKind.DISCS, members)
        if params.margin <= tol.eps:
            raise ParameterError(
                f"margin {params.margin:g} must exceed eps {tol.eps:g}")
        if validate_general_position(list(members), tol).ok:
            return Family(FamilyKind.DISCS, members, tol,
                          label=(f"common-point-discs n={params.n} seed={params.seed} "
                                 f"o=({o.x:g},{o.y:g})"))
    raise GenerationFailure(
        f"no valid common-point family after {params.max_rounds} rounds (seed={params.seed})")


def gen_lines_parabolas(n: int, k: int) -> Family:
    """k-1 horizontal lines y = i/(4k) plus n-k+1 unit parabolas y = (x-i)^2.

    The line heights sit strictly between 0 and 1/4, so every parabola-line
    crossing lies below all parabola-parabola crossings (those have
    y >= 1/4). Each parabola meets each line twice, giving the extremal
    count of 2(k-1)(n-k+1) low points.
    """
    if k < 2 or k > n:
        raise ParameterError(f"need 2 <= k <= n, got k={k}, n={n}")
    members: list[QuadCurve] = []
    for i in range(1, k):
        members.append(QuadCurve(i - 1, 0.0, 0.0, i / (4.0 * k)))
    for i in range(1, n - k + 2):
        members.append(QuadCurve(k - 2 + i, 1.0, -2.0 * i, float(i * i)))
    members_t = tuple(members)
    tol = default_tolerance(FamilyKind.CURVES, members_t)
    report = validate_general_position(list(members_t), tol)
    if not report.ok:
        raise GenerationFailure(f"construction failed validation: {report.summary()}")
    return Family(FamilyKind.CURVES, members_t, tol,
                  label=f"lines-parabolas k={k} n={n}")


def gen_random_curves(params: GeneratorParams) -> Family:
    """n quadratic graphs with coefficients uniform in the configured ranges."""
    for attempt in range(params.max_rounds):
        rng = _round_rng(params, attempt)
        members = tuple(
            QuadCurve(i,
                      rng.uniform(*params.coeff_a),
                      rng.uniform(*params.coeff_b),
                      rng.uniform(*params.coeff_c))
            for i in range(params.n))
        tol = default_tolerance(FamilyKind.CURVES, members)
        if validate_general_position(list(members), tol).ok:
            return Family(FamilyKind.CURVES, members, tol,
                          label=f"random-curves n={params.n} seed={params.seed}")
    raise GenerationFailure(
        f"no valid curve family after {params.max_rounds} rounds (seed={params.seed})")


_DISC_KEYS = {"id", "cx", "cy", "r"}
_CURVE_KEYS = {"id", "a", "b", "c"}


def save_family(f: Family, path, meta: dict | None = None) -> None:
    """Write the family as JSON. `meta` is an optional free-form block."""
    doc: dict = {
        "kind": f.kind.value,
        "label": f.label,
        "eps": f.tol.eps,
        "members": [
            {"id": m.id, "cx": m.cx, "cy": m.cy, "r": m.r}
            if f.kind is FamilyKind.DISCS
            else {"id": m.id, "a": m.a, "b": m.b, "c": m.c}
            for m in f.members
        ],
    }
    if meta is not None:
        doc["meta"] = meta
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")


def _member_from_dict(kind: FamilyKind, pos: int, raw: object):
    if not isinstance(raw, dict):
        raise FormatError(f"member {pos} is not an object")
    want = _DISC_KEYS if kind is FamilyKind.DISCS else _CURVE_KEYS
    if set(raw) != want:
        raise FormatError(
            f"member {pos} has keys {sorted(raw)}, expected {sorted(want)}")
    if raw["id"] != pos:
        raise FormatError("member ids must be 0..n-1 in order (duplicate or gap)")
    try:
        if kind is FamilyKind.DISCS:
            return Circle(pos, float(raw["cx"]), float(raw["cy"]), float(raw["r"]))
        return QuadCurve(pos, float(raw["a"]), float(raw["b"]), float(raw["c"]))
    except (TypeError, ValueError) as exc:
        raise FormatError(f"member {pos}: {exc}") from exc


def load_family(path) -> Family:
    """Read a family file, checking schema and general position.

    Raises FormatError for structural problems, ValidationError when the
    family is well-formed but fails general position. Unknown top-level
    keys (e.g. "meta") are ignored.
    """
    text = Path(path).read_text(encoding="utf-8")
    try:
        doc = json.loads(text)
    except ValueError as exc:
        raise FormatError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise FormatError("top level must be an object")
    for key in ("kind", "label", "eps", "members"):
        if key not in doc:
            raise FormatError(f"missing key {key!r}")
    try:
        kind = FamilyKind(doc["kind"])
    except ValueError as exc:
        raise FormatError(f"unknown kind {doc['kind']!r}") from exc
    if not isinstance(doc["label"], str):
        raise FormatError("label must be a string")
    try:
        eps = float(doc["eps"])
    except (TypeError, ValueError) as exc:
        raise FormatError("eps must be a number") from exc
    if not (math.isfinite(eps) and eps > 0):
        raise FormatError(f"eps must be positive and finite, got {eps!r}")
    if not isinstance(doc["members"], list) or not doc["members"]:
        raise FormatError("members must be a non-empty list")
    members = tuple(
        _member_from_dict(kind, pos, raw) for pos, raw in enumerate(doc["members"]))
    try:
        family = Family(kind, members, Tolerance(eps), label=doc["label"])
    except ValueError as exc:
        raise FormatError(str(exc)) from exc
    report = validate_family(family)
    if not report.ok:
        raise ValidationError(f"family fails general position: {report.summary()}")
    return family
