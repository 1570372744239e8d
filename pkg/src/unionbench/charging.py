"""Red/blue charging certificate for curve families.

Every intersection point that lies strictly above at most k-2 other curves
is charged to exactly one of its two definers: if it is the leftmost
intersection of the pair it is charged red, to the curve lying above on a
punctured left neighborhood; otherwise it is charged blue, to the curve
lying below on that neighborhood. No curve can collect more than k-1 red
or k-1 blue charges, which bounds the number of qualifying points by
2(k-1)n. `verify_certificate` checks those tallies; because the bound is
proven, a failure means an implementation bug.
"""

from __future__ import annotations

import enum
from collections import defaultdict
from dataclasses import dataclass

from .depth import IntersectionPoint, intersection_points
from .errors import CertificateFailure, DegeneracyError, KindError, ParameterError
from .families import Family, FamilyKind


class ChargeColor(str, enum.Enum):
    RED = "red"
    BLUE = "blue"


@dataclass(frozen=True)
class ChargeRecord:
    point: IntersectionPoint
    charged_curve: int
    color: ChargeColor


@dataclass
class ChargeLedger:
    k: int
    n: int
    records: tuple[ChargeRecord, ...]
    per_curve: dict[int, tuple[int, int]]  # id -> (red_count, blue_count)
    qualifying_count: int


def _check_curves(f: Family) -> None:
    if f.kind is not FamilyKind.CURVES:
        raise KindError("charging is defined for curve families")


def _check_k(f: Family, k: int) -> None:
    if k < 2 or k > f.n:
        raise ParameterError(f"need 2 <= k <= n={f.n}, got k={k}")


def qualifying_points(f: Family, k: int,
                      points: list[IntersectionPoint] | None = None
                      ) -> list[IntersectionPoint]:
    """Intersection points lying strictly above at most k-2 non-definer curves."""
    _check_curves(f)
    _check_k(f, k)
    if points is None:
        points = intersection_points(f)
    return [q for q in points if q.above_count <= k - 2]


def _all_charges(f: Family,
                 points: list[IntersectionPoint] | None = None
                 ) -> list[ChargeRecord]:
    """Charge every intersection point; qualification filtering happens per k.

    The above/below test left of a point evaluates the pair's difference
    polynomial at x - delta with delta half the gap to the pair's other
    root (or 1 for a single-root pair), which stays inside the punctured
    neighborhood where the sign is constant.
    """
    if points is None:
        points = intersection_points(f)
    by_pair: dict[tuple[int, int], list[IntersectionPoint]] = defaultdict(list)
    for q in points:
        by_pair[q.definers].append(q)
    eps = f.tol.eps
    records: list[ChargeRecord] = []
    for (i, j), pts in by_pair.items():
        pts.sort(key=lambda q: q.p.x)
        if len(pts) == 2 and pts[1].p.x - pts[0].p.x <= eps:
            raise DegeneracyError(
                f"curves {i} and {j} intersect twice at x={pts[0].p.x:.12g} within eps")
        qi, qj = f.members[i], f.members[j]
        for idx, q in enumerate(pts):
            delta = (pts[1].p.x - pts[0].p.x) / 2.0 if len(pts) == 2 else 1.0
            x_left = q.p.x - delta
            diff = qi.y_at(x_left) - qj.y_at(x_left)
            upper, lower = (i, j) if diff > 0 else (j, i)
            if idx == 0:
                records.append(ChargeRecord(q, upper, ChargeColor.RED))
            else:
                records.append(ChargeRecord(q, lower, ChargeColor.BLUE))
    records.sort(key=lambda rec: (rec.point.p.x, rec.point.p.y, rec.point.definers))
    return records


def build_ledger(f: Family, k: int,
                 points: list[IntersectionPoint] | None = None) -> ChargeLedger:
    """Charge all qualifying points for this k and tally per curve."""
    _check_curves(f)
    _check_k(f, k)
    charges = _all_charges(f, points)
    records = tuple(rec for rec in charges if rec.point.above_count <= k - 2)
    per_curve = {m.id: (0, 0) for m in f.members}
    for rec in records:
        red, blue = per_curve[rec.charged_curve]
        if rec.color is ChargeColor.RED:
            per_curve[rec.charged_curve] = (red + 1, blue)
        else:
            per_curve[rec.charged_curve] = (red, blue + 1)
    return ChargeLedger(k=k, n=f.n, records=records, per_curve=per_curve,
                        qualifying_count=len(records))


@dataclass(frozen=True)
class CertificateReport:
    k: int
    n: int
    qualifying_count: int
    qualifying_bound: int       # 2(k-1)n
    max_red: int
    max_blue: int
    charge_bound: int           # k-1
    per_curve: dict[int, tuple[int, int]] | None = None

    @property
    def passed(self) -> bool:
        return (self.max_red <= self.charge_bound
                and self.max_blue <= self.charge_bound
                and self.qualifying_count <= self.qualifying_bound)

    def to_dict(self) -> dict:
        out = {
            "k": self.k,
            "n": self.n,
            "qualifying_count": self.qualifying_count,
            "qualifying_bound": self.qualifying_bound,
            "max_red": self.max_red,
            "max_blue": self.max_blue,
            "charge_bound": self.charge_bound,
            "pass": self.passed,
        }
        if self.per_curve is not None:
            out["per_curve"] = {
                str(cid): list(counts) for cid, counts in sorted(self.per_curve.items())}
        return out


def verify_certificate(ledger: ChargeLedger, f: Family) -> CertificateReport:
    """Assert the per-curve charge caps and the total 2(k-1)n bound."""
    _check_curves(f)
    bound = ledger.k - 1
    for cid, (red, blue) in sorted(ledger.per_curve.items()):
        if red > bound or blue > bound:
            offending = tuple(rec.point for rec in ledger.records
                              if rec.charged_curve == cid)
            raise CertificateFailure(
                f"curve {cid} charged red={red} blue={blue}, cap {bound} (k={ledger.k})",
                curve_id=cid, points=offending)
    total_bound = 2 * (ledger.k - 1) * ledger.n
    if ledger.qualifying_count > total_bound:
        raise CertificateFailure(
            f"{ledger.qualifying_count} qualifying points exceed 2(k-1)n={total_bound}")
    reds = [c[0] for c in ledger.per_curve.values()]
    blues = [c[1] for c in ledger.per_curve.values()]
    return CertificateReport(
        k=ledger.k, n=ledger.n,
        qualifying_count=ledger.qualifying_count,
        qualifying_bound=total_bound,
        max_red=max(reds, default=0),
        max_blue=max(blues, default=0),
        charge_bound=bound,
        per_curve=dict(ledger.per_curve))


def certificates_all_k(f: Family,
                       points: list[IntersectionPoint] | None = None
                       ) -> list[CertificateReport]:
    """Certificates for every k in 2..n, sharing one charge computation.

    The charge target and color of a point do not depend on k; k only
    decides which points qualify, so the tallies grow incrementally as k
    increases.
    """
    _check_curves(f)
    if f.n < 2:
        return []
    charges = sorted(_all_charges(f, points),
                     key=lambda rec: rec.point.above_count)
    red = [0] * f.n
    blue = [0] * f.n
    max_red = 0
    max_blue = 0
    count = 0
    pos = 0
    reports: list[CertificateReport] = []
    for k in range(2, f.n + 1):
        while pos < len(charges) and charges[pos].point.above_count <= k - 2:
            rec = charges[pos]
            if rec.color is ChargeColor.RED:
                red[rec.charged_curve] += 1
                max_red = max(max_red, red[rec.charged_curve])
            else:
                blue[rec.charged_curve] += 1
                max_blue = max(max_blue, blue[rec.charged_curve])
            count += 1
            pos += 1
        bound = k - 1
        if max_red > bound or max_blue > bound:
            cid = next(c for c in range(f.n) if red[c] > bound or blue[c] > bound)
            raise CertificateFailure(
                f"curve {cid} charged red={red[cid]} blue={blue[cid]}, cap {bound} (k={k})",
                curve_id=cid)
        total_bound = 2 * (k - 1) * f.n
        if count > total_bound:
            raise CertificateFailure(
                f"{count} qualifying points exceed 2(k-1)n={total_bound} (k={k})")
        reports.append(CertificateReport(
            k=k, n=f.n, qualifying_count=count, qualifying_bound=total_bound,
            max_red=max_red, max_blue=max_blue, charge_bound=bound))
    return reports
