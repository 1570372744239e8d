"""Acceptance suite: the eight checks that gate a release.

Each criterion generates its own seeded families, runs the relevant
checkers at full scale, and reports one pass/fail line. The suite is a
pure function of the master seed; `quick=True` shrinks the family counts
for a sub-minute smoke run.

1. Construction tightness: the lines-plus-parabolas family yields exactly
   2(k-1)(n-k+1) qualifying points.
2. Charge certificates on random curve families, every k in 2..n.
3. Common-point disc families satisfy g(k) <= 2(k-1)n for all k.
4. Union complexity <= 6n-12 for every generated disc family (n >= 3) and
   200 random subfamilies of each; the 3-circle equilateral configuration
   attains equality.
5. Edge-count and coloring bounds on random disc families.
6. Sampling chain, Monte Carlo agreement, per-trial union bounds.
7. Oracle equivalences: exact clique vs exhaustive subsets, grid depth vs
   definitional scan.
8. Depth-ratio report: g(k)/(k n) stays below 3e (soft) and 6e (hard)
   across all analyzed families; the maximum observed ratio is recorded.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass

import numpy as np

from .charging import certificates_all_k, qualifying_points
from .depth import (
    DepthBoundReport,
    check_common_point_bound,
    check_depth_bounds,
    intersection_points,
    masked_union_complexity,
    masked_union_complexity_batch,
    point_incidence,
    union_complexity,
)
from .errors import CertificateFailure
from .families import (
    Family,
    FamilyKind,
    GeneratorParams,
    default_tolerance,
    gen_common_point_discs,
    gen_lines_parabolas,
    gen_random_curves,
    gen_random_discs,
)
from .geom_core import Circle, Point, validate_general_position
from .graph import (
    IntersectionGraph,
    build_graph,
    check_coloring_bound,
    check_edge_bound,
    clique_number,
    graph_stats,
)
from .sampling import check_sampling_chain, run_trials

DEFAULT_SEED = 20250810


@dataclass(frozen=True)
class CriterionResult:
    index: int
    name: str
    passed: bool
    detail: str
    seconds: float

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return f"[{tag}] {self.index}. {self.name}: {self.detail} ({self.seconds:.1f}s)"

    def to_dict(self) -> dict:
        return {"index": self.index, "name": self.name, "pass": self.passed,
                "detail": self.detail, "seconds": round(self.seconds, 3)}


@dataclass(frozen=True)
class SuiteSizes:
    curve_families: int = 1000
    curve_n_max: int = 50
    common_families: int = 500
    common_n_max: int = 200
    disc_families: int = 500
    disc_n_max: int = 300
    mc_families: int = 50
    mc_trials: int = 100_000
    mc_within_ci: int = 47
    oracle_families: int = 100
    grid_families: int = 50
    subfamilies: int = 200


QUICK_SIZES = SuiteSizes(
    curve_families=40, curve_n_max=25,
    common_families=25, common_n_max=60,
    disc_families=40, disc_n_max=80,
    mc_families=4, mc_trials=20_000, mc_within_ci=2,
    oracle_families=15, grid_families=8, subfamilies=50)


def exhaustive_clique_number(g: IntersectionGraph) -> int:
    """Maximum over all vertex subsets; independent of the search code."""
    if g.n > 20:
        raise ValueError("exhaustive oracle is for n <= 20")
    masks = g.masks
    best = 1 if g.n else 0
    is_clique = bytearray(1 << g.n)
    is_clique[0] = 1
    for s in range(1, 1 << g.n):
        v = (s & -s).bit_length() - 1
        rest = s ^ (1 << v)
        if is_clique[rest] and rest & ~masks[v] == 0:
            is_clique[s] = 1
            size = s.bit_count()
            if size > best:
                best = size
    return best


def equilateral_triple() -> Family:
    """Three unit circles on an equilateral triangle of side 1.8.

    Every pairwise intersection point lies outside the third circle, so all
    six points sit on the union boundary and the 6n-12 bound is attained
    with equality at n=3.
    """
    side = 1.8
    members = (
        Circle(0, 0.0, 0.0, 1.0),
        Circle(1, side, 0.0, 1.0),
        Circle(2, side / 2.0, side * math.sqrt(3.0) / 2.0, 1.0),
    )
    tol = default_tolerance(FamilyKind.DISCS, members)
    assert validate_general_position(list(members), tol).ok
    return Family(FamilyKind.DISCS, members, tol, label="equilateral-triple")


class _UnionAggregate:
    """Criterion 4 accumulator: full families plus random subfamilies."""

    def __init__(self, subfamilies: int) -> None:
        self.subfamilies = subfamilies
        self.families = 0
        self.subfamily_checks = 0
        self.violations = 0
        self.seconds = 0.0

    def add(self, f: Family, points, report: DepthBoundReport, sub_seed: int) -> None:
        if f.n < 3:
            return
        t0 = time.monotonic()
        self.families += 1
        if report.union_ok is False:
            self.violations += 1
        inc = point_incidence(f, points)
        rng = np.random.default_rng(sub_seed)
        picks = rng.random((self.subfamilies, f.n)) < 0.5
        flat = len(inc.containers_flat)
        if flat > 500_000:
            survived = masked_union_complexity_batch(inc, picks)
        else:
            survived = np.array([masked_union_complexity(inc, row) for row in picks])
        n_star = picks.sum(axis=1)
        relevant = n_star >= 3
        self.subfamily_checks += int(relevant.sum())
        self.violations += int((relevant & (survived > 6 * n_star - 12)).sum())
        self.seconds += time.monotonic() - t0


class _RatioAggregate:
    """Criterion 8 accumulator: g(k)/(k n) ratios across all disc families."""

    def __init__(self) -> None:
        self.families = 0
        self.max_ratio = 0.0
        self.flags = 0
        self.hard_fails = 0

    def add(self, report: DepthBoundReport) -> None:
        self.families += 1
        self.max_ratio = max(self.max_ratio, report.max_ratio)
        self.flags += report.flags
        self.hard_fails += sum(1 for row in report.rows if row.hard_fail)


def _tick(progress, index: int, label: str, done: int, total: int) -> None:
    if progress is not None and (done % 50 == 0 or done == total):
        print(f"  [{index}/8] {label}: {done}/{total}", file=progress, flush=True)


def _criterion_1(sizes: SuiteSizes) -> CriterionResult:
    start = time.monotonic()
    cases = [(2, 2), (3, 10), (4, 7), (5, 40)]
    worst = 0.0
    ok = True
    details = []
    for k, n in cases:
        t0 = time.monotonic()
        family = gen_lines_parabolas(n, k)
        count = len(qualifying_points(family, k))
        elapsed = time.monotonic() - t0
        worst = max(worst, elapsed)
        expected = 2 * (k - 1) * (n - k + 1)
        if count != expected or elapsed >= 1.0:
            ok = False
        details.append(f"(k={k},n={n}):{count}/{expected}")
    return CriterionResult(
        1, "construction tightness", ok,
        f"{'; '.join(details)}, slowest {worst * 1000:.0f}ms", time.monotonic() - start)


def _criterion_2(seed: int, sizes: SuiteSizes, progress) -> CriterionResult:
    start = time.monotonic()
    rng = random.Random(f"{seed}:curves")
    certs = 0
    failure: str | None = None
    for i in range(sizes.curve_families):
        n = rng.randint(2, sizes.curve_n_max)
        fam_seed = rng.getrandbits(32)
        family = gen_random_curves(GeneratorParams(n=n, seed=fam_seed))
        try:
            reports = certificates_all_k(family)
        except CertificateFailure as exc:
            failure = f"family {i} (n={n}, seed={fam_seed}): {exc}"
            break
        if not all(rep.passed for rep in reports):
            failure = f"family {i} (n={n}, seed={fam_seed}): cap exceeded"
            break
        certs += len(reports)
        _tick(progress, 2, "curve families", i + 1, sizes.curve_families)
    detail = (failure if failure else
              f"{sizes.curve_families} families, {certs} certificates, 0 violations")
    return CriterionResult(2, "charge certificates", failure is None, detail,
                           time.monotonic() - start)


def _criterion_3(seed: int, sizes: SuiteSizes, union_agg: _UnionAggregate,
                 ratio_agg: _RatioAggregate, progress) -> CriterionResult:
    start = time.monotonic()
    rng = random.Random(f"{seed}:common")
    origin = Point(0.0, 0.0)
    checks = 0
    violations = 0
    for i in range(sizes.common_families):
        n = sizes.common_n_max if i >= sizes.common_families - 3 else (
            rng.randint(2, sizes.common_n_max))
        fam_seed = rng.getrandbits(32)
        family = gen_common_point_discs(GeneratorParams(n=n, seed=fam_seed), origin)
        points = intersection_points(family)
        report = check_common_point_bound(family, origin, points=points)
        checks += len(report.rows)
        if not report.passed:
            violations += 1
        depth_rep = check_depth_bounds(family, points=points)
        ratio_agg.add(depth_rep)
        union_agg.add(family, points, depth_rep, sub_seed=rng.getrandbits(32))
        _tick(progress, 3, "common-point families", i + 1, sizes.common_families)
    ok = violations == 0
    return CriterionResult(
        3, "common-point depth bound", ok,
        f"{sizes.common_families} families, {checks} per-k checks, "
        f"{violations} violations", time.monotonic() - start)


def _criterion_5(seed: int, sizes: SuiteSizes, union_agg: _UnionAggregate,
                 ratio_agg: _RatioAggregate, progress) -> CriterionResult:
    start = time.monotonic()
    rng = random.Random(f"{seed}:discs")
    violations = []
    max_col_over_omega = 0.0
    for i in range(sizes.disc_families):
        n = sizes.disc_n_max if i >= sizes.disc_families - 3 else (
            rng.randint(2, sizes.disc_n_max))
        fam_seed = rng.getrandbits(32)
        family = gen_random_discs(GeneratorParams(n=n, seed=fam_seed))
        stats = graph_stats(build_graph(family))
        edge_rep = check_edge_bound(family, stats=stats)
        color_rep = check_coloring_bound(family, stats=stats)
        if not edge_rep.passed:
            violations.append(f"edge bound at family {i}")
        if not color_rep.passed:
            violations.append(f"coloring bound at family {i}")
        max_col_over_omega = max(max_col_over_omega, stats.col / stats.omega)
        points = intersection_points(family)
        depth_rep = check_depth_bounds(family, points=points, omega=stats.omega)
        if depth_rep.depth_le_omega is False:
            violations.append(f"max depth > omega at family {i}")
        ratio_agg.add(depth_rep)
        union_agg.add(family, points, depth_rep, sub_seed=rng.getrandbits(32))
        _tick(progress, 5, "disc families", i + 1, sizes.disc_families)
    ok = not violations
    detail = (f"{sizes.disc_families} families, max col/omega="
              f"{max_col_over_omega:.3f}, 0 violations" if ok
              else "; ".join(violations[:3]))
    return CriterionResult(5, "edge and coloring bounds", ok, detail,
                           time.monotonic() - start)


def _criterion_6(seed: int, sizes: SuiteSizes, union_agg: _UnionAggregate,
                 progress) -> CriterionResult:
    start = time.monotonic()
    rng = random.Random(f"{seed}:mc")
    within = 0
    chain_failures = 0
    trial_violations = 0
    produced = 0
    attempts = 0
    while produced < sizes.mc_families and attempts < sizes.mc_families * 4:
        attempts += 1
        n = rng.randint(5, 40)
        fam_seed = rng.getrandbits(32)
        family = gen_random_discs(GeneratorParams(n=n, seed=fam_seed))
        stats = graph_stats(build_graph(family))
        if stats.omega < 2:
            continue  # no intersecting pair: p=1/omega undefined
        produced += 1
        points = intersection_points(family)
        inc = point_incidence(family, points)
        chain = check_sampling_chain(family, inc=inc, omega=stats.omega)
        if not chain.passed:
            chain_failures += 1
        report = run_trials(family, 1.0 / stats.omega, sizes.mc_trials,
                            seed=rng.getrandbits(31), omega=stats.omega, inc=inc)
        if abs(report.mean_S - report.exact_E) <= report.ci_halfwidth:
            within += 1
        trial_violations += report.per_trial_violations
        depth_rep = check_depth_bounds(family, points=points, omega=stats.omega)
        union_agg.add(family, points, depth_rep, sub_seed=rng.getrandbits(32))
        _tick(progress, 6, "sampling families", produced, sizes.mc_families)
    ok = (produced == sizes.mc_families and chain_failures == 0
          and trial_violations == 0 and within >= sizes.mc_within_ci)
    return CriterionResult(
        6, "sampling chain and Monte Carlo", ok,
        f"{produced} families, chain failures {chain_failures}, "
        f"{within}/{produced} means within CI (need {sizes.mc_within_ci}), "
        f"{trial_violations} per-trial violations", time.monotonic() - start)


def _criterion_7(seed: int, sizes: SuiteSizes, progress) -> CriterionResult:
    start = time.monotonic()
    rng = random.Random(f"{seed}:oracle")
    clique_mismatches = 0
    for i in range(sizes.oracle_families):
        n = rng.randint(3, 15)
        family = gen_random_discs(GeneratorParams(n=n, seed=rng.getrandbits(32)))
        graph = build_graph(family)
        if clique_number(graph) != exhaustive_clique_number(graph):
            clique_mismatches += 1
        _tick(progress, 7, "clique oracle families", i + 1, sizes.oracle_families)
    depth_mismatches = 0
    for i in range(sizes.grid_families):
        n = rng.randint(3, 120)
        family = gen_random_discs(GeneratorParams(n=n, seed=rng.getrandbits(32)))
        if (intersection_points(family, method="scan")
                != intersection_points(family, method="grid")):
            depth_mismatches += 1
    ok = clique_mismatches == 0 and depth_mismatches == 0
    return CriterionResult(
        7, "oracle equivalences", ok,
        f"clique: {sizes.oracle_families} families, {clique_mismatches} mismatches; "
        f"depth grid vs scan: {sizes.grid_families} families, "
        f"{depth_mismatches} mismatches", time.monotonic() - start)


def _criterion_4(union_agg: _UnionAggregate) -> CriterionResult:
    t0 = time.monotonic()
    triple = equilateral_triple()
    uc = union_complexity(triple)
    triangle_ok = uc == 6 == 6 * triple.n - 12
    ok = union_agg.violations == 0 and triangle_ok
    return CriterionResult(
        4, "union-complexity bound", ok,
        f"{union_agg.families} families, {union_agg.subfamily_checks} subfamily "
        f"checks, {union_agg.violations} violations; equilateral triple: {uc} == 6",
        union_agg.seconds + (time.monotonic() - t0))


def _criterion_8(ratio_agg: _RatioAggregate) -> CriterionResult:
    ok = ratio_agg.hard_fails == 0
    return CriterionResult(
        8, "depth-ratio report", ok,
        f"{ratio_agg.families} families, max g/(kn)={ratio_agg.max_ratio:.4f} "
        f"(soft cap 3e={3 * math.e:.3f}), {ratio_agg.flags} flagged, "
        f"{ratio_agg.hard_fails} beyond 6e", 0.0)


def run_suite(seed: int | None = None, quick: bool = False,
              progress=None) -> list[CriterionResult]:
    """Run all eight criteria; deterministic for a fixed seed."""
    master = DEFAULT_SEED if seed is None else seed
    sizes = QUICK_SIZES if quick else SuiteSizes()
    union_agg = _UnionAggregate(sizes.subfamilies)
    ratio_agg = _RatioAggregate()
    results = [
        _criterion_1(sizes),
        _criterion_2(master, sizes, progress),
        _criterion_3(master, sizes, union_agg, ratio_agg, progress),
        _criterion_5(master, sizes, union_agg, ratio_agg, progress),
        _criterion_6(master, sizes, union_agg, progress),
        _criterion_7(master, sizes, progress),
    ]
    results.append(_criterion_4(union_agg))
    results.append(_criterion_8(ratio_agg))
    results.sort(key=lambda res: res.index)
    return results
