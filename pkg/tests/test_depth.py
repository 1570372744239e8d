import math
from itertools import combinations

import numpy as np
import pytest

from unionbench import (
    Circle,
    Family,
    FamilyKind,
    GeneratorParams,
    KindError,
    Point,
    Tolerance,
    build_graph,
    check_common_point_bound,
    check_depth_bounds,
    circle_circle_intersections,
    depth_profile,
    find_common_point,
    gen_common_point_discs,
    gen_lines_parabolas,
    gen_random_discs,
    graph_stats,
    intersection_points,
    masked_union_complexity,
    point_incidence,
    union_complexity,
)
from unionbench.families import default_tolerance


def two_crossing_discs():
    members = (Circle(0, 0.0, 0.0, 1.0), Circle(1, 1.0, 0.0, 1.0))
    return Family(FamilyKind.DISCS, members, Tolerance(1e-9))


def equilateral_triple(side=1.8):
    members = (
        Circle(0, 0.0, 0.0, 1.0),
        Circle(1, side, 0.0, 1.0),
        Circle(2, side / 2.0, side * math.sqrt(3.0) / 2.0, 1.0),
    )
    return Family(FamilyKind.DISCS, members,
                  default_tolerance(FamilyKind.DISCS, members))


def brute_force_curve_points(f):
    """Independent oracle: count pairwise real roots via numpy.roots."""
    total = 0
    for qa, qb in combinations(f.members, 2):
        coeffs = np.array([qa.a - qb.a, qa.b - qb.b, qa.c - qb.c])
        nz = np.nonzero(np.abs(coeffs) > 1e-12)[0]
        if len(nz) == 0:
            continue
        roots = np.roots(coeffs[nz[0]:])
        total += int(np.sum(np.abs(roots.imag) < 1e-9))
    return total


class TestIntersectionPoints:
    def test_two_crossing_discs(self):
        pts = intersection_points(two_crossing_discs())
        assert len(pts) == 2
        assert all(q.depth == 2 for q in pts)
        assert all(q.definers == (0, 1) for q in pts)

    def test_single_disc(self):
        f = Family(FamilyKind.DISCS, (Circle(0, 0, 0, 1),), Tolerance(1e-9))
        assert intersection_points(f) == []

    def test_lines_parabolas_count_vs_oracle(self):
        f = gen_lines_parabolas(7, 4)
        pts = intersection_points(f)
        assert brute_force_curve_points(f) == 30
        assert len(pts) == 30
        assert sum(1 for q in pts if q.above_count <= 2) == 24

    def test_points_sorted_and_even_for_discs(self):
        f = gen_random_discs(GeneratorParams(n=30, seed=4))
        pts = intersection_points(f)
        assert len(pts) % 2 == 0
        keys = [(q.p.x, q.p.y, q.definers) for q in pts]
        assert keys == sorted(keys)

    def test_depth_at_most_omega(self):
        f = gen_random_discs(GeneratorParams(n=40, seed=9))
        pts = intersection_points(f)
        omega = graph_stats(build_graph(f)).omega
        assert max(q.depth for q in pts) <= omega

    def test_grid_matches_scan(self):
        for seed in (0, 1, 2):
            f = gen_random_discs(GeneratorParams(n=60, seed=seed))
            assert (intersection_points(f, method="scan")
                    == intersection_points(f, method="grid"))


class TestUnionComplexity:
    def test_two_crossing_discs(self):
        assert union_complexity(two_crossing_discs()) == 2

    def test_equilateral_triple_attains_bound(self):
        f = equilateral_triple()
        # derivation: each pairwise crossing point must lie outside the
        # remaining circle for all six points to sit on the union boundary
        for i, j in combinations(range(3), 2):
            k = 3 - i - j
            other = f.members[k]
            for p in circle_circle_intersections(f.members[i], f.members[j], f.tol):
                assert math.hypot(p.x - other.cx, p.y - other.cy) > other.r + 1e-6
        assert union_complexity(f) == 6 == 6 * f.n - 12

    def test_kedem_bound_on_random_families(self):
        for seed in range(5):
            f = gen_random_discs(GeneratorParams(n=50, seed=seed))
            assert union_complexity(f) <= 6 * f.n - 12

    def test_kind_error_for_curves(self):
        with pytest.raises(KindError):
            union_complexity(gen_lines_parabolas(4, 2))


class TestDepthProfile:
    def test_two_crossing_discs(self):
        profile = depth_profile(two_crossing_discs())
        assert profile.g == {2: 2}
        assert profile.z_count == 2

    def test_disjoint_discs_all_zero(self):
        members = tuple(Circle(i, 5.0 * i, 0.0, 1.0) for i in range(4))
        f = Family(FamilyKind.DISCS, members,
                   default_tolerance(FamilyKind.DISCS, members))
        profile = depth_profile(f)
        assert profile.z_count == 0
        assert all(v == 0 for v in profile.g.values())

    def test_monotone_and_consistent(self):
        f = gen_random_discs(GeneratorParams(n=40, seed=2))
        pts = intersection_points(f)
        profile = depth_profile(f, pts)
        values = [profile.g[k] for k in sorted(profile.g)]
        assert values == sorted(values)
        assert profile.g[2] == union_complexity(f, pts)
        assert profile.g[profile.max_depth] == profile.z_count


class TestDepthBounds:
    def test_equilateral_triple_at_equality(self):
        rep = check_depth_bounds(equilateral_triple())
        assert rep.union_complexity == 6
        assert rep.union_bound == 6
        assert rep.union_ok
        assert rep.passed

    def test_random_family_passes_soft_cap(self):
        f = gen_random_discs(GeneratorParams(n=100, seed=1))
        rep = check_depth_bounds(f)
        assert rep.passed
        assert all(row.ok for row in rep.rows)
        assert rep.flags == 0

    def test_small_family_exempt_from_union_bound(self):
        rep = check_depth_bounds(two_crossing_discs())
        assert rep.union_bound is None
        assert rep.union_ok is None
        assert rep.passed

    def test_omega_cross_check_recorded(self):
        f = gen_random_discs(GeneratorParams(n=30, seed=3))
        omega = graph_stats(build_graph(f)).omega
        rep = check_depth_bounds(f, omega=omega)
        assert rep.depth_le_omega


class TestCommonPoint:
    def test_generated_family_satisfies_bound(self):
        o = Point(0.0, 0.0)
        f = gen_common_point_discs(GeneratorParams(n=50, seed=7), o)
        rep = check_common_point_bound(f, o)
        assert rep.all_members_contain
        assert rep.passed
        for row in rep.rows:
            assert row.g <= 2 * (row.k - 1) * f.n

    def test_witness_detection(self):
        o = Point(3.0, -2.0)
        f = gen_common_point_discs(GeneratorParams(n=30, seed=11), o)
        w = find_common_point(f)
        assert w is not None
        rep = check_common_point_bound(f, w)
        assert rep.passed

    def test_no_witness_for_disjoint_discs(self):
        members = tuple(Circle(i, 5.0 * i, 0.0, 1.0) for i in range(3))
        f = Family(FamilyKind.DISCS, members,
                   default_tolerance(FamilyKind.DISCS, members))
        assert find_common_point(f, iterations=200) is None


class TestMaskedUnionComplexity:
    def test_matches_direct_recomputation(self):
        f = gen_random_discs(GeneratorParams(n=30, seed=5))
        inc = point_incidence(f)
        rng = np.random.default_rng(99)
        for _ in range(25):
            picked = rng.random(f.n) < 0.5
            ids = np.nonzero(picked)[0]
            fast = masked_union_complexity(inc, picked)
            if len(ids) == 0:
                assert fast == 0
                continue
            members = tuple(
                Circle(new, f.members[old].cx, f.members[old].cy, f.members[old].r)
                for new, old in enumerate(ids))
            sub = Family(FamilyKind.DISCS, members, f.tol)
            assert fast == (union_complexity(sub) if len(ids) >= 2 else 0)

    def test_full_mask_is_union_complexity(self):
        f = gen_random_discs(GeneratorParams(n=25, seed=8))
        inc = point_incidence(f)
        assert masked_union_complexity(inc, np.ones(f.n, bool)) == union_complexity(f)

    def test_hereditary_union_bound(self):
        f = gen_random_discs(GeneratorParams(n=60, seed=17))
        inc = point_incidence(f)
        rng = np.random.default_rng(1)
        for _ in range(200):
            picked = rng.random(f.n) < 0.5
            n_sub = int(picked.sum())
            if n_sub >= 3:
                assert masked_union_complexity(inc, picked) <= 6 * n_sub - 12
