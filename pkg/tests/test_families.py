import json
import math

import pytest

from unionbench import (
    Circle,
    Family,
    FamilyKind,
    FormatError,
    GeneratorParams,
    Location,
    ParameterError,
    Point,
    QuadCurve,
    Tolerance,
    ValidationError,
    contains_point,
    curve_curve_intersections,
    gen_common_point_discs,
    gen_lines_parabolas,
    gen_random_curves,
    gen_random_discs,
    load_family,
    save_family,
    validate_family,
)


def test_random_discs_deterministic(tmp_path):
    params = GeneratorParams(n=20, seed=42)
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    save_family(gen_random_discs(params), a)
    save_family(gen_random_discs(params), b)
    assert a.read_bytes() == b.read_bytes()


def test_random_discs_seeds_differ(tmp_path):
    a = gen_random_discs(GeneratorParams(n=20, seed=42))
    b = gen_random_discs(GeneratorParams(n=20, seed=43))
    pa, pb = tmp_path / "a.json", tmp_path / "b.json"
    save_family(a, pa)
    save_family(b, pb)
    assert pa.read_bytes() != pb.read_bytes()
    assert a.members != b.members


def test_single_member_family():
    f = gen_random_discs(GeneratorParams(n=1, seed=0))
    assert f.n == 1
    assert validate_family(f).ok


@pytest.mark.parametrize("build", [
    lambda: gen_random_discs(GeneratorParams(n=12, seed=5)),
    lambda: gen_random_curves(GeneratorParams(n=12, seed=5)),
    lambda: gen_common_point_discs(GeneratorParams(n=12, seed=5), Point(1, 1)),
    lambda: gen_lines_parabolas(9, 4),
], ids=["random-discs", "random-curves", "common-point", "lines-parabolas"])
def test_every_generator_is_deterministic(build, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    save_family(build(), a)
    save_family(build(), b)
    assert a.read_bytes() == b.read_bytes()


def test_generated_families_validate():
    for seed in range(5):
        f = gen_random_discs(GeneratorParams(n=25, seed=seed))
        assert validate_family(f).ok
        fc = gen_random_curves(GeneratorParams(n=15, seed=seed))
        assert validate_family(fc).ok


def test_common_point_members_contain_origin():
    o = Point(0.0, 0.0)
    f = gen_common_point_discs(GeneratorParams(n=50, seed=7), o)
    assert all(contains_point(m, o, f.tol) is Location.INSIDE for m in f.members)


def test_common_point_margin_must_fit_radii():
    with pytest.raises(ParameterError):
        gen_common_point_discs(GeneratorParams(n=3, seed=0, r_min=0.5, margin=0.6),
                               Point(0, 0))


def test_generator_params_validation():
    with pytest.raises(ParameterError):
        GeneratorParams(n=0)
    with pytest.raises(ParameterError):
        GeneratorParams(n=3, r_min=-1.0)
    with pytest.raises(ParameterError):
        GeneratorParams(n=3, r_min=2.0, r_max=1.0)
    with pytest.raises(ParameterError):
        GeneratorParams(n=3, margin=-0.1)


class TestLinesParabolas:
    def test_structure(self):
        f = gen_lines_parabolas(7, 4)
        assert f.n == 7
        assert f.kind is FamilyKind.CURVES
        lines = [m for m in f.members if m.a == 0.0]
        parabolas = [m for m in f.members if m.a != 0.0]
        assert len(lines) == 3 and len(parabolas) == 4
        assert all(0 < m.c < 0.25 for m in lines)

    def test_pairwise_intersection_pattern(self):
        f = gen_lines_parabolas(10, 3)
        lines = [m for m in f.members if m.a == 0.0]
        parabolas = [m for m in f.members if m.a != 0.0]
        for i, a in enumerate(lines):
            for b in lines[i + 1:]:
                assert curve_curve_intersections(a, b, f.tol) == []
        for i, a in enumerate(parabolas):
            for b in parabolas[i + 1:]:
                assert len(curve_curve_intersections(a, b, f.tol)) == 1
        for a in parabolas:
            for b in lines:
                assert len(curve_curve_intersections(a, b, f.tol)) == 2

    def test_parameter_errors(self):
        with pytest.raises(ParameterError):
            gen_lines_parabolas(7, 1)
        with pytest.raises(ParameterError):
            gen_lines_parabolas(3, 4)

    def test_smallest_case(self):
        f = gen_lines_parabolas(2, 2)
        assert f.n == 2


class TestPersistence:
    def test_round_trip_identity(self, tmp_path):
        f = gen_random_discs(GeneratorParams(n=20, seed=42))
        path = tmp_path / "fam.json"
        save_family(f, path)
        assert load_family(path) == f

    def test_round_trip_curves(self, tmp_path):
        f = gen_random_curves(GeneratorParams(n=10, seed=3))
        path = tmp_path / "fam.json"
        save_family(f, path)
        assert load_family(path) == f

    def test_meta_block_ignored(self, tmp_path):
        f = gen_random_discs(GeneratorParams(n=5, seed=1))
        path = tmp_path / "fam.json"
        save_family(f, path, meta={"note": "anything"})
        assert load_family(path) == f

    def test_duplicate_ids_rejected(self, tmp_path):
        doc = {
            "kind": "discs", "label": "", "eps": 1e-9,
            "members": [
                {"id": 0, "cx": 0.0, "cy": 0.0, "r": 1.0},
                {"id": 0, "cx": 5.0, "cy": 0.0, "r": 1.0},
            ],
        }
        path = tmp_path / "dup.json"
        path.write_text(json.dumps(doc))
        with pytest.raises(FormatError):
            load_family(path)

    def test_tangent_circles_rejected(self, tmp_path):
        doc = {
            "kind": "discs", "label": "", "eps": 1e-9,
            "members": [
                {"id": 0, "cx": 0.0, "cy": 0.0, "r": 1.0},
                {"id": 1, "cx": 2.0, "cy": 0.0, "r": 1.0},
            ],
        }
        path = tmp_path / "tangent.json"
        path.write_text(json.dumps(doc))
        with pytest.raises(ValidationError):
            load_family(path)

    def test_truncated_json_rejected(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"kind": "discs", "members": [')
        with pytest.raises(FormatError):
            load_family(path)

    def test_unknown_kind_rejected(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(
            {"kind": "squares", "label": "", "eps": 1e-9, "members": []}))
        with pytest.raises(FormatError):
            load_family(path)

    def test_bad_eps_rejected(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(
            {"kind": "discs", "label": "", "eps": -1.0,
             "members": [{"id": 0, "cx": 0.0, "cy": 0.0, "r": 1.0}]}))
        with pytest.raises(FormatError):
            load_family(path)

    def test_missing_keys_rejected(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"kind": "discs", "members": []}))
        with pytest.raises(FormatError):
            load_family(path)


class TestFamilyInvariants:
    def test_ids_must_be_contiguous(self):
        with pytest.raises(ValueError):
            Family(FamilyKind.DISCS,
                   (Circle(0, 0, 0, 1), Circle(2, 5, 0, 1)),
                   Tolerance(1e-9))

    def test_kind_must_match_members(self):
        with pytest.raises(ValueError):
            Family(FamilyKind.DISCS, (QuadCurve(0, 1, 0, 0),), Tolerance(1e-9))

    def test_eps_must_be_fine_enough(self):
        with pytest.raises(ValueError):
            Family(FamilyKind.DISCS, (Circle(0, 0, 0, 1),), Tolerance(1.0))

    def test_empty_family_rejected(self):
        with pytest.raises(ValueError):
            Family(FamilyKind.DISCS, (), Tolerance(1e-9))

    def test_default_eps_scales_with_extent(self):
        small = gen_random_discs(GeneratorParams(n=5, seed=1, box=1.0, r_min=0.2,
                                                 r_max=0.4))
        large = gen_random_discs(GeneratorParams(n=5, seed=1, box=1000.0, r_min=20,
                                                 r_max=40))
        assert large.tol.eps > small.tol.eps
        assert math.isclose(small.tol.eps / 1e-9,
                            math.hypot(*_extent_sides(small)), rel_tol=1e-12)


def _extent_sides(f):
    x0, y0, x1, y1 = f.bbox()
    return x1 - x0, y1 - y0
