import numpy as np
import pytest

from unionbench import (
    CertificateFailure,
    ChargeColor,
    Family,
    FamilyKind,
    GeneratorParams,
    KindError,
    ParameterError,
    QuadCurve,
    Tolerance,
    build_ledger,
    certificates_all_k,
    gen_lines_parabolas,
    gen_random_curves,
    gen_random_discs,
    intersection_points,
    qualifying_points,
    verify_certificate,
)


def parabola_and_line():
    # y = x^2 (curve 0) and y = 1 (curve 1), crossing at x = -1 and x = +1
    members = (QuadCurve(0, 1.0, 0.0, 0.0), QuadCurve(1, 0.0, 0.0, 1.0))
    return Family(FamilyKind.CURVES, members, Tolerance(1e-9))


class TestQualifyingPoints:
    def test_figure_construction_counts(self):
        f = gen_lines_parabolas(7, 4)
        assert len(qualifying_points(f, 4)) == 24

    def test_k_two_counts_points_above_nothing(self):
        f = gen_lines_parabolas(10, 3)
        pts = qualifying_points(f, 2)
        assert all(q.above_count == 0 for q in pts)

    def test_two_curves_both_points_qualify(self):
        assert len(qualifying_points(parabola_and_line(), 2)) == 2

    def test_parameter_and_kind_errors(self):
        f = parabola_and_line()
        with pytest.raises(ParameterError):
            qualifying_points(f, 1)
        with pytest.raises(ParameterError):
            qualifying_points(f, 3)
        with pytest.raises(KindError):
            qualifying_points(gen_random_discs(GeneratorParams(n=3, seed=0)), 2)


class TestBuildLedger:
    def test_parabola_and_line_charges(self):
        ledger = build_ledger(parabola_and_line(), 2)
        by_x = {round(rec.point.p.x): rec for rec in ledger.records}
        # leftmost point: parabola is above on the left, so red goes to it
        assert by_x[-1].color is ChargeColor.RED
        assert by_x[-1].charged_curve == 0
        # right point: blue goes to the curve below on the left, the parabola
        assert by_x[1].color is ChargeColor.BLUE
        assert by_x[1].charged_curve == 0
        assert ledger.per_curve[0] == (1, 1)
        assert ledger.per_curve[1] == (0, 0)

    def test_single_root_pair_is_red_to_upper_left(self):
        members = (QuadCurve(0, 1.0, 0.0, 0.0), QuadCurve(1, 1.0, -4.0, 4.0))
        f = Family(FamilyKind.CURVES, members, Tolerance(1e-9))
        ledger = build_ledger(f, 2)
        assert len(ledger.records) == 1
        rec = ledger.records[0]
        # at x = 0 (left of the crossing), (x-2)^2 = 4 sits above x^2 = 0
        assert rec.color is ChargeColor.RED
        assert rec.charged_curve == 1

    def test_figure_construction_ledger_size(self):
        f = gen_lines_parabolas(7, 4)
        ledger = build_ledger(f, 4)
        assert ledger.qualifying_count == 24
        assert len(ledger.records) == 24

    def test_each_qualifying_point_charged_exactly_once(self):
        f = gen_random_curves(GeneratorParams(n=20, seed=13))
        pts = intersection_points(f)
        for k in (2, 5, 20):
            ledger = build_ledger(f, k, pts)
            expected = {(q.p.x, q.p.y, q.definers)
                        for q in pts if q.above_count <= k - 2}
            charged = {(rec.point.p.x, rec.point.p.y, rec.point.definers)
                       for rec in ledger.records}
            assert charged == expected
            assert len(ledger.records) == len(expected)

    def test_red_charge_reconstruction(self):
        # a red charge at X means the charged curve stays strictly above the
        # other definer at every abscissa left of X
        f = gen_random_curves(GeneratorParams(n=12, seed=21))
        ledger = build_ledger(f, f.n)
        for rec in ledger.records:
            if rec.color is not ChargeColor.RED:
                continue
            i, j = rec.point.definers
            other = j if rec.charged_curve == i else i
            upper = f.members[rec.charged_curve]
            lower = f.members[other]
            for offset in (1e-6, 0.5, 2.0, 10.0):
                x = rec.point.p.x - offset
                assert upper.y_at(x) > lower.y_at(x)


class TestCertificates:
    def test_two_curve_certificate(self):
        f = parabola_and_line()
        cert = verify_certificate(build_ledger(f, 2), f)
        assert cert.passed
        assert cert.max_red <= 1 and cert.max_blue <= 1

    def test_construction_certificates(self):
        for k, n in ((2, 2), (3, 10), (4, 7)):
            f = gen_lines_parabolas(n, k)
            cert = verify_certificate(build_ledger(f, k), f)
            assert cert.qualifying_count == 2 * (k - 1) * (n - k + 1)
            assert cert.qualifying_count <= 2 * (k - 1) * n

    def test_random_family_all_k(self):
        f = gen_random_curves(GeneratorParams(n=50, seed=11))
        reports = certificates_all_k(f)
        assert len(reports) == 49
        assert all(rep.passed for rep in reports)

    def test_all_k_matches_per_k_ledgers(self):
        f = gen_random_curves(GeneratorParams(n=15, seed=2))
        pts = intersection_points(f)
        reports = {rep.k: rep for rep in certificates_all_k(f, pts)}
        for k in (2, 7, 15):
            ledger = build_ledger(f, k, pts)
            cert = verify_certificate(ledger, f)
            assert reports[k].qualifying_count == cert.qualifying_count
            assert reports[k].max_red == cert.max_red
            assert reports[k].max_blue == cert.max_blue

    def test_tightness_ratio_approaches_one(self):
        k, n = 3, 200
        f = gen_lines_parabolas(n, k)
        cert = verify_certificate(build_ledger(f, k), f)
        assert cert.qualifying_count / (2 * (k - 1) * n) >= 0.9

    def test_forged_ledger_fails(self):
        f = parabola_and_line()
        ledger = build_ledger(f, 2)
        ledger.per_curve[0] = (5, 0)
        with pytest.raises(CertificateFailure) as info:
            verify_certificate(ledger, f)
        assert info.value.curve_id == 0
