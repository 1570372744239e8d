from unionbench import (
    GeneratorParams,
    build_ledger,
    depth_profile,
    gen_lines_parabolas,
    gen_random_discs,
    intersection_points,
    run_trials,
)
from unionbench.figures import (
    charge_figure,
    depth_profile_figure,
    family_figure,
    save_figure,
    trials_figure,
)


def test_family_and_profile_figures(tmp_path):
    f = gen_random_discs(GeneratorParams(n=10, seed=1))
    pts = intersection_points(f)
    save_figure(family_figure(f, pts), tmp_path / "family.png")
    save_figure(depth_profile_figure(depth_profile(f, pts), f.n),
                tmp_path / "profile.png")
    assert (tmp_path / "family.png").stat().st_size > 0
    assert (tmp_path / "profile.png").stat().st_size > 0


def test_curve_family_figure(tmp_path):
    f = gen_lines_parabolas(7, 4)
    save_figure(family_figure(f, intersection_points(f)), tmp_path / "curves.png")
    assert (tmp_path / "curves.png").stat().st_size > 0


def test_charge_figure(tmp_path):
    f = gen_lines_parabolas(7, 4)
    save_figure(charge_figure(build_ledger(f, 4)), tmp_path / "charges.png")
    assert (tmp_path / "charges.png").stat().st_size > 0


def test_trials_figure(tmp_path):
    f = gen_random_discs(GeneratorParams(n=8, seed=2))
    report = run_trials(f, 0.4, 500, seed=3, keep_trial_values=True)
    save_figure(trials_figure(report), tmp_path / "hist.png")
    assert (tmp_path / "hist.png").stat().st_size > 0
