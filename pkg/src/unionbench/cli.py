"""Command-line entry point: generate, analyze, sample, charge, verify.

Reports are JSON (CSV for tabular profiles and ledgers) and embed the tool
version, the resolved configuration, and the seed, so reruns reproduce
outputs byte-identically apart from the timestamp field. Exit codes:
0 pass, 1 bound or certificate violation, 2 usage/input error,
3 generation failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from .charging import build_ledger, certificates_all_k, verify_certificate
from .depth import (
    check_common_point_bound,
    check_depth_bounds,
    depth_profile,
    find_common_point,
    intersection_points,
    point_incidence,
    union_complexity,
)
from .errors import (
    BudgetExceeded,
    CertificateFailure,
    Error,
    FormatError,
    GenerationFailure,
    KindError,
    ParameterError,
    ValidationError,
)
from .families import (
    Family,
    FamilyKind,
    GeneratorParams,
    Tolerance,
    gen_common_point_discs,
    gen_lines_parabolas,
    gen_random_curves,
    gen_random_discs,
    load_family,
    save_family,
)
from .geom_core import Point
from .graph import build_graph, check_coloring_bound, check_edge_bound, graph_stats
from .sampling import check_sampling_chain, run_trials

PASS = 0
VIOLATION = 1
USAGE = 2
GENERATION = 3


def _envelope(config: dict, payload: dict) -> dict:
    return {
        "tool": "unionbench",
        "version": __version__,
        "timestamp": datetime.now(timezone.utc).isoformat(),
        "config": config,
        **payload,
    }


def _write_json(doc: dict, path: str | None) -> None:
    text = json.dumps(doc, indent=2) + "\n"
    if path:
        Path(path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _parse_point(text: str) -> Point:
    try:
        x, y = (float(part) for part in text.split(","))
    except ValueError as exc:
        raise ParameterError(f"expected X,Y but got {text!r}") from exc
    return Point(x, y)


def _family_figures(f: Family, points, outdir: str) -> None:
    from . import figures

    directory = Path(outdir)
    directory.mkdir(parents=True, exist_ok=True)
    figures.save_figure(figures.family_figure(f, points), directory / "family.png")


def cmd_generate(args: argparse.Namespace) -> int:
    config = {
        "command": "generate", "generator": args.generator, "n": args.n,
        "k": args.k, "seed": args.seed, "box": args.box,
        "r_min": args.r_min, "r_max": args.r_max, "margin": args.margin,
        "point": args.point, "eps": args.eps, "output": args.output,
    }
    if args.generator == "lines-parabolas":
        if args.k is None:
            raise ParameterError("lines-parabolas requires --k")
        family = gen_lines_parabolas(args.n, args.k)
    else:
        params = GeneratorParams(
            n=args.n, seed=args.seed, box=args.box,
            r_min=args.r_min, r_max=args.r_max, margin=args.margin)
        if args.generator == "random-discs":
            family = gen_random_discs(params)
        elif args.generator == "common-point-discs":
            family = gen_common_point_discs(params, _parse_point(args.point))
        else:
            family = gen_random_curves(params)
    if args.eps is not None:
        family = Family(family.kind, family.members, Tolerance(args.eps),
                        label=family.label)
    save_family(family, args.output,
                meta={"tool": "unionbench", "version": __version__, "config": config})
    x0, y0, x1, y1 = family.bbox()
    print(f"kind={family.kind.value} n={family.n} eps={family.tol.eps:g} "
          f"bbox=[{x0:.3g},{y0:.3g},{x1:.3g},{y1:.3g}] -> {args.output}")
    if args.figures:
        _family_figures(family, None, args.figures)
    return PASS


def cmd_analyze(args: argparse.Namespace) -> int:
    config = {
        "command": "analyze", "input": args.family, "output": args.output,
        "csv": args.csv, "c": args.c, "common_point": args.common_point,
        "node_budget": args.node_budget,
    }
    family = load_family(args.family)
    if family.kind is not FamilyKind.DISCS:
        print("analyze expects a disc family; use `charge` for curve families",
              file=sys.stderr)
        return USAGE
    points = intersection_points(family)
    stats = graph_stats(build_graph(family), node_budget=args.node_budget)
    edge_rep = check_edge_bound(family, c=args.c, stats=stats)
    color_rep = check_coloring_bound(family, stats=stats)
    depth_rep = check_depth_bounds(family, points=points, omega=stats.omega)
    profile = depth_profile(family, points)

    common = None
    if args.common_point != "none":
        witness = (find_common_point(family) if args.common_point == "auto"
                   else _parse_point(args.common_point))
        if witness is not None:
            report = check_common_point_bound(family, witness, points=points)
            if args.common_point == "auto" and not report.all_members_contain:
                report = None  # detection failed quietly; not a violation
            common = report

    failures = []
    if not edge_rep.passed:
        failures.append("edge-count bound ((c*e/2+1)*omega-1)*n")
    if not color_rep.passed:
        failures.append("coloring bound col < (6e+2)*omega")
    if depth_rep.union_ok is False:
        failures.append("union complexity bound 6n-12")
    if any(row.hard_fail for row in depth_rep.rows):
        failures.append("depth-profile hard bound 6e*k*n")
    if common is not None and not common.passed:
        failures.append("common-point bound 2(k-1)n")

    doc = _envelope(config, {
        "family": {"kind": family.kind.value, "label": family.label,
                   "n": family.n, "eps": family.tol.eps},
        "stats": {
            **stats.to_dict(),
            "bounds": {
                "thm1": edge_rep.to_dict(),
                "corollary": color_rep.to_dict(),
            },
        },
        "depth": depth_rep.to_dict(),
        "common_point": common.to_dict() if common is not None else None,
        "violations": failures,
        "pass": not failures,
    })
    _write_json(doc, args.output)
    if args.output:
        flag_note = f", {depth_rep.flags} flagged ratio(s)" if depth_rep.flags else ""
        print(f"n={family.n} m={stats.m} omega={stats.omega} col={stats.col} "
              f"union={depth_rep.union_complexity} "
              f"{'PASS' if not failures else 'FAIL'}{flag_note} -> {args.output}")
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["k", "g"])
            for k in sorted(profile.g):
                writer.writerow([k, profile.g[k]])
    if args.figures:
        from . import figures

        directory = Path(args.figures)
        directory.mkdir(parents=True, exist_ok=True)
        figures.save_figure(figures.family_figure(family, points),
                            directory / "family.png")
        figures.save_figure(figures.depth_profile_figure(profile, family.n),
                            directory / "depth_profile.png")
    if failures:
        print("violated: " + "; ".join(failures), file=sys.stderr)
        return VIOLATION
    return PASS


def cmd_sample(args: argparse.Namespace) -> int:
    config = {
        "command": "sample", "input": args.family, "output": args.output,
        "p": args.p, "trials": args.trials, "seed": args.seed, "c": args.c,
        "node_budget": args.node_budget,
    }
    family = load_family(args.family)
    if family.kind is not FamilyKind.DISCS:
        print("sample expects a disc family", file=sys.stderr)
        return USAGE
    inc = point_incidence(family)
    stats = graph_stats(build_graph(family), node_budget=args.node_budget)
    if args.p == "auto":
        if stats.omega < 2:
            print("--p auto needs omega >= 2 (family has no intersecting pair)",
                  file=sys.stderr)
            return USAGE
        p = 1.0 / stats.omega
    else:
        try:
            p = float(args.p)
        except ValueError:
            print(f"--p must be a number or 'auto', got {args.p!r}", file=sys.stderr)
            return USAGE
        if not (0.0 < p < 1.0):
            print(f"--p must lie strictly between 0 and 1, got {p}", file=sys.stderr)
            return USAGE
    report = run_trials(family, p, args.trials, args.seed,
                        omega=stats.omega, inc=inc, c=args.c,
                        keep_trial_values=bool(args.figures))
    chain = check_sampling_chain(family, c=args.c, inc=inc, omega=stats.omega)
    ok = chain.passed and report.per_trial_violations == 0
    doc = _envelope(config, {
        "family": {"kind": family.kind.value, "label": family.label,
                   "n": family.n, "eps": family.tol.eps},
        "report": report.to_dict(),
        "chain": chain.to_dict(),
        "pass": ok,
    })
    _write_json(doc, args.output)
    if args.output:
        print(f"p={p:g} trials={args.trials} mean={report.mean_S:.6g} "
              f"exact={report.exact_E:.6g} {'PASS' if ok else 'FAIL'} -> {args.output}")
    if args.figures:
        from . import figures

        directory = Path(args.figures)
        directory.mkdir(parents=True, exist_ok=True)
        figures.save_figure(figures.trials_figure(report),
                            directory / "sample_hist.png")
    if not ok:
        print("sampling chain or per-trial union bound violated", file=sys.stderr)
        return VIOLATION
    return PASS


def _write_ledger_csv(ledger, path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["point_x", "point_y", "definer_a", "definer_b",
                         "above_count", "charged_curve", "color"])
        for rec in ledger.records:
            writer.writerow([
                repr(rec.point.p.x), repr(rec.point.p.y),
                rec.point.definers[0], rec.point.definers[1],
                rec.point.above_count, rec.charged_curve, rec.color.value])


def cmd_charge(args: argparse.Namespace) -> int:
    config = {
        "command": "charge", "input": args.family, "output": args.output,
        "csv": args.csv, "k": args.k,
    }
    family = load_family(args.family)
    if family.kind is not FamilyKind.CURVES:
        print("charge expects a curve family; use `analyze` for disc families",
              file=sys.stderr)
        return USAGE
    points = intersection_points(family)
    if args.k == "all":
        try:
            certs = certificates_all_k(family, points)
        except CertificateFailure as exc:
            print(f"certificate failure: {exc}", file=sys.stderr)
            return VIOLATION
        if args.csv:
            base = Path(args.csv)
            for cert in certs:
                ledger = build_ledger(family, cert.k, points)
                _write_ledger_csv(ledger, base.with_name(
                    f"{base.stem}_k{cert.k}{base.suffix or '.csv'}"))
        doc = _envelope(config, {
            "family": {"kind": family.kind.value, "label": family.label,
                       "n": family.n, "eps": family.tol.eps},
            "k": "all",
            "certificates": [cert.to_dict() for cert in certs],
            "pass": all(cert.passed for cert in certs),
        })
        _write_json(doc, args.output)
        if args.output:
            print(f"{len(certs)} certificates, all PASS -> {args.output}")
        return PASS
    try:
        k = int(args.k)
    except ValueError:
        print(f"--k must be an integer or 'all', got {args.k!r}", file=sys.stderr)
        return USAGE
    ledger = build_ledger(family, k, points)
    try:
        cert = verify_certificate(ledger, family)
    except CertificateFailure as exc:
        print(f"certificate failure: {exc}", file=sys.stderr)
        return VIOLATION
    if args.csv:
        _write_ledger_csv(ledger, args.csv)
    doc = _envelope(config, {
        "family": {"kind": family.kind.value, "label": family.label,
                   "n": family.n, "eps": family.tol.eps},
        "certificate": cert.to_dict(),
        "pass": cert.passed,
    })
    _write_json(doc, args.output)
    if args.output:
        print(f"k={k}: {cert.qualifying_count} charges, "
              f"max_red={cert.max_red} max_blue={cert.max_blue} "
              f"{'PASS' if cert.passed else 'FAIL'} -> {args.output}")
    if args.figures:
        from . import figures

        directory = Path(args.figures)
        directory.mkdir(parents=True, exist_ok=True)
        figures.save_figure(figures.charge_figure(ledger),
                            directory / f"charges_k{k}.png")
    return PASS if cert.passed else VIOLATION


def cmd_verify(args: argparse.Namespace) -> int:
    from .acceptance import run_suite

    results = run_suite(seed=args.seed, quick=args.quick,
                        progress=sys.stderr if args.progress else None)
    for res in results:
        print(res.line())
    if args.output:
        doc = _envelope(
            {"command": "verify", "quick": args.quick, "seed": args.seed},
            {"criteria": [res.to_dict() for res in results],
             "pass": all(res.passed for res in results)})
        _write_json(doc, args.output)
    return PASS if all(res.passed for res in results) else VIOLATION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="unionbench",
        description="Workbench for intersection-graph and union-complexity checks "
                    "on disc and quadratic-curve families.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="generate a family file")
    p.add_argument("generator", choices=["random-discs", "common-point-discs",
                                         "lines-parabolas", "random-curves"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=None,
                   help="line count parameter for lines-parabolas (k-1 lines)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--box", type=float, default=10.0)
    p.add_argument("--r-min", type=float, default=0.5)
    p.add_argument("--r-max", type=float, default=2.0)
    p.add_argument("--margin", type=float, default=0.05)
    p.add_argument("--point", default="5,5", help="common point X,Y")
    p.add_argument("--eps", type=float, default=None, help="tolerance override")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--figures", default=None, help="directory for PNG renderings")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("analyze", help="graph stats, depth profile, bound checks")
    p.add_argument("family")
    p.add_argument("-o", "--output", default=None, help="report JSON (default stdout)")
    p.add_argument("--csv", default=None, help="depth profile CSV path")
    p.add_argument("--c", type=float, default=6.0,
                   help="hereditary union-complexity constant")
    p.add_argument("--common-point", default="auto",
                   help="'auto', 'none', or an explicit X,Y witness")
    p.add_argument("--node-budget", type=int, default=2_000_000)
    p.add_argument("--figures", default=None)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("sample", help="seeded sampling experiment")
    p.add_argument("family")
    p.add_argument("--p", default="auto", help="pick probability or 'auto' (= 1/omega)")
    p.add_argument("--trials", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--c", type=float, default=6.0)
    p.add_argument("--node-budget", type=int, default=2_000_000)
    p.add_argument("-o", "--output", default=None)
    p.add_argument("--figures", default=None)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("charge", help="red/blue charge ledger and certificate")
    p.add_argument("family")
    p.add_argument("--k", required=True, help="parameter k in 2..n, or 'all'")
    p.add_argument("-o", "--output", default=None)
    p.add_argument("--csv", default=None, help="ledger CSV path")
    p.add_argument("--figures", default=None)
    p.set_defaults(func=cmd_charge)

    p = sub.add_parser("verify", help="run the acceptance suite")
    p.add_argument("--quick", action="store_true",
                   help="reduced family counts, finishes in under a minute")
    p.add_argument("--seed", type=int, default=None,
                   help="master seed (default: the suite's fixed seed)")
    p.add_argument("--progress", action="store_true",
                   help="print per-criterion progress to stderr")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParameterError as exc:
        print(f"parameter error: {exc}", file=sys.stderr)
        return USAGE
    except (FormatError, ValidationError, KindError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return USAGE
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return USAGE
    except GenerationFailure as exc:
        print(f"generation failure: {exc}", file=sys.stderr)
        return GENERATION
    except BudgetExceeded as exc:
        print(f"search budget exceeded: {exc}", file=sys.stderr)
        return VIOLATION
    except Error as exc:
        print(f"error: {exc}", file=sys.stderr)
        return VIOLATION


if __name__ == "__main__":
    sys.exit(main())
