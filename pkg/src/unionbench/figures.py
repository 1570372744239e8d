"""Optional matplotlib renderings saved next to the report files."""

from __future__ import annotations

import math

import matplotlib
import matplotlib.pyplot as plt
import numpy as np

from .charging import ChargeColor, ChargeLedger
from .depth import DepthProfile, IntersectionPoint
from .families import Family, FamilyKind
from .sampling import SampleReport

matplotlib.rcParams["figure.figsize"] = (6.0, 4.5)


def family_figure(f: Family, points: list[IntersectionPoint] | None = None):
    fig, ax = plt.subplots()
    if f.kind is FamilyKind.DISCS:
        for m in f.members:
            ax.add_patch(plt.Circle((m.cx, m.cy), m.r, fill=False, lw=0.8))
        x0, y0, x1, y1 = f.bbox()
        pad = 0.05 * max(x1 - x0, y1 - y0, 1.0)
        ax.set_xlim(x0 - pad, x1 + pad)
        ax.set_ylim(y0 - pad, y1 + pad)
        ax.set_aspect("equal", adjustable="box")
    else:
        if points:
            xs = [q.p.x for q in points]
            lo, hi = min(xs) - 1.0, max(xs) + 1.0
        else:
            lo, hi = -5.0, 5.0
        grid = np.linspace(lo, hi, 400)
        for m in f.members:
            ax.plot(grid, (m.a * grid + m.b) * grid + m.c, lw=0.8)
        if points:
            ys = [q.p.y for q in points]
            span = max(ys) - min(ys) or 1.0
            ax.set_ylim(min(ys) - 0.2 * span, max(ys) + 0.2 * span)
    if points:
        ax.plot([q.p.x for q in points], [q.p.y for q in points],
                ".", ms=3, color="black")
    ax.set_title(f.label or f"{f.kind.value} family, n={f.n}")
    fig.tight_layout()
    return fig


def depth_profile_figure(profile: DepthProfile, n: int):
    fig, ax = plt.subplots()
    ks = sorted(profile.g)
    gs = [profile.g[k] for k in ks]
    ax.step(ks, gs, where="post", label="g(k)")
    karr = np.array(ks, dtype=float)
    ax.plot(karr, 3.0 * math.e * karr * n, "--", lw=1, label="3e·k·n")
    ax.plot(karr, 6.0 * math.e * karr * n, ":", lw=1, label="6e·k·n")
    ax.set_xlabel("k")
    ax.set_ylabel("points of depth ≤ k")
    ax.legend()
    fig.tight_layout()
    return fig


def charge_figure(ledger: ChargeLedger):
    fig, ax = plt.subplots()
    ids = sorted(ledger.per_curve)
    reds = [ledger.per_curve[i][0] for i in ids]
    blues = [ledger.per_curve[i][1] for i in ids]
    ax.bar(ids, reds, color="firebrick", label="red")
    ax.bar(ids, blues, bottom=reds, color="steelblue", label="blue")
    ax.axhline(ledger.k - 1, color="black", lw=1, ls="--", label="per-color cap k-1")
    ax.set_xlabel("curve id")
    ax.set_ylabel("charges")
    ax.set_title(f"charges at k={ledger.k}: {ledger.qualifying_count} points")
    ax.legend()
    fig.tight_layout()
    return fig


def trials_figure(report: SampleReport):
    if report.trial_values is None:
        raise ValueError("report was built without trial values")
    fig, ax = plt.subplots()
    values = report.trial_values
    bins = np.arange(values.min(), values.max() + 2) - 0.5
    ax.hist(values, bins=bins, density=True, color="lightgray", edgecolor="gray")
    ax.axvline(report.exact_E, color="firebrick", lw=1.5, label="exact E")
    ax.axvline(report.mean_S, color="steelblue", lw=1.0, ls="--", label="sample mean")
    ax.set_xlabel("sample union complexity")
    ax.set_ylabel("frequency")
    ax.set_title(f"p={report.p:g}, {report.trials} trials")
    ax.legend()
    fig.tight_layout()
    return fig


def save_figure(fig, path) -> None:
    fig.savefig(path, dpi=150)
    plt.close(fig)
