"""Random-sampling experiment over a disc family and its deterministic core.

Each member is kept with probability p; the observable is the number of
intersection points on the boundary of the sampled union. A point with
depth d survives iff both definers are picked and none of the d-2 other
containing members is, so the exact expectation is

    E = sum over points of p^2 * (1-p)^(depth-2),

computable from the depth multiset without any sampling. Monte Carlo
trials validate that closed form and exercise the machinery end to end;
per-trial seeds are derived as seed XOR trial index, so results do not
depend on scheduling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .depth import IntersectionPoint, PointIncidence, point_incidence
from .errors import KindError, ParameterError
from .families import Family, FamilyKind
from .graph import DEFAULT_NODE_BUDGET, build_graph, graph_stats

E = math.e
UNION_C = 6.0
_REL_TOL = 1e-12  # comparison slack for the exact-arithmetic inequalities


def expectation_from_depths(depths: np.ndarray, p: float) -> float:
    """sum of p^2 (1-p)^(d-2) over the depth multiset; accepts p in (0, 1]."""
    if not (0.0 < p <= 1.0):
        raise ParameterError(f"p must be in (0, 1], got {p}")
    if len(depths) == 0:
        return 0.0
    d = np.asarray(depths, dtype=np.int64)
    return float(np.sum(p * p * np.power(1.0 - p, d - 2)))


def closed_form_expectation(f: Family, p: float,
                            inc: PointIncidence | None = None) -> float:
    """Exact expected union complexity of a p-sample of the family."""
    if f.kind is not FamilyKind.DISCS:
        raise KindError("closed_form_expectation is defined for disc families")
    if inc is None:
        inc = point_incidence(f)
    return expectation_from_depths(inc.depths, p)


@dataclass
class SampleReport:
    p: float
    trials: int
    mean_S: float
    ci_halfwidth: float
    exact_E: float
    lower_bound: float      # |Z| p^2 (1-p)^(omega-2)
    upper_bound: float      # c p n
    per_trial_violations: int
    trial_values: np.ndarray | None = None

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "trials": self.trials,
            "mean_S": self.mean_S,
            "ci_halfwidth": self.ci_halfwidth,
            "exact_E": self.exact_E,
            "lower_bound": self.lower_bound,
            "upper_bound": self.upper_bound,
            "per_trial_violations": self.per_trial_violations,
        }


def _lower_bound(z_count: int, p: float, omega: int) -> float:
    if z_count == 0:
        return 0.0
    return z_count * p * p * (1.0 - p) ** (omega - 2)


def run_trials(f: Family, p: float, trials: int, seed: int,
               omega: int | None = None,
               inc: PointIncidence | None = None,
               c: float = UNION_C,
               keep_trial_values: bool = False,
               node_budget: int = DEFAULT_NODE_BUDGET) -> SampleReport:
    """Monte Carlo sampling of subfamilies, reusing the full-family points.

    Per trial, a point survives on the sample's union boundary iff both
    definers are picked and no other containing member is; this avoids
    recomputing arrangements. Each trial also checks its sample against the
    6n*-12 union bound (n* >= 3) and the report counts violations.
    """
    if f.kind is not FamilyKind.DISCS:
        raise KindError("run_trials is defined for disc families")
    if not (0.0 < p < 1.0):
        raise ParameterError(f"p must be in (0, 1), got {p}")
    if trials < 1:
        raise ParameterError(f"trials must be >= 1, got {trials}")
    if seed < 0:
        raise ParameterError(f"seed must be >= 0, got {seed}")
    if inc is None:
        inc = point_incidence(f)
    if omega is None:
        omega = graph_stats(build_graph(f), node_budget=node_budget).omega
    n = f.n
    picks = np.empty((trials, n), dtype=bool)
    for t in range(trials):
        picks[t] = np.random.default_rng(seed ^ t).random(n) < p
    surviving = np.zeros(trials, dtype=np.int64)
    per_point = inc.containers_per_point() if inc.z_count else []
    for idx in range(inc.z_count):
        alive = picks[:, inc.defs_a[idx]] & picks[:, inc.defs_b[idx]]
        others = per_point[idx]
        if others.size:
            alive = alive & ~picks[:, others].any(axis=1)
        surviving += alive
    n_star = picks.sum(axis=1)
    violations = int(((n_star >= 3) & (surviving > 6 * n_star - 12)).sum())
    mean = float(surviving.mean())
    sd = float(surviving.std(ddof=1)) if trials > 1 else 0.0
    ci = 1.96 * sd / math.sqrt(trials)
    return SampleReport(
        p=p,
        trials=trials,
        mean_S=mean,
        ci_halfwidth=ci,
        exact_E=expectation_from_depths(inc.depths, p),
        lower_bound=_lower_bound(inc.z_count, p, omega),
        upper_bound=c * p * n,
        per_trial_violations=violations,
        trial_values=surviving if keep_trial_values else None,
    )


@dataclass(frozen=True)
class SamplingChainReport:
    """Deterministic chain at p = 1/omega:

    |Z| p^2 (1-p)^(omega-2)  <=  E  <=  c p n,   and   |Z| <= c e omega n.
    """

    n: int
    omega: int
    p: float
    z_count: int
    lower_bound: float
    exact_e: float
    sample_upper: float
    z_bound: float
    lower_le_exact: bool
    exact_le_upper: bool
    z_le_bound: bool
    vacuous: bool  # omega < 2 forces |Z| = 0; nothing to check

    @property
    def passed(self) -> bool:
        return self.lower_le_exact and self.exact_le_upper and self.z_le_bound

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "omega": self.omega,
            "p": self.p,
            "z_count": self.z_count,
            "lower_bound": self.lower_bound,
            "exact_E": self.exact_e,
            "sample_upper": self.sample_upper,
            "z_bound": self.z_bound,
            "lower_le_exact": self.lower_le_exact,
            "exact_le_upper": self.exact_le_upper,
            "z_le_bound": self.z_le_bound,
            "vacuous": self.vacuous,
            "pass": self.passed,
        }


def check_sampling_chain(f: Family, c: float = UNION_C,
                         inc: PointIncidence | None = None,
                         omega: int | None = None,
                         node_budget: int = DEFAULT_NODE_BUDGET) -> SamplingChainReport:
    """Verify the sampling inequality chain with p = 1/omega, no randomness."""
    if f.kind is not FamilyKind.DISCS:
        raise KindError("check_sampling_chain is defined for disc families")
    if inc is None:
        inc = point_incidence(f)
    if omega is None:
        omega = graph_stats(build_graph(f), node_budget=node_budget).omega
    n = f.n
    z = inc.z_count
    if omega < 2:
        # no intersecting pair exists, so Z is empty and the chain is vacuous
        return SamplingChainReport(
            n=n, omega=omega, p=1.0, z_count=z,
            lower_bound=0.0, exact_e=0.0, sample_upper=c * n,
            z_bound=c * E * omega * n,
            lower_le_exact=True, exact_le_upper=True, z_le_bound=z == 0,
            vacuous=True)
    p = 1.0 / omega
    lower = _lower_bound(z, p, omega)
    exact = expectation_from_depths(inc.depths, p)
    upper = c * p * n
    z_bound = c * E * omega * n
    slack = _REL_TOL * max(1.0, abs(exact), abs(upper))
    return SamplingChainReport(
        n=n, omega=omega, p=p, z_count=z,
        lower_bound=lower, exact_e=exact, sample_upper=upper, z_bound=z_bound,
        lower_le_exact=lower <= exact + slack,
        exact_le_upper=exact <= upper + slack,
        z_le_bound=z <= z_bound,
        vacuous=False)
