"""Intersection graph of a disc family: exact clique number, degeneracy, coloring.

Edges are classified as boundary crossings or containments; under general
position the center distance is bounded away from both thresholds, so the
classification is unambiguous. The clique number is computed exactly by
branch and bound (greedy-coloring upper bounds for pruning); it sits on
the right-hand side of every checked inequality, so a heuristic would not
do. All tie-breaking is by smallest member id, making outputs
deterministic.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import BudgetExceeded, KindError
from .families import Family, FamilyKind
from .geom_core import circle_arrays

E = math.e
DEFAULT_NODE_BUDGET = 2_000_000


class EdgeClass(str, enum.Enum):
    CROSSING = "crossing"
    CONTAINMENT = "containment"


@dataclass
class IntersectionGraph:
    """Undirected graph over member ids 0..n-1 with per-edge classification."""

    n: int
    edge_class: dict[tuple[int, int], EdgeClass]
    adj: list[set[int]] = field(init=False, repr=False)
    masks: list[int] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        adj: list[set[int]] = [set() for _ in range(self.n)]
        masks = [0] * self.n
        for (i, j) in self.edge_class:
            if not (0 <= i < j < self.n):
                raise ValueError(f"bad edge ({i}, {j}) for n={self.n}")
            adj[i].add(j)
            adj[j].add(i)
            masks[i] |= 1 << j
            masks[j] |= 1 << i
        self.adj = adj
        self.masks = masks

    @property
    def m(self) -> int:
        return len(self.edge_class)

    @property
    def crossing_pairs(self) -> int:
        return sum(1 for c in self.edge_class.values() if c is EdgeClass.CROSSING)

    @property
    def containment_pairs(self) -> int:
        return sum(1 for c in self.edge_class.values() if c is EdgeClass.CONTAINMENT)


def build_graph(f: Family) -> IntersectionGraph:
    """Edge iff the closed discs intersect; containment iff one lies inside the other."""
    if f.kind is not FamilyKind.DISCS:
        raise KindError("build_graph is defined for disc families")
    cx, cy, r = circle_arrays(f.members)
    eps = f.tol.eps
    edges: dict[tuple[int, int], EdgeClass] = {}
    if f.n >= 2:
        iu, ju = np.triu_indices(f.n, 1)
        d = np.hypot(cx[iu] - cx[ju], cy[iu] - cy[ju])
        edge = d < r[iu] + r[ju] - eps
        nested = d < np.abs(r[iu] - r[ju]) + eps
        for idx in np.nonzero(edge)[0]:
            i, j = int(iu[idx]), int(ju[idx])
            edges[(i, j)] = EdgeClass.CONTAINMENT if nested[idx] else EdgeClass.CROSSING
    return IntersectionGraph(f.n, edges)


def _greedy_clique_size(g: IntersectionGraph) -> int:
    """Cheap clique lower bound to seed the branch-and-bound search."""
    best = 0
    degrees = [len(g.adj[v]) for v in range(g.n)]
    for start in sorted(range(g.n), key=lambda v: (-degrees[v], v))[:8]:
        clique_mask = 1 << start
        size = 1
        cand = g.masks[start]
        while cand:
            pick = -1
            pick_deg = -1
            q = cand
            while q:
                v = (q & -q).bit_length() - 1
                q &= q - 1
                deg = (cand & g.masks[v]).bit_count()
                if deg > pick_deg:
                    pick, pick_deg = v, deg
            clique_mask |= 1 << pick
            size += 1
            cand &= g.masks[pick]
        best = max(best, size)
    return best


def clique_number(g: IntersectionGraph,
                  node_budget: int = DEFAULT_NODE_BUDGET) -> int:
    """Exact maximum-clique size via branch and bound with coloring bounds."""
    if g.n < 1:
        raise ValueError("graph must have at least one vertex")
    masks = g.masks
    best = max(1, _greedy_clique_size(g))
    calls = 0

    def color_order(cand: int) -> list[tuple[int, int]]:
        # greedy coloring of the candidate set; color is a clique upper bound
        order: list[tuple[int, int]] = []
        color = 0
        p = cand
        while p:
            color += 1
            q = p
            while q:
                v = (q & -q).bit_length() - 1
                q &= ~(masks[v] | (1 << v))
                p &= ~(1 << v)
                order.append((v, color))
        return order

    def expand(size: int, cand: int) -> None:
        nonlocal best, calls
        calls += 1
        if calls > node_budget:
            raise BudgetExceeded(
                f"clique search exceeded {node_budget} nodes (n={g.n})")
        if not cand:
            if size > best:
                best = size
            return
        for v, bound in reversed(color_order(cand)):
            if size + bound <= best:
                return
            expand(size + 1, cand & masks[v])
            cand &= ~(1 << v)

    expand(0, (1 << g.n) - 1)
    return best


def degeneracy_order(g: IntersectionGraph) -> tuple[list[int], int]:
    """Remove minimum-degree vertices (ties by id); reversed removals + col.

    The returned order certifies col: every vertex has fewer than col
    neighbors preceding it.
    """
    n = g.n
    deg = [len(g.adj[v]) for v in range(n)]
    alive = [True] * n
    removal: list[int] = []
    col = 1
    for _ in range(n):
        v = min((u for u in range(n) if alive[u]), key=lambda u: (deg[u], u))
        col = max(col, deg[v] + 1)
        removal.append(v)
        alive[v] = False
        for u in g.adj[v]:
            if alive[u]:
                deg[u] -= 1
    removal.reverse()
    return removal, col


def greedy_color(g: IntersectionGraph, order: list[int]) -> list[int]:
    """First-fit coloring along the given vertex order (0-based colors)."""
    if sorted(order) != list(range(g.n)):
        raise ValueError("order must be a permutation of the vertices")
    colors = [-1] * g.n
    for v in order:
        used = {colors[u] for u in g.adj[v] if colors[u] >= 0}
        c = 0
        while c in used:
            c += 1
        colors[v] = c
    return colors


@dataclass(frozen=True)
class GraphStats:
    n: int
    m: int
    crossing_pairs: int
    containment_pairs: int
    omega: int
    degeneracy_order: tuple[int, ...]
    col: int
    chi_greedy: int

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "crossing_pairs": self.crossing_pairs,
            "containment_pairs": self.containment_pairs,
            "omega": self.omega,
            "col": self.col,
            "chi_greedy": self.chi_greedy,
        }


def graph_stats(g: IntersectionGraph,
                node_budget: int = DEFAULT_NODE_BUDGET) -> GraphStats:
    order, col = degeneracy_order(g)
    colors = greedy_color(g, order)
    return GraphStats(
        n=g.n,
        m=g.m,
        crossing_pairs=g.crossing_pairs,
        containment_pairs=g.containment_pairs,
        omega=clique_number(g, node_budget=node_budget),
        degeneracy_order=tuple(order),
        col=col,
        chi_greedy=max(colors) + 1,
    )


@dataclass(frozen=True)
class EdgeBoundReport:
    """m <= ((c*e/2+1)*omega - 1)*n, plus its two constituents."""

    n: int
    m: int
    omega: int
    c: float
    edge_bound: float
    edges_ok: bool
    crossing_pairs: int
    crossing_bound: float
    crossing_ok: bool
    containment_pairs: int
    containment_bound: float
    containment_ok: bool

    @property
    def passed(self) -> bool:
        return self.edges_ok and self.crossing_ok and self.containment_ok

    def to_dict(self) -> dict:
        return {
            "bound": self.edge_bound,
            "pass": self.passed,
            "edges_pass": self.edges_ok,
            "crossing_bound": self.crossing_bound,
            "crossing_pass": self.crossing_ok,
            "containment_bound": self.containment_bound,
            "containment_pass": self.containment_ok,
            "c": self.c,
        }


def check_edge_bound(f: Family, c: float = 6.0,
                     stats: GraphStats | None = None,
                     node_budget: int = DEFAULT_NODE_BUDGET) -> EdgeBoundReport:
    """Check the edge-count bound for hereditary union complexity c*|F'|."""
    if f.kind is not FamilyKind.DISCS:
        raise KindError("check_edge_bound is defined for disc families")
    if stats is None:
        stats = graph_stats(build_graph(f), node_budget=node_budget)
    n, omega = stats.n, stats.omega
    edge_bound = ((c * E / 2.0 + 1.0) * omega - 1.0) * n
    crossing_bound = (c * E / 2.0) * omega * n
    containment_bound = float((omega - 1) * n)
    return EdgeBoundReport(
        n=n, m=stats.m, omega=omega, c=c,
        edge_bound=edge_bound, edges_ok=stats.m <= edge_bound,
        crossing_pairs=stats.crossing_pairs,
        crossing_bound=crossing_bound,
        crossing_ok=stats.crossing_pairs <= crossing_bound,
        containment_pairs=stats.containment_pairs,
        containment_bound=containment_bound,
        containment_ok=stats.containment_pairs <= containment_bound,
    )


@dataclass(frozen=True)
class ColoringBoundReport:
    """chi_greedy <= col < (6e+2)*omega < 19*omega."""

    omega: int
    col: int
    chi_greedy: int
    col_bound: float
    greedy_le_col: bool
    col_lt_bound: bool
    col_lt_19omega: bool

    @property
    def passed(self) -> bool:
        return self.greedy_le_col and self.col_lt_bound and self.col_lt_19omega

    def to_dict(self) -> dict:
        return {
            "col_over_omega": self.col / self.omega,
            "pass": self.passed,
            "col_bound": self.col_bound,
            "chi_greedy_le_col": self.greedy_le_col,
            "col_lt_bound": self.col_lt_bound,
            "col_lt_19omega": self.col_lt_19omega,
        }


def check_coloring_bound(f: Family,
                         stats: GraphStats | None = None,
                         node_budget: int = DEFAULT_NODE_BUDGET) -> ColoringBoundReport:
    if f.kind is not FamilyKind.DISCS:
        raise KindError("check_coloring_bound is defined for disc families")
    if stats is None:
        stats = graph_stats(build_graph(f), node_budget=node_budget)
    col_bound = (6.0 * E + 2.0) * stats.omega
    return ColoringBoundReport(
        omega=stats.omega,
        col=stats.col,
        chi_greedy=stats.chi_greedy,
        col_bound=col_bound,
        greedy_le_col=stats.chi_greedy <= stats.col,
        col_lt_bound=stats.col < col_bound,
        col_lt_19omega=stats.col < 19 * stats.omega,
    )
