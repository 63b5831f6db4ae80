"""Seed-set expansion main loop.

Each iteration builds a local spectral basis from the current seeds, solves
the minimum-one-norm program, ranks vertices by score, and sweeps
conductance over ranked prefixes.  The seed set is then re-augmented with
the top-ranked vertices (t = expand_step * iteration) and the loop repeats
until the per-iteration minimum conductance turns upward, the seed set hits
its size bound, or the candidate pool is exhausted.  The community returned
is the prefix achieving the lowest conductance seen, truncated either at
the sweep minimum (auto mode) or at a caller-provided size (ground-truth
mode).

Conductance is always measured against the graph passed to detect(): the
sampler's subgraph keeps every edge among sampled vertices, so prefix cut
and volume in the original graph are computed from the original adjacency
directly.  Measuring inside the subgraph instead would degenerate exactly
when detection succeeds (community == subgraph means the complement has
zero volume).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .graph import Graph, conductance, vertex_set
from .lp import SparseIndicatorSolution, rank_vertices, solve_min_one_norm
from .spectra import local_basis
from .walk import SAMPLE_CAP_FACTOR, SAMPLE_STEP_CAP, WalkOperator, sample_subgraph

logger = logging.getLogger(__name__)

SAMPLE_TARGET_DEFAULT = 3000


@dataclass(frozen=True)
class DetectParams:
    """Detection tunables; defaults follow the reference configuration
    (3 walk steps, span dimension 3, expansion step 6, sampling multiplier
    10, sweep bounds 10..100)."""

    walk_steps: int = 3
    span_dim: int = 3
    expand_step: int = 6
    alpha: float = 10.0
    size_min: int = 10
    size_max: int = 100
    max_iters: int = 20
    sweep_window: int = 2
    init_mode: str = "uniform"          # or "degree"
    truncation_mode: str = "auto"       # or "ground_truth"
    sample_target: int | None = None    # defaults to SAMPLE_TARGET_DEFAULT
    sample_step_cap: int = SAMPLE_STEP_CAP
    sample_cap_factor: int = SAMPLE_CAP_FACTOR

    def __post_init__(self):
        if not (1 <= self.size_min < self.size_max):
            raise ValueError("need 1 <= size_min < size_max")
        if self.expand_step < 1 or self.walk_steps < 1 or self.span_dim < 1:
            raise ValueError("expand_step, walk_steps and span_dim must be >= 1")
        if self.max_iters < 1:
            raise ValueError("max_iters must be >= 1")
        if self.init_mode not in ("uniform", "degree", "degree_weighted"):
            raise ValueError(f"unknown init_mode {self.init_mode!r}")
        if self.truncation_mode not in ("auto", "ground_truth"):
            raise ValueError(f"unknown truncation_mode {self.truncation_mode!r}")


@dataclass(frozen=True)
class SweepCurve:
    """Conductance of ranked prefixes over a size range.

    argmin_first is the prefix SIZE of the first relative minimum: the
    smallest size whose conductance drops below its predecessor and stays
    at or below the next `window` values; None when the curve never turns
    upward inside the range.
    """

    sizes: np.ndarray
    phi: np.ndarray
    argmin_first: int | None

    def minimum(self) -> tuple[int, float]:
        """(size, phi) at the first relative minimum, falling back to the
        global minimum (first occurrence) when the curve is monotone."""
        if self.argmin_first is not None:
            i = self.argmin_first - int(self.sizes[0])
        else:
            i = int(np.argmin(self.phi))
        return int(self.sizes[i]), float(self.phi[i])


def _first_relative_minimum(phi: np.ndarray, window: int) -> int | None:
    for i in range(1, phi.shape[0] - 1):
        if phi[i] < phi[i - 1]:
            ahead = phi[i + 1:i + 1 + window]
            if np.all(phi[i] <= ahead):
                return i
    return None


def sweep_conductance(g: Graph, ranked, size_min: int, size_max: int,
                      window: int = 2) -> SweepCurve:
    """Conductance of every prefix set of `ranked` with size in
    [size_min, size_max], computed incrementally (O(deg) per added vertex)
    against graph g."""
    ranked = np.asarray(ranked, dtype=np.int64)
    if size_min < 1 or size_min > size_max:
        raise ValueError("need 1 <= size_min <= size_max")
    if size_max > ranked.shape[0]:
        raise ValueError("size_max exceeds the ranked list")
    head = ranked[:size_max]
    pos = np.full(g.n, g.n, dtype=np.int64)
    pos[head] = np.arange(size_max, dtype=np.int64)
    phi_all = _kernels.prefix_conductance(g.indptr, g.indices, g.degrees, pos,
                                          head, 2 * g.m)
    sizes = np.arange(size_min, size_max + 1, dtype=np.int64)
    phi = phi_all[size_min - 1:]
    idx = _first_relative_minimum(phi, window)
    argmin_first = None if idx is None else int(sizes[idx])
    return SweepCurve(sizes, phi, argmin_first)


def truncate_by_size(ranked, size: int) -> np.ndarray:
    """First `size` ranked vertices as a set; size 0 is an error, a size
    beyond the list clamps with a warning."""
    ranked = np.asarray(ranked, dtype=np.int64)
    if size <= 0:
        raise ValueError("community size must be positive")
    if size > ranked.shape[0]:
        logger.warning("truncation size %d clamped to %d", size, ranked.shape[0])
        size = ranked.shape[0]
    return vertex_set(ranked[:size])


@dataclass(frozen=True)
class StepResult:
    ranked: np.ndarray | None
    curve: SweepCurve | None
    solution: SparseIndicatorSolution


def expansion_step(g_sub: Graph, seeds, params: DetectParams,
                   sweep_graph: Graph | None = None,
                   vertex_map: np.ndarray | None = None,
                   size_min: int | None = None,
                   size_max: int | None = None) -> StepResult:
    """One spectra -> scores -> ranking -> sweep pass on a (sub)graph.

    sweep_graph/vertex_map let the caller measure conductance in a parent
    graph while the spectra and ranking live on the subgraph; both default
    to g_sub itself.  An infeasible score program is propagated in the
    result with ranked and curve set to None.
    """
    seeds = vertex_set(seeds, g_sub.n)
    sg = sweep_graph if sweep_graph is not None else g_sub
    op = WalkOperator.symmetric(g_sub)
    basis = local_basis(op, seeds, params.walk_steps, params.span_dim, params.init_mode)
    sol = solve_min_one_norm(basis, seeds)
    if sol.status != "optimal":
        return StepResult(None, None, sol)
    ranked = rank_vertices(sol)
    sweep_ids = ranked if vertex_map is None else vertex_map[ranked]
    smax = min(size_max if size_max is not None else params.size_max,
               ranked.shape[0], sg.n - 1)
    smin = size_min if size_min is not None else min(params.size_min, smax)
    curve = sweep_conductance(sg, sweep_ids, smin, smax, params.sweep_window)
    return StepResult(ranked, curve, sol)


@dataclass(frozen=True)
class CommunityResult:
    """Detected community plus per-iteration diagnostics.

    members are external labels.  candidates holds each iteration's
    truncated community (same label space) so a benchmarking caller can
    re-score every iteration against a known ground truth.
    """

    members: np.ndarray
    score_vector: np.ndarray
    iterations: int
    chosen_size: int
    phi_at_chosen: float
    sweep_curves: list = field(default_factory=list)
    phi_min_per_iter: list = field(default_factory=list)
    candidates: list = field(default_factory=list)
    seed_counts: list = field(default_factory=list)
    infeasible_lp: bool = False
    sampler_warning: bool = False
    truncation_clamped: bool = False
    seeds_dropped: bool = False


def detect(g: Graph, seeds, params: DetectParams | None = None,
           truth_size: int | None = None) -> CommunityResult:
    """Expand a seed set into a community.

    Auto mode picks each iteration's community at the sweep minimum and
    stops at the first upturn of that minimum across iterations (or at
    max_iters / the size bound / pool exhaustion).  Ground-truth mode
    truncates every iteration at truth_size and keeps iterating until the
    augmented seed set would exceed truth_size.  Either way the reported
    members come from the iteration with the lowest sweep-minimum
    conductance; everything is deterministic given the inputs.
    """
    params = params or DetectParams()
    seeds = vertex_set(seeds, g.n)
    if seeds.size == 0:
        raise ValueError("seed set is empty")
    gt_mode = params.truncation_mode == "ground_truth"
    if gt_mode and truth_size is None:
        raise ValueError("ground_truth mode requires truth_size")

    target = params.sample_target if params.sample_target is not None else SAMPLE_TARGET_DEFAULT
    target = max(target, seeds.size)
    sample = sample_subgraph(g, seeds, target, params.sample_step_cap, params.sample_cap_factor)
    g_sub, vmap = sample.subgraph, sample.vertices
    seeds_sub = np.searchsorted(vmap, seeds)

    curves: list[SweepCurve] = []
    phi_mins: list[float] = []
    cand_sub: list[np.ndarray] = []
    scores: list[np.ndarray] = []
    seed_counts: list[int] = []
    clamped = False
    infeasible = False

    current = seeds_sub
    for it in range(params.max_iters):
        size_min = max(params.size_min, current.size + 1)
        size_max = min(params.size_max, g_sub.n, g.n - 1)
        if size_min > size_max:
            break
        step = expansion_step(g_sub, current, params, sweep_graph=g,
                              vertex_map=vmap, size_min=size_min, size_max=size_max)
        if step.solution.status != "optimal":
            infeasible = True
            break
        min_size, min_phi = step.curve.minimum()
        trunc = truth_size if gt_mode else min_size
        if trunc > step.ranked.shape[0]:
            clamped = True
        cand_sub.append(truncate_by_size(step.ranked, trunc))
        scores.append(step.solution.y)
        curves.append(step.curve)
        phi_mins.append(min_phi)
        seed_counts.append(int(current.size))

        if not gt_mode and len(phi_mins) >= 2 and phi_mins[-1] > phi_mins[-2]:
            break
        non_seed = step.ranked[~np.isin(step.ranked, seeds_sub)]
        t = params.expand_step * (it + 1)
        grown = np.union1d(seeds_sub, non_seed[:t])
        if gt_mode and grown.size > truth_size:
            break
        if not gt_mode and grown.size >= params.size_max:
            break
        if grown.size == current.size:
            break  # candidate pool exhausted
        current = grown

    if not cand_sub:
        return CommunityResult(np.empty(0, dtype=np.int64), np.empty(0), 0, 0,
                               float("nan"), curves, phi_mins, [], seed_counts,
                               infeasible_lp=infeasible,
                               sampler_warning=sample.warning)

    best = int(np.argmin(phi_mins))
    members_sub = cand_sub[best]
    members = np.sort(g_sub.to_labels(members_sub))
    order = np.argsort(g_sub.to_labels(members_sub))
    score_vec = scores[best][members_sub][order]
    candidates = [np.sort(g_sub.to_labels(c)) for c in cand_sub]
    seeds_ext = np.sort(g.to_labels(seeds))
    seeds_dropped = not np.isin(seeds_ext, members).all()
    phi_at_chosen = phi_mins[best]
    if gt_mode:
        # in ground-truth mode the returned prefix is not the sweep argmin;
        # report the conductance of the actual returned set
        orig = vmap[members_sub]
        phi_at_chosen = conductance(g, orig) if 0 < orig.size < g.n else float("nan")
    return CommunityResult(members, score_vec, len(cand_sub), int(members.size),
                           phi_at_chosen, curves, phi_mins, candidates, seed_counts,
                           infeasible_lp=infeasible,
                           sampler_warning=sample.warning,
                           truncation_clamped=clamped,
                           seeds_dropped=seeds_dropped)
