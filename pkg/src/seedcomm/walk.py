"""Probability propagation over the self-loop-augmented adjacency, seed
initial distributions, and the neighborhood sampler that shrinks detection
to a community-scale subgraph."""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .graph import Graph, induced_subgraph, vertex_set, volume

logger = logging.getLogger(__name__)

SUPPORT_EPS = 1e-12
SAMPLE_STEP_CAP = 30
SAMPLE_CAP_FACTOR = 5


@dataclass(frozen=True)
class ProbabilityVector:
    """Sparse nonnegative vector over the vertex space [0, n)."""

    n: int
    indices: np.ndarray  # sorted ids with nonzero weight
    values: np.ndarray

    def __post_init__(self):
        if self.values.size and float(self.values.min()) < 0.0:
            raise ValueError("probability vector has a negative entry")

    def total(self) -> float:
        return float(self.values.sum())

    def support_size(self, eps: float = SUPPORT_EPS) -> int:
        return int((self.values > eps).sum())

    def support(self, eps: float = SUPPORT_EPS) -> np.ndarray:
        return self.indices[self.values > eps]

    def to_dense(self) -> np.ndarray:
        out = np.zeros(self.n)
        out[self.indices] = self.values
        return out

    @classmethod
    def from_dense(cls, dense: np.ndarray) -> "ProbabilityVector":
        idx = np.flatnonzero(dense)
        return cls(dense.shape[0], idx.astype(np.int64), dense[idx])


@dataclass(frozen=True)
class WalkOperator:
    """One-step walk operator on a graph, with the self-loop included.

    With d^ = deg + 1, the symmetric mode applies
    diag(d^)^-1/2 (A + I) diag(d^)^-1/2 (a symmetric matrix), and the
    stochastic mode applies (A + I) diag(d^)^-1 (column-stochastic, so total
    mass is conserved).  Both factor as out[v] = dst[v] * sum_u in N(u)+u
    of x[u] * src[u], which is what the kernels compute.
    """

    graph: Graph
    mode: str
    src_scale: np.ndarray
    dst_scale: np.ndarray

    @classmethod
    def symmetric(cls, g: Graph) -> "WalkOperator":
        s = 1.0 / np.sqrt(g.degrees + 1.0)
        return cls(g, "symmetric", s, s)

    @classmethod
    def stochastic(cls, g: Graph) -> "WalkOperator":
        return cls(g, "stochastic", 1.0 / (g.degrees + 1.0), np.ones(g.n))

    def apply_dense(self, x: np.ndarray) -> np.ndarray:
        """Apply to a dense vector (n,) or column-wise to a matrix (n, k)."""
        g = self.graph
        if x.ndim == 1:
            return _kernels.propagate_dense(g.indptr, g.indices, self.src_scale,
                                            self.dst_scale, np.ascontiguousarray(x))
        out = np.empty_like(x)
        for j in range(x.shape[1]):
            out[:, j] = _kernels.propagate_dense(g.indptr, g.indices, self.src_scale,
                                                 self.dst_scale, np.ascontiguousarray(x[:, j]))
        return out


def initial_vector(seeds, g: Graph, mode: str = "uniform") -> ProbabilityVector:
    """Starting distribution on the seed set.

    uniform: 1/|S| on each seed.  degree: deg(v)/vol(S), biasing the walk
    toward high-degree seeds.
    """
    seeds = vertex_set(seeds, g.n)
    if seeds.size == 0:
        raise ValueError("seed set is empty")
    if mode == "uniform":
        vals = np.full(seeds.size, 1.0 / seeds.size)
    elif mode in ("degree", "degree_weighted"):
        vol = volume(g, seeds)
        if vol == 0:
            raise ValueError("degree-weighted init undefined: seed set has zero volume")
        vals = g.degrees[seeds] / float(vol)
    else:
        raise ValueError(f"unknown init mode {mode!r}")
    return ProbabilityVector(g.n, seeds, vals)


def propagate(op: WalkOperator, p: ProbabilityVector) -> ProbabilityVector:
    """One walk step, touching only the closed neighborhood of the support."""
    g = op.graph
    dense = _kernels.propagate_support(g.indptr, g.indices, op.src_scale, op.dst_scale,
                                       p.indices, p.values, g.n)
    return ProbabilityVector.from_dense(dense)


@dataclass(frozen=True)
class SampleResult:
    subgraph: Graph
    vertices: np.ndarray  # sorted sampled set; position = subgraph id, value = parent id
    warning: bool
    steps: int


def sample_subgraph(g: Graph, seeds, target_size: int,
                    step_cap: int = SAMPLE_STEP_CAP,
                    cap_factor: int = SAMPLE_CAP_FACTOR) -> SampleResult:
    """Grow a walk from the seeds until probability reaches target_size
    vertices, then induce the subgraph on the spread-out support.

    Stochastic-mode steps run until support >= target_size, the support
    stops growing (component saturated), or step_cap is hit.  The kept
    vertices are the support ordered by descending probability, capped at
    cap_factor * target_size, always including every seed.  `warning` is
    set when the reachable support never attained target_size.
    """
    seeds = vertex_set(seeds, g.n)
    if seeds.size == 0:
        raise ValueError("seed set is empty")
    if target_size < seeds.size:
        raise ValueError("target_size must be at least the seed count")

    op = WalkOperator.stochastic(g)
    p = initial_vector(seeds, g, "uniform")
    steps = 0
    while p.support_size() < target_size and steps < step_cap:
        nxt = propagate(op, p)
        steps += 1
        if nxt.support_size() == p.support_size():
            p = nxt
            break  # saturated: support is the whole reachable component
        p = nxt

    keep = p.values > SUPPORT_EPS
    sup_ids = p.indices[keep]
    sup_vals = p.values[keep]
    warning = sup_ids.size < target_size
    if warning:
        logger.warning("sampler stopped at %d vertices (target %d)", sup_ids.size, target_size)

    hard_cap = cap_factor * target_size
    if sup_ids.size > hard_cap:
        order = np.lexsort((sup_ids, -sup_vals))[:hard_cap]
        sup_ids = sup_ids[order]
    chosen = np.union1d(sup_ids, seeds)
    sub, vertices = induced_subgraph(g, chosen)
    return SampleResult(sub, vertices, warning, steps)
