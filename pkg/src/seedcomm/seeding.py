"""Seed-selection strategies for benchmark runs (all need a known
community to draw from)."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from .graph import Graph, internal_degrees, vertex_set

logger = logging.getLogger(__name__)

STRATEGIES = ("high_degree", "low_degree", "triangle", "random", "high_inward_ratio")
TRIANGLE_ENUM_CAP = 10000


@dataclass(frozen=True)
class SeedSpec:
    """How to pick seeds: a strategy plus either a fixed count or a ratio
    of the community size (rounded, minimum 1)."""

    strategy: str = "random"
    count: int | None = 3
    ratio: float | None = None
    rng_seed: int = 0

    def __post_init__(self):
        if self.strategy not in STRATEGIES:
            raise ValueError(f"unknown strategy {self.strategy!r}")
        if (self.count is None) == (self.ratio is None):
            raise ValueError("exactly one of count and ratio must be set")
        if self.count is not None and self.count < 1:
            raise ValueError("count must be >= 1")
        if self.ratio is not None and not (0.0 < self.ratio <= 1.0):
            raise ValueError("ratio must be in (0, 1]")

    def resolve_count(self, community_size: int) -> int:
        if self.count is not None:
            return self.count
        return max(1, int(round(self.ratio * community_size)))


def _tier(members: np.ndarray, key: np.ndarray, descending: bool) -> np.ndarray:
    """Top (or bottom) third of members ranked by key, ties by ascending id."""
    order = np.lexsort((members, -key if descending else key))
    cutoff = math.ceil(members.size / 3)
    return members[order[:cutoff]]


def _triangles_in(g: Graph, members: np.ndarray, cap: int = TRIANGLE_ENUM_CAP) -> list:
    mask = np.zeros(g.n, dtype=bool)
    mask[members] = True
    triangles = []
    for u in members:
        nbrs_u = g.neighbors(u)
        inside = nbrs_u[(nbrs_u > u) & mask[nbrs_u]]
        for v in inside:
            common = np.intersect1d(inside, g.neighbors(v), assume_unique=False)
            for w in common[common > v]:
                triangles.append((int(u), int(v), int(w)))
                if len(triangles) >= cap:
                    return triangles
    return triangles


def select_seeds(g: Graph, truth, spec: SeedSpec) -> np.ndarray:
    """Pick seeds from a known community per the spec's strategy.

    Deterministic for a fixed rng_seed.  Tier strategies (high/low degree,
    inward ratio) sample uniformly inside the top/bottom third; the
    triangle strategy returns a uniformly chosen triangle (count forced to
    3) and raises when the community contains none.
    """
    truth = vertex_set(truth, g.n)
    if truth.size == 0:
        raise ValueError("community is empty")
    rng = np.random.default_rng(spec.rng_seed)
    count = spec.resolve_count(truth.size)
    if count > truth.size:
        raise ValueError(f"cannot pick {count} seeds from a community of {truth.size}")

    if spec.strategy == "random":
        return vertex_set(rng.choice(truth, size=count, replace=False))

    if spec.strategy == "triangle":
        triangles = _triangles_in(g, truth)
        if not triangles:
            raise ValueError("no triangle inside the community")
        return vertex_set(triangles[int(rng.integers(len(triangles)))])

    if truth.size < 3:
        raise ValueError("tier strategies need a community of at least 3 vertices")
    if spec.strategy == "high_degree":
        tier = _tier(truth, g.degrees[truth], descending=True)
    elif spec.strategy == "low_degree":
        tier = _tier(truth, g.degrees[truth], descending=False)
    else:  # high_inward_ratio
        deg = g.degrees[truth].astype(float)
        ratio = np.divide(internal_degrees(g, truth), deg, out=np.zeros_like(deg),
                          where=deg > 0)
        tier = _tier(truth, ratio, descending=True)
    if count > tier.size:
        logger.warning("tier of %d too small for %d seeds; sampling the whole community",
                       tier.size, count)
        tier = truth
    return vertex_set(rng.choice(tier, size=count, replace=False))
