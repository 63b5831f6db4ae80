"""Minimum-one-norm scoring: find the sparsest nonnegative vector in the
span of a basis whose seed entries are at least one.

The program is
    minimize    sum(y)
    subject to  y = V x,  y >= 0,  y[s] >= 1 for every seed s,
solved in the reduced d-variable form (d = basis dim <= span_dim + 1):
    minimize (1^T V) x   subject to   (V x)_i >= 0,  (V x)_s >= 1.

Because V has orthonormal columns the feasible region is pointed, the
objective is bounded below by 0, and the optimum (when feasible) sits on a
vertex.  We solve the equivalent standard-form program

    min (-b)^T lam   s.t.  V^T lam = V^T 1,  lam >= 0

with a two-phase revised primal simplex under Bland's rule (the basis is
d x d, so every pivot is tiny no matter how many vertices the subgraph
has); the optimal x is recovered from the simplex multipliers and the
returned y is re-checked against all constraints.  lam = 1 is always
feasible here, so the only non-optimal outcome is unboundedness, which is
exactly infeasibility of the original program (e.g. a seed whose basis row
is identically zero).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .graph import vertex_set
from .spectra import SpectralBasis

logger = logging.getLogger(__name__)

PIVOT_TOL = 1e-10
CERT_TOL = 1e-9
MAX_PIVOTS = 10000


@dataclass(frozen=True)
class SparseIndicatorSolution:
    """Per-vertex scores y = V x with the solve outcome.

    status is "optimal" or "infeasible"; for infeasible solves y and x are
    zero and objective is NaN.
    """

    y: np.ndarray
    x: np.ndarray
    objective: float
    status: str


def _simplex_iterate(m_mat, rhs, cost, basis, tol, max_iters):
    """Revised primal simplex on min cost^T lam s.t. m_mat lam = rhs, lam >= 0.

    Starts from the given feasible basis; Bland's rule for entering and
    leaving variables.  Returns (basis, status) with status "optimal" or
    "unbounded".
    """
    for _ in range(max_iters):
        b = m_mat[:, basis]
        xb = np.linalg.solve(b, rhs)
        w = np.linalg.solve(b.T, cost[basis])
        reduced = cost - m_mat.T @ w
        reduced[basis] = 0.0
        eligible = np.flatnonzero(reduced < -tol)
        if eligible.size == 0:
            return basis, "optimal"
        enter = int(eligible[0])
        direction = np.linalg.solve(b, m_mat[:, enter])
        pos = np.flatnonzero(direction > tol)
        if pos.size == 0:
            return basis, "unbounded"
        ratios = xb[pos] / direction[pos]
        theta = ratios.min()
        ties = pos[ratios <= theta + 1e-12 * (1.0 + abs(theta))]
        leave_row = int(ties[np.argmin(basis[ties])])
        basis[leave_row] = enter
    raise RuntimeError("simplex failed to terminate within the pivot cap")


def _solve_standard_form(m_mat, rhs, cost, tol=PIVOT_TOL):
    """Two-phase simplex for min cost^T lam s.t. m_mat lam = rhs, lam >= 0.

    Returns the equality-constraint multipliers at the optimum, or None if
    the program is unbounded.  Assumes the program is feasible (true for
    the solver's use: lam = 1 satisfies V^T lam = V^T 1).
    """
    d, ncols = m_mat.shape
    sign = np.where(rhs < 0, -1.0, 1.0)
    m_flip = m_mat * sign[:, None]
    rhs_flip = rhs * sign

    # phase 1: drive artificial variables to zero
    ext = np.hstack([m_flip, np.eye(d)])
    cost1 = np.concatenate([np.zeros(ncols), np.ones(d)])
    basis = np.arange(ncols, ncols + d)
    basis, status = _simplex_iterate(ext, rhs_flip, cost1, basis, tol, MAX_PIVOTS)
    if status != "optimal":
        raise RuntimeError("phase-1 simplex cannot be unbounded")
    resid = float(np.linalg.solve(ext[:, basis], rhs_flip) @ cost1[basis])
    if resid > 1e-7:
        raise RuntimeError(f"phase-1 residual {resid:.3e}: inconsistent constraints")

    # pivot any leftover artificials out of the basis
    for row in range(d):
        if basis[row] < ncols:
            continue
        tab = np.linalg.solve(ext[:, basis], m_flip)
        candidates = np.flatnonzero(np.abs(tab[row]) > tol)
        candidates = candidates[~np.isin(candidates, basis)]
        if candidates.size == 0:
            raise RuntimeError("redundant constraint row survived phase 1")
        basis[row] = int(candidates[0])

    # phase 2 on the real columns only
    basis, status = _simplex_iterate(m_flip, rhs_flip, cost, basis, tol, MAX_PIVOTS)
    if status != "optimal":
        return None
    w = np.linalg.solve(m_flip[:, basis].T, cost[basis])
    return sign * w


def solve_min_one_norm(basis: SpectralBasis, seeds, rhs: float = 1.0) -> SparseIndicatorSolution:
    """Globally optimal scores for the minimum-one-norm program above.

    `seeds` index rows of the basis; `rhs` is the seed lower bound (1 in
    normal use; scaling it by c > 0 scales y by c and leaves the vertex
    ranking unchanged).
    """
    v = basis.matrix
    n, d = v.shape
    seeds = vertex_set(seeds, n)
    if seeds.size == 0:
        raise ValueError("seed set is empty")
    if rhs <= 0:
        raise ValueError("seed bound must be positive")

    b = np.zeros(n)
    b[seeds] = rhs
    c = v.sum(axis=0)

    multipliers = _solve_standard_form(v.T.copy(), c, -b)
    if multipliers is None:
        logger.debug("min-one-norm program infeasible (%d seeds, dim %d)", seeds.size, d)
        return SparseIndicatorSolution(np.zeros(n), np.zeros(d), float("nan"), "infeasible")

    x = -multipliers
    y = v @ x
    # feasibility certificate: the recovered point must satisfy every
    # constraint to tolerance, otherwise the solve is unusable
    if float(y.min()) < -CERT_TOL or float(y[seeds].min()) < rhs - CERT_TOL * max(1.0, rhs):
        raise RuntimeError("simplex certificate failed: recovered y violates constraints")
    return SparseIndicatorSolution(y, x, float(c @ x), "optimal")


def rank_vertices(sol: SparseIndicatorSolution) -> np.ndarray:
    """Vertices sorted by score descending, ties broken by ascending id."""
    if sol.status != "optimal":
        raise ValueError("cannot rank an infeasible solution")
    n = sol.y.shape[0]
    return np.lexsort((np.arange(n), -sol.y)).astype(np.int64)
