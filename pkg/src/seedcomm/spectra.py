"""Local spectral bases from short random walks.

A basis is built by stacking successive walk vectors p_0..p_l from the
seeds, orthonormalizing, and advancing the whole subspace through further
walk steps (re-orthonormalizing after each application).  The resulting
column-orthonormal matrix approximates an invariant subspace concentrated
around the seed neighborhood.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .walk import WalkOperator, initial_vector

RANK_TOL = 1e-12


@dataclass(frozen=True)
class SpectralBasis:
    """Column-orthonormal matrix over the operator's vertex space (rows =
    vertex ids of the graph the walk ran on)."""

    matrix: np.ndarray

    @property
    def dim(self) -> int:
        return self.matrix.shape[1]

    def gram_error(self) -> float:
        v = self.matrix
        return float(np.abs(v.T @ v - np.eye(self.dim)).max())


def build_span(op: WalkOperator, p0, num_steps: int) -> np.ndarray:
    """Matrix [p_0, p_1, ..., p_l] of successive walk vectors (l = num_steps).

    Column j is the symmetric operator applied j times to p_0.
    """
    if op.mode != "symmetric":
        raise ValueError("span construction requires the symmetric operator")
    if num_steps < 1:
        raise ValueError("need at least one walk step")
    dense = p0.to_dense() if hasattr(p0, "to_dense") else np.asarray(p0, dtype=float)
    cols = np.empty((dense.shape[0], num_steps + 1))
    cols[:, 0] = dense
    for j in range(num_steps):
        cols[:, j + 1] = op.apply_dense(cols[:, j])
    return cols


def orthonormalize(columns: np.ndarray, rank_tol: float = RANK_TOL) -> SpectralBasis:
    """Column-orthonormal basis of the span of `columns`.

    Modified Gram-Schmidt with one reorthogonalization pass (walk vectors
    from consecutive steps are nearly parallel on fast-mixing subgraphs).
    Columns whose residual falls below rank_tol relative to the largest
    input column norm are dropped; an all-zero input raises.
    """
    a = np.asarray(columns, dtype=float)
    if a.ndim == 1:
        a = a[:, None]
    norms = np.linalg.norm(a, axis=0)
    ref = float(norms.max()) if norms.size else 0.0
    if not np.isfinite(ref) or ref == 0.0:
        raise ValueError("cannot orthonormalize: all columns are zero")
    kept: list[np.ndarray] = []
    for j in range(a.shape[1]):
        v = a[:, j].copy()
        for _ in range(2):
            for q in kept:
                v -= (q @ v) * q
        nrm = float(np.linalg.norm(v))
        if nrm <= rank_tol * ref:
            continue
        kept.append(v / nrm)
    if not kept:
        raise ValueError("cannot orthonormalize: numerically rank zero")
    return SpectralBasis(np.column_stack(kept))


def advance_basis(op: WalkOperator, basis: SpectralBasis, steps: int) -> SpectralBasis:
    """Apply the walk operator to the whole basis `steps` times,
    re-orthonormalizing after each application.  steps=0 is the identity."""
    if steps < 0:
        raise ValueError("steps must be >= 0")
    if op.mode != "symmetric":
        raise ValueError("basis advancement requires the symmetric operator")
    for _ in range(steps):
        advanced = op.apply_dense(basis.matrix)
        try:
            basis = orthonormalize(advanced)
        except ValueError:
            raise ValueError("basis collapsed to zero during advancement") from None
    return basis


def local_basis(op: WalkOperator, seeds, walk_steps: int = 3, span_dim: int = 3,
                init_mode: str = "uniform") -> SpectralBasis:
    """The full pipeline: seed distribution -> walk span -> orthonormal
    basis -> walk_steps - 1 advancement steps.  Deterministic."""
    if walk_steps < 1 or span_dim < 1:
        raise ValueError("walk_steps and span_dim must be >= 1")
    p0 = initial_vector(seeds, op.graph, init_mode)
    basis = orthonormalize(build_span(op, p0, span_dim))
    return advance_basis(op, basis, walk_steps - 1)
