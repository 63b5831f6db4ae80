"""Hot inner loops over the compressed adjacency arrays.

Every kernel exists twice: a vectorized numpy implementation and, when numba
imports cleanly, a jitted loop version.  The active set is picked once at
import time; set SEEDCOMM_NO_NUMBA=1 to force the numpy path.  Both sets stay
importable so benchmarks/bench_kernels.py can time one against the other.
"""

from __future__ import annotations

import os

import numpy as np


def numba_disabled() -> bool:
    return os.environ.get("SEEDCOMM_NO_NUMBA", "").strip().lower() in {"1", "true", "yes", "on"}


# ---------------------------------------------------------------------------
# numpy implementations

def _gather_neighbors(indptr, indices, vertices):
    """Concatenated neighbor ids of `vertices`, plus per-vertex counts."""
    counts = indptr[vertices + 1] - indptr[vertices]
    total = int(counts.sum())
    if total == 0:
        return np.empty(0, dtype=indices.dtype), counts
    head = np.repeat(indptr[vertices], counts)
    shift = np.arange(total, dtype=np.int64) - np.repeat(np.cumsum(counts) - counts, counts)
    return indices[head + shift], counts


def propagate_support_numpy(indptr, indices, src_scale, dst_scale, sup, val, n):
    """One application of the self-loop-augmented operator, touching only
    the closed neighborhood of the support `sup`."""
    out = np.zeros(n)
    w = val * src_scale[sup]
    np.add.at(out, sup, w)  # the +I self-loop term
    nbrs, counts = _gather_neighbors(indptr, indices, sup)
    if nbrs.size:
        np.add.at(out, nbrs, np.repeat(w, counts))
    out *= dst_scale
    return out


def propagate_dense_numpy(indptr, indices, src_scale, dst_scale, x):
    """Dense mat-vec with the same operator; gather formulation."""
    y = x * src_scale
    n = x.shape[0]
    if indices.size:
        # trailing sentinel keeps every indptr value a valid reduceat index;
        # empty segments yield a bogus single element and are zeroed after
        contrib = np.append(y[indices], 0.0)
        sums = np.add.reduceat(contrib, indptr[:-1])
        sums[np.diff(indptr) == 0] = 0.0
    else:
        sums = np.zeros(n)
    return dst_scale * (sums + y)


def prefix_conductance_numpy(indptr, indices, degrees, pos, ranked, two_m):
    """Conductance of every prefix of `ranked`, grown one vertex at a time.

    pos[v] must hold v's position in `ranked` (or a sentinel >= len(ranked)).
    A zero min-side volume is mapped to conductance 1.0.
    """
    k = ranked.shape[0]
    phi = np.empty(k)
    cut = 0
    vol = 0
    for i in range(k):
        v = ranked[i]
        nbrs = indices[indptr[v]:indptr[v + 1]]
        inside = int((pos[nbrs] < i).sum())
        deg = int(degrees[v])
        cut += deg - 2 * inside
        vol += deg
        denom = min(vol, two_m - vol)
        phi[i] = cut / denom if denom > 0 else 1.0
    return phi


def cut_and_volume_numpy(indptr, indices, degrees, members, in_set):
    """Edge-boundary size and volume of a vertex set (boolean mask in_set)."""
    vol = int(degrees[members].sum())
    nbrs, _ = _gather_neighbors(indptr, indices, members)
    cut = int((~in_set[nbrs]).sum()) if nbrs.size else 0
    return cut, vol


# ---------------------------------------------------------------------------
# numba twins

HAS_NUMBA = False
try:
    from numba import njit

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    njit = None

if HAS_NUMBA:

    @njit(cache=True, nogil=True)
    def propagate_support_numba(indptr, indices, src_scale, dst_scale, sup, val, n):
        out = np.zeros(n)
        for i in range(sup.shape[0]):
            u = sup[i]
            w = val[i] * src_scale[u]
            out[u] += w
            for e in range(indptr[u], indptr[u + 1]):
                out[indices[e]] += w
        for v in range(n):
            out[v] *= dst_scale[v]
        return out

    @njit(cache=True, nogil=True)
    def propagate_dense_numba(indptr, indices, src_scale, dst_scale, x):
        n = x.shape[0]
        out = np.empty(n)
        for v in range(n):
            acc = x[v] * src_scale[v]
            for e in range(indptr[v], indptr[v + 1]):
                u = indices[e]
                acc += x[u] * src_scale[u]
            out[v] = acc * dst_scale[v]
        return out

    @njit(cache=True, nogil=True)
    def prefix_conductance_numba(indptr, indices, degrees, pos, ranked, two_m):
        k = ranked.shape[0]
        phi = np.empty(k)
        cut = 0
        vol = 0
        for i in range(k):
            v = ranked[i]
            inside = 0
            for e in range(indptr[v], indptr[v + 1]):
                if pos[indices[e]] < i:
                    inside += 1
            deg = degrees[v]
            cut += deg - 2 * inside
            vol += deg
            denom = min(vol, two_m - vol)
            if denom > 0:
                phi[i] = cut / denom
            else:
                phi[i] = 1.0
        return phi

    @njit(cache=True, nogil=True)
    def cut_and_volume_numba(indptr, indices, degrees, members, in_set):
        cut = 0
        vol = 0
        for i in range(members.shape[0]):
            v = members[i]
            vol += degrees[v]
            for e in range(indptr[v], indptr[v + 1]):
                if not in_set[indices[e]]:
                    cut += 1
        return cut, vol


USING_NUMBA = HAS_NUMBA and not numba_disabled()

if USING_NUMBA:
    propagate_support = propagate_support_numba
    propagate_dense = propagate_dense_numba
    prefix_conductance = prefix_conductance_numba
    cut_and_volume = cut_and_volume_numba
else:
    propagate_support = propagate_support_numpy
    propagate_dense = propagate_dense_numpy
    prefix_conductance = prefix_conductance_numpy
    cut_and_volume = cut_and_volume_numpy
