"""Independent brute-force references the fast paths are checked against."""

import itertools

import numpy as np


def edge_pairs(g):
    """All undirected edges (u < v) by direct CSR traversal."""
    out = []
    for u in range(g.n):
        for v in g.neighbors(u):
            if v > u:
                out.append((u, v))
    return out


def brute_cut(g, members) -> int:
    s = set(int(x) for x in members)
    return sum(1 for u, v in edge_pairs(g) if (u in s) != (v in s))


def brute_conductance(g, members) -> float:
    s = set(int(x) for x in members)
    vol = sum(int(g.degrees[v]) for v in s)
    denom = min(vol, 2 * g.m - vol)
    cut = brute_cut(g, members)
    return cut / denom if denom > 0 else 1.0


def dense_operator(g, mode="symmetric") -> np.ndarray:
    """The walk operator as an explicit dense matrix."""
    a = np.zeros((g.n, g.n))
    for u, v in edge_pairs(g):
        a[u, v] = a[v, u] = 1.0
    a += np.eye(g.n)
    d = g.degrees + 1.0
    if mode == "symmetric":
        s = 1.0 / np.sqrt(d)
        return s[:, None] * a * s[None, :]
    return a / d[None, :]


def lp_enumerate(v, seeds, rhs=1.0, tol=1e-9):
    """Optimal objective by enumerating basic solutions: every d-subset of
    constraint rows solved as an equality system, kept if feasible.

    Returns (objective, x) or None when no feasible basic solution exists.
    """
    v = np.asarray(v, dtype=float)
    n, d = v.shape
    b = np.zeros(n)
    b[list(seeds)] = rhs
    c = v.sum(axis=0)
    best = None
    for rows in itertools.combinations(range(n), d):
        sub = v[list(rows)]
        if abs(np.linalg.det(sub)) < 1e-12:
            continue
        x = np.linalg.solve(sub, b[list(rows)])
        y = v @ x
        if y.min() >= -tol and (y[list(seeds)] >= rhs - tol).all():
            obj = float(c @ x)
            if best is None or obj < best[0]:
                best = (obj, x)
    return best
