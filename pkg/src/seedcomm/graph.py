"""Immutable undirected graph storage, file I/O, and structural primitives.

Graphs are simple (no self-loops, no duplicate edges) and stored in
compressed adjacency form with dense integer vertex ids.  External vertex
labels from input files are remapped to [0, n) on load and kept around so
results can be translated back.
"""

from __future__ import annotations

import contextlib
import io
import logging
import os
from dataclasses import dataclass, field

import numpy as np

from . import _kernels

logger = logging.getLogger(__name__)


class GraphParseError(ValueError):
    """Malformed edge-list or community file."""


def vertex_set(ids, n: int | None = None) -> np.ndarray:
    """Canonical vertex-set form: sorted unique int64 array.

    When `n` is given, ids outside [0, n) raise ValueError.
    """
    arr = np.unique(np.asarray(ids, dtype=np.int64))
    if n is not None and arr.size and (arr[0] < 0 or arr[-1] >= n):
        raise ValueError(f"vertex id out of range [0, {n})")
    return arr


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph in compressed (CSR) adjacency form.

    Neighbor lists are strictly sorted ascending, adjacency is symmetric,
    and sum(degrees) == 2*m.  `labels`, when present, maps internal id ->
    external label and is sorted ascending so lookups are binary searches.
    Instances are immutable and safe to share across threads.
    """

    indptr: np.ndarray
    indices: np.ndarray
    degrees: np.ndarray
    labels: np.ndarray | None = None
    dropped_self_loops: int = 0
    dropped_duplicates: int = 0

    @property
    def n(self) -> int:
        return self.degrees.shape[0]

    @property
    def m(self) -> int:
        return self.indices.shape[0] // 2

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def to_labels(self, ids) -> np.ndarray:
        """Translate internal ids to external labels."""
        ids = np.asarray(ids, dtype=np.int64)
        if self.labels is None:
            return ids.copy()
        return self.labels[ids]

    def lookup(self, labels) -> tuple[np.ndarray, np.ndarray]:
        """Translate external labels to internal ids.

        Returns (ids, found) where found marks labels present in the graph;
        ids are meaningful only where found is True.
        """
        arr = np.asarray(labels, dtype=np.int64)
        if self.labels is None:
            found = (arr >= 0) & (arr < self.n)
            return arr, found
        pos = np.searchsorted(self.labels, arr)
        pos_clipped = np.minimum(pos, self.labels.size - 1)
        found = self.labels[pos_clipped] == arr
        return pos_clipped, found

    def to_ids(self, labels) -> np.ndarray:
        """Strict label translation; unknown labels raise KeyError."""
        ids, found = self.lookup(labels)
        if not found.all():
            missing = np.asarray(labels)[~found]
            raise KeyError(f"labels not in graph: {missing[:10].tolist()}")
        return ids

    @classmethod
    def from_edges(cls, edges, n: int | None = None, labels=None) -> "Graph":
        """Build a Graph from an iterable/array of (u, v) internal-id pairs.

        Self-loops and duplicate edges (either orientation) are dropped and
        counted.  `n` defaults to max id + 1.
        """
        e = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges,
                       dtype=np.int64).reshape(-1, 2)
        if n is None:
            if e.size == 0:
                raise ValueError("cannot infer vertex count from an empty edge list")
            n = int(e.max()) + 1
        if e.size and (e.min() < 0 or e.max() >= n):
            raise ValueError(f"edge endpoint out of range [0, {n})")

        loops = e[:, 0] == e[:, 1] if e.size else np.zeros(0, dtype=bool)
        n_loops = int(loops.sum())
        e = e[~loops]
        if e.shape[0]:
            lo = np.minimum(e[:, 0], e[:, 1])
            hi = np.maximum(e[:, 0], e[:, 1])
            key = np.unique(lo * np.int64(n) + hi)
            n_dups = e.shape[0] - key.size
            lo, hi = key // n, key % n
            src = np.concatenate([lo, hi])
            dst = np.concatenate([hi, lo])
            order = np.lexsort((dst, src))
            src, dst = src[order], dst[order]
            degrees = np.bincount(src, minlength=n).astype(np.int64)
            indices = dst.astype(np.int64)
        else:
            n_dups = 0
            degrees = np.zeros(n, dtype=np.int64)
            indices = np.zeros(0, dtype=np.int64)
        indptr = np.concatenate([[0], np.cumsum(degrees)]).astype(np.int64)
        lab = None if labels is None else np.asarray(labels, dtype=np.int64)
        return cls(indptr, indices, degrees, lab, n_loops, n_dups)


@dataclass(frozen=True)
class GroundTruthCatalog:
    """A list of known communities (internal-id vertex sets)."""

    communities: list = field(default_factory=list)
    dropped_members: int = 0
    dropped_communities: int = 0

    @property
    def avg_size(self) -> float:
        return float(np.mean([c.size for c in self.communities]))

    def __len__(self) -> int:
        return len(self.communities)


@contextlib.contextmanager
def _open_text(source):
    if isinstance(source, (str, os.PathLike)):
        with open(source, "rt", encoding="ascii") as fh:
            yield fh
    elif isinstance(source, (bytes, bytearray)):
        yield io.StringIO(source.decode("ascii"))
    elif hasattr(source, "read"):
        data = source.read()
        if isinstance(data, bytes):
            data = data.decode("ascii")
        yield io.StringIO(data)
    else:
        raise TypeError(f"unsupported source type: {type(source)!r}")


def load_edge_list(source) -> Graph:
    """Parse a SNAP-convention edge list into a Graph.

    One "u v" pair per line with arbitrary whitespace; lines starting with
    '#' are comments.  Labels are remapped to dense ids (kept in
    Graph.labels); self-loops and duplicates are dropped with a counted
    warning.  Malformed lines and empty graphs raise GraphParseError.
    """
    pairs = []
    with _open_text(source) as fh:
        for lineno, line in enumerate(fh, 1):
            s = line.strip()
            if not s or s.startswith("#"):
                continue
            parts = s.split()
            if len(parts) != 2:
                raise GraphParseError(f"line {lineno}: expected two vertex labels, got {s!r}")
            try:
                a, b = int(parts[0]), int(parts[1])
            except ValueError:
                raise GraphParseError(f"line {lineno}: non-integer vertex label in {s!r}") from None
            pairs.append((a, b))
    if not pairs:
        raise GraphParseError("empty graph: no edges found")

    raw = np.asarray(pairs, dtype=np.int64)
    labels = np.unique(raw)
    ids = np.searchsorted(labels, raw)
    g = Graph.from_edges(ids, n=labels.size, labels=labels)
    if g.dropped_self_loops:
        logger.warning("dropped %d self-loop(s) on load", g.dropped_self_loops)
    if g.dropped_duplicates:
        logger.warning("dropped %d duplicate edge(s) on load", g.dropped_duplicates)
    if g.m == 0:
        raise GraphParseError("empty graph: no edges survived cleaning")
    return g


def load_communities(source, graph: Graph) -> GroundTruthCatalog:
    """Parse ground-truth communities (one community per line of labels).

    Labels absent from the graph are skipped with a warning count; a
    community that becomes empty is dropped; zero usable communities raise.
    """
    communities = []
    dropped_members = 0
    dropped_communities = 0
    with _open_text(source) as fh:
        for lineno, line in enumerate(fh, 1):
            s = line.strip()
            if not s or s.startswith("#"):
                continue
            try:
                labels = np.asarray([int(tok) for tok in s.split()], dtype=np.int64)
            except ValueError:
                raise GraphParseError(f"line {lineno}: non-integer vertex label") from None
            ids, found = graph.lookup(labels)
            dropped_members += int((~found).sum())
            members = np.unique(ids[found])
            if members.size == 0:
                dropped_communities += 1
                continue
            communities.append(members)
    if dropped_members:
        logger.warning("skipped %d community member(s) not present in the graph", dropped_members)
    if dropped_communities:
        logger.warning("dropped %d empty communit(ies)", dropped_communities)
    if not communities:
        raise GraphParseError("no usable communities in file")
    return GroundTruthCatalog(communities, dropped_members, dropped_communities)


def volume(g: Graph, s) -> int:
    """Sum of degrees over the set (0 for the empty set)."""
    s = vertex_set(s, g.n)
    return int(g.degrees[s].sum())


def cut_size(g: Graph, s) -> int:
    """Number of edges with exactly one endpoint in the set."""
    s = vertex_set(s, g.n)
    if s.size == 0 or s.size == g.n:
        return 0
    mask = np.zeros(g.n, dtype=bool)
    mask[s] = True
    cut, _ = _kernels.cut_and_volume(g.indptr, g.indices, g.degrees, s, mask)
    return int(cut)


def conductance(g: Graph, s) -> float:
    """cut(S) / min(vol(S), vol(complement)); exact integer arithmetic with
    one final division.  Undefined (ValueError) for empty S, S = V, or a
    zero min-side volume.
    """
    s = vertex_set(s, g.n)
    if s.size == 0 or s.size == g.n:
        raise ValueError("conductance undefined for the empty set and the full vertex set")
    mask = np.zeros(g.n, dtype=bool)
    mask[s] = True
    cut, vol = _kernels.cut_and_volume(g.indptr, g.indices, g.degrees, s, mask)
    denom = min(int(vol), 2 * g.m - int(vol))
    if denom == 0:
        raise ValueError("conductance undefined: one side has zero volume")
    return int(cut) / denom


def induced_subgraph(g: Graph, s) -> tuple[Graph, np.ndarray]:
    """Subgraph on exactly the edges with both endpoints in s.

    Returns (subgraph, vertices) where vertices is the sorted member array:
    position = new id, value = old id.  The subgraph's labels carry the
    parent's external labels (or the old internal ids when the parent is
    unlabeled), so detection output translates back without extra steps.
    """
    s = vertex_set(s, g.n)
    if s.size == 0:
        raise ValueError("cannot induce a subgraph on the empty set")
    mask = np.zeros(g.n, dtype=bool)
    mask[s] = True
    relabel = np.full(g.n, -1, dtype=np.int64)
    relabel[s] = np.arange(s.size, dtype=np.int64)

    nbrs, counts = _kernels._gather_neighbors(g.indptr, g.indices, s)
    keep = mask[nbrs] if nbrs.size else np.zeros(0, dtype=bool)
    owner = np.repeat(np.arange(s.size, dtype=np.int64), counts)
    sub_degrees = np.bincount(owner[keep], minlength=s.size).astype(np.int64)
    sub_indices = relabel[nbrs[keep]]
    sub_indptr = np.concatenate([[0], np.cumsum(sub_degrees)]).astype(np.int64)
    sub_labels = g.labels[s] if g.labels is not None else s.copy()
    sub = Graph(sub_indptr, sub_indices, sub_degrees, sub_labels)
    return sub, s


def internal_degrees(g: Graph, s) -> np.ndarray:
    """Per-member count of neighbors inside s (aligned with sorted s)."""
    s = vertex_set(s, g.n)
    mask = np.zeros(g.n, dtype=bool)
    mask[s] = True
    nbrs, counts = _kernels._gather_neighbors(g.indptr, g.indices, s)
    if not nbrs.size:
        return np.zeros(s.size, dtype=np.int64)
    owner = np.repeat(np.arange(s.size, dtype=np.int64), counts)
    return np.bincount(owner[mask[nbrs]], minlength=s.size).astype(np.int64)


def write_edge_list(g: Graph, fh, external: bool = True) -> None:
    """Emit the graph in the edge-list format load_edge_list accepts.

    external=False writes raw internal ids instead of labels.
    """
    if external and g.labels is not None:
        labels = g.labels
    else:
        labels = np.arange(g.n, dtype=np.int64)
    for v in range(g.n):
        lv = labels[v]
        for w in g.neighbors(v):
            if w > v:
                fh.write(f"{lv} {labels[w]}\n")


def write_communities(catalog: GroundTruthCatalog, g: Graph, fh) -> None:
    """Emit one community per line, members as external labels."""
    for members in catalog.communities:
        fh.write(" ".join(str(x) for x in g.to_labels(members)) + "\n")
