"""Undirected simple graphs in compressed sparse (CSR) form, plus SNAP edge-list I/O.

Node ids are always contiguous 0..n-1 internally; the original ids from the
input file are kept in ``Graph.labels`` so results can be reported in the
source vocabulary.
"""

from __future__ import annotations

import io
import os
from typing import Iterable, Iterator

import numpy as np


class ParseError(ValueError):
    """Raised for malformed or empty edge-list input."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class Graph:
    """Immutable undirected simple graph.

    Stored as sorted per-node neighbor lists in CSR layout (``indptr``,
    ``indices``). No self-loops, no duplicate edges, and symmetric by
    construction: j in adj(i) iff i in adj(j).
    """

    __slots__ = ("n", "m", "indptr", "indices", "labels")

    def __init__(self, n: int, indptr: np.ndarray, indices: np.ndarray,
                 labels: np.ndarray | None = None):
        self.n = int(n)
        self.indptr = np.ascontiguousarray(indptr, dtype=np.int64)
        self.indices = np.ascontiguousarray(indices, dtype=np.int32)
        self.labels = None if labels is None else np.asarray(labels, dtype=np.int64)
        self.m = int(self.indices.shape[0]) // 2
        for arr in (self.indptr, self.indices):
            arr.flags.writeable = False
        if self.labels is not None:
            self.labels.flags.writeable = False

    # -- construction ------------------------------------------------------

    @classmethod
    def from_edges(cls, edges, n: int | None = None,
                   labels: np.ndarray | None = None) -> "Graph":
        """Build a graph from an array-like of (u, v) pairs of internal ids.

        Self-loops are dropped and duplicate/reciprocal pairs collapsed.
        ``n`` defaults to max id + 1 (isolated trailing nodes need explicit n).
        """
        e = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
        if n is None:
            n = int(e.max()) + 1 if e.size else 0
        if e.size and (e.min() < 0 or e.max() >= n):
            raise ValueError("edge endpoint out of range")
        u = np.minimum(e[:, 0], e[:, 1])
        v = np.maximum(e[:, 0], e[:, 1])
        keep = u != v
        u, v = u[keep], v[keep]
        keys = np.unique(u * np.int64(n) + v)
        u, v = keys // n, keys % n
        src = np.concatenate([u, v])
        dst = np.concatenate([v, u])
        order = np.lexsort((dst, src))
        indices = dst[order].astype(np.int32)
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
        return cls(n, indptr, indices, labels)

    # -- basic queries -----------------------------------------------------

    @property
    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def neighbors(self, i: int) -> np.ndarray:
        return self.indices[self.indptr[i]:self.indptr[i + 1]]

    def has_edge(self, i: int, j: int) -> bool:
        row = self.indices[self.indptr[i]:self.indptr[i + 1]]
        k = np.searchsorted(row, j)
        return bool(k < row.shape[0] and row[k] == j)

    def edge_array(self) -> np.ndarray:
        """All undirected edges as an (m, 2) array with i < j, sorted."""
        src = np.repeat(np.arange(self.n, dtype=np.int64), self.degrees)
        dst = self.indices.astype(np.int64)
        keep = src < dst
        return np.column_stack([src[keep], dst[keep]])

    def edge_key_set(self) -> set[int]:
        """Set of i*n+j keys (i < j) for O(1) membership tests."""
        e = self.edge_array()
        return set((e[:, 0] * self.n + e[:, 1]).tolist())

    def label_of(self, i) -> np.ndarray:
        if self.labels is None:
            return np.asarray(i, dtype=np.int64)
        return self.labels[i]

    def index_of_labels(self, lab) -> np.ndarray:
        """Map original ids back to internal 0..n-1 ids."""
        lab = np.asarray(lab, dtype=np.int64)
        if self.labels is None:
            return lab
        pos = np.searchsorted(self.labels, lab)
        bad = (pos >= self.n) | (self.labels[np.minimum(pos, self.n - 1)] != lab)
        if bad.any():
            raise KeyError(f"unknown node id(s): {np.unique(lab[bad])[:5]}")
        return pos

    # -- derived graphs ----------------------------------------------------

    def subgraph(self, nodes: np.ndarray) -> "Graph":
        """Induced subgraph; nodes are relabeled 0..len(nodes)-1 in given order."""
        nodes = np.asarray(nodes, dtype=np.int64)
        remap = np.full(self.n, -1, dtype=np.int64)
        remap[nodes] = np.arange(nodes.shape[0])
        e = self.edge_array()
        keep = (remap[e[:, 0]] >= 0) & (remap[e[:, 1]] >= 0)
        sub_edges = remap[e[keep]]
        labels = None if self.labels is None else self.labels[nodes]
        return Graph.from_edges(sub_edges, n=nodes.shape[0], labels=labels)

    def remove_edges(self, dyads: np.ndarray) -> "Graph":
        """Copy of the graph with the given dyads deleted (nodes retained)."""
        dyads = np.asarray(dyads, dtype=np.int64).reshape(-1, 2)
        u = np.minimum(dyads[:, 0], dyads[:, 1])
        v = np.maximum(dyads[:, 0], dyads[:, 1])
        drop = set((u * self.n + v).tolist())
        e = self.edge_array()
        keys = e[:, 0] * self.n + e[:, 1]
        keep = np.array([k not in drop for k in keys.tolist()], dtype=bool)
        return Graph.from_edges(e[keep], n=self.n, labels=self.labels)

    # -- equality / repr ---------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        same_labels = (
            (self.labels is None and other.labels is None)
            or (self.labels is not None and other.labels is not None
                and np.array_equal(self.labels, other.labels))
        )
        return (self.n == other.n and same_labels
                and np.array_equal(self.indptr, other.indptr)
                and np.array_equal(self.indices, other.indices))

    def __hash__(self):  # arrays are frozen; identity hash is fine
        return id(self)

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"

    # -- serialization -----------------------------------------------------

    def to_edge_list(self, stream=None) -> str | None:
        """Write one 'u v' line per undirected edge, using original labels."""
        e = self.edge_array()
        if self.labels is not None:
            e = self.labels[e]
        lines = [f"{u} {v}" for u, v in e.tolist()]
        text = "\n".join(lines) + ("\n" if lines else "")
        if stream is None:
            return text
        stream.write(text)
        return None


def _iter_lines(source) -> Iterator[str]:
    if isinstance(source, (str, os.PathLike)):
        with open(source, "rt", encoding="utf-8") as fh:
            yield from fh
    elif isinstance(source, bytes):
        yield from io.StringIO(source.decode("utf-8"))
    elif hasattr(source, "read"):
        for line in source:
            yield line.decode("utf-8") if isinstance(line, bytes) else line
    else:  # iterable of lines
        for line in source:
            yield line.decode("utf-8") if isinstance(line, bytes) else line


def parse_edge_list(source: "str | os.PathLike | bytes | Iterable[str]") -> Graph:
    """Parse a SNAP-style plain-text edge list into a Graph.

    Lines starting with '#' are comments; data lines are two whitespace
    separated integer node ids. SNAP files list each undirected edge in both
    directions: reciprocal and duplicate pairs collapse to one edge, and
    self-loops are dropped. Node ids are relabeled to 0..n-1 (ascending
    original id); the original ids are retained in ``labels``.
    """
    us: list[int] = []
    vs: list[int] = []
    for ln, raw in enumerate(_iter_lines(source), 1):
        s = raw.strip()
        if not s or s.startswith("#"):
            continue
        parts = s.split()
        if len(parts) != 2:
            raise ParseError(f"expected two node ids, got {len(parts)} tokens", ln)
        try:
            us.append(int(parts[0]))
            vs.append(int(parts[1]))
        except ValueError:
            raise ParseError(f"non-integer token in {s!r}", ln) from None
    if not us:
        raise ParseError("no data lines found")
    raw_edges = np.column_stack([np.asarray(us, dtype=np.int64),
                                 np.asarray(vs, dtype=np.int64)])
    labels = np.unique(raw_edges)
    internal = np.searchsorted(labels, raw_edges)
    return Graph.from_edges(internal, n=labels.shape[0], labels=labels)
