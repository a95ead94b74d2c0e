"""Descriptive network statistics: degrees, components, exact diameter, max clique.

The diameter routine uses double-sweep + iFUB so that large sparse graphs
need only a handful of BFS passes; the answer is still exact. Max clique is
Bron-Kerbosch with pivoting over a degeneracy ordering, with an incumbent
bound and a wall-clock budget.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, asdict

import numpy as np

from .graph import Graph


class CliqueTimeout(RuntimeError):
    """Clique search ran out of budget; carries the best clique found so far."""

    def __init__(self, size: int, witness: list[int]):
        self.size = size
        self.witness = witness
        super().__init__(f"clique search timed out; best lower bound {size}")


@dataclass
class GraphStats:
    n: int
    m: int
    density: float
    mean_degree: float
    max_degree: int
    degree_threshold: int
    high_degree_count: int
    components: int
    giant_fraction: float
    giant_diameter: int
    max_clique: int

    def to_json(self, **kwargs) -> str:
        return json.dumps(asdict(self), **kwargs)


def degree_summary(graph: Graph, threshold: int = 400):
    """(mean degree, max degree, count of nodes with degree > threshold)."""
    if graph.n == 0:
        raise ValueError("degree summary of empty graph")
    deg = graph.degrees
    return 2.0 * graph.m / graph.n, int(deg.max()), int((deg > threshold).sum())


def connected_components(graph: Graph):
    """Union-find partition.

    Returns (component count, giant size, per-node component id); ids are
    assigned 0.. in order of each component's smallest node.
    """
    n = graph.n
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]  # path halving
            x = parent[x]
        return x

    for u, v in graph.edge_array().tolist():
        ru, rv = find(u), find(v)
        if ru != rv:
            if ru < rv:
                parent[rv] = ru
            else:
                parent[ru] = rv

    comp_ids = np.empty(n, dtype=np.int64)
    root_to_id: dict[int, int] = {}
    for v in range(n):
        r = find(v)
        if r not in root_to_id:
            root_to_id[r] = len(root_to_id)
        comp_ids[v] = root_to_id[r]
    count = len(root_to_id)
    sizes = np.bincount(comp_ids, minlength=count)
    giant = int(sizes.max()) if count else 0
    return count, giant, comp_ids


def bfs_distances(graph: Graph, source: int) -> np.ndarray:
    """Hop distances from source; -1 for unreachable nodes."""
    indptr, indices = graph.indptr, graph.indices
    dist = np.full(graph.n, -1, dtype=np.int32)
    dist[source] = 0
    frontier = np.array([source], dtype=np.int64)
    d = 0
    while frontier.size:
        starts = indptr[frontier]
        counts = indptr[frontier + 1] - starts
        total = int(counts.sum())
        if total == 0:
            break
        base = np.cumsum(counts) - counts
        offs = np.arange(total, dtype=np.int64) + np.repeat(starts - base, counts)
        neigh = indices[offs].astype(np.int64)
        new = np.unique(neigh[dist[neigh] < 0])
        if new.size == 0:
            break
        d += 1
        dist[new] = d
        frontier = new
    return dist


def _ecc(graph: Graph, v: int) -> int:
    return int(bfs_distances(graph, v).max())


def diameter(graph: Graph, component_nodes: np.ndarray | None = None) -> int:
    """Exact diameter of a connected component (edge count).

    ``component_nodes`` restricts to one component; default is the whole
    graph, which must then be connected. Double-sweep gives the starting
    lower bound; the iFUB fringe descent certifies exactness.
    """
    g = graph if component_nodes is None else graph.subgraph(np.asarray(component_nodes))
    if g.n == 0:
        raise ValueError("empty component")
    if g.n == 1:
        return 0
    d0 = bfs_distances(g, int(np.argmax(g.degrees)))
    if (d0 < 0).any():
        raise ValueError("component is not connected")
    # double sweep: a = farthest from a hub, b = farthest from a
    a = int(np.argmax(d0))
    da = bfs_distances(g, a)
    lb = int(da.max())
    b = int(np.argmax(da))
    db = bfs_distances(g, b)
    # root at an (approximate) a-b midpoint, then iFUB over its BFS levels
    on_path = da + db == lb
    mids = np.nonzero(on_path & (np.abs(da - lb // 2) == np.abs(da[on_path] - lb // 2).min()))[0]
    u = int(mids[0]) if mids.size else a
    du = bfs_distances(g, u)
    i = int(du.max())
    lb = max(lb, i)
    ub = 2 * i
    levels = [np.nonzero(du == k)[0] for k in range(i + 1)]
    while ub > lb and i > 0:
        for v in levels[i]:
            e = _ecc(g, int(v))
            if e > lb:
                lb = e
        ub = 2 * (i - 1)
        i -= 1
    return lb


def degeneracy_order(graph: Graph) -> list[int]:
    """Vertices in degeneracy (min-degree peel) order via bucket queues."""
    n = graph.n
    deg = graph.degrees.tolist()
    maxdeg = max(deg) if n else 0
    bins: list[list[int]] = [[] for _ in range(maxdeg + 1)]
    for v in range(n):
        bins[deg[v]].append(v)
    adj = [graph.neighbors(v).tolist() for v in range(n)]
    removed = [False] * n
    order: list[int] = []
    d = 0
    while len(order) < n:
        while d <= maxdeg and not bins[d]:
            d += 1
        v = bins[d].pop()
        if removed[v] or deg[v] != d:
            continue
        removed[v] = True
        order.append(v)
        for w in adj[v]:
            if not removed[w]:
                deg[w] -= 1
                bins[deg[w]].append(w)
        d = max(0, d - 1)
    return order


def _greedy_clique(adj: list[set[int]], seeds: list[int]) -> list[int]:
    best: list[int] = []
    for s in seeds:
        clique = [s]
        cand = sorted(adj[s], key=lambda w: -len(adj[w]))
        for w in cand:
            if all(w in adj[c] for c in clique):
                clique.append(w)
        if len(clique) > len(best):
            best = clique
    return best


def max_clique(graph: Graph, time_budget: float = 900.0):
    """Exact maximum clique: (size, witness node list).

    Bron-Kerbosch with pivoting, run per vertex along a degeneracy ordering,
    pruned by the incumbent size. Raises CliqueTimeout (carrying the best
    clique found) if the budget is exceeded.
    """
    n = graph.n
    if n == 0:
        return 0, []
    if graph.m == 0:
        return 1, [0]
    adj = [set(graph.neighbors(v).tolist()) for v in range(n)]
    order = degeneracy_order(graph)
    pos = {v: i for i, v in enumerate(order)}
    seeds = sorted(range(n), key=lambda v: -len(adj[v]))[:32]
    best = _greedy_clique(adj, seeds)
    state = {"size": len(best), "witness": list(best)}
    deadline = time.monotonic() + time_budget

    def expand(clique: list[int], cand: set[int], excl: set[int]):
        if time.monotonic() > deadline:
            raise CliqueTimeout(state["size"], state["witness"])
        if not cand and not excl:
            if len(clique) > state["size"]:
                state["size"] = len(clique)
                state["witness"] = list(clique)
            return
        if len(clique) + len(cand) <= state["size"]:
            return
        pivot = max(cand | excl, key=lambda u: len(cand & adj[u]))
        for v in list(cand - adj[pivot]):
            expand(clique + [v], cand & adj[v], excl & adj[v])
            cand.remove(v)
            excl.add(v)
            if len(clique) + len(cand) <= state["size"]:
                return

    for v in order:
        later = {w for w in adj[v] if pos[w] > pos[v]}
        if len(later) + 1 <= state["size"]:
            continue
        earlier = adj[v] - later
        expand([v], later, earlier)
    return state["size"], sorted(state["witness"])


def full_stats(graph: Graph, degree_threshold: int = 400,
               clique_budget: float = 900.0) -> GraphStats:
    """Compose the descriptive statistics into one report."""
    mean_deg, max_deg, high = degree_summary(graph, degree_threshold)
    count, giant, comp_ids = connected_components(graph)
    giant_id = int(np.argmax(np.bincount(comp_ids)))
    giant_nodes = np.nonzero(comp_ids == giant_id)[0]
    diam = diameter(graph, giant_nodes)
    clique_size, _ = max_clique(graph, time_budget=clique_budget)
    density = graph.m / (graph.n * (graph.n - 1) / 2.0) if graph.n > 1 else 0.0
    return GraphStats(
        n=graph.n,
        m=graph.m,
        density=density,
        mean_degree=mean_deg,
        max_degree=max_deg,
        degree_threshold=degree_threshold,
        high_degree_count=high,
        components=count,
        giant_fraction=giant / graph.n if graph.n else 0.0,
        giant_diameter=diam,
        max_clique=clique_size,
    )
