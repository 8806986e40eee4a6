"""The n-octahedral base graph: integer points of the L1 sphere of radius n.

Vertices are stored in lexicographic order of their coordinates, so vertex
indices are deterministic for a given ``n`` and the smallest index of any
vertex set is also its lexicographically smallest member.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

from .errors import ParameterError, UnknownVertexError

Vertex = tuple[int, int, int]

_OFFSETS = [d for d in itertools.product((-1, 0, 1), repeat=3) if d != (0, 0, 0)]


def octahedron_points(n: int) -> list[Vertex]:
    """All integer triples with |u1| + |u2| + |u3| = n, lexicographically sorted."""
    points = []
    for a in range(-n, n + 1):
        rest = n - abs(a)
        for b in range(-rest, rest + 1):
            c = rest - abs(b)
            points.append((a, b, -c))
            if c:
                points.append((a, b, c))
    points.sort()
    return points


@dataclass(frozen=True, eq=False)
class OctahedralGraph:
    n: int
    vertices: list[Vertex]
    adjacency: list[list[int]]
    index: dict[Vertex, int] = field(repr=False)

    def __len__(self) -> int:
        return len(self.vertices)

    def __contains__(self, u) -> bool:
        return tuple(u) in self.index

    def index_of(self, u) -> int:
        try:
            return self.index[tuple(int(x) for x in u)]
        except (KeyError, TypeError, ValueError):
            raise UnknownVertexError(f"{u!r} is not a vertex of G'_{self.n}") from None

    def edges(self) -> list[tuple[int, int]]:
        """Undirected edges as index pairs (i, j) with i < j, in canonical order."""
        return [(i, j) for i, nbrs in enumerate(self.adjacency) for j in nbrs if i < j]

    @cached_property
    def coords(self) -> np.ndarray:
        return np.array(self.vertices, dtype=np.int64)

    @cached_property
    def edge_array(self) -> np.ndarray:
        return np.array(self.edges(), dtype=np.int64).reshape(-1, 2)

    @cached_property
    def adjacency_sets(self) -> list[frozenset[int]]:
        return [frozenset(nbrs) for nbrs in self.adjacency]

    @cached_property
    def csr(self) -> csr_matrix:
        e = self.edge_array
        rows = np.concatenate([e[:, 0], e[:, 1]])
        cols = np.concatenate([e[:, 1], e[:, 0]])
        data = np.ones(len(rows), dtype=np.int8)
        return csr_matrix((data, (rows, cols)), shape=(len(self), len(self)))

    @cached_property
    def distance_matrix(self) -> np.ndarray:
        """All-pairs hop distances as uint8 (the diameter 2n must fit, so n <= 127).

        Cached on first use; Theta(n^4) memory, so prefer :func:`bfs_distances`
        for one-off queries on large graphs.
        """
        if 2 * self.n > 255:
            raise ParameterError("all-pairs distance cache supports n <= 127")
        nv = len(self)
        out = np.empty((nv, nv), dtype=np.uint8)
        for lo in range(0, nv, 512):
            idx = np.arange(lo, min(nv, lo + 512))
            d = shortest_path(self.csr, method="D", unweighted=True, directed=False, indices=idx)
            out[lo : lo + len(idx)] = d
        return out


def build_octahedral_graph(n: int) -> OctahedralGraph:
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 1:
        raise ParameterError(f"size parameter n must be a positive integer, got {n!r}")
    n = int(n)
    vertices = octahedron_points(n)
    index = {v: i for i, v in enumerate(vertices)}
    adjacency = []
    for v in vertices:
        nbrs = []
        for d in _OFFSETS:
            j = index.get((v[0] + d[0], v[1] + d[1], v[2] + d[2]))
            if j is not None:
                nbrs.append(j)
        nbrs.sort()
        adjacency.append(nbrs)
    return OctahedralGraph(n=n, vertices=vertices, adjacency=adjacency, index=index)


def neighbors(G: OctahedralGraph, u) -> set[Vertex]:
    i = G.index_of(u)
    return {G.vertices[j] for j in G.adjacency[i]}


@dataclass(frozen=True)
class DistanceField:
    source: int
    dist: np.ndarray

    def __getitem__(self, j: int) -> int:
        return int(self.dist[j])

    @property
    def eccentricity(self) -> int:
        return int(self.dist.max())


def bfs_distances(G: OctahedralGraph, u) -> DistanceField:
    """Hop distances from ``u`` by breadth-first search; allocates its own state."""
    s = G.index_of(u)
    dist = [-1] * len(G)
    dist[s] = 0
    queue = deque([s])
    adj = G.adjacency
    while queue:
        x = queue.popleft()
        dx = dist[x] + 1
        for y in adj[x]:
            if dist[y] < 0:
                dist[y] = dx
                queue.append(y)
    return DistanceField(source=s, dist=np.array(dist, dtype=np.int64))


def ring(G: OctahedralGraph, u, i: int) -> set[Vertex]:
    """Vertices at hop distance exactly ``i`` from ``u``."""
    if isinstance(i, bool) or not isinstance(i, (int, np.integer)) or i < 1:
        raise ParameterError(f"ring distance must be a positive integer, got {i!r}")
    field_ = bfs_distances(G, u)
    return {G.vertices[j] for j in np.flatnonzero(field_.dist == i)}


def ring_sizes(dist: np.ndarray, n: int) -> np.ndarray:
    """Counts |P_ui| for i = 0..2n from one distance row (entry 0 is the source)."""
    return np.bincount(np.asarray(dist, dtype=np.int64), minlength=2 * n + 1)
