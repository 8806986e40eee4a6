"""Inverse-square long-range edges on top of the octahedral base graph.

Each vertex u makes exactly one independent trial and picks a target
v != u with probability Z_u / d(u, v)^2. A pick that lands on a base
neighbour adds no edge (the directed base edge is already present); it is
kept as the trial outcome and flagged ``deduped``.

Sampling is inverse-CDF over targets sorted by (distance, index). All targets
in one distance ring carry the same probability, so the CDF is stored per
ring and the position inside the ring is read off the same uniform draw.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache

import numpy as np

from . import rng
from .octagraph import OctahedralGraph, Vertex, bfs_distances, ring_sizes


def _ring_weights(sizes: np.ndarray) -> np.ndarray:
    i = np.arange(len(sizes), dtype=np.float64)
    w = np.zeros(len(sizes), dtype=np.float64)
    w[1:] = sizes[1:] / i[1:] ** 2
    return w


def normalizing_factor(G: OctahedralGraph, u) -> float:
    sizes = ring_sizes(bfs_distances(G, u).dist, G.n)
    return 1.0 / float(_ring_weights(sizes).sum())


def normalizing_factor_exact(G: OctahedralGraph, u) -> Fraction:
    sizes = ring_sizes(bfs_distances(G, u).dist, G.n)
    total = sum(Fraction(int(c), i * i) for i, c in enumerate(sizes) if i)
    return 1 / total


@dataclass(frozen=True)
class LongRangeDistribution:
    source: int
    targets: np.ndarray
    probabilities: np.ndarray
    z: float

    def as_dict(self) -> dict[int, float]:
        return dict(zip(self.targets.tolist(), self.probabilities.tolist()))


def long_range_distribution(G: OctahedralGraph, u) -> LongRangeDistribution:
    field_ = bfs_distances(G, u)
    s = field_.source
    z = 1.0 / float(_ring_weights(ring_sizes(field_.dist, G.n)).sum())
    targets = np.array([j for j in range(len(G)) if j != s], dtype=np.int64)
    d = field_.dist[targets].astype(np.float64)
    return LongRangeDistribution(source=s, targets=targets, probabilities=z / d**2, z=z)


class SamplingTable:
    """Per-vertex ring CDFs and distance-sorted target lists for a whole graph.

    Built once per graph from the all-pairs distance matrix. ``order[u]``
    lists every vertex sorted by (distance from u, index), with u itself first.
    """

    def __init__(self, G: OctahedralGraph):
        D = G.distance_matrix
        nv, rings = len(G), 2 * G.n + 1
        dtype = np.int16 if nv < np.iinfo(np.int16).max else np.int32
        self.order = np.empty((nv, nv), dtype=dtype)
        sizes = np.empty((nv, rings), dtype=np.int64)
        for lo in range(0, nv, 1024):
            block = D[lo : lo + 1024]
            self.order[lo : lo + len(block)] = np.argsort(block, axis=1, kind="stable")
            for k, row in enumerate(block):
                sizes[lo + k] = np.bincount(row, minlength=rings)
        self.sizes = sizes
        self.start = np.cumsum(sizes, axis=1) - sizes
        i = np.arange(rings, dtype=np.float64)
        weights = np.zeros((nv, rings))
        weights[:, 1:] = sizes[:, 1:] / i[1:] ** 2
        self.weights = weights
        self.cumulative = np.cumsum(weights, axis=1)
        self.total = self.cumulative[:, -1].copy()
        self.last_ring = (D.max(axis=1)).astype(np.int64)

    @property
    def z(self) -> np.ndarray:
        return 1.0 / self.total

    def draw(self, vertices: np.ndarray, x: np.ndarray) -> np.ndarray:
        """Targets for ``vertices`` given uniforms ``x`` in [0, 1) (same shape)."""
        vertices = np.asarray(vertices, dtype=np.int64)
        x = np.asarray(x, dtype=np.float64)
        y = x * self.total[vertices]
        cum = self.cumulative[vertices]
        k = (cum <= y[..., None]).sum(axis=-1)
        k = np.minimum(k, self.last_ring[vertices])
        below = np.take_along_axis(cum, (k - 1)[..., None], axis=-1)[..., 0]
        w = self.weights[vertices, k]
        size = self.sizes[vertices, k]
        pos = np.floor((y - below) / w * size).astype(np.int64)
        pos = np.clip(pos, 0, size - 1)
        return self.order[vertices, self.start[vertices, k] + pos].astype(np.int64)


@lru_cache(maxsize=4)
def sampling_table(G: OctahedralGraph) -> SamplingTable:
    return SamplingTable(G)


@dataclass(frozen=True, eq=False)
class OswGraph:
    base: OctahedralGraph
    long_range: np.ndarray
    seed: int
    deduped: np.ndarray = field(repr=False)

    @property
    def n(self) -> int:
        return self.base.n

    def __len__(self) -> int:
        return len(self.base)

    @cached_property
    def out_neighbors(self) -> list[list[int]]:
        """Directed out-adjacency: base neighbours plus any new long-range target."""
        out = [list(nbrs) for nbrs in self.base.adjacency]
        for u in np.flatnonzero(~self.deduped):
            out[u].append(int(self.long_range[u]))
        return out

    def long_range_edges(self) -> list[tuple[int, int, bool]]:
        return [(u, int(v), bool(d)) for u, (v, d) in enumerate(zip(self.long_range, self.deduped))]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.base.adjacency_sets[u] or (self.long_range[u] == v)

    def vertex(self, i: int) -> Vertex:
        return self.base.vertices[i]


def dedup_flags(G: OctahedralGraph, targets: np.ndarray) -> np.ndarray:
    """True where row-wise target is already a base neighbour of its source."""
    targets = np.asarray(targets)
    src = np.broadcast_to(np.arange(len(G)), targets.shape)
    D = G.distance_matrix
    return D[src, targets] == 1


def vertex_uniforms(seed, vertices) -> np.ndarray:
    """The single trial uniform of each vertex in the graph sampled with ``seed``."""
    return rng.uniforms(rng.derive(np.asarray(seed, dtype=np.uint64), np.asarray(vertices, dtype=np.uint64)))


def sample_targets(G: OctahedralGraph, seed: int, vertices=None) -> np.ndarray:
    """Long-range targets for a subset of vertices (all by default).

    The result for a vertex depends only on (seed, vertex index).
    """
    seed = rng.check_seed(seed)
    table = sampling_table(G)
    if vertices is None:
        vertices = np.arange(len(G))
    vertices = np.asarray(vertices, dtype=np.int64)
    return table.draw(vertices, vertex_uniforms(np.uint64(seed), vertices))


def sample_osw(G: OctahedralGraph, seed: int) -> OswGraph:
    targets = sample_targets(G, seed)
    return OswGraph(base=G, long_range=targets, seed=int(seed), deduped=dedup_flags(G, targets))


def sample_target_batch(G: OctahedralGraph, seeds: np.ndarray) -> np.ndarray:
    """Row k equals ``sample_osw(G, seeds[k]).long_range``."""
    seeds = np.asarray(seeds, dtype=np.uint64)
    table = sampling_table(G)
    verts = np.arange(len(G), dtype=np.int64)
    out = np.empty((len(seeds), len(G)), dtype=np.int64)
    step = max(1, 2_000_000 // (len(G) * (2 * G.n + 1)))
    for lo in range(0, len(seeds), step):
        s = seeds[lo : lo + step]
        x = vertex_uniforms(s[:, None], verts[None, :])
        out[lo : lo + len(s)] = table.draw(np.broadcast_to(verts, x.shape), x)
    return out


def sample_vertex_draws(G: OctahedralGraph, u, seed: int, count: int) -> np.ndarray:
    """``count`` independent targets for one vertex, from trial seeds derived from ``seed``."""
    s = G.index_of(u)
    seeds = rng.trial_seeds(seed, count)
    table = sampling_table(G)
    out = np.empty(count, dtype=np.int64)
    for lo in range(0, count, 1 << 18):
        chunk = seeds[lo : lo + (1 << 18)]
        x = vertex_uniforms(chunk, np.uint64(s))
        out[lo : lo + len(chunk)] = table.draw(np.full(len(chunk), s), x)
    return out
