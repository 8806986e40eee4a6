"""Greedy angular routing on OSW graphs.

At every step the message moves to the out-neighbour whose direction from the
origin makes the smallest angle with the target. Cosines are compared exactly
(as signed squared rationals), so routes never depend on floating-point
rounding; ties go to the lexicographically smallest vertex.
"""

from __future__ import annotations

import math
import statistics
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

import numpy as np

from . import rng
from .errors import ParameterError
from .octagraph import OctahedralGraph, Vertex, build_octahedral_graph
from .oswmodel import OswGraph, sample_osw

DELIVERED = "delivered"
LOOP_DETECTED = "loop_detected"
HOP_LIMIT = "hop_limit"

# Stream index for (s, t) selection inside a trial; vertex streams use 0..|V|-1.
PAIR_STREAM = 1 << 63


@dataclass(frozen=True)
class RoutePath:
    vertices: list[Vertex]
    indices: list[int] = field(repr=False)
    outcome: str

    @property
    def forwards(self) -> int:
        return len(self.vertices) - 1

    @property
    def delivered(self) -> bool:
        return self.outcome == DELIVERED

    def to_dict(self) -> dict:
        return {
            "vertices": [list(v) for v in self.vertices],
            "forwards": self.forwards,
            "outcome": self.outcome,
        }


def _cosine_key(v: Vertex, t: Vertex) -> Fraction:
    """Monotone in cos(angle(v, t)): sign(v.t) * (v.t)^2 / |v|^2."""
    dot = v[0] * t[0] + v[1] * t[1] + v[2] * t[2]
    return Fraction(dot * abs(dot), v[0] * v[0] + v[1] * v[1] + v[2] * v[2])


def _out_neighbors(G) -> list[list[int]]:
    if isinstance(G, OswGraph):
        return G.out_neighbors
    return G.adjacency


def _base(G) -> OctahedralGraph:
    return G.base if isinstance(G, OswGraph) else G


def next_hop(G: Union[OswGraph, OctahedralGraph], u: int, t: int) -> int:
    base = _base(G)
    tv = base.vertices[t]
    # max cosine, then smallest index (== lexicographically smallest coordinates)
    return max(_out_neighbors(G)[u], key=lambda v: (_cosine_key(base.vertices[v], tv), -v))


def greedy_route(G: Union[OswGraph, OctahedralGraph], s, t, hop_limit: int | None = None) -> RoutePath:
    """Route from s to t. Passing a bare :class:`OctahedralGraph` routes on base edges only."""
    base = _base(G)
    si, ti = base.index_of(s), base.index_of(t)
    if hop_limit is None:
        hop_limit = 4 * len(base)
    path = [si]
    seen = {si}
    outcome = DELIVERED
    u = si
    while u != ti:
        if len(path) - 1 >= hop_limit:
            outcome = HOP_LIMIT
            break
        v = next_hop(G, u, ti)
        if v in seen:
            outcome = LOOP_DETECTED
            break
        path.append(v)
        seen.add(v)
        u = v
    return RoutePath(vertices=[base.vertices[i] for i in path], indices=path, outcome=outcome)


def phase_of(distance: int) -> int:
    """Phase j with 2^j < d <= 2^(j+1); phase 0 covers d <= 2."""
    return max(0, (int(distance) - 1).bit_length() - 1)


def max_phase(n: int) -> int:
    return math.ceil(math.log2(n)) + 1 if n > 1 else 1


@dataclass(frozen=True)
class PhaseBreakdown:
    counts: list[int]

    @property
    def total(self) -> int:
        return sum(self.counts)

    @property
    def highest(self) -> int:
        occupied = [j for j, c in enumerate(self.counts) if c]
        return occupied[-1] if occupied else 0


def phase_decomposition(G: Union[OswGraph, OctahedralGraph], path: RoutePath, t) -> PhaseBreakdown:
    base = _base(G)
    ti = base.index_of(t)
    if path.outcome == DELIVERED and path.indices[-1] != ti:
        raise ParameterError("path was not routed to the given target")
    counts = [0] * (max_phase(base.n) + 1)
    if path.forwards:
        dist = base.distance_matrix[ti]
        for u in path.indices[:-1]:
            counts[phase_of(dist[u])] += 1
    return PhaseBreakdown(counts=counts)


def choose_pair(nv: int, key) -> tuple[int, int]:
    """Uniform ordered pair of distinct vertex indices from one stream key."""
    pair_key = rng.derive(np.uint64(key), np.uint64(PAIR_STREAM))
    x = rng.uniforms(pair_key, np.arange(2))
    s = min(int(x[0] * nv), nv - 1)
    t = min(int(x[1] * (nv - 1)), nv - 2)
    if t >= s:
        t += 1
    return s, t


@dataclass(frozen=True)
class RouteTrial:
    n: int
    seed: int
    trial: int
    src: Vertex
    dst: Vertex
    forwards: int
    outcome: str
    phases: list[int]


def run_route_trial(G: OctahedralGraph, seed: int, trial: int) -> RouteTrial:
    key = rng.trial_seed(seed, trial)
    osw = sample_osw(G, key)
    s, t = choose_pair(len(G), key)
    path = greedy_route(osw, G.vertices[s], G.vertices[t])
    phases = phase_decomposition(osw, path, G.vertices[t])
    return RouteTrial(G.n, seed, trial, G.vertices[s], G.vertices[t], path.forwards, path.outcome, phases.counts)


@dataclass
class RoutingStats:
    n: int
    trials: int
    seed: int
    mean_forwards: float
    median_forwards: float
    max_forwards: int
    delivery_rate: float
    phase_means: list[float]
    rows: list[RouteTrial] = field(repr=False, default_factory=list)

    def summary(self) -> dict:
        return {
            "n": self.n,
            "trials": self.trials,
            "seed": self.seed,
            "mean_forwards": self.mean_forwards,
            "median_forwards": self.median_forwards,
            "max_forwards": self.max_forwards,
            "delivery_rate": self.delivery_rate,
            "phase_means": self.phase_means,
        }


def routing_experiment(n: int, trials: int, seed: int, threads: int = 1) -> RoutingStats:
    if isinstance(trials, bool) or not isinstance(trials, int) or trials < 1:
        raise ParameterError(f"trials must be a positive integer, got {trials!r}")
    seed = rng.check_seed(seed)
    G = build_octahedral_graph(n)
    G.distance_matrix  # build shared caches before fanning out
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(lambda k: run_route_trial(G, seed, k), range(trials)))
    else:
        rows = [run_route_trial(G, seed, k) for k in range(trials)]
    forwards = [r.forwards for r in rows]
    width = max_phase(n) + 1
    return RoutingStats(
        n=n,
        trials=trials,
        seed=seed,
        mean_forwards=statistics.fmean(forwards),
        median_forwards=float(statistics.median(forwards)),
        max_forwards=max(forwards),
        delivery_rate=sum(r.outcome == DELIVERED for r in rows) / trials,
        phase_means=[statistics.fmean(r.phases[j] for r in rows) for j in range(width)],
        rows=rows,
    )
