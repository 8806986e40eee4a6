"""Directed 3-cycle census of OSW graphs, classified by edge composition.

An edge of a cycle is ``s`` when its endpoints are adjacent in the base graph
and ``w`` otherwise (then it can only be a long-range edge). A cycle's label
reads the three edge types in cycle order starting from its root. Totals use
the canonical root, the lexicographically smallest vertex of the cycle, so
every directed cycle is counted once; the per-vertex "rooted" view counts a
cycle once for each of its three vertices.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

import numpy as np

from . import rng
from .octagraph import OctahedralGraph, bfs_distances, build_octahedral_graph
from .oswmodel import OswGraph, dedup_flags, sample_target_batch

CLASSES = ("sss", "ssw", "sws", "sww", "wss", "wsw", "wws", "www")
NONBASE = CLASSES[1:]
# ssw -> E1, sws -> E2, ..., www -> E7
EVENT_OF = {label: i for i, label in enumerate(CLASSES) if i}


@dataclass
class CensusReport:
    n: int
    counts: dict[str, int]
    base_undirected: int
    nonbase_total: int
    rooted_indicator_fraction: float
    rooted_counts: np.ndarray = field(repr=False)
    rooted_events: np.ndarray = field(repr=False)

    @property
    def total_c3(self) -> int:
        """Undirected base triangles plus directed non-base cycles."""
        return self.base_undirected + self.nonbase_total

    def row(self) -> list:
        return [self.base_undirected] + [self.counts[c] for c in NONBASE] + [
            self.nonbase_total,
            self.rooted_indicator_fraction,
        ]


def _out_table(G: Union[OswGraph, OctahedralGraph], long_range=None, deduped=None) -> np.ndarray:
    base = G.base if isinstance(G, OswGraph) else G
    if isinstance(G, OswGraph):
        long_range, deduped = G.long_range, G.deduped
    nv = len(base)
    out = np.full((nv, 7), -1, dtype=np.int64)
    for u, nbrs in enumerate(base.adjacency):
        out[u, : len(nbrs)] = nbrs
    if long_range is not None:
        keep = ~np.asarray(deduped)
        out[keep, 6] = np.asarray(long_range)[keep]
    return out


def enumerate_cycles(base: OctahedralGraph, out: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Every rotation (u, a, b) of every directed 3-cycle, with its class code.

    ``out`` is a padded out-adjacency table (-1 for no edge). Class code bit 2
    is the (u, a) edge, bit 1 (a, b), bit 0 (b, u); a set bit means ``w``.
    """
    nv = len(base)
    src = np.repeat(np.arange(nv), out.shape[1])
    dst = out.ravel()
    ok = dst >= 0
    src, dst = src[ok], dst[ok]
    keys = np.sort(src * nv + dst)

    # (u, a) over all directed edges, b over out(a)
    u = np.repeat(src, out.shape[1])
    a = np.repeat(dst, out.shape[1])
    b = out[dst].ravel()
    ok = (b >= 0) & (b != u)
    u, a, b = u[ok], a[ok], b[ok]
    back = b * nv + u
    pos = np.searchsorted(keys, back)
    pos[pos == len(keys)] = 0
    hit = keys[pos] == back
    cyc = np.stack([u[hit], a[hit], b[hit]], axis=1)

    D = base.distance_matrix
    w1 = D[cyc[:, 0], cyc[:, 1]] != 1
    w2 = D[cyc[:, 1], cyc[:, 2]] != 1
    w3 = D[cyc[:, 2], cyc[:, 0]] != 1
    code = (w1.astype(np.int64) << 2) | (w2.astype(np.int64) << 1) | w3.astype(np.int64)
    return cyc, code


def census_from_out(base: OctahedralGraph, out: np.ndarray) -> CensusReport:
    nv = len(base)
    cyc, code = enumerate_cycles(base, out)
    canonical = (cyc[:, 0] < cyc[:, 1]) & (cyc[:, 0] < cyc[:, 2])
    hist = np.bincount(code[canonical], minlength=8)
    counts = {c: int(hist[i]) for i, c in enumerate(CLASSES)}

    nb = code > 0
    rooted_counts = np.bincount(cyc[nb, 0], minlength=nv)
    events = np.zeros((nv, 8), dtype=bool)
    events[cyc[nb, 0], code[nb]] = True
    nonbase_total = sum(counts[c] for c in NONBASE)
    return CensusReport(
        n=base.n,
        counts=counts,
        base_undirected=counts["sss"] // 2,
        nonbase_total=nonbase_total,
        rooted_indicator_fraction=float(np.count_nonzero(rooted_counts)) / nv,
        rooted_counts=rooted_counts,
        rooted_events=events[:, 1:],
    )


def c3_census(G: Union[OswGraph, OctahedralGraph]) -> CensusReport:
    """Census of directed 3-cycles; a bare base graph gives the base-only census."""
    base = G.base if isinstance(G, OswGraph) else G
    return census_from_out(base, _out_table(G))


def rooted_events(G: Union[OswGraph, OctahedralGraph], u) -> list[bool]:
    """Flags for E1..E7 at ``u``: some non-base cycle starting at u has that label."""
    base = G.base if isinstance(G, OswGraph) else G
    i = base.index_of(u)
    return c3_census(G).rooted_events[i].tolist()


# -- exact oracle at n = 1 ---------------------------------------------------


def _brute_force_cycles(nv: int, edges: set[tuple[int, int]], base_edges: set[tuple[int, int]]):
    """Yield (u, a, b, label) for every rotation of every directed 3-cycle."""
    for u, a, b in itertools.permutations(range(nv), 3):
        if (u, a) in edges and (a, b) in edges and (b, u) in edges:
            label = "".join("s" if e in base_edges else "w" for e in ((u, a), (a, b), (b, u)))
            yield u, a, b, label


@dataclass(frozen=True)
class ExactC3Result:
    total_probability: Fraction
    expected_nonbase: Fraction
    pr_eu: list[Fraction]
    pr_event: list[list[Fraction]]

    def to_dict(self) -> dict:
        return {
            "total_probability": str(self.total_probability),
            "expected_nonbase_c3": str(self.expected_nonbase),
            "pr_eu": [str(p) for p in self.pr_eu],
            "pr_event": {f"E{i + 1}": [str(p) for p in col] for i, col in enumerate(zip(*self.pr_event))},
        }


def exact_c3_expectation_n1() -> ExactC3Result:
    """Exact E[X] and Pr(E_u) at n = 1 by weighting all 5^6 joint outcomes.

    Cycles are found by brute force over ordered vertex triples, independently
    of :func:`c3_census`.
    """
    G = build_octahedral_graph(1)
    nv = len(G)
    base_edges = {(i, j) for i in range(nv) for j in G.adjacency[i]}
    choices = []
    for u in range(nv):
        dist = bfs_distances(G, G.vertices[u]).dist
        inv = {t: Fraction(1, int(dist[t]) ** 2) for t in range(nv) if t != u}
        z = 1 / sum(inv.values())
        choices.append([(t, z * p) for t, p in inv.items()])

    total = Fraction(0)
    expected = Fraction(0)
    pr_eu = [Fraction(0)] * nv
    pr_event = [[Fraction(0)] * 7 for _ in range(nv)]
    for outcome in itertools.product(*choices):
        p = Fraction(1)
        edges = set(base_edges)
        for u, (t, q) in enumerate(outcome):
            p *= q
            edges.add((u, t))
        total += p
        canonical = 0
        hit = [set() for _ in range(nv)]
        for u, a, b, label in _brute_force_cycles(nv, edges, base_edges):
            if label == "sss":
                continue
            if u < a and u < b:
                canonical += 1
            hit[u].add(EVENT_OF[label])
        expected += p * canonical
        for u in range(nv):
            if hit[u]:
                pr_eu[u] += p
            for i in hit[u]:
                pr_event[u][i - 1] += p
    return ExactC3Result(total, expected, pr_eu, pr_event)


# -- Monte Carlo ---------------------------------------------------------------


@dataclass
class CensusStats:
    n: int
    samples: int
    seed: int
    nonbase: np.ndarray = field(repr=False)
    rooted_fraction: np.ndarray = field(repr=False)
    event_rates: np.ndarray = field(repr=False)
    class_counts: np.ndarray = field(repr=False)
    base_undirected: int = 0

    @property
    def mean_nonbase(self) -> float:
        return float(self.nonbase.mean())

    @property
    def stderr_nonbase(self) -> float:
        return float(self.nonbase.std(ddof=1) / np.sqrt(self.samples)) if self.samples > 1 else 0.0

    @property
    def pr_eu(self) -> float:
        return float(self.rooted_fraction.mean())

    @property
    def pr_event(self) -> list[float]:
        return self.event_rates.mean(axis=0).tolist()

    def summary(self) -> dict:
        return {
            "n": self.n,
            "samples": self.samples,
            "seed": self.seed,
            "base_undirected": self.base_undirected,
            "mean_nonbase_c3": self.mean_nonbase,
            "stderr_nonbase_c3": self.stderr_nonbase,
            "pr_eu": self.pr_eu,
            "pr_event": {f"E{i + 1}": p for i, p in enumerate(self.pr_event)},
        }


def census_for_targets(G: OctahedralGraph, targets: np.ndarray) -> CensusReport:
    return census_from_out(G, _out_table(G, targets, dedup_flags(G, targets)))


def census_monte_carlo(n: int, samples: int, seed: int, threads: int = 1, keep_reports: bool = False):
    """Census of ``samples`` independent OSW graphs; trial k uses ``trial_seed(seed, k)``.

    Small graphs repeat outcomes often, so identical long-range assignments are
    censused once.
    """
    seed = rng.check_seed(seed)
    G = build_octahedral_graph(n)
    G.distance_matrix
    seeds = rng.trial_seeds(seed, samples)
    targets = sample_target_batch(G, seeds)
    if n <= 2:
        uniq, inverse = np.unique(targets, axis=0, return_inverse=True)
        inverse = inverse.reshape(-1)
    else:
        uniq, inverse = targets, np.arange(samples)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            reports = list(pool.map(lambda row: census_for_targets(G, row), uniq))
    else:
        reports = [census_for_targets(G, row) for row in uniq]

    nonbase = np.array([r.nonbase_total for r in reports])[inverse]
    frac = np.array([r.rooted_indicator_fraction for r in reports])[inverse]
    ev = np.array([r.rooted_events.mean(axis=0) for r in reports]).reshape(-1, 7)[inverse]
    cls = np.array([[r.counts[c] for c in CLASSES] for r in reports]).reshape(-1, 8)[inverse]
    stats = CensusStats(
        n=n,
        samples=samples,
        seed=seed,
        nonbase=nonbase,
        rooted_fraction=frac,
        event_rates=ev,
        class_counts=cls,
        base_undirected=reports[0].base_undirected,
    )
    if keep_reports:
        return stats, [reports[i] for i in inverse]
    return stats
