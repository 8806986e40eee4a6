"""Projection of octahedral vertices onto spheres centred at the origin."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .errors import ParameterError
from .octagraph import OctahedralGraph

# Theorem-level assertions are checked with this slack.
TOLERANCE = 1e-9


def central_angle(u, v) -> float:
    nu2 = sum(float(x) * float(x) for x in u)
    nv2 = sum(float(x) * float(x) for x in v)
    if nu2 == 0.0 or nv2 == 0.0:
        raise ParameterError("central angle is undefined for the zero vector")
    dot = sum(float(a) * float(b) for a, b in zip(u, v))
    # one sqrt of the product keeps cos exactly 1 for parallel integer vectors
    return math.acos(min(1.0, max(-1.0, dot / math.sqrt(nu2 * nv2))))


def sphere_distance(u, v, r: float) -> float:
    """Great-circle distance between the projections of u and v on radius r."""
    if not r > 0:
        raise ParameterError(f"sphere radius must be positive, got {r!r}")
    return r * central_angle(u, v)


def max_edge_angle_bound(n: int) -> float:
    return 2.0 * math.atan(math.sqrt(6.0) / (2.0 * n))


def radius_bound(n: int, lam: float) -> float:
    """Largest radius for which every projected edge is at most ``lam`` long."""
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 1:
        raise ParameterError(f"size parameter n must be a positive integer, got {n!r}")
    if not lam > 0:
        raise ParameterError(f"lambda must be positive, got {lam!r}")
    return lam / max_edge_angle_bound(n)


@dataclass(frozen=True)
class SphericalEdgeReport:
    n: int
    r: float
    max_angle: float
    max_distance: float
    lam: float
    radius_bound: float
    angle_bound: float

    def to_dict(self) -> dict:
        d = asdict(self)
        d["lambda"] = d.pop("lam")
        return d


def edge_angles(G: OctahedralGraph) -> np.ndarray:
    """Central angle of every undirected edge, in ``G.edges()`` order."""
    X = G.coords.astype(float)
    e = G.edge_array
    a, b = X[e[:, 0]], X[e[:, 1]]
    cos = np.einsum("ij,ij->i", a, b) / np.sqrt((a * a).sum(axis=1) * (b * b).sum(axis=1))
    return np.arccos(np.clip(cos, -1.0, 1.0))


def max_edge_sphere_report(G: OctahedralGraph, r: float | None, lam: float) -> SphericalEdgeReport:
    bound = radius_bound(G.n, lam)
    if r is None:
        r = bound
    if not r > 0:
        raise ParameterError(f"sphere radius must be positive, got {r!r}")
    max_angle = float(edge_angles(G).max())
    angle_bound = max_edge_angle_bound(G.n)
    if max_angle > angle_bound + TOLERANCE:
        raise AssertionError(f"edge angle {max_angle} exceeds {angle_bound} at n={G.n}")
    return SphericalEdgeReport(
        n=G.n,
        r=float(r),
        max_angle=max_angle,
        max_distance=float(r) * max_angle,
        lam=float(lam),
        radius_bound=bound,
        angle_bound=angle_bound,
    )


def project(G: OctahedralGraph, r: float) -> np.ndarray:
    """Points (r/|u|) u on the sphere of radius r, one row per vertex."""
    X = G.coords.astype(float)
    return X * (r / np.linalg.norm(X, axis=1))[:, None]
