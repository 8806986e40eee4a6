"""Counter-based random substreams.

Every random draw in the package is a pure function of ``(key, counter)``,
hashed with the SplitMix64 finaliser. Substreams are derived by hashing a
parent key with a child index, so a vertex's draw in trial ``k`` of an
experiment seeded with ``S`` is::

    trial_key  = derive(S, k)
    vertex_key = derive(trial_key, vertex_index)
    uniform    = to_unit(mix64(vertex_key + GAMMA * (draw + 1)))

Nothing depends on evaluation order, which is what makes seeded runs
reproducible under any parallel schedule. All functions accept numpy arrays
and broadcast.
"""

from __future__ import annotations

import numpy as np

from .errors import ParameterError

MASK64 = (1 << 64) - 1
GAMMA = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_DOMAIN = np.uint64(0x5851F42D4C957F2D)


def check_seed(seed) -> int:
    if isinstance(seed, bool) or not isinstance(seed, (int, np.integer)):
        raise ParameterError(f"seed must be an integer, got {seed!r}")
    seed = int(seed)
    if not 0 <= seed <= MASK64:
        raise ParameterError(f"seed must fit in 64 unsigned bits, got {seed}")
    return seed


def mix64(z):
    z = np.asarray(z, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = (z ^ (z >> np.uint64(30))) * _M1
        z = (z ^ (z >> np.uint64(27))) * _M2
    return z ^ (z >> np.uint64(31))


def derive(key, index):
    """Key of child stream ``index`` under ``key``."""
    key = np.asarray(key, dtype=np.uint64)
    index = np.asarray(index, dtype=np.uint64)
    with np.errstate(over="ignore"):
        return mix64(mix64(key ^ _DOMAIN) + (index + np.uint64(1)) * GAMMA)


def uniforms(key, draw=0):
    """Uniform doubles in [0, 1) with 53 random bits."""
    key = np.asarray(key, dtype=np.uint64)
    draw = np.asarray(draw, dtype=np.uint64)
    with np.errstate(over="ignore"):
        bits = mix64(key + (draw + np.uint64(1)) * GAMMA)
    return (bits >> np.uint64(11)).astype(np.float64) * (1.0 / (1 << 53))


def trial_seed(seed: int, trial: int) -> int:
    return int(derive(np.uint64(check_seed(seed)), np.uint64(trial)))


def trial_seeds(seed: int, count: int, start: int = 0) -> np.ndarray:
    return derive(np.uint64(check_seed(seed)), np.arange(start, start + count, dtype=np.uint64))
