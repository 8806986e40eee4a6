"""Closed-form bounds on the normalising factor, routing length and C3 events.

Logarithms are natural except for the routing phase count, which uses
ceil(log2 n) because each phase halves the remaining distance. For small n
several event bounds exceed 1; they are still evaluated as written.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

from .errors import ParameterError

# upper estimate of zeta(3), used as a fixed constant
ZETA3 = 1.20206


def _check(n) -> int:
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise ParameterError(f"size parameter n must be a positive integer, got {n!r}")
    return n


def zu_upper(n: int) -> float:
    return 1.0 / math.log(_check(n) + 1)


def zu_lower(n: int) -> float:
    return 1.0 / (6.0 * math.log(2.0 * math.e * _check(n)))


def phase_count(n: int) -> int:
    return math.ceil(math.log2(_check(n))) + 1


def phase_bound(n: int) -> float:
    """Expected forwards per routing phase."""
    return 192.0 * math.log(2.0 * math.e * _check(n))


def routing_upper(n: int) -> float:
    return phase_count(n) * phase_bound(n) + 2.0


def event_bounds(n: int) -> list[float]:
    """Upper bounds on Pr(E1u) .. Pr(E7u)."""
    inv = 1.0 / math.log(_check(n) + 1)
    pair = 36.0 * ZETA3 * inv**2
    triple = 36.0 * (3.0 * ZETA3 + 1.0 / 8.0) * math.log(2.0 * n) * inv**3
    return [3.0 * inv, 4.5 * inv, pair, 3.0 * inv, pair, pair, triple]


def eu_bound(n: int) -> float:
    """Union bound on Pr(E_u), summed as 21/2 ln^-1 + 108 zeta3 ln^-2 + the www term."""
    inv = 1.0 / math.log(_check(n) + 1)
    return 10.5 * inv + 108.0 * ZETA3 * inv**2 + event_bounds(n)[6]


@dataclass(frozen=True)
class BoundsReport:
    n: int
    zu_upper: float
    zu_lower: float
    routing_upper: float
    phase_bound: float
    e1: float
    e2: float
    e3: float
    e4: float
    e5: float
    e6: float
    e7: float
    eu_bound: float
    zeta3: float = ZETA3

    @property
    def events(self) -> list[float]:
        return [self.e1, self.e2, self.e3, self.e4, self.e5, self.e6, self.e7]

    def to_dict(self) -> dict:
        return asdict(self)


def bounds_report(n: int) -> BoundsReport:
    e = event_bounds(n)
    return BoundsReport(
        n=n,
        zu_upper=zu_upper(n),
        zu_lower=zu_lower(n),
        routing_upper=routing_upper(n),
        phase_bound=phase_bound(n),
        e1=e[0], e2=e[1], e3=e[2], e4=e[3], e5=e[4], e6=e[5], e7=e[6],
        eu_bound=eu_bound(n),
    )
