import math

import numpy as np
import pytest

from oswnet import bounds
from oswnet.bounds import ZETA3, bounds_report, eu_bound, event_bounds
from oswnet.errors import ParameterError


def test_zeta3_constant():
    exact = sum(i**-3 for i in range(1, 200_000))
    assert exact < ZETA3 < exact + 1e-5


def test_n1_normalising_bounds():
    r = bounds_report(1)
    assert r.zu_upper == pytest.approx(1.4427, abs=1e-4)
    assert r.zu_lower == pytest.approx(0.0984, abs=1e-4)
    assert r.routing_upper == pytest.approx(192 * math.log(2 * math.e) + 2)


@pytest.mark.parametrize("n", [1, 2, 3, 10, 1000])
def test_event_bounds_as_written(n):
    L = math.log(n + 1)
    e = event_bounds(n)
    assert e[0] == e[3] == pytest.approx(3 / L)
    assert e[1] == pytest.approx(9 / 2 / L)
    assert e[2] == e[4] == e[5] == pytest.approx(36 * 1.20206 / L**2)
    assert e[6] == pytest.approx(36 * (3 * 1.20206 + 1 / 8) * math.log(2 * n) / L**3)


@pytest.mark.parametrize("n", [1, 2, 5, 64, 10**6])
def test_eu_bound_is_union_of_event_bounds(n):
    assert eu_bound(n) == pytest.approx(sum(event_bounds(n)), rel=1e-12)
    L = math.log(n + 1)
    e = event_bounds(n)
    assert e[0] + e[1] + e[3] == pytest.approx(21 / 2 / L)
    assert e[2] + e[4] + e[5] == pytest.approx(108 * ZETA3 / L**2)


def test_eu_bound_decreasing():
    n = np.arange(2, 10**6 + 1, dtype=np.float64)
    L = np.log(n + 1)
    v = 10.5 / L + 108 * ZETA3 / L**2 + 36 * (3 * ZETA3 + 1 / 8) * np.log(2 * n) / L**3
    assert np.all(np.diff(v) < 0)
    assert v[0] == pytest.approx(eu_bound(2))
    sample = [eu_bound(k) for k in (2, 3, 10, 100, 10**4, 10**6)]
    assert sample == sorted(sample, reverse=True)


def test_routing_upper_phase_count():
    assert bounds.phase_count(1) == 1
    assert bounds.phase_count(16) == 5
    assert bounds.phase_count(17) == 6
    assert bounds.routing_upper(16) == pytest.approx(5 * 192 * math.log(32 * math.e) + 2)


@pytest.mark.parametrize("n", range(1, 40))
def test_report_invariants(n):
    r = bounds_report(n)
    assert r.zu_lower < r.zu_upper
    d = r.to_dict()
    assert all(math.isfinite(v) and v > 0 for v in d.values())


@pytest.mark.parametrize("bad", [0, -3, 2.5, True])
def test_rejects_bad_n(bad):
    with pytest.raises(ParameterError):
        bounds_report(bad)
