import itertools

import pytest

from oswnet.octagraph import build_octahedral_graph


def brute_vertices(n):
    """Every integer triple in the cube [-n, n]^3 on the L1 sphere, sorted."""
    return sorted(v for v in itertools.product(range(-n, n + 1), repeat=3) if sum(map(abs, v)) == n)


def brute_edges(V):
    """Def-1 predicate tested over all vertex pairs."""
    return {
        (i, j)
        for i, j in itertools.combinations(range(len(V)), 2)
        if all(abs(a - b) <= 1 for a, b in zip(V[i], V[j]))
    }


def floyd_warshall(V, edges):
    N = len(V)
    inf = 10**9
    d = [[0 if i == j else inf for j in range(N)] for i in range(N)]
    for i, j in edges:
        d[i][j] = d[j][i] = 1
    for k in range(N):
        dk = d[k]
        for i in range(N):
            dik = d[i][k]
            di = d[i]
            for j in range(N):
                if dik + dk[j] < di[j]:
                    di[j] = dik + dk[j]
    return d


@pytest.fixture(scope="session")
def graphs():
    cache = {}

    def get(n):
        if n not in cache:
            cache[n] = build_octahedral_graph(n)
        return cache[n]

    return get
