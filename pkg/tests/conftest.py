import itertools

import pytest

from conlat.catalog import catalog


@pytest.fixture(scope="session")
def small_lattices():
    """Every lattice with at most 6 elements, up to isomorphism."""
    return catalog(6)


def brute_lub(leq, a, b):
    n = len(leq)
    ub = [c for c in range(n) if leq[a][c] and leq[b][c]]
    least = [c for c in ub if all(leq[c][d] for d in ub)]
    return least[0] if len(least) == 1 else None


def brute_glb(leq, a, b):
    n = len(leq)
    lb = [c for c in range(n) if leq[c][a] and leq[c][b]]
    great = [c for c in lb if all(leq[d][c] for d in lb)]
    return great[0] if len(great) == 1 else None


def all_partitions(n):
    """Every partition of range(n) as a block-id tuple (restricted growth strings)."""
    def rec(prefix, m):
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for b in range(m + 1):
            yield from rec(prefix + [b], max(m, b + 1))
    if n == 0:
        yield ()
        return
    yield from rec([0], 1)


def is_compatible(L, part):
    n = L.size
    for a, b in itertools.product(range(n), repeat=2):
        if part[a] != part[b]:
            continue
        for c in range(n):
            if part[L.join[a][c]] != part[L.join[b][c]] or part[L.meet[a][c]] != part[L.meet[b][c]]:
                return False
    return True
