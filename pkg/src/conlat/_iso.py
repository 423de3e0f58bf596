"""Backtracking search for order isomorphisms between finite posets.

An order isomorphism between lattices is a lattice isomorphism, and between
join-semilattices with zero it is a semilattice isomorphism, so this one
search serves both.
"""

from __future__ import annotations

from typing import Iterator, Sequence

import numpy as np

Table = Sequence[Sequence[bool]]


def _strict(leq: Table) -> np.ndarray:
    L = np.asarray(leq, dtype=bool)
    return L & ~np.eye(len(L), dtype=bool)


def covers_of(leq: Table) -> list[tuple[int, int]]:
    lt = _strict(leq)
    f = lt.astype(np.float32)
    cov = lt & ~((f @ f) > 0)
    return [(int(a), int(b)) for a, b in np.argwhere(cov)]


def heights(leq: Table) -> list[int]:
    """Length of the longest chain from a minimal element."""
    lt = _strict(leq)
    n = len(lt)
    h = np.zeros(n, dtype=int)
    for x in np.argsort(lt.sum(axis=0), kind="stable"):
        below = np.flatnonzero(lt[:, x])
        if len(below):
            h[x] = h[below].max() + 1
    return h.tolist()


def invariants(leq: Table) -> list[tuple[int, ...]]:
    L = np.asarray(leq, dtype=bool)
    lt = _strict(L)
    f = lt.astype(np.float32)
    cov = lt & ~((f @ f) > 0)
    down = L.sum(axis=0)
    up = L.sum(axis=1)
    lower = cov.sum(axis=0)
    upper = cov.sum(axis=1)
    h = heights(L)
    return [(h[x], int(down[x]), int(up[x]), int(lower[x]), int(upper[x])) for x in range(len(L))]


def iter_order_isos(leq1: Table, leq2: Table, fixed: dict[int, int] | None = None) -> Iterator[tuple[int, ...]]:
    """Yield every order isomorphism ``leq1 -> leq2`` in a fixed search order.

    ``fixed`` pins some images in advance.
    """
    n = len(leq1)
    if len(leq2) != n:
        return
    inv1 = invariants(leq1)
    inv2 = invariants(leq2)
    if sorted(inv1) != sorted(inv2):
        return
    seq = sorted(range(n), key=lambda x: (inv1[x][1], x))
    cands = [[y for y in range(n) if inv2[y] == inv1[x]] for x in range(n)]
    phi = [-1] * n
    used = [False] * n
    fixed = fixed or {}
    for x, y in fixed.items():
        if inv1[x] != inv2[y]:
            return

    def ok(x: int, y: int, upto: int) -> bool:
        for k in range(upto):
            z = seq[k]
            w = phi[z]
            if leq1[z][x] != leq2[w][y] or leq1[x][z] != leq2[y][w]:
                return False
        return True

    def rec(k: int):
        if k == n:
            yield tuple(phi)
            return
        x = seq[k]
        options = [fixed[x]] if x in fixed else cands[x]
        for y in options:
            if used[y] or not ok(x, y, k):
                continue
            phi[x] = y
            used[y] = True
            yield from rec(k + 1)
            used[y] = False
            phi[x] = -1

    yield from rec(0)


def first_order_iso(leq1: Table, leq2: Table) -> tuple[int, ...] | None:
    return next(iter_order_isos(leq1, leq2), None)
