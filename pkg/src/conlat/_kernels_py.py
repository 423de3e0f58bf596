"""Pure-Python versions of the closure kernels.

Every function here has a twin in ``_ckernels.pyx`` with the same signature
and the same output; ``conlat.kernels`` picks one at import time.  Tables are
passed as sequences of rows (tuples or lists of ints).
"""

from __future__ import annotations


def _find(parent: list[int], x: int) -> int:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def _canonical(parent: list[int], n: int) -> tuple[int, ...]:
    ids: dict[int, int] = {}
    out = []
    for x in range(n):
        r = _find(parent, x)
        if r not in ids:
            ids[r] = len(ids)
        out.append(ids[r])
    return tuple(out)


def congruence_closure(join, meet, pairs, init=None) -> tuple[int, ...]:
    """Least congruence containing ``pairs`` (and the partition ``init``).

    ``init``, when given, must already be a congruence in block-id form.
    The result is in canonical form: blocks numbered by least member.
    """
    n = len(join)
    parent = list(range(n))
    if init is not None:
        rep: dict[int, int] = {}
        for x in range(n):
            parent[x] = rep.setdefault(init[x], x)
    stack = [(x, y) for x, y in pairs if x != y]
    while stack:
        x, y = stack.pop()
        rx = _find(parent, x)
        ry = _find(parent, y)
        if rx == ry:
            continue
        if rx < ry:
            parent[ry] = rx
        else:
            parent[rx] = ry
        jx, jy, mx, my = join[x], join[y], meet[x], meet[y]
        for c in range(n):
            if jx[c] != jy[c]:
                stack.append((jx[c], jy[c]))
            if mx[c] != my[c]:
                stack.append((mx[c], my[c]))
    return _canonical(parent, n)


def sublattice_closure(join, meet, gens) -> list[int]:
    """Sorted members of the sublattice generated by ``gens``."""
    members = set(gens)
    order = list(members)
    queue = list(members)
    while queue:
        x = queue.pop()
        jx, mx = join[x], meet[x]
        for y in list(order):
            for z in (jx[y], mx[y]):
                if z not in members:
                    members.add(z)
                    order.append(z)
                    queue.append(z)
    return sorted(members)


def join_closure(join, gens, zero) -> list[int]:
    """Sorted members of the {join, 0}-subsemilattice generated by ``gens``."""
    members = {zero, *gens}
    order = list(members)
    queue = list(members)
    while queue:
        x = queue.pop()
        jx = join[x]
        for y in list(order):
            z = jx[y]
            if z not in members:
                members.add(z)
                order.append(z)
                queue.append(z)
    return sorted(members)
