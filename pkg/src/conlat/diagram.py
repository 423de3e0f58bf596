"""Poset-indexed diagrams of lattices or semilattices and their isomorphisms."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from ._iso import iter_order_isos
from .congruence import con_functor_map, con_lattice
from .errors import IndexMismatch
from .report import Verdict


class IndexPoset:
    """A finite poset of named objects given by its covers."""

    def __init__(self, objects: Sequence[str], covers: Sequence[tuple[str, str]]):
        self.objects = tuple(objects)
        self.pos = {o: i for i, o in enumerate(self.objects)}
        if len(self.pos) != len(self.objects):
            raise ValueError("duplicate object names")
        self.covers = tuple((str(p), str(q)) for p, q in covers)
        n = len(self.objects)
        leq = np.eye(n, dtype=bool)
        for p, q in self.covers:
            leq[self.pos[p], self.pos[q]] = True
        for k in range(n):
            leq |= np.outer(leq[:, k], leq[k, :])
        if (leq & leq.T & ~np.eye(n, dtype=bool)).any():
            raise ValueError("index covers contain a cycle")
        self.leq = leq

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, IndexPoset)
            and set(self.objects) == set(other.objects)
            and set(self.covers) == set(other.covers)
        )

    def __hash__(self) -> int:
        return hash((frozenset(self.objects), frozenset(self.covers)))

    def le(self, p: str, q: str) -> bool:
        return bool(self.leq[self.pos[p], self.pos[q]])

    def upper_covers(self, p: str) -> list[str]:
        return [q for a, q in self.covers if a == p]

    def lower_covers(self, q: str) -> list[str]:
        return [a for a, b in self.covers if b == q]

    def comparable_pairs(self) -> list[tuple[str, str]]:
        return [(p, q) for p in self.objects for q in self.objects if p != q and self.le(p, q)]

    def bottom_up(self) -> list[str]:
        """Objects sorted so that every object follows everything below it."""
        return sorted(self.objects, key=lambda o: (int(self.leq[:, self.pos[o]].sum()), self.pos[o]))

    def paths(self, p: str, q: str) -> list[list[str]]:
        """All cover paths from ``p`` up to ``q``."""
        if p == q:
            return [[p]]
        out = []
        for r in self.upper_covers(p):
            if self.le(r, q):
                out.extend([p] + rest for rest in self.paths(r, q))
        return out


def cube() -> IndexPoset:
    """Subsets of {0,1,2}: ``bot``, atoms ``a{i}``, coatoms ``c{j}`` (missing j), ``top``."""
    objs = ["bot", "a0", "a1", "a2", "c0", "c1", "c2", "top"]
    covers = [("bot", f"a{i}") for i in range(3)]
    covers += [(f"a{i}", f"c{j}") for i in range(3) for j in range(3) if i != j]
    covers += [(f"c{j}", "top") for j in range(3)]
    return IndexPoset(objs, covers)


def square() -> IndexPoset:
    return IndexPoset(["bot", "a0", "a1", "top"], [("bot", "a0"), ("bot", "a1"), ("a0", "top"), ("a1", "top")])


def triangle() -> IndexPoset:
    """``low ≤ mid ≤ high``; the arrow low→high is the composite."""
    return IndexPoset(["low", "mid", "high"], [("low", "mid"), ("mid", "high")])


def chain_poset(n: int) -> IndexPoset:
    return IndexPoset([str(i) for i in range(n)], [(str(i), str(i + 1)) for i in range(n - 1)])


def single() -> IndexPoset:
    return IndexPoset(["x"], [])


def _compose(outer, inner):
    return outer.compose(inner)


def _identity(obj):
    from .lattice import FiniteLattice, LatticeHom
    from .semilattice import JoinZeroHom

    if isinstance(obj, FiniteLattice):
        return LatticeHom.identity(obj)
    return JoinZeroHom.identity(obj)


class Diagram:
    """Objects indexed by ``index`` with homs on every cover.

    ``arrows`` may also hold non-cover arrows; they take part in the
    commutativity check and override the composite.
    """

    def __init__(self, index: IndexPoset, objects: Mapping[str, object], arrows: Mapping[tuple[str, str], object]):
        self.index = index
        self.objects = dict(objects)
        self.arrows = {tuple(k): v for k, v in arrows.items()}
        missing = [c for c in index.covers if c not in self.arrows]
        if missing:
            raise ValueError(f"missing arrows on covers {missing}")
        for o in index.objects:
            if o not in self.objects:
                raise ValueError(f"missing object {o}")
        for (p, q), f in self.arrows.items():
            if not index.le(p, q):
                raise ValueError(f"arrow {p}->{q} goes against the index order")
            if f.source != self.objects[p] or f.target != self.objects[q]:
                raise ValueError(f"arrow {p}->{q} has the wrong endpoints")
        self._composites: dict = {}

    @property
    def flavor(self) -> str:
        from .lattice import FiniteLattice

        first = next(iter(self.objects.values()))
        return "lattice" if isinstance(first, FiniteLattice) else "semilattice"

    def arrow(self, p: str, q: str):
        """The arrow ``p -> q``: explicit if stored, else composite along the first cover path."""
        if (p, q) in self.arrows:
            return self.arrows[(p, q)]
        if (p, q) in self._composites:
            return self._composites[(p, q)]
        if p == q:
            f = _identity(self.objects[p])
        else:
            paths = self.index.paths(p, q)
            if not paths:
                raise ValueError(f"{p} is not below {q}")
            f = self._path_map(paths[0])
        self._composites[(p, q)] = f
        return f

    def _path_map(self, path):
        f = self.arrows[(path[0], path[1])]
        for a, b in zip(path[1:], path[2:]):
            f = _compose(self.arrows[(a, b)], f)
        return f

    def is_commutative(self) -> Verdict:
        for p, q in self.index.comparable_pairs():
            maps = [tuple(self._path_map(path).map) for path in self.index.paths(p, q)]
            if (p, q) in self.arrows:
                maps.append(tuple(self.arrows[(p, q)].map))
            for m in maps[1:]:
                if m != maps[0]:
                    return Verdict(False, {"cell": [p, q], "maps": [list(maps[0]), list(m)]})
        return Verdict(True)


def con_image(d: Diagram) -> Diagram:
    """Apply the congruence functor to a lattice diagram."""
    objs = {o: con_lattice(L).semilattice for o, L in d.objects.items()}
    arrows = {k: con_functor_map(f) for k, f in d.arrows.items()}
    return Diagram(d.index, objs, arrows)


@dataclass
class DiagramIso:
    """Per-object isomorphisms, ``maps[o][x]`` is the image of x."""

    maps: dict[str, tuple[int, ...]]

    def to_json(self) -> dict:
        return {o: list(m) for o, m in self.maps.items()}


def is_order_iso(A, B, m) -> bool:
    if len(set(m)) != A.size or B.size != A.size:
        return False
    la, lb = A.leq, B.leq
    return all(la[x][y] == lb[m[x]][m[y]] for x in range(A.size) for y in range(A.size))


def naturality_failures(d1: Diagram, d2: Diagram, maps: Mapping[str, Sequence[int]]) -> list[tuple[str, str]]:
    """Arrows ``p->q`` (covers and stored) where φ_q∘f ≠ g∘φ_p."""
    keys = set(d1.index.covers) | set(d1.arrows) | set(d2.arrows)
    bad = []
    for p, q in sorted(keys):
        f, g = d1.arrow(p, q).map, d2.arrow(p, q).map
        mp, mq = maps[p], maps[q]
        if any(mq[f[x]] != g[mp[x]] for x in range(len(f))):
            bad.append((p, q))
    return bad


def verify_diagram_iso(d1: Diagram, d2: Diagram, iso: DiagramIso) -> Verdict:
    for o in d1.index.objects:
        if o not in iso.maps or not is_order_iso(d1.objects[o], d2.objects[o], iso.maps[o]):
            return Verdict(False, {"object": o})
    bad = naturality_failures(d1, d2, iso.maps)
    return Verdict(not bad, {"arrows": bad} if bad else None)


def diagram_isomorphism(d1: Diagram, d2: Diagram) -> DiagramIso | None:
    """Search object by object, bottom-up; naturality with lower objects pins images."""
    if d1.index != d2.index:
        raise IndexMismatch("diagrams are indexed by different posets")
    idx = d1.index
    order = idx.bottom_up()
    for o in order:
        if d1.objects[o].size != d2.objects[o].size:
            return None
    below = {o: [p for p in order if p != o and idx.le(p, o)] for o in order}
    stored = set(d1.arrows) | set(d2.arrows) | set(idx.covers)
    maps: dict[str, tuple[int, ...]] = {}

    def pins(o):
        fixed: dict[int, int] = {}
        for p in below[o]:
            if (p, o) not in stored and p not in idx.lower_covers(o):
                continue
            f, g, mp = d1.arrow(p, o).map, d2.arrow(p, o).map, maps[p]
            for x in range(len(f)):
                y = g[mp[x]]
                if fixed.setdefault(f[x], y) != y:
                    return None
        return fixed

    def rec(k):
        if k == len(order):
            return DiagramIso(dict(maps))
        o = order[k]
        fixed = pins(o)
        if fixed is None:
            return None
        for phi in iter_order_isos(d1.objects[o].leq, d2.objects[o].leq, fixed):
            maps[o] = phi
            res = rec(k + 1)
            if res is not None:
                return res
        maps.pop(o, None)
        return None

    found = rec(0)
    if found is not None and not verify_diagram_iso(d1, d2, found):
        return None
    return found
