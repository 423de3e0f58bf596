"""Finite lattices stored as dense order, join and meet tables."""

from __future__ import annotations

import itertools
import re
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import kernels
from ._iso import covers_of, iter_order_isos
from .errors import CycleDetected, NotAHom, NotALattice, NotComparable, ParseError, SizeOverflow

MAX_PRODUCT_SIZE = 4096


class FiniteLattice:
    """A finite lattice on the elements ``0..size-1``.

    ``leq``, ``join`` and ``meet`` are tuples of tuples.  Element identity is
    positional; ``labels`` are names used only for display and I/O.
    """

    def __init__(self, leq, join, meet, labels: Sequence[str] | None = None, name: str | None = None):
        self.size = len(leq)
        self.leq = tuple(tuple(bool(v) for v in row) for row in leq)
        self.join = tuple(tuple(int(v) for v in row) for row in join)
        self.meet = tuple(tuple(int(v) for v in row) for row in meet)
        self.labels = tuple(str(x) for x in labels) if labels is not None else None
        self.name = name
        self._cache: dict = {}
        self._hash: int | None = None

    def __repr__(self) -> str:
        return f"FiniteLattice({self.name or '?'}, size={self.size})"

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteLattice) and self.leq == other.leq

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.leq)
        return self._hash

    def __len__(self) -> int:
        return self.size

    # tables in the layout the active kernel backend wants
    @cached_property
    def join_k(self):
        return kernels.prepare(self.join)

    @cached_property
    def meet_k(self):
        return kernels.prepare(self.meet)

    @cached_property
    def leq_np(self) -> np.ndarray:
        return np.asarray(self.leq, dtype=bool).reshape(self.size, self.size)

    @cached_property
    def bottom(self) -> int:
        return next(x for x in range(self.size) if all(self.leq[x]))

    @cached_property
    def top(self) -> int:
        return next(x for x in range(self.size) if all(self.leq[y][x] for y in range(self.size)))

    @cached_property
    def covers(self) -> tuple[tuple[int, int], ...]:
        return tuple(covers_of(self.leq))

    @cached_property
    def atoms(self) -> tuple[int, ...]:
        return tuple(b for a, b in self.covers if a == self.bottom)

    @cached_property
    def coatoms(self) -> tuple[int, ...]:
        return tuple(a for a, b in self.covers if b == self.top)

    def label(self, x: int) -> str:
        return self.labels[x] if self.labels is not None else str(x)

    def index(self, label) -> int:
        if isinstance(label, int):
            return label
        if self.labels is None or label not in self.labels:
            raise KeyError(label)
        return self.labels.index(label)

    def le(self, a: int, b: int) -> bool:
        return self.leq[a][b]

    def join_all(self, xs: Iterable[int]) -> int:
        acc = self.bottom
        for x in xs:
            acc = self.join[acc][x]
        return acc

    def meet_all(self, xs: Iterable[int]) -> int:
        acc = self.top
        for x in xs:
            acc = self.meet[acc][x]
        return acc

    def between(self, a: int, b: int) -> list[int]:
        return [x for x in range(self.size) if self.leq[a][x] and self.leq[x][b]]

    def check_invariants(self) -> None:
        """Raise ``AssertionError`` if any lattice law fails."""
        n, L, J, M = self.size, self.leq, self.join, self.meet
        for a in range(n):
            assert L[a][a]
            assert J[a][a] == a and M[a][a] == a
            for b in range(n):
                if a != b:
                    assert not (L[a][b] and L[b][a])
                assert J[a][b] == J[b][a] and M[a][b] == M[b][a]
                assert M[a][J[a][b]] == a and J[a][M[a][b]] == a
                assert L[a][J[a][b]] and L[b][J[a][b]]
                assert L[M[a][b]][a] and L[M[a][b]][b]
                assert L[a][b] == (J[a][b] == b)
                for c in range(n):
                    if L[a][b] and L[b][c]:
                        assert L[a][c]
                    assert J[J[a][b]][c] == J[a][J[b][c]]
                    assert M[M[a][b]][c] == M[a][M[b][c]]
        assert sum(all(row) for row in L) == 1


class _Map:
    kind = "map"

    def __init__(self, source: FiniteLattice, target: FiniteLattice, mapping: Sequence[int]):
        self.source = source
        self.target = target
        self.map = tuple(int(x) for x in mapping)
        if len(self.map) != source.size or any(not 0 <= y < target.size for y in self.map):
            raise NotAHom(f"{self.kind} has wrong length or out-of-range values")

    def __call__(self, x: int) -> int:
        return self.map[x]

    def __repr__(self) -> str:
        return f"{type(self).__name__}({list(self.map)})"

    def __eq__(self, other) -> bool:
        return (
            type(other) is type(self)
            and other.map == self.map
            and other.source == self.source
            and other.target == self.target
        )

    def __hash__(self) -> int:
        return hash(self.map)

    def is_injective(self) -> bool:
        return len(set(self.map)) == len(self.map)

    def is_surjective(self) -> bool:
        return len(set(self.map)) == self.target.size

    def image(self) -> list[int]:
        return sorted(set(self.map))


class MonotoneMap(_Map):
    """An order-preserving map between finite lattices."""

    kind = "monotone map"

    def __init__(self, source, target, mapping, check: bool = True):
        super().__init__(source, target, mapping)
        if check:
            m, ls, lt = self.map, source.leq, target.leq
            for a in range(source.size):
                for b in range(source.size):
                    if ls[a][b] and not lt[m[a]][m[b]]:
                        raise NotAHom(f"not monotone at ({a}, {b})")

    def compose(self, inner: "MonotoneMap") -> "MonotoneMap":
        """``self ∘ inner``."""
        return MonotoneMap(inner.source, self.target, [self.map[y] for y in inner.map], check=False)


class LatticeHom(_Map):
    """A lattice homomorphism; validated on construction unless ``check=False``."""

    kind = "lattice hom"

    def __init__(self, source, target, mapping, check: bool = True):
        super().__init__(source, target, mapping)
        if check:
            bad = hom_violation(source, target, self.map)
            if bad is not None:
                raise NotAHom(f"not a lattice hom at {bad}")

    def compose(self, inner: "LatticeHom") -> "LatticeHom":
        """``self ∘ inner``."""
        return LatticeHom(inner.source, self.target, [self.map[y] for y in inner.map], check=False)

    def as_monotone(self) -> MonotoneMap:
        return MonotoneMap(self.source, self.target, self.map, check=False)

    @staticmethod
    def identity(L: FiniteLattice) -> "LatticeHom":
        return LatticeHom(L, L, range(L.size), check=False)


def hom_violation(source: FiniteLattice, target: FiniteLattice, m: Sequence[int]):
    for a in range(source.size):
        for b in range(a + 1, source.size):
            if m[source.join[a][b]] != target.join[m[a]][m[b]]:
                return ("join", a, b)
            if m[source.meet[a][b]] != target.meet[m[a]][m[b]]:
                return ("meet", a, b)
    return None


# construction


def _transitive_closure(n: int, pairs: Iterable[tuple[int, int]]) -> np.ndarray:
    leq = np.eye(n, dtype=bool)
    for a, b in pairs:
        leq[a, b] = True
    for k in range(n):
        leq |= np.outer(leq[:, k], leq[k, :])
    return leq


def lattice_from_leq(leq, labels=None, name=None) -> FiniteLattice:
    """Build a lattice from an order table, computing joins and meets.

    Raises :class:`NotALattice` for the first pair (lexicographic) without a
    least upper or greatest lower bound.
    """
    L = np.asarray(leq, dtype=bool)
    n = L.shape[0]
    join = [[0] * n for _ in range(n)]
    meet = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(a, n):
            ub = np.flatnonzero(L[a] & L[b])
            least = [u for u in ub if L[u, ub].all()]
            if len(least) != 1:
                raise NotALattice((a, b), "least upper bound")
            lb = np.flatnonzero(L[:, a] & L[:, b])
            great = [w for w in lb if L[lb, w].all()]
            if len(great) != 1:
                raise NotALattice((a, b), "greatest lower bound")
            join[a][b] = join[b][a] = int(least[0])
            meet[a][b] = meet[b][a] = int(great[0])
    return FiniteLattice(L.tolist(), join, meet, labels=labels, name=name)


def lattice_from_covers(n: int, covers: Iterable[Sequence[int]], labels=None, name=None) -> FiniteLattice:
    covers = [tuple(int(v) for v in c) for c in covers]
    for a, b in covers:
        if not (0 <= a < n and 0 <= b < n):
            raise ValueError(f"cover ({a}, {b}) out of range for {n} elements")
        if a == b:
            raise ValueError(f"self-pair ({a}, {a}) in covers")
    leq = _transitive_closure(n, covers)
    both = leq & leq.T & ~np.eye(n, dtype=bool)
    if both.any():
        a, b = (int(v) for v in np.argwhere(both)[0])
        raise CycleDetected(f"elements {a} and {b} lie on a cycle")
    return lattice_from_leq(leq, labels=labels, name=name)


def chain(k: int) -> FiniteLattice:
    if k < 1:
        raise ValueError("a chain needs at least one element")
    return lattice_from_covers(k, [(i, i + 1) for i in range(k - 1)], name=f"chain({k})")


def boolean(k: int) -> FiniteLattice:
    """Subsets of ``{0..k-1}``; element ``x`` is the subset with bitmask ``x``."""
    n = 1 << k
    leq = [[(a & b) == a for b in range(n)] for a in range(n)]
    join = [[a | b for b in range(n)] for a in range(n)]
    meet = [[a & b for b in range(n)] for a in range(n)]
    labels = ["{" + ",".join(str(i) for i in range(k) if a >> i & 1) + "}" for a in range(n)]
    return FiniteLattice(leq, join, meet, labels=labels, name=f"boolean({k})")


def m3() -> FiniteLattice:
    return lattice_from_covers(
        5, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)], labels=["0", "a", "b", "c", "1"], name="m3"
    )


def n5() -> FiniteLattice:
    return lattice_from_covers(
        5, [(0, 1), (1, 2), (0, 3), (2, 4), (3, 4)], labels=["0", "a", "b", "c", "1"], name="n5"
    )


S_LABELS = ("0", "p", "p'", "r", "r'", "q", "1")


def s_lattice() -> FiniteLattice:
    """The seven-element simple non-modular lattice ``S``."""
    ix = {name: i for i, name in enumerate(S_LABELS)}
    edges = [("0", "p"), ("0", "r"), ("0", "p'"), ("0", "r'"), ("p", "q"), ("p'", "q"), ("q", "1"), ("r", "1"), ("r'", "1")]
    return lattice_from_covers(7, [(ix[a], ix[b]) for a, b in edges], labels=S_LABELS, name="s")


_BUILTIN_RE = re.compile(r"^\s*(chain|boolean)\s*\(\s*(\d+)\s*\)\s*$")


def builtin(name: str) -> FiniteLattice:
    """Look up ``chain(k)``, ``boolean(k)``, ``m3``, ``n5`` or ``s``."""
    key = name.strip().lower()
    if key == "m3":
        return m3()
    if key == "n5":
        return n5()
    if key == "s":
        return s_lattice()
    m = _BUILTIN_RE.match(key)
    if m:
        k = int(m.group(2))
        return chain(k) if m.group(1) == "chain" else boolean(k)
    raise ParseError(f"unknown builtin lattice {name!r}")


def product_many(factors: Sequence[FiniteLattice], bound: int = MAX_PRODUCT_SIZE):
    """Direct product of several lattices.

    Returns ``(P, coords)`` where ``coords[x]`` is the tuple of components of
    element ``x``.  Elements are numbered in mixed radix, first factor most
    significant.
    """
    size = 1
    for f in factors:
        size *= f.size
    if size > bound:
        raise SizeOverflow(f"product has {size} elements, bound is {bound}")
    coords = list(itertools.product(*[range(f.size) for f in factors]))
    index = {c: i for i, c in enumerate(coords)}
    leq = np.ones((size, size), dtype=bool)
    for k, f in enumerate(factors):
        comp = np.array([c[k] for c in coords])
        leq &= f.leq_np[np.ix_(comp, comp)]
    join = [[0] * size for _ in range(size)]
    meet = [[0] * size for _ in range(size)]
    for i, ci in enumerate(coords):
        for j in range(i, size):
            cj = coords[j]
            jn = index[tuple(f.join[a][b] for f, a, b in zip(factors, ci, cj))]
            mt = index[tuple(f.meet[a][b] for f, a, b in zip(factors, ci, cj))]
            join[i][j] = join[j][i] = jn
            meet[i][j] = meet[j][i] = mt
    labels = ["(" + ",".join(f.label(a) for f, a in zip(factors, c)) + ")" for c in coords]
    name = "×".join(f.name or "?" for f in factors)
    return FiniteLattice(leq.tolist(), join, meet, labels=labels, name=name), coords


def product(a: FiniteLattice, b: FiniteLattice, bound: int = MAX_PRODUCT_SIZE) -> FiniteLattice:
    return product_many([a, b], bound)[0]


def product_projections(a: FiniteLattice, b: FiniteLattice, bound: int = MAX_PRODUCT_SIZE):
    """``(a×b, first projection, second projection)``."""
    P, coords = product_many([a, b], bound)
    pa = LatticeHom(P, a, [c[0] for c in coords], check=False)
    pb = LatticeHom(P, b, [c[1] for c in coords], check=False)
    return P, pa, pb


def induced_sublattice(L: FiniteLattice, members: Sequence[int], name=None) -> tuple[FiniteLattice, LatticeHom]:
    """Restrict ``L`` to ``members`` (assumed closed), keeping ambient order."""
    members = sorted(members)
    pos = {x: i for i, x in enumerate(members)}
    leq = [[L.leq[a][b] for b in members] for a in members]
    join = [[pos[L.join[a][b]] for b in members] for a in members]
    meet = [[pos[L.meet[a][b]] for b in members] for a in members]
    labels = [L.label(x) for x in members]
    sub = FiniteLattice(leq, join, meet, labels=labels, name=name)
    return sub, LatticeHom(sub, L, members, check=False)


def sublattice_closure(L: FiniteLattice, gens: Iterable[int], name=None) -> tuple[FiniteLattice, LatticeHom]:
    gens = list(gens)
    if not gens:
        raise ValueError("sublattice_closure needs at least one generator")
    members = kernels.sublattice_closure(L.join_k, L.meet_k, gens)
    return induced_sublattice(L, members, name=name)


def interval(L: FiniteLattice, a: int, b: int) -> FiniteLattice:
    if not L.leq[a][b]:
        raise NotComparable(f"{a} is not below {b}")
    return induced_sublattice(L, L.between(a, b))[0]


def interval_embedding(L: FiniteLattice, a: int, b: int) -> LatticeHom:
    if not L.leq[a][b]:
        raise NotComparable(f"{a} is not below {b}")
    return induced_sublattice(L, L.between(a, b))[1]


def iter_isomorphisms(a: FiniteLattice, b: FiniteLattice) -> Iterator[LatticeHom]:
    for phi in iter_order_isos(a.leq, b.leq):
        yield LatticeHom(a, b, phi, check=False)


def is_isomorphic(a: FiniteLattice, b: FiniteLattice) -> LatticeHom | None:
    return next(iter_isomorphisms(a, b), None)


def distributivity_violation(L: FiniteLattice):
    J, M = L.join, L.meet
    for a, b, c in itertools.product(range(L.size), repeat=3):
        if M[a][J[b][c]] != J[M[a][b]][M[a][c]]:
            return (a, b, c)
    return None


def modularity_violation(L: FiniteLattice):
    J, M, leq = L.join, L.meet, L.leq
    for a, b, c in itertools.product(range(L.size), repeat=3):
        if leq[a][c] and J[a][M[b][c]] != M[J[a][b]][c]:
            return (a, b, c)
    return None


def is_distributive(L: FiniteLattice) -> bool:
    return distributivity_violation(L) is None


def is_modular(L: FiniteLattice) -> bool:
    return modularity_violation(L) is None


def iter_homs(A: FiniteLattice, B: FiniteLattice) -> Iterator[LatticeHom]:
    """All lattice homomorphisms ``A -> B`` by backtracking."""
    n = A.size
    order = sorted(range(n), key=lambda x: (sum(A.leq[y][x] for y in range(n)), x))
    m = [-1] * n

    results: list[list[tuple[int, int, bool]]] = [[] for _ in range(n)]
    for a in range(n):
        for b in range(a + 1, n):
            results[A.join[a][b]].append((a, b, True))
            results[A.meet[a][b]].append((a, b, False))

    def consistent(k: int) -> bool:
        x = order[k]
        for a, b, is_join in results[x]:
            if m[a] >= 0 and m[b] >= 0:
                want = B.join[m[a]][m[b]] if is_join else B.meet[m[a]][m[b]]
                if m[x] != want:
                    return False
        for i in range(k + 1):
            y = order[i]
            j, mt = A.join[x][y], A.meet[x][y]
            if m[j] >= 0 and m[j] != B.join[m[x]][m[y]]:
                return False
            if m[mt] >= 0 and m[mt] != B.meet[m[x]][m[y]]:
                return False
            if A.leq[y][x] and not B.leq[m[y]][m[x]]:
                return False
        return True

    def rec(k: int):
        if k == n:
            yield LatticeHom(A, B, m, check=False)
            return
        x = order[k]
        for v in range(B.size):
            m[x] = v
            if consistent(k):
                yield from rec(k + 1)
        m[x] = -1

    yield from rec(0)
