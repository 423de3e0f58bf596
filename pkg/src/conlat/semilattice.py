"""Finite join-semilattices with zero and their homomorphisms."""

from __future__ import annotations

import itertools
from functools import cached_property
from typing import Iterable, Sequence

from . import kernels
from ._iso import covers_of, iter_order_isos
from .errors import NotAHom
from .lattice import FiniteLattice
from .report import Verdict


class FiniteJoinSemilattice0:
    """A finite {join, 0}-semilattice on ``0..size-1``."""

    def __init__(self, join, zero: int, labels: Sequence[str] | None = None, name: str | None = None,
                 lattice: FiniteLattice | None = None):
        self.size = len(join)
        self.join = tuple(tuple(int(v) for v in row) for row in join)
        self.zero = int(zero)
        self.labels = tuple(str(x) for x in labels) if labels is not None else None
        self.name = name
        self._lattice = lattice
        self._hash: int | None = None

    def __repr__(self) -> str:
        return f"FiniteJoinSemilattice0({self.name or '?'}, size={self.size})"

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteJoinSemilattice0) and self.join == other.join and self.zero == other.zero

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.join, self.zero))
        return self._hash

    @cached_property
    def leq(self) -> tuple[tuple[bool, ...], ...]:
        return tuple(tuple(self.join[a][b] == b for b in range(self.size)) for a in range(self.size))

    @cached_property
    def join_k(self):
        return kernels.prepare(self.join)

    @cached_property
    def covers(self) -> tuple[tuple[int, int], ...]:
        return tuple(covers_of(self.leq))

    @cached_property
    def top(self) -> int:
        return self.join_all(range(self.size))

    def label(self, x: int) -> str:
        return self.labels[x] if self.labels is not None else str(x)

    def index(self, label) -> int:
        if isinstance(label, int):
            return label
        if self.labels is None or label not in self.labels:
            raise KeyError(label)
        return self.labels.index(label)

    def le(self, a: int, b: int) -> bool:
        return self.join[a][b] == b

    def join_all(self, xs: Iterable[int]) -> int:
        acc = self.zero
        for x in xs:
            acc = self.join[acc][x]
        return acc

    def meet(self, a: int, b: int) -> int:
        return self.as_lattice().meet[a][b]

    def as_lattice(self) -> FiniteLattice:
        """A finite join-semilattice with zero is a lattice; meets are joins of lower bounds."""
        if self._lattice is None:
            n, leq = self.size, self.leq
            meet = [[0] * n for _ in range(n)]
            for a in range(n):
                for b in range(a, n):
                    m = self.join_all(x for x in range(n) if leq[x][a] and leq[x][b])
                    meet[a][b] = meet[b][a] = m
            self._lattice = FiniteLattice(leq, self.join, meet, labels=self.labels, name=self.name)
        return self._lattice

    def check_invariants(self) -> None:
        n, J = self.size, self.join
        for a in range(n):
            assert J[a][a] == a
            assert J[self.zero][a] == a
            for b in range(n):
                assert J[a][b] == J[b][a]
                for c in range(n):
                    assert J[J[a][b]][c] == J[a][J[b][c]]

    @staticmethod
    def from_lattice(L: FiniteLattice, name: str | None = None) -> "FiniteJoinSemilattice0":
        return FiniteJoinSemilattice0(L.join, L.bottom, labels=L.labels, name=name or L.name, lattice=L)


class JoinZeroHom:
    """A map preserving binary joins and zero."""

    def __init__(self, source: FiniteJoinSemilattice0, target: FiniteJoinSemilattice0, mapping, check: bool = True):
        self.source = source
        self.target = target
        self.map = tuple(int(x) for x in mapping)
        if len(self.map) != source.size or any(not 0 <= y < target.size for y in self.map):
            raise NotAHom("join-zero hom has wrong length or out-of-range values")
        if check:
            bad = self.violation()
            if bad is not None:
                raise NotAHom(f"not a join-zero hom at {bad}")

    def violation(self):
        m, S, T = self.map, self.source, self.target
        if m[S.zero] != T.zero:
            return ("zero",)
        for a in range(S.size):
            for b in range(a + 1, S.size):
                if m[S.join[a][b]] != T.join[m[a]][m[b]]:
                    return ("join", a, b)
        return None

    def __call__(self, x: int) -> int:
        return self.map[x]

    def __repr__(self) -> str:
        return f"JoinZeroHom({list(self.map)})"

    def __eq__(self, other) -> bool:
        return isinstance(other, JoinZeroHom) and self.map == other.map and self.source == other.source and self.target == other.target

    def __hash__(self) -> int:
        return hash(self.map)

    def compose(self, inner: "JoinZeroHom") -> "JoinZeroHom":
        """``self ∘ inner``."""
        return JoinZeroHom(inner.source, self.target, [self.map[y] for y in inner.map], check=False)

    def is_injective(self) -> bool:
        return len(set(self.map)) == len(self.map)

    def is_surjective(self) -> bool:
        return len(set(self.map)) == self.target.size

    def as_monotone(self):
        from .lattice import MonotoneMap

        return MonotoneMap(self.source.as_lattice(), self.target.as_lattice(), self.map, check=False)

    @staticmethod
    def identity(S: FiniteJoinSemilattice0) -> "JoinZeroHom":
        return JoinZeroHom(S, S, range(S.size), check=False)


def set_label(mask: int, n: int) -> str:
    return "{" + ",".join(str(i) for i in range(n) if mask >> i & 1) + "}"


def powerset_semilattice(n: int) -> FiniteJoinSemilattice0:
    """Subsets of ``{0..n-1}`` under union; element ``x`` is the bitmask ``x``."""
    size = 1 << n
    join = [[a | b for b in range(size)] for a in range(size)]
    meet = [[a & b for b in range(size)] for a in range(size)]
    leq = [[a & b == a for b in range(size)] for a in range(size)]
    labels = [set_label(a, n) for a in range(size)]
    L = FiniteLattice(leq, join, meet, labels=labels, name=f"P({n})")
    return FiniteJoinSemilattice0(join, 0, labels=labels, name=f"P({n})", lattice=L)


def mask_of(elements: Iterable[int]) -> int:
    m = 0
    for e in elements:
        m |= 1 << e
    return m


def induced_subsemilattice(S: FiniteJoinSemilattice0, members: Sequence[int], name=None):
    members = sorted(set(members))
    pos = {x: i for i, x in enumerate(members)}
    join = [[pos[S.join[a][b]] for b in members] for a in members]
    sub = FiniteJoinSemilattice0(join, pos[S.zero], labels=[S.label(x) for x in members], name=name)
    return sub, JoinZeroHom(sub, S, members, check=False)


def subsemilattice_generated(S: FiniteJoinSemilattice0, gens: Iterable[int], name=None):
    """Closure of ``gens`` and zero under join, with its inclusion."""
    members = kernels.join_closure(S.join_k, list(gens), S.zero)
    return induced_subsemilattice(S, members, name=name)


def is_free_tuple(S: FiniteJoinSemilattice0, tup: Sequence[int]) -> bool:
    """True iff the joins of the 2^n subfamilies of ``tup`` are pairwise distinct."""
    seen = set()
    for r in range(len(tup) + 1):
        for sub in itertools.combinations(range(len(tup)), r):
            v = S.join_all(tup[i] for i in sub)
            if v in seen:
                return False
            seen.add(v)
    return True


def distributivity_witness(S: FiniteJoinSemilattice0):
    """First ``(a, b, c)`` with ``c <= a∨b`` not splitting as ``a'∨b'``, or None."""
    n, J, leq = S.size, S.join, S.leq
    below = [[x for x in range(n) if leq[x][a]] for a in range(n)]
    for a in range(n):
        for b in range(a, n):
            ab = J[a][b]
            for c in below[ab]:
                left = [x for x in below[a] if leq[x][c]]
                right = [y for y in below[b] if leq[y][c]]
                if not any(J[x][y] == c for x in left for y in right):
                    return (a, b, c)
    return None


def is_distributive_semilattice(S: FiniteJoinSemilattice0) -> Verdict:
    w = distributivity_witness(S)
    return Verdict(w is None, w)


def is_weakly_distributive_at(mu: JoinZeroHom, eps: int) -> Verdict:
    """For every ``α∨β = μ(ε)`` find ``ε = α'∨β'`` with ``μ(α')≤α`` and ``μ(β')≤β``."""
    S, T, m = mu.source, mu.target, mu.map
    target = m[eps]
    below_eps = [x for x in range(S.size) if S.le(x, eps)]
    for a in range(T.size):
        for b in range(a, T.size):
            if T.join[a][b] != target:
                continue
            ok = any(
                S.join[x][y] == eps and T.le(m[x], a) and T.le(m[y], b)
                for x in below_eps
                for y in below_eps
            )
            if not ok:
                return Verdict(False, (a, b))
    return Verdict(True)


def iter_semilattice_isos(S: FiniteJoinSemilattice0, T: FiniteJoinSemilattice0):
    for phi in iter_order_isos(S.leq, T.leq):
        yield JoinZeroHom(S, T, phi, check=False)


def semilattice_isomorphic(S: FiniteJoinSemilattice0, T: FiniteJoinSemilattice0) -> JoinZeroHom | None:
    return next(iter_semilattice_isos(S, T), None)


def boolean_semilattice(n: int) -> FiniteJoinSemilattice0:
    return powerset_semilattice(n)
