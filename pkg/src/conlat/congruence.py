"""Congruences of finite lattices, congruence lattices and permutability tests."""

from __future__ import annotations

from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .errors import MixedLattices
from .lattice import FiniteLattice, LatticeHom, MonotoneMap
from .report import Verdict
from .semilattice import FiniteJoinSemilattice0, JoinZeroHom


def canonical_blocks(block: Sequence[int]) -> tuple[int, ...]:
    """Renumber a partition so blocks are numbered by their least member."""
    ids: dict[int, int] = {}
    return tuple(ids.setdefault(b, len(ids)) for b in block)


class Congruence:
    """A congruence of ``lattice``; ``block[x]`` is the id of x's block."""

    def __init__(self, lattice: FiniteLattice, block: Sequence[int]):
        self.lattice = lattice
        self.block = canonical_blocks(block)

    def __repr__(self) -> str:
        return "Congruence(" + self.blocks_str() + ")"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Congruence)
            and self.block == other.block
            and (self.lattice is other.lattice or self.lattice == other.lattice)
        )

    def __hash__(self) -> int:
        return hash(self.block)

    def __le__(self, other: "Congruence") -> bool:
        _same(self, other)
        # refinement: every block of self lies inside a block of other
        seen: dict[int, int] = {}
        for a, b in zip(self.block, other.block):
            if seen.setdefault(a, b) != b:
                return False
        return True

    def related(self, a: int, b: int) -> bool:
        return self.block[a] == self.block[b]

    @property
    def num_blocks(self) -> int:
        return max(self.block) + 1 if self.block else 0

    def blocks(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.num_blocks)]
        for x, b in enumerate(self.block):
            out[b].append(x)
        return out

    def blocks_str(self) -> str:
        L = self.lattice
        return "|".join(",".join(L.label(x) for x in blk) for blk in self.blocks())

    def is_identity(self) -> bool:
        return self.num_blocks == len(self.block)

    def is_full(self) -> bool:
        return self.num_blocks <= 1

    @cached_property
    def matrix(self) -> np.ndarray:
        b = np.asarray(self.block)
        return b[:, None] == b[None, :]

    def pairs(self) -> list[tuple[int, int]]:
        """Pairs ``(x, r)`` with ``r`` the least member of x's block."""
        rep: dict[int, int] = {}
        out = []
        for x, b in enumerate(self.block):
            r = rep.setdefault(b, x)
            if r != x:
                out.append((x, r))
        return out

    def to_json(self) -> dict:
        return {"blocks": self.blocks()}


def _same(a: Congruence, b: Congruence) -> None:
    if not (a.lattice is b.lattice or a.lattice == b.lattice):
        raise MixedLattices("congruences live on different lattices")


def identity_congruence(L: FiniteLattice) -> Congruence:
    return Congruence(L, range(L.size))


def full_congruence(L: FiniteLattice) -> Congruence:
    return Congruence(L, [0] * L.size)


def generated_congruence(L: FiniteLattice, pairs: Iterable[tuple[int, int]], init: Congruence | None = None) -> Congruence:
    blk = kernels.congruence_closure(L.join_k, L.meet_k, list(pairs), None if init is None else init.block)
    return Congruence(L, blk)


def principal_congruence(L: FiniteLattice, a: int, b: int) -> Congruence:
    """Θ(a, b): least congruence identifying ``a`` and ``b``."""
    memo = L._cache.setdefault("theta", {})
    key = (a, b) if a <= b else (b, a)
    c = memo.get(key)
    if c is None:
        c = memo[key] = generated_congruence(L, [key])
    return c


def theta_plus(L: FiniteLattice, a: int, b: int) -> Congruence:
    """Θ⁺(a, b) = Θ(a∧b, a)."""
    return principal_congruence(L, L.meet[a][b], a)


def join_cong(alpha: Congruence, beta: Congruence) -> Congruence:
    _same(alpha, beta)
    # transitive closure of the union of two congruences of a lattice is a congruence
    n = len(alpha.block)
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for c in (alpha, beta):
        for x, r in c.pairs():
            rx, rr = find(x), find(r)
            if rx != rr:
                parent[max(rx, rr)] = min(rx, rr)
    return Congruence(alpha.lattice, [find(x) for x in range(n)])


def meet_cong(alpha: Congruence, beta: Congruence) -> Congruence:
    _same(alpha, beta)
    return Congruence(alpha.lattice, list(zip(alpha.block, beta.block)))


def compose(alpha: Congruence, beta: Congruence) -> np.ndarray:
    """Relational product αβ: x αβ y iff x α z and z β y for some z."""
    _same(alpha, beta)
    a = alpha.matrix.astype(np.float32)
    b = beta.matrix.astype(np.float32)
    return (a @ b) > 0


class ConLattice:
    """All congruences of ``source`` ordered by refinement.

    Index 0 is the identity congruence and the last index the full one.
    """

    def __init__(self, source: FiniteLattice, congruences: list[Congruence]):
        self.source = source
        self.congruences = congruences
        self._index = {c.block: i for i, c in enumerate(congruences)}
        n = len(congruences)
        leq = [[a <= b for b in congruences] for a in congruences]
        join = [[0] * n for _ in range(n)]
        meet = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                join[i][j] = join[j][i] = self._index[join_cong(congruences[i], congruences[j]).block]
                meet[i][j] = meet[j][i] = self._index[meet_cong(congruences[i], congruences[j]).block]
        labels = [c.blocks_str() for c in congruences]
        name = f"Con {source.name}" if source.name else "Con"
        self.lattice = FiniteLattice(leq, join, meet, labels=labels, name=name)
        self.semilattice = FiniteJoinSemilattice0.from_lattice(self.lattice)

    def __len__(self) -> int:
        return len(self.congruences)

    def __getitem__(self, i: int) -> Congruence:
        return self.congruences[i]

    def __iter__(self):
        return iter(self.congruences)

    def index_of(self, c: Congruence) -> int:
        return self._index[c.block]

    def theta(self, a: int, b: int) -> int:
        return self.index_of(principal_congruence(self.source, a, b))

    @property
    def identity(self) -> int:
        return 0

    @property
    def full(self) -> int:
        return len(self.congruences) - 1


def con_lattice(L: FiniteLattice) -> ConLattice:
    """Congruence lattice, built by closing principal congruences under join."""
    cached = L._cache.get("con")
    if cached is not None:
        return cached
    principals = []
    seen_p = set()
    for a, b in L.covers:
        c = principal_congruence(L, a, b)
        if c.block not in seen_p:
            seen_p.add(c.block)
            principals.append(c)
    ident = identity_congruence(L)
    found = {ident.block: ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for c in frontier:
            for p in principals:
                j = join_cong(c, p)
                if j.block not in found:
                    found[j.block] = j
                    nxt.append(j)
        frontier = nxt
    congs = sorted(found.values(), key=lambda c: (-c.num_blocks, c.block))
    result = ConLattice(L, congs)
    L._cache["con"] = result
    return result


# permutability


def has_permutable_congruences(L: FiniteLattice) -> Verdict:
    """αβ = βα for every pair of congruences; witness ``(α, β, (x, y))`` on failure."""
    C = con_lattice(L)
    mats = [c.matrix.astype(np.float32) for c in C]
    for i in range(len(C)):
        for j in range(i + 1, len(C)):
            ab = (mats[i] @ mats[j]) > 0
            ba = (mats[j] @ mats[i]) > 0
            diff = np.argwhere(ab != ba)
            if len(diff):
                x, y = (int(v) for v in diff[0])
                return Verdict(False, {"alpha": C[i].blocks(), "beta": C[j].blocks(), "pair": [x, y]})
    return Verdict(True)


def permutable_via_criterion(L: FiniteLattice) -> Verdict:
    """For all a≤c≤b some x has a ≡ x mod Θ(c,b) and x ≡ b mod Θ(a,c)."""
    n, leq = L.size, L.leq
    for a in range(n):
        for c in range(n):
            if not leq[a][c]:
                continue
            tac = principal_congruence(L, a, c)
            for b in range(n):
                if not leq[c][b]:
                    continue
                tcb = principal_congruence(L, c, b)
                if not any(tcb.related(a, x) and tac.related(x, b) for x in range(n)):
                    return Verdict(False, (a, c, b))
    return Verdict(True)


def has_almost_permutable_congruences(L: FiniteLattice) -> Verdict:
    """α∨β = αβ ∪ βα for every pair of congruences."""
    C = con_lattice(L)
    mats = [c.matrix.astype(np.float32) for c in C]
    for i in range(len(C)):
        for j in range(i + 1, len(C)):
            ab = (mats[i] @ mats[j]) > 0
            ba = (mats[j] @ mats[i]) > 0
            jn = C[C.lattice.join[i][j]].matrix
            diff = np.argwhere(jn != (ab | ba))
            if len(diff):
                x, y = (int(v) for v in diff[0])
                return Verdict(False, {"alpha": C[i].blocks(), "beta": C[j].blocks(), "pair": [x, y]})
    return Verdict(True)


def is_congruence_splitting(L: FiniteLattice) -> Verdict:
    """For u≤v and α∨β = Θ(u,v), some x,y in [u,v] have x∨y=v, u≡x mod α, u≡y mod β."""
    C = con_lattice(L)
    CL = C.lattice
    n, leq, J = L.size, L.leq, L.join
    for u in range(n):
        for v in range(n):
            if u == v or not leq[u][v]:
                continue
            t = C.theta(u, v)
            iv = L.between(u, v)
            for i in range(len(C)):
                for j in range(len(C)):
                    if CL.join[i][j] != t:
                        continue
                    a, b = C[i], C[j]
                    xs = [x for x in iv if a.related(u, x)]
                    ys = [y for y in iv if b.related(u, y)]
                    if not any(J[x][y] == v for x in xs for y in ys):
                        return Verdict(False, {"u": u, "v": v, "alpha": a.blocks(), "beta": b.blocks()})
    return Verdict(True)


# quotients and functor maps


def quotient(L: FiniteLattice, theta: Congruence) -> tuple[FiniteLattice, LatticeHom]:
    """``L/θ`` with its projection.  Block ``k`` becomes element ``k``."""
    reps = [blk[0] for blk in theta.blocks()]
    k = len(reps)
    bl = theta.block
    join = [[bl[L.join[reps[i]][reps[j]]] for j in range(k)] for i in range(k)]
    meet = [[bl[L.meet[reps[i]][reps[j]]] for j in range(k)] for i in range(k)]
    leq = [[join[i][j] == j for j in range(k)] for i in range(k)]
    labels = ["[" + ",".join(L.label(x) for x in blk) + "]" for blk in theta.blocks()]
    Q = FiniteLattice(leq, join, meet, labels=labels, name=f"{L.name}/θ" if L.name else None)
    return Q, LatticeHom(L, Q, bl, check=False)


def con_image_of(f: LatticeHom, alpha: Congruence) -> Congruence:
    """Congruence of the target generated by the f-images of α-related pairs."""
    m = f.map
    return generated_congruence(f.target, [(m[x], m[r]) for x, r in alpha.pairs()])


def con_functor_map(f: LatticeHom) -> JoinZeroHom:
    """Con f : Con(source) -> Con(target) as a join-zero hom."""
    cs, ct = con_lattice(f.source), con_lattice(f.target)
    mapping = [ct.index_of(con_image_of(f, a)) for a in cs]
    return JoinZeroHom(cs.semilattice, ct.semilattice, mapping, check=False)


def res_of(f: LatticeHom, beta: Congruence) -> Congruence:
    """Preimage of β: x ~ y iff f(x) β f(y)."""
    return Congruence(f.source, [beta.block[y] for y in f.map])


def res_functor_map(f: LatticeHom) -> MonotoneMap:
    """Res f : Con(target) -> Con(source); preserves meets and the full congruence."""
    cs, ct = con_lattice(f.source), con_lattice(f.target)
    mapping = [cs.index_of(res_of(f, b)) for b in ct]
    return MonotoneMap(ct.lattice, cs.lattice, mapping, check=False)


def coatoms(C: ConLattice) -> list[int]:
    return list(C.lattice.coatoms)


def is_simple(L: FiniteLattice) -> bool:
    return L.size >= 2 and len(con_lattice(L)) == 2
