"""Uniform refinement witnesses: search, checking and constructive witnesses.

Elements are indices of a :class:`FiniteJoinSemilattice0`.  For congruence
semilattices use ``con_lattice(L).semilattice`` and congruence indices.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from .congruence import ConLattice, Congruence, con_lattice, principal_congruence, theta_plus
from .errors import FamilyInvalid, PreconditionViolated, WitnessCheckFailed
from .lattice import FiniteLattice
from .report import Verdict
from .semilattice import FiniteJoinSemilattice0

HOLDS = "holds"
FAILS = "fails"
INCONCLUSIVE = "inconclusive"

DEFAULT_BUDGET = 200_000


@dataclass
class UrpWitness:
    alpha_star: list[int]
    beta_star: list[int]
    gamma: list[list[int]]
    X: frozenset[int] | None = None

    def to_json(self) -> dict:
        out = {"alpha_star": self.alpha_star, "beta_star": self.beta_star, "gamma": self.gamma}
        if self.X is not None:
            out["X"] = sorted(self.X)
        return out


@dataclass
class UrpResult:
    status: str
    witness: UrpWitness | None = None
    nodes: int = 0
    detail: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.status == HOLDS

    @property
    def inconclusive(self) -> bool:
        return self.status == INCONCLUSIVE


def _validate_family(S: FiniteJoinSemilattice0, eps: int, family: Sequence[tuple[int, int]]) -> None:
    for i, (a, b) in enumerate(family):
        if S.join[a][b] != eps:
            raise FamilyInvalid(f"pair {i} = ({a}, {b}) does not join to {eps}")


def guarded(X, i: int, j: int, k: int) -> bool:
    """Whether the triangle condition applies to ``(i, j, k)`` for subset ``X``."""
    if X is None:
        return True
    if i in X and k in X and j not in X:
        return False
    if i not in X and k not in X and j in X:
        return False
    return True


def witness_violations(S: FiniteJoinSemilattice0, eps: int, family, w: UrpWitness, minus: bool = False) -> list:
    """Independent re-check of conditions (i)-(iv); returns the violated ones."""
    le, J = S.le, S.join
    n = len(family)
    X = w.X if minus else None
    bad = []
    for i in range(n):
        a, b = family[i]
        if not (le(w.alpha_star[i], a) and le(w.beta_star[i], b) and J[w.alpha_star[i]][w.beta_star[i]] == eps):
            bad.append(("i", i))
    for i in range(n):
        for j in range(n):
            g = w.gamma[i][j]
            if not (le(g, w.alpha_star[i]) and le(g, w.beta_star[j])):
                bad.append(("ii", i, j))
            if not (le(w.alpha_star[i], J[w.alpha_star[j]][g]) and le(w.beta_star[j], J[w.beta_star[i]][g])):
                bad.append(("iii", i, j))
    for i, j, k in itertools.product(range(n), repeat=3):
        if guarded(X, i, j, k) and not le(w.gamma[i][k], J[w.gamma[i][j]][w.gamma[j][k]]):
            bad.append(("iv", i, j, k))
    return bad


class _Budget:
    def __init__(self, limit: int | None):
        self.limit = limit
        self.nodes = 0
        self.exhausted = False

    def tick(self) -> bool:
        self.nodes += 1
        if self.limit is not None and self.nodes > self.limit:
            self.exhausted = True
        return not self.exhausted


def _search(S: FiniteJoinSemilattice0, eps: int, family, subsets, budget: _Budget):
    L = S.as_lattice()
    le, J, M = S.le, S.join, L.meet
    n = len(family)
    below = [[x for x in range(S.size) if le(x, a)] for a in range(S.size)]
    starred = [
        [(a, b) for a in below[al] for b in below[be] if J[a][b] == eps]
        for al, be in family
    ]

    def gammas_for(ast, bst):
        cand = {}
        for i in range(n):
            for j in range(n):
                top = M[ast[i]][bst[j]]
                opts = [
                    g for g in below[top]
                    if le(ast[i], J[ast[j]][g]) and le(bst[j], J[bst[i]][g])
                ]
                if not opts:
                    return None
                # the maximal admissible value first
                opts.sort(key=lambda g: (g != top, g))
                cand[(i, j)] = opts
        return cand

    cells = [(i, j) for i in range(n) for j in range(n)]

    def fill_gamma(cand, X):
        gamma = [[-1] * n for _ in range(n)]

        def consistent(i, j):
            # triangles whose three entries are now all assigned
            for a, b, c in itertools.product(range(n), repeat=3):
                if (i, j) not in ((a, c), (a, b), (b, c)):
                    continue
                ga, gb, gc = gamma[a][c], gamma[a][b], gamma[b][c]
                if ga < 0 or gb < 0 or gc < 0 or not guarded(X, a, b, c):
                    continue
                if not le(ga, J[gb][gc]):
                    return False
            return True

        def rec(t):
            if not budget.tick():
                return None
            if t == len(cells):
                return [row[:] for row in gamma]
            i, j = cells[t]
            for g in cand[(i, j)]:
                gamma[i][j] = g
                if consistent(i, j):
                    res = rec(t + 1)
                    if res is not None:
                        return res
                    if budget.exhausted:
                        return None
            gamma[i][j] = -1
            return None

        return rec(0)

    choice: list[tuple[int, int]] = [(-1, -1)] * n

    def rec_star(i):
        if not budget.tick():
            return None
        if i == n:
            ast = [c[0] for c in choice]
            bst = [c[1] for c in choice]
            cand = gammas_for(ast, bst)
            if cand is None:
                return None
            for X in subsets:
                gamma = fill_gamma(cand, X)
                if gamma is not None:
                    return UrpWitness(ast, bst, gamma, None if X is None else frozenset(X))
                if budget.exhausted:
                    return None
            return None
        for c in starred[i]:
            choice[i] = c
            res = rec_star(i + 1)
            if res is not None or budget.exhausted:
                return res
        return None

    return rec_star(0)


def check_urp1_at(S: FiniteJoinSemilattice0, eps: int, family, budget: int | None = DEFAULT_BUDGET) -> UrpResult:
    """Search for a URP₁ witness for one family; three-valued outcome."""
    family = [tuple(p) for p in family]
    _validate_family(S, eps, family)
    b = _Budget(budget)
    w = _search(S, eps, family, [None], b)
    if w is not None:
        return UrpResult(HOLDS, w, b.nodes)
    return UrpResult(INCONCLUSIVE if b.exhausted else FAILS, None, b.nodes)


def _subsets_large_first(n: int):
    idx = list(range(n))
    for r in range(n, -1, -1):
        for comb in itertools.combinations(idx, r):
            yield frozenset(comb)


def check_urp1_minus_at(S: FiniteJoinSemilattice0, eps: int, family, budget: int | None = DEFAULT_BUDGET) -> UrpResult:
    """As :func:`check_urp1_at` with the subset ``X`` searched as well (``X = I`` first)."""
    family = [tuple(p) for p in family]
    _validate_family(S, eps, family)
    b = _Budget(budget)
    w = _search(S, eps, family, list(_subsets_large_first(len(family))), b)
    if w is not None:
        return UrpResult(HOLDS, w, b.nodes)
    return UrpResult(INCONCLUSIVE if b.exhausted else FAILS, None, b.nodes)


def iter_families(S: FiniteJoinSemilattice0, eps: int, max_size: int):
    """All families of at most ``max_size`` pairs joining to ``eps`` (ordered, with repeats)."""
    pairs = [(a, b) for a in range(S.size) for b in range(S.size) if S.join[a][b] == eps]
    for r in range(1, max_size + 1):
        yield from itertools.product(pairs, repeat=r)


def _bounded_holds(check, S, eps, max_family, budget) -> UrpResult:
    total = 0
    for fam in iter_families(S, eps, max_family):
        res = check(S, eps, fam, budget)
        total += res.nodes
        if res.status != HOLDS:
            res.detail["family"] = [list(p) for p in fam]
            res.nodes = total
            return res
    return UrpResult(HOLDS, None, total)


def urp1_holds_at(S, eps, max_family: int = 2, budget: int | None = DEFAULT_BUDGET) -> UrpResult:
    """URP₁ at ``eps`` for every family of at most ``max_family`` pairs."""
    return _bounded_holds(check_urp1_at, S, eps, max_family, budget)


def urp1_minus_holds_at(S, eps, max_family: int = 2, budget: int | None = DEFAULT_BUDGET) -> UrpResult:
    return _bounded_holds(check_urp1_minus_at, S, eps, max_family, budget)


def urp1_point_join_closure_check(S: FiniteJoinSemilattice0, points, max_family: int = 1,
                                  budget: int | None = DEFAULT_BUDGET) -> Verdict:
    """Joins of points where the bounded URP₁ check holds pass the check too."""
    good = [p for p in points if urp1_holds_at(S, p, max_family, budget).status == HOLDS]
    for p, q in itertools.combinations_with_replacement(good, 2):
        res = urp1_holds_at(S, S.join[p][q], max_family, budget)
        if res.status != HOLDS:
            return Verdict(False, {"p": p, "q": q, "status": res.status})
    return Verdict(True, {"verified_points": good})


# constructive witnesses inside Con L


def _as_index(C: ConLattice, x) -> int:
    return C.index_of(x) if isinstance(x, Congruence) else int(x)


def find_splits(L: FiniteLattice, u: int, v: int, alpha: Congruence, beta: Congruence) -> list[int]:
    """Elements ``x`` of ``[u, v]`` with ``u ≡ x (α)`` and ``x ≡ v (β)``."""
    return [x for x in L.between(u, v) if alpha.related(u, x) and beta.related(x, v)]


def _normalize_family(L, u, v, family):
    C = con_lattice(L)
    fam = [(_as_index(C, a), _as_index(C, b)) for a, b in family]
    if not L.leq[u][v]:
        raise PreconditionViolated(f"{u} is not below {v}")
    eps = C.theta(u, v)
    try:
        _validate_family(C.semilattice, eps, fam)
    except FamilyInvalid as exc:
        raise PreconditionViolated(str(exc)) from exc
    return C, eps, fam


def _verify_or_raise(C, eps, fam, w, minus):
    bad = witness_violations(C.semilattice, eps, fam, w, minus=minus)
    if bad:
        raise WitnessCheckFailed(f"constructed witness violates {bad[:5]}")
    return w


def urp1_witness_from_splitting(L: FiniteLattice, u: int, v: int, family, xs: Sequence[int]) -> UrpWitness:
    """α*_i = Θ(u,x_i), β*_i = Θ(x_i,v), γ_ij = Θ(x_i, x_i∧x_j)."""
    C, eps, fam = _normalize_family(L, u, v, family)
    if len(xs) != len(fam):
        raise PreconditionViolated("one split element per family member is required")
    for i, x in enumerate(xs):
        a, b = C[fam[i][0]], C[fam[i][1]]
        if not (L.leq[u][x] and L.leq[x][v] and a.related(u, x) and b.related(x, v)):
            raise PreconditionViolated(f"x_{i} = {x} does not split ({u}, {v})")
    th = C.theta
    n = len(xs)
    ast = [th(u, x) for x in xs]
    bst = [th(x, v) for x in xs]
    gamma = [[th(xs[i], L.meet[xs[i]][xs[j]]) for j in range(n)] for i in range(n)]
    return _verify_or_raise(C, eps, fam, UrpWitness(ast, bst, gamma), minus=False)


def minus_gamma(L: FiniteLattice, u: int, v: int, xs: Sequence[int], X, i: int, j: int) -> Congruence:
    """The case-defined γ_ij of the almost-permutable construction."""
    xi, xj = xs[i], xs[j]
    if i in X and j in X:
        return theta_plus(L, xi, xj)
    if i in X:
        return principal_congruence(L, u, L.meet[xi][xj])
    if j in X:
        return principal_congruence(L, L.join[xi][xj], v)
    return theta_plus(L, xj, xi)


def urp1_minus_witness_from_chain_splits(L: FiniteLattice, u: int, v: int, family, X, xs: Sequence[int]) -> UrpWitness:
    """Witness for URP₁⁻ built from splits whose orientation is given by ``X``."""
    C, eps, fam = _normalize_family(L, u, v, family)
    X = frozenset(X)
    if len(xs) != len(fam):
        raise PreconditionViolated("one split element per family member is required")
    for i, x in enumerate(xs):
        a, b = C[fam[i][0]], C[fam[i][1]]
        first, second = (a, b) if i in X else (b, a)
        if not (L.leq[u][x] and L.leq[x][v] and first.related(u, x) and second.related(x, v)):
            raise PreconditionViolated(f"x_{i} = {x} does not split ({u}, {v}) in the required orientation")
    th = C.theta
    n = len(xs)
    ast = [th(u, x) if i in X else th(x, v) for i, x in enumerate(xs)]
    bst = [th(x, v) if i in X else th(u, x) for i, x in enumerate(xs)]
    gamma = [[C.index_of(minus_gamma(L, u, v, xs, X, i, j)) for j in range(n)] for i in range(n)]
    return _verify_or_raise(C, eps, fam, UrpWitness(ast, bst, gamma, X), minus=True)


def orient_and_split(L: FiniteLattice, u: int, v: int, family):
    """Choose ``X`` and split elements for an almost-permutable family.

    Members with an (α then β) split go to ``X``; the rest must split the
    other way.  Returns ``(X, xs)`` or None when some member splits in
    neither orientation.
    """
    C = con_lattice(L)
    X, xs = set(), []
    for i, (a, b) in enumerate(family):
        a, b = C[_as_index(C, a)], C[_as_index(C, b)]
        fwd = find_splits(L, u, v, a, b)
        if fwd:
            X.add(i)
            xs.append(fwd[0])
            continue
        back = find_splits(L, u, v, b, a)
        if not back:
            return None
        xs.append(back[0])
    return frozenset(X), xs


def unguarded_containments(L: FiniteLattice, xi: int, xj: int, xk: int) -> list[dict]:
    """The two triangle containments outside the guard of the almost-permutable witness.

    Each entry gives the containment as displayed in the literature and as
    it follows from the case definition of γ; both are evaluated.
    """
    C = con_lattice(L)
    u, v = L.bottom, L.top
    J, M = L.join, L.meet
    th = C.theta
    CL = C.lattice

    def contained(a, b, c):
        return CL.leq[a][CL.join[b][c]]

    tp = lambda a, b: C.index_of(theta_plus(L, a, b))  # noqa: E731
    # case i in X, j not in X, k in X
    first = (tp(xi, xk), th(u, M[xi][xj]), th(J[xj][xk], v))
    # case i not in X, j in X, k not in X
    second_stated = (tp(xk, xi), th(J[xi][xj], v), th(J[xj][xk], v))
    second_defined = (tp(xk, xi), th(J[xi][xj], v), th(u, M[xj][xk]))
    return [
        {"case": "i∈X, j∉X, k∈X", "form": "stated", "terms": list(first), "holds": contained(*first)},
        {"case": "i∉X, j∈X, k∉X", "form": "stated", "terms": list(second_stated), "holds": contained(*second_stated)},
        {"case": "i∉X, j∈X, k∉X", "form": "from γ cases", "terms": list(second_defined), "holds": contained(*second_defined)},
    ]
