import itertools

import pytest

from conlat.congruence import con_lattice, has_almost_permutable_congruences, principal_congruence
from conlat.errors import FamilyInvalid, PreconditionViolated
from conlat.lattice import boolean, chain, m3
from conlat.semilattice import powerset_semilattice
from conlat.urp import (
    FAILS,
    HOLDS,
    INCONCLUSIVE,
    UrpWitness,
    check_urp1_at,
    check_urp1_minus_at,
    find_splits,
    orient_and_split,
    unguarded_containments,
    urp1_holds_at,
    urp1_minus_witness_from_chain_splits,
    urp1_witness_from_splitting,
    witness_violations,
)


def brute_urp(S, eps, family, minus=False):
    """Try every starred family, gamma table and subset X."""
    n, le, J = S.size, S.le, S.join
    m = len(family)
    stars = []
    for a, b in family:
        stars.append([(x, y) for x in range(n) for y in range(n) if le(x, a) and le(y, b) and J[x][y] == eps])
    subsets = [frozenset(c) for r in range(m + 1) for c in itertools.combinations(range(m), r)] if minus else [None]
    for st in itertools.product(*stars):
        ast, bst = [p[0] for p in st], [p[1] for p in st]
        for gam in itertools.product(range(n), repeat=m * m):
            g = [list(gam[i * m:(i + 1) * m]) for i in range(m)]
            for X in subsets:
                if not witness_violations(S, eps, family, UrpWitness(ast, bst, g, X), minus=minus):
                    return True
    return False


def _sample_instances():
    out = []
    for L in (chain(3), boolean(2), m3()):
        S = con_lattice(L).semilattice
        for eps in range(S.size):
            pairs = [(a, b) for a in range(S.size) for b in range(S.size) if S.join[a][b] == eps]
            for fam in itertools.product(pairs, repeat=2):
                out.append((L.name, S, eps, list(fam)))
    return out


@pytest.mark.parametrize("minus", [False, True])
def test_search_agrees_with_brute_force(minus):
    check = check_urp1_minus_at if minus else check_urp1_at
    for name, S, eps, fam in _sample_instances():
        res = check(S, eps, fam, budget=None)
        assert res.status in (HOLDS, FAILS)
        assert (res.status == HOLDS) == brute_urp(S, eps, fam, minus), (name, eps, fam)
        if res.witness is not None:
            assert not witness_violations(S, eps, fam, res.witness, minus=minus)


def test_search_on_small_powerset_matches_brute_force():
    S = powerset_semilattice(2)
    for eps in range(4):
        pairs = [(a, b) for a in range(4) for b in range(4) if S.join[a][b] == eps]
        for fam in itertools.product(pairs, repeat=2):
            res = check_urp1_at(S, eps, list(fam), budget=None)
            assert (res.status == HOLDS) == brute_urp(S, eps, list(fam))


def test_singleton_family():
    S = powerset_semilattice(2)
    res = check_urp1_at(S, 3, [(3, 3)])
    assert res
    assert not witness_violations(S, 3, [(3, 3)], UrpWitness([3], [3], [[0]]))


def test_boolean_two_at_top():
    C = con_lattice(boolean(2))
    S = C.semilattice
    coat = list(C.lattice.coatoms)
    fam = [(coat[0], coat[1]), (coat[1], coat[0])]
    assert check_urp1_at(S, C.full, fam)


def test_family_must_join_to_epsilon():
    S = powerset_semilattice(2)
    with pytest.raises(FamilyInvalid):
        check_urp1_at(S, 3, [(1, 0)])


def test_empty_family_minus():
    res = check_urp1_minus_at(powerset_semilattice(2), 3, [])
    assert res


def test_budget_makes_search_inconclusive():
    S = powerset_semilattice(3)
    fam = [(1, 6), (2, 5), (4, 3)]
    res = check_urp1_at(S, 7, fam, budget=1)
    assert res.status == INCONCLUSIVE and res.inconclusive


def test_urp_holds_on_powerset():
    S = powerset_semilattice(2)
    assert all(urp1_holds_at(S, e, max_family=2) for e in range(4))


def test_witness_from_splitting_boolean():
    L = boolean(2)
    C = con_lattice(L)
    a1, a2 = principal_congruence(L, 0, 1), principal_congruence(L, 0, 2)
    fam = [(a1, a2), (a2, a1)]
    xs = [1, 2]
    w = urp1_witness_from_splitting(L, 0, 3, fam, xs)
    assert w.alpha_star == [C.index_of(a1), C.index_of(a2)]


def test_witness_from_splitting_trivial_cases():
    L = m3()
    C = con_lattice(L)
    w = urp1_witness_from_splitting(L, 0, 4, [(C.full, C.full)], [0])
    assert w.alpha_star == [0]
    with pytest.raises(PreconditionViolated):
        urp1_witness_from_splitting(chain(3), 0, 2, [(0, 3)], [1])


def test_chain_three_minus_witness():
    L = chain(3)
    C = con_lattice(L)
    lo, hi = C.index_of(principal_congruence(L, 0, 1)), C.index_of(principal_congruence(L, 1, 2))
    fam = [(lo, hi), (hi, lo)]
    X, xs = orient_and_split(L, 0, 2, fam)
    assert X == frozenset({0}) and xs == [1, 1]
    w = urp1_minus_witness_from_chain_splits(L, 0, 2, fam, X, xs)
    assert not witness_violations(C.semilattice, C.full, fam, w, minus=True)
    assert find_splits(L, 0, 2, C[lo], C[hi]) == [1]


def test_all_in_x_reduces_to_urp1():
    L = boolean(2)
    C = con_lattice(L)
    fam = [(C.theta(0, 1), C.theta(0, 2))]
    w = urp1_minus_witness_from_chain_splits(L, 0, 3, fam, {0}, [1])
    w1 = urp1_witness_from_splitting(L, 0, 3, fam, [1])
    assert (w.alpha_star, w.beta_star) == (w1.alpha_star, w1.beta_star)
    assert not witness_violations(C.semilattice, C.full, fam, w, minus=False)


def test_minus_witnesses_on_almost_permutable(small_lattices):
    for L in small_lattices:
        if not has_almost_permutable_congruences(L):
            continue
        C = con_lattice(L)
        for u, v in itertools.combinations(range(L.size), 2):
            if not L.leq[u][v]:
                continue
            eps = C.theta(u, v)
            pairs = [(a, b) for a in range(len(C)) for b in range(len(C)) if C.lattice.join[a][b] == eps]
            for fam in itertools.product(pairs, repeat=2):
                X, xs = orient_and_split(L, u, v, list(fam))
                urp1_minus_witness_from_chain_splits(L, u, v, list(fam), X, xs)


def test_m3_unguarded_containments_fail():
    L = m3()
    rows = unguarded_containments(L, *L.atoms)
    assert len(rows) == 3
    assert not any(r["holds"] for r in rows)
