import itertools

import numpy as np
import pytest

from conlat import kernels
from conlat.congruence import (
    Congruence,
    compose,
    con_functor_map,
    con_lattice,
    coatoms,
    full_congruence,
    has_almost_permutable_congruences,
    has_permutable_congruences,
    identity_congruence,
    is_congruence_splitting,
    is_simple,
    join_cong,
    meet_cong,
    permutable_via_criterion,
    principal_congruence,
    quotient,
    res_functor_map,
    res_of,
    theta_plus,
)
from conlat.errors import MixedLattices
from conlat.lattice import LatticeHom, boolean, chain, induced_sublattice, interval, is_distributive, is_isomorphic, m3, n5, s_lattice

from conftest import all_partitions, is_compatible


def brute_congruences(L):
    return [p for p in all_partitions(L.size) if is_compatible(L, p)]


def brute_principal(L, a, b):
    """Least compatible partition merging a and b: meet of all such partitions."""
    cands = [p for p in brute_congruences(L) if p[a] == p[b]]
    return Congruence(L, [tuple(p[x] for p in cands) for x in range(L.size)])


def test_principal_examples():
    assert principal_congruence(chain(3), 0, 1).blocks() == [[0, 1], [2]]
    M = m3()
    for atom in M.atoms:
        assert principal_congruence(M, 0, atom).is_full()
    for L in (chain(3), M, s_lattice()):
        assert principal_congruence(L, 1, 1).is_identity()


def test_principal_matches_brute_force(small_lattices):
    for L in small_lattices:
        for a, b in itertools.combinations(range(L.size), 2):
            assert principal_congruence(L, a, b) == brute_principal(L, a, b), (L, a, b)


def test_con_lattice_matches_brute_force(small_lattices):
    for L in small_lattices:
        C = con_lattice(L)
        got = sorted(c.block for c in C)
        want = sorted(Congruence(L, p).block for p in brute_congruences(L))
        assert got == want
        assert C[0].is_identity() and C[len(C) - 1].is_full()
        assert is_distributive(C.lattice)


def test_con_lattice_examples():
    assert is_isomorphic(con_lattice(chain(3)).lattice, boolean(2)) is not None
    assert len(con_lattice(m3())) == 2
    assert is_isomorphic(con_lattice(boolean(2)).lattice, boolean(2)) is not None
    assert len(coatoms(con_lattice(chain(3)))) == 2


def test_theta_plus():
    L = chain(4)
    assert theta_plus(L, 1, 3).is_identity()
    M = m3()
    assert theta_plus(M, 1, 2).is_full()
    B = boolean(2)
    assert theta_plus(B, 1, 2).blocks() == [[0, 1], [2, 3]]


def test_compose_and_join():
    L = chain(3)
    a, b = principal_congruence(L, 0, 1), principal_congruence(L, 1, 2)
    assert (compose(a, identity_congruence(L)) == a.matrix).all()
    assert compose(a, b)[0, 2]
    assert join_cong(a, b).is_full()
    assert meet_cong(a, b).is_identity()
    with pytest.raises(MixedLattices):
        join_cong(a, full_congruence(chain(4)))


def test_join_cong_is_congruence_join(small_lattices):
    for L in small_lattices:
        C = con_lattice(L)
        for i, j in itertools.combinations(range(len(C)), 2):
            jn = join_cong(C[i], C[j])
            assert is_compatible(L, jn.block)
            assert C.index_of(jn) == C.lattice.join[i][j]


def test_permutability_examples():
    assert not has_permutable_congruences(chain(3))
    assert has_permutable_congruences(m3())
    assert has_permutable_congruences(boolean(2))
    assert not permutable_via_criterion(chain(3))
    assert permutable_via_criterion(chain(3)).witness == (0, 1, 2)
    assert permutable_via_criterion(m3())
    assert has_almost_permutable_congruences(chain(3))
    assert is_congruence_splitting(m3())
    assert is_congruence_splitting(boolean(2))
    assert not is_congruence_splitting(chain(3))


def test_permutable_witness_is_real():
    v = has_permutable_congruences(chain(3))
    x, y = v.witness["pair"]
    C = con_lattice(chain(3))
    a = next(c for c in C if c.blocks() == v.witness["alpha"])
    b = next(c for c in C if c.blocks() == v.witness["beta"])
    assert compose(a, b)[x, y] != compose(b, a)[x, y]


def test_permutable_implies_almost(small_lattices):
    for L in small_lattices:
        if has_permutable_congruences(L):
            assert has_almost_permutable_congruences(L)


def test_quotients():
    L = n5()
    Q, p = quotient(L, identity_congruence(L))
    assert is_isomorphic(Q, L) is not None
    Q, p = quotient(L, full_congruence(L))
    assert Q.size == 1
    Q, p = quotient(chain(3), principal_congruence(chain(3), 0, 1))
    assert is_isomorphic(Q, chain(2)) is not None
    LatticeHom(p.source, p.target, p.map)
    assert p.is_surjective()


def test_quotient_correspondence(small_lattices):
    """Con(L/θ) is the interval above θ in Con L."""
    for L in small_lattices:
        C = con_lattice(L)
        for t in range(len(C)):
            Q, _ = quotient(L, C[t])
            upper = interval(C.lattice, t, C.full)
            assert is_isomorphic(con_lattice(Q).lattice, upper) is not None


def test_functor_maps():
    L = chain(3)
    ident = LatticeHom.identity(L)
    assert list(con_functor_map(ident).map) == list(range(4))
    assert list(res_functor_map(ident).map) == list(range(4))
    sub, incl = induced_sublattice(L, [0, 2])
    cf = con_functor_map(incl)
    CL = con_lattice(L)
    assert CL[cf.map[1]].is_full()
    assert res_of(incl, principal_congruence(L, 0, 1)).is_identity()


def test_res_after_con_is_inflationary(small_lattices):
    for L in small_lattices[:12]:
        for members in ([L.bottom, L.top], list(range(L.size))):
            _, incl = induced_sublattice(L, sorted(set(members)))
            cf, rf = con_functor_map(incl), res_functor_map(incl)
            CS = con_lattice(incl.source)
            for a in range(len(CS)):
                assert CS.lattice.leq[a][rf.map[cf.map[a]]]


def test_simple():
    assert is_simple(m3())
    assert is_simple(s_lattice())
    assert not is_simple(chain(3))


@pytest.mark.parametrize("name", ["m3", "s", "boolean(3)"])
def test_kernel_backends_agree(name):
    from conlat import _kernels_py
    from conlat.lattice import builtin

    L = builtin(name)
    J, M = np.asarray(L.join, dtype=np.int32), np.asarray(L.meet, dtype=np.int32)
    for a, b in itertools.combinations(range(L.size), 2):
        assert kernels.congruence_closure(J, M, [(a, b)]) == _kernels_py.congruence_closure(L.join, L.meet, [(a, b)])
    gens = list(range(0, L.size, 2))
    assert sorted(kernels.sublattice_closure(J, M, gens)) == sorted(_kernels_py.sublattice_closure(L.join, L.meet, gens))
    assert sorted(kernels.join_closure(J, gens, 0)) == sorted(_kernels_py.join_closure(L.join, gens, 0))
