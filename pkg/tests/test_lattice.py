import itertools

import pytest

from conlat.errors import CycleDetected, NotALattice, NotComparable, ParseError, SizeOverflow
from conlat.lattice import (
    LatticeHom,
    boolean,
    builtin,
    chain,
    interval,
    is_distributive,
    is_isomorphic,
    is_modular,
    iter_homs,
    lattice_from_covers,
    m3,
    n5,
    product,
    product_many,
    product_projections,
    s_lattice,
    sublattice_closure,
)

from conftest import brute_glb, brute_lub

BUILTINS = ["chain(1)", "chain(3)", "boolean(2)", "boolean(3)", "m3", "n5", "s"]


def test_three_chain_from_covers():
    L = lattice_from_covers(3, [(0, 1), (1, 2)])
    assert L.join[0][2] == 2
    assert L.meet[0][2] == 0


def test_m3_from_covers():
    L = lattice_from_covers(5, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)])
    assert L.join[1][2] == 4
    assert L.meet[1][2] == 0


def test_missing_upper_bound_reports_pair():
    with pytest.raises(NotALattice) as exc:
        lattice_from_covers(3, [(0, 1), (0, 2)])
    assert exc.value.pair == (1, 2)


def test_cycle_is_rejected():
    with pytest.raises(CycleDetected):
        lattice_from_covers(3, [(0, 1), (1, 2), (2, 1)])


def test_bad_cover_indices():
    with pytest.raises(ValueError):
        lattice_from_covers(2, [(0, 2)])
    with pytest.raises(ValueError):
        lattice_from_covers(2, [(1, 1)])


def test_s_lattice_joins():
    S = s_lattice()
    ix = S.index
    assert S.size == 7
    assert S.join[ix("p")][ix("p'")] == ix("q")
    assert S.join[ix("r")][ix("r'")] == ix("1")
    assert not is_modular(S)


def test_builtin_lookup():
    assert builtin("chain(4)").size == 4
    assert builtin("boolean(3)").size == 8
    assert builtin(" M3 ").size == 5
    with pytest.raises(ParseError):
        builtin("pentagon")


@pytest.mark.parametrize("name", BUILTINS)
def test_tables_match_brute_force(name):
    L = builtin(name)
    L.check_invariants()
    for a, b in itertools.product(range(L.size), repeat=2):
        assert L.join[a][b] == brute_lub(L.leq, a, b)
        assert L.meet[a][b] == brute_glb(L.leq, a, b)


def test_catalog_tables_match_brute_force(small_lattices):
    for L in small_lattices:
        L.check_invariants()
        for a, b in itertools.product(range(L.size), repeat=2):
            assert L.join[a][b] == brute_lub(L.leq, a, b)
            assert L.meet[a][b] == brute_glb(L.leq, a, b)


def test_products():
    assert is_isomorphic(product(chain(2), chain(2)), boolean(2)) is not None
    assert is_isomorphic(product(chain(1), n5()), n5()) is not None
    P = product(boolean(4), s_lattice())
    assert P.size == 112
    P.check_invariants()
    with pytest.raises(SizeOverflow):
        product_many([boolean(6), boolean(6)], bound=1000)


def test_product_projections_are_surjective_homs():
    P, pa, pb = product_projections(m3(), chain(3))
    for f in (pa, pb):
        LatticeHom(f.source, f.target, f.map)  # checks the hom property
        assert f.is_surjective()


def test_sublattice_closure_examples():
    sub, incl = sublattice_closure(m3(), [1, 2, 3])
    assert sub.size == 5 and list(incl.map) == [0, 1, 2, 3, 4]
    sub, incl = sublattice_closure(boolean(2), [0, 3])
    assert sub.size == 2 and is_isomorphic(sub, chain(2)) is not None
    again, _ = sublattice_closure(m3(), list(incl.map))
    assert again.size == 2


def test_sublattice_closure_idempotent_on_product():
    P = product(boolean(2), s_lattice())
    sub, incl = sublattice_closure(P, [3, 9, 20])
    sub2, incl2 = sublattice_closure(P, incl.map)
    assert list(incl2.map) == list(incl.map)
    members = set(incl.map)
    assert all(P.join[a][b] in members and P.meet[a][b] in members for a in members for b in members)


def test_isomorphism_examples():
    assert list(is_isomorphic(chain(3), chain(3)).map) == [0, 1, 2]
    assert is_isomorphic(m3(), n5()) is None
    assert is_isomorphic(boolean(4), product(boolean(2), boolean(2))) is not None


def test_isomorphism_is_symmetric_on_catalog(small_lattices):
    for A, B in itertools.combinations(small_lattices, 2):
        assert (is_isomorphic(A, B) is None) and (is_isomorphic(B, A) is None)
    for A in small_lattices:
        assert is_isomorphic(A, A) is not None


def test_distributive_and_modular():
    assert is_distributive(boolean(3))
    assert is_modular(m3()) and not is_distributive(m3())
    assert not is_modular(n5())
    assert not is_modular(s_lattice())


def test_intervals():
    assert is_isomorphic(interval(chain(3), 0, 2), chain(3)) is not None
    assert interval(m3(), 0, 1).size == 2
    assert is_isomorphic(interval(boolean(3), 0, 0b011), boolean(2)) is not None
    with pytest.raises(NotComparable):
        interval(m3(), 1, 2)


def test_iter_homs_matches_brute_force():
    A, B = chain(3), boolean(2)
    brute = []
    for m in itertools.product(range(B.size), repeat=A.size):
        if all(m[A.join[a][b]] == B.join[m[a]][m[b]] and m[A.meet[a][b]] == B.meet[m[a]][m[b]]
               for a in range(A.size) for b in range(A.size)):
            brute.append(tuple(m))
    assert sorted(tuple(h.map) for h in iter_homs(A, B)) == sorted(brute)


def test_hom_check_rejects_non_hom():
    with pytest.raises(ValueError):
        LatticeHom(boolean(2), chain(2), [0, 1, 0, 0])
