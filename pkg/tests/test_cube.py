import itertools

import pytest

from conlat.constructions import (
    CASE_TABLE,
    build_dac,
    build_dc,
    case_table_check,
    dual_tables_dc,
    verify_cube,
    verify_dac,
    verify_dc,
)
from conlat.errors import PreconditionViolated

# plain set copies of the tables, used as an independent oracle
DC = {
    "xi": [{0, 4}, {3}, {2}, {1, 4}],
    "eta": [{0, 4}, {1, 4}, {2}, {3, 4}],
    "zeta": [{0, 4}, {1}, {3}, {2, 4}],
    "alpha": [{0, 1, 4}, {0, 3, 4}, {0, 2, 4}],
    "beta": [{2, 3, 4}, {1, 2, 4}, {1, 3, 4}],
}
DAC = {
    "xi": [{0, 4, 7}, {3, 5, 6}, {2, 5, 6}, {1, 4, 7}],
    "eta": [{0, 4, 5, 7}, {1, 4, 6, 7}, {2, 5, 6, 7}, {3, 4, 5, 6}],
    "zeta": [{0, 4, 6}, {1, 5, 7}, {3, 5, 7}, {2, 4, 6}],
    "alpha": [{0, 1, 4, 5, 6, 7}, {0, 3, 4, 5, 6, 7}, {0, 2, 4, 5, 6, 7}],
    "beta": [{2, 3, 4, 5, 6, 7}, {1, 2, 4, 5, 6, 7}, {1, 3, 4, 5, 6, 7}],
}


def mask(s):
    return sum(1 << k for k in s)


def failed(rep):
    return {c.name for c in rep.checks if c.status != "pass"}


@pytest.mark.parametrize("build,table", [(build_dc, DC), (build_dac, DAC)])
def test_tables_loaded(build, table):
    d = build()
    for letter, sets in table.items():
        assert getattr(d, letter) == tuple(mask(s) for s in sets)


@pytest.mark.parametrize("table", [DC, DAC])
def test_matrix_rows_are_joins(table):
    # rows α_{j'}, β_{j'} and columns α_{j''}, β_{j''} of each T_j matrix
    for j, letter in enumerate(("xi", "eta", "zeta")):
        q = table[letter]
        jp, jpp = (x for x in range(3) if x != j)
        assert q[0] | q[1] == table["alpha"][jp]
        assert q[2] | q[3] == table["beta"][jp]
        assert q[0] | q[2] == table["alpha"][jpp]
        assert q[1] | q[3] == table["beta"][jpp]


def test_alpha0_two_ways():
    assert DC["zeta"][0] | DC["zeta"][1] == DC["eta"][0] | DC["eta"][1] == DC["alpha"][0]
    d = build_dc()
    U = d.U
    assert U.join[d.zeta[0]][d.zeta[1]] == U.join[d.eta[0]][d.eta[1]] == d.alpha[0]


def test_verify_dc_passes():
    rep = verify_dc()
    assert rep.passed
    assert rep.exit_code() == 0
    for j in range(3):
        assert rep.status_of(f"|T{j}| = 16") == "pass"
        assert rep.status_of(f"|S{j}| = 4") == "pass"
    assert rep.status_of("η1 ≰ ξ1∨ζ1") == "pass"


def test_dc_non_inequality_witness():
    outside = DC["eta"][1] - (DC["xi"][1] | DC["zeta"][1])
    assert outside == {4}
    rep = verify_dc()
    c = next(c for c in rep.checks if c.name == "η1 ≰ ξ1∨ζ1")
    assert c.witness["outside"] == [4]


def test_verify_dac_passes_with_witnesses():
    rep = verify_dac()
    assert rep.passed
    expected = {
        "η1 ≰ ξ1∨ζ1": ("eta", 1, "xi", 1, "zeta", 1),
        "η2 ≰ ξ0∨ζ3": ("eta", 2, "xi", 0, "zeta", 3),
        "η3 ≰ ξ3∨ζ2": ("eta", 3, "xi", 3, "zeta", 2),
        "η0 ≰ ξ2∨ζ0": ("eta", 0, "xi", 2, "zeta", 0),
    }
    for name, (l, i, a, j, b, k) in expected.items():
        oracle = sorted(DAC[l][i] - (DAC[a][j] | DAC[b][k]))
        c = next(c for c in rep.checks if c.name == name)
        assert c.witness["outside"] == oracle
    assert [next(c for c in rep.checks if c.name == n).witness["element"] for n in expected] == [4, 5, 6, 7]


def test_dc_perturbation_breaks_non_inequality():
    d = build_dc(overrides={"xi": {1: {3, 4}}})
    bad = failed(verify_cube(d))
    assert "η1 ≰ ξ1∨ζ1" in bad


def test_dc_perturbation_breaks_matrix():
    d = build_dc(overrides={"xi": {1: {2}}})
    rep = verify_cube(d)
    assert rep.status_of("T0 refinement matrix") == "fail"
    c = next(c for c in rep.checks if c.name == "T0 refinement matrix")
    assert c.witness["matrix"] == "T0"
    assert rep.exit_code() == 1


def test_larger_universe_keeps_checks():
    d = build_dc(universe_size=6)
    assert verify_cube(d).passed
    with pytest.raises(ValueError):
        build_dc(universe_size=4)


@pytest.mark.parametrize("orientation,text", [
    (("alpha", "alpha", "alpha"), "η1 ≤ ξ1∨ζ1"),
    (("beta", "beta", "alpha"), "η3 ≤ ξ3∨ζ2"),
    (("alpha", "beta", "beta"), "η0 ≤ ξ2∨ζ0"),
    (("beta", "alpha", "beta"), "η2 ≤ ξ0∨ζ3"),
])
def test_case_table_rows(orientation, text):
    assert CASE_TABLE[orientation] == text


def test_case_table_complementary_rows_agree():
    flip = {"alpha": "beta", "beta": "alpha"}
    for o in itertools.product(("alpha", "beta"), repeat=3):
        assert CASE_TABLE[o] == CASE_TABLE[tuple(flip[s] for s in o)]


def test_dac_all_cases_fail_in_U():
    rep = case_table_check(build_dac())
    assert rep.passed
    assert sum(c.name.endswith("which fails") for c in rep.checks) == 8


def test_dc_uniform_cases_fail_in_U():
    rep = case_table_check(build_dc())
    assert rep.exit_code() == 0
    asserted = [c for c in rep.checks if c.name.endswith("which fails")]
    assert len(asserted) == 2 and all(c.status == "pass" for c in asserted)
    assert sum(c.status == "inapplicable" for c in rep.checks) == 6


def test_dual_tables():
    rep = dual_tables_dc()
    assert rep.passed, [c.name for c in rep.failures()]
    assert rep.status_of("ψ0(4̄) = {2,3} = 0̄∧1̄") == "pass"


def test_dual_tables_reject_other_cube():
    with pytest.raises(PreconditionViolated):
        dual_tables_dc(build_dac())
