import json

import pytest

from conlat import catalog as cat
from conlat.catalog import (
    LiftingFound,
    NotFoundWithinBound,
    brute_force_lattices,
    canonical_code,
    enumerate_lattices,
    run_property_suite,
    search_liftings,
    verify_counts,
)
from conlat.constructions import build_triangle
from conlat.diagram import Diagram, single
from conlat.errors import BoundExceeded, ConlatError
from conlat.lattice import boolean, chain, is_isomorphic, m3
from conlat.semilattice import powerset_semilattice


@pytest.mark.parametrize("n,count", [(1, 1), (2, 1), (3, 1), (4, 2), (5, 5), (6, 15)])
def test_counts_match_oracle(n, count):
    gen = enumerate_lattices(n)
    oracle = brute_force_lattices(n)
    assert len(gen) == len(oracle) == count
    assert sorted(canonical_code(L.leq) for L in gen) == sorted(canonical_code(R) for R in oracle)


def test_size_seven_against_oracle():
    gen = enumerate_lattices(7)
    oracle = brute_force_lattices(7, limit=7)
    assert len(gen) == len(oracle) == 53
    assert sorted(canonical_code(L.leq) for L in gen) == sorted(canonical_code(R) for R in oracle)


def test_oracle_bound():
    with pytest.raises(BoundExceeded):
        brute_force_lattices(7)


def test_verify_counts_report():
    rep = verify_counts(6)
    assert rep.passed and len(rep.checks) == 6


def test_no_two_entries_isomorphic(small_lattices):
    by_size = {}
    for L in small_lattices:
        by_size.setdefault(L.size, []).append(L)
    for group in by_size.values():
        for i, A in enumerate(group):
            for B in group[i + 1:]:
                assert is_isomorphic(A, B) is None


def test_entries_are_lattices(small_lattices):
    from conftest import brute_glb, brute_lub

    for L in small_lattices:
        leq = L.leq
        for a in range(L.size):
            for b in range(L.size):
                assert brute_lub(leq, a, b) == L.join[a][b]
                assert brute_glb(leq, a, b) == L.meet[a][b]


def test_known_lattices_present():
    five = enumerate_lattices(5)
    for K in (m3(), chain(5)):
        assert any(is_isomorphic(K, L) for L in five)
    assert any(is_isomorphic(boolean(2), L) for L in enumerate_lattices(4))


def test_bound_exceeded():
    with pytest.raises(BoundExceeded):
        enumerate_lattices(8)
    with pytest.raises(BoundExceeded):
        enumerate_lattices(9, allow_extended=True)


def test_extended_size_eight_runs():
    eight = enumerate_lattices(8, allow_extended=True)
    assert len({canonical_code(L.leq) for L in eight}) == len(eight) > 53


def test_jobs_deterministic(monkeypatch):
    monkeypatch.setattr(cat, "_MEMO", {})
    serial = [L.catalog_code for L in enumerate_lattices(6)]
    monkeypatch.setattr(cat, "_MEMO", {})
    parallel = [L.catalog_code for L in enumerate_lattices(6, jobs=2)]
    assert serial == parallel


def test_cache_roundtrip(tmp_path, monkeypatch):
    monkeypatch.setenv(cat.CACHE_ENV, str(tmp_path))
    monkeypatch.setattr(cat, "_MEMO", {})
    first = [L.catalog_code for L in enumerate_lattices(5)]
    path = tmp_path / "lattices-5.jsonl"
    lines = path.read_text().splitlines()
    assert len(lines) == 5
    rec = json.loads(lines[0])
    assert rec["version"] == cat.CACHE_VERSION and rec["n"] == 5
    monkeypatch.setattr(cat, "_MEMO", {})
    assert [L.catalog_code for L in enumerate_lattices(5)] == first


def test_stale_cache_ignored(tmp_path, monkeypatch):
    monkeypatch.setenv(cat.CACHE_ENV, str(tmp_path))
    (tmp_path / "lattices-4.jsonl").write_text(json.dumps({"version": -1, "n": 4, "code": "00"}) + "\n")
    monkeypatch.setattr(cat, "_MEMO", {})
    assert len(enumerate_lattices(4)) == 2


def test_no_cache_without_env(tmp_path, monkeypatch):
    monkeypatch.delenv(cat.CACHE_ENV, raising=False)
    monkeypatch.chdir(tmp_path)
    monkeypatch.setattr(cat, "_MEMO", {})
    enumerate_lattices(4)
    assert list(tmp_path.iterdir()) == []


@pytest.mark.parametrize("suite", list("abcdef"))
def test_suites_zero_counterexamples(small_lattices, suite):
    rep = run_property_suite(suite, small_lattices)
    assert rep.passed
    assert rep.checks[0].witness["counterexamples"] == 0
    assert rep.checks[0].witness["lattices"] == len(small_lattices) == 25


def test_suite_jobs_agree(small_lattices):
    a = run_property_suite("c", small_lattices, jobs=1).checks[0].witness
    b = run_property_suite("c", small_lattices, jobs=2).checks[0].witness
    assert a == b


def test_suite_unknown_name():
    with pytest.raises(ConlatError):
        run_property_suite("z", 3)


def test_search_single_object():
    d = Diagram(single(), {"x": powerset_semilattice(2)}, {})
    res = search_liftings(d, 4)
    assert isinstance(res, LiftingFound)
    assert is_isomorphic(res.diagram.objects["x"], chain(3))


def test_search_triangle_unconstrained():
    res = search_liftings(build_triangle(), 5)
    assert res
    objs = res.diagram.objects
    assert objs["low"].size == 2 and objs["mid"].size == 3
    assert is_isomorphic(objs["high"], m3())


@pytest.mark.parametrize("bound", [4, 5, 6])
def test_search_triangle_identity_edge_not_found(bound):
    res = search_liftings(build_triangle(), bound, iso_edges=[("low", "high")])
    assert isinstance(res, NotFoundWithinBound)
    assert not res
    assert res.to_json()["found"] is False


def test_search_bound():
    with pytest.raises(BoundExceeded):
        search_liftings(build_triangle(), 8)
