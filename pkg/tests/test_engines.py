import itertools

import pytest

from conlat.constructions import (
    CASE_TABLE,
    ContradictionCertificate,
    Inapplicable,
    build_lifting,
    contradiction_engine_dac,
    contradiction_engine_dc,
    lifting_iso,
    synthetic_dac_cube,
    synthetic_dc_cube,
)
from conlat.diagram import DiagramIso
from conlat.errors import InvalidIso


def test_lifting_cube_is_inapplicable():
    ld = build_lifting()
    res = contradiction_engine_dc(ld.diagram, lifting_iso(ld))
    assert isinstance(res, Inapplicable)
    assert not res
    assert "split" in res.reason


def test_synthetic_dc_certificate():
    cube, iso = synthetic_dc_cube()
    cert = contradiction_engine_dc(cube, iso)
    assert isinstance(cert, ContradictionCertificate)
    assert cert.inequality == "η1 ≤ ξ1∨ζ1"
    assert cert.violated
    assert cert.verify()
    assert cert.to_json()["forced_holds_in_U"] is False


@pytest.mark.parametrize("orientation", list(itertools.product(("alpha", "beta"), repeat=3)))
def test_synthetic_dac_certificates(orientation):
    cube, iso = synthetic_dac_cube(orientation)
    cert = contradiction_engine_dac(cube, iso)
    assert cert.orientation == orientation
    assert cert.inequality == CASE_TABLE[orientation]
    assert cert.violated and cert.verify()


def test_orientation_beta_alpha_beta():
    cube, iso = synthetic_dac_cube(("beta", "alpha", "beta"))
    cert = contradiction_engine_dac(cube, iso)
    assert cert.inequality == "η2 ≤ ξ0∨ζ3"


def test_tampered_certificate_fails_verify():
    cube, iso = synthetic_dc_cube()
    cert = contradiction_engine_dc(cube, iso)
    cert.forced = {**cert.forced, "values": list(reversed(cert.forced["values"]))}
    assert not cert.verify()


def test_perturbed_iso_rejected():
    cube, iso = synthetic_dc_cube()
    maps = {o: list(m) for o, m in iso.maps.items()}
    maps["c0"][1], maps["c0"][2] = maps["c0"][2], maps["c0"][1]
    with pytest.raises(InvalidIso):
        contradiction_engine_dc(cube, DiagramIso(maps))


def test_missing_iso_rejected():
    cube, _ = synthetic_dc_cube()
    with pytest.raises(InvalidIso):
        contradiction_engine_dc(cube, None)
