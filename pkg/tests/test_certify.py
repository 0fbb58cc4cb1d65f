import pytest

from amphimap.certify import (
    AMPHICHIRAL,
    CHIRAL,
    antipodal_route,
    certify,
    certify_diagram,
    condition_class,
    medial_position_map,
    orientation_compatible,
    pairing_route,
    symmetry_route,
)
from amphimap.families import cycle, digon, ear, pancake, sum_with_mirror, sum_with_self, torus2, triangle, wheel
from amphimap.link_build import braid_closure, diagram_from_signed_map
from amphimap.map_core import PLUS, SignedMap, medial
from amphimap.morphisms import PRESERVING, REVERSING, automorphisms


@pytest.mark.parametrize("sm", [wheel(3), wheel(5), ear(4), pancake(3, 2)], ids=["W3", "W5", "E4", "P3^2"])
def test_antipodal_certificates(sm):
    r = certify(sm)
    assert r["verdict"] == AMPHICHIRAL and "antipodal" in r["certified_by"] and r["consistent"]


@pytest.mark.parametrize("n", [2, 4])
def test_even_wheels_need_curves(n):
    r = certify(wheel(n))
    assert "antipodal" not in r["certified_by"]
    assert "gamma" in r["certified_by"]
    assert r["jones"]["passes"]


def test_chiral_knots():
    for sm in (triangle(), cycle(5), torus2(5)):
        r = certify(sm)
        assert r["verdict"] == CHIRAL and not r["certified"]


def test_hopf_only_unoriented():
    r = certify(digon())
    assert not r["certified"]
    assert set(r["unoriented_by"]) == {"pairing", "symmetry"}
    assert not r["jones"]["passes"] and r["jones"]["mirror_closed"]
    assert r["consistent"]


def test_condition_classes_for_torus_and_digon():
    b = [w["behavior"] for w in antipodal_route(torus2(3))["witnesses"]]
    assert {"color": REVERSING, "sign": REVERSING} in b
    assert antipodal_route(torus2(3))["three_antipodal"]
    d = [w["behavior"] for w in antipodal_route(digon())["witnesses"]]
    assert d == [{"color": PRESERVING, "sign": PRESERVING}]
    assert condition_class(d[0]) == "S3a"


def test_identity_is_orientation_compatible():
    sm = wheel(3)
    d = diagram_from_signed_map(sm)
    e = automorphisms(medial(sm.map).map)[0]
    assert e.is_identity()
    assert orientation_compatible(d, medial_position_map(e, d))
    assert symmetry_route(sm, d)["certified"]


def test_pairing_route_signature_check():
    r = pairing_route(wheel(3))
    assert r["self_dual"] and r["criterion"] and r["signature_compatible"]
    assert not pairing_route(triangle())["self_dual"]


def test_diagram_inputs():
    assert certify_diagram(braid_closure([1, 1, 1], 2))["verdict"] == CHIRAL
    assert certify_diagram(sum_with_mirror(triangle()))["verdict"] == AMPHICHIRAL
    assert certify_diagram(sum_with_self(triangle()))["verdict"] == CHIRAL


def test_routes_can_be_restricted():
    r = certify(wheel(3), routes=("antipodal",))
    assert r["certified_by"] == ["antipodal"]
    r = certify(SignedMap.constant(wheel(4).map, PLUS), routes=("pairing",), jones_check=False)
    assert "jones" not in r
