from hypothesis import given, settings

import morph_oracle

from amphimap.certify import condition_class
from amphimap.families import digon, digon_map, triangle_map, wheel, wheel_map, ear_map, pancake_map
from amphimap.map_core import (
    decorate_from_signs,
    map_from_rotations,
    medial,
    dual,
)
from amphimap.morphisms import (
    NEITHER,
    PRESERVING,
    REVERSING,
    antipodal_candidates,
    automorphisms,
    classify_behavior,
    dualities,
    is_antipodally_self_dual,
    orientation_type,
    pairing,
)

from conftest import signed_maps, small_maps


def test_digon_automorphism_count():
    assert len(automorphisms(digon_map())) == 8


def test_triangle_automorphism_count():
    assert len(automorphisms(triangle_map())) == 12


def test_pendant_triangle_has_one_reflection():
    # a triangle with a pendant edge at one corner
    m = map_from_rotations([[(0, 0), (2, 1), (3, 0)], [(1, 0), (0, 1)], [(2, 0), (1, 1)], [(3, 1)]])
    auts = automorphisms(m)
    assert auts[0].is_identity()
    assert [a.orientation for a in auts] == [PRESERVING, REVERSING]


def test_automorphisms_form_a_group():
    auts = automorphisms(wheel_map(3))
    keys = {(a.dart_map, a.orientation) for a in auts}
    for a in auts:
        assert (a.inverse().dart_map, a.orientation) in keys
        for b in auts:
            c = a.compose(b)
            assert (c.dart_map, c.orientation) in keys


def test_orientation_types():
    auts = automorphisms(digon_map())
    assert orientation_type(auts[0], digon_map()) == PRESERVING
    rev = [a for a in automorphisms(wheel_map(3)) if a.orientation == REVERSING]
    assert rev[0].compose(rev[1]).orientation == PRESERVING


def test_digon_face_swapping_reflection():
    m = digon_map()
    swaps = [a for a in automorphisms(m) if a.vertex_perm(m) == (0, 1) and a.face_perm(m) == (1, 0)]
    assert any(a.orientation == REVERSING for a in swaps)


def test_dualities():
    assert dualities(wheel_map(3))
    assert dualities(digon_map())
    assert dualities(triangle_map()) == []
    assert len(dualities(wheel_map(3))) == len(automorphisms(wheel_map(3)))


def test_antipodal_candidates():
    assert antipodal_candidates(medial(wheel_map(3)).map)
    assert antipodal_candidates(triangle_map()) == []


def test_classify_behavior_examples():
    med, _ = decorate_from_signs(digon())
    f = antipodal_candidates(med.map)[0]
    assert classify_behavior(f, med) == {"color": PRESERVING, "sign": PRESERVING}
    med, _ = decorate_from_signs(wheel(3))
    ok, f = is_antipodally_self_dual(wheel_map(3))
    assert classify_behavior(f, med) == {"color": REVERSING, "sign": PRESERVING}
    ident = automorphisms(med.map)[0]
    assert classify_behavior(ident, med) == {"color": PRESERVING, "sign": PRESERVING}


def test_condition_classes():
    assert condition_class({"color": PRESERVING, "sign": PRESERVING}) == "S3a"
    assert condition_class({"color": REVERSING, "sign": PRESERVING}) == "R3b"


def test_antipodally_self_dual_examples():
    assert is_antipodally_self_dual(wheel_map(3))[0]
    assert is_antipodally_self_dual(ear_map(4))[0]
    assert is_antipodally_self_dual(pancake_map(3, 2))[0]
    assert not is_antipodally_self_dual(wheel_map(2))[0]


def test_pairing_reports():
    for m in (wheel_map(3), digon_map()):
        r = pairing(m)
        assert r.cor_order == 2 * r.aut_order
        assert r.amphichiral_by_thm75


def test_pairing_exceptional_case_is_false():
    # the criterion is the disjunction of the two orientation flags
    r = pairing(wheel_map(3))
    assert r.amphichiral_by_thm75 == (r.has_or_preserving_duality or r.has_or_reversing_automorphism)


@settings(max_examples=40)
@given(small_maps())
def test_automorphisms_match_graph_matching(m):
    mine = {(a.dart_map, a.orientation) for a in automorphisms(m)}
    assert mine == morph_oracle.morphisms(m)


@settings(max_examples=40)
@given(signed_maps())
def test_color_verdict_never_mixed_on_antipodal_candidates(sm):
    med, _ = decorate_from_signs(sm)
    for f in antipodal_candidates(med.map):
        assert classify_behavior(f, med)["color"] != NEITHER


@settings(max_examples=30)
@given(small_maps(max_edges=6))
def test_dualities_match_graph_matching(m):
    mine = {(t.dart_map, t.orientation) for t in dualities(m)}
    assert mine == morph_oracle.morphisms(m, dual(m))
