import pytest

from amphimap.families import nonreflexive_map, triangle, wheel
from amphimap.gamma_search import (
    AMPHICHIRAL,
    CORRIDOR,
    EDGE,
    INCONCLUSIVE,
    BudgetExceeded,
    FaceNotInterior,
    NotAntipodallySelfDual,
    amph_interval,
    amph_upper_bound,
    amphichiral_by_gamma,
    amphichiral_by_gamma_inc,
    curve_sides,
    enumerate_gamma,
    interior_faces,
    is_reflexive,
    make_curve,
    scheme_size,
    subdivide_face,
    symmetric_witness,
    witness_certifies,
    witnesses,
)
from amphimap.invariants import amphichiral_obstruction
from amphimap.link_build import diagram_from_signed_map
from amphimap.map_core import MINUS, PLUS, SignedMap, decorate_from_signs
from amphimap.morphisms import PRESERVING, REVERSING


def _inc(sm):
    return decorate_from_signs(sm)[1]


def _certifying_cycle(inc):
    for curve in enumerate_gamma(inc):
        if curve.is_cycle:
            for w in witnesses(inc, curve):
                if witness_certifies(w):
                    return w
    return None


def test_curve_flags():
    c = make_curve((0, 1, 2, 3), ((EDGE, 0), (CORRIDOR, 1), (EDGE, 2), (EDGE, 3)), colors=(0, 1, 1, 0))
    assert c.even and c.adequate and not c.is_cycle
    assert c.corridor_faces() == [1] and c.edge_set() == {0, 2, 3}
    bad = make_curve((0, 1, 2), ((CORRIDOR, 0), (EDGE, 1), (EDGE, 2)), colors=(0, 1, 0))
    assert not bad.even and not bad.adequate


def test_enumeration_has_no_repeats():
    inc = _inc(wheel(3))
    keys = set()
    for c in enumerate_gamma(inc, max_len=6):
        k = frozenset((step, frozenset((c.vertices[i], c.vertices[(i + 1) % len(c)]))) for i, step in enumerate(c.steps))
        assert k not in keys
        keys.add(k)
        assert len(set(c.vertices)) == len(c)
    assert keys


def test_every_curve_splits_the_sphere():
    inc = _inc(wheel(2))
    m = inc.map
    for c in enumerate_gamma(inc):
        vside, eside, fside = curve_sides(m, c)
        labels = set(vside.values()) | set(eside.values()) | set(fside.values())
        assert labels in ({0, 1}, {0}, {1})
        if len(labels) == 1:
            # a curve that cuts a single square in half leaves one side empty
            (f,) = c.corridor_faces()
            assert c.edge_set() <= {m.edge_of[d] for d in m.faces[f]}
        assert not set(c.vertices) & set(vside)


def test_wheel4_has_certifying_cycle():
    w = _certifying_cycle(_inc(wheel(4)))
    assert w is not None
    assert w.behavior == {"color": REVERSING, "sign": PRESERVING}
    assert is_reflexive(w) and w.sigma.orientation == PRESERVING


def test_gamma_detector():
    assert amphichiral_by_gamma(wheel(2))[0] == AMPHICHIRAL
    assert amphichiral_by_gamma(wheel(4))[0] == AMPHICHIRAL
    assert amphichiral_by_gamma(triangle())[0] == INCONCLUSIVE


def test_symmetric_but_not_reflexive():
    inc = _inc(SignedMap.constant(nonreflexive_map(), PLUS))
    found = []
    for c in enumerate_gamma(inc):
        w = symmetric_witness(inc, c)
        if w is not None:
            found.append(w)
    assert found
    assert all(not w.reflexive and w.order_action == "rotation" for w in found)
    assert amphichiral_by_gamma_inc(inc)[0] == INCONCLUSIVE


@pytest.mark.parametrize("scheme", ["five", "seven"])
def test_subdivision_once(scheme):
    inc = _inc(wheel(4))
    _, w = amphichiral_by_gamma_inc(inc)
    face = interior_faces(inc.map, w.curve)[0]
    s = subdivide_face(inc, w, face, scheme)
    assert s.inc.map.nf == inc.map.nf + 2 * (scheme_size(scheme) - 1)
    assert all(len(f) == 4 for f in s.inc.map.faces)
    assert witness_certifies(s.witness)
    assert amphichiral_obstruction(diagram_from_signed_map(s.signed_map))["passes"]


def test_subdivision_rejects_outside_faces():
    inc = _inc(wheel(4))
    _, w = amphichiral_by_gamma_inc(inc)
    _, _, fside = curve_sides(inc.map, w.curve)
    outside = next(f for f, s in fside.items() if s == 1)
    with pytest.raises(FaceNotInterior):
        subdivide_face(inc, w, outside)


def test_amph_upper_bound():
    sm = wheel(3, (PLUS, MINUS, PLUS, PLUS, PLUS, PLUS))
    bound, switches, switched = amph_upper_bound(sm)
    assert bound == len(switches) <= sm.map.ne // 2
    assert amph_upper_bound(wheel(3))[0] == 0
    with pytest.raises(NotAntipodallySelfDual):
        amph_upper_bound(wheel(2))


def test_amph_interval_values():
    assert amph_interval(wheel(2))["upper"] == 0
    tre = amph_interval(triangle())
    assert tre["lower"] == 1
    assert amph_interval(SignedMap.constant(wheel(2).map, MINUS))["lower"] == 0


def test_amph_budget():
    with pytest.raises(BudgetExceeded):
        amph_interval(wheel(4), max_subsets=10)
