"""Generators for the named map families.

Rotation systems follow the usual drawings: cycles run counterclockwise and
spokes are ordered by cycle position.  Edge ``e`` owns darts ``2e`` (tail)
and ``2e + 1`` (head).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .map_core import MINUS, PLUS, CombMap, SignedMap, flip_sign, map_from_rotations


class BadParam(ValueError):
    pass


class NotAKnot(ValueError):
    pass


def _signs(m: CombMap, signs):
    if signs is None or signs in (PLUS, MINUS):
        return SignedMap.constant(m, signs or PLUS)
    signs = tuple(signs)
    if len(signs) != m.ne:
        raise BadParam("expected %d signs, got %d" % (m.ne, len(signs)))
    return SignedMap(m, signs)


def digon_map():
    """Two vertices joined by two parallel edges."""
    return map_from_rotations([[(0, 0), (1, 0)], [(1, 1), (0, 1)]])


def triangle_map():
    return map_from_rotations([[(0, 0), (2, 1)], [(1, 0), (0, 1)], [(2, 0), (1, 1)]])


def digon(signs=PLUS):
    return _signs(digon_map(), signs)


def triangle(signs=PLUS):
    return _signs(triangle_map(), signs)


def cycle_map(n):
    """C_n: an n-cycle (a loop for n = 1); D(C_n) is the (2, n) torus diagram."""
    if n < 1:
        raise BadParam("cycle needs n >= 1")
    return map_from_rotations([[(i, 0), ((i - 1) % n, 1)] for i in range(n)])


def cycle(n, signs=PLUS):
    return _signs(cycle_map(n), signs)


def wheel_map(n):
    """W_n: center 0, rim vertices 1..n; edges 0..n-1 on the rim, n..2n-1 spokes."""
    if n < 1:
        raise BadParam("wheel needs n >= 1")
    rot = [[(n + i, 0) for i in range(n)]]
    for i in range(n):
        rot.append([(i, 0), (n + i, 1), ((i - 1) % n, 1)])
    return map_from_rotations(rot)


def wheel(n, signs=PLUS):
    return _signs(wheel_map(n), signs)


def ear_map(n):
    """E_n: an n-cycle, a triangle (ear) on each rim edge, ear tips joined to a center.

    Edges: rim ``i``, ear sides ``n + i`` (v_i -> a_i) and ``2n + i``
    (a_i -> v_{i+1}), spokes ``3n + i`` (center -> a_i).
    """
    if n < 3:
        raise BadParam("ear needs n >= 3")
    rot = [[(3 * n + i, 0) for i in range(n)]]
    for i in range(n):
        rot.append([(i, 0), (n + i, 0), (2 * n + (i - 1) % n, 1), ((i - 1) % n, 1)])
    for i in range(n):
        rot.append([(n + i, 1), (2 * n + i, 0), (3 * n + i, 1)])
    return map_from_rotations(rot)


def ear(n, signs=PLUS):
    if n < 4 or n % 2:
        raise BadParam("ear family needs an even n >= 4")
    return _signs(ear_map(n), signs)


def pancake_map(n, levels):
    """P_n^l: l concentric n-cycles and a center, radial edges between levels.

    Rim edge of level j (1-based) at position i has index ``(j-1)n + i``; the
    radial edge from level j-1 to level j has index ``ln + (j-1)n + i``.
    """
    if n < 3 or levels < 1:
        raise BadParam("pancake needs n >= 3 and l >= 1")
    rim = lambda j, i: (j - 1) * n + (i % n)  # noqa: E731
    rad = lambda j, i: levels * n + (j - 1) * n + (i % n)  # noqa: E731
    rot = [[(rad(1, i), 0) for i in range(n)]]
    for j in range(1, levels + 1):
        for i in range(n):
            r = []
            if j < levels:
                r.append((rad(j + 1, i), 0))
            r += [(rim(j, i), 0), (rad(j, i), 1), (rim(j, i - 1), 1)]
            rot.append(r)
    return map_from_rotations(rot)


def pancake(n, levels, signs=PLUS):
    if n < 3 or n % 2 == 0 or levels < 1:
        raise BadParam("pancake family needs an odd n >= 3 and l >= 1")
    return _signs(pancake_map(n, levels), signs)


def torus2(n):
    """W_n with positive rim and negative spokes: a diagram of T(2, n)."""
    if n < 2:
        raise BadParam("torus2 needs n >= 2")
    return SignedMap(wheel_map(n), (PLUS,) * n + (MINUS,) * n)


def antipodal_edge_pairing(m: CombMap):
    """Edge permutation induced by an antipodal self-duality witness of ``m``."""
    from .morphisms import is_antipodally_self_dual

    ok, witness = is_antipodally_self_dual(m)
    if not ok:
        raise BadParam("map is not antipodally self-dual")
    from .map_core import medial

    med = medial(m)
    vperm = witness.vertex_perm(med.map)
    edge_of_vertex = med.source["vertex_edge"]
    vertex_of_edge = med.source["edge_vertex"]
    return tuple(edge_of_vertex[vperm[vertex_of_edge[e]]] for e in range(m.ne))


def paired_signs(m: CombMap, half, anti=False):
    """Complete a sign assignment on representatives of antipodal edge pairs.

    ``half`` lists one sign per antipodal pair, pairs ordered by their least
    edge.  Partners get the same sign, or the opposite one with ``anti``.
    """
    pairing = antipodal_edge_pairing(m)
    reps = [e for e in range(m.ne) if e < pairing[e]]
    half = tuple(half)
    if len(half) != len(reps):
        raise BadParam("expected %d signs, got %d" % (len(reps), len(half)))
    signs = [None] * m.ne
    for e, s in zip(reps, half):
        signs[e] = s
        signs[pairing[e]] = flip_sign(s) if anti else s
    return SignedMap(m, tuple(signs))


def _knot_diagram(sm: SignedMap):
    from .link_build import diagram_from_signed_map

    d = diagram_from_signed_map(sm)
    if d.num_components() != 1:
        raise NotAKnot("D(G, S) has %d components" % d.num_components())
    return d


def sum_with_mirror(sm: SignedMap):
    """K # K* for the knot K = D(G, S), as a diagram."""
    from .link_build import connected_sum, mirror

    d = _knot_diagram(sm)
    return connected_sum(d, mirror(d))


def sum_with_self(sm: SignedMap):
    """K # K for the knot K = D(G, S), as a diagram."""
    from .link_build import connected_sum

    d = _knot_diagram(sm)
    return connected_sum(d, d)


def nonreflexive_map():
    """A digon with two leaves hung inside one of its faces.

    Its incidence map has a single nontrivial automorphism, an orientation
    reversing one that exchanges the sides of a 4-cycle by rotating it, so
    that cycle is symmetric but not reflexive.
    """
    return map_from_rotations([
        [(0, 0), (1, 0)],
        [(0, 1), (3, 0), (2, 0), (1, 1)],
        [(2, 1)],
        [(3, 1)],
    ])


# ---------------------------------------------------------------------------
# family descriptions and expected outcomes

FAMILIES = ("cycle", "wheel", "ear", "pancake", "turks_head", "sum_mirror", "sum_self", "torus2")


@dataclass(frozen=True)
class FamilySpec:
    family: str
    n: int
    levels: int = 1
    signature: str = "constant+"
    explicit: tuple = field(default_factory=tuple)

    def validate(self):
        f, n = self.family, self.n
        if f not in FAMILIES:
            raise BadParam("unknown family %r" % f)
        if f in ("wheel", "cycle") and n < 1:
            raise BadParam("wheel needs n >= 1")
        if f == "ear" and (n < 4 or n % 2):
            raise BadParam("ear needs even n >= 4")
        if f == "pancake" and (n < 3 or n % 2 == 0 or self.levels < 1):
            raise BadParam("pancake needs odd n >= 3, l >= 1")
        if f == "turks_head" and n < 1:
            raise BadParam("turks_head needs n >= 1")
        if f == "torus2" and n < 2:
            raise BadParam("torus2 needs n >= 2")
        return self


def build(spec: FamilySpec) -> SignedMap:
    """Signed Tait graph of a family instance (sums are diagrams, see link_build)."""
    spec.validate()
    f = spec.family
    if f in ("wheel", "turks_head"):
        m = wheel_map(spec.n)
    elif f == "cycle":
        m = cycle_map(spec.n)
    elif f == "ear":
        m = ear_map(spec.n)
    elif f == "pancake":
        m = pancake_map(spec.n, spec.levels)
    elif f == "torus2":
        return torus2(spec.n)
    else:
        raise BadParam("%s instances are diagrams, not signed maps" % f)
    sig = spec.signature
    if sig == "constant+":
        return SignedMap.constant(m, PLUS)
    if sig == "constant-":
        return SignedMap.constant(m, MINUS)
    if sig == "explicit":
        return _signs(m, spec.explicit)
    if sig == "antipodal-paired":
        return paired_signs(m, spec.explicit or (PLUS,) * (m.ne // 2))
    if sig == "anti-paired":
        return paired_signs(m, spec.explicit or (PLUS,) * (m.ne // 2), anti=True)
    raise BadParam("unknown signature rule %r" % sig)


def expected_verdicts(spec: FamilySpec) -> dict:
    """What the detectors are expected to conclude for a family instance."""
    spec.validate()
    f, n, sig = spec.family, spec.n, spec.signature
    out = {"amphichiral": None, "antipodally_self_dual": None, "three_antipodal": None, "route": None}
    constant = sig in ("constant+", "constant-")
    if f == "wheel":
        out["antipodally_self_dual"] = n % 2 == 1
        if n % 2 == 1 and (constant or sig == "antipodal-paired"):
            out.update(amphichiral=True, route="central")
        elif n % 2 == 1 and sig == "anti-paired":
            out.update(three_antipodal=True, route="s3")
        elif n % 2 == 0 and constant:
            out.update(amphichiral=True, route="gamma")
    elif f == "turks_head":
        out.update(amphichiral=True, route="central" if n % 2 else "gamma")
    elif f == "ear":
        out["antipodally_self_dual"] = True
        if constant or sig == "antipodal-paired":
            out.update(amphichiral=True, route="central")
    elif f == "pancake":
        out["antipodally_self_dual"] = True
        if constant or sig == "antipodal-paired":
            out.update(amphichiral=True, route="central")
    elif f == "cycle":
        out["amphichiral"] = False if n >= 3 else None
    elif f == "torus2":
        if n % 2 == 1:
            out.update(three_antipodal=True, route="s3")
    elif f == "sum_mirror":
        out.update(amphichiral=True, route="sum")
    elif f == "sum_self":
        out.update(three_antipodal=True, route="sum")
    return out
