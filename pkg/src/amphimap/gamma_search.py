"""Closed curves in the incidence map I(G) and the curve-based detector.

A curve is a cyclic sequence of distinct vertices of I(G).  Consecutive
vertices are joined either by an edge of I(G) (edge step) or by a corridor
through a quadrilateral face between two opposite, equally colored corners
(corridor step).  Corridor faces are the *shared* faces: they straddle the
curve.  Every other vertex, edge and face lies on one of the two sides.

A symmetric witness is an automorphism that fixes the curve setwise and
exchanges its sides.  It is *reflexive* when it reverses the cyclic order of
the curve: on the sphere such a map is the half-turn about an axis through
the curve, so it necessarily keeps the orientation of the sphere.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import atan2, comb, pi
from typing import Optional

from .link_build import diagram_from_signed_map
from .map_core import (
    BLACK,
    MINUS,
    PLUS,
    CombMap,
    DecoratedMap,
    MapError,
    SignedMap,
    decorate_from_signs,
    flip_color,
    flip_sign,
    perm_inverse,
    signed_map_from_incidence,
)
from .morphisms import (
    NEITHER,
    PRESERVING,
    REVERSING,
    automorphisms,
    is_involution,
)

EDGE = "E"
CORRIDOR = "C"


class GammaError(MapError):
    pass


class NotAntipodallySelfDual(GammaError):
    pass


class BudgetExceeded(RuntimeError):
    pass


class FaceNotInterior(GammaError):
    pass


class BadSigns(GammaError):
    pass


# ---------------------------------------------------------------------------
# curves


@dataclass(frozen=True)
class GammaCurve:
    """``steps[i]`` joins ``vertices[i]`` to ``vertices[i + 1]``.

    A step is ``("E", edge)`` or ``("C", face)``.
    """

    vertices: tuple
    steps: tuple
    even: bool = False
    adequate: bool = False

    @property
    def is_cycle(self):
        return all(kind == EDGE for kind, _ in self.steps)

    def __len__(self):
        return len(self.vertices)

    def corridor_faces(self):
        return [x for kind, x in self.steps if kind == CORRIDOR]

    def edge_set(self):
        return {x for kind, x in self.steps if kind == EDGE}

    def to_dict(self):
        return {
            "vertices": list(self.vertices),
            "steps": [[k, x] for k, x in self.steps],
            "is_cycle": self.is_cycle,
            "even": self.even,
            "adequate": self.adequate,
        }


def _adequate(vertices, steps, colors):
    k = len(steps)
    if colors is None:
        return False
    if all(kind == CORRIDOR for kind, _ in steps):
        return len({colors[v] for v in vertices}) == 1
    for i in range(k):
        if steps[i][0] == CORRIDOR and colors[vertices[i]] != colors[vertices[(i + 1) % k]]:
            return False
    # runs of consecutive corridor steps are monochromatic iff every single
    # corridor step joins two vertices of the same color
    return True


def make_curve(vertices, steps, colors=None):
    vertices = tuple(vertices)
    steps = tuple((k, x) for k, x in steps)
    return GammaCurve(
        vertices,
        steps,
        even=len(vertices) % 2 == 0,
        adequate=_adequate(vertices, steps, colors),
    )


def _neighbors(inc: DecoratedMap):
    """Per vertex: sorted list of (step, other vertex)."""
    m = inc.map
    nbrs = [[] for _ in range(m.nv)]
    for e, (a, b) in enumerate(m.edges):
        u, w = m.vertex_of[a], m.vertex_of[b]
        if u != w:
            nbrs[u].append(((EDGE, e), w))
            nbrs[w].append(((EDGE, e), u))
    for f, orbit in enumerate(m.faces):
        if len(orbit) != 4:
            continue
        vs = [m.vertex_of[z] for z in orbit]
        if len(set(vs)) != 4:
            continue
        for i in (0, 1):
            u, w = vs[i], vs[i + 2]
            nbrs[u].append(((CORRIDOR, f), w))
            nbrs[w].append(((CORRIDOR, f), u))
    for lst in nbrs:
        lst.sort()
    return nbrs


def _encode(vertices, steps):
    return tuple(zip(vertices, steps))


def _canonical(vertices, steps):
    """Least of the forward and backward readings, both started at the least vertex."""
    k = len(vertices)
    i = vertices.index(min(vertices))
    fv = vertices[i:] + vertices[:i]
    fs = steps[i:] + steps[:i]
    # backward: v_i, v_{i-1}, ... with step s_{i-1} joining v_i to v_{i-1}
    bv = tuple(vertices[(i - j) % k] for j in range(k))
    bs = tuple(steps[(i - j - 1) % k] for j in range(k))
    return min((_encode(fv, fs), fv, fs), (_encode(bv, bs), bv, bs))


def enumerate_gamma(inc: DecoratedMap, max_len=None):
    """Every closed non-self-intersecting curve with at most ``max_len`` vertices.

    Curves are deduplicated up to rotation and reversal and come out in a
    deterministic order (depth first from the least vertex, steps sorted).
    """
    m = inc.map
    if max_len is None:
        max_len = m.nv
    nbrs = _neighbors(inc)
    colors = inc.vertex_colors
    seen = set()
    for start in range(m.nv):
        path = [start]
        steps = []
        on_path = {start}
        used_faces = set()
        used_edges = set()

        def extend():
            v = path[-1]
            for step, w in nbrs[v]:
                if w < start:
                    continue
                kind, x = step
                if kind == CORRIDOR and x in used_faces:
                    continue
                if kind == EDGE and x in used_edges:
                    continue
                if w == start:
                    if len(path) >= 2 and not (len(path) == 2 and steps and steps[0] == step):
                        yield tuple(path), tuple(steps) + (step,)
                    continue
                if w in on_path or len(path) >= max_len:
                    continue
                path.append(w)
                steps.append(step)
                on_path.add(w)
                (used_faces if kind == CORRIDOR else used_edges).add(x)
                yield from extend()
                (used_faces if kind == CORRIDOR else used_edges).discard(x)
                on_path.discard(w)
                steps.pop()
                path.pop()

        for vs, ss in extend():
            key, cv, cs = _canonical(vs, ss)
            if key in seen:
                continue
            seen.add(key)
            if _sides(m, cv, cs) is None:
                continue
            yield make_curve(cv, cs, colors)


# ---------------------------------------------------------------------------
# sides of a curve


def _position(m: CombMap, v, step, other):
    """Position of a step at its end ``v``: 2i for the i-th dart, 2i+1 for the
    corner after it (rotation order ccw)."""
    ring = m.vertices[v]
    kind, x = step
    if kind == EDGE:
        a, b = m.edges[x]
        d = a if m.vertex_of[a] == v else b
        return 2 * ring.index(d)
    hits = [i for i in range(len(ring)) if m.face_of[ring[(i + 1) % len(ring)]] == x]
    if len(hits) != 1:
        return None
    return 2 * hits[0] + 1


def _sides(m: CombMap, vertices, steps):
    """Label every vertex, edge and face off the curve as side 0 or 1.

    Returns ``(vside, eside, fside)`` dicts, or None when the curve is not
    simple (the two sides touch).
    """
    k = len(vertices)
    on_v = set(vertices)
    on_e = {x for kind, x in steps if kind == EDGE}
    on_f = {x for kind, x in steps if kind == CORRIDOR}
    parent = {}

    def find(a):
        parent.setdefault(a, a)
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    seeds = []
    for i, v in enumerate(vertices):
        p_out = _position(m, v, steps[i], vertices[(i + 1) % k])
        p_in = _position(m, v, steps[i - 1], vertices[i - 1])
        if p_out is None or p_in is None or p_out == p_in:
            return None
        ring = m.vertices[v]
        size = 2 * len(ring)
        p = (p_out + 1) % size
        side = 0
        while True:
            if p == p_in:
                side = 1
            elif p == p_out:
                break
            else:
                if p % 2 == 0:
                    e = m.edge_of[ring[p // 2]]
                    if e not in on_e:
                        seeds.append((("e", e), side))
                else:
                    f = m.face_of[ring[(p // 2 + 1) % len(ring)]]
                    if f not in on_f:
                        seeds.append((("f", f), side))
            p = (p + 1) % size
    for e, (a, b) in enumerate(m.edges):
        if e in on_e:
            continue
        node = ("e", e)
        find(node)
        for d in (a, b):
            u = m.vertex_of[d]
            if u not in on_v:
                union(node, ("v", u))
            f = m.face_of[d]
            if f not in on_f:
                union(node, ("f", f))
    for v in range(m.nv):
        if v not in on_v:
            find(("v", v))
    for f in range(m.nf):
        if f not in on_f:
            find(("f", f))
    label = {}
    for node, side in seeds:
        r = find(node)
        if label.setdefault(r, side) != side:
            return None
    vside, eside, fside = {}, {}, {}
    for node in list(parent):
        r = find(node)
        if r not in label:
            return None
        kind, x = node
        {"v": vside, "e": eside, "f": fside}[kind][x] = label[r]
    return vside, eside, fside


def curve_sides(m: CombMap, curve: GammaCurve):
    """``(vside, eside, fside)``: side 0 (interior) or 1 (exterior) of every
    cell off the curve, or None when the curve is not simple."""
    return _sides(m, curve.vertices, curve.steps)


def interior_faces(m: CombMap, curve: GammaCurve):
    sides = curve_sides(m, curve)
    return [] if sides is None else sorted(f for f, s in sides[2].items() if s == 0)


# ---------------------------------------------------------------------------
# witnesses


@dataclass
class GammaWitness:
    curve: GammaCurve
    sigma: object
    side_map: dict
    behavior: dict
    full_behavior: dict
    reflexive: bool
    order_action: str  # "reversal" or "rotation"
    notes: list = field(default_factory=list)

    def to_dict(self, inc_map=None):
        out = {
            "curve": self.curve.to_dict(),
            "sigma_orientation": self.sigma.orientation,
            "side_map": {str(k): v for k, v in sorted(self.side_map.items())},
            "behavior": dict(self.behavior),
            "full_behavior": dict(self.full_behavior),
            "reflexive": self.reflexive,
            "order_action": self.order_action,
        }
        if inc_map is not None:
            out["sigma_vertices"] = list(self.sigma.vertex_perm(inc_map))
        return out


def _verdict_pairs(pairs):
    same = [a == b for a, b in pairs]
    if not same or all(same):
        return PRESERVING
    if not any(same):
        return REVERSING
    return NEITHER


def _cyclic_action(vertices, steps, vimg, simg):
    """'rotation' or 'reversal' if the images of the curve match it, else None."""
    k = len(vertices)
    for j in range(k):
        if all(vimg[i] == vertices[(i + j) % k] for i in range(k)) and all(
            simg[i] == steps[(i + j) % k] for i in range(k)
        ):
            return "rotation"
    for j in range(k):
        if all(vimg[i] == vertices[(j - i) % k] for i in range(k)) and all(
            simg[i] == steps[(j - i - 1) % k] for i in range(k)
        ):
            return "reversal"
    return None


def _face_image(g, m, f):
    d = m.faces[f][0]
    return m.face_of[g.dart_map[d]] if g.orientation == PRESERVING else m.face_of[g.dart_map[m.alpha[d]]]


def witnesses(inc: DecoratedMap, curve: GammaCurve, auts=None):
    """All symmetric witnesses of ``curve`` (automorphisms swapping its sides)."""
    m = inc.map
    sides = _sides(m, curve.vertices, curve.steps)
    if sides is None:
        return []
    vside, eside, fside = sides
    vint = sorted(v for v, s in vside.items() if s == 0)
    vext = sorted(v for v, s in vside.items() if s == 1)
    if len(vint) != len(vext):
        return []
    auts = automorphisms(m) if auts is None else auts
    out = []
    for g in auts:
        vp = g.vertex_perm(m)
        ep = g.edge_perm(m)
        vimg = [vp[v] for v in curve.vertices]
        simg = [(k, ep[x]) if k == EDGE else (k, _face_image(g, m, x)) for k, x in curve.steps]
        action = _cyclic_action(curve.vertices, curve.steps, vimg, simg)
        if action is None:
            continue
        if any(vside[vp[v]] == s for v, s in vside.items()):
            continue
        if any(eside[ep[e]] == s for e, s in eside.items()):
            continue
        if any(fside[_face_image(g, m, f)] == s for f, s in fside.items()):
            continue
        colors = inc.vertex_colors
        signs = inc.face_signs
        behavior = {
            "color": _verdict_pairs([(colors[v], colors[vp[v]]) for v in vint]) if colors else None,
            "sign": _verdict_pairs(
                [(signs[f], signs[_face_image(g, m, f)]) for f, s in fside.items() if s == 0]
            ) if signs else None,
        }
        full = {
            "color": _verdict_pairs([(colors[v], colors[vp[v]]) for v in range(m.nv)]) if colors else None,
            "sign": _verdict_pairs(
                [(signs[f], signs[_face_image(g, m, f)]) for f in range(m.nf)]
            ) if signs else None,
        }
        out.append(GammaWitness(
            curve=curve,
            sigma=g,
            side_map={v: vp[v] for v in vint},
            behavior=behavior,
            full_behavior=full,
            reflexive=action == "reversal",
            order_action=action,
        ))
    return out


def symmetric_witness(inc: DecoratedMap, curve: GammaCurve, auts=None) -> Optional[GammaWitness]:
    """First symmetric witness, preferring reflexive ones."""
    ws = witnesses(inc, curve, auts)
    for w in ws:
        if w.reflexive:
            return w
    return ws[0] if ws else None


def is_reflexive(witness: GammaWitness) -> bool:
    """The witness reverses the cyclic order of the curve while swapping its sides.

    Such a symmetry is the half-turn about an axis meeting the curve twice
    and keeps the orientation of the sphere.
    """
    return witness.order_action == "reversal"


def _qualifies(b):
    return (b["color"], b["sign"]) in ((REVERSING, PRESERVING), (PRESERVING, REVERSING))


def witness_certifies(w: GammaWitness) -> bool:
    """Reflexive, with a qualifying behavior both on the paired cells and on all cells."""
    return w.reflexive and _qualifies(w.behavior) and _qualifies(w.full_behavior)


def _candidate_sigmas(inc):
    """Automorphisms that could realize a certifying reflexive witness."""
    from .morphisms import classify_behavior

    out = []
    for g in automorphisms(inc.map):
        if g.orientation != PRESERVING or g.is_identity() or not is_involution(g):
            continue
        b = classify_behavior(g, inc)
        if _qualifies(b):
            out.append(g)
    return out


AMPHICHIRAL = "AMPHICHIRAL"
INCONCLUSIVE = "INCONCLUSIVE"


def amphichiral_by_gamma(sm: SignedMap, max_len=None):
    """Search I(G) for a reflexive curve that is sign-preserving and color-reversing,
    or sign-reversing and color-preserving.  Returns ``(verdict, witness)``."""
    _, inc = decorate_from_signs(sm)
    return amphichiral_by_gamma_inc(inc, max_len)


def amphichiral_by_gamma_inc(inc: DecoratedMap, max_len=None):
    sigmas = _candidate_sigmas(inc)
    if not sigmas:
        return INCONCLUSIVE, None
    for curve in enumerate_gamma(inc, max_len):
        for w in witnesses(inc, curve, sigmas):
            if witness_certifies(w):
                return AMPHICHIRAL, w
    return INCONCLUSIVE, None


# ---------------------------------------------------------------------------
# amphichiral number


def _switch(sm: SignedMap, edges):
    s = list(sm.edge_signs)
    for e in edges:
        s[e] = flip_sign(s[e])
    return SignedMap(sm.map, tuple(s))


def amph_upper_bound(sm: SignedMap):
    """Switch crossings so that an antipodal involution of the medial map keeps signs.

    Returns ``(bound, switches, switched_signed_map)``; the bound never
    exceeds half the number of crossings.
    """
    from .certify import antipodal_route
    from .map_core import medial
    from .morphisms import antipodal_candidates, color_behavior, is_antipodally_self_dual

    ok, _ = is_antipodally_self_dual(sm.map)
    if not ok:
        raise NotAntipodallySelfDual("the map is not antipodally self-dual")
    med = medial(sm.map)
    edge_of_vertex = med.source["vertex_edge"]
    vertex_of_edge = med.source["edge_vertex"]
    best = None
    for f in antipodal_candidates(med.map):
        if color_behavior(f, med) != REVERSING:
            continue
        vp = f.vertex_perm(med.map)
        switches = []
        for e in range(sm.map.ne):
            partner = edge_of_vertex[vp[vertex_of_edge[e]]]
            if e < partner and sm.edge_signs[e] != sm.edge_signs[partner]:
                switches.append(partner)
        if best is None or len(switches) < len(best):
            best = switches
    switched = _switch(sm, best)
    route = antipodal_route(switched)
    if not route["amphichiral"]:
        raise GammaError("switched diagram failed to re-certify")
    return len(best), tuple(sorted(best)), switched


def amph_interval(sm: SignedMap, budget=None, max_subsets=20000, max_gamma_len=None, limit=None):
    """Bounds ``lower <= Amph <= upper`` from crossing switches of D(G, S).

    ``lower`` is the least k for which some k switches pass the Jones test;
    ``upper`` the least k for which some k switches give a diagram certified
    by a detector (orientation compatible).  Either is None when not reached
    within ``budget`` switches.
    """
    from .certify import certify
    from .invariants import amphichiral_obstruction

    n = sm.map.ne
    budget = n if budget is None else min(budget, n)
    total = sum(comb(n, k) for k in range(budget + 1))
    if total > max_subsets:
        raise BudgetExceeded("%d switch subsets exceed the limit %d" % (total, max_subsets))
    lower = upper = None
    provenance = None
    for k in range(budget + 1):
        for subset in combinations(range(n), k):
            switched = _switch(sm, subset)
            if lower is None:
                d = diagram_from_signed_map(switched)
                if amphichiral_obstruction(d, limit)["passes"]:
                    lower = k
            if upper is None:
                report = certify(switched, max_gamma_len=max_gamma_len, limit=limit, jones_check=False)
                if report["certified"]:
                    upper = k
                    provenance = {"switches": list(subset), "routes": report["certified_by"]}
            if lower is not None and upper is not None:
                break
        if lower is not None and upper is not None:
            break
    return {"lower": lower, "upper": upper, "budget": budget, "provenance": provenance}


# ---------------------------------------------------------------------------
# face subdivision

# Patches drawn in the unit square with corners 0=(0,0), 1=(1,0), 2=(1,1),
# 3=(0,1) (counterclockwise).  Patch faces are listed counterclockwise.
_PATCHES = {
    "five": {
        "points": {4: (0.3, 0.3), 5: (0.7, 0.3), 6: (0.7, 0.7), 7: (0.3, 0.7)},
        "edges": [(0, 4), (1, 5), (2, 6), (3, 7), (4, 5), (5, 6), (6, 7), (7, 4)],
        "faces": [(4, 5, 6, 7), (0, 1, 5, 4), (1, 2, 6, 5), (2, 3, 7, 6), (3, 0, 4, 7)],
    },
    "seven": {
        # hexagon p1..p6 = 4..9 with the chord p1-p4; corner 0 sees p1 and p3
        "points": {
            4: (0.218, 0.397), 5: (0.288, 0.288), 6: (0.397, 0.218),
            7: (0.712, 0.288), 8: (0.712, 0.712), 9: (0.288, 0.712),
        },
        "edges": [
            (0, 4), (0, 6), (1, 7), (2, 8), (3, 9),
            (4, 5), (5, 6), (6, 7), (7, 8), (8, 9), (9, 4),
            (4, 7),
        ],
        "faces": [
            (0, 6, 5, 4), (4, 5, 6, 7), (4, 7, 8, 9),
            (0, 1, 7, 6), (1, 2, 8, 7), (2, 3, 9, 8), (3, 0, 4, 9),
        ],
    },
}

SCHEMES = tuple(_PATCHES)

# the face walk is clockwise, so it meets the patch corners in this order
_CORNER_LABEL = (0, 3, 2, 1)


def scheme_size(scheme):
    return len(_PATCHES[scheme]["faces"])


def _insert_patch(sigma, alpha, face_darts, patch):
    """Draw ``patch`` inside the face with boundary darts ``face_darts``.

    Extends ``sigma`` and ``alpha`` in place and returns the new darts keyed
    by (label, neighbor label).
    """
    pts = {0: (0.0, 0.0), 1: (1.0, 0.0), 2: (1.0, 1.0), 3: (0.0, 1.0)}
    pts.update(patch["points"])
    inv = perm_inverse(sigma)
    darts = {}
    for a, b in patch["edges"]:
        d1, d2 = len(sigma), len(sigma) + 1
        sigma.extend([None, None])
        alpha.extend([d2, d1])
        darts[(a, b)] = d1
        darts[(b, a)] = d2

    def angle(a, b, base=0.0):
        (x1, y1), (x2, y2) = pts[a], pts[b]
        return (atan2(y2 - y1, x2 - x1) - base) % (2 * pi)

    for lab in pts:
        out = [(b, d) for (a, b), d in darts.items() if a == lab]
        if lab >= 4:
            ring = [d for _, d in sorted(out, key=lambda t: angle(lab, t[0]))]
            for i, d in enumerate(ring):
                sigma[d] = ring[(i + 1) % len(ring)]
            continue
        i = _CORNER_LABEL.index(lab)
        z = face_darts[i]
        prev = inv[z]
        # sweep counterclockwise from the edge toward the previous corner
        base = angle(lab, _CORNER_LABEL[(i - 1) % 4])
        ring = [d for _, d in sorted(out, key=lambda t: angle(lab, t[0], base))]
        chain = [prev] + ring + [z]
        for x, y in zip(chain, chain[1:]):
            sigma[x] = y
    return darts


def _patch_faces(q, darts, patch):
    """Face index of ``q`` for every patch face, in patch order."""
    out = []
    for pf in patch["faces"]:
        for i in range(4):
            a, b = pf[i], pf[(i + 1) % 4]
            if (b, a) in darts:
                # the walk keeps its face on the right of each dart
                out.append(q.face_of[darts[(b, a)]])
                break
    if len(set(out)) != len(patch["faces"]):
        raise GammaError("patch faces were not all found")
    return out


@dataclass
class Subdivision:
    inc: DecoratedMap
    curve: GammaCurve
    witness: Optional[GammaWitness]
    signed_map: SignedMap
    new_faces: tuple


def subdivide_face(inc: DecoratedMap, witness: GammaWitness, face, scheme="five", new_signs=None):
    """Subdivide ``face`` (inside the witness curve) and its image under sigma.

    Both faces are replaced by the same patch of ``scheme`` squares.  By
    default every new square takes the sign of the face it replaces.  The
    partner receives the same signs when the witness keeps signs and the
    opposite ones when it reverses them.  Old darts, vertices and edges keep
    their indices.
    """
    if scheme not in _PATCHES:
        raise BadSigns("unknown scheme %r" % (scheme,))
    patch = _PATCHES[scheme]
    size = len(patch["faces"])
    m = inc.map
    sides = _sides(m, witness.curve.vertices, witness.curve.steps)
    if sides is None or sides[2].get(face) != 0:
        raise FaceNotInterior("face %r is not inside the curve" % (face,))
    if new_signs is None:
        new_signs = (inc.face_signs[face],) * size
    new_signs = tuple(new_signs)
    if len(new_signs) != size or any(s not in (PLUS, MINUS) for s in new_signs):
        raise BadSigns("expected %d signs from {+,-}" % size)
    g = witness.sigma
    if g.orientation != PRESERVING:
        raise GammaError("subdivision needs an orientation preserving witness")
    partner = _face_image(g, m, face)
    flip = witness.full_behavior["sign"] == REVERSING
    z0 = m.faces[face][0]
    z1 = g.dart_map[z0]

    def face_darts(z):
        out = [z]
        while len(out) < 4:
            out.append(m.phi[out[-1]])
        return out

    sigma, alpha = list(m.sigma), list(m.alpha)
    d0 = _insert_patch(sigma, alpha, face_darts(z0), patch)
    d1 = _insert_patch(sigma, alpha, face_darts(z1), patch)
    q = CombMap(sigma, alpha)
    if any(len(f) != 4 for f in q.faces):
        raise GammaError("subdivision produced a face that is not a square")

    colors = list(inc.vertex_colors) + [None] * (q.nv - m.nv)
    pending = True
    while pending:
        pending = False
        for a, b in q.edges:
            u, w = q.vertex_of[a], q.vertex_of[b]
            if (colors[u] is None) != (colors[w] is None):
                known, unknown = (u, w) if colors[w] is None else (w, u)
                colors[unknown] = flip_color(colors[known])
                pending = True

    signs = [None] * q.nf
    for f, orbit in enumerate(m.faces):
        if f not in (face, partner):
            signs[q.face_of[orbit[0]]] = inc.face_signs[f]
    f0 = _patch_faces(q, d0, patch)
    f1 = _patch_faces(q, d1, patch)
    for k in range(size):
        signs[f0[k]] = new_signs[k]
        signs[f1[k]] = flip_sign(new_signs[k]) if flip else new_signs[k]
    new_inc = DecoratedMap(q, vertex_colors=tuple(colors), face_signs=tuple(signs))

    steps = [
        (k, q.edge_of[m.edges[x][0]] if k == EDGE else q.face_of[m.faces[x][0]])
        for k, x in witness.curve.steps
    ]
    curve = make_curve(witness.curve.vertices, steps, new_inc.vertex_colors)
    old_vp = g.vertex_perm(m)
    extended = None
    for w in witnesses(new_inc, curve):
        vp = w.sigma.vertex_perm(q)
        if all(vp[v] == old_vp[v] for v in range(m.nv)) and witness_certifies(w):
            extended = w
            break
    return Subdivision(new_inc, curve, extended, signed_map_from_incidence(new_inc), tuple(f0 + f1))
