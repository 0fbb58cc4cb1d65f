"""Link diagrams built from edge-signed maps.

A crossing is a 4-tuple of arc labels listed counterclockwise; slots 0 and 2
carry the under strand, slots 1 and 3 the over strand.  Each arc label occurs
exactly twice in the diagram.  Components without crossings are counted in
``free_loops``.

Crossing convention: the medial vertex of an edge ``e`` of the Tait graph
has its two black regions (vertices of the graph) on either side of ``e``.
Looking from a black region, the strand on the left passes over when ``e``
is positive and under when it is negative.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .map_core import MINUS, PLUS, SignedMap, medial, perm_inverse


class DiagramError(ValueError):
    pass


class InvalidArc(DiagramError):
    pass


class BadIndex(DiagramError):
    pass


def _rot(t, k):
    k %= 4
    return tuple(t[k:]) + tuple(t[:k])


def _normal(t):
    return min(tuple(t), _rot(t, 2))


@dataclass(frozen=True)
class LinkDiagram:
    crossings: tuple
    free_loops: int = 0
    # optional: med dart sitting at each crossing slot (diagrams built from maps)
    slot_darts: tuple = field(default=None, compare=False)

    def __post_init__(self):
        xs = tuple(tuple(x) for x in self.crossings)
        object.__setattr__(self, "crossings", xs)
        counts = {}
        for x in xs:
            if len(x) != 4:
                raise DiagramError("crossing %r does not have 4 slots" % (x,))
            for a in x:
                counts[a] = counts.get(a, 0) + 1
        bad = [a for a, k in counts.items() if k != 2]
        if bad:
            raise DiagramError("arc labels %r do not occur exactly twice" % sorted(bad, key=str))

    @property
    def n(self):
        return len(self.crossings)

    def key(self):
        return (tuple(sorted(_normal(x) for x in self.crossings)), self.free_loops)

    def __eq__(self, other):
        return isinstance(other, LinkDiagram) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def occurrences(self):
        occ = {}
        for c, x in enumerate(self.crossings):
            for s, a in enumerate(x):
                occ.setdefault(a, []).append((c, s))
        return occ

    def arcs(self):
        return sorted(self.occurrences(), key=lambda a: (str(type(a)), a))

    def components(self):
        """Components as lists of outgoing positions ``(crossing, slot)``.

        Traversal starts at the least unused position and goes straight
        through every crossing; this fixes the canonical orientation.
        """
        occ = self.occurrences()
        used = set()
        comps = []
        for c in range(self.n):
            for s in range(4):
                if (c, s) in used:
                    continue
                comp = []
                pos = (c, s)
                while pos not in used:
                    used.add(pos)
                    comp.append(pos)
                    cc, ss = pos
                    a = self.crossings[cc][ss]
                    o = occ[a]
                    other = o[1] if o[0] == pos else o[0]
                    used.add(other)
                    pos = (other[0], (other[1] + 2) % 4)
                comps.append(comp)
        return comps

    def num_components(self):
        return len(self.components()) + self.free_loops

    def is_knot(self):
        return self.num_components() == 1

    def crossing_signs(self, orientation=None):
        """Writhe sign of each crossing for an orientation vector (+1/-1 per component)."""
        comps = self.components()
        if orientation is None:
            orientation = (1,) * len(comps)
        incoming = {}
        for comp, o in zip(comps, orientation):
            for c, s in comp:
                # canonical direction leaves through s and enters the opposite slot
                incoming.setdefault(c, set()).add((s + 2) % 4 if o == 1 else s)
        signs = []
        for c in range(self.n):
            ins = incoming[c]
            u_in = 0 if 0 in ins else 2
            o_in = 1 if 1 in ins else 3
            o_out = (o_in + 2) % 4
            signs.append(1 if o_out == (u_in + 1) % 4 else -1)
        return signs

    def writhe(self, orientation=None):
        return sum(self.crossing_signs(orientation))

    def component_of_positions(self):
        comp_of = {}
        for i, comp in enumerate(self.components()):
            for c, s in comp:
                comp_of[(c, s)] = i
                comp_of[(c, (s + 2) % 4)] = i
        return comp_of

    def is_alternating(self):
        """Walking along each component, over and under passes alternate."""
        for comp in self.components():
            kinds = [s % 2 for _, s in comp]  # leaving through slot parity = strand kind
            if len(kinds) > 1 and any(kinds[i] == kinds[(i + 1) % len(kinds)] for i in range(len(kinds))):
                return False
        return True

    def relabeled(self):
        """Arcs renumbered 1, 2, ... in traversal order from the lowest crossing."""
        mapping = {}
        for comp in self.components():
            for c, s in comp:
                a = self.crossings[c][s]
                if a not in mapping:
                    mapping[a] = len(mapping) + 1
        xs = tuple(tuple(mapping[a] for a in x) for x in self.crossings)
        return LinkDiagram(xs, self.free_loops, self.slot_darts)

    def to_pd(self, oriented=True):
        """PD text, one ``X a b c d`` line per crossing.

        With ``oriented`` each tuple starts at the incoming under arc (the
        usual PD convention) for the canonical orientation.
        """
        d = self.relabeled()
        lines = []
        if oriented:
            comps = d.components()
            incoming = {}
            for comp in comps:
                for c, s in comp:
                    incoming.setdefault(c, set()).add((s + 2) % 4)
        for c, x in enumerate(d.crossings):
            if oriented:
                u_in = 0 if 0 in incoming[c] else 2
                x = _rot(x, u_in)
            lines.append("X %d %d %d %d" % tuple(x))
        for _ in range(self.free_loops):
            lines.append("O")
        return "\n".join(lines) + ("\n" if lines else "")

    def to_gauss(self):
        """Gauss code of a knot: +k for an over pass, -k for an under pass."""
        if not self.is_knot():
            raise DiagramError("Gauss code is only defined here for knots")
        comps = self.components()
        if not comps:
            return []
        code = []
        for c, s in comps[0]:
            # entering slot (s + 2) % 4 of crossing c, i.e. passing c
            code.append((c + 1) if s % 2 == 1 else -(c + 1))
        return code


def parse_pd(text):
    """Inverse of :meth:`LinkDiagram.to_pd` (``O`` lines are free loops)."""
    crossings = []
    loops = 0
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#")[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "O" and len(parts) == 1:
            loops += 1
            continue
        if parts[0] != "X" or len(parts) not in (5, 6):
            raise DiagramError("line %d: expected 'X a b c d [o]'" % lineno)
        try:
            crossings.append(tuple(int(p) for p in parts[1:5]))
        except ValueError:
            raise DiagramError("line %d: arc labels must be integers" % lineno) from None
    return LinkDiagram(tuple(crossings), loops)


def unknot():
    return LinkDiagram((), 1)


def diagram_from_signed_map(sm: SignedMap) -> LinkDiagram:
    """D(G, S): the medial map of G with crossings resolved by the edge signs.

    Crossing ``k`` is edge ``k`` of G; arc labels are the corners of G
    (dart ``d`` names the corner between ``d`` and ``sigma(d)``).
    """
    m = sm.map
    if m.ne == 0:
        return unknot()
    sig_inv = perm_inverse(m.sigma)
    crossings = []
    slots = []
    for e, (d, dd) in enumerate(m.edges):
        darts = (2 * sig_inv[dd] + 1, 2 * d, 2 * sig_inv[d] + 1, 2 * dd)
        if sm.edge_signs[e] == MINUS:
            darts = _rot(darts, 1)
        slots.append(darts)
        crossings.append(tuple(x // 2 for x in darts))
    return LinkDiagram(tuple(crossings), 0, tuple(slots))


def mirror(d: LinkDiagram) -> LinkDiagram:
    """Exchange over and under at every crossing."""
    return switch_crossings(d, range(d.n))


def switch_crossings(d: LinkDiagram, indices) -> LinkDiagram:
    idx = set(indices)
    if any(not (0 <= i < d.n) for i in idx):
        raise BadIndex("crossing index out of range")
    xs = tuple(_rot(x, 1) if i in idx else x for i, x in enumerate(d.crossings))
    slots = None
    if d.slot_darts is not None:
        slots = tuple(_rot(x, 1) if i in idx else x for i, x in enumerate(d.slot_darts))
    return LinkDiagram(xs, d.free_loops, slots)


def connected_sum(d1: LinkDiagram, d2: LinkDiagram, arc1=None, arc2=None) -> LinkDiagram:
    """Band the two diagrams together by cutting one arc of each."""
    if d1.n == 0 and d1.free_loops >= 1:
        return LinkDiagram(d2.crossings, d2.free_loops + d1.free_loops - 1)
    if d2.n == 0 and d2.free_loops >= 1:
        return LinkDiagram(d1.crossings, d1.free_loops + d2.free_loops - 1)
    a = d1.relabeled()
    b = d2.relabeled()
    arcs1 = a.arcs()
    offset = max(arcs1)
    occ1 = a.occurrences()
    x1 = arcs1[0] if arc1 is None else _relabeled_arc(d1, arc1)
    x2 = 1 if arc2 is None else _relabeled_arc(d2, arc2)
    if x1 not in occ1:
        raise InvalidArc("arc %r not in first diagram" % (arc1,))
    occ2 = b.occurrences()
    if x2 not in occ2:
        raise InvalidArc("arc %r not in second diagram" % (arc2,))
    new_label = offset + max(b.arcs()) + 1
    xs = [list(x) for x in a.crossings] + [[y + offset for y in x] for x in b.crossings]
    q = occ1[x1][1]
    s = occ2[x2][1]
    xs[q[0]][q[1]] = new_label
    xs[a.n + s[0]][s[1]] = new_label
    r = occ2[x2][0]
    xs[a.n + r[0]][r[1]] = x1
    return LinkDiagram(tuple(tuple(x) for x in xs), a.free_loops + b.free_loops).relabeled()


def _relabeled_arc(d, arc):
    mapping = {}
    for comp in d.components():
        for c, s in comp:
            lab = d.crossings[c][s]
            if lab not in mapping:
                mapping[lab] = len(mapping) + 1
    if arc not in mapping:
        raise InvalidArc("arc %r not in diagram" % (arc,))
    return mapping[arc]


def braid_closure(word, strands):
    """Closure of a braid word given as signed generator indices (1-based).

    Strands run upward; ``+i`` has the strand from position i passing over.
    """
    labels = list(range(strands))
    next_label = strands
    crossings = []
    for g in word:
        i = abs(g) - 1
        if not (0 <= i < strands - 1):
            raise ValueError("generator %d out of range" % g)
        a, b = labels[i], labels[i + 1]
        c, d = next_label, next_label + 1
        next_label += 2
        if g > 0:
            crossings.append((b, d, c, a))
        else:
            crossings.append((a, b, d, c))
        labels[i], labels[i + 1] = c, d
    # identify the top of each strand with its bottom
    ident = {labels[p]: p for p in range(strands)}
    xs = tuple(tuple(ident.get(x, x) for x in cr) for cr in crossings)
    touched = {p for x in xs for p in x}
    loops = sum(1 for p in range(strands) if p not in touched)
    return LinkDiagram(xs, loops).relabeled()


def closure_of_braid_A3(n):
    """The Turk's head link TH(3, n): closure of (s1 s2^-1)^n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return braid_closure([1, -2] * n, 3)


def orientations(d: LinkDiagram):
    """Orientation vectors up to global reversal (first component fixed)."""
    k = len(d.components())
    if k == 0:
        return [()]
    return [(1,) + rest for rest in product((1, -1), repeat=k - 1)]


def shadow_map(d: LinkDiagram):
    """The 4-regular map underlying a diagram; dart ``4c + s`` is slot s of crossing c."""
    from .map_core import CombMap

    if d.n == 0:
        raise DiagramError("a diagram without crossings has no shadow map")
    sigma = [4 * (x // 4) + (x % 4 + 1) % 4 for x in range(4 * d.n)]
    alpha = [0] * (4 * d.n)
    for (c1, s1), (c2, s2) in d.occurrences().values():
        alpha[4 * c1 + s1] = 4 * c2 + s2
        alpha[4 * c2 + s2] = 4 * c1 + s1
    return CombMap(sigma, alpha)


def signed_map_from_diagram(d: LinkDiagram, black=0) -> SignedMap:
    """Tait graph of a connected diagram: the inverse of :func:`diagram_from_signed_map`.

    Faces of the shadow are checkerboard colored; the class holding face
    ``black`` (0 or 1 picks which class becomes the vertices) gives the
    vertices.  The edge of crossing c is edge c.
    """
    from .map_core import CombMap

    if d.free_loops:
        raise DiagramError("split unknotted components have no connected Tait graph")
    sh = shadow_map(d)
    # corner k of crossing c sits between slots k and k+1; its face is face_of[sigma(x)]
    color = [None] * sh.nf
    color[0] = 0
    stack = [0]
    while stack:
        f = stack.pop()
        for x in sh.faces[f]:
            g = sh.face_of[sh.alpha[x]]
            if color[g] is None:
                color[g] = 1 - color[f]
                stack.append(g)
            elif color[g] == color[f]:
                raise DiagramError("shadow is not checkerboard colorable")
    target = color[0] if black == 0 else 1 - color[0]

    def corner_face(x):
        return sh.face_of[sh.sigma[x]]

    # G darts: the two black corners of each crossing, 2c + (0 or 1)
    corner_dart = {}
    signs = []
    for c in range(d.n):
        ks = [k for k in range(4) if color[corner_face(4 * c + k)] == target]
        if len(ks) != 2 or (ks[1] - ks[0]) != 2:
            raise DiagramError("crossing %d is not checkerboard colored" % c)
        corner_dart[4 * c + ks[0]] = 2 * c
        corner_dart[4 * c + ks[1]] = 2 * c + 1
        signs.append(PLUS if ks[0] % 2 == 1 else MINUS)
    sigma = [0] * (2 * d.n)
    for x, g in corner_dart.items():
        # walk the black face: previous corner in the rotation
        y = sh.alpha[sh.sigma[x]]
        while y not in corner_dart:
            y = sh.alpha[sh.sigma[y]]
        sigma[g] = corner_dart[y]
    alpha = [g ^ 1 for g in range(2 * d.n)]
    # the face walk runs clockwise around each black region
    return SignedMap(CombMap(perm_inverse(sigma), alpha), tuple(signs))
