"""Combinatorial maps on the sphere.

A map is stored as two permutations of darts (half-edges):

* ``sigma`` -- next dart counterclockwise around the vertex of a dart,
* ``alpha`` -- the other dart of the same edge (fixed-point-free involution).

Faces are the orbits of ``phi = sigma o alpha``; with ``sigma`` counterclockwise
each face is traversed counterclockwise with the face on the left, so
``(phi, alpha)`` is again a counterclockwise rotation system: the geometric
dual on the same darts.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Optional, Sequence


class MapError(ValueError):
    pass


class NotSphere(MapError):
    pass


class Disconnected(MapError):
    pass


class MalformedPairing(MapError):
    pass


def perm_orbits(perm):
    """Orbits of a permutation given as a list, ordered by their least element."""
    seen = [False] * len(perm)
    orbits = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        orbit = []
        d = start
        while not seen[d]:
            seen[d] = True
            orbit.append(d)
            d = perm[d]
        orbits.append(tuple(orbit))
    return orbits


def perm_inverse(perm):
    inv = [0] * len(perm)
    for i, j in enumerate(perm):
        inv[j] = i
    return inv


def _cell_index(orbits, n):
    index = [0] * n
    for k, orbit in enumerate(orbits):
        for d in orbit:
            index[d] = k
    return index


class CombMap:
    """A connected map on the sphere given by dart permutations.

    Vertices, edges and faces are the orbits of ``sigma``, ``alpha`` and
    ``phi``; cells are numbered by their least dart.
    """

    def __init__(self, sigma, alpha, check=True):
        self.sigma = tuple(sigma)
        self.alpha = tuple(alpha)
        n = len(self.sigma)
        if check:
            _check_perm(self.sigma, "sigma")
            _check_perm(self.alpha, "alpha")
            if len(self.alpha) != n:
                raise MalformedPairing("sigma and alpha act on different dart sets")
            if any(self.alpha[d] == d or self.alpha[self.alpha[d]] != d for d in range(n)):
                raise MalformedPairing("alpha must be a fixed-point-free involution")
        self.phi = tuple(self.sigma[self.alpha[d]] for d in range(n))
        self.vertices = perm_orbits(self.sigma)
        self.edges = perm_orbits(self.alpha)
        self.faces = perm_orbits(self.phi)
        self.vertex_of = _cell_index(self.vertices, n)
        self.edge_of = _cell_index(self.edges, n)
        self.face_of = _cell_index(self.faces, n)
        if check:
            if n and not self._connected():
                raise Disconnected("the map is not connected")
            if self.euler_characteristic() != 2:
                raise NotSphere(
                    "Euler characteristic %d != 2 (V=%d, E=%d, F=%d)"
                    % (self.euler_characteristic(), self.nv, self.ne, self.nf)
                )

    @property
    def num_darts(self):
        return len(self.sigma)

    @property
    def nv(self):
        return len(self.vertices)

    @property
    def ne(self):
        return len(self.edges)

    @property
    def nf(self):
        return len(self.faces)

    def euler_characteristic(self):
        if not self.sigma:
            return 2
        return self.nv - self.ne + self.nf

    def _connected(self):
        n = self.num_darts
        seen = [False] * n
        seen[0] = True
        queue = deque([0])
        count = 1
        while queue:
            d = queue.popleft()
            for e in (self.sigma[d], self.alpha[d]):
                if not seen[e]:
                    seen[e] = True
                    count += 1
                    queue.append(e)
        return count == n

    def degree(self, v):
        return len(self.vertices[v])

    def face_length(self, f):
        return len(self.faces[f])

    def edge_ends(self, e):
        d, dd = self.edges[e]
        return self.vertex_of[d], self.vertex_of[dd]

    def mirror(self):
        """The same map seen from the other side of the sphere."""
        return CombMap(perm_inverse(self.sigma), self.alpha, check=False)

    def rotation_system(self):
        return [list(v) for v in self.vertices]

    def canonical_form(self, oriented=True):
        return canonical_form(self, oriented=oriented)

    def __eq__(self, other):
        return isinstance(other, CombMap) and self.sigma == other.sigma and self.alpha == other.alpha

    def __hash__(self):
        return hash((self.sigma, self.alpha))

    def __repr__(self):
        return "CombMap(V=%d, E=%d, F=%d)" % (self.nv, self.ne, self.nf)


def _check_perm(perm, name):
    if sorted(perm) != list(range(len(perm))):
        raise MalformedPairing("%s is not a permutation of 0..%d" % (name, len(perm) - 1))


def build_map(rotation_system: Sequence[Sequence[int]], edge_pairing: Sequence[Sequence[int]]) -> CombMap:
    """Build a map from per-vertex counterclockwise dart lists and dart pairs."""
    darts = [d for rot in rotation_system for d in rot]
    n = len(darts)
    if sorted(darts) != list(range(n)):
        raise MalformedPairing("rotations must partition the darts 0..%d" % (n - 1))
    if any(len(rot) == 0 for rot in rotation_system):
        raise MalformedPairing("empty vertex rotation")
    sigma = [0] * n
    for rot in rotation_system:
        for i, d in enumerate(rot):
            sigma[d] = rot[(i + 1) % len(rot)]
    alpha = [-1] * n
    for pair in edge_pairing:
        if len(pair) != 2:
            raise MalformedPairing("edge %r does not have two darts" % (pair,))
        a, b = pair
        if not (0 <= a < n and 0 <= b < n) or a == b or alpha[a] != -1 or alpha[b] != -1:
            raise MalformedPairing("edge %r is not part of a perfect matching" % (pair,))
        alpha[a], alpha[b] = b, a
    if -1 in alpha:
        raise MalformedPairing("some darts are not paired")
    return CombMap(sigma, alpha)


def map_from_rotations(rotations):
    """Build a map from, per vertex, the ccw order of edge ends.

    ``rotations[v]`` lists entries ``(edge_index, end)`` with ``end`` 0 for the
    tail of the edge and 1 for its head (both ends matter for loops).  Edge
    ``e`` owns darts ``2*e`` (tail) and ``2*e + 1`` (head).
    """
    rot = [[2 * e + end for e, end in r] for r in rotations]
    ne = sum(len(r) for r in rot) // 2
    pairs = [(2 * e, 2 * e + 1) for e in range(ne)]
    return build_map(rot, pairs)


# ---------------------------------------------------------------------------
# signed and decorated maps

PLUS, MINUS = "+", "-"
BLACK, WHITE = "black", "white"


def flip_sign(s):
    return MINUS if s == PLUS else PLUS


def flip_color(c):
    return WHITE if c == BLACK else BLACK


@dataclass(frozen=True)
class SignedMap:
    """A map together with a sign on each edge: the Tait graph of a link."""

    map: CombMap
    edge_signs: tuple

    def __post_init__(self):
        signs = tuple(self.edge_signs)
        object.__setattr__(self, "edge_signs", signs)
        if len(signs) != self.map.ne:
            raise ValueError("expected %d edge signs, got %d" % (self.map.ne, len(signs)))
        if any(s not in (PLUS, MINUS) for s in signs):
            raise ValueError("edge signs must be '+' or '-'")

    @classmethod
    def constant(cls, m, sign=PLUS):
        return cls(m, (sign,) * m.ne)

    def negated(self):
        return SignedMap(self.map, tuple(flip_sign(s) for s in self.edge_signs))

    def with_signs(self, signs):
        return SignedMap(self.map, tuple(signs))

    def is_constant(self):
        return len(set(self.edge_signs)) <= 1


@dataclass
class DecoratedMap:
    """A map with optional vertex/face colorings and signatures.

    ``source`` records, for derived maps, which cell of the parent map each
    cell comes from (e.g. ``{"vertex_edge": [...]}`` for a medial graph).
    """

    map: CombMap
    vertex_colors: Optional[tuple] = None
    face_colors: Optional[tuple] = None
    vertex_signs: Optional[tuple] = None
    face_signs: Optional[tuple] = None
    source: dict = field(default_factory=dict)

    def opposite_colors(self):
        """Swap black and white on every colored cell."""
        return DecoratedMap(
            self.map,
            _maybe(self.vertex_colors, flip_color),
            _maybe(self.face_colors, flip_color),
            self.vertex_signs,
            self.face_signs,
            dict(self.source),
        )

    def negated(self):
        return DecoratedMap(
            self.map,
            self.vertex_colors,
            self.face_colors,
            _maybe(self.vertex_signs, flip_sign),
            _maybe(self.face_signs, flip_sign),
            dict(self.source),
        )

    def is_properly_vertex_colored(self):
        if self.vertex_colors is None:
            return False
        m = self.map
        return all(
            self.vertex_colors[m.vertex_of[a]] != self.vertex_colors[m.vertex_of[b]] for a, b in m.edges
        )


def _maybe(values, fn):
    return None if values is None else tuple(fn(x) for x in values)


# ---------------------------------------------------------------------------
# derived maps


def dual(m: CombMap) -> CombMap:
    """Geometric dual on the same darts: vertex k of the dual is face k of ``m``.

    Edge k of the dual crosses edge k of ``m``.  A face walk of ``m`` runs
    clockwise, so the counterclockwise rotation around the dual vertex is
    ``phi`` inverted.  The face of the dual around vertex v of ``m`` holds
    the darts ``alpha(d)`` for the darts d at v.
    """
    return CombMap(perm_inverse(m.phi), m.alpha, check=False)


def medial(m: CombMap) -> DecoratedMap:
    """Medial map with its faces colored black (vertices of m) / white (faces of m).

    Dart ``2*d`` / ``2*d + 1`` are the two ends of the medial edge running
    through the corner between ``d`` and ``sigma(d)``; ``2*d`` sits on the
    midpoint of edge(d), ``2*d + 1`` on the midpoint of edge(sigma(d)).
    ``source["vertex_edge"]`` maps medial vertices to edges of ``m``.
    """
    n = m.num_darts
    sig_inv = perm_inverse(m.sigma)
    rotation = []
    for d, dd in m.edges:
        # counterclockwise around the midpoint of the edge d -> dd
        rotation.append([2 * sig_inv[dd] + 1, 2 * d, 2 * sig_inv[d] + 1, 2 * dd])
    sigma = [0] * (2 * n)
    for rot in rotation:
        for i, x in enumerate(rot):
            sigma[x] = rot[(i + 1) % 4]
    alpha = [x ^ 1 for x in range(2 * n)]
    med = CombMap(sigma, alpha, check=False)
    vertex_edge = [m.edge_of[med.vertices[k][0] // 2] if med.vertices[k][0] % 2 == 0
                   else m.edge_of[m.sigma[med.vertices[k][0] // 2]] for k in range(med.nv)]
    face_colors = []
    face_cell = []
    for orbit in med.faces:
        x = orbit[0]
        if x % 2 == 1:
            face_colors.append(BLACK)
            face_cell.append(("vertex", m.vertex_of[x // 2]))
        else:
            face_colors.append(WHITE)
            face_cell.append(("face", m.face_of[m.sigma[x // 2]]))
    edge_vertex = [0] * m.ne
    for k, e in enumerate(vertex_edge):
        edge_vertex[e] = k
    return DecoratedMap(
        med,
        face_colors=tuple(face_colors),
        source={"vertex_edge": vertex_edge, "edge_vertex": edge_vertex, "face_cell": face_cell},
    )


def incidence(m: CombMap) -> DecoratedMap:
    """Vertex-face incidence map I(m), built directly from the corners of m.

    Its vertices are the vertices of ``m`` (black) followed by the faces of
    ``m`` (white); each corner ``(d, sigma(d))`` gives one edge with darts
    ``2*d`` (at the vertex) and ``2*d + 1`` (at the face).  Every face is a
    quadrilateral around one edge of ``m``.
    """
    n = m.num_darts
    sigma = [0] * (2 * n)
    for d in range(n):
        sigma[2 * d] = 2 * m.sigma[d]
    # a face of m is walked as x, phi(x), ... ; corner of alpha(x) precedes that of alpha(phi(x))
    for orbit in m.faces:
        corners = [m.alpha[x] for x in orbit]
        k = len(corners)
        for i in range(k):
            sigma[2 * corners[i] + 1] = 2 * corners[(i - 1) % k] + 1
    alpha = [x ^ 1 for x in range(2 * n)]
    inc = CombMap(sigma, alpha, check=False)
    colors = []
    vertex_cell = []
    for orbit in inc.vertices:
        x = orbit[0]
        if x % 2 == 0:
            colors.append(BLACK)
            vertex_cell.append(("vertex", m.vertex_of[x // 2]))
        else:
            colors.append(WHITE)
            vertex_cell.append(("face", m.face_of[m.sigma[x // 2]]))
    face_edge = []
    for orbit in inc.faces:
        face_edge.append(_diagonal_edge(m, orbit))
    edge_face = [0] * m.ne
    for k, e in enumerate(face_edge):
        edge_face[e] = k
    return DecoratedMap(
        inc,
        vertex_colors=tuple(colors),
        source={"face_edge": face_edge, "edge_face": edge_face, "vertex_cell": vertex_cell},
    )


def _diagonal_edge(m, inc_face):
    # the face through dart 2*d (corner d leaving its vertex) is the one around edge(d)
    x = inc_face[0]
    d = x // 2
    if x % 2 == 0:
        return m.edge_of[d]
    return m.edge_of[m.sigma[d]]


def decorate_from_signs(sm: SignedMap):
    """Transport edge signs to medial vertices and incidence faces."""
    med = medial(sm.map)
    inc = incidence(sm.map)
    med.vertex_signs = tuple(sm.edge_signs[e] for e in med.source["vertex_edge"])
    inc.face_signs = tuple(sm.edge_signs[e] for e in inc.source["face_edge"])
    return med, inc


# ---------------------------------------------------------------------------
# canonical forms


def _bfs_code(m, start, rot):
    """Relabel darts by BFS from ``start`` over (rot, alpha) and encode the map."""
    label = {start: 0}
    order = [start]
    i = 0
    while i < len(order):
        d = order[i]
        i += 1
        for e in (rot[d], m.alpha[d]):
            if e not in label:
                label[e] = len(order)
                order.append(e)
    code = []
    for d in order:
        code.append(label[rot[d]])
        code.append(label[m.alpha[d]])
    return tuple(code), order


def canonical_form(m: CombMap, oriented=True):
    """Lexicographically least BFS encoding over all starting darts.

    With ``oriented=False`` the mirror rotation is tried as well, so the
    result identifies maps up to any homeomorphism of the sphere.
    """
    rots = [m.sigma] if oriented else [m.sigma, tuple(perm_inverse(m.sigma))]
    best = None
    for rot in rots:
        for s in range(m.num_darts):
            code, _ = _bfs_code(m, s, rot)
            if best is None or code < best:
                best = code
    return (m.num_darts,) + (best or ())


def is_isomorphic(m1: CombMap, m2: CombMap, oriented=True):
    if m1.num_darts != m2.num_darts:
        return False
    return canonical_form(m1, oriented) == canonical_form(m2, oriented)


def signed_map_from_incidence(inc: DecoratedMap) -> SignedMap:
    """Recover (G, S_E) from a face-signed, vertex-colored quadrangulation.

    The black vertices are the vertices of G and each quadrilateral face is
    the edge of G joining its two black corners; edge k of G is face k.
    Works for I(G) itself and for any bipartite quadrangulation, such as
    the subdivided incidence maps.
    """
    q = inc.map
    if inc.vertex_colors is None or inc.face_signs is None:
        raise MapError("need vertex colors and face signs")
    # G dart for (face, black corner): 2*face + (0 for the first black corner, 1 for the second)
    corner_dart = {}
    for f, orbit in enumerate(q.faces):
        if len(orbit) != 4:
            raise MapError("face %d is not a quadrilateral" % f)
        black = [z for z in orbit if inc.vertex_colors[q.vertex_of[z]] == BLACK]
        if len(black) != 2:
            raise MapError("face %d does not have two black corners" % f)
        for i, z in enumerate(black):
            corner_dart[z] = 2 * f + i
    # the corner (sigma^-1 z, z) of face face_of[z] sits at vertex_of[z]
    sigma = [0] * (2 * q.nf)
    for v, orbit in enumerate(q.vertices):
        if inc.vertex_colors[v] != BLACK:
            continue
        ring = [corner_dart[z] for z in orbit]
        for i, g in enumerate(ring):
            sigma[g] = ring[(i + 1) % len(ring)]
    alpha = [g ^ 1 for g in range(2 * q.nf)]
    return SignedMap(CombMap(sigma, alpha), tuple(inc.face_signs))


def random_map(n_edges, rng, loops=True):
    """A random connected sphere map with ``n_edges`` edges.

    Grows from a single edge by adding pendant edges and chords inside
    faces, so every intermediate map stays on the sphere.  ``rng`` is a
    ``random.Random``.
    """
    if n_edges < 1:
        raise MapError("a random map needs at least one edge")
    sigma = [0, 1]
    alpha = [1, 0]
    while len(alpha) < 2 * n_edges:
        m = CombMap(sigma, alpha, check=False)
        x, y = len(alpha), len(alpha) + 1
        alpha += [y, x]
        inv = perm_inverse(sigma)
        if rng.random() < 0.4:
            d = rng.randrange(x)
            sigma += [sigma[d], y]
            sigma[d] = x
        else:
            face = rng.choice(m.faces)
            a, b = rng.choice(face), rng.choice(face)
            if a == b and not loops:
                alpha = alpha[:-2]
                continue
            # insert x before a and y before b in their rotations
            sigma += [None, None]
            pa, pb = inv[a], inv[b]
            if a == b:
                sigma[pa], sigma[x], sigma[y] = x, y, a
            else:
                sigma[pa], sigma[x] = x, a
                sigma[pb], sigma[y] = y, b
    return CombMap(sigma, alpha)
