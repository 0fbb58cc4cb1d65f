"""Deterministic SVG drawings of link diagrams built from signed maps.

Layout: the medial map is refined into a simple triangulation of the
sphere (one node per vertex, edge and face of the medial map, plus one per
flag edge and per flag triangle).  A Tutte barycentric embedding of that
triangulation with a fixed outer triangle gives straight-line planar
positions with no randomness.  Each strand half runs from its crossing
through a flag-edge node to the midpoint of its medial edge.
"""

from __future__ import annotations

import numpy as np

from .link_build import LinkDiagram, diagram_from_signed_map
from .map_core import SignedMap, medial

PALETTE = ("#1f4e9c", "#c0392b", "#2e8b57", "#8e44ad", "#d35400", "#16a085", "#7f8c8d")
SIZE = 600.0
MARGIN = 20.0
GAP = 9.0


def _triangulation(m):
    """Nodes and triangles of the refined flag triangulation of ``m``."""
    nodes = []
    index = {}

    def node(key):
        if key not in index:
            index[key] = len(nodes)
            nodes.append(key)
        return index[key]

    for v in range(m.nv):
        node(("v", v))
    for e in range(m.ne):
        node(("e", e))
    for f in range(m.nf):
        node(("f", f))
    # flag edges carry their own ids so parallel flag edges stay apart
    flag_edges = {}
    for d in range(m.num_darts):
        v, e = m.vertex_of[d], m.edge_of[d]
        flag_edges[("ve", d)] = (("v", v), ("e", e))
        flag_edges[("ef", d)] = (("e", e), ("f", m.face_of[d]))
        flag_edges[("vf", d)] = (("v", v), ("f", m.face_of[m.sigma[d]]))
    triangles = []
    for x in range(m.num_darts):
        y = m.sigma[x]
        triangles.append((("ve", x), ("vf", x), ("ef", m.alpha[x])))
        triangles.append((("ve", y), ("vf", x), ("ef", y)))
    adj = {}

    def link(a, b):
        adj.setdefault(a, set()).add(b)
        adj.setdefault(b, set()).add(a)

    for key, (a, b) in flag_edges.items():
        mid = node(("mid", key))
        link(index[a], mid)
        link(index[b], mid)
    for t, edges in enumerate(triangles):
        center = node(("tri", t))
        for key in edges:
            link(center, index[("mid", key)])
            for end in flag_edges[key]:
                link(center, index[end])
    return nodes, index, adj, triangles, flag_edges


def tutte_layout(m):
    """Planar positions (node index -> (x, y)) and the node index table.

    The largest face of ``m`` becomes the outer face: the nodes around its
    node go on a circle and everything else sits at the barycenter of its
    neighbors.
    """
    nodes, index, adj, _, _ = _triangulation(m)
    big = index[("f", max(range(m.nf), key=lambda f: (len(m.faces[f]), -f)))]
    ring = _link_cycle(adj, big)
    n = len(nodes)
    pos = np.zeros((n, 2))
    for i, k in enumerate(ring):
        t = 2 * np.pi * i / len(ring)
        pos[k] = (np.cos(t), np.sin(t))
    fixed = set(ring) | {big}
    free = [k for k in range(n) if k not in fixed]
    col = {k: i for i, k in enumerate(free)}
    a = np.zeros((len(free), len(free)))
    b = np.zeros((len(free), 2))
    for k in free:
        i = col[k]
        a[i, i] = len(adj[k])
        for j in adj[k]:
            if j in col:
                a[i, col[j]] -= 1
            else:
                b[i] += pos[j]
    if free:
        pos[free] = np.linalg.solve(a, b)
    pos[big] = np.nan
    if not _counterclockwise(m, pos, index):
        pos[:, 0] = -pos[:, 0]
    return pos, index


def _link_cycle(adj, k):
    """Neighbors of ``k`` in cyclic order (the link of a node of a triangulation)."""
    around = adj[k]
    start = min(around)
    ring = [start]
    prev = None
    while True:
        cur = ring[-1]
        nxt = min(j for j in adj[cur] & around if j != prev and (len(ring) < 2 or j != ring[-2]))
        if nxt == start:
            return ring
        prev = cur
        ring.append(nxt)


def _counterclockwise(m, pos, index):
    """Whether the drawing turns the rotation of some vertex counterclockwise."""
    ring = max(m.vertices, key=len)
    if len(ring) < 3:
        return True
    v = pos[index[("v", m.vertex_of[ring[0]])]]
    angles = [np.arctan2(*(pos[index[("mid", ("ve", d))]] - v)[::-1]) for d in ring]
    total = sum((angles[(i + 1) % len(ring)] - angles[i]) % (2 * np.pi) for i in range(len(ring)))
    return total < 2 * np.pi + 1e-6


def _fmt(p):
    return "%.2f,%.2f" % (p[0], p[1])


def diagram_svg(sm: SignedMap, diagram: LinkDiagram = None) -> str:
    """SVG text for D(G, S); under strands stop short of their crossing."""
    diagram = diagram_from_signed_map(sm) if diagram is None else diagram
    med = medial(sm.map).map
    pos, index = tutte_layout(med)
    lo, hi = np.nanmin(pos, axis=0), np.nanmax(pos, axis=0)
    scale = (SIZE - 2 * MARGIN) / max(hi[0] - lo[0], hi[1] - lo[1], 1e-9)

    def screen(k):
        x, y = (pos[k] - lo) * scale + MARGIN
        return (x, SIZE - y)

    comp_of = diagram.component_of_positions()
    out = [
        '<svg xmlns="http://www.w3.org/2000/svg" width="%d" height="%d" viewBox="0 0 %d %d">'
        % (SIZE, SIZE, SIZE, SIZE),
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    for c, darts in enumerate(diagram.slot_darts):
        out.append('<g class="crossing" id="crossing-%d">' % c)
        for s, d in enumerate(darts):
            v = screen(index[("v", med.vertex_of[d])])
            mid = screen(index[("mid", ("ve", d))])
            end = screen(index[("e", med.edge_of[d])])
            start = v
            if s % 2 == 0:
                # under strand: leave a gap around the crossing
                length = max(np.hypot(mid[0] - v[0], mid[1] - v[1]), 1e-9)
                k = min(GAP / length, 0.45)
                start = (v[0] + k * (mid[0] - v[0]), v[1] + k * (mid[1] - v[1]))
            color = PALETTE[comp_of[(c, s)] % len(PALETTE)]
            out.append(
                '<polyline class="%s" points="%s %s %s" fill="none" stroke="%s" stroke-width="3"/>'
                % ("under" if s % 2 == 0 else "over", _fmt(start), _fmt(mid), _fmt(end), color)
            )
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
