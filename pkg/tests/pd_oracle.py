"""Independent Jones oracle: plain state sum over oriented PD text.

Polynomials are dicts from exponent of A to coefficient.  Smoothing and
writhe follow the usual PD rules: ``X[a,b,c,d]`` starts at the incoming
under arc, A-smoothing joins (a,b) and (c,d), and the crossing is positive
when the over strand runs from ``d`` to ``b``.
"""

from itertools import product


def parse(text):
    xs = []
    loops = 0
    for line in text.splitlines():
        parts = line.split()
        if parts == ["O"]:
            loops += 1
        elif parts:
            xs.append(tuple(int(p) for p in parts[1:5]))
    return xs, loops


def _mul(p, q):
    out = {}
    for a, x in p.items():
        for b, y in q.items():
            out[a + b] = out.get(a + b, 0) + x * y
    return {k: v for k, v in out.items() if v}


def _loops(pairs):
    parent = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in pairs:
        parent[find(a)] = find(b)
    return len({find(x) for x in parent})


def bracket(xs, loops=0):
    """Unnormalized bracket, every closed loop weighted by -A^2 - A^-2."""
    delta = {2: -1, -2: -1}
    total = {}
    for state in product((0, 1), repeat=len(xs)):
        pairs = []
        for (a, b, c, d), s in zip(xs, state):
            pairs += [(a, b), (c, d)] if s == 0 else [(a, d), (b, c)]
        k = _loops(pairs) + loops
        term = {state.count(0) - state.count(1): 1}
        for _ in range(k):
            term = _mul(term, delta)
        for e, v in term.items():
            total[e] = total.get(e, 0) + v
    return {k: v for k, v in total.items() if v}


def _entries(xs):
    """Slots through which each strand enters, walking every component.

    Components with an under pass are walked from it (slot 0 is always an
    entry); the rest follow increasing labels.
    """
    occ = {}
    for c, x in enumerate(xs):
        for k, lab in enumerate(x):
            occ.setdefault(lab, []).append((c, k))
    entries = set()
    seen = set()

    def walk(c, k):
        while (c, k) not in seen:
            seen.add((c, k))
            entries.add((c, k))
            out = (c, (k + 2) % 4)
            seen.add(out)
            lab = xs[c][out[1]]
            p, q = occ[lab]
            c, k = q if p == out else p

    for c in range(len(xs)):
        if (c, 0) not in seen:
            walk(c, 0)
    for lab in sorted(occ):
        p, q = occ[lab]
        if p in seen:
            continue
        # enter where the next label leaves: pick the occurrence whose exit is lab + 1
        c, k = p
        walk(*(p if xs[c][(k + 2) % 4] == lab + 1 else q))
    return entries


def writhe(xs):
    entries = _entries(xs)
    w = 0
    for c in range(len(xs)):
        # under runs 0 -> 2; positive when over runs 3 -> 1
        w += 1 if (c, 3) in entries else -1
    return w


def jones(text):
    """Jones polynomial as {exponent of t^(1/2): coefficient}."""
    xs, loops = parse(text)
    if not xs:
        b = {0: 1}
        for _ in range(loops - 1):
            b = _mul(b, {2: -1, -2: -1})
    else:
        b = bracket(xs, loops)
        b = _divide_delta(b)
    w = writhe(xs)
    sign = -1 if w % 2 else 1
    f = {e - 3 * w: sign * v for e, v in b.items()}
    # A = t^(-1/4): A^k = s^(-k/2) with s = t^(1/2)
    return {-e // 2: v for e, v in f.items()}


def _divide_delta(p):
    # long division by -A^2 - A^-2 from the top degree down
    p = dict(p)
    q = {}
    while p:
        top = max(p)
        c = -p[top]
        q[top - 2] = c
        for e, v in ((top, c), (top - 4, c)):
            p[e] = p.get(e, 0) + v
            if p[e] == 0:
                del p[e]
    return q
