"""Command line interface: ``amphimap analyze|generate|diagram|amph``."""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from . import families
from .certify import certify
from .families import BadParam, FamilySpec, NotAKnot
from .gamma_search import BudgetExceeded, amph_interval
from .invariants import TooLarge, format_jones
from .link_build import DiagramError, signed_map_from_diagram
from .map_core import (
    MINUS,
    PLUS,
    MapError,
    SignedMap,
    build_map,
    decorate_from_signs,
    dual,
    is_isomorphic,
)
from .morphisms import NotSelfDual, is_antipodally_self_dual

EXIT_OK, EXIT_USAGE, EXIT_INCONSISTENT = 0, 1, 2


class InputError(ValueError):
    pass


# ---------------------------------------------------------------------------
# map JSON


def map_to_json(sm: SignedMap) -> dict:
    m = sm.map
    return {
        "vertices": [list(v) for v in m.vertices],
        "edges": [list(e) for e in m.edges],
        "signs": {str(e): s for e, s in enumerate(sm.edge_signs)},
    }


def dumps(obj) -> str:
    """Canonical serialization: sorted keys, two-space indent, final newline."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def map_from_json(obj) -> SignedMap:
    """Parse the JSON map format; edge ``i`` is the i-th entry of ``edges``."""
    if not isinstance(obj, dict):
        raise InputError("top level must be an object")
    for key in ("vertices", "edges"):
        if key not in obj or not isinstance(obj[key], list):
            raise InputError("missing list %r" % key)
    try:
        m = build_map(obj["vertices"], obj["edges"])
    except (TypeError, ValueError) as exc:
        raise InputError("invalid map: %s" % exc) from None
    raw = obj.get("signs", {}) or {}
    if not isinstance(raw, dict):
        raise InputError("'signs' must be an object")
    signs = [PLUS] * m.ne
    for key, s in raw.items():
        try:
            i = int(key)
        except ValueError:
            raise InputError("sign key %r is not an edge index" % key) from None
        if not 0 <= i < len(obj["edges"]):
            raise InputError("sign key %r out of range" % key)
        if s not in (PLUS, MINUS):
            raise InputError("sign of edge %s must be '+' or '-'" % key)
        signs[m.edge_of[obj["edges"][i][0]]] = s
    return SignedMap(m, tuple(signs))


def load_map(path) -> SignedMap:
    try:
        text = sys.stdin.read() if path == "-" else open(path).read()
    except OSError as exc:
        raise InputError(str(exc)) from None
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError("%s: line %d column %d: %s" % (path, exc.lineno, exc.colno, exc.msg)) from None
    return map_from_json(obj)


# ---------------------------------------------------------------------------
# generate


def generate(family, n, sign=PLUS, levels=1, signature=None):
    """Signed map of a family instance (sums come back as Tait graphs)."""
    if family in ("sum_mirror", "sum_self"):
        base = families.cycle(n, sign)
        d = families.sum_with_mirror(base) if family == "sum_mirror" else families.sum_with_self(base)
        return signed_map_from_diagram(d)
    if signature is None:
        signature = "constant+" if sign == PLUS else "constant-"
    return families.build(FamilySpec(family, n, levels, signature))


# ---------------------------------------------------------------------------
# analyze


def _poly_table(jones):
    return {" ".join("%+d" % o for o in k): format_jones(p) for k, p in jones.items()}


def _witness_json(w, inc_map=None):
    if w is None:
        return None
    if hasattr(w, "to_dict"):
        return w.to_dict(inc_map)
    f = w["morphism"]
    out = {
        "orientation": f.orientation,
        "behavior": dict(w["behavior"]),
        "dart_map": list(f.dart_map),
    }
    if "condition" in w:
        out["condition"] = w["condition"]
    if "compatible" in w:
        out["orientation_compatible"] = w["compatible"]
    return out


def analyze(sm: SignedMap, max_gamma_len=None, limit=None):
    """Full report for one signed map as a JSON-ready dict."""
    m = sm.map
    med, inc = decorate_from_signs(sm)
    asd, _ = is_antipodally_self_dual(m)
    rep = certify(sm, max_gamma_len=max_gamma_len, limit=limit)
    d = rep["diagram"]
    ant = rep["routes"]["antipodal"]
    pr = rep["routes"]["pairing"]
    gm = rep["routes"]["gamma"]
    sy = rep["routes"]["symmetry"]
    ob = rep["jones"]
    report = {
        "input": {
            "vertices": m.nv,
            "edges": m.ne,
            "faces": m.nf,
            "signs": "".join(sm.edge_signs),
        },
        "structures": {
            "dual": {"vertices": m.nf, "faces": m.nv, "self_dual": is_isomorphic(m, dual(m), oriented=False)},
            "medial": {"vertices": med.map.nv, "edges": med.map.ne, "faces": med.map.nf},
            "incidence": {"vertices": inc.map.nv, "edges": inc.map.ne, "faces": inc.map.nf},
            "antipodally_self_dual": asd,
        },
        "diagram": {
            "crossings": d.n,
            "components": d.num_components(),
            "alternating": d.is_alternating(),
            "pd": d.to_pd().splitlines(),
        },
        "detectors": {
            "antipodal": {
                "conditions": sorted({w["condition"] for w in ant["witnesses"] if w["condition"]}),
                "amphichiral": ant["amphichiral"],
                "certified": ant["certified"],
                "three_antipodal": ant["three_antipodal"],
                "witness": _witness_json(ant["amphichiral_witness"] or ant["three_antipodal_witness"]),
            },
            "pairing": {
                "self_dual": pr["self_dual"],
                "amphichiral_by_thm75": pr["criterion"],
                "signature_compatible": pr["signature_compatible"],
                "report": pr["report"].to_dict() if pr["report"] is not None else None,
            },
            "gamma": {
                "amphichiral": gm["amphichiral"],
                "certified": gm["certified"],
                "witness": _witness_json(gm["witness"], gm["incidence"].map),
            },
            "symmetry": {
                "amphichiral": sy["amphichiral"],
                "certified": sy["certified"],
                "count": sy["count"],
            },
        },
        "jones": {
            "polynomials": _poly_table(ob["jones"]),
            "passes": ob["passes"],
            "mirror_closed": ob["mirror_closed"],
        },
        "verdict": rep["verdict"],
        "certified_by": rep["certified_by"],
        "unoriented_certificates": rep["unoriented_by"],
        "three_antipodal": rep["three_antipodal"],
        "consistent": rep["consistent"],
    }
    return report


def _text_report(r):
    lines = [
        "map: V=%(vertices)d E=%(edges)d F=%(faces)d signs=%(signs)s" % r["input"],
        "diagram: %d crossings, %d components%s" % (
            r["diagram"]["crossings"], r["diagram"]["components"],
            ", alternating" if r["diagram"]["alternating"] else ""),
        "antipodally self-dual: %s" % r["structures"]["antipodally_self_dual"],
        "antipodal conditions: %s" % (", ".join(r["detectors"]["antipodal"]["conditions"]) or "none"),
        "three-antipodally symmetric: %s" % r["three_antipodal"],
        "certified by: %s" % (", ".join(r["certified_by"]) or "none"),
    ]
    extra = [x for x in r["unoriented_certificates"] if x not in r["certified_by"]]
    if extra:
        lines.append("unoriented certificates only: %s" % ", ".join(extra))
    for o, p in r["jones"]["polynomials"].items():
        lines.append("jones[%s]: %s" % (o, p))
    lines.append("jones obstruction passes: %s" % r["jones"]["passes"])
    lines.append("verdict: %s" % r["verdict"])
    if not r["consistent"]:
        lines.append("INCONSISTENT: certified but the Jones test fails")
    return "\n".join(lines) + "\n"


def _emit(obj, fmt, text_fn):
    sys.stdout.write(dumps(obj) if fmt == "json" else text_fn(obj))


def _batch_item(args):
    family, n, max_gamma_len, limit = args
    try:
        sm = generate(family, n)
        r = analyze(sm, max_gamma_len, limit)
    except (BadParam, NotAKnot, TooLarge) as exc:
        return {"family": family, "n": n, "error": str(exc)}
    return {"family": family, "n": n, "verdict": r["verdict"], "certified_by": r["certified_by"],
            "jones_passes": r["jones"]["passes"], "consistent": r["consistent"]}


def cmd_analyze(args):
    limit = args.bracket_limit
    if args.all_families is not None:
        jobs = [(f, n, args.max_gamma_len, limit)
                for f in ("wheel", "ear", "pancake", "torus2", "sum_mirror", "sum_self")
                for n in range(1, args.all_families + 1)]
        with ProcessPoolExecutor() as pool:
            rows = list(pool.map(_batch_item, jobs))
        rows = [r for r in rows if "error" not in r]
        _emit(rows, args.format, lambda rs: "".join(
            "%-10s %2d  %-24s %s\n" % (r["family"], r["n"], r["verdict"], ",".join(r["certified_by"]))
            for r in rs))
        return EXIT_OK if all(r["consistent"] for r in rows) else EXIT_INCONSISTENT
    if args.map is None:
        raise InputError("analyze needs a map file or --all-families")
    sm = load_map(args.map)
    r = analyze(sm, args.max_gamma_len, limit)
    if args.svg:
        from .svg import diagram_svg

        with open(args.svg, "w") as fh:
            fh.write(diagram_svg(sm))
    _emit(r, args.format, _text_report)
    return EXIT_OK if r["consistent"] else EXIT_INCONSISTENT


def cmd_generate(args):
    sm = generate(args.family, args.n, args.sign, args.levels, args.signature)
    sys.stdout.write(dumps(map_to_json(sm)))
    return EXIT_OK


def cmd_diagram(args):
    from .link_build import diagram_from_signed_map

    sm = load_map(args.map)
    d = diagram_from_signed_map(sm)
    if args.svg:
        from .svg import diagram_svg

        with open(args.svg, "w") as fh:
            fh.write(diagram_svg(sm, d))
    if args.gauss:
        out = {"gauss": d.to_gauss()}
        _emit(out, args.format, lambda o: " ".join(str(x) for x in o["gauss"]) + "\n")
    else:
        out = {"pd": d.to_pd().splitlines(), "components": d.num_components()}
        _emit(out, args.format, lambda o: "".join(line + "\n" for line in o["pd"]))
    return EXIT_OK


def cmd_amph(args):
    sm = load_map(args.map)
    r = amph_interval(sm, budget=args.budget, max_gamma_len=args.max_gamma_len, limit=args.bracket_limit)
    _emit(r, args.format, lambda o: "Amph in [%s, %s] (switch budget %d)\n" % (
        o["lower"], "?" if o["upper"] is None else o["upper"], o["budget"]))
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    # usage errors share exit code 1 with parse errors; 2 is reserved
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, "%s: error: %s\n" % (self.prog, message))


def build_parser():
    p = _Parser(prog="amphimap", description="Amphichirality of links from signed planar maps.")
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="text")
    common.add_argument("--max-gamma-len", type=int, default=None, metavar="K")
    common.add_argument("--bracket-limit", type=int, default=None, metavar="N")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    a = sub.add_parser("analyze", parents=[common], help="run every detector and the Jones test")
    a.add_argument("map", nargs="?", help="JSON map file ('-' for stdin)")
    a.add_argument("--svg", metavar="PATH")
    a.add_argument("--all-families", type=int, metavar="N_MAX", default=None)
    a.set_defaults(func=cmd_analyze)

    g = sub.add_parser("generate", parents=[common], help="emit a family instance as a JSON map")
    g.add_argument("family", choices=families.FAMILIES)
    g.add_argument("n", type=int)
    g.add_argument("sign", nargs="?", choices=(PLUS, MINUS), default=PLUS)
    g.add_argument("--levels", type=int, default=1)
    g.add_argument("--signature", default=None,
                   choices=("constant+", "constant-", "antipodal-paired", "anti-paired"))
    g.set_defaults(func=cmd_generate)

    d = sub.add_parser("diagram", parents=[common], help="PD code, Gauss code or SVG of D(G, S)")
    d.add_argument("map")
    d.add_argument("--gauss", action="store_true")
    d.add_argument("--svg", metavar="PATH")
    d.set_defaults(func=cmd_diagram)

    m = sub.add_parser("amph", parents=[common], help="bounds on the amphichiral number")
    m.add_argument("map")
    m.add_argument("--budget", type=int, default=None, metavar="K")
    m.set_defaults(func=cmd_amph)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.bracket_limit is not None:
        os.environ["AMPHI_BRACKET_LIMIT"] = str(args.bracket_limit)
    try:
        return args.func(args)
    except (InputError, MapError, BadParam, NotAKnot, DiagramError, TooLarge,
            BudgetExceeded, NotSelfDual) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
