"""Acceptance criteria, one test each.

Every test records a single PASS/FAIL line (printed directly and repeated in
the terminal summary).  Time budgets are part of each criterion.
"""

import random
import time
from itertools import product

import pytest

import morph_oracle
from amphimap.certify import certify, certify_diagram
from amphimap.families import (
    digon,
    ear,
    ear_map,
    nonreflexive_map,
    pancake,
    pancake_map,
    paired_signs,
    sum_with_mirror,
    sum_with_self,
    torus2,
    triangle,
    wheel,
    wheel_map,
)
from amphimap.gamma_search import (
    amph_interval,
    amph_upper_bound,
    enumerate_gamma,
    interior_faces,
    subdivide_face,
    symmetric_witness,
    witness_certifies,
    witnesses,
)
from amphimap.invariants import amphichiral_obstruction
from amphimap.link_build import braid_closure, diagram_from_signed_map
from amphimap.map_core import (
    MINUS,
    PLUS,
    SignedMap,
    decorate_from_signs,
    dual,
    incidence,
    is_isomorphic,
    medial,
    random_map,
)
from amphimap.morphisms import PRESERVING, REVERSING, antipodal_candidates, classify_behavior, is_antipodally_self_dual, pairing

from conftest import ACCEPTANCE


def record(number, title, ok, detail=""):
    line = "criterion %d %s: %s%s" % (number, "PASS" if ok else "FAIL", title, (" (%s)" % detail) if detail else "")
    ACCEPTANCE[number] = line
    print(line)
    return ok


def _jones_passes(d, limit=None):
    return amphichiral_obstruction(d, limit)["passes"]


def test_1_structural_suite():
    rng = random.Random(1)
    start = time.perf_counter()
    problems = []
    for i in range(50):
        m = random_map(rng.randint(1, 8), rng)
        dd = dual(dual(m))
        med = medial(m).map
        inc = incidence(m)
        checks = {
            "euler": m.nv - m.ne + m.nf == 2,
            # alpha carries m onto its double dual
            "double dual": all(dd.sigma[m.alpha[d]] == m.alpha[m.sigma[d]] for d in range(m.num_darts)),
            "incidence is dual of medial": is_isomorphic(inc.map, dual(med), oriented=True),
            "bipartite": all(inc.vertex_colors[a] != inc.vertex_colors[b]
                             for a, b in (inc.map.edge_ends(e) for e in range(inc.map.ne))),
            "quadrangular": all(len(f) == 4 for f in inc.map.faces),
            "medial vertices": med.nv == m.ne,
        }
        problems += ["map %d: %s" % (i, k) for k, v in checks.items() if not v]
    elapsed = time.perf_counter() - start
    ok = not problems and elapsed < 1.0
    record(1, "structural suite on 50 random maps", ok, "%.2fs%s" % (elapsed, "; " + ", ".join(problems) if problems else ""))
    assert not problems
    assert elapsed < 1.0


def test_2_antipodal_self_duality():
    start = time.perf_counter()
    positive = {"W1": wheel_map(1), "W3": wheel_map(3), "W5": wheel_map(5), "W7": wheel_map(7),
                "E4": ear_map(4), "E6": ear_map(6), "E8": ear_map(8),
                "P3^1": pancake_map(3, 1), "P3^2": pancake_map(3, 2), "P5^1": pancake_map(5, 1)}
    negative = {"W2": wheel_map(2), "W4": wheel_map(4)}
    wrong = [k for k, m in positive.items() if not is_antipodally_self_dual(m)[0]]
    wrong += [k for k, m in negative.items() if is_antipodally_self_dual(m)[0]]
    elapsed = time.perf_counter() - start
    ok = not wrong and elapsed < 5.0
    record(2, "antipodal self-duality regression", ok, "%.2fs%s" % (elapsed, "; wrong: " + ",".join(wrong) if wrong else ""))
    assert not wrong
    assert elapsed < 5.0


def test_3_certified_amphichiral_instances():
    start = time.perf_counter()
    instances = {"W3 Borromean": wheel(3)}
    for n in range(1, 7):
        instances["TH(3,%d)" % n] = wheel(n)
    instances.update({"E4": ear(4), "P3^2": pancake(3, 2), "W2": wheel(2), "W4": wheel(4)})
    failures = []
    for name, sm in instances.items():
        r = certify(sm, limit=16)
        if not (r["certified"] and r["jones"]["passes"]):
            failures.append(name)
    s = certify_diagram(sum_with_mirror(triangle()), limit=16)
    if not (s["certified"] and s["jones"]["passes"]):
        failures.append("trefoil#mirror")
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 60.0
    record(3, "amphichiral instances certified and Jones palindromic", ok,
           "%.1fs%s" % (elapsed, "; failed: " + ",".join(failures) if failures else ""))
    assert not failures
    assert elapsed < 60.0


def test_4_chirality_negatives():
    start = time.perf_counter()
    cases = {
        "trefoil": certify(triangle()),
        "Hopf(+,+)": certify(digon()),
        "T(2,3)": certify_diagram(braid_closure([1, 1, 1], 2)),
        "T(2,5)": certify_diagram(braid_closure([1] * 5, 2)),
        "trefoil#trefoil": certify_diagram(sum_with_self(triangle())),
    }
    failures = [k for k, r in cases.items() if r["jones"]["passes"] or r["certified"]]
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 5.0
    record(4, "chiral inputs fail the Jones test and stay uncertified", ok,
           "%.2fs%s" % (elapsed, "; failed: " + ",".join(failures) if failures else ""))
    assert not failures
    assert elapsed < 5.0


def _antipodal_behaviors(sm):
    med, _ = decorate_from_signs(sm)
    return [classify_behavior(f, med) for f in antipodal_candidates(med.map)]


def test_5_three_antipodal_conditions():
    start = time.perf_counter()
    both_reversing = {"color": REVERSING, "sign": REVERSING}
    cases = {"torus2(3)": torus2(3), "torus2(5)": torus2(5)}
    for n in (1, 3, 5):
        cases["W%d anti-paired" % n] = paired_signs(wheel_map(n), (PLUS,) * n, anti=True)
    failures = []
    for name, sm in cases.items():
        color_rev = [b for b in _antipodal_behaviors(sm) if b["color"] == REVERSING]
        if not color_rev or any(b != both_reversing for b in color_rev):
            failures.append(name)
    if _antipodal_behaviors(digon()) != [{"color": PRESERVING, "sign": PRESERVING}]:
        failures.append("digon")
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 5.0
    record(5, "3-antipodal condition classes", ok,
           "%.2fs%s" % (elapsed, "; failed: " + ",".join(failures) if failures else ""))
    assert not failures
    assert elapsed < 5.0


def test_6_gamma_machinery():
    start = time.perf_counter()
    _, inc = decorate_from_signs(wheel(4))
    found = None
    for curve in enumerate_gamma(inc):
        if not curve.is_cycle:
            continue
        for w in witnesses(inc, curve):
            if w.reflexive and w.behavior == {"color": REVERSING, "sign": PRESERVING}:
                found = w
                break
        if found:
            break
    _, inc2 = decorate_from_signs(SignedMap.constant(nonreflexive_map(), PLUS))
    symmetric = [w for w in (symmetric_witness(inc2, c) for c in enumerate_gamma(inc2)) if w is not None]
    nonreflexive = bool(symmetric) and not any(w.reflexive for w in symmetric)
    elapsed = time.perf_counter() - start
    ok = found is not None and nonreflexive and elapsed < 30.0
    record(6, "reflexive cycle in I(W4) and a symmetric nonreflexive curve", ok, "%.2fs" % elapsed)
    assert found is not None
    assert nonreflexive
    assert elapsed < 30.0


def test_7_amphichiral_number():
    start = time.perf_counter()
    failures = []
    for name, sm in (("figure-eight", wheel(2)), ("Borromean", wheel(3))):
        r = amph_interval(sm)
        if (r["lower"], r["upper"]) != (0, 0):
            failures.append("%s %s" % (name, (r["lower"], r["upper"])))
    for name, sm in (("trefoil", triangle()), ("Hopf", digon())):
        r = amph_interval(sm)
        if r["lower"] is None or r["lower"] < 1:
            failures.append("%s lower %s" % (name, r["lower"]))
    rng = random.Random(7)
    bases = [wheel_map(1), wheel_map(3), wheel_map(5), ear_map(4), pancake_map(3, 1), pancake_map(3, 2), pancake_map(5, 1)]
    tried = 0
    for m in bases:
        for _ in range(10):
            sm = SignedMap(m, tuple(rng.choice((PLUS, MINUS)) for _ in range(m.ne)))
            bound, _, switched = amph_upper_bound(sm)
            tried += 1
            if bound > m.ne / 2 or not certify(switched, jones_check=False, routes=("antipodal",))["certified"]:
                failures.append("perturbed %s" % "".join(sm.edge_signs))
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 60.0
    record(7, "amphichiral number bounds", ok,
           "%.1fs, %d perturbed signatures%s" % (elapsed, tried, "; failed: " + ", ".join(failures) if failures else ""))
    assert not failures
    assert elapsed < 60.0


def _oracle_criterion(m):
    morphs = morph_oracle.morphisms(m)
    duals = morph_oracle.morphisms(m, dual(m))
    return (any(o == PRESERVING for _, o in duals) or any(o == REVERSING for _, o in morphs)), len(morphs), len(duals)


def test_8_pairing_criterion():
    start = time.perf_counter()
    rng = random.Random(8)
    instances = {"W1": wheel_map(1), "W3": wheel_map(3), "W5": wheel_map(5), "W7": wheel_map(7),
                 "E4": ear_map(4), "P3^2": pancake_map(3, 2)}
    group_failures = []
    jones_failures = []
    tested = 0
    for name, m in instances.items():
        r = pairing(m)
        crit, n_aut, n_dual = _oracle_criterion(m)
        if r.cor_order != 2 * r.aut_order or r.aut_order != n_aut or r.cor_order != n_aut + n_dual:
            group_failures.append(name + " orders")
        if r.amphichiral_by_thm75 != crit:
            group_failures.append(name + " criterion")
        if not r.amphichiral_by_thm75 or m.ne > 14:
            continue
        if m.ne <= 6:
            sigs = list(product((PLUS, MINUS), repeat=m.ne))
        else:
            sigs = [tuple(rng.choice((PLUS, MINUS)) for _ in range(m.ne)) for _ in range(24)]
        bad = 0
        for s in sigs:
            tested += 1
            if not _jones_passes(diagram_from_signed_map(SignedMap(m, s))):
                bad += 1
        if bad:
            jones_failures.append("%s %d/%d" % (name, bad, len(sigs)))
    elapsed = time.perf_counter() - start
    ok = not group_failures and not jones_failures and elapsed < 10.0
    detail = "%.1fs, %d signatures" % (elapsed, tested)
    if group_failures:
        detail += "; group checks failed: " + ", ".join(group_failures)
    if jones_failures:
        detail += "; non-palindromic signatures: " + ", ".join(jones_failures)
    record(8, "pairing criterion and every-signature Jones check", ok, detail)
    assert not group_failures
    assert not jones_failures, "signatures failing the Jones test: " + ", ".join(jones_failures)
    assert elapsed < 10.0


def test_9_subdivision():
    start = time.perf_counter()
    _, inc = decorate_from_signs(wheel(4))
    base = None
    for curve in enumerate_gamma(inc):
        for w in witnesses(inc, curve):
            if witness_certifies(w):
                base = w
                break
        if base:
            break
    failures = []
    for scheme in ("five", "seven"):
        cur_inc, cur_w = inc, base
        for level in (1, 2):
            face = interior_faces(cur_inc.map, cur_w.curve)[0]
            s = subdivide_face(cur_inc, cur_w, face, scheme)
            m = s.signed_map.map
            valid = m.nv - m.ne + m.nf == 2 and all(len(f) == 4 for f in s.inc.map.faces)
            d = diagram_from_signed_map(s.signed_map)
            if not (valid and witness_certifies(s.witness) and _jones_passes(d, limit=40)):
                failures.append("%s x%d" % (scheme, level))
            cur_inc, cur_w = s.inc, s.witness
    elapsed = time.perf_counter() - start
    ok = base is not None and not failures and elapsed < 10.0
    record(9, "five- and seven-square subdivisions", ok,
           "%.2fs%s" % (elapsed, "; failed: " + ", ".join(failures) if failures else ""))
    assert base is not None
    assert not failures
    assert elapsed < 10.0
