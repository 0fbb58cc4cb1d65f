"""Amphichirality of links built from edge-signed planar maps."""

from .map_core import (
    BLACK,
    MINUS,
    PLUS,
    WHITE,
    CombMap,
    DecoratedMap,
    SignedMap,
    build_map,
    decorate_from_signs,
    dual,
    incidence,
    is_isomorphic,
    map_from_rotations,
    medial,
    random_map,
)
from .morphisms import (
    MapMorphism,
    antipodal_candidates,
    automorphisms,
    classify_behavior,
    dualities,
    is_antipodally_self_dual,
    pairing,
)
from .link_build import (
    LinkDiagram,
    braid_closure,
    closure_of_braid_A3,
    connected_sum,
    diagram_from_signed_map,
    mirror,
    parse_pd,
    signed_map_from_diagram,
    switch_crossings,
)
from .invariants import LaurentPoly, amphichiral_obstruction, jones, kauffman_bracket, linking_number
from .gamma_search import (
    GammaCurve,
    GammaWitness,
    amph_interval,
    amph_upper_bound,
    amphichiral_by_gamma,
    enumerate_gamma,
    is_reflexive,
    subdivide_face,
    symmetric_witness,
)
from .certify import certify, certify_diagram

__version__ = "0.1.0"
