"""Knot diagrams in PD form, the smoothing invariant I_lk and Reidemeister move bounds."""

from .diagram import (
    Diagram,
    DiagramError,
    canonical_code,
    faces,
    format_pd,
    linking_number,
    mirror,
    parse_pd,
    smooth,
    trace_components,
    unknot,
    validate,
    writhe,
)
from .family import UntangleReport, gen_dn, untangle_sequence, v_n, verify_untangle
from .group import GroupElement, X, Y, parse_element
from .invariant import g_hom, i_lk, i_phi, is_in_R, lower_bound, r_length_bfs
from .moves import MoveRecord, apply, enumerate_moves, random_unknot, verify_change

__all__ = [
    "Diagram", "DiagramError", "canonical_code", "faces", "format_pd", "linking_number",
    "mirror", "parse_pd", "smooth", "trace_components", "unknot", "validate", "writhe",
    "UntangleReport", "gen_dn", "untangle_sequence", "v_n", "verify_untangle",
    "GroupElement", "X", "Y", "parse_element",
    "g_hom", "i_lk", "i_phi", "is_in_R", "lower_bound", "r_length_bfs",
    "MoveRecord", "apply", "enumerate_moves", "random_unknot", "verify_change",
]
