import json

import pytest
from hypothesis import given

from knotbound.diagram import (
    Diagram,
    DiagramError,
    canonical_code,
    crossing_sign,
    diagram_from_json,
    diagram_to_json,
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

from conftest import unknot_diagrams


def test_kink_parses_as_positive_crossing(kink):
    assert len(kink.crossings) == 1
    assert crossing_sign(kink, 0) == 1
    assert writhe(kink) == 1


def test_empty_text_with_circle_is_trivial():
    d = parse_pd("", free_circles=1)
    assert d.is_trivial()
    assert d == unknot()
    assert parse_pd("circles 1").is_trivial()


def test_label_used_three_times_is_rejected():
    with pytest.raises(DiagramError):
        parse_pd("X 0 0 0 1")


def test_garbage_is_rejected():
    with pytest.raises((DiagramError, ValueError)):
        parse_pd("X 0 1 2")
    with pytest.raises((DiagramError, ValueError)):
        parse_pd("Q 0 1 2 3")


def test_kink_validates(kink):
    rep = validate(kink)
    assert rep.valid
    assert (rep.V, rep.E, rep.F) == (1, 2, 3)
    assert sorted(len(f.darts) for f in faces(kink)) == [1, 1, 2]


def test_two_free_circles():
    rep = validate(parse_pd("circles 2"))
    assert rep.valid
    assert rep.component_count == 2


def test_components(kink, trefoil):
    assert trace_components(kink).component_count == 1
    assert trace_components(unknot()).component_count == 1
    for c in range(3):
        assert trace_components(smooth(trefoil, c)).component_count == 2


def test_smoothing_the_kink_splits_it(kink):
    s = smooth(kink, 0)
    assert not s.crossings
    assert trace_components(s).component_count == 2
    assert linking_number(s) == 0


def test_trefoil(trefoil):
    assert trefoil.signs == (1, 1, 1)
    assert len(faces(trefoil)) == 5
    for c in range(3):
        s = smooth(trefoil, c)
        assert len(s.crossings) == 2
        assert linking_number(s) == 1


def test_linking_number_needs_two_components(trefoil):
    with pytest.raises(DiagramError):
        linking_number(trefoil)


def test_mirror(kink, trefoil):
    m = mirror(kink)
    assert crossing_sign(m, 0) == -1
    assert mirror(m) == kink
    assert writhe(mirror(trefoil)) == -3


def test_relabeling_is_canonical(trefoil):
    shifted = parse_pd("X 11 15 12 14\nX 13 11 14 10\nX 15 13 10 12")
    assert shifted == trefoil
    reordered = parse_pd("X 5 3 0 2\nX 1 5 2 4\nX 3 1 4 0")
    assert canonical_code(reordered) == canonical_code(trefoil)


def test_text_and_json_round_trip(trefoil):
    assert parse_pd(format_pd(trefoil)) == trefoil
    assert diagram_from_json(diagram_to_json(trefoil)) == trefoil
    assert parse_pd(diagram_to_json(trefoil)) == trefoil
    assert json.loads(diagram_to_json(unknot()))["free_circles"] == 1


@given(unknot_diagrams())
def test_random_diagrams_satisfy_euler(d):
    rep = validate(d)
    assert rep.valid, rep.violations
    assert rep.V - rep.E + rep.F == 2
    assert len(faces(d)) == len(d.crossings) + 2
    assert rep.component_count == 1


@given(unknot_diagrams())
def test_every_smoothing_has_integer_linking(d):
    for c in range(len(d.crossings)):
        s = smooth(d, c)
        assert trace_components(s).component_count == 2
        assert isinstance(linking_number(s), int)


@given(unknot_diagrams())
def test_mirror_is_an_involution(d):
    assert mirror(mirror(d)) == d
    assert writhe(mirror(d)) == -writhe(d)


def test_diagram_equality_ignores_cached_signs(trefoil):
    assert Diagram(trefoil.crossings, 0) == trefoil
