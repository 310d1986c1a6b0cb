import pytest
from hypothesis import given, strategies as st

from knotbound.diagram import canonical_code, faces, unknot, validate, writhe
from knotbound.group import X
from knotbound.invariant import i_lk
from knotbound.moves import (
    MoveError,
    MoveRecord,
    apply,
    change_table_fuzz,
    enumerate_moves,
    format_move,
    format_trace,
    inverse_site,
    parse_move,
    parse_trace,
    random_unknot,
    reducing_moves,
    verify_change,
)

from conftest import unknot_diagrams

WRITHE_STEP = {"RI": 1, "RII": 0, "RIII": 0}


def test_kink_has_one_reducing_move(kink):
    (m,) = reducing_moves(kink)
    assert m.kind == "RI"
    after = apply(kink, m)
    assert after == unknot()
    v = verify_change(kink, after, m)
    assert v.ok and v.delta == -X(0) and v.form == "RI_X0"


def test_unknot_moves():
    assert reducing_moves(unknot()) == []
    inc = enumerate_moves(unknot())
    assert {m.kind for m in inc} == {"RI"}
    for m in inc:
        d = apply(unknot(), m)
        assert writhe(d) == m.sign
        (r,) = reducing_moves(d)
        assert apply(d, r) == unknot()


def test_trefoil_has_no_reducing_moves(trefoil):
    assert reducing_moves(trefoil) == []
    sizes = sorted(len(f.darts) for f in faces(trefoil))
    assert sizes == [2, 2, 2, 3, 3]


def test_bad_site(trefoil):
    with pytest.raises(MoveError):
        apply(trefoil, MoveRecord("RI", "reduce", face=0))


def test_both_rii_orientations_occur():
    forms = change_table_fuzz(1, 300, 16).forms_seen
    assert forms.get("RII_XkYk", 0) > 0 and forms.get("RII_XkYk1", 0) > 0


@given(unknot_diagrams(max_crossings=10), st.data())
def test_move_properties(d, data):
    m = data.draw(st.sampled_from(enumerate_moves(d)))
    after = apply(d, m)
    assert validate(after).valid
    assert len(after.crossings) - len(d.crossings) == m.crossing_delta
    dw = abs(writhe(after) - writhe(d))
    assert dw == WRITHE_STEP[m.kind]
    v = verify_change(d, after, m)
    assert v.ok, (format_move(m), v.delta)
    assert abs(v.g_change) <= 1
    inv = inverse_site(d, after, m)
    assert canonical_code(apply(after, inv)) == canonical_code(d)


@given(unknot_diagrams(max_crossings=10))
def test_riii_keeps_crossing_count(d):
    for m in reducing_moves(d):
        if m.kind == "RIII":
            after = apply(d, m)
            assert len(after.crossings) == len(d.crossings)
            assert validate(after).valid


@given(st.integers(0, 10**6), st.integers(0, 12))
def test_random_unknot_is_deterministic_and_replays(seed, target):
    d, trace = random_unknot(seed, target)
    assert random_unknot(seed, target)[0] == d
    assert len(d.crossings) == target
    e = unknot()
    for m in trace:
        e = apply(e, m)
    assert e == d


@given(st.integers(0, 10**6), st.integers(1, 10))
def test_reversed_trace_returns_to_unknot(seed, target):
    d, trace = random_unknot(seed, target)
    states = [unknot()]
    for m in trace:
        states.append(apply(states[-1], m))
    cur = d
    for before, m in zip(reversed(states[:-1]), reversed(trace)):
        cur = apply(cur, inverse_site(before, cur, m))
        assert canonical_code(cur) == canonical_code(before)
    assert cur.is_trivial()


@pytest.mark.parametrize("line", [
    "RI+ edge=3 sign=+ side=L", "RI+ circle sign=- side=R", "RI- face=2",
    "RII- face=0", "RII+ face=4 darts=0,2 over=second", "RIII face=7",
])
def test_move_text_round_trip(line):
    assert format_move(parse_move(line)) == line


@pytest.mark.parametrize("line", ["RIV face=1", "RI- edge=1", "RII+ face=1 darts=0,1 over=up", ""])
def test_bad_move_text(line):
    with pytest.raises(ValueError):
        parse_move(line)


def test_trace_file_round_trip():
    _, trace = random_unknot(7, 8)
    text = format_trace(trace, diagram="u.pd", seed=7)
    header, moves = parse_trace(text)
    assert header == {"diagram": "u.pd", "seed": "7"}
    assert moves == trace
