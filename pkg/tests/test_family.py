from collections import Counter

import pytest

from knotbound.diagram import faces, trace_components, validate, writhe
from knotbound.family import (
    UntangleError,
    gen_dn,
    gen_dn_tagged,
    untangle_phases,
    untangle_sequence,
    v_n,
    verify_untangle,
)
from knotbound.group import X, Y
from knotbound.invariant import crossing_contributions, g_hom, i_lk
from knotbound.moves import apply, format_move, parse_move

EXPECTED_SYMBOL = {"T": ("X", -1), "B": ("Y", 0), "L": ("Y", 0)}


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_dn_is_a_valid_knot(n):
    d = gen_dn(n)
    rep = validate(d)
    assert rep.valid
    assert rep.V == 7 * n - 1
    assert rep.F == 7 * n + 1
    assert trace_components(d).component_count == 1


def test_dn_examples():
    assert len(gen_dn(4).crossings) == 27
    assert i_lk(gen_dn(1)) == X(1) + 2 * X(-1) + 3 * Y(0)
    assert i_lk(gen_dn(2)) == 2 * X(2) + 2 * X(-2) + 3 * X(-1) + 6 * Y(0)
    assert writhe(gen_dn(3)) == 2


@pytest.mark.parametrize("n", range(1, 7))
def test_census_per_crossing(n):
    d, tags = gen_dn_tagged(n)
    contrib = crossing_contributions(d)
    want = dict(EXPECTED_SYMBOL, M=("X", n), R=("X", -n))
    for (group, _), sym in zip(tags, contrib):
        assert sym == want[group]
    sizes = Counter(g for g, _ in tags)
    assert sizes == {"T": 2 * n - 1, "B": 2 * n, "L": n, "M": n, "R": n}
    assert writhe(d) == n - 1


@pytest.mark.parametrize("n", range(1, 11))
def test_g_of_v_n(n):
    assert g_hom(v_n(n)) == 2 * n * n + 3 * n - 2


def test_bad_n():
    with pytest.raises(ValueError):
        gen_dn(0)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_phase_structure(n):
    phases = untangle_phases(n)
    assert [len(p) for p in phases] == [n * (2 * n - 1), 2 * n - 1, n, n + 1]
    kinds = [[m.kind for m in p] for p in phases]
    assert kinds == [["RIII"] * (n * (2 * n - 1)), ["RII"] * (2 * n - 1),
                     ["RII"] * n, ["RI"] * (n + 1)]
    seq = untangle_sequence(n)
    assert len(seq) == 2 * n * n + 3 * n
    d = gen_dn(n)
    for m in seq:
        d = apply(d, m)
    assert d.is_trivial()


def test_n1_sequence():
    assert [m.kind for m in untangle_sequence(1)] == ["RIII", "RII", "RII", "RI", "RI"]


@pytest.mark.parametrize("n, lower, upper, mid", [(1, 3, 5, 4), (4, 42, 44, 13)])
def test_reports(n, lower, upper, mid):
    rep = verify_untangle(n)
    assert (rep.lower, rep.upper) == (lower, upper)
    assert rep.final_is_U
    assert rep.checkpoints["RII_a"] == mid
    assert rep.checkpoints["RII_b"] == n + 1
    assert len(rep.per_move_deltas) == rep.moves_executed


def test_deltas_sum_to_minus_v_n():
    n = 3
    rep = verify_untangle(n)
    total = sum(rep.per_move_deltas, X(0) - X(0))
    assert total == -v_n(n)
    assert all(abs(g_hom(v)) <= 1 for v in rep.per_move_deltas)


def test_report_serializations():
    rep = verify_untangle(2)
    data = rep.as_dict()
    assert data["moves_executed"] == 14
    assert data["phase_counts"] == {"RIII": 6, "RII_a": 3, "RII_b": 2, "RI": 3}
    assert len(data["per_move_deltas"]) == 14
    assert "final_is_U" in rep.table()
    assert '"upper": 14' in rep.to_json()


def test_broken_sequence_reports_move_index():
    phases = untangle_phases(2)
    # Swap in a move whose site does not exist at that point.
    bad = parse_move(format_move(phases[3][0]))
    phases[0] = [bad] + phases[0][1:]
    with pytest.raises(UntangleError) as info:
        verify_untangle(2, phases)
    assert info.value.move_index == 0


def test_wrong_phase_split_fails_a_checkpoint():
    phases = untangle_phases(2)
    phases[1], phases[2] = phases[1][:-1], [phases[1][-1]] + phases[2]
    with pytest.raises(UntangleError):
        verify_untangle(2, phases)


def test_faces_of_dn():
    assert len(faces(gen_dn(4))) == 29
