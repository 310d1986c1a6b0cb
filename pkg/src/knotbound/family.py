"""The diagrams D_n of the unknot and their explicit untangling.

D_n is drawn as a closed polygon and converted to PD.  Two parallel strands
(s1, s2) form a band that twists 2n-1 times along the top (group T) and 2n
times along the bottom (group B).  A third strand spirals n times around the
picture; its k-th pass crosses the vertical strand P1 (group L) and the two
band strands on the right (groups M and R).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .diagram import Diagram, DiagramError, faces
from .drawing import pd_from_polygon
from .group import GroupElement, X, Y
from .invariant import i_lk, lower_bound
from .moves import MoveRecord, apply, apply_tracked, reducing_moves, verify_change

__all__ = [
    "UntangleReport",
    "UntangleError",
    "gen_dn",
    "gen_dn_tagged",
    "v_n",
    "untangle_phases",
    "untangle_sequence",
    "verify_untangle",
]

GROUP_SIGN = {"T": 1, "B": -1, "L": -1, "M": 1, "R": 1}


class UntangleError(RuntimeError):
    """A checkpoint or a change-table check failed while untangling."""

    def __init__(self, message: str, move_index: int | None = None):
        super().__init__(message if move_index is None else f"move {move_index}: {message}")
        self.move_index = move_index


def v_n(n: int) -> GroupElement:
    return n * X(n) + n * X(-n) + (2 * n - 1) * X(-1) + 3 * n * Y(0)


def _polygon(n: int):
    width = 2 * n + 3
    top_in, top_out = n + 2, n + 3
    pts: list[tuple[int, int]] = []
    tags: list[str] = []

    def go(p, tag):
        # tags[i] labels the segment pts[i] -> pts[i+1]
        pts.append(p)
        tags.append(tag)

    def top_twists(row, tag):
        for i in range(2 * n - 1):
            go((1 + i, row), tag)
            row = top_in if row == top_out else top_out
        go((2 * n, row), tag)
        return row

    def bottom_twists(row, tag):
        for i in range(2 * n):
            go((2 * n + 1 - i, row), tag)
            row = -1 if row == 0 else 0
        go((1, row), tag)

    go((0, top_out), "s1_top")
    top_twists(top_out, "s1_top")
    go((width, top_in), "s1_right")
    go((width, 0), "s1_bottom")
    bottom_twists(0, "s1_bottom")
    go((0, 0), "P1")
    go((0, top_in), "s2_top")
    top_twists(top_in, "s2_top")
    go((width + 1, top_out), "s2_right")
    go((width + 1, -1), "s2_bottom")
    bottom_twists(-1, "s2_bottom")
    go((-1, -1), "P2")
    go((-1, 1), "pass0")
    for k in range(n - 1):
        off = n - 1 - k
        go((width + 2 + off, k + 1), "loop")
        go((width + 2 + off, n + 4 + off), "loop")
        go((-2 - off, n + 4 + off), "loop")
        go((-2 - off, k + 2), f"pass{k + 1}")
    go((width + 2, n), "loop")
    go((width + 2, n + 4), "loop")
    go((-1, n + 4), "loop")
    go((-1, n + 3), "s1_top")
    return pts, tags


def _group(a: str, b: str) -> str:
    pair = {a, b}
    if pair == {"s1_top", "s2_top"}:
        return "T"
    if pair == {"s1_bottom", "s2_bottom"}:
        return "B"
    passes = [t for t in pair if t.startswith("pass")]
    if len(passes) == 1:
        other = (pair - set(passes)).pop()
        g = {"P1": "L", "s1_right": "M", "s2_right": "R"}.get(other)
        if g:
            return g
    raise DiagramError(f"unexpected crossing between {a} and {b}")


def gen_dn_tagged(n: int) -> tuple[Diagram, list[tuple[str, int]]]:
    """D_n together with a tag ``(group, index)`` for every crossing.

    For L, M and R the index is the pass of the spiral strand; for T and B it
    is the position along the twist region in order of first passage.
    """
    if not isinstance(n, int) or n < 1:
        raise ValueError("n must be a positive integer")
    pts, tags = _polygon(n)
    d, pairs = pd_from_polygon(pts, tags, lambda a, b: GROUP_SIGN[_group(a, b)])
    labels = []
    seen: dict[str, int] = {}
    for a, b in pairs:
        g = _group(a, b)
        if g in "LMR":
            p = a if a.startswith("pass") else b
            labels.append((g, int(p[4:])))
        else:
            labels.append((g, seen.get(g, 0)))
            seen[g] = seen.get(g, 0) + 1
    return d, labels


def gen_dn(n: int) -> Diagram:
    return gen_dn_tagged(n)[0]


def _track(d, labels, m):
    nd, mapping = apply_tracked(d, m)
    out = [None] * len(nd.crossings)
    for old, new in mapping.items():
        if new is not None:
            out[new] = labels[old]
    return nd, out


def _slide_top(d, labels, out):
    # Push each T crossing across every spiral pass: one RIII per (T, pass).
    done: set[tuple[tuple[str, int], int]] = set()
    while True:
        fs = faces(d)
        for r in reducing_moves(d):
            if r.kind != "RIII":
                continue
            tagged = [labels[c] for c, _ in fs[r.face].darts]
            if sorted(g for g, _ in tagged) != ["M", "R", "T"]:
                continue
            passes = {k for g, k in tagged if g != "T"}
            if len(passes) != 1:
                continue
            key = (next(t for t in tagged if t[0] == "T"), passes.pop())
            if key in done:
                continue
            done.add(key)
            d, labels = _track(d, labels, r)
            out.append(r)
            break
        else:
            return d, labels


def _cancel_twists(d, labels, out):
    while True:
        fs = faces(d)
        for r in reducing_moves(d):
            if r.kind == "RII" and sorted(labels[c][0] for c, _ in fs[r.face].darts) == ["B", "T"]:
                d, labels = _track(d, labels, r)
                out.append(r)
                break
        else:
            return d, labels


def _kinks_only(d) -> list[MoveRecord] | None:
    seq = []
    while d.crossings:
        rs = [r for r in reducing_moves(d) if r.kind == "RI"]
        if not rs:
            return None
        seq.append(rs[0])
        d = apply(d, rs[0])
    return seq if d.free_circles == 1 else None


def _rii_then_kinks(d, left):
    if left == 0:
        tail = _kinks_only(d)
        return None if tail is None else ([], tail)
    for r in reducing_moves(d):
        if r.kind != "RII":
            continue
        res = _rii_then_kinks(apply(d, r), left - 1)
        if res is not None:
            return [r] + res[0], res[1]
    return None


def untangle_phases(n: int) -> list[list[MoveRecord]]:
    d, labels = gen_dn_tagged(n)
    p1: list[MoveRecord] = []
    d, labels = _slide_top(d, labels, p1)
    p2: list[MoveRecord] = []
    d, labels = _cancel_twists(d, labels, p2)
    res = _rii_then_kinks(d, n)
    if res is None:
        raise UntangleError("no RII/RI completion found")
    return [p1, p2, res[0], res[1]]


def untangle_sequence(n: int) -> list[MoveRecord]:
    """Reducing moves taking D_n to the trivial diagram, in four phases.

    Sites are located by structural search on the current diagram, so the
    sequence is valid when applied in order starting from ``gen_dn(n)``.
    """
    return [m for phase in untangle_phases(n) for m in phase]


PHASE_NAMES = ("RIII", "RII_a", "RII_b", "RI")


@dataclass
class UntangleReport:
    n: int
    moves_executed: int
    phase_counts: dict[str, int]
    per_move_deltas: list[GroupElement] = field(repr=False)
    checkpoints: dict[str, int]
    final_is_U: bool
    lower: int
    upper: int

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "moves_executed": self.moves_executed,
            "phase_counts": dict(self.phase_counts),
            "per_move_deltas": [str(v) for v in self.per_move_deltas],
            "checkpoints": dict(self.checkpoints),
            "final_is_U": self.final_is_U,
            "lower": self.lower,
            "upper": self.upper,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2)

    def table(self) -> str:
        rows = [("n", self.n), ("moves_executed", self.moves_executed)]
        rows += [(f"phase {k}", v) for k, v in self.phase_counts.items()]
        rows += [(f"crossings after {k}", v) for k, v in self.checkpoints.items()]
        rows += [("final_is_U", str(self.final_is_U).lower()),
                 ("lower", self.lower), ("upper", self.upper)]
        w = max(len(k) for k, _ in rows)
        return "\n".join(f"{k:<{w}}  {v}" for k, v in rows)


def _expected(n):
    return {
        "phase_counts": {"RIII": n * (2 * n - 1), "RII_a": 2 * n - 1, "RII_b": n, "RI": n + 1},
        "checkpoints": {"start": 7 * n - 1, "RIII": 7 * n - 1, "RII_a": 3 * n + 1,
                        "RII_b": n + 1, "RI": 0},
    }


def verify_untangle(n: int, phases: list[list[MoveRecord]] | None = None) -> UntangleReport:
    """Execute the untangling of D_n, checking every move and checkpoint.

    Raises UntangleError carrying the index of the first failing move.
    """
    if phases is None:
        phases = untangle_phases(n)
    exp = _expected(n)
    d = gen_dn(n)
    start = d
    value = i_lk(d)
    if value != v_n(n):
        raise UntangleError(f"i_lk(D_{n}) = {value}, expected {v_n(n)}")
    checkpoints = {"start": len(d.crossings)}
    deltas = []
    idx = 0
    for name, phase in zip(PHASE_NAMES, phases):
        for m in phase:
            try:
                after = apply(d, m)
            except Exception as exc:  # noqa: BLE001 - report which move broke
                raise UntangleError(f"cannot apply {m.kind}: {exc}", idx) from exc
            after_value = i_lk(after)
            verdict = verify_change(d, after, m, value, after_value)
            if not verdict.ok:
                raise UntangleError(f"{m.kind} changed i_lk by {verdict.delta}", idx)
            deltas.append(verdict.delta)
            d, value = after, after_value
            idx += 1
        checkpoints[name] = len(d.crossings)
        if checkpoints[name] != exp["checkpoints"][name]:
            raise UntangleError(
                f"checkpoint {name}: {checkpoints[name]} crossings, "
                f"expected {exp['checkpoints'][name]}", idx)
    counts = {name: len(p) for name, p in zip(PHASE_NAMES, phases)}
    if counts != exp["phase_counts"]:
        raise UntangleError(f"phase counts {counts}, expected {exp['phase_counts']}")
    final = d.is_trivial()
    if not final:
        raise UntangleError("sequence does not end at the trivial diagram", idx)
    return UntangleReport(
        n=n,
        moves_executed=idx,
        phase_counts=counts,
        per_move_deltas=deltas,
        checkpoints=checkpoints,
        final_is_U=final,
        lower=lower_bound(start, Diagram((), 1)),
        upper=idx,
    )
