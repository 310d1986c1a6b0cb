"""
Reidemeister moves on PD-code diagrams.

Reducing moves are addressed by a face of the diagram (monogon, bigon or
trigon).  Increasing moves are addressed by an edge (RI) or by two darts on a
common face (RII).  Records index faces in the order :func:`faces` returns
them, so a record only makes sense for the diagram it was enumerated on.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .diagram import (
    Diagram,
    DiagramError,
    _assemble,
    _make_crossing,
    _remove_crossings,
    faces,
    trace_components,
    unknot,
)
from .group import GroupElement
from .invariant import g_hom, i_lk, is_in_R

__all__ = [
    "MoveError",
    "MoveRecord",
    "Verdict",
    "enumerate_moves",
    "reducing_moves",
    "apply",
    "apply_tracked",
    "inverse_site",
    "verify_change",
    "random_unknot",
    "FuzzReport",
    "change_table_fuzz",
    "format_move",
    "parse_move",
    "format_trace",
    "parse_trace",
]


class MoveError(ValueError):
    """A move record does not describe an admissible site of the diagram."""


@dataclass(frozen=True)
class MoveRecord:
    kind: str                       # "RI" | "RII" | "RIII"
    direction: str = "reduce"       # "reduce" | "increase"; ignored for RIII
    face: int | None = None         # reducing moves and RII increase
    darts: tuple[int, ...] = ()     # RII increase: two dart positions within the face
    over: str | None = None         # RII increase: "first" | "second" edge goes over
    edge: int | None = None         # RI increase; None means a free circle
    sign: int | None = None         # RI increase
    side: str | None = None         # RI increase: "L" | "R"

    @property
    def crossing_delta(self) -> int:
        step = {"RI": 1, "RII": 2, "RIII": 0}[self.kind]
        return step if self.direction == "increase" else -step


# -- enumeration -------------------------------------------------------------------


def _bigon_ok(d: Diagram, face) -> bool:
    (c1, p1), (c2, p2) = face.darts
    if c1 == c2:
        return False
    # slot of the first side's edge at its far end
    q = (p2 + 1) % 4
    return p1 % 2 == q % 2


def _trigon_parts(d: Diagram, face):
    """Name the corners and sides of a trigon face.

    Returns ``(A, B, C, ax, by, cz)`` where side x runs A->B, y runs B->C,
    z runs C->A and ``ax`` is the slot of x at A (similarly ``by``, ``cz``).
    """
    (A, ax), (B, by), (C, cz) = face.darts
    return A, B, C, ax, by, cz


def _trigon_ok(d: Diagram, face) -> bool:
    A, B, C, ax, by, cz = _trigon_parts(d, face)
    if len({A, B, C}) != 3:
        return False
    bx = (by + 1) % 4
    cy = (cz + 1) % 4
    x_over_z = ax % 2 == 1
    x_over_y = bx % 2 == 1
    y_over_z = cy % 2 == 1
    cyclic = (x_over_y and y_over_z and not x_over_z) or \
             (not x_over_y and not y_over_z and x_over_z)
    return not cyclic


def reducing_moves(d: Diagram) -> list[MoveRecord]:
    if not d.crossings:
        return []
    out = []
    # Two monogons at one crossing (or two bigons on one crossing pair) give
    # the same move on the sphere; report it once.
    seen = set()
    for fi, face in enumerate(faces(d)):
        n = len(face)
        key = frozenset(c for c, _ in face.darts)
        if n in (1, 2) and key in seen:
            continue
        if n == 1:
            seen.add(key)
            out.append(MoveRecord("RI", "reduce", face=fi))
        elif n == 2 and _bigon_ok(d, face):
            seen.add(key)
            out.append(MoveRecord("RII", "reduce", face=fi))
        elif n == 3 and _trigon_ok(d, face):
            out.append(MoveRecord("RIII", "reduce", face=fi))
    return out


def increasing_moves(d: Diagram) -> list[MoveRecord]:
    out = []
    if not d.crossings:
        if d.free_circles:
            for sign in (1, -1):
                for side in ("L", "R"):
                    out.append(MoveRecord("RI", "increase", edge=None, sign=sign, side=side))
        return out
    for e in range(2 * len(d.crossings)):
        for sign in (1, -1):
            for side in ("L", "R"):
                out.append(MoveRecord("RI", "increase", edge=e, sign=sign, side=side))
    for fi, face in enumerate(faces(d)):
        for i in range(len(face)):
            for j in range(len(face)):
                if i == j or face.edges[i] == face.edges[j]:
                    continue
                for over in ("first", "second"):
                    out.append(MoveRecord("RII", "increase", face=fi, darts=(i, j), over=over))
    return out


def enumerate_moves(d: Diagram) -> list[MoveRecord]:
    """Every reducing move plus the finite census of increasing moves."""
    return reducing_moves(d) + increasing_moves(d)


# -- application -------------------------------------------------------------------


def _face(d: Diagram, m: MoveRecord):
    fs = faces(d)
    if m.face is None or not 0 <= m.face < len(fs):
        raise MoveError(f"no face {m.face}")
    return fs[m.face]


def _fresh(d: Diagram):
    counter = [2 * len(d.crossings)]

    def new():
        counter[0] += 1
        return counter[0] - 1
    return new


def _working(d: Diagram):
    return [list(cr) for cr in d.crossings], list(d.signs)


def _ri_reduce(d, m):
    face = _face(d, m)
    if len(face) != 1:
        raise MoveError("RI reduce needs a monogon")
    (c, _), = face.darts
    crossings, signs, circles = _remove_crossings(d, [c])
    mapping = _shift_mapping(len(d.crossings), {c})
    return _assemble(crossings, signs, circles), mapping


def _rii_reduce(d, m):
    face = _face(d, m)
    if len(face) != 2 or not _bigon_ok(d, face):
        raise MoveError("RII reduce needs a bigon with one strand over at both crossings")
    gone = {face.darts[0][0], face.darts[1][0]}
    crossings, signs, circles = _remove_crossings(d, gone)
    mapping = _shift_mapping(len(d.crossings), gone)
    return _assemble(crossings, signs, circles), mapping


def _shift_mapping(m, gone):
    mapping, k = {}, 0
    for c in range(m):
        if c in gone:
            mapping[c] = None
        else:
            mapping[c] = k
            k += 1
    return mapping


def _riii(d, m):
    face = _face(d, m)
    if len(face) != 3 or not _trigon_ok(d, face):
        raise MoveError("RIII needs a trigon whose strands are linearly ordered")
    A, B, C, ax, by, cz = _trigon_parts(d, face)
    bx, cy, az = (by + 1) % 4, (cz + 1) % 4, (ax + 1) % 4
    cr = d.crossings
    x, y, z = cr[A][ax], cr[B][by], cr[C][cz]
    x_A, z_A = cr[A][(ax + 2) % 4], cr[A][(az + 2) % 4]
    y_B, x_B = cr[B][(by + 2) % 4], cr[B][(bx + 2) % 4]
    z_C, y_C = cr[C][(cz + 2) % 4], cr[C][(cy + 2) % 4]
    del x, y, z

    # strand directions along the trigon: x from A to B, y from B to C, z from C to A
    x_fwd = not d.is_incoming(A, ax)
    y_fwd = not d.is_incoming(B, by)
    z_fwd = not d.is_incoming(C, cz)
    x_over_z = ax % 2 == 1
    x_over_y = bx % 2 == 1
    y_over_z = cy % 2 == 1

    new = _fresh(d)
    x2, y2, z2 = new(), new(), new()
    crossings, signs = _working(d)

    def build(labels, first_fwd_in, first_back_in, second_fwd_in, second_back_in,
              first_fwd, second_fwd, first_over):
        # positions 0,2 carry the first strand, 1,3 the second
        f_in = first_fwd_in if first_fwd else first_back_in
        s_in = second_fwd_in if second_fwd else second_back_in
        if first_over:
            return _make_crossing(labels, s_in, f_in)
        return _make_crossing(labels, f_in, s_in)

    # A' = [x'', z'', x_B, z_C]; B' = [y'', x'', y_C, x_A]; C' = [z'', y'', z_A, y_B]
    crossings[A], signs[A] = build([x2, z2, x_B, z_C], 0, 2, 3, 1, x_fwd, z_fwd, x_over_z)
    crossings[B], signs[B] = build([y2, x2, y_C, x_A], 0, 2, 3, 1, y_fwd, x_fwd, not x_over_y)
    crossings[C], signs[C] = build([z2, y2, z_A, y_B], 0, 2, 3, 1, z_fwd, y_fwd, not y_over_z)
    mapping = {c: c for c in range(len(cr))}
    return _assemble(crossings, signs, d.free_circles), mapping


def _ri_increase(d, m):
    if m.sign not in (1, -1) or m.side not in ("L", "R"):
        raise MoveError("RI increase needs sign +/-1 and side L/R")
    crossings, signs = _working(d)
    new = _fresh(d)
    loop = new()
    if m.edge is None:
        if d.crossings or not d.free_circles:
            raise MoveError("RI on a free circle needs a crossing-free diagram")
        e1 = e2 = new()
        circles = d.free_circles - 1
    else:
        ends = d.endpoints()
        if m.edge not in ends:
            raise MoveError(f"no edge {m.edge}")
        (c1, p1), (c2, p2) = ends[m.edge]
        tail, head = ((c1, p1), (c2, p2)) if not d.is_incoming(c1, p1) else ((c2, p2), (c1, p1))
        e1, e2 = new(), new()
        crossings[tail[0]][tail[1]] = e1
        crossings[head[0]][head[1]] = e2
        circles = d.free_circles
    if m.side == "R":
        labels, first, second = [e1, loop, loop, e2], 0, 1
    else:
        labels, first, second = [e1, e2, loop, loop], 0, 3
    for under_in, over_in in ((first, second), (second, first)):
        row, s = _make_crossing(labels, under_in, over_in)
        if s == m.sign:
            break
    crossings.append(row)
    signs.append(s)
    mapping = {c: c for c in range(len(d.crossings))}
    return _assemble(crossings, signs, circles), mapping


def _rii_increase(d, m):
    face = _face(d, m)
    if len(m.darts) != 2 or m.over not in ("first", "second"):
        raise MoveError("RII increase needs two dart positions and an over choice")
    i, j = m.darts
    if not (0 <= i < len(face) and 0 <= j < len(face)) or i == j:
        raise MoveError("dart positions out of range")
    if face.edges[i] == face.edges[j]:
        raise MoveError("RII increase needs two distinct edges")
    ends = d.endpoints()

    def far(dart):
        a, b = ends[d.crossings[dart[0]][dart[1]]]
        return b if a == dart else a

    # The face lies to the left of both darts: edge e is crossed, edge f is
    # pushed across it as a finger.
    eW = face.darts[i]
    eE = far(eW)
    fE = face.darts[j]
    fW = far(fE)
    e_fwd = not d.is_incoming(*eW)   # e runs from eW to eE
    f_fwd = not d.is_incoming(*fW)   # f runs from fW to fE

    crossings, signs = _working(d)
    new = _fresh(d)
    eL, em, eR, fa, ftip, fc = (new() for _ in range(6))
    crossings[eW[0]][eW[1]] = eL
    crossings[eE[0]][eE[1]] = eR
    crossings[fE[0]][fE[1]] = fc
    crossings[fW[0]][fW[1]] = fa
    c1 = [em, fa, eL, ftip]
    c2 = [eR, fc, em, ftip]
    e_in = 2 if e_fwd else 0
    c1_f_in, c2_f_in = (1, 3) if f_fwd else (3, 1)
    e_over = m.over == "first"
    for labels, f_in in ((c1, c1_f_in), (c2, c2_f_in)):
        if e_over:
            row, s = _make_crossing(labels, f_in, e_in)
        else:
            row, s = _make_crossing(labels, e_in, f_in)
        crossings.append(row)
        signs.append(s)
    mapping = {c: c for c in range(len(d.crossings))}
    return _assemble(crossings, signs, d.free_circles), mapping


def apply_tracked(d: Diagram, m: MoveRecord) -> tuple[Diagram, dict[int, int | None]]:
    """Apply a move and report where each old crossing ended up."""
    if m.kind == "RIII":
        return _riii(d, m)
    if m.kind == "RI":
        return _ri_reduce(d, m) if m.direction == "reduce" else _ri_increase(d, m)
    if m.kind == "RII":
        return _rii_reduce(d, m) if m.direction == "reduce" else _rii_increase(d, m)
    raise MoveError(f"unknown move kind {m.kind!r}")


def apply(d: Diagram, m: MoveRecord) -> Diagram:
    return apply_tracked(d, m)[0]


def inverse_site(before: Diagram, after: Diagram, m: MoveRecord) -> MoveRecord:
    """A move on ``after`` that undoes ``m`` (up to relabeling and crossing order)."""
    from .diagram import canonical_code

    target = canonical_code(before)
    if m.kind == "RIII":
        candidates = [r for r in reducing_moves(after) if r.kind == "RIII"]
    elif m.direction == "increase":
        candidates = [r for r in reducing_moves(after) if r.kind == m.kind]
    else:
        candidates = [r for r in increasing_moves(after) if r.kind == m.kind]
    for r in candidates:
        if canonical_code(apply(after, r)) == target:
            return r
    raise MoveError("no inverse move found")


# -- change table ------------------------------------------------------------------


@dataclass(frozen=True)
class Verdict:
    ok: bool
    delta: GroupElement
    kind: str
    form: str | None
    g_change: int

    def __bool__(self) -> bool:
        return self.ok


def verify_change(before: Diagram, after: Diagram, m: MoveRecord,
                  before_value: GroupElement | None = None,
                  after_value: GroupElement | None = None) -> Verdict:
    """Check that I_lk changed by an element of R of the move's own type."""
    if before_value is None:
        before_value = i_lk(before)
    if after_value is None:
        after_value = i_lk(after)
    delta = after_value - before_value
    gen = is_in_R(delta)
    ok = gen is not None and gen.kind == m.kind
    return Verdict(ok, delta, m.kind, gen.form if gen else None, g_hom(delta))


# -- random unknots ----------------------------------------------------------------


def random_unknot(seed: int, target_crossings: int,
                  increase_prob: float = 0.8) -> tuple[Diagram, list[MoveRecord]]:
    """Grow a diagram of the unknot from U by random moves.

    Each step picks an increasing move with probability ``increase_prob``
    and otherwise a reducing move (RIII counts as reducing), falling back to
    the other family when the chosen one has no site.  Moves that would
    overshoot ``target_crossings`` are skipped.  Deterministic per seed.
    """
    rng = random.Random(seed)
    d = unknot()
    trace: list[MoveRecord] = []
    guard = 0
    while len(d.crossings) != target_crossings:
        guard += 1
        if guard > 100 * (target_crossings + 1):
            raise RuntimeError("random_unknot failed to reach the target size")
        room = target_crossings - len(d.crossings)
        inc = [r for r in increasing_moves(d) if r.crossing_delta <= room]
        red = reducing_moves(d)
        pool = inc if (rng.random() < increase_prob and inc) or not red else red
        if not pool:
            break
        m = rng.choice(pool)
        d = apply(d, m)
        trace.append(m)
    return d, trace


@dataclass
class FuzzReport:
    moves_checked: int = 0
    failures: list[str] = field(default_factory=list)
    forms_seen: dict[str, int] = field(default_factory=dict)
    max_abs_g: int = 0

    @property
    def ok(self) -> bool:
        return not self.failures

    def as_dict(self) -> dict:
        return {"moves_checked": self.moves_checked, "failures": list(self.failures),
                "forms_seen": dict(sorted(self.forms_seen.items())),
                "max_abs_g": self.max_abs_g, "ok": self.ok}


def change_table_fuzz(seed: int, iters: int, max_crossings: int = 30,
                      walk: int = 10) -> FuzzReport:
    """Apply ``iters`` random moves to random unknot diagrams and check each.

    Every move must keep the diagram a valid knot diagram, change I_lk by
    an element of R of its own kind, and move g by at most 1.  Diagrams are
    resampled every ``walk`` moves.
    """
    from .diagram import validate

    if max_crossings < 2:
        raise ValueError("max_crossings must be at least 2")
    rng = random.Random(seed)
    report = FuzzReport()
    d = value = None
    while report.moves_checked < iters:
        if report.moves_checked % walk == 0 or d is None:
            d, _ = random_unknot(rng.randrange(2**31), rng.randint(0, max_crossings - 2))
            value = i_lk(d)
        room = max_crossings - len(d.crossings)
        pool = [m for m in enumerate_moves(d) if m.crossing_delta <= room]
        m = rng.choice(pool)
        idx = report.moves_checked
        after = apply(d, m)
        report.moves_checked += 1
        rep = validate(after)
        if not rep.valid or not is_knot(after):
            report.failures.append(f"move {idx}: {format_move(m)} gave an invalid diagram")
            d = None
            continue
        after_value = i_lk(after)
        v = verify_change(d, after, m, value, after_value)
        if v.form:
            report.forms_seen[v.form] = report.forms_seen.get(v.form, 0) + 1
        report.max_abs_g = max(report.max_abs_g, abs(v.g_change))
        if not v.ok or abs(v.g_change) > 1:
            report.failures.append(f"move {idx}: {format_move(m)} changed I_lk by {v.delta}")
        d, value = after, after_value
    return report


# -- trace files -------------------------------------------------------------------


def format_move(m: MoveRecord) -> str:
    if m.kind == "RIII":
        return f"RIII face={m.face}"
    suffix = "+" if m.direction == "increase" else "-"
    if m.direction == "reduce":
        return f"{m.kind}{suffix} face={m.face}"
    if m.kind == "RI":
        where = "circle" if m.edge is None else f"edge={m.edge}"
        return f"RI+ {where} sign={'+' if m.sign > 0 else '-'} side={m.side}"
    return f"RII+ face={m.face} darts={m.darts[0]},{m.darts[1]} over={m.over}"


def parse_move(line: str) -> MoveRecord:
    parts = line.split()
    if not parts:
        raise ValueError("empty move line")
    head, fields = parts[0], {}
    flags = set()
    for p in parts[1:]:
        if "=" in p:
            k, v = p.split("=", 1)
            fields[k] = v
        else:
            flags.add(p)
    try:
        if head == "RIII":
            return MoveRecord("RIII", "reduce", face=int(fields["face"]))
        kind, direction = head[:-1], {"+": "increase", "-": "reduce"}[head[-1]]
        if kind not in ("RI", "RII"):
            raise KeyError(kind)
        if direction == "reduce":
            return MoveRecord(kind, "reduce", face=int(fields["face"]))
        if kind == "RI":
            edge = None if "circle" in flags else int(fields["edge"])
            sign = {"+": 1, "-": -1}[fields["sign"]]
            if fields["side"] not in ("L", "R"):
                raise KeyError("side")
            return MoveRecord("RI", "increase", edge=edge, sign=sign, side=fields["side"])
        i, j = (int(x) for x in fields["darts"].split(","))
        if fields["over"] not in ("first", "second"):
            raise KeyError("over")
        return MoveRecord("RII", "increase", face=int(fields["face"]), darts=(i, j),
                          over=fields["over"])
    except (KeyError, ValueError) as exc:
        raise ValueError(f"cannot parse move {line!r}: {exc}") from None


def format_trace(moves: list[MoveRecord], diagram: str | None = None,
                 seed: int | None = None) -> str:
    lines = []
    if diagram is not None:
        lines.append(f"diagram {diagram}")
    if seed is not None:
        lines.append(f"seed {seed}")
    lines += [format_move(m) for m in moves]
    return "\n".join(lines) + "\n"


def parse_trace(text: str) -> tuple[dict, list[MoveRecord]]:
    header, moves = {}, []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key = line.split()[0]
        if key in ("diagram", "seed"):
            header[key] = line.split(None, 1)[1] if " " in line else ""
            continue
        moves.append(parse_move(line))
    return header, moves


def is_knot(d: Diagram) -> bool:
    return trace_components(d).component_count == 1


def check_valid(d: Diagram) -> None:
    from .diagram import validate

    report = validate(d)
    if not report.valid:
        raise DiagramError("; ".join(report.violations))
