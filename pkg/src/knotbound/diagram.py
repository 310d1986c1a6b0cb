"""
Oriented knot and link diagrams on the sphere, stored as PD codes.

Each crossing is a 4-tuple of edge labels ``(a, b, c, d)`` listed
counterclockwise starting from the incoming under-edge ``a``; ``c`` is the
outgoing under-edge.  The over-strand runs either ``d -> b`` (a positive
crossing) or ``b -> d`` (negative).  Crossing-free circles cannot be written
as PD tuples, so a :class:`Diagram` also carries a ``free_circles`` count.

Slot positions 0..3 refer to ``a, b, c, d``.  A *dart* ``(c, p)`` is the edge
at slot ``p`` of crossing ``c``, traversed away from that crossing.
"""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Sequence

__all__ = [
    "DiagramError",
    "Diagram",
    "Face",
    "LinkComponentMap",
    "ValidationReport",
    "parse_pd",
    "format_pd",
    "diagram_from_json",
    "diagram_to_json",
    "validate",
    "trace_components",
    "crossing_sign",
    "writhe",
    "smooth",
    "linking_number",
    "faces",
    "mirror",
    "canonical_code",
    "unknot",
]


class DiagramError(ValueError):
    """Raised for malformed, non-planar or inconsistently oriented input."""


Dart = tuple[int, int]


@dataclass(frozen=True)
class Diagram:
    crossings: tuple[tuple[int, int, int, int], ...]
    free_circles: int = 0
    signs: tuple[int, ...] | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        crossings = tuple(tuple(int(x) for x in c) for c in self.crossings)
        object.__setattr__(self, "crossings", crossings)
        if self.free_circles < 0:
            raise DiagramError("free_circles must be non-negative")
        if self.signs is None:
            object.__setattr__(self, "signs", _orient(crossings))
        else:
            object.__setattr__(self, "signs", tuple(self.signs))

    def __len__(self) -> int:
        return len(self.crossings)

    @property
    def num_crossings(self) -> int:
        return len(self.crossings)

    def over_in(self, c: int) -> int:
        """Slot at which the over-strand enters crossing ``c``."""
        return 3 if self.signs[c] > 0 else 1

    def is_incoming(self, c: int, p: int) -> bool:
        return p == 0 or p == self.over_in(c)

    def endpoints(self) -> dict[int, list[Dart]]:
        ends: dict[int, list[Dart]] = defaultdict(list)
        for ci, cr in enumerate(self.crossings):
            for p, label in enumerate(cr):
                ends[label].append((ci, p))
        return ends

    def is_trivial(self) -> bool:
        """True for the crossing-free one-component diagram."""
        return not self.crossings and self.free_circles == 1

    @classmethod
    def from_pd(cls, crossings: Iterable[Sequence[int]], free_circles: int = 0) -> Diagram:
        """Validate raw PD tuples and return the canonically relabeled diagram."""
        raw = cls(tuple(tuple(c) for c in crossings), free_circles)
        report = validate(raw, require_canonical_labels=False)
        if not report.valid:
            raise DiagramError("; ".join(report.violations))
        return _assemble([list(c) for c in raw.crossings], list(raw.signs), raw.free_circles)


def unknot() -> Diagram:
    """The trivial diagram U."""
    return Diagram((), 1)


# -- orientation ---------------------------------------------------------------


def _check_labels(crossings) -> dict[int, list[Dart]]:
    ends: dict[int, list[Dart]] = defaultdict(list)
    for ci, cr in enumerate(crossings):
        if len(cr) != 4:
            raise DiagramError(f"crossing {ci} does not have 4 slots")
        for p, label in enumerate(cr):
            if label < 0:
                raise DiagramError(f"negative edge label {label}")
            ends[label].append((ci, p))
    for label, occ in ends.items():
        if len(occ) != 2:
            raise DiagramError(f"edge label {label} appears {len(occ)} times (expected 2)")
    return ends


def _orient(crossings) -> tuple[int, ...]:
    """Recover crossing signs from a PD code.

    Under-strands are oriented by the slot convention; over-strands are
    propagated along edges.  A component that is over at every crossing it
    touches is oriented so that, at the lowest-index crossing it meets, its
    incoming edge carries the smaller label.
    """
    ends = _check_labels(crossings)
    m = len(crossings)
    over_in: list[int | None] = [None] * m

    def head_known(c, p):
        # True/False if (c, p) is known to be incoming/outgoing, None if unknown.
        if p == 0:
            return True
        if p == 2:
            return False
        if over_in[c] is None:
            return None
        return over_in[c] == p

    def other(c, p):
        a, b = ends[crossings[c][p]]
        return b if a == (c, p) else a

    def settle(c, p, incoming, stack):
        if p in (0, 2):
            if (p == 0) != incoming:
                raise DiagramError(
                    f"inconsistent over/under tracing at crossing {c} slot {p}")
            return
        want = p if incoming else (p + 2) % 4
        if over_in[c] is None:
            over_in[c] = want
            stack.append(c)
        elif over_in[c] != want:
            raise DiagramError(f"inconsistent over/under tracing at crossing {c}")

    def propagate(stack):
        while stack:
            c = stack.pop()
            for p in range(4):
                h = head_known(c, p)
                if h is None:
                    continue
                oc, op = other(c, p)
                settle(oc, op, not h, stack)

    stack = []
    for c in range(m):
        for p in (0, 2):
            oc, op = other(c, p)
            settle(oc, op, p == 2, stack)
    propagate(stack)
    for c in range(m):
        if over_in[c] is None:
            b, d = crossings[c][1], crossings[c][3]
            over_in[c] = 1 if b < d else 3
            propagate([c])
    return tuple(1 if o == 3 else -1 for o in over_in)


# -- construction from working data ----------------------------------------------


def _make_crossing(labels: Sequence[int], under_in: int, over_in: int) -> tuple[list[int], int]:
    """Rotate four ccw labels so the incoming under-edge comes first.

    ``under_in`` and ``over_in`` are positions within ``labels``.
    """
    assert (under_in - over_in) % 2 == 1
    rotated = [labels[(under_in + i) % 4] for i in range(4)]
    sign = 1 if over_in == (under_in + 3) % 4 else -1
    return rotated, sign


def _successors(crossings, signs):
    """Map each edge label to the label that follows it along its component."""
    succ = {}
    for c, cr in enumerate(crossings):
        succ[cr[0]] = cr[2]
        oi = 3 if signs[c] > 0 else 1
        succ[cr[oi]] = cr[(oi + 2) % 4]
    return succ


def _assemble(crossings, signs, free_circles: int) -> Diagram:
    """Canonically relabel working PD data into a Diagram.

    Components are taken in order of the lowest crossing they touch; each is
    labeled consecutively starting from its incoming edge at that crossing
    (the under-edge when the component crosses itself there).  This choice
    also makes label-based orientation recovery reproduce ``signs``.
    """
    succ = _successors(crossings, signs)
    relabel: dict[int, int] = {}
    nxt = 0
    for c, cr in enumerate(crossings):
        oi = 3 if signs[c] > 0 else 1
        for start in (cr[0], cr[oi]):
            if start in relabel:
                continue
            e = start
            while e not in relabel:
                relabel[e] = nxt
                nxt += 1
                e = succ[e]
    out = tuple(tuple(relabel[x] for x in cr) for cr in crossings)
    return Diagram(out, free_circles, tuple(signs))


def _remove_crossings(d: Diagram, removed: Iterable[int], joins=None) -> tuple[list, list, int]:
    """Delete crossings, splicing their strands through.

    By default each removed crossing joins slot 0 to 2 and 1 to 3.  ``joins``
    overrides this with explicit label pairs.  Returns working crossings,
    signs and the new free circle count.
    """
    removed = set(removed)
    parent: dict[int, int] = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    if joins is None:
        joins = []
        for c in removed:
            cr = d.crossings[c]
            joins += [(cr[0], cr[2]), (cr[1], cr[3])]
    for a, b in joins:
        union(a, b)
    touched = {find(x) for x in parent}
    crossings, signs = [], []
    alive = set()
    for c, cr in enumerate(d.crossings):
        if c in removed:
            continue
        row = [find(x) for x in cr]
        alive.update(row)
        crossings.append(row)
        signs.append(d.signs[c])
    circles = len(touched - alive)
    return crossings, signs, d.free_circles + circles


# -- text and JSON formats ---------------------------------------------------------


def parse_pd(text: str, free_circles: int | None = None) -> Diagram:
    """Parse the line-based PD format.

    One crossing per line as ``X a b c d``; an optional ``circles k`` line
    gives the number of crossing-free circles; ``#`` starts a comment.  The
    ``free_circles`` argument, when given, overrides the header.  Text that
    is a JSON object is accepted too (see :func:`diagram_from_json`).
    """
    if text.lstrip().startswith("{"):
        d = diagram_from_json(text)
        if free_circles is not None:
            d = Diagram.from_pd(d.crossings, free_circles)
        return d
    crossings = []
    circles = 0
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        head = parts[0]
        try:
            if head == "X" and len(parts) == 5:
                crossings.append(tuple(int(x) for x in parts[1:]))
            elif head == "circles" and len(parts) == 2:
                circles = int(parts[1])
            else:
                raise ValueError
        except ValueError:
            raise DiagramError(f"line {lineno}: cannot parse {raw!r}") from None
    if free_circles is not None:
        circles = free_circles
    return Diagram.from_pd(crossings, circles)


def format_pd(d: Diagram) -> str:
    lines = []
    if d.free_circles:
        lines.append(f"circles {d.free_circles}")
    lines += ["X " + " ".join(str(x) for x in cr) for cr in d.crossings]
    return "\n".join(lines) + "\n"


def diagram_from_json(text: str) -> Diagram:
    try:
        obj = json.loads(text)
        crossings = [tuple(int(x) for x in c) for c in obj.get("crossings", [])]
        circles = int(obj.get("free_circles", 0))
    except (ValueError, TypeError, AttributeError) as exc:
        raise DiagramError(f"bad JSON diagram: {exc}") from None
    return Diagram.from_pd(crossings, circles)


def diagram_to_json(d: Diagram) -> str:
    return json.dumps({"crossings": [list(c) for c in d.crossings],
                       "free_circles": d.free_circles})


# -- structure ---------------------------------------------------------------------


@dataclass(frozen=True)
class LinkComponentMap:
    component_of: dict[int, int]
    component_count: int


@dataclass(frozen=True)
class Face:
    darts: tuple[Dart, ...]
    edges: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.darts)


@dataclass
class ValidationReport:
    valid: bool
    V: int
    E: int
    F: int
    component_count: int
    connected_pieces: int
    violations: list[str]

    def as_dict(self) -> dict:
        return {
            "valid": self.valid, "V": self.V, "E": self.E, "F": self.F,
            "components": self.component_count,
            "connected_pieces": self.connected_pieces,
            "violations": list(self.violations),
        }


def trace_components(d: Diagram) -> LinkComponentMap:
    succ = _successors(d.crossings, d.signs)
    comp: dict[int, int] = {}
    count = 0
    for start in sorted(succ):
        if start in comp:
            continue
        e = start
        while e not in comp:
            comp[e] = count
            e = succ[e]
        count += 1
    return LinkComponentMap(comp, count + d.free_circles)


def _pieces(d: Diagram) -> list[int]:
    """Connected-piece id for each crossing of the underlying 4-valent graph."""
    parent = list(range(len(d.crossings)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for occ in d.endpoints().values():
        (c1, _), (c2, _) = occ
        parent[find(c1)] = find(c2)
    return [find(c) for c in range(len(d.crossings))]


def _all_faces(d: Diagram) -> list[Face]:
    ends = d.endpoints()
    seen = set()
    result = []
    for c in range(len(d.crossings)):
        for p in range(4):
            if (c, p) in seen:
                continue
            darts, edges = [], []
            cur = (c, p)
            while cur not in seen:
                seen.add(cur)
                darts.append(cur)
                label = d.crossings[cur[0]][cur[1]]
                edges.append(label)
                a, b = ends[label]
                oc, op = b if a == cur else a
                cur = (oc, (op + 3) % 4)
            result.append(Face(tuple(darts), tuple(edges)))
    return result


def faces(d: Diagram) -> list[Face]:
    """Faces of a connected diagram, each traversed with its interior on the left.

    Raises DiagramError for a disconnected crossing graph; use
    :func:`validate` to inspect such diagrams.
    """
    if d.crossings and len(set(_pieces(d))) > 1:
        raise DiagramError("faces() requires a connected diagram")
    return _all_faces(d)


def validate(d: Diagram, require_canonical_labels: bool = True) -> ValidationReport:
    violations = []
    m = len(d.crossings)
    labels = sorted(x for cr in d.crossings for x in cr)
    if require_canonical_labels and labels != sorted(list(range(2 * m)) * 2):
        violations.append("edge labels are not exactly {0..2m-1}, each twice")
    try:
        _check_labels(d.crossings)
        _orient(d.crossings)
    except DiagramError as exc:
        violations.append(str(exc))
        return ValidationReport(False, m, 2 * m, 0, 0, 0, violations)
    pieces = len(set(_pieces(d))) if m else 0
    F = len(_all_faces(d)) if m else 0
    if m:
        # Euler characteristic of the sphere, allowing several pieces.
        expected = m + 1 + pieces
        if F != expected:
            violations.append(f"non-planar rotation system: {F} faces, expected {expected}")
    try:
        comps = trace_components(d).component_count
    except KeyError:
        violations.append("component tracing failed")
        comps = 0
    return ValidationReport(not violations, m, 2 * m, F, comps, pieces, violations)


def crossing_sign(d: Diagram, c: int) -> int:
    return d.signs[c]


def writhe(d: Diagram) -> int:
    return sum(d.signs)


def smooth(d: Diagram, c: int) -> Diagram:
    """Oriented smoothing at crossing ``c``.

    Incoming under joins outgoing over and incoming over joins outgoing
    under; the remaining crossings keep their signs.
    """
    if not 0 <= c < len(d.crossings):
        raise IndexError(f"crossing index {c} out of range")
    cr = d.crossings[c]
    oi = d.over_in(c)
    joins = [(cr[0], cr[(oi + 2) % 4]), (cr[oi], cr[2])]
    crossings, signs, circles = _remove_crossings(d, [c], joins)
    return _assemble(crossings, signs, circles)


def linking_number(d: Diagram, cm: LinkComponentMap | None = None) -> int:
    if cm is None:
        cm = trace_components(d)
    if cm.component_count != 2:
        raise DiagramError(f"linking number needs 2 components, got {cm.component_count}")
    total = 0
    for c, cr in enumerate(d.crossings):
        if cm.component_of[cr[0]] != cm.component_of[cr[1]]:
            total += d.signs[c]
    if total % 2:
        raise DiagramError("odd inter-component sign sum; tracing is inconsistent")
    return total // 2


def mirror(d: Diagram) -> Diagram:
    """Swap over and under at every crossing."""
    crossings, signs = [], []
    for c, cr in enumerate(d.crossings):
        q = d.over_in(c)
        row, s = _make_crossing(cr, q, 0)
        crossings.append(row)
        signs.append(s)
    return _assemble(crossings, signs, d.free_circles)


def canonical_code(d: Diagram) -> tuple:
    """A relabeling- and reordering-invariant key for diagram equality."""
    if not d.crossings:
        return ((), d.free_circles)
    ends = d.endpoints()
    piece = _pieces(d)
    groups = defaultdict(list)
    for c, pid in enumerate(piece):
        groups[pid].append(c)
    codes = []
    for members in groups.values():
        best = None
        for root in members:
            order = [root]
            index = {root: 0}
            labels: dict[int, int] = {}
            rows = []
            i = 0
            while i < len(order):
                c = order[i]
                row = []
                for p in range(4):
                    label = d.crossings[c][p]
                    if label not in labels:
                        labels[label] = len(labels)
                    row.append(labels[label])
                    for oc, _ in ends[label]:
                        if oc not in index:
                            index[oc] = len(order)
                            order.append(oc)
                rows.append((tuple(row), d.signs[c]))
                i += 1
            code = tuple(rows)
            if best is None or code < best:
                best = code
        codes.append(best)
    return (tuple(sorted(codes)), d.free_circles)
