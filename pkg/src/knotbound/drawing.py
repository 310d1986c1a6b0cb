"""Turn a closed polygonal plane curve into a PD code."""

from __future__ import annotations

import math
from collections.abc import Callable, Sequence
from fractions import Fraction

from .diagram import Diagram, DiagramError, _assemble, _make_crossing

Point = tuple[int, int]


def _cross(ax, ay, bx, by):
    return ax * by - ay * bx


def _intersect(p, q, r, s):
    """Parameters (t, u) of a proper crossing of segments pq and rs, else None."""
    dx1, dy1 = q[0] - p[0], q[1] - p[1]
    dx2, dy2 = s[0] - r[0], s[1] - r[1]
    den = _cross(dx1, dy1, dx2, dy2)
    if den == 0:
        if _cross(r[0] - p[0], r[1] - p[1], dx1, dy1) == 0:
            # collinear: reject any overlap
            lo1, hi1 = sorted((0, dx1 * dx1 + dy1 * dy1))
            for pt in (r, s):
                proj = (pt[0] - p[0]) * dx1 + (pt[1] - p[1]) * dy1
                if lo1 < proj < hi1:
                    raise DiagramError("overlapping collinear segments")
        return None
    t = Fraction(_cross(r[0] - p[0], r[1] - p[1], dx2, dy2), den)
    u = Fraction(_cross(r[0] - p[0], r[1] - p[1], dx1, dy1), den)
    if 0 < t < 1 and 0 < u < 1:
        return t, u
    if 0 <= t <= 1 and 0 <= u <= 1:
        raise DiagramError("curve passes through a vertex of another segment")
    return None


def pd_from_polygon(points: Sequence[Point], tags: Sequence[str],
                    sign_of: Callable[[str, str], int]) -> tuple[Diagram, list[tuple[str, str]]]:
    """PD code of a closed polygon with prescribed crossing signs.

    ``points[i] -> points[i+1]`` is segment ``i`` with tag ``tags[i]``.  At a
    crossing between segments tagged ``a`` (met first along the curve) and
    ``b``, ``sign_of(a, b)`` picks the sign; the over-strand is chosen to
    realize it.  Crossings are numbered in order of first passage.  Returns
    the diagram and the tag pair of every crossing.
    """
    n = len(points)
    if len(tags) != n:
        raise ValueError("need one tag per segment")
    seg = [(points[i], points[(i + 1) % n]) for i in range(n)]
    events: list[list[tuple[Fraction, int]]] = [[] for _ in range(n)]
    hits = []
    for i in range(n):
        for j in range(i + 1, n):
            if j == i + 1 or (i == 0 and j == n - 1):
                continue
            res = _intersect(*seg[i], *seg[j])
            if res is None:
                continue
            hid = len(hits)
            hits.append((i, j))
            events[i].append((res[0], hid))
            events[j].append((res[1], hid))
    order = []  # (hit id, segment) in curve order
    for i in range(n):
        for _, hid in sorted(events[i]):
            order.append((hid, i))
    if not order:
        return Diagram((), 1), []
    total = len(order)
    passes: dict[int, list[tuple[int, int]]] = {}
    for k, (hid, i) in enumerate(order):
        passes.setdefault(hid, []).append((k, i))

    numbering = {}
    for hid, _ in order:
        numbering.setdefault(hid, len(numbering))
    crossings: list = [None] * len(numbering)
    signs: list = [None] * len(numbering)
    pair_tags: list = [None] * len(numbering)
    for hid, ((k1, s1), (k2, s2)) in passes.items():
        half = []  # (angle, label, pass index, incoming)
        for idx, (k, s) in enumerate(((k1, s1), (k2, s2))):
            (px, py), (qx, qy) = seg[s]
            dx, dy = qx - px, qy - py
            half.append((math.atan2(-dy, -dx), (k - 1) % total, idx, True))
            half.append((math.atan2(dy, dx), k, idx, False))
        half.sort()
        labels = [h[1] for h in half]
        pos = {(h[2], h[3]): p for p, h in enumerate(half)}
        want = sign_of(tags[s1], tags[s2])
        for over in (0, 1):
            row, sgn = _make_crossing(labels, pos[(1 - over, True)], pos[(over, True)])
            if sgn == want:
                break
        else:
            raise DiagramError("cannot realize requested sign")
        c = numbering[hid]
        crossings[c], signs[c] = row, sgn
        pair_tags[c] = (tags[s1], tags[s2])
    return _assemble(crossings, signs, 0), pair_tags
