"""
The smoothing invariant I_lk, the homomorphism g and R-lengths.

For a knot diagram, every crossing is smoothed in the oriented way; the
resulting two-component link is labeled by its linking number, and the
crossing contributes ``X_lk`` if positive or ``Y_lk`` if negative.
"""

from __future__ import annotations

import heapq
import itertools
import math
from collections.abc import Callable, Hashable
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linprog

from .diagram import Diagram, DiagramError, linking_number, smooth, trace_components
from .group import GroupElement, X, Y

__all__ = [
    "RGenerator",
    "RLengthExceeded",
    "FORMS",
    "i_phi",
    "i_lk",
    "g_hom",
    "is_in_R",
    "generators",
    "lower_bound",
    "r_length_bfs",
    "mirror_element",
]

FORMS = ("RI_X0", "RI_Y0", "RII_XkYk", "RII_XkYk1", "RIII_X", "RIII_Y")

# Move kind whose change-table entries each form belongs to.
FORM_KIND = {
    "RI_X0": "RI", "RI_Y0": "RI",
    "RII_XkYk": "RII", "RII_XkYk1": "RII",
    "RIII_X": "RIII", "RIII_Y": "RIII",
}


@dataclass(frozen=True)
class RGenerator:
    form: str
    k: int
    orientation: int

    @property
    def kind(self) -> str:
        return FORM_KIND[self.form]

    @property
    def value(self) -> GroupElement:
        k = self.k
        base = {
            "RI_X0": X(0),
            "RI_Y0": Y(0),
            "RII_XkYk": X(k) + Y(k),
            "RII_XkYk1": X(k) + Y(k + 1),
            "RIII_X": X(k) - X(k + 1),
            "RIII_Y": Y(k) - Y(k + 1),
        }[self.form]
        return base if self.orientation > 0 else -base


class RLengthExceeded(Exception):
    """No expression of the element within the requested length."""


def i_phi(d: Diagram, phi: Callable[[Diagram], Hashable]) -> GroupElement:
    """Sum X_phi (positive crossings) and Y_phi (negative) over all smoothings.

    ``phi`` is applied to the oriented smoothing of ``d`` at each crossing.
    """
    if trace_components(d).component_count != 1:
        raise DiagramError("the smoothing invariant is defined for knot diagrams only")
    terms = []
    for c in range(len(d.crossings)):
        label = phi(smooth(d, c))
        terms.append((("X" if d.signs[c] > 0 else "Y", label), 1))
    return GroupElement(terms)


def i_lk(d: Diagram) -> GroupElement:
    return i_phi(d, linking_number)


def crossing_contributions(d: Diagram) -> list[tuple[str, int]]:
    """Per-crossing basis symbol of I_lk, in crossing order."""
    if trace_components(d).component_count != 1:
        raise DiagramError("the smoothing invariant is defined for knot diagrams only")
    return [("X" if d.signs[c] > 0 else "Y", linking_number(smooth(d, c)))
            for c in range(len(d.crossings))]


def g_hom(v: GroupElement) -> int:
    return sum((1 + abs(k)) * c if fam == "X" else (-1 - abs(k)) * c
               for (fam, k), c in v.items())


def mirror_element(v: GroupElement) -> GroupElement:
    """Image under X_k -> Y_{-k}, Y_k -> X_{-k}."""
    return GroupElement(((("Y" if fam == "X" else "X"), -k), c) for (fam, k), c in v.items())


def is_in_R(v: GroupElement) -> RGenerator | None:
    """Classify ``v`` as an element of R, or return None."""
    items = sorted(v.items())
    if len(items) == 1:
        ((fam, k), c), = items
        if k == 0 and abs(c) == 1:
            return RGenerator("RI_X0" if fam == "X" else "RI_Y0", 0, c)
        return None
    if len(items) != 2:
        return None
    (s1, c1), (s2, c2) = items
    if abs(c1) != 1 or abs(c2) != 1:
        return None
    (f1, k1), (f2, k2) = s1, s2
    if f1 == "X" and f2 == "Y" and c1 == c2:
        if k2 == k1:
            return RGenerator("RII_XkYk", k1, c1)
        if k2 == k1 + 1:
            return RGenerator("RII_XkYk1", k1, c1)
        return None
    if f1 == f2 and k2 == k1 + 1 and c1 == -c2:
        return RGenerator("RIII_X" if f1 == "X" else "RIII_Y", k1, c1)
    return None


def generators(lo: int, hi: int) -> list[RGenerator]:
    """All elements of R (both orientations) supported in indices [lo, hi]."""
    out = []
    for o in (1, -1):
        if lo <= 0 <= hi:
            out += [RGenerator("RI_X0", 0, o), RGenerator("RI_Y0", 0, o)]
        for k in range(lo, hi + 1):
            out.append(RGenerator("RII_XkYk", k, o))
        for k in range(lo, hi):
            out += [RGenerator("RII_XkYk1", k, o), RGenerator("RIII_X", k, o),
                    RGenerator("RIII_Y", k, o)]
    return out


def lower_bound(dA: Diagram, dB: Diagram) -> int:
    """Lower bound on the number of Reidemeister moves between two diagrams."""
    return abs(g_hom(i_lk(dA) - i_lk(dB)))


# Homomorphisms bounded by 1 in absolute value on every generator; each gives
# an admissible distance estimate for the search below.  Boundedness is
# re-checked against the enumerated generators on every call, so exactness of
# the search never rests on an unverified claim.
_BOUNDED_HOMS = (
    (lambda k: 1 + abs(k), lambda k: -1 - abs(k)),
    (lambda k: 1, lambda k: -1),
    (lambda k: 1 + k, lambda k: -1 - k),
    (lambda k: 1 - k, lambda k: -1 + k),
)


def _dual_bound(start, moves, dim):
    """Best homomorphism for ``start`` subject to |f(r)| <= 1 on the moves.

    This is the dual of the fractional R-length linear program.
    """
    A = np.zeros((len(moves), dim))
    for row, mv in enumerate(moves):
        for i, c in mv:
            A[row, i] = c
    res = linprog(-np.asarray(start, dtype=float),
                  A_ub=np.vstack([A, -A]), b_ub=np.ones(2 * len(moves)),
                  bounds=[(None, None)] * dim, method="highs")
    if res.status != 0:
        return None
    return res.x


def r_length_bfs(v: GroupElement, max_len: int) -> int:
    """Exact word length of ``v`` over R, by best-first search.

    States are dense coefficient vectors on the index window
    ``[min(v) - max_len, max(v) + max_len]``; each step subtracts one
    generator.  The frontier is expanded in order of depth plus an
    admissible estimate of the remaining distance taken from homomorphisms
    bounded by 1 on R (including the optimum of the dual linear program).
    With a zero estimate this is plain breadth-first search; with it, the
    first time the zero vector is popped its depth is the exact length.

    Raises RLengthExceeded if the length is greater than ``max_len``.
    """
    if max_len < 0:
        raise ValueError("max_len must be non-negative")
    if not v:
        return 0
    idx = v.indices()
    lo, hi = idx[0] - max_len, idx[-1] + max_len
    width = hi - lo + 1
    dim = 2 * width

    def slot(fam, k):
        return (0 if fam == "X" else width) + (k - lo)

    start = [0] * dim
    for (fam, k), c in v.items():
        start[slot(fam, k)] = c
    moves = [[(slot(fam, k), c) for (fam, k), c in gen.value.items()]
             for gen in generators(lo, hi)]

    weights = [[fx(k) for k in range(lo, hi + 1)] + [fy(k) for k in range(lo, hi + 1)]
               for fx, fy in _BOUNDED_HOMS]
    dual = _dual_bound(start, moves, dim)
    if dual is not None:
        weights.append([float(x) for x in dual])
    for ws in weights:
        worst = max(abs(sum(ws[i] * c for i, c in mv)) for mv in moves)
        assert worst <= 1 + 1e-7, "pruning homomorphism is not bounded by 1 on R"

    # Track each homomorphism's value incrementally along with the state.
    deltas = [[sum(ws[i] * c for i, c in mv) for ws in weights] for mv in moves]

    def estimate(vals):
        return math.ceil(max(abs(x) for x in vals) - 1e-6)

    start_t = tuple(start)
    start_vals = tuple(sum(w * s for w, s in zip(ws, start)) for ws in weights)
    h0 = estimate(start_vals)
    if h0 > max_len:
        raise RLengthExceeded(str(v))
    tie = itertools.count()
    heap = [(h0, 0, next(tie), start_t, start_vals)]
    best = {start_t: 0}
    while heap:
        f, neg_depth, _, state, vals = heapq.heappop(heap)
        depth = -neg_depth
        if not any(state):
            return depth
        if best.get(state, depth) < depth:
            continue
        nd = depth + 1
        for mv, dv in zip(moves, deltas):
            s = list(state)
            for i, c in mv:
                s[i] -= c
            t = tuple(s)
            if best.get(t, max_len + 1) <= nd:
                continue
            tv = tuple(x - y for x, y in zip(vals, dv))
            fn = nd + estimate(tv)
            if fn > max_len:
                continue
            best[t] = nd
            heapq.heappush(heap, (fn, -nd, next(tie), t, tv))
    raise RLengthExceeded(str(v))
