"""Sparse elements of the free abelian group on symbols X_k, Y_k (k an integer)."""

from __future__ import annotations

import re
from typing import Iterable, Iterator, Mapping

__all__ = ["Symbol", "GroupElement", "X", "Y", "parse_element"]

# (family, index) with family "X" or "Y"
Symbol = tuple[str, int]

_TERM = re.compile(r"\s*([+-])?\s*(\d+)?\s*\*?\s*([XY])_\{?(-?\d+)\}?\s*")


class GroupElement(Mapping[Symbol, int]):
    """An immutable sparse integer combination of basis symbols.

    Zero coefficients are never stored, so equality and hashing are
    structural.  Supports ``+``, ``-``, unary ``-`` and integer scaling.
    """

    __slots__ = ("_coeffs", "_hash")

    def __init__(self, coeffs: Mapping[Symbol, int] | Iterable[tuple[Symbol, int]] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        acc: dict[Symbol, int] = {}
        for (fam, k), v in items:
            if fam not in ("X", "Y"):
                raise ValueError(f"unknown family {fam!r}")
            key = (fam, k)
            acc[key] = acc.get(key, 0) + int(v)
        try:
            ordered = sorted(acc.items())
        except TypeError:
            # labels from a generic link invariant need not be mutually comparable
            ordered = sorted(acc.items(), key=lambda kv: (kv[0][0], repr(kv[0][1])))
        self._coeffs = {s: v for s, v in ordered if v}
        self._hash = None

    @classmethod
    def zero(cls) -> GroupElement:
        return cls()

    def __getitem__(self, key: Symbol) -> int:
        return self._coeffs.get(key, 0)

    def __iter__(self) -> Iterator[Symbol]:
        return iter(self._coeffs)

    def __len__(self) -> int:
        return len(self._coeffs)

    def __contains__(self, key) -> bool:
        return key in self._coeffs

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, GroupElement):
            return self._coeffs == other._coeffs
        if other == 0:
            return not self._coeffs
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._coeffs.items()))
        return self._hash

    def __add__(self, other: GroupElement) -> GroupElement:
        if not isinstance(other, GroupElement):
            if other == 0:
                return self
            return NotImplemented
        out = dict(self._coeffs)
        for s, v in other._coeffs.items():
            out[s] = out.get(s, 0) + v
        return GroupElement(out)

    __radd__ = __add__

    def __neg__(self) -> GroupElement:
        return GroupElement({s: -v for s, v in self._coeffs.items()})

    def __sub__(self, other: GroupElement) -> GroupElement:
        return self + (-other)

    def __mul__(self, n: int) -> GroupElement:
        if not isinstance(n, int):
            return NotImplemented
        return GroupElement({s: n * v for s, v in self._coeffs.items()})

    __rmul__ = __mul__

    def indices(self) -> list[int]:
        return sorted({k for _, k in self._coeffs})

    def __str__(self) -> str:
        if not self._coeffs:
            return "0"
        parts = []
        for i, ((fam, k), v) in enumerate(self._coeffs.items()):
            mag = "" if abs(v) == 1 else str(abs(v))
            term = f"{mag}{fam}_{k}"
            if i == 0:
                parts.append(("-" if v < 0 else "") + term)
            else:
                parts.append(("- " if v < 0 else "+ ") + term)
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"GroupElement({str(self)!r})"


def X(k: int) -> GroupElement:
    return GroupElement({("X", k): 1})


def Y(k: int) -> GroupElement:
    return GroupElement({("Y", k): 1})


def parse_element(text: str) -> GroupElement:
    """Parse the canonical text form, e.g. ``2X_-1 + X_1 + 3Y_0`` or ``0``."""
    s = text.strip()
    if s in ("", "0"):
        return GroupElement()
    pos = 0
    terms = []
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse group element at {s[pos:]!r}")
        if terms and m.group(1) is None:
            raise ValueError(f"missing operator before {m.group(0).strip()!r}")
        sign = -1 if m.group(1) == "-" else 1
        coeff = int(m.group(2)) if m.group(2) else 1
        terms.append(((m.group(3), int(m.group(4))), sign * coeff))
        pos = m.end()
    return GroupElement(terms)
