"""Quadrant configurations of centers and their symmetry classes."""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import InvalidConfiguration


@dataclass(frozen=True, order=True)
class Configuration:
    """Number of centers in the open quadrants, ``(i1; i2; i3; i4)``.

    Quadrants are numbered counterclockwise from ``x > 0, y > 0``.
    """

    counts: tuple[int, int, int, int]

    def __post_init__(self):
        c = tuple(self.counts)
        if len(c) != 4 or any(not isinstance(v, int) or isinstance(v, bool) or v < 0 for v in c):
            raise InvalidConfiguration(f"need four nonnegative integers, got {self.counts!r}")
        object.__setattr__(self, "counts", c)

    @classmethod
    def of(cls, *counts: int) -> "Configuration":
        return cls(tuple(counts))

    @classmethod
    def parse(cls, text: str) -> "Configuration":
        m = re.fullmatch(r"\s*\(?\s*(\d+)\s*;\s*(\d+)\s*;\s*(\d+)\s*;\s*(\d+)\s*\)?\s*", text)
        if not m:
            raise InvalidConfiguration(f"cannot parse configuration {text!r}")
        return cls(tuple(int(v) for v in m.groups()))

    @classmethod
    def from_points(cls, points) -> "Configuration":
        """Count ``(x, y)`` pairs by open quadrant; points on an axis are ignored."""
        c = [0, 0, 0, 0]
        for x, y in points:
            q = quadrant(x, y)
            if q:
                c[q - 1] += 1
        return cls(tuple(c))

    @property
    def total(self) -> int:
        return sum(self.counts)

    def __str__(self) -> str:
        return "(" + ";".join(str(v) for v in self.counts) + ")"


def quadrant(x, y) -> int:
    """1-4 for the open quadrants, 0 on the axes."""
    if x > 0 and y > 0:
        return 1
    if x < 0 and y > 0:
        return 2
    if x < 0 and y < 0:
        return 3
    if x > 0 and y < 0:
        return 4
    return 0


def _generators(c: tuple) -> list[tuple]:
    i1, i2, i3, i4 = c
    return [(i2, i1, i4, i3), (i4, i3, i2, i1), (i1, i4, i3, i2)]


def orbit(c: Configuration) -> set[Configuration]:
    """Closure of ``c`` under the reflections in the axes and the diagonal."""
    seen = {c.counts}
    todo = [c.counts]
    while todo:
        cur = todo.pop()
        for nxt in _generators(cur):
            if nxt not in seen:
                seen.add(nxt)
                todo.append(nxt)
    return {Configuration(t) for t in seen}


def canonicalize(c: Configuration) -> Configuration:
    """Lexicographically smallest member of the orbit of ``c``.

    The result has ``i1`` minimal and ``i2 <= i4``.
    """
    return min(orbit(c))


def equivalent(a: Configuration, b: Configuration) -> bool:
    return canonicalize(a) == canonicalize(b)
