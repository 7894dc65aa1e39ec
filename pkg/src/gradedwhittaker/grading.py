"""The grading group Z^k with lexicographic order, and the level functional."""

from __future__ import annotations

import enum
import itertools
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence


class DimensionError(ValueError):
    """Raised when degrees of different rank are combined."""


class Degree(tuple):
    """An element of Z^k.

    Being a tuple, degrees compare lexicographically, which is exactly the
    total order on the grading group.  ``+``, unary ``-`` and ``-`` are the
    group operations (not tuple concatenation).
    """

    __slots__ = ()

    def __new__(cls, coords=()):
        if isinstance(coords, int):
            coords = (coords,)
        return super().__new__(cls, (int(c) for c in coords))

    @classmethod
    def zero(cls, rank: int) -> "Degree":
        return cls((0,) * rank)

    @property
    def rank(self) -> int:
        return len(self)

    def __add__(self, other):
        if len(self) != len(other):
            raise DimensionError(f"cannot add degrees of rank {len(self)} and {len(other)}")
        return Degree(a + b for a, b in zip(self, other))

    def __sub__(self, other):
        if len(self) != len(other):
            raise DimensionError(f"cannot subtract degrees of rank {len(self)} and {len(other)}")
        return Degree(a - b for a, b in zip(self, other))

    def __neg__(self):
        return Degree(-a for a in self)

    def __mul__(self, n):
        return Degree(n * a for a in self)

    __rmul__ = __mul__

    def __repr__(self):
        return f"Degree({format_degree(self)})"

    def __str__(self):
        return format_degree(self)


def format_degree(d: Sequence[int]) -> str:
    if len(d) == 1:
        return str(d[0])
    return "[" + ",".join(str(x) for x in d) + "]"


_DEGREE_RE = re.compile(r"^\s*\[?\s*(-?\d+(?:\s*,\s*-?\d+)*)\s*\]?\s*$")


def parse_degree(text) -> Degree:
    """Parse ``[-2,1]``, ``-3`` or a JSON list/int into a Degree."""
    if isinstance(text, Degree):
        return text
    if isinstance(text, int) and not isinstance(text, bool):
        return Degree(text)
    if isinstance(text, (list, tuple)):
        return Degree(text)
    m = _DEGREE_RE.match(str(text))
    if not m:
        raise ValueError(f"not a degree: {text!r}")
    return Degree(int(x) for x in m.group(1).split(","))


class Ordering(enum.Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


def compare(a: Sequence[int], b: Sequence[int]) -> Ordering:
    if len(a) != len(b):
        raise DimensionError(f"cannot compare degrees of rank {len(a)} and {len(b)}")
    for x, y in zip(a, b):
        if x != y:
            return Ordering.LESS if x < y else Ordering.GREATER
    return Ordering.EQUAL


@dataclass(frozen=True)
class GradingMap:
    """The homomorphism Q -> Z given by a dot product with ``weights``."""

    weights: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))

    @property
    def rank(self) -> int:
        return len(self.weights)

    def __call__(self, d: Sequence[int]) -> int:
        if len(d) != len(self.weights):
            raise DimensionError(f"degree {tuple(d)} has rank {len(d)}, map expects {self.rank}")
        return sum(w * x for w, x in zip(self.weights, d))


@dataclass
class GradingReport:
    violations: list[tuple[Degree, Degree]] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self):
        return {
            "ok": self.ok,
            "violations": [[list(a), list(b)] for a, b in self.violations],
            "warnings": list(self.warnings),
        }


def validate_grading_map(pi: GradingMap, window: Iterable[Sequence[int]]) -> GradingReport:
    """List every pair ``a <= b`` in the window with ``pi(a) > pi(b)``."""
    pts = sorted({Degree(d) for d in window})
    report = GradingReport()
    levels = [pi(d) for d in pts]
    for i, j in itertools.combinations(range(len(pts)), 2):
        # pts sorted ascending, so pts[i] < pts[j]
        if levels[i] > levels[j]:
            report.violations.append((pts[i], pts[j]))
    if pts and not any(levels):
        report.warnings.append("grading map is identically zero on the window")
    return report


def box_window(bounds: Sequence[tuple[int, int]]) -> list[Degree]:
    """All degrees with coordinate i in the closed range ``bounds[i]``."""
    return [Degree(c) for c in itertools.product(*(range(lo, hi + 1) for lo, hi in bounds))]
