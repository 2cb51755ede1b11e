"""
Trajectory Windows - Finite restrictions of vector sequences on Z^k.

A window is an inclusive box [lo, hi] with a dense numpy object array of
exact ``Fraction`` values of shape (*extent, width).  A 0-dimensional
window holds a single vector.
"""

import itertools
from fractions import Fraction
from typing import Callable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from algebra.matrix import LaurentMatrix
from core.errors import DimensionMismatchError, InsufficientSupportError, WindowExhaustedError

Point = Tuple[int, ...]
Box = Tuple[Point, Point]


def box_points(lo: Sequence[int], hi: Sequence[int]) -> Iterator[Point]:
    """Lattice points of [lo, hi] in row-major order."""
    return itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi)))


def box_contains(outer: Box, inner: Box) -> bool:
    return all(a <= c and d <= b for a, b, c, d in zip(outer[0], outer[1], inner[0], inner[1]))


def bounding_box(points: Sequence[Point]) -> Box:
    cols = list(zip(*points))
    return tuple(min(c) for c in cols), tuple(max(c) for c in cols)


class TrajectoryWindow:
    """
    Values of w: [lo, hi] -> Q^width.

    Usage:
        w = TrajectoryWindow.zeros((0, 0), (3, 3), width=1)
        w[(1, 2)] = [Fraction(5)]
        w[(1, 2)]      # (Fraction(5),)
    """

    def __init__(self, lo: Sequence[int], hi: Sequence[int], width: int, values=None):
        lo, hi = tuple(int(x) for x in lo), tuple(int(x) for x in hi)
        if len(lo) != len(hi):
            raise DimensionMismatchError("lo and hi have different lengths")
        if any(a > b for a, b in zip(lo, hi)):
            raise ValueError(f"Empty box [{lo}, {hi}]")
        if width < 0:
            raise ValueError("width must be non-negative")
        self.lo, self.hi, self.width = lo, hi, width
        shape = self.extent + (width,)
        self.values = np.full(shape, Fraction(0), dtype=object)
        if values is not None:
            flat = np.asarray(values, dtype=object).reshape(-1)
            if flat.size != self.values.size:
                raise DimensionMismatchError(f"{flat.size} values for a window of shape {shape}")
            self.values.reshape(-1)[:] = [Fraction(v) for v in flat]

    # ==================== Constructors ====================

    @classmethod
    def zeros(cls, lo: Sequence[int], hi: Sequence[int], width: int) -> "TrajectoryWindow":
        return cls(lo, hi, width)

    @classmethod
    def from_function(cls, lo: Sequence[int], hi: Sequence[int], width: int,
                      fn: Callable[[Point], Sequence]) -> "TrajectoryWindow":
        w = cls(lo, hi, width)
        for nu in box_points(w.lo, w.hi):
            w[nu] = fn(nu)
        return w

    @classmethod
    def random(cls, lo: Sequence[int], hi: Sequence[int], width: int, rng: np.random.Generator,
               low: int = -5, high: int = 5) -> "TrajectoryWindow":
        """Integer-valued window drawn from ``rng`` (inclusive bounds)."""
        extent = tuple(b - a + 1 for a, b in zip(lo, hi))
        draws = rng.integers(low, high + 1, size=extent + (width,))
        return cls(lo, hi, width, [Fraction(int(x)) for x in draws.reshape(-1)])

    # ==================== Geometry ====================

    @property
    def dim(self) -> int:
        return len(self.lo)

    @property
    def extent(self) -> Tuple[int, ...]:
        return tuple(b - a + 1 for a, b in zip(self.lo, self.hi))

    @property
    def box(self) -> Box:
        return self.lo, self.hi

    def size(self) -> int:
        return int(np.prod(self.extent)) if self.dim else 1

    def points(self) -> Iterator[Point]:
        return box_points(self.lo, self.hi)

    def contains(self, nu: Sequence[int]) -> bool:
        return all(a <= x <= b for a, x, b in zip(self.lo, nu, self.hi))

    def _index(self, nu: Sequence[int]) -> Tuple[int, ...]:
        if len(nu) != self.dim:
            raise DimensionMismatchError(f"point {tuple(nu)} in a {self.dim}-D window")
        if not self.contains(nu):
            raise InsufficientSupportError(
                f"point {tuple(nu)} outside window [{self.lo}, {self.hi}]",
                {"point": list(nu), "lo": list(self.lo), "hi": list(self.hi)},
            )
        return tuple(x - a for x, a in zip(nu, self.lo))

    def __getitem__(self, nu: Sequence[int]) -> Tuple[Fraction, ...]:
        return tuple(self.values[self._index(nu)])

    def __setitem__(self, nu: Sequence[int], vector: Sequence) -> None:
        if len(vector) != self.width:
            raise DimensionMismatchError(f"vector of length {len(vector)} in a width-{self.width} window")
        self.values[self._index(nu)] = [Fraction(v) for v in vector]

    def restrict(self, lo: Sequence[int], hi: Sequence[int]) -> "TrajectoryWindow":
        if not box_contains(self.box, (tuple(lo), tuple(hi))):
            raise InsufficientSupportError(
                "requested box is not covered by the window",
                {"requested": [list(lo), list(hi)], "available": [list(self.lo), list(self.hi)]},
            )
        index = tuple(slice(a - l, b - l + 1) for a, b, l in zip(lo, hi, self.lo))
        return TrajectoryWindow(lo, hi, self.width, self.values[index].copy())

    # ==================== Linear structure ====================

    def _check(self, other: "TrajectoryWindow") -> None:
        if self.box != other.box or self.width != other.width:
            raise DimensionMismatchError("windows differ in box or width")

    def __add__(self, other: "TrajectoryWindow") -> "TrajectoryWindow":
        self._check(other)
        return TrajectoryWindow(self.lo, self.hi, self.width, self.values + other.values)

    def __sub__(self, other: "TrajectoryWindow") -> "TrajectoryWindow":
        self._check(other)
        return TrajectoryWindow(self.lo, self.hi, self.width, self.values - other.values)

    def scale(self, factor) -> "TrajectoryWindow":
        return TrajectoryWindow(self.lo, self.hi, self.width, self.values * Fraction(factor))

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.values.flat)

    def max_abs(self) -> Fraction:
        return max((abs(v) for v in self.values.flat), default=Fraction(0))

    def nonzero_points(self) -> List[Point]:
        return [nu for nu in self.points() if any(self[nu])]

    def __eq__(self, other) -> bool:
        if not isinstance(other, TrajectoryWindow):
            return NotImplemented
        return (self.box == other.box and self.width == other.width
                and bool(np.all(self.values == other.values)))

    def flat_values(self) -> List[Fraction]:
        """Row-major values (point-major, then component)."""
        return list(self.values.reshape(-1))

    def __repr__(self) -> str:
        return f"TrajectoryWindow(lo={self.lo}, hi={self.hi}, width={self.width})"


def output_box(offsets: Sequence[Point], lo: Point, hi: Point) -> Box:
    """{nu : nu + o in [lo, hi] for every offset o}."""
    if not offsets:
        return lo, hi
    low = tuple(min(o[k] for o in offsets) for k in range(len(lo)))
    high = tuple(max(o[k] for o in offsets) for k in range(len(lo)))
    return tuple(a - m for a, m in zip(lo, low)), tuple(b - m for b, m in zip(hi, high))


def apply_operator(matrix: LaurentMatrix, w: TrajectoryWindow) -> TrajectoryWindow:
    """
    (M(s) w)(nu) = sum over terms c s^a of entry (i, j) of c * w_j(nu + a).

    The output box is shrunk so every shifted sample exists.
    """
    if matrix.cols != w.width:
        raise DimensionMismatchError(f"operator has {matrix.cols} columns, window width is {w.width}")
    if matrix.nvars != w.dim:
        raise DimensionMismatchError(f"operator in {matrix.nvars} variables on a {w.dim}-D window")
    offsets = matrix.offsets()
    lo, hi = output_box(offsets, w.lo, w.hi)
    if any(a > b for a, b in zip(lo, hi)):
        spans = [max(o[k] for o in offsets) - min(o[k] for o in offsets) for k in range(w.dim)]
        raise WindowExhaustedError(
            "operator support does not fit in the window",
            {"extent": list(w.extent), "required_extent": [s + 1 for s in spans],
             "padding": [max(0, s + 1 - e) for s, e in zip(spans, w.extent)]},
        )
    extent = tuple(b - a + 1 for a, b in zip(lo, hi))
    out = np.full(extent + (matrix.rows,), Fraction(0), dtype=object)
    for i in range(matrix.rows):
        for j in range(matrix.cols):
            entry = matrix[i, j]
            for offset, c in entry.items():
                src = tuple(slice(a + o - l, a + o - l + e)
                            for a, o, l, e in zip(lo, offset, w.lo, extent)) + (j,)
                out[..., i] = out[..., i] + c * w.values[src]
    return TrajectoryWindow(lo, hi, matrix.rows, out)


def evaluate_at(matrix: LaurentMatrix, w: TrajectoryWindow, nu: Sequence[int]) -> Tuple[Fraction, ...]:
    """(M w)(nu) at a single point; every shifted sample must be in the window."""
    result = []
    for i in range(matrix.rows):
        acc = Fraction(0)
        for j in range(matrix.cols):
            for offset, c in matrix[i, j].items():
                acc += c * w[tuple(x + o for x, o in zip(nu, offset))][j]
        result.append(acc)
    return tuple(result)


def required_padding(matrix: LaurentMatrix, lo: Point, hi: Point) -> Box:
    """Input box needed so that M w is defined on [lo, hi]."""
    offsets = matrix.offsets()
    if not offsets:
        return lo, hi
    low = tuple(min(o[k] for o in offsets) for k in range(len(lo)))
    high = tuple(max(o[k] for o in offsets) for k in range(len(lo)))
    return tuple(a + m for a, m in zip(lo, low)), tuple(b + m for b, m in zip(hi, high))


def require_cover(w: TrajectoryWindow, needed: Box, what: str = "input") -> None:
    if not box_contains(w.box, needed):
        raise InsufficientSupportError(
            f"{what} window [{w.lo}, {w.hi}] does not cover the required box [{needed[0]}, {needed[1]}]",
            {"required_lo": list(needed[0]), "required_hi": list(needed[1]),
             "lo": list(w.lo), "hi": list(w.hi)},
        )
