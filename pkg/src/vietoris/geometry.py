"""Exact geometry on [0, 1] and [0, 1]^2.

Everything here works over :class:`fractions.Fraction`; no floating point is
ever introduced.  Three value types live in this module:

* :class:`IntervalUnion` -- a nonempty closed subset of [0, 1] that is a finite
  union of closed intervals (points allowed), i.e. a finitely described point
  of the hyperspace of [0, 1].
* :class:`CoverTuple` -- an ordered tuple of interval unions, optionally
  covering [0, 1].
* :class:`StaircaseCurve` -- a weakly monotone polyline from (0, 0) to (1, 1).
"""
from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import lcm
from typing import Iterable, Sequence

from .errors import EmptyInput, NotACover, OutOfRange

ZERO = Fraction(0)
ONE = Fraction(1)
HALF = Fraction(1, 2)

Interval = tuple[Fraction, Fraction]
Point2 = tuple[Fraction, Fraction]


def as_rational(value) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction.

    Floats are refused on purpose: an exact pipeline must not silently accept
    a binary approximation.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def _check_unit(x: Fraction) -> Fraction:
    if not ZERO <= x <= ONE:
        raise OutOfRange(f"{x} is outside [0, 1]")
    return x


@dataclass(frozen=True, order=True)
class IntervalUnion:
    """Canonical finite union of disjoint closed intervals in [0, 1].

    Build instances with :func:`normalize`; the constructor only accepts data
    that is already canonical (sorted, strictly separated, nonempty).
    """

    intervals: tuple[Interval, ...]

    def __post_init__(self):
        if not self.intervals:
            raise EmptyInput("the empty set is not a point of the hyperspace")
        prev = None
        for a, b in self.intervals:
            _check_unit(a)
            _check_unit(b)
            if a > b:
                raise ValueError(f"reversed interval ({a}, {b})")
            if prev is not None and not prev < a:
                raise ValueError("intervals must be sorted and strictly separated")
            prev = b

    @classmethod
    def _trusted(cls, intervals: tuple[Interval, ...]) -> IntervalUnion:
        # Skips validation; callers guarantee canonical form.
        obj = object.__new__(cls)
        object.__setattr__(obj, "intervals", intervals)
        return obj

    @classmethod
    def point(cls, x) -> IntervalUnion:
        x = _check_unit(as_rational(x))
        return cls(((x, x),))

    @classmethod
    def full(cls) -> IntervalUnion:
        return cls(((ZERO, ONE),))

    @cached_property
    def _los(self) -> list[Fraction]:
        return [a for a, _ in self.intervals]

    @property
    def lo(self) -> Fraction:
        return self.intervals[0][0]

    @property
    def hi(self) -> Fraction:
        return self.intervals[-1][1]

    @property
    def diameter(self) -> Fraction:
        return self.hi - self.lo

    def endpoints(self) -> list[Fraction]:
        return [x for iv in self.intervals for x in iv]

    def distance_to(self, x: Fraction) -> Fraction:
        """Euclidean distance from ``x`` to the set."""
        i = bisect_right(self._los, x) - 1
        best = None
        if i >= 0:
            a, b = self.intervals[i]
            best = ZERO if x <= b else x - b
        if i + 1 < len(self.intervals):
            d = self.intervals[i + 1][0] - x
            best = d if best is None or d < best else best
        return best

    def contains(self, x: Fraction) -> bool:
        return self.distance_to(x) == 0

    def gap_midpoints(self) -> list[Fraction]:
        return [
            (b + a2) / 2
            for (_, b), (a2, _) in zip(self.intervals, self.intervals[1:])
        ]

    def issubset(self, other: IntervalUnion) -> bool:
        for a, b in self.intervals:
            i = bisect_right(other._los, a) - 1
            if i < 0 or other.intervals[i][1] < b:
                return False
        return True

    def meets(self, other: IntervalUnion) -> bool:
        i = j = 0
        while i < len(self.intervals) and j < len(other.intervals):
            a, b = self.intervals[i]
            c, d = other.intervals[j]
            if max(a, c) <= min(b, d):
                return True
            if b < d:
                i += 1
            else:
                j += 1
        return False

    def __str__(self) -> str:
        return " u ".join(
            f"{{{a}}}" if a == b else f"[{a}, {b}]" for a, b in self.intervals
        )


def merge_intervals(raw: Iterable[tuple]) -> list[Interval]:
    """Sort and merge closed intervals; touching intervals are fused.

    The result may be empty.  Endpoints are not range-checked here.
    """
    items = sorted((as_rational(a), as_rational(b)) for a, b in raw)
    merged: list[list[Fraction]] = []
    for a, b in items:
        if a > b:
            raise ValueError(f"reversed interval ({a}, {b})")
        if merged and a <= merged[-1][1]:
            if b > merged[-1][1]:
                merged[-1][1] = b
        else:
            merged.append([a, b])
    return [(a, b) for a, b in merged]


def merge_sorted(intervals: Iterable[Interval]) -> tuple[Interval, ...]:
    """Fuse touching neighbours of intervals already sorted by left endpoint."""
    out: list[Interval] = []
    for a, b in intervals:
        if out and a <= out[-1][1]:
            if b > out[-1][1]:
                out[-1] = (out[-1][0], b)
        else:
            out.append((a, b))
    return tuple(out)


def normalize(raw_intervals: Iterable[tuple]) -> IntervalUnion:
    """Canonical :class:`IntervalUnion` from arbitrary closed intervals.

    >>> str(normalize([("0", "1/3"), ("1/4", "1/2")]))
    '[0, 1/2]'
    """
    raw = list(raw_intervals)
    if not raw:
        raise EmptyInput("no intervals given")
    for a, b in raw:
        _check_unit(as_rational(a))
        _check_unit(as_rational(b))
    return IntervalUnion(tuple(merge_intervals(raw)))


def _directed_hausdorff(A: IntervalUnion, B: IntervalUnion) -> Fraction:
    # x -> dist(x, B) is piecewise linear: its maxima over A sit at A's
    # endpoints or at midpoints of B's gaps that fall inside A.
    candidates = A.endpoints() + [m for m in B.gap_midpoints() if A.contains(m)]
    return max(B.distance_to(c) for c in candidates)


def hausdorff(A: IntervalUnion, B: IntervalUnion) -> Fraction:
    """Exact Hausdorff distance between two interval unions (metric |x - y|)."""
    if A == B:
        return ZERO
    return max(_directed_hausdorff(A, B), _directed_hausdorff(B, A))


@dataclass(frozen=True, order=True)
class CoverTuple:
    """An ordered tuple of closed subsets of [0, 1]."""

    parts: tuple[IntervalUnion, ...]

    def __post_init__(self):
        if not self.parts:
            raise EmptyInput("a cover tuple needs at least one part")

    def __len__(self) -> int:
        return len(self.parts)

    def is_cover(self) -> bool:
        union = merge_intervals(iv for part in self.parts for iv in part.intervals)
        return union == [(ZERO, ONE)]


def simplex_cover(xs: Sequence) -> CoverTuple:
    """The tuple ``([0, x1], [x1, x2], ..., [xn, 1])`` for ``0 <= x1 <= ... <= xn <= 1``."""
    cuts = [ZERO] + [as_rational(x) for x in xs] + [ONE]
    for a, b in zip(cuts, cuts[1:]):
        if a > b:
            raise ValueError("simplex coordinates must be weakly increasing in [0, 1]")
    return CoverTuple(tuple(IntervalUnion(((a, b),)) for a, b in zip(cuts, cuts[1:])))


def mesh(cover: CoverTuple) -> Fraction:
    """Largest diameter of a part.  Raises NotACover unless the parts union to [0, 1]."""
    if not cover.is_cover():
        raise NotACover("parts do not union to [0, 1]")
    return max(part.diameter for part in cover.parts)


def _collinear(p: Point2, q: Point2, r: Point2) -> bool:
    return (q[0] - p[0]) * (r[1] - p[1]) == (q[1] - p[1]) * (r[0] - p[0])


def drop_collinear(points: Sequence[Point2]) -> tuple[Point2, ...]:
    """Remove repeated and collinear interior vertices of a monotone polyline."""
    out: list[Point2] = []
    for p in points:
        if out and out[-1] == p:
            continue
        while len(out) >= 2 and _collinear(out[-2], out[-1], p):
            out.pop()
        out.append(p)
    return tuple(out)


@dataclass(frozen=True, order=True)
class StaircaseCurve:
    """A polyline from (0, 0) to (1, 1) that never goes down.

    Both coordinates are weakly increasing from vertex to vertex, so the curve
    may contain horizontal and vertical pieces.  Vertices are stored in
    canonical form (no repeats, no collinear interior vertices), hence two
    curves are equal exactly when their images in the square are equal.
    """

    vertices: tuple[Point2, ...]

    def __post_init__(self):
        pts = tuple((as_rational(x), as_rational(y)) for x, y in self.vertices)
        if len(pts) < 2 or pts[0] != (ZERO, ZERO) or pts[-1] != (ONE, ONE):
            raise ValueError("a staircase curve runs from (0, 0) to (1, 1)")
        for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
            if x1 < x0 or y1 < y0:
                raise ValueError("a staircase curve never goes down or left")
        object.__setattr__(self, "vertices", drop_collinear(pts))

    @cached_property
    def rotated(self) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
        """Vertices in the coordinates ``u = x + y``, ``v = y - x``.

        In these coordinates the curve is the graph of a 1-Lipschitz function
        of ``u`` on [0, 2], which makes L-infinity distances to it trivial.
        """
        us = tuple(x + y for x, y in self.vertices)
        vs = tuple(y - x for x, y in self.vertices)
        return us, vs

    @cached_property
    def scaled_rotated(self) -> tuple[int, tuple[int, ...], tuple[int, ...]]:
        """``(D, D*us, D*vs)`` with ``D`` the least common denominator."""
        us, vs = self.rotated
        D = lcm(*(q.denominator for q in us + vs))
        return D, tuple(int(u * D) for u in us), tuple(int(v * D) for v in vs)

    def reflect(self) -> StaircaseCurve:
        """Mirror image across the diagonal."""
        return StaircaseCurve(tuple((y, x) for x, y in self.vertices))


DIAGONAL = StaircaseCurve(((ZERO, ZERO), (ONE, ONE)))
