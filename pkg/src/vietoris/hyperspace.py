"""Points of the hyperspaces the group acts on, the actions, and their metrics.

The square carries the L-infinity metric.  A staircase curve, rewritten in
the rotated coordinates ``u = x + y``, ``v = y - x``, is the graph of a
1-Lipschitz function ``v = phi(u)`` on [0, 2]; the L-infinity distance from a
point ``(u0, v0)`` of another such curve to it is ``|phi(u0) - v0| / 2``.
Hausdorff distances between curves therefore reduce to a sup of
``|phi_1 - phi_2|`` over the merged vertex abscissae.
"""
from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence, Union

from .errors import ArityMismatch, EmptyInput
from .geometry import (
    DIAGONAL,
    ONE,
    ZERO,
    IntervalUnion,
    StaircaseCurve,
    as_rational,
    hausdorff,
)
from .homeo import PLHomeo, evaluate, graph, image

__all__ = [
    "DIAGONAL",
    "CurveFamily",
    "SetFamilyTuple",
    "TupleFamily",
    "SimplexPoint",
    "act_curve",
    "act_tuple",
    "act_family",
    "act_simplex",
    "curve_hausdorff",
    "tuple_distance",
    "family_hausdorff",
    "diag_deviation",
    "graph",
]


@dataclass(frozen=True, order=True)
class CurveFamily:
    """A finite (hence closed) set of staircase curves."""

    members: tuple[StaircaseCurve, ...]

    def __post_init__(self):
        if not self.members:
            raise EmptyInput("a family must be nonempty")
        object.__setattr__(self, "members", tuple(sorted(set(self.members))))

    @classmethod
    def of(cls, curves: Iterable[StaircaseCurve]) -> CurveFamily:
        return cls(tuple(curves))

    def __contains__(self, curve) -> bool:
        return curve in self.members

    def __len__(self) -> int:
        return len(self.members)


@dataclass(frozen=True, order=True)
class SetFamilyTuple:
    """A point of the n-th power of the hyperspace of [0, 1]."""

    parts: tuple[IntervalUnion, ...]

    def __post_init__(self):
        if not self.parts:
            raise EmptyInput("arity must be at least 1")
        object.__setattr__(self, "parts", tuple(self.parts))

    @property
    def arity(self) -> int:
        return len(self.parts)


@dataclass(frozen=True, order=True)
class TupleFamily:
    members: tuple[SetFamilyTuple, ...]

    def __post_init__(self):
        if not self.members:
            raise EmptyInput("a family must be nonempty")
        if len({m.arity for m in self.members}) != 1:
            raise ArityMismatch("members of a tuple family share one arity")
        object.__setattr__(self, "members", tuple(sorted(set(self.members))))

    @classmethod
    def of(cls, tuples: Iterable[SetFamilyTuple]) -> TupleFamily:
        return cls(tuple(tuples))

    @property
    def arity(self) -> int:
        return self.members[0].arity

    def __contains__(self, t) -> bool:
        return t in self.members

    def __len__(self) -> int:
        return len(self.members)


@dataclass(frozen=True, order=True)
class SimplexPoint:
    coords: tuple[Fraction, ...]

    def __post_init__(self):
        cs = tuple(as_rational(c) for c in self.coords)
        if not cs:
            raise EmptyInput("a simplex point needs at least one coordinate")
        prev = ZERO
        for c in cs + (ONE,):
            if c < prev:
                raise ValueError("simplex coordinates satisfy 0 <= x1 <= ... <= xn <= 1")
            prev = c
        object.__setattr__(self, "coords", cs)

    def __len__(self) -> int:
        return len(self.coords)


def _crossing_params(y0: Fraction, y1: Fraction, levels: Sequence[Fraction]) -> list[Fraction]:
    # levels is sorted; only those strictly between y0 and y1 matter.
    lo, hi = bisect_right(levels, y0), bisect_left(levels, y1)
    return [(b - y0) / (y1 - y0) for b in levels[lo:hi]]


def act_curve(g: PLHomeo, F: StaircaseCurve) -> StaircaseCurve:
    """``gF = {(x, g(y)) : (x, y) in F}``.

    Each segment is split where its height crosses a breakpoint of ``g`` so the
    image is again a polyline.
    """
    if not g.is_increasing:
        raise ValueError("only increasing maps preserve staircase curves")
    levels = g.xs[1:-1]
    out = [F.vertices[0]]
    for (x0, y0), (x1, y1) in zip(F.vertices, F.vertices[1:]):
        if y1 > y0:
            for t in _crossing_params(y0, y1, levels):
                out.append((x0 + t * (x1 - x0), y0 + t * (y1 - y0)))
        out.append((x1, y1))
    return StaircaseCurve(tuple((x, evaluate(g, y)) for x, y in out))


def act_tuple(g: PLHomeo, T: SetFamilyTuple) -> SetFamilyTuple:
    """Coordinatewise image ``(g(F_1), ..., g(F_n))``."""
    return SetFamilyTuple(tuple(image(g, part) for part in T.parts))


def act_simplex(g: PLHomeo, x: SimplexPoint) -> SimplexPoint:
    """Diagonal action ``(g x_1, ..., g x_n)``."""
    if not g.is_increasing:
        raise ValueError("the simplex action needs an increasing map")
    return SimplexPoint(tuple(evaluate(g, c) for c in x.coords))


def act_family(g: PLHomeo, q: Union[CurveFamily, TupleFamily]) -> Union[CurveFamily, TupleFamily]:
    if isinstance(q, CurveFamily):
        return CurveFamily(tuple(act_curve(g, F) for F in q.members))
    return TupleFamily(tuple(act_tuple(g, T) for T in q.members))


def _phi_on(us, vs, grid):
    # Values of the interpolant of (us, vs) at the sorted integer abscissae in
    # grid, as (numerator, positive denominator) pairs of ints.
    out = []
    j = 0
    last = len(us) - 1
    for u in grid:
        while j < last and us[j + 1] < u:
            j += 1
        if u == us[j]:
            out.append((vs[j], 1))
        elif u == us[j + 1]:
            out.append((vs[j + 1], 1))
        else:
            u0, u1, v0, v1 = us[j], us[j + 1], vs[j], vs[j + 1]
            out.append((v0 * (u1 - u0) + (v1 - v0) * (u - u0), u1 - u0))
    return out


def curve_hausdorff(F1: StaircaseCurve, F2: StaircaseCurve) -> Fraction:
    """Exact Hausdorff distance between two curves under the L-infinity metric."""
    if F1 == F2:
        return ZERO
    D1, us1, vs1 = F1.scaled_rotated
    D2, us2, vs2 = F2.scaled_rotated
    D = lcm(D1, D2)
    a, b = D // D1, D // D2
    us1, vs1 = [u * a for u in us1], [v * a for v in vs1]
    us2, vs2 = [u * b for u in us2], [v * b for v in vs2]
    grid = sorted(set(us1) | set(us2))
    best_num, best_den = 0, 1
    for (n1, d1), (n2, d2) in zip(_phi_on(us1, vs1, grid), _phi_on(us2, vs2, grid)):
        num, den = abs(n1 * d2 - n2 * d1), d1 * d2
        if num * best_den > best_num * den:
            best_num, best_den = num, den
    return Fraction(best_num, 2 * best_den * D)


def tuple_distance(S: SetFamilyTuple, T: SetFamilyTuple) -> Fraction:
    """Max over coordinates of the Hausdorff distance."""
    if S.arity != T.arity:
        raise ArityMismatch(f"arity {S.arity} vs {T.arity}")
    return max(hausdorff(a, b) for a, b in zip(S.parts, T.parts))


def family_hausdorff(q1, q2) -> Fraction:
    """Hausdorff distance between two finite families, induced by the member metric."""
    if isinstance(q1, CurveFamily) and isinstance(q2, CurveFamily):
        metric = curve_hausdorff
    elif isinstance(q1, TupleFamily) and isinstance(q2, TupleFamily):
        if q1.arity != q2.arity:
            raise ArityMismatch(f"arity {q1.arity} vs {q2.arity}")
        metric = tuple_distance
    else:
        raise ArityMismatch("families of different kinds")
    if q1 == q2:
        return ZERO
    table = [[metric(a, b) for b in q2.members] for a in q1.members]
    forward = max(min(row) for row in table)
    backward = max(min(col) for col in zip(*table))
    return max(forward, backward)


def diag_deviation(F: StaircaseCurve) -> Fraction:
    """``max |x - y|`` over the curve; attained at a vertex."""
    return max(abs(x - y) for x, y in F.vertices)


def deviation_witness(F: StaircaseCurve) -> tuple[Fraction, Fraction]:
    """First vertex where ``|x - y|`` is maximal."""
    best = max(abs(x - y) for x, y in F.vertices)
    return next(v for v in F.vertices if abs(v[0] - v[1]) == best)
