"""Piecewise-linear self-homeomorphisms of [0, 1] with rational breakpoints."""
from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .errors import EmptyInput, NotFar, OutOfRange
from .geometry import (
    ONE,
    ZERO,
    IntervalUnion,
    StaircaseCurve,
    as_rational,
    drop_collinear,
)


@dataclass(frozen=True, order=True)
class PLHomeo:
    """A PL bijection of [0, 1] given by its breakpoints ``(x_i, y_i)``.

    ``x`` runs strictly from 0 to 1 and ``y`` is strictly monotone.  The usual
    case is increasing (from (0, 0) to (1, 1)); decreasing elements such as
    the reflection ``x -> 1 - x`` are admitted so that negative controls can be
    expressed in the same type.  Breakpoints are kept canonical (collinear
    ones dropped), so ``==`` is equality of maps.
    """

    breakpoints: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        pts = tuple((as_rational(x), as_rational(y)) for x, y in self.breakpoints)
        if len(pts) < 2:
            raise ValueError("need at least the two endpoint breakpoints")
        if pts[0][0] != ZERO or pts[-1][0] != ONE:
            raise ValueError("breakpoints must start at x=0 and end at x=1")
        if {pts[0][1], pts[-1][1]} != {ZERO, ONE}:
            raise ValueError("endpoints must map onto {0, 1}")
        increasing = pts[-1][1] == ONE
        for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
            if not x0 < x1:
                raise ValueError("x coordinates must be strictly increasing")
            if (y0 < y1) != increasing or y0 == y1:
                raise ValueError("y coordinates must be strictly monotone")
        object.__setattr__(self, "breakpoints", drop_collinear(pts))

    @classmethod
    def identity(cls) -> PLHomeo:
        return cls(((ZERO, ZERO), (ONE, ONE)))

    @classmethod
    def reflection(cls) -> PLHomeo:
        return cls(((ZERO, ONE), (ONE, ZERO)))

    @classmethod
    def from_pairs(cls, pairs) -> PLHomeo:
        return cls(tuple((as_rational(x), as_rational(y)) for x, y in pairs))

    @cached_property
    def xs(self) -> tuple[Fraction, ...]:
        return tuple(x for x, _ in self.breakpoints)

    @cached_property
    def ys(self) -> tuple[Fraction, ...]:
        return tuple(y for _, y in self.breakpoints)

    @property
    def is_increasing(self) -> bool:
        return self.breakpoints[-1][1] == ONE

    @property
    def is_identity(self) -> bool:
        return len(self.breakpoints) == 2 and self.is_increasing

    @cached_property
    def lipschitz(self) -> Fraction:
        """Largest absolute slope."""
        return max(
            abs((y1 - y0) / (x1 - x0))
            for (x0, y0), (x1, y1) in zip(self.breakpoints, self.breakpoints[1:])
        )

    def __call__(self, x) -> Fraction:
        return evaluate(self, x)

    def __str__(self) -> str:
        return "[" + ", ".join(f"({x}, {y})" for x, y in self.breakpoints) + "]"


def evaluate(g: PLHomeo, x) -> Fraction:
    """Value of ``g`` at ``x`` by affine interpolation between breakpoints."""
    if type(x) is not Fraction:
        x = as_rational(x)
    if not ZERO <= x <= ONE:
        raise OutOfRange(f"{x} is outside [0, 1]")
    xs, ys = g.xs, g.ys
    i = bisect_right(xs, x) - 1
    if xs[i] == x:
        return ys[i]
    x0, x1, y0, y1 = xs[i], xs[i + 1], ys[i], ys[i + 1]
    return y0 + (y1 - y0) * (x - x0) / (x1 - x0)


def inverse(g: PLHomeo) -> PLHomeo:
    pts = [(y, x) for x, y in g.breakpoints]
    if not g.is_increasing:
        pts.reverse()
    return PLHomeo(tuple(pts))


def compose(g: PLHomeo, h: PLHomeo) -> PLHomeo:
    """The map ``x -> g(h(x))``."""
    hinv = inverse(h)
    xs = set(h.xs)
    xs.update(evaluate(hinv, b) for b in g.xs)
    return PLHomeo(tuple((x, evaluate(g, evaluate(h, x))) for x in sorted(xs)))


def image(g: PLHomeo, A: IntervalUnion) -> IntervalUnion:
    """``g(A)``; a monotone bijection sends the components of ``A`` to the
    components of the image, in the same or in reversed order."""
    out = [(evaluate(g, a), evaluate(g, b)) for a, b in A.intervals]
    if not g.is_increasing:
        out = [(b, a) for a, b in reversed(out)]
    return IntervalUnion._trusted(tuple(out))


def preimage(g: PLHomeo, A: IntervalUnion) -> IntervalUnion:
    """``g^{-1}(A)``."""
    return image(inverse(g), A)


def sup_dist_witness(f: PLHomeo, g: PLHomeo) -> tuple[Fraction, Fraction]:
    """``(sup |f - g|, x)`` with ``x`` the smallest point attaining the sup.

    ``f - g`` is affine between consecutive points of the merged breakpoint
    grids, so scanning that grid is exact.
    """
    best, arg = None, None
    for x in sorted(set(f.xs) | set(g.xs)):
        d = abs(evaluate(f, x) - evaluate(g, x))
        if best is None or d > best:
            best, arg = d, x
    return best, arg


def sup_dist(f: PLHomeo, g: PLHomeo) -> Fraction:
    """Right-invariant uniform distance ``sup_x |f(x) - g(x)|``."""
    return sup_dist_witness(f, g)[0]


def graph(g: PLHomeo) -> StaircaseCurve:
    """The graph of an increasing element as a curve in the square."""
    if not g.is_increasing:
        raise ValueError("only increasing maps have staircase graphs")
    return StaircaseCurve(g.breakpoints)


@dataclass(frozen=True)
class PairWitness:
    a_index: int
    b_index: int
    x: Fraction
    distance: Fraction


@dataclass(frozen=True)
class FarnessCertificate:
    """Uniform lower bound on ``sup |f - g|`` over ``A x B`` with per-pair witnesses."""

    two_delta: Fraction
    witnesses: tuple[PairWitness, ...]

    def witness(self, a_index: int, b_index: int) -> PairWitness:
        return next(w for w in self.witnesses if (w.a_index, w.b_index) == (a_index, b_index))


def farness(A: Sequence[PLHomeo], B: Sequence[PLHomeo]) -> FarnessCertificate:
    """Decide whether finite ``A`` and ``B`` are far in the right uniformity.

    For finite sets this is just: no element is shared.  The certificate
    records ``min sup_dist`` over all pairs and, for every pair, a point where
    the two maps differ by at least that much.
    """
    if not A or not B:
        raise EmptyInput("farness needs nonempty A and B")
    witnesses = []
    for i, f in enumerate(A):
        for j, g in enumerate(B):
            d, x = sup_dist_witness(f, g)
            if d == 0:
                raise NotFar(f"A[{i}] and B[{j}] coincide")
            witnesses.append(PairWitness(i, j, x, d))
    return FarnessCertificate(min(w.distance for w in witnesses), tuple(witnesses))


def random_pl(rng, k: int = 4, m: int = 16, max_interior: int | None = None) -> PLHomeo:
    """A random increasing element with breakpoints on the ``1/k`` grid and values on the ``1/m`` grid."""
    interior = list(range(1, k))
    if max_interior is not None:
        n = rng.randint(0, min(max_interior, len(interior)))
    else:
        n = rng.randint(0, len(interior))
    n = min(n, m - 1)
    xs = sorted(rng.sample(interior, n))
    ys = sorted(rng.sample(range(1, m), n))
    pts = [(ZERO, ZERO)] + [(Fraction(x, k), Fraction(y, m)) for x, y in zip(xs, ys)] + [(ONE, ONE)]
    return PLHomeo(tuple(pts))

