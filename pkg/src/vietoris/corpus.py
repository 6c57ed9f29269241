"""Seeded random inputs shared by the CLI and the test-suite."""
from __future__ import annotations

import random
from fractions import Fraction
from typing import Optional

from .cantor import random_cantor
from .errors import NotFar
from .homeo import farness, random_pl
from .hyperspace import SimplexPoint


def random_element(rng: random.Random, space: str = "interval", depth: int = 4, grid: tuple[int, int] = (4, 16)):
    if space == "cantor":
        return random_cantor(rng, depth)
    return random_pl(rng, *grid)


def random_far_pair(
    rng: random.Random,
    space: str = "interval",
    max_size: int = 5,
    depth: int = 4,
    grid: tuple[int, int] = (4, 16),
    min_two_delta=None,
    tries: int = 1000,
) -> Optional[tuple[list, list]]:
    """Draw ``A``, ``B`` of sizes ``1..max_size`` until no element is shared.

    With ``min_two_delta`` the pair must also be that far apart in sup
    distance.  Returns None when ``tries`` draws all fail.
    """
    for _ in range(tries):
        A = [random_element(rng, space, depth, grid) for _ in range(rng.randint(1, max_size))]
        B = [random_element(rng, space, depth, grid) for _ in range(rng.randint(1, max_size))]
        pl_A = [a.to_plhomeo() for a in A] if space == "cantor" else A
        pl_B = [b.to_plhomeo() for b in B] if space == "cantor" else B
        try:
            far = farness(pl_A, pl_B)
        except NotFar:
            continue
        if min_two_delta is not None and far.two_delta < min_two_delta:
            continue
        return A, B
    return None


def random_simplex_sets(rng: random.Random, count: int, dimension: int, max_points: int, grid: int):
    """``count`` random subsets of the ``dimension``-simplex with coordinates on the ``1/grid`` lattice."""
    out = []
    for _ in range(count):
        size = rng.randint(1, max_points)
        pts = {
            tuple(sorted(Fraction(rng.randint(0, grid), grid) for _ in range(dimension)))
            for _ in range(size)
        }
        out.append([SimplexPoint(p) for p in sorted(pts)])
    return out
