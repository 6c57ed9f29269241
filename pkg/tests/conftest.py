import random
from fractions import Fraction

from hypothesis import settings, strategies as st

from vietoris.cantor import random_cantor
from vietoris.geometry import StaircaseCurve, normalize
from vietoris.homeo import PLHomeo
from vietoris.hyperspace import SetFamilyTuple

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

GRID = 64


def unit_rationals(denominator=GRID):
    return st.integers(0, denominator).map(lambda k: Fraction(k, denominator))


@st.composite
def interval_unions(draw, denominator=GRID, max_parts=4):
    n = draw(st.integers(1, max_parts))
    raw = []
    for _ in range(n):
        a, b = sorted((draw(unit_rationals(denominator)), draw(unit_rationals(denominator))))
        raw.append((a, b))
    return normalize(raw)


@st.composite
def pl_homeos(draw, denominator=GRID, max_interior=4):
    n = draw(st.integers(0, max_interior))
    xs = draw(st.lists(st.integers(1, denominator - 1), min_size=n, max_size=n, unique=True))
    ys = draw(st.lists(st.integers(1, denominator - 1), min_size=n, max_size=n, unique=True))
    pts = [(Fraction(0), Fraction(0))]
    pts += [(Fraction(x, denominator), Fraction(y, denominator)) for x, y in zip(sorted(xs), sorted(ys))]
    pts.append((Fraction(1), Fraction(1)))
    return PLHomeo(tuple(pts))


@st.composite
def staircase_curves(draw, denominator=GRID, max_vertices=5):
    # Independent weakly increasing x and y sequences give flats and cliffs too.
    n = draw(st.integers(0, max_vertices))
    xs = sorted(draw(st.lists(st.integers(0, denominator), min_size=n, max_size=n)))
    ys = sorted(draw(st.lists(st.integers(0, denominator), min_size=n, max_size=n)))
    pts = [(0, 0)] + list(zip(xs, ys)) + [(denominator, denominator)]
    return StaircaseCurve(tuple((Fraction(x, denominator), Fraction(y, denominator)) for x, y in pts))


@st.composite
def set_tuples(draw, arity):
    return SetFamilyTuple(tuple(draw(interval_unions()) for _ in range(arity)))


def cantor_elements(depth=4):
    return st.integers(0, 2**32).map(lambda s: random_cantor(random.Random(s), depth))
