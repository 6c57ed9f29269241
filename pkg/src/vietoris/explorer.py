"""Finite exploration of orbit closures and the simplex dichotomy.

Minimal closed invariant sets are approximated by bottom strongly connected
components of a *snapped* action graph: the exact image of a node under a
generator is rounded onto the ``epsilon`` grid and identified with the node
of that rounded value.  On a space that is already a finite grid (for example
all nonempty subsets of ``{0, 1/8, ..., 1}`` with ``epsilon = 1/8``) the
surrogate is exact.
"""
from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, singledispatch
from itertools import combinations, combinations_with_replacement, product
from math import floor
from typing import Optional, Sequence

from .errors import BudgetExceeded, OutOfRange
from .geometry import (
    ONE,
    ZERO,
    IntervalUnion,
    StaircaseCurve,
    hausdorff,
    merge_sorted,
)
from .homeo import PLHomeo, compose, image, inverse
from .hyperspace import (
    CurveFamily,
    SetFamilyTuple,
    SimplexPoint,
    TupleFamily,
    act_curve,
    act_simplex,
    act_tuple,
    curve_hausdorff,
    family_hausdorff,
    tuple_distance,
)

log = logging.getLogger(__name__)

BOUNDARY_GAUGE = "min(x_1, 1 - x_n, min_i (x_{i+1} - x_i))"


@dataclass(frozen=True)
class GeneratorSet:
    elements: tuple[PLHomeo, ...]
    symmetric: bool = False

    def __post_init__(self):
        if not self.elements:
            raise ValueError("a generator set must be nonempty")
        if self.symmetric:
            present = set(self.elements)
            missing = [g for g in self.elements if inverse(g) not in present]
            if missing:
                raise ValueError("symmetric generator set lacks some inverses")

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, i):
        return self.elements[i]

    def with_element(self, g: PLHomeo) -> GeneratorSet:
        elems = self.elements if g in self.elements else self.elements + (g,)
        if self.symmetric and inverse(g) not in elems:
            elems = elems + (inverse(g),)
        return GeneratorSet(elems, self.symmetric)


def symmetrize(elements: Sequence[PLHomeo]) -> tuple[PLHomeo, ...]:
    """Append missing inverses, keeping first-seen order and dropping repeats."""
    out: list[PLHomeo] = []
    seen: set[PLHomeo] = set()
    for g in list(elements) + [inverse(g) for g in elements]:
        if g not in seen:
            seen.add(g)
            out.append(g)
    return tuple(out)


def grid_generators(
    break_grid: int,
    value_grid: int,
    max_interior: Optional[int] = None,
    cap: int = 20000,
    symmetric: bool = True,
) -> GeneratorSet:
    """All increasing PL maps with breakpoints on ``{i/k}`` and values on ``{j/m}``.

    At most ``max_interior`` interior breakpoints are used (all of them by
    default).  Enumeration order: number of interior breakpoints, then the
    breakpoint positions, then the values, lexicographically.  Maps that
    coincide after dropping collinear breakpoints are listed once.
    """
    k, m = break_grid, value_grid
    if k < 1 or m < k:
        raise ValueError("need value_grid >= break_grid >= 1")
    positions = range(1, k)
    top = len(positions) if max_interior is None else min(max_interior, len(positions))
    found: list[PLHomeo] = []
    seen: set[PLHomeo] = set()
    for n in range(top + 1):
        for xs in combinations(positions, n):
            for ys in combinations(range(1, m), n):
                pts = ((ZERO, ZERO),) + tuple(
                    (Fraction(x, k), Fraction(y, m)) for x, y in zip(xs, ys)
                ) + ((ONE, ONE),)
                g = PLHomeo(pts)
                if g not in seen:
                    seen.add(g)
                    found.append(g)
                    if len(found) > cap:
                        raise BudgetExceeded(f"more than {cap} generators")
    elements = symmetrize(found) if symmetric else tuple(found)
    if len(elements) > cap:
        raise BudgetExceeded(f"more than {cap} generators")
    return GeneratorSet(elements, symmetric)


# -- generic action / snapping / distance -------------------------------------


@singledispatch
def act(point, g: PLHomeo):
    raise TypeError(f"no action defined on {type(point).__name__}")


@act.register
def _(point: IntervalUnion, g):
    return image(g, point)


@act.register
def _(point: StaircaseCurve, g):
    return act_curve(g, point)


@act.register
def _(point: SetFamilyTuple, g):
    return act_tuple(g, point)


@act.register
def _(point: CurveFamily, g):
    return CurveFamily(tuple(act_curve(g, F) for F in point.members))


@act.register
def _(point: TupleFamily, g):
    return TupleFamily(tuple(act_tuple(g, T) for T in point.members))


@act.register
def _(point: SimplexPoint, g):
    return act_simplex(g, point)


@singledispatch
def distance(p, q) -> Fraction:
    raise TypeError(f"no metric defined on {type(p).__name__}")


@distance.register
def _(p: IntervalUnion, q):
    return hausdorff(p, q)


@distance.register
def _(p: StaircaseCurve, q):
    return curve_hausdorff(p, q)


@distance.register
def _(p: SetFamilyTuple, q):
    return tuple_distance(p, q)


@distance.register(CurveFamily)
@distance.register(TupleFamily)
def _(p, q):
    return family_hausdorff(p, q)


@lru_cache(maxsize=1 << 16)
def snap_value(x: Fraction, epsilon: Fraction) -> Fraction:
    """Nearest point of ``{k*epsilon} u {1}`` inside [0, 1]; ties go down."""
    lo = floor(x / epsilon) * epsilon
    hi = min(lo + epsilon, ONE)
    return lo if x - lo <= hi - x else hi


@singledispatch
def snap(point, epsilon: Fraction):
    raise TypeError(f"cannot snap {type(point).__name__}")


@snap.register
def _(point: IntervalUnion, epsilon):
    # Rounding is weakly increasing, so order survives and only neighbours can fuse.
    return IntervalUnion._trusted(
        merge_sorted((snap_value(a, epsilon), snap_value(b, epsilon)) for a, b in point.intervals)
    )


@snap.register
def _(point: StaircaseCurve, epsilon):
    return StaircaseCurve(tuple((snap_value(x, epsilon), snap_value(y, epsilon)) for x, y in point.vertices))


@snap.register
def _(point: SetFamilyTuple, epsilon):
    return SetFamilyTuple(tuple(snap(part, epsilon) for part in point.parts))


@snap.register
def _(point: CurveFamily, epsilon):
    return CurveFamily(tuple(snap(F, epsilon) for F in point.members))


@snap.register
def _(point: TupleFamily, epsilon):
    return TupleFamily(tuple(snap(T, epsilon) for T in point.members))


# -- transition graphs ---------------------------------------------------------


@dataclass
class TransitionGraph:
    nodes: list
    edges: list[tuple[int, int, int]]
    epsilon: Fraction
    generators: GeneratorSet
    seeds: list
    budget: int
    truncated: bool = False

    def successors(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in self.nodes]
        for u, _, v in self.edges:
            adj[u].append(v)
        return adj


def transition_graph(seeds: Sequence, gens: GeneratorSet, epsilon, budget: int = 10000) -> TransitionGraph:
    """Breadth-first closure of ``seeds`` under ``gens`` with epsilon-snapping.

    Node ids follow discovery order (seeds first, in the given order), so the
    graph is a deterministic function of its inputs.  When more than
    ``budget`` nodes would be needed the exploration stops, the dangling
    edges are dropped and ``truncated`` is set.
    """
    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise OutOfRange("epsilon must be positive")
    if not seeds:
        raise ValueError("need at least one seed")
    nodes: list = []
    index: dict = {}
    queue: deque[int] = deque()
    truncated = False

    def intern(value) -> Optional[int]:
        nonlocal truncated
        i = index.get(value)
        if i is None:
            if len(nodes) >= budget:
                truncated = True
                return None
            i = len(nodes)
            index[value] = i
            nodes.append(value)
            queue.append(i)
        return i

    for s in seeds:
        intern(snap(s, epsilon))
    edges: list[tuple[int, int, int]] = []
    while queue:
        u = queue.popleft()
        for gi, g in enumerate(gens.elements):
            v = intern(snap(act(nodes[u], g), epsilon))
            if v is not None:
                edges.append((u, gi, v))
    if truncated:
        log.warning("transition graph truncated at %d nodes", budget)
    return TransitionGraph(nodes, edges, epsilon, gens, list(seeds), budget, truncated)


def strongly_connected_components(adj: Sequence[Sequence[int]]) -> list[list[int]]:
    """Tarjan's algorithm, iterative.  Components come out in reverse topological order."""
    n = len(adj)
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    comps: list[list[int]] = []
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            v, pos = work[-1]
            if pos == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            if pos < len(adj[v]):
                work[-1] = (v, pos + 1)
                w = adj[v][pos]
                if index[w] == -1:
                    work.append((w, 0))
                elif on_stack[w]:
                    low[v] = min(low[v], index[w])
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(sorted(comp))
    return comps


@dataclass(frozen=True)
class BottomComponent:
    nodes: tuple[int, ...]
    diameter: Fraction
    lower_bound_only: bool = False

    @property
    def is_singleton(self) -> bool:
        return self.diameter == 0


def bottom_components(graph: TransitionGraph) -> list[BottomComponent]:
    """Strongly connected components with no edge leaving them, sorted by first node.

    On a truncated graph the answer only bounds the true one and is flagged
    ``lower_bound_only``.
    """
    adj = graph.successors()
    comps = strongly_connected_components(adj)
    out = []
    for comp in comps:
        members = set(comp)
        if any(w not in members for v in comp for w in adj[v]):
            continue
        diam = ZERO
        for a, b in combinations(comp, 2):
            d = distance(graph.nodes[a], graph.nodes[b])
            if d > diam:
                diam = d
        out.append(BottomComponent(tuple(comp), diam, graph.truncated))
    out.sort(key=lambda c: c.nodes[0])
    return out


def grid_subsets(denominator: int) -> list[IntervalUnion]:
    """All nonempty subsets of ``{0, 1/d, ..., 1}`` as point sets, in binary-counter order."""
    pts = [Fraction(i, denominator) for i in range(denominator + 1)]
    out = []
    for mask in range(1, 2 ** len(pts)):
        chosen = [(p, p) for i, p in enumerate(pts) if mask >> i & 1]
        out.append(IntervalUnion(tuple(chosen)))
    return out


# -- simplex dichotomy ----------------------------------------------------------


def boundary_margin(x: SimplexPoint) -> Fraction:
    """Gap-measure distance to the boundary faces of the simplex."""
    c = x.coords
    gaps = [c[0], ONE - c[-1]] + [b - a for a, b in zip(c, c[1:])]
    return min(gaps)


def simplex_grid(n: int, step: Fraction) -> list[tuple[Fraction, ...]]:
    values = [k * step for k in range(int(1 / step) + 1)]
    if values[-1] != ONE:
        values.append(ONE)
    return list(combinations_with_replacement(values, n))


def fill_defect(points: Sequence[SimplexPoint], epsilon) -> Fraction:
    """Covering radius of ``points`` in the simplex under L-infinity.

    The sup is taken over the ``epsilon/2`` grid of the simplex, so the value
    is exact on that grid; the set counts as filling when it is ``<= epsilon``.
    """
    epsilon = Fraction(epsilon)
    if not points:
        raise ValueError("need at least one point")
    n = len(points[0])
    if any(len(p) != n for p in points):
        raise ValueError("points must share a dimension")
    coords = [p.coords for p in points]
    worst = ZERO
    for c in simplex_grid(n, epsilon / 2):
        near = min(max(abs(a - b) for a, b in zip(c, q)) for q in coords)
        if near > worst:
            worst = near
    return worst


@dataclass(frozen=True)
class DichotomyResult:
    outcome: str  # "boundary_push" | "fill" | "unresolved"
    epsilon: Fraction
    margin_after: Fraction
    covering_radius_after: Fraction
    witness: Optional[PLHomeo] = None
    word: Optional[tuple[int, ...]] = None
    method: str = ""
    gauge: str = BOUNDARY_GAUGE

    @property
    def resolved(self) -> bool:
        return self.outcome != "unresolved"


def _measure(S, g, epsilon):
    moved = [act_simplex(g, x) for x in S]
    return max(boundary_margin(x) for x in moved), fill_defect(moved, epsilon)


def _squeeze_map(S: Sequence[SimplexPoint], epsilon: Fraction) -> PLHomeo:
    # Sends the largest first coordinate (among points off the face x_n = 1)
    # to epsilon/2, so every point ends with x_1 <= epsilon/2.
    firsts = [x.coords[0] for x in S if x.coords[-1] < ONE]
    t = max(firsts, default=ZERO)
    target = epsilon / 2
    if t <= target or t == ZERO:
        return PLHomeo.identity()
    return PLHomeo(((ZERO, ZERO), (t, target), (ONE, ONE)))


def _spread_map(S: Sequence[SimplexPoint]) -> PLHomeo:
    # Spreads the distinct interior coordinates evenly over (0, 1).
    values = sorted({c for x in S for c in x.coords if ZERO < c < ONE})
    if not values:
        return PLHomeo.identity()
    m = len(values)
    return PLHomeo(((ZERO, ZERO),) + tuple((v, Fraction(i + 1, m + 1)) for i, v in enumerate(values)) + ((ONE, ONE),))


def dichotomy_search(
    S: Sequence[SimplexPoint],
    epsilon,
    gens: GeneratorSet,
    depth: int = 4,
    max_words: int = 5000,
    heuristics: bool = True,
) -> DichotomyResult:
    """Look for ``g`` pushing ``S`` near the boundary or making it fill the simplex.

    Candidates are tried in order: the identity, two direct constructions
    (a squeeze towards the face ``x_1 = 0`` and an even spread), then words
    over ``gens`` by length and lexicographic index, at most ``max_words`` of
    them.  The first candidate that certifies either branch wins; each
    candidate is checked for the boundary branch before the fill branch.
    ``heuristics=False`` skips the two direct constructions.
    """
    epsilon = Fraction(epsilon)
    S = list(S)
    if not S:
        raise ValueError("S must be nonempty")
    best = None

    def attempt(g, word, method):
        nonlocal best
        margin, radius = _measure(S, g, epsilon)
        if margin <= epsilon:
            return DichotomyResult("boundary_push", epsilon, margin, radius, g, word, method)
        if radius <= epsilon:
            return DichotomyResult("fill", epsilon, margin, radius, g, word, method)
        if best is None or (margin, radius) < (best[0], best[1]):
            best = (margin, radius, g, word, method)
        return None

    direct = [(PLHomeo.identity(), (), "identity")]
    if heuristics:
        direct += [(_squeeze_map(S, epsilon), None, "squeeze"), (_spread_map(S), None, "spread")]
    for g, word, method in direct:
        found = attempt(g, word, method)
        if found:
            return found

    tried = 0
    for length in range(1, depth + 1):
        for word in product(range(len(gens)), repeat=length):
            if tried >= max_words:
                break
            tried += 1
            g = PLHomeo.identity()
            for gi in word:
                g = compose(g, gens[gi])
            found = attempt(g, word, "word")
            if found:
                return found
    margin, radius, g, word, method = best
    return DichotomyResult("unresolved", epsilon, margin, radius, g, word, method)


def certify_dichotomy(S: Sequence[SimplexPoint], result: DichotomyResult) -> bool:
    """Recompute a result's claim from scratch."""
    if not result.resolved or result.witness is None:
        return False
    moved = [act_simplex(result.witness, x) for x in S]
    if result.outcome == "boundary_push":
        return max(boundary_margin(x) for x in moved) <= result.epsilon
    return fill_defect(moved, result.epsilon) <= result.epsilon
