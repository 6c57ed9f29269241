"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line."""
import json
import random
import time
from fractions import Fraction as F

import pytest

from vietoris.cantor import cantor_compose, cantor_graph, cantor_inverse, CantorHomeo, random_cantor
from vietoris.certificates import (
    build_cover_certificate,
    build_r_certificate,
    uniform_cover,
    verify_cover_certificate,
    verify_r_certificate,
)
from vietoris.cli import main
from vietoris.corpus import random_far_pair, random_simplex_sets
from vietoris.explorer import (
    GeneratorSet,
    bottom_components,
    certify_dichotomy,
    dichotomy_search,
    grid_generators,
    grid_subsets,
    transition_graph,
)
from vietoris.geometry import DIAGONAL, IntervalUnion, StaircaseCurve, hausdorff, normalize
from vietoris.homeo import PLHomeo, compose, farness, graph, inverse, random_pl
from vietoris.hyperspace import act_curve, act_family, curve_hausdorff, family_hausdorff

from oracles import grid_hausdorff, minimal_invariant_sets, sampled_curve_hausdorff

RES = 1024


@pytest.fixture
def verdict(capsys):
    def emit(number: int, ok: bool, detail: str) -> None:
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}")
        assert ok, detail

    return emit


@pytest.fixture(scope="module")
def pair_corpus():
    rng = random.Random(2024)
    pairs = [random_far_pair(rng, "interval", max_size=5, grid=(4, 16)) for _ in range(200)]
    assert all(p is not None for p in pairs)
    return pairs


def test_curve_certificates_on_random_far_pairs(pair_corpus, verdict):
    started = time.perf_counter()
    failures, weakest = [], None
    for k, (A, B) in enumerate(pair_corpus):
        cert = build_r_certificate(A, B)
        report = verify_r_certificate(cert)
        if not report.passed:
            failures.append(k)
        for g in cert.A:
            for h in cert.B:
                gap = family_hausdorff(act_family(g, cert.p), act_family(h, cert.p)) - cert.delta / 2
                weakest = gap if weakest is None or gap < weakest else weakest
                if gap < 0:
                    failures.append(k)
    elapsed = time.perf_counter() - started
    ok = not failures and elapsed < 10
    verdict(1, ok, f"{len(pair_corpus)} pairs, failures={len(failures)}, "
                   f"min(separation - delta/2)={weakest}, {elapsed:.2f}s (< 10s)")


def test_cover_certificates_on_filtered_pairs(pair_corpus, verdict):
    delta = F(1, 8)
    cover = uniform_cover(delta)
    started = time.perf_counter()
    kept = [(A, B) for A, B in pair_corpus if farness(A, B).two_delta >= 2 * delta]
    failures, weakest = [], None
    for k, (A, B) in enumerate(kept):
        cert = build_cover_certificate(A, B, cover, delta)
        if not verify_cover_certificate(cert).passed:
            failures.append(k)
        for g in cert.A:
            for h in cert.B:
                gap = family_hausdorff(act_family(g, cert.p), act_family(h, cert.p)) - delta
                weakest = gap if weakest is None or gap < weakest else weakest
                if gap < 0:
                    failures.append(k)
    elapsed = time.perf_counter() - started
    ok = bool(kept) and not failures and elapsed < 10
    verdict(2, ok, f"{len(kept)}/{len(pair_corpus)} pairs with two_delta >= 1/4, failures={len(failures)}, "
                   f"min(separation - delta)={weakest}, {elapsed:.2f}s (< 10s)")


def test_graph_identities(verdict):
    rng = random.Random(3)
    bad = 0
    for _ in range(1000):
        g, h = random_pl(rng, 8, 64), random_pl(rng, 8, 64)
        if act_curve(g, graph(h)) != graph(compose(g, h)):
            bad += 1
        if act_curve(g, graph(inverse(g))) != DIAGONAL:
            bad += 1
    verdict(3, bad == 0, f"1000 random (g, h): {bad} violations of the two graph identities")


def _random_union(rng):
    q = rng.randint(2, 997)
    raw = []
    for _ in range(rng.randint(1, 5)):
        a, b = sorted((rng.randint(0, q), rng.randint(0, q)))
        raw.append((F(a, q), F(b, q)))
    return normalize(raw)


def _random_curve(rng):
    q = rng.randint(2, 997)
    n = rng.randint(0, 6)
    xs = sorted(rng.randint(0, q) for _ in range(n))
    ys = sorted(rng.randint(0, q) for _ in range(n))
    pts = [(0, 0)] + list(zip(xs, ys)) + [(q, q)]
    return StaircaseCurve(tuple((F(x, q), F(y, q)) for x, y in pts))


def test_metrics_against_grid_oracles(verdict):
    rng = random.Random(4)
    worst_sets = worst_curves = 0.0
    for _ in range(500):
        A, B = _random_union(rng), _random_union(rng)
        worst_sets = max(worst_sets, abs(float(hausdorff(A, B)) - grid_hausdorff(A, B, RES)))
        F1, F2 = _random_curve(rng), _random_curve(rng)
        worst_curves = max(worst_curves, abs(float(curve_hausdorff(F1, F2)) - sampled_curve_hausdorff(F1, F2, RES)))
    ok = worst_sets <= 1 / RES and worst_curves <= 1 / RES
    verdict(4, ok, f"500 instances each: max error hausdorff={worst_sets:.2e}, "
                   f"curve_hausdorff={worst_curves:.2e} (<= {1 / RES:.2e})")


def test_exhaustive_scan_finds_only_singletons(verdict):
    gens = grid_generators(8, 16, max_interior=1)
    started = time.perf_counter()
    G = transition_graph(grid_subsets(8), gens, F(1, 8), budget=10_000)
    comps = bottom_components(G)
    elapsed = time.perf_counter() - started
    oracle = minimal_invariant_sets(G.successors())
    ok = (
        len(G.nodes) == 511
        and not G.truncated
        and all(c.diameter == 0 for c in comps)
        and [frozenset(c.nodes) for c in comps] == oracle
        and elapsed < 60
    )
    found = ", ".join(str(G.nodes[c.nodes[0]]) for c in comps)
    verdict(5, ok, f"{len(G.nodes)} nodes, {len(gens)} generators (<= 1 interior breakpoint), "
                   f"bottom components [{found}] all diameter 0, oracle agrees={[frozenset(c.nodes) for c in comps] == oracle}, "
                   f"{elapsed:.2f}s (< 60s)")


def test_reflection_gives_wide_component(verdict):
    gens = grid_generators(8, 16, max_interior=1)
    with_r = GeneratorSet(gens.elements + (PLHomeo.reflection(),), symmetric=True)
    G = transition_graph([IntervalUnion.point(0)], with_r, F(1, 8))
    comps = bottom_components(G)
    widest = max(c.diameter for c in comps)
    verdict(6, widest >= F(3, 4), f"from seed {{0}}: components {[c.nodes for c in comps]}, widest diameter {widest} (>= 3/4)")


def test_simplex_dichotomy(verdict):
    eps = F(1, 16)
    instances = random_simplex_sets(random.Random(7), 100, dimension=2, max_points=8, grid=32)
    gens = grid_generators(4, 16, 1)
    resolved = uncertified = misreported = 0
    methods: dict[str, int] = {}
    for S in instances:
        r = dichotomy_search(S, eps, gens, depth=4)
        methods[r.method] = methods.get(r.method, 0) + 1
        if r.resolved:
            resolved += 1
            if not certify_dichotomy(S, r):
                uncertified += 1
        elif certify_dichotomy(S, r):
            misreported += 1
    ok = resolved >= 90 and uncertified == 0 and misreported == 0
    verdict(7, ok, f"resolved {resolved}/100 (>= 90), uncertified={uncertified}, "
                   f"misreported={misreported}, by method {dict(sorted(methods.items()))}")


def test_cantor_mode(tmp_path, verdict):
    rng = random.Random(8)
    elems = [random_cantor(rng, rng.randint(1, 4)) for _ in range(200)]
    identity = CantorHomeo.identity()
    law_failures = 0
    for u, v, w in zip(elems, elems[1:] + elems[:1], elems[2:] + elems[:2]):
        if cantor_compose(cantor_compose(u, v), w) != cantor_compose(u, cantor_compose(v, w)):
            law_failures += 1
        if cantor_compose(u, cantor_inverse(u)) != identity or cantor_compose(cantor_inverse(u), u) != identity:
            law_failures += 1
    monotone_failures = 0
    for u in elems:
        verts = cantor_graph(u).vertices
        if any(x1 < x0 or y1 < y0 for (x0, y0), (x1, y1) in zip(verts, verts[1:])):
            monotone_failures += 1

    config = tmp_path / "cantor.json"
    config.write_text(json.dumps({"random_pairs": 20}))
    out = tmp_path / "report.json"
    code = main(["certify-r", "--space", "cantor:6", "--seed", "8", "--config", str(config), "--out", str(out)])
    entries = json.loads(out.read_text())["certificates"]
    verified = sum(1 for e in entries if e["status"] == "verified")
    ok = law_failures == 0 and monotone_failures == 0 and code == 0 and verified == 20
    verdict(8, ok, f"group-law failures={law_failures} on 200 elements, monotonicity failures={monotone_failures}, "
                   f"certify-r --space cantor:6 exit {code}, {verified}/20 verified")


def test_pair_corpus_is_far(pair_corpus):
    for A, B in pair_corpus:
        assert 1 <= len(A) <= 5 and 1 <= len(B) <= 5
        assert farness(A, B).two_delta > 0
        assert all(g.breakpoints[k][0].denominator in (1, 2, 4) for g in A + B for k in range(len(g.breakpoints)))
