"""Separation certificates for far pairs ``(A, B)`` of group elements.

Two constructions are carried out on finite ``A`` and ``B``:

* curve certificates live in the hyperspace of staircase curves.  The witness
  is ``p = {graph(g^-1) : g in A}``.  Every ``g.p`` (``g`` in ``A``) contains
  the diagonal, while every curve of ``h.p`` (``h`` in ``B``) strays at least
  ``delta`` from it, so the two orbits stay ``delta / 2`` apart.
* cover certificates live in the hyperspace of n-tuples of closed sets.  Given
  a cover ``(C_1, ..., C_n)`` of mesh ``<= delta``, the witness is
  ``p = {(g^-1 C_1, ..., g^-1 C_n) : g in A}``.  Every ``g.p`` contains the
  cover itself, while every tuple of ``h.p`` has a part meeting the matching
  ``D_i = {x : dist(x, C_i) >= delta}``; the orbits stay ``delta`` apart.

Building raises on unmet hypotheses; verifying never raises and returns a
report naming each check.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil
from typing import Optional, Sequence

from .cantor import CantorHomeo, in_cantor_set
from .errors import MeshTooCoarse, NotACover, NotFar, NotFarEnough, OutOfRange, VerificationFailed
from .geometry import (
    DIAGONAL,
    ONE,
    ZERO,
    CoverTuple,
    Interval,
    IntervalUnion,
    merge_intervals,
)
from .homeo import PLHomeo, evaluate, farness, graph, inverse, preimage
from .hyperspace import (
    CurveFamily,
    SetFamilyTuple,
    TupleFamily,
    act_family,
    deviation_witness,
    diag_deviation,
    family_hausdorff,
)

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class Check:
    check: str
    status: str
    witness: Optional[dict] = None

    @property
    def passed(self) -> bool:
        return self.status == "pass"


@dataclass
class VerificationReport:
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failed(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def by_name(self, name: str) -> Check:
        return next(c for c in self.checks if c.check == name)

    def add(self, name: str, failure: Optional[dict]) -> None:
        self.checks.append(Check(name, "pass" if failure is None else "fail", failure))


def _as_pl(elements) -> tuple[tuple[PLHomeo, ...], Optional[tuple[CantorHomeo, ...]]]:
    elements = tuple(elements)
    if elements and all(isinstance(e, CantorHomeo) for e in elements):
        return tuple(e.to_plhomeo() for e in elements), elements
    if not all(isinstance(e, PLHomeo) for e in elements):
        raise TypeError("A and B must be lists of PLHomeo or of CantorHomeo")
    return elements, None


def _dedupe(elements):
    seen, out = set(), []
    for e in elements:
        if e not in seen:
            seen.add(e)
            out.append(e)
    return tuple(out)


# -- curve certificates ------------------------------------------------------


@dataclass(frozen=True)
class L1Evidence:
    a_index: int
    member_index: int  # the member of p that g sends to the diagonal


@dataclass(frozen=True)
class L2Evidence:
    b_index: int
    a_index: int
    deviation: Fraction
    vertex: tuple[Fraction, Fraction]


@dataclass(frozen=True)
class RCertificate:
    A: tuple[PLHomeo, ...]
    B: tuple[PLHomeo, ...]
    delta: Fraction
    p: CurveFamily
    l1_evidence: tuple[L1Evidence, ...]
    l2_evidence: tuple[L2Evidence, ...]
    separation_bound: Fraction
    min_separation: Fraction
    space: str = "interval"
    source_A: Optional[tuple[CantorHomeo, ...]] = None
    source_B: Optional[tuple[CantorHomeo, ...]] = None


def build_r_certificate(A: Sequence, B: Sequence, space: str = "interval") -> RCertificate:
    """Run the curve construction on finite ``A`` and ``B``.

    ``delta`` is the certified minimum of ``sup |f - g|`` over ``A x B``; the
    construction only needs, for each pair, some ``x`` with
    ``|g f^-1 (x) - x| >= delta``, and ``sup_x |g f^-1 (x) - x| = sup |g - f|``.
    """
    A_pl, src_A = _as_pl(_dedupe(A))
    B_pl, src_B = _as_pl(_dedupe(B))
    if (src_A is None) != (src_B is None):
        raise TypeError("A and B must come from the same group")
    if src_A is not None and space == "interval":
        space = "cantor"
    delta = farness(A_pl, B_pl).two_delta

    inverse_graphs = [graph(inverse(g)) for g in A_pl]
    p = CurveFamily.of(inverse_graphs)
    member_index = {curve: k for k, curve in enumerate(p.members)}

    l1 = []
    for i, g in enumerate(A_pl):
        k = member_index[inverse_graphs[i]]
        if DIAGONAL not in act_family(g, CurveFamily((p.members[k],))):
            raise VerificationFailed("g does not send graph(g^-1) to the diagonal", {"a_index": i})
        l1.append(L1Evidence(i, k))

    l2 = []
    for j, h in enumerate(B_pl):
        for i, curve in enumerate(inverse_graphs):
            moved = act_family(h, CurveFamily((curve,))).members[0]
            vertex = deviation_witness(moved)
            dev = abs(vertex[0] - vertex[1])
            if dev < delta:
                raise VerificationFailed("member of h.p misses the far set", {"b_index": j, "a_index": i})
            l2.append(L2Evidence(j, i, dev, vertex))

    orbits_A = [act_family(g, p) for g in A_pl]
    orbits_B = [act_family(h, p) for h in B_pl]
    min_sep = min(family_hausdorff(a, b) for a in orbits_A for b in orbits_B)
    bound = delta / 2
    if min_sep < bound:
        raise VerificationFailed("orbits closer than delta/2", {"min_separation": str(min_sep)})
    return RCertificate(
        A_pl, B_pl, delta, p, tuple(l1), tuple(l2), bound, min_sep,
        space=space, source_A=src_A, source_B=src_B,
    )


def verify_r_certificate(c: RCertificate) -> VerificationReport:
    """Independently re-check a curve certificate from its A, B, delta and p."""
    report = VerificationReport()
    audit = None
    if c.delta <= 0:
        audit = {"reason": "delta must be positive"}
    elif c.separation_bound < c.delta / 2:
        audit = {"reason": "separation bound below delta/2"}
    elif c.source_A is not None:
        for name, src, pl in (("A", c.source_A, c.A), ("B", c.source_B, c.B)):
            if src is None or tuple(e.to_plhomeo() for e in src) != tuple(pl):
                audit = {"reason": f"{name} does not match its Cantor source"}
    report.add("audit", audit)

    orbits_A = [act_family(g, c.p) for g in c.A]
    orbits_B = [act_family(h, c.p) for h in c.B]

    fail = None
    for i, q in enumerate(orbits_A):
        if DIAGONAL not in q:
            fail = {"a_index": i}
            break
    report.add("l1_contains_diagonal", fail)

    fail = None
    for j, q in enumerate(orbits_B):
        for k, curve in enumerate(q.members):
            dev = diag_deviation(curve)
            if dev < c.delta:
                fail = {"b_index": j, "member": k, "deviation": str(dev), "delta": str(c.delta)}
                break
        if fail:
            break
    report.add("l2_deviation", fail)

    fail = None
    for i, qa in enumerate(orbits_A):
        for j, qb in enumerate(orbits_B):
            d = family_hausdorff(qa, qb)
            if d < c.delta / 2 or d < c.separation_bound:
                fail = {"a_index": i, "b_index": j, "distance": str(d)}
                break
        if fail:
            break
    report.add("separation", fail)

    # The two closed families are disjoint: the diagonal deviates by 0 < delta.
    fail = None
    for i, q in enumerate(orbits_A):
        if all(diag_deviation(curve) >= c.delta for curve in q.members):
            fail = {"a_index": i, "reason": "g.p satisfies both predicates"}
    for j, q in enumerate(orbits_B):
        if DIAGONAL in q:
            fail = {"b_index": j, "reason": "h.p satisfies both predicates"}
    report.add("exclusion", fail)

    if c.space.startswith("cantor"):
        fail = None
        for j, q in enumerate(orbits_B):
            for curve in q.members:
                x, y = deviation_witness(curve)
                if not (in_cantor_set(x) and in_cantor_set(y)):
                    fail = {"b_index": j, "vertex": [str(x), str(y)]}
        report.add("witnesses_in_cantor_set", fail)
    return report


# -- cover certificates ------------------------------------------------------


def uniform_cover(delta) -> CoverTuple:
    """The partition of [0, 1] into ``ceil(1/delta)`` equal closed intervals."""
    delta = Fraction(delta)
    if not ZERO < delta <= ONE:
        raise OutOfRange("delta must lie in (0, 1]")
    n = ceil(1 / delta)
    return CoverTuple(tuple(IntervalUnion(((Fraction(i, n), Fraction(i + 1, n)),)) for i in range(n)))


def far_set(C: IntervalUnion, delta: Fraction) -> tuple[Interval, ...]:
    """``{x in [0, 1] : dist(x, C) >= delta}`` as closed intervals (possibly none)."""
    out = []
    start = ZERO
    for a, b in C.intervals:
        if a - delta >= start:
            out.append((start, a - delta))
        start = max(start, b + delta)
    if start <= ONE:
        out.append((start, ONE))
    return tuple(merge_intervals(out))


def _meets(part: IntervalUnion, region: tuple[Interval, ...]) -> bool:
    return bool(region) and part.meets(IntervalUnion(region))


def in_k1(T: SetFamilyTuple, cover: CoverTuple) -> bool:
    return all(F.issubset(C) for F, C in zip(T.parts, cover.parts))


def in_k2(T: SetFamilyTuple, d_sets: Sequence[tuple[Interval, ...]]) -> bool:
    return any(_meets(F, D) for F, D in zip(T.parts, d_sets))


@dataclass(frozen=True)
class K1Evidence:
    a_index: int
    member_index: int  # F_g inside p


@dataclass(frozen=True)
class K2Evidence:
    b_index: int
    a_index: int
    x: Fraction
    part: int
    hx: Fraction  # h(x), lying in h g^-1 (C_part) and in D_part


@dataclass(frozen=True)
class CoverCertificate:
    A: tuple[PLHomeo, ...]
    B: tuple[PLHomeo, ...]
    delta: Fraction
    two_delta: Fraction
    cover: CoverTuple
    d_sets: tuple[tuple[Interval, ...], ...]
    p: TupleFamily
    k1_evidence: tuple[K1Evidence, ...]
    k2_evidence: tuple[K2Evidence, ...]
    separation_bound: Fraction
    min_separation: Fraction


def pullback(g: PLHomeo, cover: CoverTuple) -> SetFamilyTuple:
    """``F_g = (g^-1 C_1, ..., g^-1 C_n)``."""
    return SetFamilyTuple(tuple(preimage(g, C) for C in cover.parts))


def build_cover_certificate(A: Sequence[PLHomeo], B: Sequence[PLHomeo], cover: CoverTuple, delta) -> CoverCertificate:
    delta = Fraction(delta)
    if delta <= 0:
        raise OutOfRange("delta must be positive")
    A, B = _dedupe(A), _dedupe(B)
    try:
        far = farness(A, B)
    except NotFar as exc:
        raise NotFarEnough(str(exc)) from exc
    if far.two_delta < 2 * delta:
        raise NotFarEnough(f"certified separation {far.two_delta} < 2*delta = {2 * delta}")
    if not cover.is_cover():
        raise NotACover("parts do not union to [0, 1]")
    coarse = max(part.diameter for part in cover.parts)
    if coarse > delta:
        raise MeshTooCoarse(f"mesh {coarse} exceeds delta {delta}")

    d_sets = tuple(far_set(C, delta) for C in cover.parts)
    pulled = [pullback(g, cover) for g in A]
    p = TupleFamily.of(pulled)
    index = {T: k for k, T in enumerate(p.members)}

    k1 = []
    for i, g in enumerate(A):
        k = index[pulled[i]]
        if not in_k1(act_family(g, TupleFamily((pulled[i],))).members[0], cover):
            raise VerificationFailed("g.F_g is not the cover", {"a_index": i})
        k1.append(K1Evidence(i, k))

    k2 = []
    for j, h in enumerate(B):
        for i, g in enumerate(A):
            x = far.witness(i, j).x
            gx, hx = evaluate(g, x), evaluate(h, x)
            part = next(k for k, C in enumerate(cover.parts) if C.contains(gx))
            if not (d_sets[part] and IntervalUnion(d_sets[part]).contains(hx)):
                raise VerificationFailed("h(x) escaped D_i", {"b_index": j, "a_index": i})
            k2.append(K2Evidence(j, i, x, part, hx))

    orbits_A = [act_family(g, p) for g in A]
    orbits_B = [act_family(h, p) for h in B]
    min_sep = min(family_hausdorff(a, b) for a in orbits_A for b in orbits_B)
    if min_sep < delta:
        raise VerificationFailed("orbits closer than delta", {"min_separation": str(min_sep)})
    return CoverCertificate(A, B, delta, far.two_delta, cover, d_sets, p, tuple(k1), tuple(k2), delta, min_sep)


def verify_cover_certificate(c: CoverCertificate) -> VerificationReport:
    report = VerificationReport()
    audit = None
    if c.delta <= 0:
        audit = {"reason": "delta must be positive"}
    elif not c.cover.is_cover():
        audit = {"reason": "parts do not union to [0, 1]"}
    elif max(C.diameter for C in c.cover.parts) > c.delta:
        audit = {"reason": "a part is wider than delta"}
    elif len(c.d_sets) != len(c.cover) or c.p.arity != len(c.cover):
        audit = {"reason": "arity mismatch"}
    else:
        for i, C in enumerate(c.cover.parts):
            if far_set(C, c.delta) != tuple(c.d_sets[i]):
                audit = {"reason": "stored D_i differs from the recomputed one", "part": i}
                break
    report.add("cover_audit", audit)
    if audit and audit["reason"] == "arity mismatch":
        return report

    orbits_A = [act_family(g, c.p) for g in c.A]
    orbits_B = [act_family(h, c.p) for h in c.B]

    fail = None
    for i, q in enumerate(orbits_A):
        if not any(in_k1(T, c.cover) for T in q.members):
            fail = {"a_index": i}
            break
    report.add("k1_membership", fail)

    fail = None
    for j, q in enumerate(orbits_B):
        for k, T in enumerate(q.members):
            if not in_k2(T, c.d_sets):
                fail = {"b_index": j, "member": k}
                break
        if fail:
            break
    report.add("k2_all_members", fail)

    fail = None
    for i, qa in enumerate(orbits_A):
        for j, qb in enumerate(orbits_B):
            d = family_hausdorff(qa, qb)
            if d < c.delta or d < c.separation_bound:
                fail = {"a_index": i, "b_index": j, "distance": str(d)}
                break
        if fail:
            break
    report.add("separation", fail)

    fail = None
    for ev in c.k2_evidence:
        g, h = c.A[ev.a_index], c.B[ev.b_index]
        D = c.d_sets[ev.part]
        if not (
            evaluate(h, ev.x) == ev.hx
            and c.cover.parts[ev.part].contains(evaluate(g, ev.x))
            and D and IntervalUnion(D).contains(ev.hx)
        ):
            fail = {"b_index": ev.b_index, "a_index": ev.a_index, "x": str(ev.x)}
            break
    report.add("k2_evidence", fail)

    fail = None
    for i, q in enumerate(orbits_A):
        if all(in_k2(T, c.d_sets) for T in q.members):
            fail = {"a_index": i, "reason": "g.p satisfies both predicates"}
    for j, q in enumerate(orbits_B):
        if any(in_k1(T, c.cover) for T in q.members):
            fail = {"b_index": j, "reason": "h.p satisfies both predicates"}
    report.add("exclusion", fail)
    return report
