"""JSON encoding.  Rationals always travel as ``"p/q"`` strings."""
from __future__ import annotations

from fractions import Fraction

from .cantor import CantorHomeo
from .certificates import (
    SCHEMA_VERSION,
    CoverCertificate,
    K1Evidence,
    K2Evidence,
    L1Evidence,
    L2Evidence,
    RCertificate,
    VerificationReport,
)
from .explorer import BottomComponent, DichotomyResult, GeneratorSet, TransitionGraph
from .geometry import CoverTuple, IntervalUnion, StaircaseCurve, as_rational, normalize
from .homeo import PLHomeo
from .hyperspace import CurveFamily, SetFamilyTuple, SimplexPoint, TupleFamily


def rat(x: Fraction) -> str:
    return str(x)


def parse_rat(s) -> Fraction:
    return as_rational(s)


def _pairs(pairs) -> list[list[str]]:
    return [[rat(a), rat(b)] for a, b in pairs]


def _parse_pairs(data) -> tuple[tuple[Fraction, Fraction], ...]:
    return tuple((parse_rat(a), parse_rat(b)) for a, b in data)


# -- geometry and group elements -------------------------------------------------


def interval_union_to_json(A: IntervalUnion) -> list:
    return _pairs(A.intervals)


def interval_union_from_json(data) -> IntervalUnion:
    return normalize(_parse_pairs(data))


def element_to_json(g) -> dict:
    if isinstance(g, PLHomeo):
        return {"breakpoints": _pairs(g.breakpoints)}
    if isinstance(g, CantorHomeo):
        return {"domain": list(g.domain), "range": list(g.range)}
    raise TypeError(f"not a group element: {type(g).__name__}")


def element_from_json(data):
    if "breakpoints" in data:
        return PLHomeo(_parse_pairs(data["breakpoints"]))
    if "domain" in data:
        return CantorHomeo(tuple(data["domain"]), tuple(data["range"]))
    raise ValueError("group element needs 'breakpoints' or 'domain'/'range'")


def curve_to_json(F: StaircaseCurve) -> dict:
    return {"vertices": _pairs(F.vertices)}


def curve_from_json(data) -> StaircaseCurve:
    return StaircaseCurve(_parse_pairs(data["vertices"]))


def set_tuple_to_json(T: SetFamilyTuple) -> list:
    return [interval_union_to_json(part) for part in T.parts]


def set_tuple_from_json(data) -> SetFamilyTuple:
    return SetFamilyTuple(tuple(interval_union_from_json(part) for part in data))


def cover_to_json(c: CoverTuple) -> list:
    return [interval_union_to_json(part) for part in c.parts]


def cover_from_json(data) -> CoverTuple:
    return CoverTuple(tuple(interval_union_from_json(part) for part in data))


def point_to_json(p) -> dict:
    """Tagged encoding of any hyperspace point."""
    if isinstance(p, IntervalUnion):
        return {"type": "interval_union", "value": interval_union_to_json(p)}
    if isinstance(p, StaircaseCurve):
        return {"type": "curve", "value": curve_to_json(p)}
    if isinstance(p, SetFamilyTuple):
        return {"type": "set_tuple", "value": set_tuple_to_json(p)}
    if isinstance(p, CurveFamily):
        return {"type": "curve_family", "value": [curve_to_json(F) for F in p.members]}
    if isinstance(p, TupleFamily):
        return {"type": "tuple_family", "value": [set_tuple_to_json(T) for T in p.members]}
    raise TypeError(f"cannot encode {type(p).__name__}")


def point_from_json(data):
    """Decode a tagged point; a bare list of pairs is read as an interval union."""
    if isinstance(data, list):
        return interval_union_from_json(data)
    kind, value = data["type"], data["value"]
    if kind == "interval_union":
        return interval_union_from_json(value)
    if kind == "curve":
        return curve_from_json(value)
    if kind == "set_tuple":
        return set_tuple_from_json(value)
    if kind == "curve_family":
        return CurveFamily(tuple(curve_from_json(v) for v in value))
    if kind == "tuple_family":
        return TupleFamily(tuple(set_tuple_from_json(v) for v in value))
    raise ValueError(f"unknown point type {kind!r}")


# -- certificates -------------------------------------------------------------------


def verification_to_json(report: VerificationReport) -> list[dict]:
    return [{"check": c.check, "status": c.status, "witness": c.witness} for c in report.checks]


def certificate_to_json(c) -> dict:
    if isinstance(c, RCertificate):
        out = {
            "schema_version": SCHEMA_VERSION,
            "kind": "r",
            "space": c.space,
            "A": [element_to_json(g) for g in c.A],
            "B": [element_to_json(g) for g in c.B],
            "delta": rat(c.delta),
            "p": [curve_to_json(F) for F in c.p.members],
            "l1_evidence": [{"a_index": e.a_index, "member_index": e.member_index} for e in c.l1_evidence],
            "l2_evidence": [
                {"b_index": e.b_index, "a_index": e.a_index, "deviation": rat(e.deviation), "vertex": _pairs([e.vertex])[0]}
                for e in c.l2_evidence
            ],
            "separation_bound": rat(c.separation_bound),
            "min_separation": rat(c.min_separation),
        }
        if c.source_A is not None:
            out["source_A"] = [element_to_json(g) for g in c.source_A]
            out["source_B"] = [element_to_json(g) for g in c.source_B]
        return out
    if isinstance(c, CoverCertificate):
        return {
            "schema_version": SCHEMA_VERSION,
            "kind": "cover",
            "A": [element_to_json(g) for g in c.A],
            "B": [element_to_json(g) for g in c.B],
            "delta": rat(c.delta),
            "two_delta": rat(c.two_delta),
            "cover": cover_to_json(c.cover),
            "d_sets": [_pairs(D) for D in c.d_sets],
            "p": [set_tuple_to_json(T) for T in c.p.members],
            "k1_evidence": [{"a_index": e.a_index, "member_index": e.member_index} for e in c.k1_evidence],
            "k2_evidence": [
                {"b_index": e.b_index, "a_index": e.a_index, "x": rat(e.x), "part": e.part, "hx": rat(e.hx)}
                for e in c.k2_evidence
            ],
            "separation_bound": rat(c.separation_bound),
            "min_separation": rat(c.min_separation),
        }
    raise TypeError(f"not a certificate: {type(c).__name__}")


def certificate_from_json(data):
    if data.get("schema_version") != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema_version {data.get('schema_version')!r}")
    A = tuple(element_from_json(g) for g in data["A"])
    B = tuple(element_from_json(g) for g in data["B"])
    if data["kind"] == "r":
        src_A = src_B = None
        if "source_A" in data:
            src_A = tuple(element_from_json(g) for g in data["source_A"])
            src_B = tuple(element_from_json(g) for g in data["source_B"])
        return RCertificate(
            A=A,
            B=B,
            delta=parse_rat(data["delta"]),
            p=CurveFamily(tuple(curve_from_json(F) for F in data["p"])),
            l1_evidence=tuple(L1Evidence(e["a_index"], e["member_index"]) for e in data["l1_evidence"]),
            l2_evidence=tuple(
                L2Evidence(e["b_index"], e["a_index"], parse_rat(e["deviation"]), _parse_pairs([e["vertex"]])[0])
                for e in data["l2_evidence"]
            ),
            separation_bound=parse_rat(data["separation_bound"]),
            min_separation=parse_rat(data["min_separation"]),
            space=data.get("space", "interval"),
            source_A=src_A,
            source_B=src_B,
        )
    if data["kind"] == "cover":
        return CoverCertificate(
            A=A,
            B=B,
            delta=parse_rat(data["delta"]),
            two_delta=parse_rat(data["two_delta"]),
            cover=cover_from_json(data["cover"]),
            d_sets=tuple(_parse_pairs(D) for D in data["d_sets"]),
            p=TupleFamily(tuple(set_tuple_from_json(T) for T in data["p"])),
            k1_evidence=tuple(K1Evidence(e["a_index"], e["member_index"]) for e in data["k1_evidence"]),
            k2_evidence=tuple(
                K2Evidence(e["b_index"], e["a_index"], parse_rat(e["x"]), e["part"], parse_rat(e["hx"]))
                for e in data["k2_evidence"]
            ),
            separation_bound=parse_rat(data["separation_bound"]),
            min_separation=parse_rat(data["min_separation"]),
        )
    raise ValueError(f"unknown certificate kind {data['kind']!r}")


# -- explorer ---------------------------------------------------------------------------


def graph_to_json(G: TransitionGraph) -> dict:
    adjacency: list[list[list[int]]] = [[] for _ in G.nodes]
    for u, gi, v in G.edges:
        adjacency[u].append([gi, v])
    return {
        "epsilon": rat(G.epsilon),
        "budget": G.budget,
        "truncated": G.truncated,
        "generators": [element_to_json(g) for g in G.generators],
        "symmetric": G.generators.symmetric,
        "seeds": [point_to_json(s) for s in G.seeds],
        "nodes": [point_to_json(p) for p in G.nodes],
        "adjacency": adjacency,
    }


def graph_from_json(data) -> TransitionGraph:
    gens = GeneratorSet(tuple(element_from_json(g) for g in data["generators"]), data.get("symmetric", False))
    edges = [(u, gi, v) for u, row in enumerate(data["adjacency"]) for gi, v in row]
    return TransitionGraph(
        nodes=[point_from_json(p) for p in data["nodes"]],
        edges=edges,
        epsilon=parse_rat(data["epsilon"]),
        generators=gens,
        seeds=[point_from_json(s) for s in data["seeds"]],
        budget=data["budget"],
        truncated=data["truncated"],
    )


def component_to_json(c: BottomComponent) -> dict:
    return {
        "nodes": list(c.nodes),
        "diameter": rat(c.diameter),
        "singleton": c.is_singleton,
        "lower_bound_only": c.lower_bound_only,
    }


def simplex_points_to_json(points) -> list:
    return [[rat(x) for x in p.coords] for p in points]


def simplex_points_from_json(data) -> list[SimplexPoint]:
    return [SimplexPoint(tuple(parse_rat(x) for x in p)) for p in data]


def dichotomy_to_json(r: DichotomyResult) -> dict:
    return {
        "outcome": r.outcome,
        "epsilon": rat(r.epsilon),
        "margin_after": rat(r.margin_after),
        "covering_radius_after": rat(r.covering_radius_after),
        "witness": element_to_json(r.witness) if r.witness is not None else None,
        "word": list(r.word) if r.word is not None else None,
        "method": r.method,
        "gauge": r.gauge,
    }


def dichotomy_from_json(data) -> DichotomyResult:
    return DichotomyResult(
        outcome=data["outcome"],
        epsilon=parse_rat(data["epsilon"]),
        margin_after=parse_rat(data["margin_after"]),
        covering_radius_after=parse_rat(data["covering_radius_after"]),
        witness=element_from_json(data["witness"]) if data.get("witness") else None,
        word=tuple(data["word"]) if data.get("word") is not None else None,
        method=data.get("method", ""),
        gauge=data.get("gauge", ""),
    )
