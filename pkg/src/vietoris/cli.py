"""Command-line runner.

Every subcommand reads an optional JSON config (``--config``), applies the
command-line overrides, runs, and writes a JSON report to stdout or ``--out``.
A one-line summary goes to stderr.

Exit codes: 0 verified or complete, 2 precondition failure, 3 verification
failure, 4 budget truncation, 5 I/O or parse error.
"""
from __future__ import annotations

import argparse
import json
import logging
import random
import sys
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Any, Callable, Optional

from . import __version__
from .cantor import CantorHomeo
from .certificates import (
    build_cover_certificate,
    build_r_certificate,
    uniform_cover,
    verify_cover_certificate,
    verify_r_certificate,
)
from .corpus import random_far_pair, random_simplex_sets
from .errors import NotACover, PreconditionError, VerificationFailed, VietorisError
from .explorer import (
    BOUNDARY_GAUGE,
    GeneratorSet,
    bottom_components,
    certify_dichotomy,
    dichotomy_search,
    grid_generators,
    grid_subsets,
    snap,
    act,
    symmetrize,
    transition_graph,
)
from .geometry import as_rational
from .homeo import PLHomeo
from . import serialize as ser

log = logging.getLogger("vietoris")

EXIT_OK = 0
EXIT_PRECONDITION = 2
EXIT_VERIFICATION = 3
EXIT_TRUNCATED = 4
EXIT_IO = 5

MODES = ("certify-r", "certify-covers", "minimal-scan", "dichotomy", "mesh-check")


class ConfigError(VietorisError):
    """Unreadable or inconsistent input; maps to exit code 5."""


def _decode(fn: Callable, data, what: str):
    try:
        return fn(data)
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"cannot read {what}: {exc}") from exc


def _read_json(path: str, what: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot open {what} {path!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{what} {path!r} is not valid JSON: {exc}") from exc


def parse_space(text: str) -> tuple[str, int]:
    """``"interval"`` or ``"cantor:<depth>"``."""
    if text == "interval":
        return "interval", 0
    kind, _, depth = text.partition(":")
    if kind == "cantor" and depth.isdigit() and int(depth) >= 1:
        return "cantor", int(depth)
    raise ConfigError(f"space must be 'interval' or 'cantor:<depth>', got {text!r}")


@dataclass
class ExperimentConfig:
    mode: str
    group_files: list[str] = field(default_factory=list)
    space: str = "interval"
    epsilon: Optional[str] = None
    delta: Optional[str] = None
    budget: int = 10000
    depth: int = 4
    seed: int = 0
    # inline inputs (all JSON-encoded)
    A: Optional[list] = None
    B: Optional[list] = None
    random_pairs: int = 0
    max_size: int = 5
    pair_grid: list[int] = field(default_factory=lambda: [4, 16])
    generators: Optional[list] = None
    generator_grid: Optional[list[int]] = None
    add_reflection: bool = False
    seeds: Optional[list] = None
    seed_grid: Optional[int] = None
    points: Optional[list] = None
    random_instances: int = 0
    max_points: int = 8
    coordinate_grid: int = 32
    dimension: int = 2
    max_words: int = 5000
    cover: Optional[list] = None

    @classmethod
    def from_dict(cls, data: dict) -> ExperimentConfig:
        known = set(cls.__dataclass_fields__)
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        if data.get("mode") not in MODES:
            raise ConfigError(f"mode must be one of {MODES}, got {data.get('mode')!r}")
        cfg = cls(**data)
        cfg.validate()
        return cfg

    def rational(self, name: str) -> Fraction:
        raw = getattr(self, name)
        if raw is None:
            raise ConfigError(f"mode {self.mode} needs {name}")
        value = _decode(as_rational, str(raw), name)
        if value <= 0:
            raise ConfigError(f"{name} must be positive")
        return value

    def validate(self) -> None:
        parse_space(self.space)
        for name in ("epsilon", "delta"):
            if getattr(self, name) is not None:
                self.rational(name)
        if self.budget < 1 or self.depth < 0:
            raise ConfigError("budget must be positive and depth non-negative")
        needs = {
            "certify-covers": ["delta"],
            "minimal-scan": ["epsilon"],
            "dichotomy": ["epsilon"],
            "mesh-check": ["delta"],
        }.get(self.mode, [])
        for name in needs:
            self.rational(name)

    def to_json(self) -> dict:
        return asdict(self)


def load_config(mode: str, args: argparse.Namespace) -> ExperimentConfig:
    data: dict[str, Any] = {}
    if args.config:
        data = _read_json(args.config, "config")
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
    data["mode"] = mode
    for name in ("epsilon", "delta", "budget", "depth", "seed", "space"):
        value = getattr(args, name)
        if value is not None:
            data[name] = value
    return ExperimentConfig.from_dict(data)


# -- input decoding -----------------------------------------------------------------


def _elements(data, what: str) -> list:
    if isinstance(data, dict) and "elements" in data:
        data = data["elements"]
    if not isinstance(data, list) or not data:
        raise ConfigError(f"{what} must be a nonempty list of group elements")
    return [_decode(ser.element_from_json, g, what) for g in data]


def _explicit_pair(cfg: ExperimentConfig) -> Optional[tuple[list, list]]:
    if len(cfg.group_files) >= 2:
        return (
            _elements(_read_json(cfg.group_files[0], "group file"), "A"),
            _elements(_read_json(cfg.group_files[1], "group file"), "B"),
        )
    if cfg.A is not None or cfg.B is not None:
        if cfg.A is None or cfg.B is None:
            raise ConfigError("give both A and B")
        return _elements(cfg.A, "A"), _elements(cfg.B, "B")
    return None


def _pairs(cfg: ExperimentConfig, min_two_delta=None) -> list[tuple[list, list]]:
    explicit = _explicit_pair(cfg)
    if explicit is not None:
        return [explicit]
    if cfg.random_pairs <= 0:
        raise ConfigError("give group_files, inline A/B, or random_pairs > 0")
    kind, depth = parse_space(cfg.space)
    rng = random.Random(cfg.seed)
    out = []
    for _ in range(cfg.random_pairs):
        pair = random_far_pair(
            rng, kind, cfg.max_size, depth=depth, grid=tuple(cfg.pair_grid), min_two_delta=min_two_delta
        )
        if pair is None:
            raise ConfigError("could not draw a far pair; loosen the constraints")
        out.append(pair)
    return out


def _generators(cfg: ExperimentConfig, default_grid: list[int]) -> GeneratorSet:
    if cfg.group_files:
        elems = _elements(_read_json(cfg.group_files[0], "group file"), "generators")
    elif cfg.generators is not None:
        elems = _elements(cfg.generators, "generators")
    else:
        k, m, *rest = cfg.generator_grid or default_grid
        elems = list(grid_generators(k, m, rest[0] if rest else None))
    elems = [e.to_plhomeo() if isinstance(e, CantorHomeo) else e for e in elems]
    if cfg.add_reflection:
        elems.append(PLHomeo.reflection())
    return GeneratorSet(symmetrize(elems), symmetric=True)


def _as_pl(elems: list) -> list[PLHomeo]:
    return [e.to_plhomeo() if isinstance(e, CantorHomeo) else e for e in elems]


# -- modes ----------------------------------------------------------------------------


def _certificate_entries(cfg, build, verify, pairs) -> tuple[list[dict], int]:
    entries, code = [], EXIT_OK
    for A, B in pairs:
        try:
            cert = build(A, B)
        except PreconditionError as exc:
            entries.append({"status": "precondition_failed", "error": type(exc).__name__, "message": str(exc)})
            code = max(code, EXIT_PRECONDITION)
            continue
        except VerificationFailed as exc:
            entries.append({"status": "verification_failed", "message": str(exc), "witness": exc.witness})
            code = EXIT_VERIFICATION
            continue
        report = verify(cert)
        entries.append({
            "status": "verified" if report.passed else "verification_failed",
            "certificate": ser.certificate_to_json(cert),
            "verification": ser.verification_to_json(report),
        })
        if not report.passed:
            code = EXIT_VERIFICATION
    return entries, code


def _outcome(code: int) -> str:
    return {
        EXIT_OK: "verified",
        EXIT_PRECONDITION: "precondition_failed",
        EXIT_VERIFICATION: "verification_failed",
        EXIT_TRUNCATED: "truncated",
    }[code]


def run_certify_r(cfg: ExperimentConfig) -> tuple[dict, int]:
    space = cfg.space
    entries, code = _certificate_entries(
        cfg, lambda A, B: build_r_certificate(A, B, space=space), verify_r_certificate, _pairs(cfg)
    )
    return {"outcome": _outcome(code), "certificates": entries}, code


def run_certify_covers(cfg: ExperimentConfig) -> tuple[dict, int]:
    delta = cfg.rational("delta")
    if cfg.cover is not None:
        cover = _decode(ser.cover_from_json, cfg.cover, "cover")
    else:
        cover = uniform_cover(delta)
    pairs = [(_as_pl(A), _as_pl(B)) for A, B in _pairs(cfg, min_two_delta=2 * delta)]
    entries, code = _certificate_entries(
        cfg, lambda A, B: build_cover_certificate(A, B, cover, delta), verify_cover_certificate, pairs
    )
    return {"outcome": _outcome(code), "certificates": entries}, code


def run_minimal_scan(cfg: ExperimentConfig) -> tuple[dict, int]:
    epsilon = cfg.rational("epsilon")
    if cfg.seeds is not None:
        seeds = [_decode(ser.point_from_json, s, "seed") for s in cfg.seeds]
    elif cfg.seed_grid is not None:
        seeds = grid_subsets(cfg.seed_grid)
    else:
        raise ConfigError("minimal-scan needs seeds or seed_grid")
    if not seeds:
        raise ConfigError("minimal-scan needs at least one seed")
    gens = _generators(cfg, [8, 16, 1])
    G = transition_graph(seeds, gens, epsilon, cfg.budget)
    comps = bottom_components(G)
    code = EXIT_TRUNCATED if G.truncated else EXIT_OK
    return {
        "outcome": "truncated" if G.truncated else "complete",
        "truncated": G.truncated,
        "lower_bound_only": G.truncated,
        "node_count": len(G.nodes),
        "all_singletons": all(c.is_singleton for c in comps),
        "components": [ser.component_to_json(c) for c in comps],
        "graph": ser.graph_to_json(G),
    }, code


def run_dichotomy(cfg: ExperimentConfig) -> tuple[dict, int]:
    epsilon = cfg.rational("epsilon")
    if cfg.points is not None:
        instances = [_decode(ser.simplex_points_from_json, cfg.points, "points")]
    elif cfg.random_instances > 0:
        rng = random.Random(cfg.seed)
        instances = random_simplex_sets(rng, cfg.random_instances, cfg.dimension, cfg.max_points, cfg.coordinate_grid)
    else:
        raise ConfigError("dichotomy needs points or random_instances > 0")
    if any(not S for S in instances):
        raise ConfigError("point sets must be nonempty")
    gens = _generators(cfg, [4, 16, 1])
    results, code = [], EXIT_OK
    for S in instances:
        r = dichotomy_search(S, epsilon, gens, cfg.depth, cfg.max_words)
        certified = certify_dichotomy(S, r) if r.resolved else None
        if r.resolved and not certified:
            code = EXIT_VERIFICATION
        results.append({
            "points": ser.simplex_points_to_json(S),
            "result": ser.dichotomy_to_json(r),
            "certified": certified,
        })
    resolved = sum(1 for e in results if e["result"]["outcome"] != "unresolved")
    return {
        "outcome": "verification_failed" if code else "complete",
        "gauge": BOUNDARY_GAUGE,
        "resolved": resolved,
        "unresolved": len(results) - resolved,
        "instances": results,
    }, code


def run_mesh_check(cfg: ExperimentConfig) -> tuple[dict, int]:
    mu = cfg.rational("delta")
    if cfg.cover is not None:
        cover = _decode(ser.cover_from_json, cfg.cover, "cover")
    else:
        cover = uniform_cover(mu)
    if not cover.is_cover():
        raise NotACover("parts do not union to [0, 1]")
    widest = max(part.diameter for part in cover.parts)
    refines = widest <= mu
    return {
        "outcome": "refines" if refines else "too_coarse",
        "mu": str(mu),
        "n": len(cover),
        "mesh": str(widest),
        "refines": refines,
        "cover": ser.cover_to_json(cover),
    }, EXIT_OK if refines else EXIT_PRECONDITION


RUNNERS = {
    "certify-r": run_certify_r,
    "certify-covers": run_certify_covers,
    "minimal-scan": run_minimal_scan,
    "dichotomy": run_dichotomy,
    "mesh-check": run_mesh_check,
}


def run(cfg: ExperimentConfig) -> tuple[dict, int]:
    """Dispatch one experiment; the report is deterministic apart from ``timing``."""
    started = time.perf_counter()
    body, code = RUNNERS[cfg.mode](cfg)
    report = {
        "tool": "vietoris",
        "version": __version__,
        "mode": cfg.mode,
        "config": cfg.to_json(),
        **body,
        "exit_code": code,
        "timing": {"seconds": f"{time.perf_counter() - started:.3f}"},
    }
    return report, code


# -- replay ------------------------------------------------------------------------------


def _replay_certificates(report: dict) -> tuple[dict, int]:
    results, code = [], EXIT_OK
    for k, entry in enumerate(report.get("certificates", [])):
        if "certificate" not in entry:
            results.append({"index": k, "status": entry.get("status", "precondition_failed")})
            code = max(code, EXIT_VERIFICATION if entry.get("status") == "verification_failed" else EXIT_PRECONDITION)
            continue
        cert = _decode(ser.certificate_from_json, entry["certificate"], f"certificate {k}")
        verify = verify_r_certificate if entry["certificate"]["kind"] == "r" else verify_cover_certificate
        checked = verify(cert)
        results.append({
            "index": k,
            "status": "verified" if checked.passed else "verification_failed",
            "verification": ser.verification_to_json(checked),
        })
        if not checked.passed:
            code = EXIT_VERIFICATION
    return {"certificates": results}, code


def _replay_scan(report: dict) -> tuple[dict, int]:
    G = _decode(ser.graph_from_json, report["graph"], "graph")
    problems = []
    out_degree = [0] * len(G.nodes)
    for u, gi, v in G.edges:
        out_degree[u] += 1
        if not (0 <= gi < len(G.generators) and 0 <= v < len(G.nodes)):
            problems.append({"edge": [u, gi, v], "reason": "index out of range"})
        elif snap(act(G.nodes[u], G.generators[gi]), G.epsilon) != G.nodes[v]:
            problems.append({"edge": [u, gi, v], "reason": "target is not the snapped image"})
    if not G.truncated:
        for u, deg in enumerate(out_degree):
            if deg != len(G.generators):
                problems.append({"node": u, "reason": "missing outgoing edges"})
    comps = [ser.component_to_json(c) for c in bottom_components(G)]
    if comps != report.get("components"):
        problems.append({"reason": "stored components differ from recomputed ones"})
    code = EXIT_VERIFICATION if problems else (EXIT_TRUNCATED if G.truncated else EXIT_OK)
    return {
        "problems": problems,
        "truncated": G.truncated,
        "lower_bound_only": G.truncated,
        "components": comps,
    }, code


def _replay_dichotomy(report: dict) -> tuple[dict, int]:
    results, code = [], EXIT_OK
    for k, entry in enumerate(report.get("instances", [])):
        S = _decode(ser.simplex_points_from_json, entry["points"], f"instance {k}")
        r = _decode(ser.dichotomy_from_json, entry["result"], f"instance {k}")
        ok = certify_dichotomy(S, r) if r.resolved else None
        if r.resolved and not ok:
            code = EXIT_VERIFICATION
        results.append({"index": k, "outcome": r.outcome, "certified": ok})
    return {"instances": results}, code


def _replay_mesh(report: dict) -> tuple[dict, int]:
    cover = _decode(ser.cover_from_json, report["cover"], "cover")
    mu = _decode(as_rational, report["mu"], "mu")
    if not cover.is_cover():
        return {"refines": False, "reason": "not a cover"}, EXIT_VERIFICATION
    widest = max(part.diameter for part in cover.parts)
    refines = widest <= mu
    if str(widest) != report.get("mesh") or refines != report.get("refines"):
        return {"refines": refines, "reason": "stored mesh differs"}, EXIT_VERIFICATION
    return {"refines": refines, "mesh": str(widest)}, EXIT_OK if refines else EXIT_PRECONDITION


def replay(path: str) -> tuple[dict, int]:
    """Re-run only the checking half of a stored report."""
    report = _read_json(path, "report")
    if not isinstance(report, dict) or report.get("mode") not in MODES:
        raise ConfigError("not a report produced by this tool")
    mode = report["mode"]
    try:
        if mode in ("certify-r", "certify-covers"):
            body, code = _replay_certificates(report)
        elif mode == "minimal-scan":
            body, code = _replay_scan(report)
        elif mode == "dichotomy":
            body, code = _replay_dichotomy(report)
        else:
            body, code = _replay_mesh(report)
    except KeyError as exc:
        raise ConfigError(f"report lacks field {exc}") from exc
    out = {"tool": "vietoris", "version": __version__, "mode": "replay", "source_mode": mode, **body}
    out["outcome"] = _outcome(code) if code != EXIT_OK else "verified"
    out["exit_code"] = code
    return out, code


# -- entry point ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="vietoris", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    for mode in MODES:
        p = sub.add_parser(mode)
        p.add_argument("--config", help="JSON experiment config")
        p.add_argument("--out", help="write the report here instead of stdout")
        p.add_argument("--epsilon", help="grid resolution, as p/q")
        p.add_argument("--delta", help="cover mesh / separation scale, as p/q")
        p.add_argument("--budget", type=int, help="node budget for graph exploration")
        p.add_argument("--depth", type=int, help="word length for dichotomy search")
        p.add_argument("--seed", type=int, help="seed for random inputs")
        p.add_argument("--space", help="interval or cantor:<depth>")
    p = sub.add_parser("replay")
    p.add_argument("report", help="report written by an earlier run")
    p.add_argument("--out")
    return parser


def _emit(report: dict, out: Optional[str]) -> None:
    text = json.dumps(report, indent=2) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        if args.command == "replay":
            report, code = replay(args.report)
        else:
            report, code = run(load_config(args.command, args))
        _emit(report, args.out)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (PreconditionError, NotACover) as exc:
        print(f"precondition failed: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except VerificationFailed as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFICATION
    print(f"{args.command}: {report['outcome']} (exit {code})", file=sys.stderr)
    return code
