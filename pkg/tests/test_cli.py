import json
import subprocess
import sys

import pytest

from vietoris.cli import main

IDENTITY = {"breakpoints": [["0", "0"], ["1", "1"]]}
G = {"breakpoints": [["0", "0"], ["1/2", "1/4"], ["1", "1"]]}


def write(path, data):
    path.write_text(json.dumps(data))
    return str(path)


def run_cli(*argv):
    return main([str(a) for a in argv])


@pytest.fixture
def pair_config(tmp_path):
    return write(tmp_path / "pair.json", {"A": [IDENTITY], "B": [G]})


def test_certify_r_single_pair(tmp_path, pair_config):
    out = tmp_path / "r.json"
    assert run_cli("certify-r", "--config", pair_config, "--out", out) == 0
    report = json.loads(out.read_text())
    [entry] = report["certificates"]
    assert entry["certificate"]["separation_bound"] == "1/8"
    assert all(c["status"] == "pass" for c in entry["verification"])
    assert report["version"] and report["config"]["mode"] == "certify-r"


def test_certify_r_not_far(tmp_path):
    cfg = write(tmp_path / "same.json", {"A": [IDENTITY], "B": [IDENTITY]})
    assert run_cli("certify-r", "--config", cfg, "--out", tmp_path / "o.json") == 2


def test_group_files(tmp_path):
    a = write(tmp_path / "a.json", [IDENTITY])
    b = write(tmp_path / "b.json", {"elements": [G]})
    cfg = write(tmp_path / "c.json", {"group_files": [a, b]})
    assert run_cli("certify-r", "--config", cfg, "--out", tmp_path / "o.json") == 0


def test_mesh_check(tmp_path):
    out = tmp_path / "m.json"
    assert run_cli("mesh-check", "--delta", "1/3", "--out", out) == 0
    report = json.loads(out.read_text())
    assert report["n"] == 3 and report["refines"] is True
    assert run_cli("replay", out, "--out", tmp_path / "mr.json") == 0


def test_mesh_check_too_coarse_and_not_a_cover(tmp_path):
    coarse = write(tmp_path / "c.json", {"cover": [[["0", "1/2"]], [["1/2", "1"]]]})
    assert run_cli("mesh-check", "--delta", "1/4", "--config", coarse, "--out", tmp_path / "o.json") == 2
    gap = write(tmp_path / "g.json", {"cover": [[["0", "1/3"]], [["1/2", "1"]]]})
    assert run_cli("mesh-check", "--delta", "1/2", "--config", gap, "--out", tmp_path / "o.json") == 2


def test_replay_passes_then_fails_after_tampering(tmp_path, pair_config):
    out = tmp_path / "r.json"
    run_cli("certify-r", "--config", pair_config, "--out", out)
    assert run_cli("replay", out, "--out", tmp_path / "replayed.json") == 0
    report = json.loads(out.read_text())
    report["certificates"][0]["certificate"]["delta"] = "1/2"
    tampered = write(tmp_path / "t.json", report)
    assert run_cli("replay", tampered, "--out", tmp_path / "replayed.json") == 3
    replayed = json.loads((tmp_path / "replayed.json").read_text())
    assert replayed["outcome"] == "verification_failed"


def test_replay_of_tampered_cover_certificate(tmp_path):
    cfg = write(tmp_path / "c.json", {"random_pairs": 2, "seed": 4})
    out = tmp_path / "c_out.json"
    assert run_cli("certify-covers", "--delta", "1/8", "--config", cfg, "--out", out) == 0
    assert run_cli("replay", out, "--out", tmp_path / "x.json") == 0
    report = json.loads(out.read_text())
    report["certificates"][0]["certificate"]["d_sets"][0] = [["0", "1"]]
    assert run_cli("replay", write(tmp_path / "t.json", report), "--out", tmp_path / "x.json") == 3


def test_truncated_scan_exit_code(tmp_path):
    cfg = write(tmp_path / "s.json", {"seeds": [[["1/2", "1/2"]]], "generator_grid": [4, 8, 1]})
    out = tmp_path / "scan.json"
    assert run_cli("minimal-scan", "--config", cfg, "--epsilon", "1/8", "--budget", 3, "--out", out) == 4
    report = json.loads(out.read_text())
    assert report["truncated"] and report["lower_bound_only"]
    replayed = tmp_path / "replayed.json"
    assert run_cli("replay", out, "--out", replayed) == 4
    assert json.loads(replayed.read_text())["lower_bound_only"] is True


def test_complete_scan_and_tampered_edge(tmp_path):
    cfg = write(tmp_path / "s.json", {"seed_grid": 2, "generator_grid": [4, 8, 1]})
    out = tmp_path / "scan.json"
    assert run_cli("minimal-scan", "--config", cfg, "--epsilon", "1/2", "--out", out) == 0
    report = json.loads(out.read_text())
    assert report["all_singletons"]
    assert run_cli("replay", out, "--out", tmp_path / "r.json") == 0
    adjacency = report["graph"]["adjacency"]
    u, k = next((i, k) for i, row in enumerate(adjacency) for k, (_, v) in enumerate(row) if v != i)
    adjacency[u][k][1] = u
    assert run_cli("replay", write(tmp_path / "t.json", report), "--out", tmp_path / "r.json") == 3


def test_reflection_scan_finds_wide_component(tmp_path):
    cfg = write(tmp_path / "s.json", {"seeds": [[["0", "0"]]], "generator_grid": [4, 8, 1], "add_reflection": True})
    out = tmp_path / "scan.json"
    assert run_cli("minimal-scan", "--config", cfg, "--epsilon", "1/8", "--out", out) == 0
    report = json.loads(out.read_text())
    assert not report["all_singletons"]
    assert report["components"][0]["diameter"] == "1"


def test_dichotomy_point(tmp_path):
    cfg = write(tmp_path / "d.json", {"points": [["1/3", "2/3"]]})
    out = tmp_path / "d_out.json"
    assert run_cli("dichotomy", "--epsilon", "1/16", "--depth", 2, "--config", cfg, "--out", out) == 0
    [inst] = json.loads(out.read_text())["instances"]
    assert inst["result"]["outcome"] == "boundary_push" and inst["certified"]
    assert run_cli("replay", out, "--out", tmp_path / "r.json") == 0
    report = json.loads(out.read_text())
    report["instances"][0]["result"]["witness"] = IDENTITY
    assert run_cli("replay", write(tmp_path / "t.json", report), "--out", tmp_path / "r.json") == 3


def test_cantor_space(tmp_path):
    cfg = write(tmp_path / "c.json", {"random_pairs": 2})
    out = tmp_path / "c_out.json"
    assert run_cli("certify-r", "--space", "cantor:3", "--seed", 5, "--config", cfg, "--out", out) == 0
    cert = json.loads(out.read_text())["certificates"][0]["certificate"]
    assert cert["space"] == "cantor:3" and "source_A" in cert
    assert run_cli("replay", out, "--out", tmp_path / "r.json") == 0


def test_determinism_modulo_timing(tmp_path):
    cfg = write(tmp_path / "c.json", {"random_pairs": 3})
    reports = []
    for name in ("one.json", "two.json"):
        run_cli("certify-r", "--seed", 11, "--config", cfg, "--out", tmp_path / name)
        data = json.loads((tmp_path / name).read_text())
        data.pop("timing")
        reports.append(json.dumps(data))
    assert reports[0] == reports[1]


def test_overrides_beat_config(tmp_path):
    cfg = write(tmp_path / "c.json", {"delta": "1/2"})
    out = tmp_path / "m.json"
    run_cli("mesh-check", "--config", cfg, "--delta", "1/4", "--out", out)
    assert json.loads(out.read_text())["n"] == 4


@pytest.mark.parametrize("argv", [
    ["certify-r", "--config", "/nonexistent/config.json"],
    ["mesh-check"],
    ["mesh-check", "--delta", "0"],
    ["mesh-check", "--delta", "half"],
    ["certify-r", "--space", "cantor:x"],
    ["certify-r"],
])
def test_parse_errors(argv):
    assert run_cli(*argv) == 5


def test_bad_json_and_unknown_keys(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run_cli("certify-r", "--config", bad) == 5
    assert run_cli("replay", bad) == 5
    assert run_cli("certify-r", "--config", write(tmp_path / "u.json", {"colour": 1})) == 5
    assert run_cli("certify-r", "--config", write(tmp_path / "e.json", {"A": [{"breakpoints": [["0", "1"]]}], "B": [G]})) == 5


def test_module_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "vietoris", "mesh-check", "--delta", "1/2"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["n"] == 2
