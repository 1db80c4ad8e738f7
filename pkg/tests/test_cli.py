"""Command-line contract: files, round trips, exit codes."""

import json
from pathlib import Path

from stratacalc.cli import main
from stratacalc.serialize import (
    class_from_obj,
    class_to_obj,
    graph_from_obj,
    interior_from_obj,
    interior_to_obj,
    load_file,
)

FIXTURES = Path(__file__).parent / "fixtures"


def run(*argv):
    return main([str(a) for a in argv])


# ------------------------------------------------------------------ enumerate

def test_enumerate_writes_two_graphs(tmp_path):
    out = tmp_path / "g2.json"
    assert run("enumerate", "--g", 2, "--n", 0, "--max-edges", 1, "--out", out) == 0
    obj = load_file(out)
    assert obj["count"] == 2 and len(obj["graphs"]) == 2
    for g in obj["graphs"]:
        graph_from_obj(g)   # every emitted graph re-parses


def test_enumerate_smooth_only(tmp_path):
    out = tmp_path / "p03.json"
    assert run("enumerate", "--g", 0, "--n", 3, "--max-edges", 0, "--out", out) == 0
    assert load_file(out)["count"] == 1


def test_enumerate_min_edges_flag(tmp_path):
    out = tmp_path / "all.json"
    assert run("enumerate", "--g", 2, "--n", 0, "--max-edges", 1,
               "--min-edges", 0, "--out", out) == 0
    assert load_file(out)["count"] == 3


def test_enumerate_bad_args():
    assert run("enumerate", "--g", -1, "--n", 0, "--max-edges", 1) == 2
    assert run("enumerate", "--g", 2) == 2          # missing required flags


def test_enumerate_size_guard(tmp_path, monkeypatch):
    monkeypatch.setenv("STRATA_MAX_GRAPHS", "1")
    assert run("enumerate", "--g", 3, "--n", 0, "--max-edges", 2,
               "--out", tmp_path / "x.json") == 3


# ------------------------------------------------------------------------ r1

def test_r1_worked_value(tmp_path):
    out = tmp_path / "lowered.json"
    assert run("r1", "--in", FIXTURES / "fundamental_class_genus2.json",
               "--out", out) == 0
    got = class_from_obj(load_file(out))
    expected = class_from_obj(load_file(FIXTURES / "lowered_class_genus1.json"))
    assert got == expected


def test_r1_zero_class(tmp_path):
    src = tmp_path / "zero.json"
    src.write_text(json.dumps({
        "ambient": {"genus": 2, "markings": [], "max_components": 1},
        "terms": []}))
    out = tmp_path / "out.json"
    assert run("r1", "--in", src, "--out", out) == 0
    assert load_file(out)["terms"] == []


def test_r1_mismatched_ambient_exits_2():
    assert run("r1", "--in", FIXTURES / "mismatched_ambient.json") == 2


def test_r1_level2_needs_experimental(tmp_path):
    src = FIXTURES / "fundamental_class_genus2.json"
    assert run("r1", "--in", src, "--level", 2,
               "--out", tmp_path / "x.json") == 2
    assert run("r1", "--in", src, "--level", 2, "--experimental",
               "--out", tmp_path / "y.json") == 0


# ---------------------------------------------------------------------- push

def test_push_kappa_psi(tmp_path):
    out = tmp_path / "pushed.json"
    assert run("push", "--in", FIXTURES / "kappa1_psi1_interior_3_1.json",
               "--forget", 1, "--out", out) == 0
    obj = load_file(out)
    assert obj["g"] == 3 and obj["n"] == 0
    assert obj["terms"] == [{"coeff": "5", "kappa": [1], "psi": {}}]


def test_push_bad_marking_exits_2():
    assert run("push", "--in", FIXTURES / "kappa1_psi1_interior_3_1.json",
               "--forget", 2) == 2


# --------------------------------------------------------------------- faber

def test_faber_prints_exact_value(capsys):
    assert run("faber", "--g", 3, "--l", 1) == 0
    assert capsys.readouterr().out.strip() == "5"
    assert run("faber", "--g", 4, "--l", 1) == 0
    assert capsys.readouterr().out.strip() == "35/3"
    assert run("faber", "--g", 3, "--l", 5) == 2


# -------------------------------------------------------------------- verify

def test_verify_passes_and_writes_report(tmp_path):
    report = tmp_path / "report.json"
    assert run("verify", "--g", 6, "--n", 0, "--k", 1,
               "--report", report) == 0
    obj = load_file(report)
    assert obj["passed"] is True
    assert obj["instance"] == {"g": 6, "n": 0, "k": 1}


def test_verify_text_output(capsys, tmp_path):
    assert run("verify", "--g", 6, "--n", 0, "--k", 1, "--text",
               "--report", tmp_path / "r.json") == 0
    out = capsys.readouterr().out
    assert "overall: pass" in out


def test_verify_corrupt_witness_table_exits_1(tmp_path):
    report = tmp_path / "report.json"
    code = run("verify", "--g", 6, "--n", 0, "--k", 1,
               "--witness-table", FIXTURES / "corrupt_witness_table.json",
               "--report", report)
    assert code == 1
    assert load_file(report)["passed"] is False


def test_verify_out_of_range_exits_2(tmp_path):
    assert run("verify", "--g", 6, "--n", 0, "--k", 3) == 2


def test_verify_guard_exits_3():
    assert run("verify", "--g", 31, "--n", 0, "--k", 1) == 3


def test_verify_recursive_flag(tmp_path):
    report = tmp_path / "rec.json"
    assert run("verify", "--g", 6, "--n", 0, "--k", 1, "--recursive",
               "--report", report) == 0
    subs = load_file(report)["sub_instances"]
    assert {"g": 5, "n": 1, "k": 1, "passed": True} in subs


# --------------------------------------------------------------- round trips

def test_all_class_fixtures_roundtrip():
    for path in sorted(FIXTURES.glob("*.json")):
        obj = load_file(path)
        if "ambient" in obj and path.name != "mismatched_ambient.json":
            x = class_from_obj(obj)
            assert class_from_obj(class_to_obj(x)) == x
        elif "terms" in obj and "g" in obj:
            x = interior_from_obj(obj)
            assert interior_from_obj(interior_to_obj(x)) == x


def test_emitted_files_reparse_to_equal_values(tmp_path):
    out = tmp_path / "lowered.json"
    run("r1", "--in", FIXTURES / "fundamental_class_genus2.json", "--out", out)
    x = class_from_obj(load_file(out))
    assert class_from_obj(class_to_obj(x)) == x


def test_outputs_identical_across_processes(tmp_path):
    """The emitted bytes do not depend on hash randomization."""
    import os
    import subprocess
    import sys

    blobs = []
    for seed in ("0", "31337"):
        env = dict(os.environ, PYTHONHASHSEED=seed)
        path = tmp_path / f"out{seed}.json"
        proc = subprocess.run(
            [sys.executable, "-m", "stratacalc.cli", "verify",
             "--g", "6", "--n", "1", "--k", "1", "--report", str(path)],
            env=env, capture_output=True)
        assert proc.returncode == 0
        blobs.append(path.read_bytes())
    assert blobs[0] == blobs[1]
