import json

import pytest

from boxkit import (KneserParams, bound_report, build_upper_cover, complement, kneser_graph,
                    line_graph, profile, read_graph, standard_graph, verify_cover,
                    write_bound_report, write_cover, write_graph, write_profile)
from boxkit.cli import main
from boxkit.intervals import write_verification


@pytest.fixture
def petersen_file(tmp_path):
    path = tmp_path / "g.json"
    assert main(["gen", "kneser", "--k", "2", "--n", "5", "-o", str(path)]) == 0
    return path


def test_gen_kneser_writes_petersen(petersen_file):
    assert petersen_file.read_bytes() == write_graph(kneser_graph(2, 5))


def test_cover_build_and_verify(tmp_path, petersen_file, capsys):
    cover = tmp_path / "c.json"
    assert main(["cover", "build", "--k", "2", "--n", "5", "-o", str(cover)]) == 0
    assert cover.read_bytes() == write_cover(build_upper_cover(2, 5))
    assert main(["cover", "verify", str(petersen_file), str(cover)]) == 0
    out = capsys.readouterr().out.encode()
    assert out == write_verification(verify_cover(kneser_graph(2, 5), build_upper_cover(2, 5)))


def test_cover_verify_failure_exit_code(tmp_path, petersen_file):
    cover = tmp_path / "c.json"
    obj = json.loads(write_cover(build_upper_cover(2, 5)))
    obj["reps"], obj["dimension"] = obj["reps"][:2], 2
    cover.write_text(json.dumps(obj))
    assert main(["cover", "verify", str(petersen_file), str(cover)]) == 1


def test_exact_prints_three_for_petersen(tmp_path, petersen_file, capsys):
    cert = tmp_path / "cert.json"
    assert main(["exact", str(petersen_file), "--max-dim", "4", "--certificate", str(cert)]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "3"
    assert lines[1].startswith("nodes: ") and lines[2].startswith("wall time: ")
    # the written certificate verifies through the CLI too
    assert main(["cover", "verify", str(petersen_file), str(cert)]) == 0


def test_exact_decide_and_budget(petersen_file, capsys, monkeypatch):
    assert main(["exact", str(petersen_file), "--decide", "2"]) == 0
    assert "no" in capsys.readouterr().out
    assert main(["exact", str(petersen_file), "--max-nodes", "10"]) == 3
    monkeypatch.setenv("BOXKIT_BUDGET_NODES", "10")
    assert main(["exact", str(petersen_file)]) == 3
    assert main(["exact", str(petersen_file), "--max-nodes", "1000000"]) == 0
    monkeypatch.setenv("BOXKIT_BUDGET_NODES", "lots")
    assert main(["exact", str(petersen_file)]) == 2


def test_exact_json_is_deterministic_apart_from_wall_time(petersen_file, capsys):
    outputs = []
    for _ in range(2):
        assert main(["exact", str(petersen_file), "--json"]) == 0
        obj = json.loads(capsys.readouterr().out)
        del obj["wall_time"]
        outputs.append(obj)
    assert outputs[0] == outputs[1] and outputs[0]["value"] == 3


def test_profile_matches_library(petersen_file, capsys):
    assert main(["profile", str(petersen_file), "--complement"]) == 0
    lib = write_profile(profile(complement(kneser_graph(2, 5))))
    assert capsys.readouterr().out.encode() == lib
    assert main(["profile", str(petersen_file), "--complement", "--format", "csv", "--young"]) == 0
    cap = capsys.readouterr()
    assert cap.out.startswith("i,c_i\n1,6\n") and cap.err.startswith("######\n")


def test_bounds_matches_library(tmp_path, capsys):
    assert main(["bounds", "--k", "2", "--n", "7"]) == 0
    assert capsys.readouterr().out.encode() == write_bound_report(bound_report(KneserParams(2, 7)))
    c6 = tmp_path / "c6.json"
    c6.write_bytes(write_graph(standard_graph("cycle", 6)))
    assert main(["bounds", "--linegraph-of", str(c6)]) == 0
    assert json.loads(capsys.readouterr().out)["exact"] == 2
    assert main(["bounds", str(c6), "--acs", "--exact"]) == 0
    assert json.loads(capsys.readouterr().out)["exact"] == 2


def test_bounds_usage_errors(tmp_path):
    assert main(["bounds"]) == 2
    assert main(["bounds", "--k", "2"]) == 2
    assert main(["bounds", "--k", "2", "--n", "3"]) == 2


def test_gen_transformations(tmp_path, petersen_file, capsys):
    for family, fn in (("complement", complement), ("linegraph", line_graph)):
        assert main(["gen", family, str(petersen_file)]) == 0
        assert capsys.readouterr().out.encode() == write_graph(fn(kneser_graph(2, 5)))
    assert main(["gen", "double-cover", str(petersen_file)]) == 0
    assert read_graph(capsys.readouterr().out).n == 20
    assert main(["gen", "standard", "petersen", "--format", "dot"]) == 0
    assert capsys.readouterr().out.startswith("graph G {")


def test_invalid_inputs_exit_two(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"n": 3, "edges": [[0,0]]}')
    assert main(["profile", str(bad)]) == 2
    assert "line 1" in capsys.readouterr().err
    assert main(["profile", str(tmp_path / "missing.json")]) == 2
    assert main(["frobnicate"]) == 2
    assert main([]) == 2
    assert main(["gen", "kneser", "--k", "3", "--n", "4"]) == 2
    assert main(["exact", str(bad), "--jobs", "0"]) == 2


def test_profile_cap_exit_code(tmp_path):
    big = tmp_path / "big.json"
    big.write_bytes(write_graph(standard_graph("empty", 50)))
    assert main(["profile", str(big)]) == 3


def test_help_documents_budget_variable(capsys):
    with pytest.raises(SystemExit):
        from boxkit.cli import build_parser
        build_parser().parse_args(["--help"])
    assert "BOXKIT_BUDGET_NODES" in capsys.readouterr().out


def test_sweeps(capsys):
    assert main(["sweep", "cover", "--k", "2,3", "--n", "7..8"]) == 0
    obj = json.loads(capsys.readouterr().out)
    assert obj["ok"] and len(obj["rows"]) == 4
    assert main(["sweep", "profiles", "--count", "12", "--max-vertices", "7", "--seed", "4"]) == 0
    first = capsys.readouterr().out
    assert main(["sweep", "profiles", "--count", "12", "--max-vertices", "7", "--seed", "4"]) == 0
    assert capsys.readouterr().out == first and json.loads(first)["seed"] == 4
    assert main(["sweep", "closed-form", "--k", "2", "--n", "9"]) == 0
    assert json.loads(capsys.readouterr().out)["ok"]
    assert main(["sweep", "bounds", "--k", "2", "--n", "5..6"]) == 0
    assert len(json.loads(capsys.readouterr().out)["rows"]) == 2
