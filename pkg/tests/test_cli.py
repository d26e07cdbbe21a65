import json
import subprocess
import sys

import pytest

from chowbench import cli
from chowbench.examples import BRUS_MATRIX, BRUS_SHA256, brus_checksum
from chowbench.fan import fans_equal
from chowbench.polytope import hull, normal_fan


def run(argv, capsys):
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def docs(tmp_path, capsys):
    paths = {}
    for name, extra in [("cube", ["--n", "3"]), ("brus", []), ("segment", []), ("square", [])]:
        p = tmp_path / f"{name}.json"
        assert cli.main(["example", name, *extra, "--out", str(p)]) == 0
        paths[name] = str(p)
    p = tmp_path / "square21.json"
    cli.main(["example", "square", "--nu", "2,1", "--out", str(p)])
    paths["square21"] = str(p)
    capsys.readouterr()
    return paths


def test_example_documents(capsys):
    code, out, _ = run(["example", "cube", "--n", "2"], capsys)
    doc = json.loads(out)
    assert code == 0 and len(doc["vertices"]) == 4 and doc["nu"] == ["1", "1"]
    code, out, _ = run(["example", "brus"], capsys)
    doc = json.loads(out)
    assert [[int(x) for x in v] for v in doc["vertices"]] == [list(c) for c in zip(*BRUS_MATRIX)]
    assert brus_checksum() == BRUS_SHA256
    assert run(["example", "cube", "--n", "0"], capsys)[0] == 1
    assert run(["example", "nope"], capsys)[0] == 1


def test_analyze(docs, capsys):
    code, out, _ = run(["analyze", docs["cube"]], capsys)
    a = json.loads(out)["action_analysis"]
    assert code == 0 and a["critical_values"] == ["0", "1", "2", "3"] and a["equalized"]
    code, out, _ = run(["analyze", docs["brus"]], capsys)
    a = json.loads(out)["action_analysis"]
    assert a["critical_values"] == ["0", "1", "3", "4"] and a["b_type"]
    code, out, _ = run(["analyze", docs["square21"]], capsys)
    a = json.loads(out)["action_analysis"]
    assert code == 0 and not a["equalized"] and len(a["offending_edges"]) == 2
    assert run(["analyze", docs["square21"], "--require-equalized"], capsys)[0] == 2


def test_analyze_errors(tmp_path, docs, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"ambient_dim": "2", "vertices": [["0", "x"]], "nu": ["1", "0"]}')
    code, _, err = run(["analyze", str(bad)], capsys)
    assert code == 1 and "vertices[0][1]" in err
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    code, _, err = run(["analyze", str(broken)], capsys)
    assert code == 1 and "line 1" in err
    assert run(["analyze", str(tmp_path / "missing.json")], capsys)[0] == 1
    assert run(["analyze", docs["square"], "--nu", "0,0"], capsys)[0] == 2
    code, _, err = run(["analyze", docs["square"], "--nu", "2,2"], capsys)
    assert code == 0 and "re-parametrized" in err


def test_unknown_command_exits_1():
    with pytest.raises(SystemExit) as exc:
        cli.main(["frobnicate"])
    assert exc.value.code == 1


def test_diagram_exit_codes(docs, capsys):
    assert run(["diagram", docs["square21"]], capsys)[0] == 2
    code, out, _ = run(["diagram", docs["square21"], "--force"], capsys)
    assert code == 0 and not json.loads(out)["equalized"]
    code, out, _ = run(["diagram", docs["cube"], "--check-squares", "--cross-validate"], capsys)
    rep = json.loads(out)
    assert code == 0 and all(rep["squares"].values()) and rep["nodes"]["0,3"]["smooth"]
    code, out, _ = run(["diagram", docs["segment"]], capsys)
    rep = json.loads(out)
    assert code == 0 and [k for k in rep["nodes"] if k[0] != k[-1]] == ["0,1"]
    assert rep["edges"] == []


def test_diagram_brus(docs, capsys):
    code, out, _ = run(["diagram", docs["brus"]], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["nodes"]["0,3"]["smooth"] is False
    kinds = {(tuple(e["source"]), tuple(e["target"])): e for e in rep["edges"]}
    blowup = kinds[((0, 2), (0, 1))]
    assert blowup["classification"] == "SmoothBlowup" and len(blowup["centers"]) == 1
    assert blowup["centers"][0]["stratum_dim"] == 1
    assert kinds[((0, 3), (0, 2))]["classification"] == "Refinement"


def test_report_is_deterministic_and_reingestible(docs, capsys):
    argv = ["diagram", docs["cube"], "--emit-polytopes", "--cross-validate"]
    _, first, _ = run(argv, capsys)
    _, second, _ = run(argv, capsys)
    assert first == second
    rep = json.loads(first)
    for node in rep["nodes"].values():
        if node["fan"] is None:
            continue
        verts = [tuple(cli._parse_rational(x, "") for x in v) for v in node["polytope"]["vertices"]]
        F = normal_fan(hull(verts))
        assert [list(r) for r in F.rays] == node["fan"]["rays"]
        assert [list(c) for c in F.cones] == node["fan"]["cones"]


def test_slice_prune_chow(docs, capsys):
    code, out, _ = run(["slice", docs["cube"], "--i", "1"], capsys)
    assert code == 0 and len(json.loads(out)["polytope"]["vertices"]) == 3
    code, out, _ = run(["slice", docs["cube"], "--at", "3/2"], capsys)
    assert len(json.loads(out)["polytope"]["vertices"]) == 6
    code, out, _ = run(["prune", docs["cube"], "--i", "0", "--j", "3"], capsys)
    assert len(json.loads(out)["polytope"]["vertices"]) == 12
    code, out, _ = run(["prune", docs["cube"], "--tau", "1/3,8/3"], capsys)
    assert code == 0
    code, out, _ = run(["chow", docs["cube"], "--cross-validate"], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["routes_agree"] and len(rep["fiber"]["polytope"]["vertices"]) == 6
    assert run(["slice", docs["cube"], "--i", "9"], capsys)[0] == 1


def test_stdin_and_console_script(docs):
    with open(docs["segment"]) as fh:
        text = fh.read()
    proc = subprocess.run([sys.executable, "-m", "chowbench.cli", "analyze", "-"], input=text,
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["action_analysis"]["critical_values"] == ["0", "1"]
