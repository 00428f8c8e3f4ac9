import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from pentagons.cli import run
from pentagons.constructions import parabolic
from pentagons.geom import signotope_of

GOLDEN = json.loads((Path(__file__).parent / "golden" / "cli_json.json").read_text())


def cli(argv, capsys, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = run(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_pipeline_subprocess():
    construct = subprocess.run([sys.executable, "-m", "pentagons", "construct", "--kind", "parabolic", "--n", "16"],
                               capture_output=True, text=True, check=True)
    count = subprocess.run([sys.executable, "-m", "pentagons", "count", "--k", "5"], input=construct.stdout,
                           capture_output=True, text=True, check=True)
    assert count.stdout.strip() == "112"


def test_count_json(capsys, monkeypatch):
    code, out, _ = cli(["count", "--json"], capsys, parabolic(16).to_json(), monkeypatch)
    assert code == 0 and json.loads(out) == GOLDEN["count"]


def test_encode_file(tmp_path, capsys, monkeypatch):
    monkeypatch.chdir(tmp_path)
    code, out, _ = cli(["encode", "--n", "9", "--symmetry", "--wcnf", "out.wcnf", "--json"], capsys)
    assert code == 0 and json.loads(out) == GOLDEN["encode"]
    assert (tmp_path / "out.wcnf").read_text().splitlines()[0] == "p wcnf 210 2170 127"


def test_encode_cnf_stdout(capsys):
    code, out, _ = cli(["encode", "--n", "5"], capsys)
    assert code == 0 and out.splitlines()[0] == "p cnf 10 48"
    code, out, _ = cli(["encode", "--n", "9", "--no-axioms"], capsys)
    assert out.splitlines()[0] == "p cnf 84 1008"


def test_encode_cubes(tmp_path, capsys, monkeypatch):
    monkeypatch.chdir(tmp_path)
    code, _, _ = cli(["encode", "--n", "9", "--symmetry", "--wcnf", "mu.wcnf", "--cubes", "--icnf", "mu.icnf"], capsys)
    assert code == 0
    assert len(list(tmp_path.glob("mu.cube*.wcnf"))) == 8
    assert len((tmp_path / "mu.icnf").read_text().splitlines()) >= 8


def test_solve_json(tmp_path, capsys):
    model = tmp_path / "m.txt"
    code, out, _ = cli(["solve", "--n", "9", "--json", "--model-file", str(model)], capsys)
    payload = json.loads(out)
    assert code == 0 and payload["optimum"] == 1 and payload["n"] == 9
    assert sorted(payload) == GOLDEN["solve"]
    assert model.read_text().startswith("v ")


def test_solve_wcnf_file(tmp_path, capsys):
    f = tmp_path / "nine.wcnf"
    cli(["encode", "--n", "9", "--symmetry", "--wcnf", str(f)], capsys)
    code, out, _ = cli(["solve", "--wcnf", str(f), "--json"], capsys)
    assert code == 0 and json.loads(out)["optimum"] == 1


def test_solve_budget_exit_code(capsys):
    code, out, _ = cli(["solve", "--n", "10", "--budget", "100", "--json"], capsys)
    payload = json.loads(out)
    assert code == 2 and payload["optimum"] is None and payload["lower"] <= 2
    assert payload["upper"] is None or payload["upper"] >= 2


def test_cubes_solve(capsys):
    code, out, _ = cli(["cubes", "--n", "9", "--solve", "--json", "--jobs", "2"], capsys)
    payload = json.loads(out)
    assert code == 0 and payload["cubes"] == 8 and payload["optimum"] == 1 and len(payload["optima"]) == 8


def test_sls_json(tmp_path, capsys):
    out_file = tmp_path / "best.sig"
    code, out, err = cli(["sls", "--n", "9", "--seed", "3", "--max-flips", "200000", "--target", "1",
                          "--progress", "--progress-every", "1000", "--out", str(out_file), "--json"], capsys)
    payload = json.loads(out)
    assert code == 0 and payload["best"] == 1 and payload["seed"] == 3
    assert sorted(payload) == GOLDEN["sls"]
    assert out_file.read_text().startswith("9\n")


def test_sls_portfolio_deterministic(capsys):
    argv = ["sls", "--n", "10", "--seeds", "4", "--jobs", "2", "--max-flips", "20000", "--json"]
    _, first, _ = cli(argv, capsys)
    _, second, _ = cli(argv, capsys)
    assert first == second


def test_signotope_realize_verify(tmp_path, capsys, monkeypatch):
    pts = tmp_path / "p.json"
    pts.write_text(parabolic(10).to_json())
    sig = tmp_path / "s.txt"
    assert cli(["signotope", "--points", str(pts), "--out", str(sig)], capsys)[0] == 0
    assert sig.read_text() == signotope_of(parabolic(10)).to_text()

    code, out, _ = cli(["verify", "--points", str(pts), "--json"], capsys)
    assert code == 0 and json.loads(out) == GOLDEN["verify_points"]
    code, out, _ = cli(["verify", "--signotope", str(sig), "--json"], capsys)
    assert code == 0 and json.loads(out) == GOLDEN["verify_signotope"]

    svg = tmp_path / "r.svg"
    code, out, _ = cli(["realize", "--signotope", str(sig), "--svg", str(svg), "--json"], capsys)
    payload = json.loads(out)
    assert code == 0 and payload["status"] == "Realized" and sorted(payload) == GOLDEN["realize"]
    assert svg.read_text().startswith("<svg")


def test_bounds_csv_and_json(capsys):
    code, out, _ = cli(["bounds", "--n", "17", "--from", "16=112"], capsys)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "n,lower,upper,provenance" and lines[1].startswith("17,159,182,")
    code, out, _ = cli(["bounds", "--n", "17", "--json"], capsys)
    rows = json.loads(out)
    assert [{k: r[k] for k in ("lower", "n", "upper")} for r in rows] == GOLDEN["bounds"]
    code, out, _ = cli(["bounds", "--n-min", "9", "--n", "16"], capsys)
    assert len(out.splitlines()) == 9


def test_malformed_inputs(tmp_path, capsys, monkeypatch):
    assert cli(["count"], capsys, "not json", monkeypatch)[0] == 1
    bad = tmp_path / "bad.sig"
    bad.write_text("4\n-+-+\n")  # violates the axioms
    assert cli(["verify", "--signotope", str(bad)], capsys)[0] == 1
    assert cli(["realize", "--signotope", str(bad)], capsys)[0] == 1
    assert cli(["construct", "--kind", "pinwheel", "--n", "10"], capsys)[0] == 1
    assert cli(["solve", "--wcnf", str(tmp_path / "missing.wcnf")], capsys)[0] == 1


def test_unknown_flag_is_error(capsys):
    with pytest.raises(SystemExit) as exc:
        run(["count", "--bogus"])
    assert exc.value.code != 0


def test_collinear_points_rejected(capsys, monkeypatch):
    text = json.dumps({"n": 3, "points": [["0", "0"], ["1", "1"], ["2", "2"]]})
    assert cli(["count", "--k", "3"], capsys, text, monkeypatch)[0] == 1
