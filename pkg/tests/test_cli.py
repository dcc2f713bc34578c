import json
import subprocess
import sys
from pathlib import Path

import pytest

from mcmflop.catalogue import (
    CATALOGUE_ENV,
    CatalogueError,
    entries_for,
    family,
    load_catalogue,
    load_families,
)
from mcmflop.cli import JobSpec, main, run
from mcmflop.mf import is_minimal
from mcmflop.polycore import parse_poly

DATA = Path(__file__).parent / "data"


# ------------------------------------------------------------ catalogue


def test_catalogue_loads_and_verifies():
    entries = load_catalogue()
    assert len(entries) == 1 + 2 + 3 + 4 + 4
    assert all(is_minimal(e.M) for e in entries)
    assert {e.name: e.rank for e in entries_for("D4")} == {"D4/1": 1, "D4/2": 2, "D4/3": 1, "D4/4": 1}


def test_catalogue_rank_mismatch_is_reported(tmp_path, monkeypatch):
    text = (
        "entry A1 1 rank 2\n  ring u v w\n  poly f = u*v - w^2\n"
        "  matrix phi 2 2 = [u, w; w, v]\n  matrix psi 2 2 = [v, -w; -w, u]\nend\n"
    )
    path = tmp_path / "cat.txt"
    path.write_text(text)
    with pytest.raises(CatalogueError, match="declared rank 2, computed 1"):
        load_catalogue(path)
    monkeypatch.setenv(CATALOGUE_ENV, str(path))
    with pytest.raises(CatalogueError):
        load_catalogue()


def test_families():
    names = [fx.name for fx in load_families()]
    assert names == ["atiyah", "a2family", "cylinder"]
    with pytest.raises(KeyError):
        family("nope")


# ------------------------------------------------------------ run()


def test_run_flop_fixture():
    code, rep = run(JobSpec("flop", fixture="atiyah"))
    assert code == 0 and rep["status"] == "ok" and rep["seed"] == 0
    (fam,) = rep["families"]
    assert fam["length"] == 1 and fam["swap_certified"] and fam["rdp_type"] == "A1"


def test_run_catalogue():
    code, rep = run(JobSpec("catalogue", seed=7))
    assert code == 0 and rep["seed"] == 7
    assert len(rep["entries"]) == 14


def test_run_nonsquare_is_contract_error():
    code, rep = run(JobSpec("blowup", str(DATA / "nonsquare.txt")))
    assert code == 1 and rep["kind"] == "FactorisationError"


def test_run_parse_error_has_position():
    code, rep = run(JobSpec("verify-mf", str(DATA / "badpoly.txt")))
    assert code == 2 and rep["kind"] == "parse"
    assert rep["line"] == 2 and rep["col"] is not None


def test_run_classify_and_graph():
    code, rep = run(JobSpec("classify", str(DATA / "rdp.txt")))
    assert code == 0
    assert [c["label"] for c in rep["classifications"]] == ["D5", "E6"]
    code, rep = run(JobSpec("graph", str(DATA / "e8.txt"), length=6))
    assert code == 0
    assert rep["fundamental_cycle"] == [2, 3, 4, 6, 5, 4, 3, 2]
    assert rep["katz_morrison"]["type"] == "E8"
    code, rep = run(JobSpec("graph", length=9))
    assert code == 1


def test_run_blowup_a2():
    code, rep = run(JobSpec("blowup", str(DATA / "a2_module.txt")))
    assert code == 0
    (b,) = rep["blowups"]
    assert b["singularities"] == ["A1"] and b["exceptional_multiplicity"] == 1


def test_jobspec_validation():
    with pytest.raises(ValueError):
        JobSpec("frobnicate")
    with pytest.raises(ValueError):
        JobSpec("flop", order="grlex")


def test_reports_are_deterministic():
    a = run(JobSpec("blowup", str(DATA / "a2_module.txt"), seed=5))
    b = run(JobSpec("blowup", str(DATA / "a2_module.txt"), seed=5))
    assert a == b


# ------------------------------------------------------------ main() and the process


def test_json_output_round_trips(capsys):
    assert main(["blowup", str(DATA / "a2_module.txt"), "--format", "json", "--order", "lex"]) == 0
    rep = json.loads(capsys.readouterr().out)
    (b,) = rep["blowups"]
    for ch in b["charts"]:
        for g in ch["defining_ideal_gb"]:
            p = parse_poly(g, ch["vars"])
            assert str(p) == g
    again = json.loads(json.dumps(rep))
    assert again == rep


def test_failure_record_is_json(capsys):
    assert main(["verify-mf", str(DATA / "badpoly.txt"), "--format", "json"]) == 2
    rep = json.loads(capsys.readouterr().out)
    assert rep["status"] == "error" and rep["line"] == 2


def test_bad_flag_exit_code():
    assert main(["flop", "--order", "grlex"]) == 2


def test_module_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "mcmflop", "flop", "--format", "json"], capture_output=True, text=True, timeout=120
    )
    assert out.returncode == 0, out.stderr
    rep = json.loads(out.stdout)
    assert rep["families"][0]["length"] == 1
