"""Command-line interface: subcommands, exit codes, deterministic output."""

import json

import pytest

from lietriple import catalog
from lietriple import degeneration as dg
from lietriple.cli import main
from lietriple.core import lts_from_dict, lts_to_dict
from lietriple.scalars import GaussianRational


@pytest.fixture()
def t32_file(tmp_path):
    path = tmp_path / "t32.json"
    path.write_text(json.dumps(lts_to_dict(catalog.instantiate("T3,2"))))
    return str(path)


@pytest.fixture()
def t47_file(tmp_path):
    path = tmp_path / "t47.json"
    path.write_text(json.dumps(lts_to_dict(catalog.instantiate("T4,7"))))
    return str(path)


def test_check_passes(t32_file, capsys):
    assert main(["check", t32_file]) == 0
    assert "(A1)(A2)(A3) pass" in capsys.readouterr().out


def test_check_axiom_failure(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({
        "dim": 4, "field": "Q",
        "products": [{"args": [1, 2, 3], "value": {"4": "1"}}]}))
    assert main(["check", str(path)]) == 1


def test_malformed_input(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{\"products\": []}")
    assert main(["check", str(path)]) == 2
    err = capsys.readouterr().err
    assert "dim" in err


def test_invariants_reports_derivations(t47_file, capsys):
    assert main(["invariants", t47_file]) == 0
    out = capsys.readouterr().out
    assert "dim Der      = 5" in out
    assert "orbit dim    = 11" in out


def test_cohomology_output(t32_file, capsys):
    assert main(["cohomology", t32_file]) == 0
    out = capsys.readouterr().out
    assert "dim Z3 = 4" in out and "dim B3 = 1" in out and "dim H3 = 3" in out


def test_classify(t47_file, capsys):
    assert main(["classify", t47_file]) == 0
    out = capsys.readouterr().out
    assert "T4,7" in out and "certified" in out


def test_extend(tmp_path, capsys):
    spec = {"base": "T2,1",
            "thetas": [{"coeffs": [{"ijk": [1, 2, 1], "value": "1"}]}]}
    path = tmp_path / "ext.json"
    path.write_text(json.dumps(spec))
    assert main(["--format", "json", "extend", str(path)]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert lts_from_dict(doc) == catalog.instantiate("T3,2")


def test_catalog_list_and_show(capsys):
    assert main(["catalog", "list"]) == 0
    out = capsys.readouterr().out
    assert "T4,6" in out and "T1,1" in out
    assert main(["--format", "json", "catalog", "show", "T4,6", "--lambda", "2"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert lts_from_dict(doc) == catalog.instantiate("T4,6", GaussianRational(2))


def test_catalog_show_unknown(capsys):
    assert main(["catalog", "show", "T7,7"]) == 2


def test_catalog_table1(capsys):
    assert main(["catalog", "table1"]) == 0
    out = capsys.readouterr().out
    lines = [line for line in out.splitlines() if line and not line.startswith("system")]
    assert len(lines) == 13  # 8 fixed rows + 5 family samples
    assert all("yes" in line for line in lines)


def test_degen_verify(tmp_path, capsys):
    path = tmp_path / "w.json"
    path.write_text(json.dumps(dg.witness_to_dict(dg.table2_witness(11))))
    assert main(["degen", "verify", str(path)]) == 0
    assert "verified" in capsys.readouterr().out


def test_degen_verify_failure(tmp_path, capsys):
    doc = {"source": {"name": "T4,2"}, "target": {"name": "T4,3"},
           "basis": [["1", "0", "0", "0"], ["0", "1", "0", "0"],
                     ["0", "0", "1", "0"], ["0", "0", "0", "1"]]}
    path = tmp_path / "w.json"
    path.write_text(json.dumps(doc))
    assert main(["degen", "verify", str(path)]) == 1


def test_degen_graph(capsys):
    assert main(["degen", "graph", "--dim", "4"]) == 0
    out = capsys.readouterr().out
    assert "maximal nodes: T4,6*, T4,7" in out
    assert "T4,7 -> T4,8" in out


def test_degen_nondegen(tmp_path, capsys):
    path = tmp_path / "r.json"
    path.write_text(json.dumps(dg.separating_set_to_dict(dg.table3_separating_set(3))))
    code = main(["degen", "nondegen", str(path), "--target", "T4,3",
                 "--trials", "20", "--seed", "5"])
    assert code == 0
    out = capsys.readouterr().out
    assert "borel-randomized" in out and "escape-search" in out
    code = main(["degen", "nondegen", str(path), "--target", "T4,3",
                 "--mode", "symbolic", "--trials", "20"])
    assert code == 0


def test_field_restriction(tmp_path, capsys):
    doc = lts_to_dict(catalog.instantiate("T4,6", GaussianRational(0, 1)))
    path = tmp_path / "complex.json"
    path.write_text(json.dumps(doc))
    assert main(["--field", "Q", "check", str(path)]) == 2


def test_json_output_deterministic(t47_file, capsys):
    main(["--format", "json", "invariants", t47_file])
    first = capsys.readouterr().out
    main(["--format", "json", "invariants", t47_file])
    second = capsys.readouterr().out
    assert first == second
    payload = json.loads(first)
    assert payload["dimDer"] == 5 and payload["orbitDim"] == 11


def test_loader_round_trip(tmp_path, capsys):
    system = catalog.instantiate("T4,8")
    doc = lts_to_dict(system)
    path = tmp_path / "t48.json"
    path.write_text(json.dumps(doc, sort_keys=True))
    assert main(["--format", "json", "catalog", "show", "T4,8"]) == 0
    shown = json.loads(capsys.readouterr().out)
    assert lts_from_dict(shown) == system
