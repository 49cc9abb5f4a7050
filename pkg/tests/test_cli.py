import json
import subprocess
import sys

import pytest

from coturan.cli import EXIT_INCONCLUSIVE, EXIT_INVARIANT, EXIT_OK, EXIT_USAGE, main
from coturan.hypercore import fano_plane, read_document, write_hypergraph


@pytest.fixture
def fano_file(tmp_path):
    p = tmp_path / "fano.hg"
    p.write_text(write_hypergraph(fano_plane()))
    return p


def test_gen_steiner_writes_file(tmp_path):
    out = tmp_path / "s.hg"
    assert main(["gen-steiner", "--m", "9", "--seed", "3", "--restarts", "2", "--out", str(out)]) == EXIT_OK
    H, meta = read_document(out.read_text())
    assert H.n == 9 and meta["kind"] == "steiner" and meta["seed"] == "3"


def test_gen_steiner_is_deterministic(tmp_path):
    a, b = tmp_path / "a.hg", tmp_path / "b.hg"
    for p in (a, b):
        main(["gen-steiner", "--m", "11", "--seed", "8", "--out", str(p)])
    assert a.read_bytes() == b.read_bytes()


def test_blowup_writes_graph_and_witness(tmp_path, fano_file):
    prefix = tmp_path / "fb"
    code = main(["blowup", str(fano_file), "--d", "3", "--t", "9", "--out", str(prefix)])
    assert code == EXIT_OK
    H, meta = read_document((tmp_path / "fb.hg").read_text())
    assert H.n == 21 and meta["d"] == "3"
    rec = json.loads((tmp_path / "fb.witness.json").read_text())
    assert rec["valid"] is True and rec["tau_upper"] == "3/19" and rec["alpha"] == 8


def test_blowup_rejects_non_packing(tmp_path):
    p = tmp_path / "k4.hg"
    p.write_text("3 4 4\n0 1 2\n0 1 3\n0 2 3\n1 2 3\n")
    assert main(["blowup", str(p), "--d", "2"]) == EXIT_USAGE


def test_alpha_methods(fano_file, capsys):
    for method in ("exact", "exhaustive"):
        assert main(["alpha", str(fano_file), "--method", method]) == EXIT_OK
        rec = json.loads(capsys.readouterr().out)
        assert rec["alpha"] == 4 and rec["status"] == "exact"
    main(["alpha", str(fano_file), "--method", "greedy"])
    assert json.loads(capsys.readouterr().out)["alpha"] <= 4


def test_alpha_budget_inconclusive(tmp_path, capsys):
    p = tmp_path / "s.hg"
    main(["gen-steiner", "--m", "30", "--seed", "1", "--out", str(p)])
    assert main(["alpha", str(p), "--budget", "2"]) == EXIT_INCONCLUSIVE


def test_codegree(fano_file, capsys):
    assert main(["codegree", str(fano_file)]) == EXIT_OK
    rec = json.loads(capsys.readouterr().out)
    assert rec["max"] == rec["min"] == 1 and rec["ell"] == 2
    main(["codegree", str(fano_file), "--ell", "1"])
    assert json.loads(capsys.readouterr().out)["max"] == 3


def test_subsample_stats_line(tmp_path, capsys):
    host = tmp_path / "h.hg"
    main(["gen-steiner", "--m", "12", "--seed", "5", "--out", str(host)])
    big = tmp_path / "big"
    main(["blowup", str(host), "--d", "14", "--out", str(big)])
    capsys.readouterr()
    out = tmp_path / "sub.hg"
    code = main(["subsample", str(big) + ".hg", "--epsilon", "0.9", "--seed", "2", "--out", str(out)])
    assert code == EXIT_OK
    stats = json.loads(capsys.readouterr().out)
    assert stats["m"] == 151 and stats["trials"] >= 1
    assert read_document(out.read_text())[0].n == 151


def test_subsample_precondition_is_usage_error(fano_file):
    assert main(["subsample", str(fano_file), "--epsilon", "0.5", "--m", "5", "--seed", "0"]) == EXIT_USAGE


def test_bounds_csv(capsys):
    assert main(["bounds", "--t", "4", "--r", "3"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    header = lines[0].split(",")
    rows = [dict(zip(header, line.split(","))) for line in lines[1:]]
    by_kind = {row["kind"]: row for row in rows}
    assert by_kind["classical-lo"]["value"] == "5/9"
    assert by_kind["classical-hi"]["value"] == "2/3"
    assert by_kind["tau-hi"]["status"] == "unavailable"
    for col in ("t", "r", "ell", "n", "value", "kind", "provenance"):
        assert col in header


def test_bounds_with_constants(capsys):
    main(["bounds", "--t", "16", "--c2", "12", "--b1", "1"])
    out = capsys.readouterr().out
    assert "tau-hi" in out and "unavailable" not in out


def test_oracle_json_and_csv(capsys):
    main(["oracle", "--n", "5", "--t", "4"])
    assert json.loads(capsys.readouterr().out)["value"] == 2
    main(["oracle", "--n", "5", "--t", "2", "--format", "csv"])
    assert "infeasible" in capsys.readouterr().out


def test_malformed_file_is_usage_error(tmp_path, capsys):
    p = tmp_path / "bad.hg"
    p.write_text("3 4 1\n0 1 9\n")
    assert main(["alpha", str(p)]) == EXIT_USAGE
    assert "line 2" in capsys.readouterr().err


def test_missing_file_is_usage_error(tmp_path):
    assert main(["alpha", str(tmp_path / "nope.hg")]) == EXIT_USAGE


def test_argparse_errors_exit_2():
    with pytest.raises(SystemExit) as info:
        main(["alpha"])
    assert info.value.code == 2


def test_help_documents_csv_columns(capsys):
    with pytest.raises(SystemExit):
        main(["experiment", "--help"])
    out = capsys.readouterr().out
    assert "t,r,ell,n,m,d,value,kind,status,provenance,seed,version" in out.replace("\n", "")


def test_invariant_violation_exit_code(monkeypatch, tmp_path):
    from coturan import experiments

    def boom(cfg, table):
        raise experiments.InvariantViolation("forced")

    monkeypatch.setitem(experiments.RUNNERS, "identities", boom)
    cfg = tmp_path / "c.cfg"
    cfg.write_text("mode=identities\nseed=0\n")
    assert main(["experiment", str(cfg)]) == EXIT_INVARIANT


def test_module_entry_point(fano_file):
    proc = subprocess.run(
        [sys.executable, "-m", "coturan", "codegree", str(fano_file)], capture_output=True, text=True, check=True
    )
    assert json.loads(proc.stdout)["max"] == 1


def test_bounds_provenance_tracks_derivation(capsys):
    main(["bounds", "--t", "16", "--a2", "1.2"])
    out = capsys.readouterr().out
    assert "ledger:c2:derived" in out and "ledger:c1:missing" in out
