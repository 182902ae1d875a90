import json
import math

import pytest

from rmtkernels.cli import EXIT_OK, EXIT_TOLERANCE, EXIT_USAGE, main


def test_specfun_selftest_passes(capsys):
    assert main(["specfun-selftest"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "PASS" in out


def test_malformed_potential_is_usage_error(capsys):
    assert main(["equilibrium", "--potential", "0,0,abc"]) == EXIT_USAGE
    assert "error" in capsys.readouterr().err


def test_missing_required_flag_is_usage_error():
    assert main(["recurrence", "--alpha", "0.0"]) == EXIT_USAGE


def test_unknown_subcommand_is_usage_error():
    assert main(["no-such-command"]) == EXIT_USAGE


def test_equilibrium_report(tmp_path, capsys):
    rep = tmp_path / "eq.json"
    assert main(["equilibrium", "--potential", "0,0,2",
                 "--report", str(rep)]) == EXIT_OK
    doc = json.loads(rep.read_text())
    assert doc["b0"] == pytest.approx(-1.0, abs=1e-10)
    assert doc["a1"] == pytest.approx(1.0, abs=1e-10)
    assert doc["psi0"] == pytest.approx(2.0 / math.pi, rel=1e-10)
    assert "PASS" in capsys.readouterr().out


def test_recurrence_table_roundtrip(tmp_path, capsys):
    table = tmp_path / "table.json"
    assert main(["recurrence", "--alpha", "0.3", "--potential", "0,0,2",
                 "--n", "6", "--max-degree", "12", "--out", str(table)]) == EXIT_OK
    doc = json.loads(table.read_text())
    assert doc["n"] == 6 and len(doc["b"]) == 13
    capsys.readouterr()

    assert main(["cauchy", "--table", str(table), "--j", "3",
                 "--z", "0.4,0.3"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "h_3" in out and "log_scale" in out

    assert main(["kernel", "--family", "II", "--table", str(table),
                 "--zeta", "0.3,0.2", "--eta=-0.4,0"]) == EXIT_OK
    assert "W_II" in capsys.readouterr().out


def test_limit_kernel_output_precision(capsys):
    assert main(["limit-kernel", "--kernel", "I", "--alpha", "0.0",
                 "--zeta", "0.7", "--eta", "0.2,0"]) == EXIT_USAGE  # bad zeta format
    capsys.readouterr()
    assert main(["limit-kernel", "--kernel", "I", "--alpha", "0.0",
                 "--zeta", "0.7,0", "--eta", "0.2,0"]) == EXIT_OK
    out = capsys.readouterr().out
    want = math.sin(math.pi * 0.5) / (math.pi * 0.5)
    assert format(want, ".17g")[:12] in out


def test_oracle_heine_check(capsys):
    assert main(["oracle", "--check", "heine", "--n", "2", "--alpha", "0.0",
                 "--potential", "0,0,1", "--points", "0.7,0"]) == EXIT_OK
    assert "PASS" in capsys.readouterr().out


def test_oracle_inverse_requires_n3(capsys):
    assert main(["oracle", "--check", "inverse", "--n", "2", "--alpha", "0.0",
                 "--potential", "0,0,1"]) == EXIT_USAGE
    assert "n 3" in capsys.readouterr().err


def test_parametrix_jump_subcommand(capsys):
    assert main(["parametrix-jump-test"]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.count("alpha =") == 3 and "PASS" in out


def test_parametrix_matrix_print(capsys):
    assert main(["parametrix", "--alpha", "0.3", "--zeta", "0.9,0.2",
                 "--sector", "1"]) == EXIT_OK
    out = capsys.readouterr().out.strip().splitlines()
    assert len(out) == 2


def test_ratio_check_subcommand(capsys):
    assert main(["ratio-check", "--alpha", "0.0", "--potential", "0,0,2",
                 "--zeta", "0.5,0.5", "--n", "4,8"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "PASS" in out and "n = 8" in out


def test_universality_csv_reproducible(tmp_path, capsys):
    args = ["universality", "--case", "T1", "--alpha", "0.0",
            "--potential", "0,0,2", "--n", "4,8"]
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(args + ["--out", str(out1)]) == EXIT_OK
    summary = [l for l in capsys.readouterr().out.splitlines() if '"slope"' in l]
    assert summary
    assert main(args + ["--out", str(out2)]) == EXIT_OK
    capsys.readouterr()
    assert out1.read_bytes() == out2.read_bytes()
    header = out1.read_text().splitlines()[0]
    assert header.startswith("n,zeta_re,zeta_im")


def test_config_file_preloads_flags(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"alpha": 0.0, "potential": "0,0,2",
                               "zeta": "0.5,0.5", "n": "4,8"}))
    assert main(["--config", str(cfg), "ratio-check"]) == EXIT_OK
    capsys.readouterr()
    # explicit flag wins over the config value
    assert main(["--config", str(cfg), "ratio-check", "--zeta", "0.5,-0.5"]) == EXIT_OK
    capsys.readouterr()


def test_config_unknown_key_rejected(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"nonsense": 1}))
    assert main(["--config", str(cfg), "specfun-selftest"]) == EXIT_USAGE
    assert "unknown config key" in capsys.readouterr().err
