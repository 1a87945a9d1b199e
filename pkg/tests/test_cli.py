"""End-to-end checks of the `es` command: payloads, CSV modes, exit codes."""

import json
import shutil
import subprocess

import pytest

from esmean import cli


@pytest.fixture(autouse=True)
def _clean_env(monkeypatch):
    monkeypatch.delenv("ES_SELFTEST_RAISE", raising=False)


def run_json(capsys, argv):
    assert cli.main(argv) == 0
    return json.loads(capsys.readouterr().out)


def test_solve_payload(capsys):
    obj = run_json(capsys, ["solve", "4"])
    assert obj["kind"] == "solution_set"
    assert obj["n"] == 4
    assert obj["canonical"] == [[2, 3, 6], [2, 4, 4], [3, 3, 3]]
    assert obj["ordered_count"] == 10
    assert obj["schema_version"] == 1


def test_split_payload(capsys):
    obj = run_json(capsys, ["split", "7"])
    assert (obj["f1"], obj["f2"], obj["other"]) == (27, 9, 0)
    assert obj["total"] == 36


def test_congruence_payload(capsys):
    obj = run_json(capsys, ["congruence", "--l", "1", "--n", "65"])
    assert obj["roots"] == 4


def test_primes_payload_and_csv_stdout(capsys):
    obj = run_json(capsys, ["primes", "--limit", "10"])
    assert obj["primes"] == [2, 3, 5, 7] and obj["count"] == 4
    assert cli.main(["primes", "--limit", "10", "--csv"]) == 0
    assert capsys.readouterr().out == "p\n2\n3\n5\n7\n"
    assert cli.main(["primes", "--limit", "10", "--csv", "-"]) == 0
    assert capsys.readouterr().out == "p\n2\n3\n5\n7\n"


def test_csv_file_keeps_json_on_stdout(capsys, tmp_path):
    target = tmp_path / "out.csv"
    assert cli.main(["split", "5", "--csv", str(target)]) == 0
    obj = json.loads(capsys.readouterr().out)
    assert obj["kind"] == "type_split"
    text = target.read_text()
    assert text.startswith("field,value\np,5\n")
    assert "f1,6\n" in text and "f2,6\n" in text


def test_mean_subcommand(capsys):
    obj = run_json(capsys, ["mean", "--x", "100"])
    assert obj["kind"] == "mean_value_report"
    assert obj["sum_f1"] > 0 and obj["sum_f2"] > 0
    assert "f1_over_x_log5x_loglog2x" in obj["ratios"]


def test_chain_subcommand(capsys):
    obj = run_json(capsys, ["chain", "--x", "1024"])
    assert obj["kind"] == "sum_report" and obj["label"] == "final_chain"
    v = obj["values"]
    assert v["line1_block_weights"] == v["line2_harmonic"]


def test_weightsum_subcommand(capsys):
    obj = run_json(capsys, ["weightsum", "--x", "64"])
    assert obj["kind"] == "weight_sum_report"
    assert obj["direct_value"] == pytest.approx(obj["dyadic_value"])


def test_bilinear_subcommand(capsys):
    obj = run_json(capsys, ["bilinear", "--v", "2", "--w", "1"])
    assert obj["values"]["sum"] == 7
    obj = run_json(capsys, ["bilinear", "--v", "32", "--w", "1024",
                            "--cases"])
    assert obj["values"]["count_rough"] == 32 * 1024
    assert obj["values"]["sum_rough"] == obj["values"]["sum"]


def test_json_flag_and_capital_aliases(capsys, tmp_path):
    obj = run_json(capsys, ["solve", "5", "--json"])
    assert obj["canonical"] == [[2, 4, 20], [2, 5, 10]]
    assert obj["ordered_count"] == 12
    upper = run_json(capsys, ["bilinear", "--V", "4", "--W", "4"])
    lower = run_json(capsys, ["bilinear", "--v", "4", "--w", "4"])
    assert upper == lower
    # --json plus CSV-to-file is fine; --json plus CSV-to-stdout is not
    target = tmp_path / "t.csv"
    assert cli.main(["split", "5", "--json", "--csv", str(target)]) == 0
    assert json.loads(capsys.readouterr().out)["p"] == 5
    assert target.exists()
    assert cli.main(["split", "5", "--json", "--csv"]) == 4
    assert "stdout" in capsys.readouterr().err


def test_lemma_subcommand(capsys):
    obj = run_json(capsys, ["lemma", "--z", "100", "--r", "2",
                            "--n-max", "10000"])
    assert obj["label"] == "smooth_d2_over_n_sum"
    assert obj["values"]["lhs"] > 0


def test_version(capsys):
    assert cli.main(["--version"]) == 0
    assert capsys.readouterr().out.strip() == "es 0.1.0 (report schema 1)"


def test_usage_errors_exit_2(capsys):
    assert cli.main([]) == 2
    assert cli.main(["split"]) == 2
    assert cli.main(["no-such-command"]) == 2
    capsys.readouterr()


def test_domain_errors_exit_2(capsys):
    assert cli.main(["solve", "0"]) == 2
    assert cli.main(["chain", "--x", "15"]) == 2
    assert "error:" in capsys.readouterr().err


def test_selftest_exit_code_table(monkeypatch, capsys):
    table = {"domain": 2, "capacity": 3, "configuration": 4, "invariant": 5}
    for value, code in table.items():
        monkeypatch.setenv("ES_SELFTEST_RAISE", value)
        assert cli.main(["primes", "--limit", "5"]) == code
    monkeypatch.setenv("ES_SELFTEST_RAISE", "bogus")
    assert cli.main(["primes", "--limit", "5"]) == 2
    capsys.readouterr()


def test_unexpected_error_exits_6(monkeypatch, capsys):
    def boom(l, n):
        raise RuntimeError("synthetic")
    monkeypatch.setattr(cli.congruence, "quad_root_count", boom)
    assert cli.main(["congruence", "--l", "1", "--n", "5"]) == 6
    assert "unexpected error" in capsys.readouterr().err


def test_console_script_installed():
    exe = shutil.which("es")
    assert exe, "console script `es` not on PATH"
    out = subprocess.run([exe, "--version"], capture_output=True, text=True)
    assert out.returncode == 0
    assert out.stdout.strip() == "es 0.1.0 (report schema 1)"
