"""Command-line interface: flags, exit codes, determinism, round trips."""

import json

import numpy as np
import pytest

from hypoexp.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestEval:
    def test_exponential_at_zero(self, capsys):
        code, out, _ = run_cli(capsys, "eval", "--dist", "exp", "--lambda", "1", "--x", "0")
        assert code == 0
        assert "pdf=1 cdf=0" in out

    def test_eme_table(self, capsys):
        code, out, _ = run_cli(
            capsys, "eval", "--dist", "eme", "--n", "2", "--lambda", "1",
            "--w", "3", "--x", "0.5,1,2",
        )
        assert code == 0
        assert len(out.strip().splitlines()) == 3

    def test_structured_records(self, capsys):
        code, out, _ = run_cli(
            capsys, "eval", "--dist", "erlang", "--n", "2", "--lambda", "1",
            "--x", "1.0", "--format", "structured",
        )
        assert code == 0
        rec = json.loads(out.strip())
        assert rec["type"] == "eval"
        assert rec["pdf"] == pytest.approx(np.exp(-1.0), rel=1e-12)

    def test_hypo_rates(self, capsys):
        code, out, _ = run_cli(
            capsys, "eval", "--dist", "hypo", "--rates", "1,2", "--x", "0.6931471805599453"
        )
        assert code == 0
        assert "pdf=0.5" in out

    def test_missing_param_is_usage_error(self, capsys):
        code, _, err = run_cli(capsys, "eval", "--dist", "eme", "--n", "2",
                               "--lambda", "1", "--x", "1")
        assert code == 2
        assert "--w" in err

    def test_negative_x_is_domain_error(self, capsys):
        code, _, err = run_cli(capsys, "eval", "--dist", "exp", "--lambda", "1", "--x", "-1")
        assert code == 1
        assert "error" in err

    def test_unparseable_flag_exits_two(self, capsys):
        code, _, _ = run_cli(capsys, "eval", "--dist", "exp", "--lambda", "1", "--x", "a,b")
        assert code == 2


class TestSampleAndFit:
    def test_sample_writes_file(self, capsys, tmp_path):
        out_file = tmp_path / "draws.txt"
        code, out, _ = run_cli(
            capsys, "sample", "--dist", "exp", "--lambda", "2", "--count", "100",
            "--seed", "5", "--out", str(out_file),
        )
        assert code == 0
        lines = out_file.read_text().strip().splitlines()
        assert len(lines) == 100

    def test_sample_deterministic(self, capsys, tmp_path):
        f1, f2 = tmp_path / "a.txt", tmp_path / "b.txt"
        run_cli(capsys, "sample", "--dist", "eme", "--n", "2", "--lambda", "1",
                "--w", "3", "--count", "50", "--seed", "9", "--out", str(f1))
        run_cli(capsys, "sample", "--dist", "eme", "--n", "2", "--lambda", "1",
                "--w", "3", "--count", "50", "--seed", "9", "--out", str(f2))
        assert f1.read_text() == f2.read_text()

    def test_sample_then_fit_round_trip(self, capsys, tmp_path):
        data = tmp_path / "eme.txt"
        run_cli(capsys, "sample", "--dist", "eme", "--n", "2", "--lambda", "1",
                "--w", "4", "--count", "20000", "--seed", "3", "--out", str(data))
        code, out, _ = run_cli(capsys, "fit", "--in", str(data), "--n", "2",
                               "--format", "structured")
        assert code == 0
        rec = json.loads(out.strip())
        assert rec["lambda"] == pytest.approx(1.0, rel=0.1)
        assert rec["w"] == pytest.approx(4.0, rel=0.2)

    def test_fit_search_flag(self, capsys, tmp_path):
        data = tmp_path / "erl.txt"
        run_cli(capsys, "sample", "--dist", "erlang", "--n", "3", "--lambda", "1",
                "--count", "5000", "--seed", "8", "--out", str(data))
        code, out, _ = run_cli(capsys, "fit", "--in", str(data), "--search", "3",
                               "--format", "structured")
        assert code == 0
        rec = json.loads(out.strip())
        mean = (rec["n"] + rec["w"]) / rec["lambda"]
        assert mean == pytest.approx(3.0, rel=0.05)

    def test_fit_conflicting_flags(self, capsys, tmp_path):
        data = tmp_path / "d.txt"
        data.write_text("1.0\n2.0\n3.0\n")
        code, _, err = run_cli(capsys, "fit", "--in", str(data), "--n", "2", "--search", "3")
        assert code == 2
        assert "--n" in err and "--search" in err


class TestGof:
    def _write_exp_sample(self, tmp_path, n=200, seed=17):
        rng = np.random.default_rng(seed)
        path = tmp_path / "exp.txt"
        path.write_text("".join(f"{v:.17g}\n" for v in rng.exponential(1.0, n)))
        return path

    def test_reproducible_structured_output(self, capsys, tmp_path):
        path = self._write_exp_sample(tmp_path)
        args = ("gof", "--in", str(path), "--B", "99", "--seed", "4",
                "--format", "structured")
        code1, out1, _ = run_cli(capsys, *args)
        code2, out2, _ = run_cli(capsys, *args)
        assert code1 == code2 == 0
        assert out1 == out2  # byte-identical structured report
        rec = json.loads(out1.strip())
        assert set(rec) >= {"statistic", "p_value", "lambda_hat", "n", "w", "B",
                            "seed", "reject"}

    def test_exit_zero_even_on_rejection(self, capsys, tmp_path):
        rng = np.random.default_rng(0)
        path = tmp_path / "weibull.txt"
        path.write_text("".join(f"{v:.17g}\n" for v in rng.weibull(0.5, 200)))
        code, out, _ = run_cli(capsys, "gof", "--in", str(path), "--B", "99",
                               "--format", "structured")
        assert code == 0
        assert json.loads(out.strip())["reject"] is True

    def test_text_report_contains_runtime_and_method(self, capsys, tmp_path):
        path = self._write_exp_sample(tmp_path, n=100)
        code, out, _ = run_cli(capsys, "gof", "--in", str(path), "--B", "99")
        assert code == 0
        assert "runtime=" in out and "method:" in out and "p_value=" in out

    def test_residual_table(self, capsys, tmp_path):
        path = self._write_exp_sample(tmp_path, n=100)
        table = tmp_path / "resid.txt"
        code, _, _ = run_cli(capsys, "gof", "--in", str(path), "--B", "99",
                             "--residual-table", str(table))
        assert code == 0
        rows = table.read_text().strip().splitlines()
        assert len(rows) == 64
        assert all(len(r.split()) == 2 for r in rows)

    def test_invalid_b_is_domain_error(self, capsys, tmp_path):
        path = self._write_exp_sample(tmp_path, n=50)
        code, _, err = run_cli(capsys, "gof", "--in", str(path), "--B", "0")
        assert code == 1
        assert "bootstrap_reps" in err


class TestVerifyAndSimulate:
    def test_verify_quick(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--sweep", "quick")
        assert code == 0
        assert "failures" in out

    def test_verify_structured(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--sweep", "quick",
                               "--format", "structured")
        assert code == 0
        records = [json.loads(line) for line in out.strip().splitlines()]
        assert records[-1]["type"] == "verify-total"
        assert records[-1]["failures"] == 0

    def test_simulate_writes_sample_file(self, capsys, tmp_path):
        out_file = tmp_path / "times.txt"
        code, _, _ = run_cli(capsys, "simulate", "--stages", "1,1,1,1,0.2",
                             "--count", "500", "--seed", "2", "--out", str(out_file))
        assert code == 0
        assert len(out_file.read_text().strip().splitlines()) == 500

    def test_simulate_stdout_deterministic(self, capsys):
        code1, out1, _ = run_cli(capsys, "simulate", "--stages", "1,0.5",
                                 "--count", "3", "--seed", "6")
        code2, out2, _ = run_cli(capsys, "simulate", "--stages", "1,0.5",
                                 "--count", "3", "--seed", "6")
        assert code1 == code2 == 0
        assert out1 == out2

    def test_simulate_bad_stage_is_domain_error(self, capsys):
        code, _, _ = run_cli(capsys, "simulate", "--stages", "1,-1", "--count", "5")
        assert code == 1


class TestConfigFile:
    def test_config_supplies_defaults_flags_override(self, capsys, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("count = 4\nseed = 11\n")
        code, out1, _ = run_cli(capsys, "sample", "--dist", "exp", "--lambda", "1",
                                "--count", "2", "--config", str(cfg))
        assert code == 0
        assert len(out1.strip().splitlines()) == 2  # flag beats config
        code, out2, _ = run_cli(capsys, "sample", "--dist", "exp", "--lambda", "1",
                                "--config", str(cfg))
        assert code == 0
        assert len(out2.strip().splitlines()) == 4  # config beats parser default

    def test_missing_subcommand_exits_two(self, capsys):
        assert run_cli(capsys)[0] == 2
