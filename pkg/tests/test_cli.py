import json
import os
import subprocess
import sys

import pytest

from probalab.cli import ReportRow, emit_csv, emit_json, run, verify_all_rows


def invoke(args, env_extra=None, cwd=None):
    env = dict(os.environ)
    env.pop("PROBALAB_SEED", None)
    if env_extra:
        env.update(env_extra)
    return subprocess.run(
        [sys.executable, "-m", "probalab.cli", *args],
        capture_output=True,
        text=True,
        env=env,
        cwd=cwd,
    )


class TestEmit:
    def test_empty_is_header_only(self):
        assert emit_csv([]) == "module,criterion,lhs,rhs,tolerance,pass,seed,trials\n"

    def test_one_report_two_lines(self):
        rows = [ReportRow("m", "c", 1.0, 2.0, 0.1, True, 42, 10)]
        text = emit_csv(rows)
        assert text.count("\n") == 2
        assert text.splitlines()[1] == "m,c,1.0,2.0,0.1,true,42,10"

    def test_json_roundtrip(self):
        rows = [
            ReportRow("m", "c1", 1.5, 2.5, 0.0, True, 7, 3),
            ReportRow("m", "c2", 0.25, 0.125, 1.0, False, 7, 3),
        ]
        parsed = json.loads(emit_json(rows))
        assert parsed == [r.as_record() for r in rows]

    def test_newlines_and_decimal_points(self):
        rows = [ReportRow("m", "c", 0.5, 1.5, 0.0, True, 1, 1)]
        text = emit_csv(rows)
        assert "\r" not in text
        assert "0.5" in text and "1.5" in text


class TestExitCodes:
    def test_unknown_subcommand(self):
        assert invoke(["definitely-not-a-command"]).returncode == 2

    def test_no_subcommand(self):
        assert invoke([]).returncode == 2

    def test_missing_seed_is_usage_error(self):
        r = invoke(["law", "sample", "--law", "poisson", "--params", '{"lam": 1.0}'])
        assert r.returncode == 2
        assert "seed" in r.stderr

    def test_env_seed_fallback(self):
        r = invoke(
            ["law", "sample", "--law", "poisson", "--params", '{"lam": 1.0}', "--n", "3"],
            env_extra={"PROBALAB_SEED": "5"},
        )
        assert r.returncode == 0

    def test_unknown_law_rejected_before_sampling(self):
        r = invoke(["law", "sample", "--law", "nope", "--seed", "1"])
        assert r.returncode == 2

    def test_bad_params_json(self):
        r = invoke(["law", "info", "--law", "poisson", "--params", "{not json"])
        assert r.returncode == 2


class TestSubcommands:
    def test_normal_cdf_nine_digits(self):
        r = invoke(["normal", "cdf", "1.96"])
        assert r.returncode == 0
        assert r.stdout.strip() == "0.975002175"

    def test_normal_quantile(self):
        r = invoke(["normal", "quantile", "0.975"])
        assert r.returncode == 0
        assert r.stdout.strip().startswith("1.960")

    def test_law_info(self):
        r = invoke(["law", "info", "--law", "gamma", "--params", '{"a": 2, "b": 3}'])
        info = json.loads(r.stdout)
        assert info["mean"] == pytest.approx(2.0 / 3.0)
        assert info["has_cf"] is True

    def test_law_quantile(self):
        r = invoke(["law", "quantile", "--law", "uniform",
                    "--params", '{"a": 0, "b": 1}', "--u", "0.25"])
        assert float(r.stdout) == pytest.approx(0.25)

    def test_sample_deterministic(self):
        args = ["law", "sample", "--law", "gaussian", "--params",
                '{"m": 0, "sigma": 1}', "--n", "4", "--seed", "9"]
        assert invoke(args).stdout == invoke(args).stdout

    def test_cf_invert(self):
        r = invoke(["cf", "invert", "--law", "gaussian",
                    "--params", '{"m": 0, "sigma": 1}', "--x", "0", "--cutoff", "50"])
        assert float(r.stdout) == pytest.approx(0.3989423, abs=1e-6)

    def test_cf_sum(self):
        r = invoke(["cf", "sum", "--laws",
                    '[{"name": "bernoulli", "params": {"p": 0.5}},'
                    ' {"name": "bernoulli", "params": {"p": 0.5}}]', "--u", "0.0"])
        assert r.returncode == 0

    def test_gauss_eigen(self):
        r = invoke(["gauss", "eigen", "--matrix", "[[2, 1], [1, 2]]"])
        out = json.loads(r.stdout)
        assert out["eigenvalues"] == pytest.approx([3.0, 1.0])

    def test_gauss_quadform(self):
        r = invoke(["gauss", "quadform", "--mean", "[0, 0]",
                    "--cov", "[[1, 0], [0, 1]]", "--x", "[1, 1]"])
        assert float(r.stdout) == pytest.approx(2.0)

    def test_ineq_run_emits_bound_reports(self):
        r = invoke(["ineq", "run", "--trials", "3", "--seed", "11"])
        assert r.returncode == 0
        lines = r.stdout.splitlines()
        assert lines[0] == "module,criterion,lhs,rhs,tolerance,pass,seed,trials"
        assert len(lines) > 10

    def test_limit_berry_esseen(self):
        r = invoke(["limit", "berry-esseen", "--law", "finite",
                    "--params", '{"atoms": [-0.5, 0.5], "probs": [0.5, 0.5]}',
                    "--n", "100", "--trials", "2000", "--seed", "7"])
        assert r.returncode == 0
        assert "berry-esseen-gap" in r.stdout

    def test_process_rows(self):
        r = invoke(["process", "brownian", "--grid", "[0.5, 1.0]",
                    "--paths", "3", "--seed", "2"])
        lines = r.stdout.splitlines()
        assert lines[0] == "path,time,value"
        assert len(lines) == 1 + 3 * 2  # one row per (path, time)

    def test_cond_checks(self):
        assert invoke(["cond", "--seed", "1"]).returncode == 0

    def test_config_file_supplies_seed(self, tmp_path):
        cfg = tmp_path / "config.json"
        cfg.write_text(json.dumps({"seed": 3, "n": 4}))
        r = invoke(["--config", str(cfg), "law", "sample", "--law",
                    "exponential", "--params", '{"b": 1.0}'])
        assert r.returncode == 0


class TestVerifyAll:
    def test_byte_identical_reruns(self, tmp_path):
        out1 = tmp_path / "a.csv"
        out2 = tmp_path / "b.csv"
        r1 = invoke(["verify-all", "--seed", "42", "--quick", "--out", str(out1)])
        r2 = invoke(["verify-all", "--seed", "42", "--quick", "--out", str(out2)])
        assert r1.returncode == 0 and r2.returncode == 0
        assert out1.read_bytes() == out2.read_bytes()

    def test_covers_every_module(self):
        rows = verify_all_rows(seed=1, quick=True)
        modules = {row.module for row in rows}
        assert modules == {
            "dist-core",
            "dist-catalog",
            "charfn",
            "gauss-linalg",
            "ineq-suite",
            "limit-lab",
            "cond-expect",
            "process-forge",
            "normal-approx",
            "cli",
        }

    def test_in_process_runner_exit_code(self, capsys):
        assert run(["verify-all", "--seed", "1", "--quick"]) == 0
        capsys.readouterr()
