"""Command line entry point, op registry and worker sizing."""

import csv
import io
import math

import numpy as np
import pytest

import app
import ops
from ops import get_op, list_ops
from ops.bernoulli import op_bernoulli
from ops.exact import op_exact
from ops.gamma import op_gamma
from ops.simulate import op_simulate
from ops_loader import describe_ops, load_ops
from pareto_maxima import config
from pareto_maxima.errors import ConfigError
from worker_sizing import build_worker_profile


def _rows(text):
    body = [ln for ln in text.splitlines() if not ln.startswith("#")]
    reader = csv.DictReader(io.StringIO("\n".join(body)))
    return list(reader)


def _run(capsys, *argv):
    code = app.main(list(argv))
    return code, _rows(capsys.readouterr().out)


class TestSubcommands:
    def test_exact(self, capsys):
        code, rows = _run(capsys, "exact", "--k", "2", "--n", "3", "--method", "rec")
        assert code == app.EXIT_OK
        np.testing.assert_allclose(float(rows[0]["log_p"]), math.log(11 / 18), rtol=1e-14)
        assert rows[0]["method"] == "recurrence"

    def test_exact_hwang_with_log_n(self, capsys):
        code, rows = _run(capsys, "exact", "--k", "50", "--log-n", "100", "--method", "hwang")
        assert code == app.EXIT_OK
        assert rows[0]["regime"] == "saddle"

    def test_gamma(self, capsys):
        code, rows = _run(capsys, "gamma", "--dist", "bern:0.5")
        assert code == app.EXIT_OK
        np.testing.assert_allclose(float(rows[0]["value"]), 0.34657, atol=1e-5)
        assert rows[0]["std_error"] == ""

    def test_bernoulli_kinds(self, capsys):
        code, rows = _run(capsys, "bernoulli", "--k", "1", "--n", "2", "--p", "0.5", "--kind", "weak")
        assert code == app.EXIT_OK
        np.testing.assert_allclose(float(rows[0]["log_p_or_value"]), math.log(0.75), rtol=1e-14)
        code, rows = _run(capsys, "bernoulli", "--k", "1", "--n", "2", "--p", "0.5", "--kind", "var")
        np.testing.assert_allclose(float(rows[0]["log_p_or_value"]), 0.25, rtol=1e-14)

    def test_bernoulli_huge_n(self, capsys):
        code, rows = _run(capsys, "bernoulli", "--k", "900", "--log10n", "130", "--p", "0.5")
        assert code == app.EXIT_OK
        assert math.isfinite(float(rows[0]["log_p_or_value"]))

    def test_simulate(self, capsys):
        args = ("simulate", "--dist", "uniform", "--k", "2", "--n", "10", "--reps", "2000", "--seed", "4")
        code, rows = _run(capsys, *args)
        assert code == app.EXIT_OK
        assert rows[0]["stat"] == "p-strong" and rows[0]["seed"] == "4"
        assert _run(capsys, *args)[1] == rows

    def test_simulate_front_size(self, capsys):
        code, rows = _run(
            capsys, "simulate", "--stat", "front-size", "--dist", "bern:0.5", "--k", "2", "--n", "3", "--reps", "500"
        )
        assert code == app.EXIT_OK
        assert [r["stat"] for r in rows] == ["front-mean", "front-var"]

    def test_simulate_ferguson(self, capsys):
        code, rows = _run(capsys, "simulate", "--stat", "ferguson", "--n", "1000", "--reps", "50", "--sampler", "max_cdf")
        assert code == app.EXIT_OK
        assert rows[0]["stat"] == "ferguson"

    def test_sweep_and_figure(self, capsys):
        code, rows = _run(capsys, "sweep", "--dist", "uniform", "--c", "0.5,1.5", "--n", "10,100")
        assert code == app.EXIT_OK
        assert len(rows) == 4
        code, rows = _run(capsys, "figure", "--panel", "c")
        assert code == app.EXIT_OK
        assert len(rows) == 39


class TestExitCodes:
    def test_unknown_flag(self):
        with pytest.raises(SystemExit) as exc:
            app.main(["exact", "--bogus"])
        assert exc.value.code == 2

    def test_version(self, capsys):
        with pytest.raises(SystemExit) as exc:
            app.main(["--version"])
        assert exc.value.code == 0
        assert "pareto-maxima" in capsys.readouterr().out

    def test_log_n_refused_by_exact_methods(self, capsys):
        assert app.main(["exact", "--k", "2", "--log10n", "10", "--method", "rec"]) == app.EXIT_CONFIG

    def test_bad_distribution(self):
        assert app.main(["gamma", "--dist", "bogus"]) == app.EXIT_CONFIG

    def test_domain_error(self):
        assert app.main(["exact", "--k", "0", "--n", "5"]) == app.EXIT_CONFIG

    def test_strict_flagged_result(self, capsys):
        argv = ["exact", "--k", "10", "--n", "500", "--method", "alt"]
        assert app.main(argv) == app.EXIT_OK
        assert app.main(argv + ["--strict"]) == app.EXIT_FLAGGED
        assert app.main(["exact", "--k", "10", "--n", "500", "--method", "alt-exact", "--strict"]) == app.EXIT_OK

    def test_hwang_regime_is_not_a_flag(self, capsys):
        argv = ["sweep", "--dist", "uniform", "--c", "1", "--log10n", "6", "--methods", "hwang", "--strict"]
        assert app.main(argv) == app.EXIT_OK

    def test_sweep_method_must_fit_law(self):
        argv = ["sweep", "--dist", "bern:0.5", "--c", "1", "--n", "10", "--methods", "rec"]
        assert app.main(argv) == app.EXIT_CONFIG

    def test_unwritable_output(self, tmp_path):
        target = str(tmp_path / "missing" / "out.csv")
        assert app.main(["exact", "--k", "2", "--n", "3", "-o", target]) == app.EXIT_FAILED
        argv = ["sweep", "--dist", "uniform", "--c", "1", "--n", "10", "-o", target]
        assert app.main(argv) == app.EXIT_FAILED

    def test_resource_limit(self, monkeypatch):
        monkeypatch.setattr(config, "RECURRENCE_N_CAP", 10)
        assert app.main(["exact", "--k", "2", "--n", "11"]) == app.EXIT_FAILED

    def test_disabled_op(self, monkeypatch):
        monkeypatch.setenv("PARETO_OPS", "gamma")
        assert app.main(["exact", "--k", "2", "--n", "3"]) == app.EXIT_CONFIG


class TestReproducibility:
    def test_identical_apart_from_timestamp(self, tmp_path):
        outputs = []
        for i in range(2):
            path = tmp_path / f"run{i}.csv"
            argv = ["simulate", "--dist", "bern:0.5", "--k", "3", "--n", "8", "--reps", "3000", "--seed", "9", "-o", str(path)]
            assert app.main(argv) == app.EXIT_OK
            outputs.append([ln for ln in path.read_text().splitlines() if not ln.startswith("# generated")])
        assert outputs[0] == outputs[1]

    def test_sweep_file_is_identical_apart_from_timestamp(self, tmp_path):
        outputs = []
        for i in range(2):
            path = tmp_path / f"sweep{i}.csv"
            argv = ["sweep", "--dist", "uniform", "--c", "0.5,1", "--n", "10,1000", "--methods", "rec,hwang", "-o", str(path)]
            assert app.main(argv) == app.EXIT_OK
            outputs.append([ln for ln in path.read_text().splitlines() if not ln.startswith("# generated")])
        assert outputs[0] == outputs[1]


class TestOpsRegistry:
    def test_all_enabled_by_default(self, monkeypatch):
        monkeypatch.delenv("PARETO_OPS", raising=False)
        assert list_ops() == ["bernoulli", "exact", "figure", "gamma", "simulate", "sweep"]

    @pytest.mark.parametrize("value, expected", [("none", []), ("all", None), ("exact, gamma", ["exact", "gamma"])])
    def test_env_gate(self, monkeypatch, value, expected):
        monkeypatch.setenv("PARETO_OPS", value)
        if expected is None:
            expected = sorted(ops.OP_TO_MODULE)
        assert list_ops() == expected

    def test_unknown_op(self, monkeypatch):
        monkeypatch.delenv("PARETO_OPS", raising=False)
        with pytest.raises(ConfigError):
            get_op("bogus")

    def test_load_ops(self, monkeypatch):
        monkeypatch.delenv("PARETO_OPS", raising=False)
        handlers = load_ops(["exact", "gamma"])
        assert handlers["exact"] is op_exact
        assert handlers["gamma"] is op_gamma

    def test_unknown_names_in_gate_are_ignored(self, monkeypatch):
        monkeypatch.setenv("PARETO_OPS", "exact,bogus")
        assert list_ops() == ["exact"]

    def test_describe(self, monkeypatch):
        monkeypatch.setenv("PARETO_OPS", "exact,sweep")
        line = describe_ops()
        assert line.startswith("enabled subcommands: exact, sweep")
        assert "disabled by PARETO_OPS: bernoulli, figure, gamma, simulate" in line
        monkeypatch.setenv("PARETO_OPS", "none")
        assert describe_ops().startswith("enabled subcommands: none")

    def test_register_needs_a_table_entry(self):
        with pytest.raises(ConfigError):
            ops.register_op("bogus")


class TestPayloads:
    def test_task_wrapper(self):
        out = op_exact({"payload": {"k": 2, "n": 3}})
        assert out["ok"] and out["table"].rows[0][1] == "3"

    @pytest.mark.parametrize("payload", [None, "x", {"payload": 5}, {"k": 2}, {"k": 2, "n": 3, "log10n": 1}])
    def test_bad_exact_payloads(self, payload):
        out = op_exact(payload)
        assert out["ok"] is False and out["error"].startswith("exact:")

    def test_bad_choice(self):
        assert op_bernoulli({"k": 2, "n": 3, "p": 0.5, "kind": "bogus"})["ok"] is False
        assert op_gamma({"dist": "bern:0.5", "method": "bogus"})["ok"] is False
        assert op_simulate({"stat": "p", "dist": "uniform", "n": 5})["ok"] is False

    def test_bernoulli_variance_needs_integer_n(self):
        assert op_bernoulli({"k": 2, "log10n": 5, "p": 0.5, "kind": "var"})["ok"] is False


class TestWorkerSizing:
    def test_profile_shape(self):
        profile = build_worker_profile()
        assert profile["workers"]["mc_workers"] >= 1
        assert profile["workers"]["sweep_workers"] >= 1
        assert 1 <= profile["memory"]["max_matrix_elements"] <= config.MAX_MATRIX_ELEMENTS

    def test_pinned_workers(self, monkeypatch):
        monkeypatch.setenv("PARETO_WORKERS", "3")
        profile = build_worker_profile()
        assert profile["cpu"]["workers"] == 3 and profile["cpu"]["pinned"]
        assert profile["workers"]["mc_workers"] == 3

    def test_malformed_env_falls_back(self, monkeypatch):
        monkeypatch.setenv("PARETO_WORKERS", "many")
        assert build_worker_profile()["cpu"]["pinned"] is False
