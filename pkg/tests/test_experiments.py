"""Sweeps, figure panels and the CSV table format."""

import math

import numpy as np
import pytest

from pareto_maxima import config
from pareto_maxima.csvio import CsvTable, format_cell, read_table
from pareto_maxima.distributions import Bernoulli, ContinuousUniform01, parse_distribution
from pareto_maxima.errors import ConfigError, DomainError, OutputError
from pareto_maxima.exact_continuous import p_recurrence
from pareto_maxima.experiments import (
    PANEL_A_K,
    PANEL_C_C,
    PANEL_C_LOG10_N,
    SWEEP_COLUMNS,
    SweepConfig,
    k_for,
    log_grid,
    run_figure,
    run_sweep,
)
from pareto_maxima.logspace import HugeN


class TestKRules:
    def test_rules(self):
        n = HugeN.of(100)
        assert k_for("ceil_c_logn", 1.0, n) == 5
        assert k_for("floor_c_logn", 1.0, n) == 4
        assert k_for("c_over_gamma", 1.0, n, 0.5) == 10

    def test_at_least_one(self):
        assert k_for("floor_c_logn", 0.01, HugeN.of(2)) == 1
        assert k_for("ceil_c_logn", 0.01, HugeN.of(1)) == 1

    def test_invalid(self):
        with pytest.raises(ConfigError):
            k_for("bogus", 1.0, HugeN.of(10))
        with pytest.raises(ConfigError):
            k_for("c_over_gamma", 1.0, HugeN.of(10))

    def test_log_grid(self):
        assert log_grid(2, 1) == [1, 10, 100]
        assert log_grid(1, 2) == [1, 3, 10]


class TestSweepConfig:
    @pytest.mark.parametrize(
        "kwargs",
        [
            {"c_values": []},
            {"c_values": [-1.0]},
            {"n_grid": []},
            {"k_rule": "bogus"},
            {"methods": []},
            {"methods": ["bern-strong"]},
        ],
    )
    def test_invalid(self, kwargs):
        args = {"dist": ContinuousUniform01(), "c_values": [1.0], "n_grid": [10]}
        args.update(kwargs)
        with pytest.raises(ConfigError):
            SweepConfig(**args)

    def test_method_must_fit_the_law(self):
        with pytest.raises(ConfigError):
            SweepConfig(Bernoulli(0.5), [1.0], [10], methods=["rec"])

    def test_general_finite_laws_are_rejected(self):
        with pytest.raises(ConfigError):
            SweepConfig(parse_distribution("disc:0:1/3,1:1/3,2:1/3"), [1.0], [10], methods=["bern-strong"])

    def test_describe(self):
        cfg = SweepConfig(ContinuousUniform01(), [0.5, 1.5], [10, 100], seed=3)
        lines = cfg.describe()
        assert "dist=uniform" in lines
        assert "k_rule=ceil_c_logn" in lines
        assert "seed=3" in lines


class TestRunSweep:
    def test_rows_in_config_order(self):
        cfg = SweepConfig(ContinuousUniform01(), [1.0, 0.5], [10, 100], methods=["rec", "alt"])
        table = run_sweep(cfg)
        assert table.columns == SWEEP_COLUMNS
        assert len(table.rows) == 8
        assert [r[0] for r in table.rows] == [1.0] * 4 + [0.5] * 4
        assert table.column("method") == ["rec", "alt"] * 4
        c, k, log10_n, method, log_p, flag = table.rows[0]
        assert k == math.ceil(math.log(10))
        np.testing.assert_allclose(log10_n, 1.0)
        np.testing.assert_allclose(log_p, p_recurrence(k, 10).log_p.log_value, rtol=1e-15)
        np.testing.assert_allclose(table.rows[1][4], log_p, rtol=1e-12)

    def test_rows_past_a_cap_are_skipped(self):
        cfg = SweepConfig(ContinuousUniform01(), [1.0], [5000], methods=["alt-exact", "rec"])
        table = run_sweep(cfg)
        assert table.rows[0][5] == "skipped" and math.isnan(table.rows[0][4])
        assert table.rows[1][5] == ""

    def test_batched_recurrence_cap_falls_back_to_skipped_rows(self, monkeypatch):
        monkeypatch.setattr(config, "RECURRENCE_N_CAP", 50)
        table = run_sweep(SweepConfig(ContinuousUniform01(), [1.0], [10, 100]))
        assert table.column("flag") == ["", "skipped"]

    def test_hwang_reports_regime(self):
        cfg = SweepConfig(ContinuousUniform01(), [0.3, 1.0, 3.0], [HugeN.from_log10(6)], methods=["hwang"])
        assert run_sweep(cfg).column("flag") == ["saddle", "gaussian", "upper"]

    def test_log_n_grid_for_asymptotics(self):
        cfg = SweepConfig(ContinuousUniform01(), [0.5], [HugeN.from_log10(100)], methods=["asym", "rec"])
        table = run_sweep(cfg)
        assert table.rows[0][5] == "" and math.isfinite(table.rows[0][4])
        assert table.rows[1][5] == "skipped"

    def test_worker_count_does_not_change_rows(self):
        cfg = SweepConfig(ContinuousUniform01(), [0.5, 1.0, 1.5], [10, 100, 1000], methods=["rec", "asym", "hwang"])
        assert run_sweep(cfg, workers=1).rows == run_sweep(cfg, workers=3).rows

    def test_bernoulli_sweep(self):
        cfg = SweepConfig(
            Bernoulli(0.5),
            [1.5],
            [HugeN.from_log10(20), HugeN.from_log10(40)],
            k_rule="c_over_gamma",
            methods=["bern-strong", "bern-weak"],
        )
        table = run_sweep(cfg)
        assert any(c.startswith("gamma=") for c in table.comments)
        strong, weak = table.rows[0][4], table.rows[1][4]
        assert weak >= strong

    def test_writes_output(self, tmp_path):
        path = tmp_path / "sweep.csv"
        cfg = SweepConfig(ContinuousUniform01(), [1.0], [10, 20], output_path=str(path))
        run_sweep(cfg)
        comments, header, rows = read_table(str(path))
        assert tuple(header) == SWEEP_COLUMNS
        assert len(rows) == 2
        assert comments[0].startswith("generated ")
        assert "k_rule=ceil_c_logn" in comments


class TestFigures:
    def test_panel_a(self):
        table = run_figure("a", 1)
        grid = log_grid(5, 4)
        assert len(table.rows) == len(PANEL_A_K) * len(grid)
        for k, n, p_cont, q_bern, p_bern, p_asym in table.rows:
            assert p_bern <= q_bern + 1e-15
            assert p_bern <= p_cont + 1e-15
            if k == 1:
                np.testing.assert_allclose(p_cont, 1.0 / n, rtol=1e-13)
            if n == 1:
                assert math.isnan(p_asym)
        assert table.comments[-1] == "seed=1"

    def test_panel_b_directions(self):
        table = run_figure("b", 0)
        by_c = {}
        for c, n, k, log_p in table.rows:
            by_c.setdefault(c, {})[n] = log_p
        assert by_c[0.6][10**7] < by_c[0.6][10**3]
        assert by_c[1.4][10**7] > by_c[1.4][10**3]

    def test_panel_c(self):
        table = run_figure("c", 0)
        assert len(table.rows) == len(PANEL_C_C) * len(PANEL_C_LOG10_N)
        rising = [r[3] for r in table.rows if r[0] == 1.5]
        falling = [r[3] for r in table.rows if r[0] == 0.5]
        assert np.all(np.diff(rising) > 0.0)
        assert np.all(np.diff(falling) < 0.0)
        assert all(r[4] >= r[3] for r in table.rows)

    def test_unknown_panel(self):
        with pytest.raises(ConfigError):
            run_figure("z", 0)


class TestCsv:
    def test_format_cell(self):
        assert format_cell(None) == ""
        assert format_cell(True) == "1"
        assert format_cell(0.1) == "0.1"
        assert format_cell(float("nan")) == "nan"
        assert float(format_cell(1 / 3)) == 1 / 3

    def test_render(self):
        t = CsvTable(("a", "b"))
        t.comment("first\nsecond")
        t.add(1, 0.5)
        assert t.render(timestamp=False) == "# first\n# second\na,b\n1,0.5\n"

    def test_row_width(self):
        with pytest.raises(DomainError):
            CsvTable(("a", "b")).add(1)

    def test_write_to_missing_directory(self, tmp_path):
        with pytest.raises(OutputError) as exc:
            CsvTable(("a",)).write(str(tmp_path / "missing" / "x.csv"))
        assert "missing" in str(exc.value)

    def test_stdout(self, capsys):
        t = CsvTable(("a",))
        t.add(2)
        assert t.write(None) == "-"
        out = capsys.readouterr().out
        assert out.startswith("# generated ") and out.endswith("a\n2\n")
