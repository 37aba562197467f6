"""Harness behavior: CLI contract, cache, CSV round trips, scaling fits."""

import csv
import json
import math
import subprocess
import sys

import pytest

from fareylab import cli
from fareylab.cache import ResultCache, result_line
from fareylab.errors import CapacityError, DomainError
from fareylab.scaling import (
    ScalingRow,
    fit_loglog,
    parse_h_grid,
    scaling_experiment,
)


def run_cli(*argv):
    return cli.main(list(argv))


# ---------------------------------------------------------------------------
# Growth fits
# ---------------------------------------------------------------------------

def test_fit_loglog_exact_cubic():
    fit = fit_loglog([(10, 1000), (20, 8000), (40, 64000)])
    assert abs(fit.slope - 3.0) < 1e-9
    assert fit.residual < 1e-9


def test_fit_loglog_recovers_noisy_power_law():
    pts = [(h, 2.0 * h**1.5) for h in (8, 16, 32, 64)]
    fit = fit_loglog(pts)
    assert abs(fit.slope - 1.5) < 1e-9
    assert abs(math.exp(fit.intercept) - 2.0) < 1e-9


def test_fit_loglog_rejects_degenerate_input():
    with pytest.raises(DomainError):
        fit_loglog([(10, 100)])
    with pytest.raises(DomainError):
        fit_loglog([(10, 0), (20, 5)])


def test_parse_h_grid():
    assert parse_h_grid("16,24,32") == [16, 24, 32]
    assert parse_h_grid("10:80:2") == [10, 20, 40, 80]
    with pytest.raises(DomainError):
        parse_h_grid("32,16")
    with pytest.raises(DomainError):
        parse_h_grid("10:5:2")


def test_scaling_experiment_L2_slope():
    rows, fit = scaling_experiment("l", 2, [20, 40, 80], "fast")
    assert [r.count for r in rows] == [129, 491, 1967]
    assert 1.8 <= fit.slope <= 2.2


def test_scaling_experiment_J2_slope():
    rows, fit = scaling_experiment("j", 2, [8, 16, 32, 64])
    assert abs(fit.slope - 1.0) < 0.05
    assert [r.count for r in rows] == [8, 16, 32, 64]


# ---------------------------------------------------------------------------
# Cache
# ---------------------------------------------------------------------------

def test_result_line_schema_order():
    line = result_line("count-l", {"n": 2}, {"count": 3}, 9, 1.5)
    assert list(line) == [
        "schema_version",
        "timestamp",
        "subcommand",
        "parameters",
        "outputs",
        "candidates_examined",
        "elapsed_ms",
    ]
    assert line["schema_version"] == 1


def test_cache_roundtrip_and_idempotent_store(tmp_path):
    path = tmp_path / "cache.jsonl"
    cache = ResultCache(path)
    line = result_line("count-l", {"n": 2, "h": 5}, {"count": 11}, 40, 2.0)
    cache.store(line)
    cache.store(line)
    assert len(path.read_text().splitlines()) == 1
    again = ResultCache(path)
    hit = again.lookup("count-l", {"n": 2, "h": 5})
    assert hit is not None
    assert hit["outputs"] == {"count": 11}
    assert {k: v for k, v in hit.items() if k != "timestamp"} == {
        k: v for k, v in line.items() if k != "timestamp"
    }
    assert again.lookup("count-l", {"n": 2, "h": 6}) is None


def test_cli_cache_warm_rerun_identical(tmp_path):
    cache = tmp_path / "cache.jsonl"
    assert run_cli("count-l", "--n", "2", "--h", "12", "--cache", str(cache)) == 0
    first = json.loads(cache.read_text().splitlines()[0])
    assert run_cli("count-l", "--n", "2", "--h", "12", "--cache", str(cache)) == 0
    lines = cache.read_text().splitlines()
    assert len(lines) == 1  # append-only, no duplicate for identical config
    second = json.loads(lines[0])
    assert first == second


# ---------------------------------------------------------------------------
# CLI contract
# ---------------------------------------------------------------------------

def test_cli_count_examples(capsys):
    assert run_cli("count-l", "--n", "2", "--h", "10", "--method", "fast") == 0
    assert "count=33" in capsys.readouterr().out
    assert run_cli("jn", "--bounds", "4,4") == 0
    assert "count=4" in capsys.readouterr().out
    assert run_cli("count-s", "--n", "3", "--h", "2", "--method", "brute") == 0
    assert "count=216" in capsys.readouterr().out


def test_cli_usage_errors():
    assert run_cli("count-l", "--h", "4") == 2  # missing --n
    assert run_cli("nonsense") == 2
    assert run_cli("count-l", "--n", "2", "--h", "x") == 2
    assert run_cli("count-n", "--coeffs", "1", "--box0", "0:2", "--box", "0:2") == 2


def test_cli_budget_exit_code():
    assert run_cli("count-l", "--n", "3", "--h", "200", "--budget", "10") == 3


def test_cli_count_n_solver_matches_brute(capsys):
    argv = ["count-n", "--coeffs", "0,1,-1", "--box0", "0:4,0:4", "--box", "0:4,0:4"]
    assert run_cli(*argv) == 0
    brute_out = capsys.readouterr().out
    assert run_cli(*argv, "--method", "solver") == 0
    solver_out = capsys.readouterr().out
    count = brute_out.split("count=")[1].split()[0]
    assert f"count={count}" in solver_out


def test_cli_capacity_exit_code(monkeypatch):
    def boom(*a, **k):
        raise CapacityError("forced")

    monkeypatch.setitem(cli.HANDLERS, "jn", boom)
    assert run_cli("jn", "--bounds", "2,2") == 4


def test_cli_property_failure_exit_code(monkeypatch):
    from fareylab import suites

    def failing():
        return [suites.PropertyCheck("forced", False, "bad")]

    monkeypatch.setitem(cli.SUITES, "oracle", failing)
    assert run_cli("verify", "--suite", "oracle") == 1


def test_cli_verify_suites_pass():
    assert run_cli("verify", "--suite", "construction") == 0
    assert run_cli("verify", "--suite", "expsum") == 0


def test_cli_expsum_verify(capsys):
    assert run_cli("expsum-verify", "--instances", "10", "--seed", "5") == 0
    assert "PASS" in capsys.readouterr().out


def test_cli_csv_roundtrip(tmp_path):
    out = tmp_path / "scale.csv"
    assert (
        run_cli(
            "scaling", "--quantity", "l", "--n", "2",
            "--h-grid", "10,20,40", "--out", str(out),
        )
        == 0
    )
    with out.open() as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["n", "H", "count", "candidates_examined", "elapsed_ms"]
    parsed = [
        ScalingRow(int(r[0]), int(r[1]), int(r[2]), int(r[3]), float(r[4]))
        for r in rows[1:]
    ]
    direct, _ = scaling_experiment("l", 2, [10, 20, 40], "fast")
    assert [(p.n, p.h, p.count, p.candidates_examined) for p in parsed] == [
        (d.n, d.h, d.count, d.candidates_examined) for d in direct
    ]


def test_cli_plot_written_next_to_csv(tmp_path):
    out = tmp_path / "jgrowth.csv"
    assert (
        run_cli(
            "scaling", "--quantity", "j", "--n", "2",
            "--h-grid", "8:32:2", "--out", str(out), "--plot",
        )
        == 0
    )
    png = out.with_suffix(".png")
    assert png.exists() and png.stat().st_size > 1000


def test_cli_moment_csv_and_plot(tmp_path):
    out = tmp_path / "moment.csv"
    assert (
        run_cli(
            "expsum-moment", "--q", "50", "--a", "1", "--moment", "1",
            "--u", "7", "--v", "7", "--out", str(out), "--plot",
        )
        == 0
    )
    with out.open() as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["q", "a", "n", "U", "V", "total", "bound_reference", "ratio"]
    total = float(rows[1][5])
    ratio = float(rows[1][7])
    from fareylab import expsum

    stats = expsum.moment_over_primes(1, 50, 1, expsum.ColumnDomain.rectangle(7, 7))
    assert total == stats.total and ratio == stats.ratio  # full-precision repr
    assert out.with_suffix(".png").exists()


def test_cli_lower_bound_emission(tmp_path, capsys):
    assert run_cli("lower-bound", "--n", "2", "--h", "3", "--emit-solutions") == 0
    out = capsys.readouterr().out
    assert "count=4" in out
    assert "1/3,2/3" in out
    csv_out = tmp_path / "lb.csv"
    assert (
        run_cli(
            "lower-bound", "--n", "2", "--h", "3",
            "--emit-solutions", "--out", str(csv_out),
        )
        == 0
    )
    sol = csv_out.with_name("lb_solutions.csv")
    with sol.open() as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["alpha_1", "alpha_2"]
    assert ["1/2", "1/2"] in rows


def test_cli_doubly(capsys):
    assert run_cli("doubly", "--n", "2", "--h", "10") == 0
    assert "count=33" in capsys.readouterr().out
    assert run_cli("doubly", "--n", "3", "--h", "3", "--method", "construction") == 0
    assert "count=2" in capsys.readouterr().out


def test_cli_config_precedence(tmp_path, monkeypatch, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("h=10\nworkers=2\n# comment\n")
    monkeypatch.setenv(cli.ENV_WORKERS, "7")
    # flag beats config: h from flag; workers from config beats env
    assert run_cli("count-l", "--n", "2", "--h", "5", "--config", str(cfg)) == 0
    assert "h=5" in capsys.readouterr().out
    # config supplies h when flag missing
    assert run_cli("count-l", "--n", "2", "--config", str(cfg)) == 0
    assert "h=10" in capsys.readouterr().out


def test_cli_env_workers_used_only_as_fallback(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv(cli.ENV_WORKERS, "notanumber")
    assert run_cli("count-l", "--n", "2", "--h", "4") == 2
    monkeypatch.setenv(cli.ENV_WORKERS, "2")
    assert run_cli("count-l", "--n", "2", "--h", "4") == 0
    assert "count=" in capsys.readouterr().out


def test_cli_rejects_unknown_config_key(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("frobnicate=1\n")
    assert run_cli("count-l", "--n", "2", "--h", "4", "--config", str(cfg)) == 2


def test_cli_determinism_across_workers(capsys):
    outs = []
    for w in ("1", "4"):
        assert run_cli("count-l", "--n", "3", "--h", "8", "--workers", w) == 0
        out = capsys.readouterr().out
        outs.append(out.split("elapsed_ms")[0])
    assert outs[0] == outs[1]


def test_cli_subprocess_entrypoint():
    proc = subprocess.run(
        [sys.executable, "-m", "fareylab", "count-l", "--n", "2", "--h", "6"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "count=13" in proc.stdout
    proc = subprocess.run(
        [sys.executable, "-m", "fareylab", "count-l", "--n", "2"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 2
