import csv
import json
import math

import numpy as np
import pytest

import qhe3 as q
from qhe3.cli import main

from conftest import at_optimal_frequency


def write_config(tmp_path, name="cfg.json", **overrides):
    cfg = {"omega20": 2.5, "lambda": 0.5, "beta_c": 5.0, "beta_h": 1.0,
           "scheme": "resonant", "gamma": 2.0}
    cfg.update(overrides)
    path = tmp_path / name
    path.write_text(json.dumps(cfg))
    return str(path)


def read_rows(path):
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        return header, [dict(zip(header, row)) for row in reader]


def test_stationary_single_point(tmp_path, capsys):
    cfg = write_config(tmp_path)
    out = str(tmp_path / "point.csv")
    assert main(["stationary", "-c", cfg, "-o", out]) == 0

    header, rows = read_rows(out)
    assert header[:5] == ["omega20[w10]", "lambda[w10]", "omega[w10]",
                          "beta_c[1/w10]", "beta_h[1/w10]"]
    assert "power[w10^2]" in header and "domain_flag" in header
    assert len(rows) == 1
    row = rows[0]

    p = at_optimal_frequency(2.5, 0.5, 5.0, 1.0, q.build_table("resonant", 2.0))
    core = q.stationary_core(p)
    assert float(row["omega[w10]"]) == p.omega
    assert float(row["power[w10^2]"]) == core.power
    assert float(row["eta[1]"]) == q.efficiency(p)[0]
    assert float(row["eta_carnot[1]"]) == 0.8
    assert row["domain_flag"] == "in"

    meta = json.loads((tmp_path / "point.csv.meta.json").read_text())
    assert meta["mode"] == "stationary" and meta["rows"] == 1
    assert meta["config"]["omega"] == "optimal"
    assert "workers" not in meta["config"]
    assert " power[w10^2] = " in capsys.readouterr().out


def test_sweep_marks_non_engine_rows(tmp_path):
    cfg = write_config(
        tmp_path, omega=1.6,
        sweep=[{"axis": "beta_h", "min": 0.5, "max": 4.5, "count": 5}])
    out = str(tmp_path / "sweep.csv")
    assert main(["sweep", "-c", cfg, "-o", out]) == 0
    _, rows = read_rows(out)
    assert len(rows) == 5
    assert [float(r["beta_h[1/w10]"]) for r in rows] == [0.5, 1.5, 2.5, 3.5, 4.5]
    # the engine window closes once beta_h epsilon_20 outgrows beta_c epsilon_10
    flags = [r["domain_flag"] for r in rows]
    assert flags[0] == "in" and flags[-1].startswith("out:")
    for r in rows:
        if r["domain_flag"] == "in":
            assert float(r["eta[1]"]) > 0.0
        else:
            assert r["eta[1]"] == "NA"
            assert r["eta_ssd[1]"] != "NA"


def test_sweep_resolves_optimal_omega_per_point(tmp_path):
    cfg = write_config(
        tmp_path, scheme="uniform", gamma=2.0,
        sweep=[{"axis": "omega20", "min": 2.0, "max": 3.0, "count": 3}])
    out = str(tmp_path / "grid.csv")
    assert main(["sweep", "-c", cfg, "-o", out]) == 0
    _, rows = read_rows(out)
    omegas = [float(r["omega[w10]"]) for r in rows]
    assert len(set(omegas)) == 3
    for r, w20 in zip(rows, (2.0, 2.5, 3.0)):
        expect = at_optimal_frequency(w20, 0.5, 5.0, 1.0, q.build_table("uniform", 2.0))
        assert float(r["omega[w10]"]) == expect.omega


def test_flows_single_point(tmp_path):
    cfg = write_config(tmp_path, scheme="uniform", gamma=2.0)
    out = str(tmp_path / "flows.csv")
    assert main(["flows", "-c", cfg, "-o", out]) == 0
    _, rows = read_rows(out)
    p = at_optimal_frequency(2.5, 0.5, 5.0, 1.0, q.build_table("uniform", 2.0))
    rep = q.decompose_heat(p)
    row = rows[0]
    assert row["pattern"] == rep.pattern
    assert float(row["qd_h[w10^2]"]) == rep.qd_h
    assert float(row["qnd_c[w10^2]"]) == rep.qnd_c
    assert float(row["eta_nd[1]"]) == rep.eta_nd


def test_fcs_single_point(tmp_path):
    cfg = write_config(tmp_path, scheme="custom", table=[2.0, 0.3, 0.7, 1.1], omega=1.5)
    out = str(tmp_path / "fcs.csv")
    assert main(["fcs", "-c", cfg, "-o", out]) == 0
    _, rows = read_rows(out)
    p = q.EngineParams.from_reduced(2.5, 0.5, 1.5, 5.0, 1.0,
                                    q.CouplingTable(2.0, 0.3, 0.7, 1.1))
    rep = q.fcs_report(p)
    row = rows[0]
    for name, value in (("sigma_dot[w10]", rep.sigma_dot), ("var1[w10^3]", rep.var1),
                        ("var4[w10^3]", rep.var4), ("var_power[w10^3]", rep.var_power)):
        assert float(row[name]) == value


def test_tur_scan_reports_minimum(tmp_path, capsys):
    cfg = write_config(
        tmp_path, omega20=2.6, **{"lambda": 0.64},
        beta_c=1.0, beta_h=0.2,
        sweep=[{"axis": "omega", "min": 1.0, "max": 10.0, "count": 11}])
    out = str(tmp_path / "tur.csv")
    assert main(["tur-scan", "-c", cfg, "-o", out]) == 0
    _, rows = read_rows(out)
    turs = [float(r["tur[1]"]) for r in rows if r["tur[1]"] != "NA"]
    meta = json.loads((tmp_path / "tur.csv.meta.json").read_text())
    assert meta["tur_min"] == min(turs)
    assert set(meta["tur_min_at"]) == {"omega20", "lambda", "omega"}
    assert "minimum uncertainty product" in capsys.readouterr().out


def test_dynamics_mode(tmp_path):
    cfg = write_config(
        tmp_path, omega=1.6,
        dynamics={"initial": "mixed", "t_end": 1.0, "dt": 1e-3,
                  "method": "expm", "sample_every": 100})
    out = str(tmp_path / "relax.csv")
    assert main(["dynamics", "-c", cfg, "-o", out]) == 0
    header, rows = read_rows(out)
    assert header[0] == "t[1/w10]" and header[-1] == "qdot_h[w10^2]"
    assert len(rows) == 11
    pops = [sum(float(r[k]) for k in ("rho00[1]", "rho11[1]", "rho22[1]")) for r in rows]
    assert max(abs(s - 1.0) for s in pops) <= 1e-12
    meta = json.loads((tmp_path / "relax.csv.meta.json").read_text())
    assert meta["final_distance_to_stationary"] >= 0.0


def test_workers_do_not_change_output(tmp_path):
    cfg = write_config(
        tmp_path, scheme="uniform", gamma=2.0,
        sweep=[{"axis": "omega20", "min": 1.5, "max": 4.5, "count": 5},
               {"axis": "lambda", "min": 0.1, "max": 0.8, "count": 5}])
    serial = tmp_path / "serial.csv"
    parallel = tmp_path / "parallel.csv"
    assert main(["sweep", "-c", cfg, "-o", str(serial), "-w", "1"]) == 0
    assert main(["sweep", "-c", cfg, "-o", str(parallel), "-w", "4"]) == 0
    assert serial.read_bytes() == parallel.read_bytes()
    assert (tmp_path / "serial.csv.meta.json").read_text() \
        == (tmp_path / "parallel.csv.meta.json").read_text()


@pytest.mark.parametrize("breakage", [
    "not_json", "unknown_key", "missing_required", "omega_conflict",
    "dynamics_sweep", "invalid_point", "table_scheme", "bad_workers",
    "dup_axis", "custom_gamma_sweep", "missing_file",
])
def test_config_errors_exit_2(tmp_path, breakage, capsys):
    mode = "stationary"
    if breakage == "not_json":
        path = tmp_path / "bad.json"
        path.write_text("{nope")
        cfg = str(path)
    elif breakage == "unknown_key":
        cfg = write_config(tmp_path, typo_key=1.0)
    elif breakage == "missing_required":
        path = tmp_path / "missing.json"
        path.write_text(json.dumps({"omega20": 2.5}))
        cfg = str(path)
    elif breakage == "omega_conflict":
        cfg = write_config(tmp_path, omega=2.0,
                           sweep=[{"axis": "omega", "min": 1.0, "max": 2.0, "count": 3}])
    elif breakage == "dynamics_sweep":
        mode = "dynamics"
        cfg = write_config(tmp_path,
                           sweep=[{"axis": "omega20", "min": 2.0, "max": 3.0, "count": 3}])
    elif breakage == "invalid_point":
        cfg = write_config(tmp_path, omega20=1.2, **{"lambda": 2.0})
    elif breakage == "table_scheme":
        cfg = write_config(tmp_path, table=[1.0, 1.0, 1.0, 1.0])
    elif breakage == "bad_workers":
        cfg = write_config(tmp_path, workers=0)
    elif breakage == "dup_axis":
        cfg = write_config(tmp_path,
                           sweep=[{"axis": "beta_c", "min": 2.0, "max": 3.0, "count": 3},
                                  {"axis": "beta_c", "min": 2.0, "max": 3.0, "count": 3}])
    elif breakage == "custom_gamma_sweep":
        cfg = write_config(tmp_path, scheme="custom", table=[1.0, 1.0, 1.0, 1.0],
                           sweep=[{"axis": "gamma", "min": 0.5, "max": 2.0, "count": 3}])
    else:
        cfg = str(tmp_path / "does_not_exist.json")
    assert main([mode, "-c", cfg, "-o", str(tmp_path / "x.csv")]) == 2
    assert "error:" in capsys.readouterr().err


def test_invariant_failure_exits_3(tmp_path, capsys, monkeypatch):
    def boom(*args, **kwargs):
        raise q.InvariantViolation("closed form disagrees with linear solve")

    monkeypatch.setattr("qhe3.cli.solve", boom)
    cfg = write_config(tmp_path)
    assert main(["stationary", "-c", cfg, "-o", str(tmp_path / "x.csv")]) == 3
    assert "internal consistency" in capsys.readouterr().err


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
    assert q.__version__ in capsys.readouterr().out


def test_default_output_name(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    cfg = write_config(tmp_path)
    assert main(["stationary", "-c", cfg]) == 0
    assert (tmp_path / "stationary.csv").exists()
    assert (tmp_path / "stationary.csv.meta.json").exists()
