import csv
import io
import json
import math
import subprocess
import sys

import pytest

from qrelax import cli
from qrelax.errors import SingularNetwork

LUMPED = ["t1", "--model", "lumped", "--C", "10f", "--Cg", "10f", "--Cc", "10f", "--Z0", "50", "--freq", "5G", "--alpha", "1"]


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def as_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "json")
    assert code == 0, err
    return json.loads(out)


# ---- cap --------------------------------------------------------------------

def test_cap_substrate(capsys):
    (row,) = as_json(capsys, "cap", "--D", "50u", "--a", "5u", "--eps-r", "10")
    assert row["toroid_substrate_f"] == pytest.approx(11e-15, abs=0.1e-15)


def test_cap_vacuum(capsys):
    (row,) = as_json(capsys, "cap", "--D", "50u", "--a", "5u")
    assert row["toroid_f"] == pytest.approx(2.0e-15, rel=0.01)
    assert row["toroid_substrate_f"] == row["toroid_f"]


def test_cap_prints_lower_bound_note(capsys):
    code, out, _ = run(capsys, "cap", "--D", "50u", "--a", "5u", "--eps-r", "10")
    assert code == 0
    assert "lower bound" in out and "ground is at infinity" in out
    (row,) = as_json(capsys, "cap", "--D", "50u")
    assert "lower bound" in row["note"]


@pytest.mark.parametrize("argv", [["--D", "0"], ["--D", "-1u"], ["--D", "5x"], ["--D", "50u", "--a", "400u"], []])
def test_cap_usage_errors(capsys, argv):
    with pytest.raises(SystemExit) as info:
        code = cli.main(["cap", *argv])
        raise SystemExit(code)
    assert info.value.code == 2


# ---- t1 ---------------------------------------------------------------------

def test_t1_headline(capsys):
    (row,) = as_json(capsys, *LUMPED)
    assert abs(row["t1_s"] - 12.16e-9) <= 0.5e-9
    assert row["t2_bound_s"] == pytest.approx(2 * row["t1_s"])
    assert row["r_eff_ohm"] == pytest.approx(1 / row["re_y_s"], rel=1e-8)


def test_t1_table_output(capsys):
    code, out, _ = run(capsys, *LUMPED)
    assert code == 0
    assert "t1_s" in out and "1.2159" in out


def test_t1_center_is_infinite(capsys):
    (row,) = as_json(capsys, "t1", "--model", "center", "--n", "16")
    assert row["t1_s"] == "inf" and row["r_eff_ohm"] == "inf"


def test_t1_distributed_reports_beta(capsys):
    (dist,) = as_json(capsys, "t1", "--model", "distributed", "--n", "64")
    (lump,) = as_json(capsys, *LUMPED)
    assert dist["t1_lumped_s"] == pytest.approx(lump["t1_s"], rel=1e-8)
    assert dist["t1_s"] == pytest.approx(dist["beta"] * lump["t1_s"], rel=1e-7)
    assert 2 <= dist["beta"] <= 5


def test_t1_regime_violation_warns(capsys):
    code, out, err = run(capsys, "t1", "--model", "lumped", "--Cg", "1p", "--Cc", "1p", "--freq", "10G")
    assert code == 0
    assert "warning" in err and "weak-coupling" in err
    assert "t1_s" in out and "t1_closed_form_s" not in out


def test_t1_grounded_uses_ceff(capsys):
    (row,) = as_json(capsys, "t1", "--model", "grounded", "--Ceff", "5f", "--Lg", "1n")
    assert row["r_eff_ohm"] == pytest.approx(2.8436e6, rel=1e-4)


@pytest.mark.parametrize(
    "argv",
    [
        ["--model", "nope"],
        ["--freq", "0"],
        ["--model", "center", "--n", "5"],
        ["--I0", "1u", "--LJ", "-1n"],
        ["--alpha", "20"],
        ["--Cg", "-1f"],
        ["--Ceff", "5f"],
        ["--model", "distributed", "--tap", "99"],
    ],
)
def test_t1_usage_errors(capsys, argv):
    try:
        code = cli.main(["t1", *argv])
    except SystemExit as exc:
        code = exc.code
    assert code == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["t1"],
        ["sweep", "--points", "3"],
        ["symmetry", "--n", "8"],
    ],
)
def test_computation_errors_exit_1(capsys, monkeypatch, argv):
    def boom(*a, **k):
        raise SingularNetwork("forced")

    monkeypatch.setattr(cli, "environment_admittance", boom)
    monkeypatch.setattr(cli, "effective_resistance_sweep", boom)
    monkeypatch.setattr(cli, "symmetry_breaking_scan", boom)
    code, _, err = run(capsys, *argv)
    assert code == 1 and "forced" in err


def test_cap_computation_error_exit_1(capsys, monkeypatch):
    def boom(*a, **k):
        raise SingularNetwork("forced")

    monkeypatch.setattr(cli, "sphere_capacitance", boom)
    code, _, err = run(capsys, "cap", "--D", "50u")
    assert code == 1


# ---- sweep ------------------------------------------------------------------

SWEEP = ["sweep", "--model", "grounded", "--Ceff", "5f", "--Lg", "1n", "--from", "1G", "--to", "10G", "--points", "91"]


def _csv(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_sweep_csv_schema_and_value(capsys):
    code, out, _ = run(capsys, *SWEEP)
    assert code == 0
    assert out.splitlines()[0] == "freq_hz,re_y_s,im_y_s,r_eff_ohm,t1_s"
    rows = _csv(out)
    assert len(rows) == 91
    f = [float(r["freq_hz"]) for r in rows]
    reff = [float(r["r_eff_ohm"]) for r in rows]
    assert all(a < b for a, b in zip(f, f[1:]))
    assert all(a > b for a, b in zip(reff, reff[1:]))
    at5 = rows[f.index(5e9)]
    assert float(at5["r_eff_ohm"]) == pytest.approx(2.8436e6, rel=1e-4)
    assert out.splitlines()[1] == "1.00000000e+09," + ",".join(out.splitlines()[1].split(",")[1:])


def test_sweep_baseline_without_lg(capsys):
    _, out, _ = run(capsys, *[a for a in SWEEP if a not in ("--Lg", "1n")])
    at5 = [r for r in _csv(out) if float(r["freq_hz"]) == 5e9][0]
    assert float(at5["r_eff_ohm"]) == pytest.approx(0.8106e6, rel=1e-4)


def test_sweep_csv_is_byte_stable(capsys):
    _, first, _ = run(capsys, *SWEEP)
    _, second, _ = run(capsys, *SWEEP)
    assert first.encode() == second.encode()


def test_sweep_json_mirrors_csv(capsys):
    _, out, _ = run(capsys, *SWEEP)
    records = as_json(capsys, *SWEEP)
    assert list(records[0]) == list(_csv(out)[0])
    assert len(records) == 91


def test_sweep_netlist_file_matches_builder(capsys, tmp_path):
    ckt = tmp_path / "env.ckt"
    _, from_builder, _ = run(capsys, *SWEEP, "--dump-netlist", str(ckt))
    _, from_file, _ = run(capsys, "sweep", "--netlist", str(ckt), "--from", "1G", "--to", "10G", "--points", "91")
    assert from_builder == from_file


def test_sweep_lossless_writes_inf(capsys):
    _, out, _ = run(capsys, "sweep", "--model", "center", "--n", "8", "--points", "5")
    rows = _csv(out)
    assert all(r["t1_s"] == "inf" and r["r_eff_ohm"] == "inf" for r in rows)


def test_sweep_status_column_on_singular(capsys, tmp_path):
    f0 = 1 / (2 * math.pi * math.sqrt(1e-9 * 1e-12))
    ckt = tmp_path / "tank.ckt"
    ckt.write_text("L1 1 0 1n\nC1 1 0 1p\nPORT 1 0\n")
    _, out, _ = run(capsys, "sweep", "--netlist", str(ckt), "--from", repr(f0 / 2), "--to", repr(f0), "--points", "2")
    assert out.splitlines()[0].endswith(",status")
    assert [r["status"] for r in _csv(out)] == ["ok", "singular"]


def test_sweep_bad_netlist_is_usage_error(capsys, tmp_path):
    ckt = tmp_path / "bad.ckt"
    ckt.write_text("X1 1 0 5\n")
    code, _, err = run(capsys, "sweep", "--netlist", str(ckt))
    assert code == 2 and "line 1" in err
    code, _, _ = run(capsys, "sweep", "--netlist", str(tmp_path / "missing.ckt"))
    assert code == 2


def test_sweep_single_point_rejected(capsys):
    code, _, _ = run(capsys, "sweep", "--points", "1")
    assert code == 2


def test_sweep_output_file(capsys, tmp_path):
    target = tmp_path / "out.csv"
    code, out, _ = run(capsys, *SWEEP, "--output", str(target))
    assert code == 0 and out == ""
    assert target.read_text().startswith("freq_hz,")


def test_sweep_threads_env_does_not_change_output(capsys, monkeypatch):
    _, serial, _ = run(capsys, *SWEEP)
    monkeypatch.setenv("QRELAX_THREADS", "3")
    _, parallel, _ = run(capsys, *SWEEP)
    assert serial == parallel


# ---- symmetry ---------------------------------------------------------------

def test_symmetry_defaults(capsys):
    rows = as_json(capsys, "symmetry", "--n", "64")
    assert [r["epsilon"] for r in rows] == [0.0, 1e-3, 1e-2, 1e-1]
    assert rows[0]["re_over_abs_im"] <= 1e-12 and rows[0]["t1_s"] == "inf"
    assert isinstance(rows[-1]["t1_s"], float) and rows[-1]["t1_s"] > 0


def test_symmetry_epsilon_list(capsys):
    rows = as_json(capsys, "symmetry", "--epsilon", "0.1")
    assert len(rows) == 1 and rows[0]["t1_s"] > 0


def test_symmetry_usage_error(capsys):
    code, _, _ = run(capsys, "symmetry", "--n", "7")
    assert code == 2
    code, _, _ = run(capsys, "symmetry", "--epsilon", "-2")
    assert code == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "qrelax", "cap", "--D", "50u"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0 and "sphere_f" in proc.stdout
