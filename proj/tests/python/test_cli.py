"""End-to-end tests for the qbell command-line tool."""

import json
import os
import subprocess

import pytest

CLI = os.environ.get("QBELL_CLI")
if CLI is None:
    pytest.skip("QBELL_CLI not set", allow_module_level=True)


def run(*args, check=True):
    proc = subprocess.run([CLI, *args], capture_output=True, text=True)
    if check and proc.returncode != 0:
        raise AssertionError(f"{args} failed: {proc.stderr}")
    return proc


def parse_csv(text):
    lines = [l for l in text.strip().splitlines() if l]
    header = lines[0].split(",")
    rows = [[float(x) if x else None for x in l.split(",")] for l in lines[1:]]
    return header, rows


def test_table1_single_row():
    proc = run("table1", "--q-list", "1.0")
    header, rows = parse_csv(proc.stdout)
    assert header == ["q", "max_cq", "max_cq_rel", "alpha_max", "theta_max"]
    assert len(rows) == 1
    q, c, crel, a, t = rows[0]
    assert abs(c - 0.0631) < 1e-3
    assert abs(crel - 0.0911) < 1e-3
    assert abs(a - 0.1698) < 2e-3
    assert abs(t - 0.2366) < 2e-3


def test_csv_json_equivalence():
    csv_proc = run("table1", "--q-list", "1.8", "--precision", "9")
    json_proc = run("table1", "--q-list", "1.8", "--format", "json")
    _, rows = parse_csv(csv_proc.stdout)
    data = json.loads(json_proc.stdout)
    assert len(data) == 1
    for i, key in enumerate(["q", "max_cq", "max_cq_rel", "alpha_max", "theta_max"]):
        assert rows[0][i] == pytest.approx(data[0][key], abs=1e-9)


def test_determinism():
    a = run("fig1", "--q-list", "1.3", "--step", "0.05").stdout
    b = run("fig1", "--q-list", "1.3", "--step", "0.05").stdout
    assert a == b
    s1 = run("kcbs-scan", "--q", "1.4", "--points", "60").stdout
    s2 = run("kcbs-scan", "--q", "1.4", "--points", "60").stdout
    assert s1 == s2


def test_table2_perfect_detection():
    proc = run("table2", "--eta", "1.0", "--q-list", "1.0,2.0", "--points", "80")
    _, rows = parse_csv(proc.stdout)
    assert all(abs(r[1]) < 1e-12 for r in rows)


def test_table2_half_eta_distance():
    near = run("table2", "--eta", "0.995", "--q-list", "2.0", "--points", "80")
    far = run("table2", "--eta", "0.99", "--q-list", "2.0", "--points", "80")
    r_near = parse_csv(near.stdout)[1][0][1]
    r_far = parse_csv(far.stdout)[1][0][1]
    assert 0.4 < r_near / r_far < 0.62


def test_fig1_series():
    proc = run("fig1", "--q-list", "1.0", "--gamma-range", "0.5:1.5", "--step", "0.01")
    _, rows = parse_csv(proc.stdout)
    assert len(rows) == 101
    peak = max(r[2] for r in rows)
    assert abs(peak - 0.2369) < 1e-3
    single = run("fig1", "--q-list", "1.0", "--gamma-range", "1.0:1.2", "--step", "5.0")
    assert len(parse_csv(single.stdout)[1]) == 1


def test_fig2_header_only_when_no_orders():
    proc = run("fig2", "--q-list", "", "--step", "0.3")
    assert proc.stdout.strip() == "q,theta,c_rel"


def test_fig2_threshold_sign_flip():
    proc = run("fig2", "--q-list", "1.13,1.3", "--theta-range", "0.4765:0.4765",
               "--step", "1.0")
    _, rows = parse_csv(proc.stdout)
    assert len(rows) == 2
    low, high = rows[0][2], rows[1][2]
    assert low <= 0.0 < high


def test_cycle_check_exit_codes():
    violated = run("cycle-check", "--n", "5", "--corr", "-1,-1,-1,-1,-1", check=False)
    assert violated.returncode == 1
    assert "violated" in violated.stdout
    assert "margin: -2" in violated.stdout
    inside = run("cycle-check", "--n", "4", "--corr", "0,0,0,0", check=False)
    assert inside.returncode == 0
    assert "inside" in inside.stdout
    malformed = run("cycle-check", "--n", "4", "--corr", "0,0,zebra,0", check=False)
    assert malformed.returncode == 2
    wrong_count = run("cycle-check", "--n", "4", "--corr", "0,0", check=False)
    assert wrong_count.returncode == 2


def test_cycle_check_from_file(tmp_path):
    path = tmp_path / "corr.txt"
    path.write_text("-1 -1 -1\n-1 -1\n")
    proc = run("cycle-check", "--n", "5", "--corr", f"@{path}", check=False)
    assert proc.returncode == 1


def test_cycle_check_json():
    proc = run("cycle-check", "--n", "4", "--corr",
               "-0.707,-0.707,-0.707,0.707", "--format", "json", check=False)
    assert proc.returncode == 1
    data = json.loads(proc.stdout)
    assert data["verdict"] == "violated"
    assert data["max_lhs"] == pytest.approx(2.828, abs=1e-3)
    assert sum(1 for s in data["worst_signs"] if s < 0) % 2 == 1


def test_kcbs_eta_json():
    proc = run("kcbs-eta", "--alpha", "0.2099", "--theta", "0.3880", "--q", "2.0",
               "--eta", "0.99")
    data = json.loads(proc.stdout)
    assert data["model"] == "two"
    assert data["c_q"] == pytest.approx(0.1079, abs=1e-4)
    assert data["c_q_eta"] == pytest.approx(0.99 ** 4 * data["c_q"] - data["delta_q"],
                                            abs=1e-10)
    assert data["ratio"] is not None


def test_kcbs_eta_no_violation_note():
    proc = run("kcbs-eta", "--alpha", "0.1885", "--theta", "0.4765", "--q", "1.0")
    data = json.loads(proc.stdout)
    assert data["ratio"] is None
    assert "note" in data
    assert data["c_q"] < 0


def test_kcbs_eta_perfect_detection():
    proc = run("kcbs-eta", "--alpha", "0.1698", "--theta", "0.2366", "--q", "1.0",
               "--eta", "1.0")
    data = json.loads(proc.stdout)
    assert data["delta_q"] == pytest.approx(0.0, abs=1e-15)
    assert data["ratio"] == pytest.approx(0.0, abs=1e-12)
    assert data["c_q_eta"] == pytest.approx(data["c_q"], abs=1e-12)


def test_kcbs_eta_single_model():
    proc = run("kcbs-eta", "--alpha", "0.1698", "--theta", "0.2366", "--q", "1.0",
               "--eta", "0.5", "--model", "single")
    data = json.loads(proc.stdout)
    assert data["c_q_eta"] == pytest.approx(0.5 * data["c_q"], abs=1e-12)
    assert data["delta_q"] == 0.0


def test_q_threshold_csv():
    proc = run("q-threshold", "--alpha", "0.1885", "--theta", "0.4765",
               "--q-range", "1:3")
    header, rows = parse_csv(proc.stdout)
    assert header[-2:] == ["crossed", "q_star"]
    assert rows[0][4] == 1.0
    assert abs(rows[0][5] - 1.13) < 5e-3
    none = run("q-threshold", "--alpha", "0.1698", "--theta", "0.2366",
               "--q-range", "1:1.05", "--format", "json")
    data = json.loads(none.stdout)
    assert data["crossed"] is False
    assert data["q_star"] is None


def test_output_file_and_precision(tmp_path):
    out = tmp_path / "t.csv"
    run("chsh-scan", "--q", "1.0", "--points", "100", "--precision", "3",
        "--out", str(out))
    text = out.read_text()
    cell = text.splitlines()[1].split(",")[1]
    assert len(cell.split(".")[1]) == 3
    bad = run("table1", "--q-list", "1.0", "--out", "/nonexistent/dir/x.csv",
              check=False)
    assert bad.returncode == 2


def test_config_file_defaults(tmp_path):
    cfg = tmp_path / "qbell.ini"
    cfg.write_text("[kcbs-scan]\npoints=50\nprecision=4\n")
    with_cfg = run("--config", str(cfg), "kcbs-scan", "--q", "1.0")
    default = run("kcbs-scan", "--q", "1.0", "--points", "50", "--precision", "4")
    assert with_cfg.stdout == default.stdout
    override = run("--config", str(cfg), "kcbs-scan", "--q", "1.0", "--points", "60",
                   "--precision", "4")
    assert override.stdout != with_cfg.stdout


def test_usage_error_exit_code():
    proc = run("no-such-command", check=False)
    assert proc.returncode == 2
    proc2 = run("table1", "--format", "yaml", check=False)
    assert proc2.returncode == 2
