"""Smoke tests for the python module and the CLI surface."""

import json
import math
import os
import shutil
import subprocess

import pytest

import kerrtap as kt

PI = math.pi


def cli_path():
    path = os.environ.get("KERRTAP_CLI")
    if path and os.path.exists(path):
        return path
    found = shutil.which("kerrtap")
    if found:
        return found
    pytest.skip("kerrtap CLI not available (set KERRTAP_CLI)")


def run_cli(*args, expect=0):
    proc = subprocess.run(
        [cli_path(), *args], capture_output=True, text=True, check=False
    )
    assert proc.returncode == expect, proc.stderr
    return proc.stdout


def test_circuit_reproduces_basis_states():
    qubit = kt.make_qubit(0.0)
    assert qubit.amplitude(kt.Pol.H) == pytest.approx(1.0)
    assert abs(qubit.amplitude(kt.Pol.V)) < 1e-12

    out = kt.apply_bs2(kt.apply_kerr(kt.apply_bs1(kt.attach_probe(qubit)), PI))
    p_d3 = abs(out.amplitude(kt.Pol.H, kt.ProbeMode.D3)) ** 2
    assert p_d3 == pytest.approx(1.0, abs=1e-12)


def test_closed_form_matches_circuit():
    for theta, phi in [(0.3, 1.1), (-0.7, 4.0), (PI / 8, PI)]:
        a = kt.closed_form_table(theta, phi)
        b = kt.circuit_table(theta, phi)
        for field in ("p3_uu", "p4_uu", "p3_uv", "p4_uv",
                      "p3_vu", "p4_vu", "p3_vv", "p4_vv"):
            assert getattr(a, field) == pytest.approx(
                getattr(b, field), abs=1e-12
            )


def test_reference_figures():
    assert kt.capacity(0.75) == pytest.approx(0.189, abs=5e-4)
    metrics = kt.channel_metrics(PI / 8, PI, 1.0)
    assert metrics.i_ae == pytest.approx(0.39912396330714384, abs=1e-12)
    assert metrics.q_ab == pytest.approx(0.25, abs=1e-12)

    alpha_star = kt.threshold_alpha(PI / 8, PI)
    assert alpha_star == pytest.approx(0.755, abs=1e-3)
    assert kt.threshold_alpha(PI / 8, 0.0) is None


def test_attack_rates_validate_alpha():
    table = kt.closed_form_table(PI / 8, PI)
    with pytest.raises(ValueError):
        kt.attack_error_rates(table, 1.5)


def test_run_bb84_deterministic():
    config = kt.SimConfig()
    config.n_pulses = 20000
    config.alpha = 0.5
    config.seed = 99
    a = kt.run_bb84(config)
    b = kt.run_bb84(config)
    assert a.stats.qber_true == b.stats.qber_true
    assert a.stats.n_sifted == b.stats.n_sifted
    assert a.stats.to_json() == b.stats.to_json()
    first = a.records[0]
    assert first.sifted == (first.alice_basis == first.bob_basis)


def test_estimate_qber_signals_insufficient_data():
    with pytest.raises(RuntimeError):
        kt.estimate_qber([], 0.5, 1)


def test_records_csv_header():
    config = kt.SimConfig()
    config.n_pulses = 10
    config.alpha = 1.0
    result = kt.run_bb84(config)
    text = kt.records_csv(result.records)
    lines = text.splitlines()
    assert lines[0].startswith("alice_basis,alice_bit,")
    assert len(lines) == 11


def test_verification_passes():
    results = kt.run_verification(21)
    assert all(r.pass_ for r in results), [
        (r.name, r.detail) for r in results if not r.pass_
    ]


# ---- CLI ----

def test_cli_analyze_json():
    out = run_cli(
        "analyze", "--theta", "0.39269908169872414", "--phi",
        "3.141592653589793", "--alpha", "1", "--json"
    )
    row = json.loads(out)
    assert row["i_ae"] == pytest.approx(0.3995, abs=5e-3)
    assert row["q_ab"] == pytest.approx(0.25, abs=1e-12)
    assert row["unsafe"] is True


def test_cli_analyze_degrees_matches_radians():
    radians = run_cli("analyze", "--theta", str(PI / 8), "--phi", str(PI),
                      "--alpha", "0.5", "--json")
    degrees = run_cli("analyze", "--theta", "22.5", "--phi", "180",
                      "--alpha", "0.5", "--degrees", "--json")
    assert json.loads(radians) == pytest.approx(json.loads(degrees))


def test_cli_rejects_out_of_range_alpha():
    proc = subprocess.run(
        [cli_path(), "analyze", "--alpha", "1.5"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 2
    assert proc.stderr != ""


def test_cli_simulate_deterministic_bytes():
    args = ["simulate", "--n", "50000", "--alpha", "0.5", "--seed", "7"]
    first = run_cli(*args)
    second = run_cli(*args)
    assert first == second
    stats = json.loads(first)
    assert stats["seed"] == 7
    assert stats["qber_true"] == pytest.approx(0.125, abs=0.01)

    serial = run_cli(*args, "--chunks", "1")
    chunked = run_cli(*args, "--chunks", "5")
    assert serial == chunked == first


def test_cli_simulate_dump(tmp_path):
    dump = tmp_path / "records.csv"
    run_cli("simulate", "--n", "100", "--alpha", "1", "--seed", "3",
            "--dump", str(dump))
    lines = dump.read_text().splitlines()
    assert len(lines) == 101
    assert lines[0] == ("alice_basis,alice_bit,intercepted,eve_detector,"
                        "eve_guess,bob_basis,bob_bit,sifted")


def test_cli_simulate_dump_io_error():
    proc = subprocess.run(
        [cli_path(), "simulate", "--n", "10", "--dump",
         "/nonexistent-dir/records.csv"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 3


def test_cli_threshold():
    out = run_cli("threshold", "--theta", str(PI / 8), "--phi", str(PI),
                  "--json")
    payload = json.loads(out)
    assert payload["alpha_star"] == pytest.approx(0.755, abs=1e-3)
    assert payload["q_ab"] == pytest.approx(0.1888, abs=1e-3)

    none_out = run_cli("threshold", "--theta", str(PI / 8), "--phi", "0",
                       "--json")
    assert json.loads(none_out)["alpha_star"] is None


def test_cli_sweep_shape():
    out = run_cli("sweep", "--theta", "0:0.4:0.1", "--phi", str(PI),
                  "--alpha", "0:1:0.25")
    lines = out.splitlines()
    assert lines[0].startswith("theta,phi,alpha,")
    assert len(lines) == 1 + 5 * 1 * 5
    # deterministic ordering: alpha varies fastest
    first_row = lines[1].split(",")
    second_row = lines[2].split(",")
    assert first_row[0] == second_row[0]
    assert float(second_row[2]) > float(first_row[2])


def test_cli_sweep_shows_the_information_crossing():
    out = run_cli("sweep", "--theta", str(PI / 8), "--phi", str(PI),
                  "--alpha", "0.70:0.80:0.005")
    header = out.splitlines()[0].split(",")
    i_alpha = header.index("alpha")
    i_unsafe = header.index("unsafe")
    first_unsafe = None
    for line in out.splitlines()[1:]:
        fields = line.split(",")
        if fields[i_unsafe] == "1":
            first_unsafe = float(fields[i_alpha])
            break
    assert first_unsafe is not None
    assert 0.75 <= first_unsafe <= 0.76


def test_cli_single_point_sweep_matches_analyze():
    sweep = run_cli("sweep", "--theta", "0.3", "--phi", "2.5",
                    "--alpha", "0.4")
    header, row = [line.split(",") for line in sweep.splitlines()]
    analyze = json.loads(run_cli("analyze", "--theta", "0.3", "--phi", "2.5",
                                 "--alpha", "0.4", "--json"))
    for key, value in zip(header, row):
        if key == "unsafe":
            assert (value == "1") == analyze[key]
        else:
            assert float(value) == analyze[key]


def test_cli_sweep_rejects_malformed_range():
    proc = subprocess.run(
        [cli_path(), "sweep", "--theta", "0:1", "--phi", "3.14",
         "--alpha", "1"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 2


def test_cli_verify():
    out = run_cli("verify", "--grid", "21")
    assert "PASS" in out
    assert "FAIL" not in out


def test_cli_config_file(tmp_path):
    cfg = tmp_path / "kerrtap.ini"
    cfg.write_text(
        "[analyze]\n"
        f"theta={PI / 8}\n"
        f"phi={PI}\n"
        "alpha=1\n"
        "json=true\n"
    )
    from_file = run_cli("--config", str(cfg), "analyze")
    direct = run_cli("analyze", "--theta", str(PI / 8), "--phi", str(PI),
                     "--alpha", "1", "--json")
    assert from_file == direct

    # command line wins over the file
    overridden = run_cli("--config", str(cfg), "analyze", "--alpha", "0.5")
    assert json.loads(overridden)["alpha"] == 0.5
