import csv
import io
import json
import math
import subprocess
import sys

import pytest

from ptchain.cli import main
from ptchain.scan import ConfigError, ScanConfig, dumps, random_points, record_fields, run_boundary, run_scan


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


# --- check / spectrum ---


def test_check_inside(capsys):
    code, out, _ = run(["check", "-N", "2", "-g", "0.5"], capsys)
    assert code == 0 and "verdict: inside" in out


def test_check_eep_exact_is_boundary(capsys):
    code, out, _ = run(["check", "-N", "6", "-g", "2.2360679,2.8284271,3", "--exact", "5,8,9"], capsys)
    assert code == 2 and "verdict: boundary" in out


def test_check_outside_with_spectrum_json(capsys):
    code, out, _ = run(["check", "-N", "3", "-g", "2", "--spectrum", "--format", "json"], capsys)
    data = json.loads(out)
    assert code == 1
    assert data["verdict"] == "outside" and data["witness"] == "P >= 0"
    assert data["spectrum"]["classification"]


@pytest.mark.parametrize(
    "argv",
    [
        ["check", "-N", "2"],
        ["check", "-N", "2", "-g", "abc"],
        ["check", "-N", "4", "-g", "1", "--exact", "1,1"],
        ["check", "-N", "4", "-g", "1,1", "--exact", "2,1"],
        ["frobnicate"],
    ],
)
def test_usage_errors(argv, capsys):
    assert run(argv, capsys)[0] == 64


def test_unsupported_dimension(capsys):
    code, _, err = run(["check", "-N", "12", "-g", "1,1,1,1,1,1"], capsys)
    assert code == 65 and "N" in err


def test_wrong_coupling_count(capsys):
    assert run(["check", "-N", "6", "-g", "1,1"], capsys)[0] == 65


def test_spectrum_command(capsys):
    code, out, _ = run(["spectrum", "-N", "6", "-g", "0,0,0", "--format", "json"], capsys)
    energies = sorted(e[0] for e in json.loads(out)["energies"])
    assert code == 0
    assert energies == pytest.approx([-5, -3, -1, 1, 3, 5])


# --- scan ---


def test_scan_n2_line(capsys):
    code, out, _ = run(["scan", "-N", "2", "--grid=-1.5:1.5:301"], capsys)
    recs = rows(out)
    assert code == 0 and len(recs) == 301
    assert list(recs[0]) == record_fields(1)
    for r in recs:
        a = float(r["g_1"])
        if abs(abs(a) - 1) > 1e-9:
            assert (r["verdict"] == "inside") == (abs(a) < 1)
        else:
            assert r["verdict"] == "boundary"


def test_scan_n6_slice_respects_ellipse(capsys):
    code, out, _ = run(["scan", "-N", "6", "--grid", "0:4.5:19", "--grid", "0:0:1", "--grid", "0:6.5:27", "--no-spectrum"], capsys)
    assert code == 0
    for r in rows(out):
        c, a = float(r["g_1"]), float(r["g_3"])
        if r["verdict"] == "inside":
            assert a * a + 2 * c * c < 35


def test_scan_both_mode_random(capsys, tmp_path):
    path = tmp_path / "out.json"
    code, _, _ = run(["scan", "-N", "8", "--samples", "300", "--mode", "both", "--format", "json", "--output", str(path), "--seed", "3"], capsys)
    recs = json.loads(path.read_text())
    assert code == 0 and len(recs) == 300
    assert not any(r["mismatch"] is True for r in recs)
    assert all(r["oracle_verdict"] in ("inside", "outside", "boundary") for r in recs)


def test_scan_is_deterministic_and_thread_independent(capsys, tmp_path):
    outs = []
    for threads in ("1", "1", "3"):
        path = tmp_path / f"scan{len(outs)}.csv"
        argv = ["scan", "-N", "5", "--samples", "60", "--seed", "11", "--threads", threads, "--output", str(path)]
        assert run(argv, capsys)[0] == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1] == outs[2]


def test_scan_config_file_and_override(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"N": 4, "grid": [[0, 2, 3], [0, 2, 3]], "format": "json"}))
    code, out, _ = run(["scan", "--config", str(cfg), "--format", "csv"], capsys)
    assert code == 0 and len(rows(out)) == 9


@pytest.mark.parametrize(
    "payload",
    [
        {"N": 4, "grid": [[0, 2, 3]]},
        {"N": 4, "grid": [[2, 0, 3], [0, 1, 1]]},
        {"N": 4, "grid": [[0, 2, 0], [0, 1, 1]]},
        {"N": 4, "samples": 3, "epsilon": 0},
        {"N": 4, "samples": 3, "colour": "red"},
        {"N": 13, "samples": 3},
    ],
)
def test_bad_config_is_data_error(payload, capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps(payload))
    assert run(["scan", "--config", str(cfg)], capsys)[0] == 65


def test_unwritable_output(capsys, tmp_path):
    target = tmp_path / "missing" / "out.csv"
    assert run(["scan", "-N", "2", "--grid", "0:1:3", "--output", str(target)], capsys)[0] == 65


def test_config_validation_api():
    with pytest.raises(ConfigError):
        ScanConfig(N=4, mode="sometimes").validate()
    with pytest.raises(ConfigError):
        run_scan(ScanConfig(N=4))


def test_random_points_reproducible():
    assert random_points(6, 5, 1) == random_points(6, 5, 1)
    assert random_points(6, 5, 1) != random_points(6, 5, 2)


def test_dumps_json_has_no_nan():
    text = dumps([{"x": math.inf, "y": 1.5, "z": True}], "json")
    assert json.loads(text) == [{"x": "inf", "y": 1.5, "z": True}]
    assert dumps([{"x": True, "y": "a,b"}], "csv") == 'x,y\ntrue,"a,b"\n'


# --- boundary ---


def test_boundary_n3(capsys):
    code, out, _ = run(["boundary", "-N", "3", "--ray", "1"], capsys)
    (rec,) = rows(out)
    assert code == 0
    assert float(rec["r"]) == pytest.approx(math.sqrt(2), abs=1e-10)


def test_boundary_n4_arc_contains_corner():
    recs = run_boundary(ScanConfig(N=4, rays=64, tol=1e-10))
    assert len(recs) == 64 and not any(r["error"] for r in recs)
    pts = [(float(r["g_1"]), float(r["g_2"])) for r in recs]
    angles = [math.atan2(y, x) for x, y in pts]
    assert angles == sorted(angles)
    # the corner direction lies between two rays whose exit radii bracket it
    corner = math.atan2(2, math.sqrt(3))
    i = next(k for k, t in enumerate(angles) if t > corner)
    assert min(math.hypot(*pts[i - 1]), math.hypot(*pts[i])) <= math.sqrt(7) + 1e-9


def test_boundary_n10_axis(capsys):
    code, out, _ = run(["boundary", "-N", "10", "--ray", "1,0,0,0,0", "--format", "json"], capsys)
    (rec,) = json.loads(out)
    assert code == 0 and 0 < rec["r"] < math.sqrt(10.8)


# --- eep / dep / verify ---


def test_eep_n6(capsys):
    code, out, _ = run(["eep", "-N", "6"], capsys)
    (rec,) = rows(out)
    assert code == 0
    assert rec["g_squared"] == "5 8 9" and rec["all_zero"] == "true"


def test_eep_all(capsys):
    code, out, _ = run(["eep", "--all", "--format", "json"], capsys)
    recs = json.loads(out)
    assert [r["N"] for r in recs] == list(range(2, 12))
    assert all(r["all_zero"] for r in recs)


def test_dep_range(capsys):
    code, out, _ = run(["dep", "--c-range", "4:8:50"], capsys)
    recs = [r for r in rows(out) if r["valid"] == "true"]
    assert code == 0 and recs
    assert all(r["pattern"] == "2 2 2" for r in recs)
    assert all(float(r["energy_deviation"]) < 1e-8 for r in recs)


def test_dep_physical_branch(capsys):
    code, out, _ = run(["dep", "--c-range", "1.1:2.2:5", "--a-max", "3"], capsys)
    recs = rows(out)
    assert code == 0 and all(r["on_horizon"] == "true" for r in recs)


def test_verify_command(capsys):
    code, out, _ = run(["verify", "-N", "4", "-N", "7", "--samples", "200"], capsys)
    recs = rows(out)
    assert code == 0
    assert [int(r["mismatch"]) for r in recs] == [0, 0]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "ptchain", "check", "-N", "2", "-g", "1"], capture_output=True, text=True)
    assert proc.returncode == 2
    assert "boundary" in proc.stdout
