"""Command-line interface: CSV contract, config handling, exit codes."""
import csv
import io
import math
import subprocess
import sys

import pytest

from swipt_relay.cli import UsageError, parse_values, run

HEADER = "param,scheme,quantity,value,stderr"
from swipt_relay.model import SystemParams
from swipt_relay.optimum import mrc_single_antenna_theta


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_outage_sweep_contract(capsys):
    code, out, _ = call(capsys, "outage", "--scheme", "mmse", "--sweep", "rho1_db", "0:5:40", "--n", "3",
                        "--theta", "0.5", "--rho-i-db", "9.5", "--mc-samples", "2000")
    assert code == 0
    assert out.splitlines()[0] == HEADER
    r = rows(out)
    params = sorted({x["param"] for x in r}, key=lambda s: float(s.split("=")[1]))
    assert params == [f"rho1_db={v}" for v in range(0, 45, 5)]
    quantities = {x["quantity"] for x in r}
    assert quantities == {"outage_mc", "outage_lb", "outage_hsnr", "theta_opt"}
    assert len(r) == 9 * len(quantities)
    for x in r:
        assert x["scheme"] == "mmse"
        assert (x["stderr"] != "") == (x["quantity"] == "outage_mc")


def test_exact_outage_rows_only_for_noise_limited(capsys):
    code, out, _ = call(capsys, "outage", "--quantities", "outage_exact", "--mc-samples", "1000")
    assert code == 0
    assert {x["scheme"] for x in rows(out)} == {"nl"}


def test_twelve_significant_digits(capsys):
    _, out, _ = call(capsys, "outage", "--scheme", "nl", "--quantities", "outage_exact")
    v = rows(out)[0]["value"]
    mantissa = v.split("e")[0].replace(".", "").replace("-", "").lstrip("0")
    assert len(mantissa) <= 12 and float(v) > 0


def test_capacity_sweep(capsys):
    code, out, _ = call(capsys, "capacity", "--sweep", "theta", "0.2,0.5,0.8", "--mc-samples", "3000")
    assert code == 0
    r = rows(out)
    assert {x["quantity"] for x in r} == {"capacity_mc", "capacity_ub"}
    assert len(r) == 3 * 4 * 2
    for x in r:
        if x["quantity"] == "capacity_mc":
            ub = next(y for y in r if y["param"] == x["param"] and y["scheme"] == x["scheme"]
                      and y["quantity"] == "capacity_ub")
            assert float(x["value"]) <= float(ub["value"]) + 3 * float(x["stderr"])


def test_theta_single_antenna_closed_form(capsys):
    code, out, _ = call(capsys, "theta", "--scheme", "mrc", "--n", "1", "--rho1-db", "10", "--rho-i-db", "20")
    assert code == 0
    got = {x["quantity"]: float(x["value"]) for x in rows(out)}
    ref = mrc_single_antenna_theta(SystemParams(n_antennas=1, rho1=10.0, rho_i=100.0))
    assert abs(got["theta_opt"] - ref) <= 1e-8
    assert got["theta_closed_form"] == pytest.approx(ref, abs=1e-11)
    assert got["residual"] <= 1e-9


def test_theta_scans(capsys):
    code, out, _ = call(capsys, "theta", "--scheme", "nl", "--scan", "--capacity-scan", "--grid-points", "11",
                        "--mc-samples", "2000")
    assert code == 0
    q = [x["quantity"] for x in rows(out)]
    assert q.count("outage_mc") == 11 and q.count("capacity_mc") == 11
    assert "argmin_theta_mc" in q and "argmax_theta_capacity_mc" in q


@pytest.mark.parametrize("argv, field", [
    (["outage", "--sweep", "rho2_db", "0:1:2"], "sweep"),
    (["outage", "--sweep", "theta", "0:0:1"], "theta"),
    (["outage", "--scheme", "foo"], "scheme"),
    (["outage", "--eta", "1.5"], "eta"),
    (["outage", "--n", "2.5"], "n"),
    (["outage", "--quantities", "capacity_mc"], "quantities"),
    (["outage", "--mc-samples", "10"], "mc_samples"),
    (["theta", "--grid-points", "5", "--scan"], "grid_points"),
    (["outage", "--scheme", "zf", "--n", "1"], "scheme"),
    (["frobnicate"], None),
])
def test_usage_errors_exit_2(capsys, argv, field):
    code, _, err = call(capsys, *argv)
    assert code == 2
    if field:
        assert field in err


def test_parse_values():
    assert parse_values("rho1_db", "0:5:20") == [0, 5, 10, 15, 20]
    assert parse_values("theta", "0.1, 0.5") == [0.1, 0.5]
    assert parse_values("x", "0:0.1:0.3") == pytest.approx([0, 0.1, 0.2, 0.3])
    for bad in ("", "1:2", "a,b", "5:1:0", "0:-1:5"):
        with pytest.raises(UsageError):
            parse_values("x", bad)


def test_degenerate_exit_3_and_nudge(capsys):
    argv = ["outage", "--scheme", "mrc", "--rho1-db", "10", "--rho-i-db", "10", "--mc-samples", "1000"]
    code, out, err = call(capsys, *argv)
    assert code == 3 and out == "" and "rho_i" in err
    code, out, _ = call(capsys, *argv, "--nudge")
    assert code == 0
    assert all(math.isfinite(float(x["value"])) for x in rows(out))


def test_nudge_leaves_distinct_values_alone(capsys):
    base = ["outage", "--scheme", "mrc", "--quantities", "outage_lb"]
    assert call(capsys, *base) == call(capsys, *base, "--nudge")


def test_bracket_failure_exit_1(capsys):
    code, _, err = call(capsys, "theta", "--scheme", "nl", "--n", "1", "--rho1-db", "0", "--gamma-th-db", "10")
    assert code == 1 and "theta" in err


def test_config_and_flag_precedence(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# sweep over antennas\nscheme = nl\nrho1_db = 30\nquantities = outage_exact\n"
                   "sweep = n_antennas 1,2\n", encoding="utf-8")
    code, out, _ = call(capsys, "outage", "--config", str(cfg))
    assert code == 0
    from_file = rows(out)
    assert [x["param"] for x in from_file] == ["n_antennas=1", "n_antennas=2"]
    code, out, _ = call(capsys, "outage", "--config", str(cfg), "--rho1-db", "20")
    overridden = rows(out)
    assert all(float(a["value"]) < float(b["value"]) for a, b in zip(from_file, overridden))
    code, out, _ = call(capsys, "outage", "--config", str(cfg), "--sweep", "theta", "0.3,0.7")
    assert [x["param"] for x in rows(out)] == ["theta=0.3", "theta=0.7"]


def test_config_errors(tmp_path, capsys):
    bad = tmp_path / "bad.cfg"
    bad.write_text("colour = blue\n", encoding="utf-8")
    code, _, err = call(capsys, "outage", "--config", str(bad))
    assert code == 2 and "colour" in err
    code, _, err = call(capsys, "outage", "--config", str(tmp_path / "missing.cfg"))
    assert code == 2 and "config" in err


def test_out_file_and_determinism(tmp_path, capsys):
    argv = ["outage", "--sweep", "rho1_db", "0:10:20", "--mc-samples", "5000", "--seed", "7"]
    code, out, _ = call(capsys, *argv)
    target = tmp_path / "o.csv"
    code2, out2, _ = call(capsys, *argv, "--out", str(target))
    assert code == code2 == 0 and out2 == ""
    assert target.read_bytes() == out.encode()
    code3, out3, _ = call(capsys, *argv, "--workers", "3")
    assert out3 == out


def test_validate_quick(capsys):
    code, out, err = call(capsys, "validate", "--quick")
    assert code == 0
    assert out.splitlines()[0] == HEADER
    assert "checks passed" in err and "FAILED" not in err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "swipt_relay", "outage", "--scheme", "nl",
                           "--quantities", "outage_exact"], capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[0] == HEADER
