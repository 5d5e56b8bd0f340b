import io
import json
import os
import subprocess
import sys

import pytest

from metadehn.cli import main
from metadehn.errors import UsageError
from metadehn.experiments import RunConfig, dyadic_rows, fit_growth_exponent, manifest, read_config_file, run_pool


def run(*argv):
    buf = io.StringIO()
    code = main(list(argv), stdout=buf)
    return code, buf.getvalue()


def test_fit_examples():
    res = fit_growth_exponent([(8, 64), (16, 256), (32, 1024)])
    assert res.slope == pytest.approx(2.0) and res.r2 == pytest.approx(1.0)
    assert fit_growth_exponent([(8, 8), (16, 16), (32, 32)]).slope == pytest.approx(1.0)
    with pytest.raises(UsageError):
        fit_growth_exponent([(8, 8), (16, 16)])
    with pytest.raises(UsageError):
        fit_growth_exponent([(8, 8), (16, 0), (32, 32)])
    assert dyadic_rows(list(range(1, 20))) == [(8, 8), (16, 16)]


def test_run_pool_keeps_order():
    assert run_pool(abs, [-3, 1, -2, 5], workers=2) == [3, 1, 2, 5]
    assert run_pool(abs, [-1], workers=4) == [1]


def test_norm_and_ordered_form():
    code, text = run("norm", "--element", "t^3+t^2+t+1")
    assert code == 0 and json.loads(text)["norm"] == 10
    code, text = run("ordered-form", "--element", "2t+1")
    assert code == 0 and json.loads(text)["word"] == "t1^-1 a1^2 t1 a1"


def test_malformed_polynomial_exits_1():
    assert run("norm", "--element", "2**t")[0] == 1
    assert run("area", "--gens", "t-", "--element", "t")[0] == 1
    assert run("bogus")[0] == 1
    assert run("norm")[0] == 1


def test_area_statuses():
    code, text = run("area", "--gens", "2t-3", "--element", "2t^2-t-3")
    assert code == 0 and json.loads(text) == {"status": "member", "area": 2, "alphas": ["t1 + 1"],
                                              "complete": True}
    code, text = run("area", "--gens", "t-1 | t+1", "--element", "1", "--budget", "2")
    assert code == 2 and json.loads(text)["status"] == "unknown"


def test_dehn_profile_t_minus_2_at_128():
    code, text = run("dehn-profile", "--gens", "t-2", "--n-max", "128")
    lines = text.strip().splitlines()
    assert code == 0 and lines[0] == "n,delta_hat,exact" and len(lines) == 129
    assert all(line.endswith(",true") for line in lines[1:])


def test_dehn_profile_guard_exits_2():
    assert run("dehn-profile", "--gens", "t-1", "--n-max", "30", "--max-states", "20")[0] == 2


def test_distortion_exit_codes():
    code, text = run("distortion", "--gens", "t-1", "--r-max", "4")
    assert code == 0 and text.splitlines()[0] == "r,sup_H_length,witness_word,exact"
    code, text = run("distortion", "--gens", "t-1", "--r-max", "9", "--max-nodes", "2000")
    assert code == 2
    assert text.strip().splitlines()[-1] == "9,,,false"


def test_witness_and_fit():
    code, text = run("witness", "--l", "2", "--n", "3")
    assert code == 0 and json.loads(text)["h_length"] == 9 + 4
    code, text = run("fit", "--rows", "8:64,16:256,32:1024")
    assert code == 0 and json.loads(text)["slope"] == pytest.approx(2.0)


def test_fit_from_profile_csv(tmp_path):
    out = tmp_path / "prof"
    assert run("dehn-profile", "--gens", "t-1", "--n-max", "64", "--out", str(out))[0] == 0
    code, text = run("fit", "--csv", str(out / "dehn_profile.csv"), "--dyadic")
    res = json.loads(text)
    # n = 1, 2 have zero area and are dropped; 4..64 remain
    assert code == 0 and res["points"] == 5 and res["dropped_rows"] == 2
    assert res["slope"] == pytest.approx(2.0)


def test_certificate_round_trip(tmp_path):
    out = tmp_path / "bs"
    code, _ = run("bs-bound", "--bs", "2,3", "--sample-length", "40", "--seed", "3", "--out", str(out))
    assert code == 0
    cert = out / "certificate.json"
    assert run("verify-cert", "--cert", str(cert))[0] == 0
    data = json.loads(cert.read_text())
    data["moves"][0]["area_cost"] += 1
    cert.write_text(json.dumps(data))
    code, text = run("verify-cert", "--cert", str(cert))
    assert code == 1 and json.loads(text)["valid"] is False
    assert run("bs-bound", "--bs", "2,3", "--word", "a")[0] == 1
    assert run("bs-bound", "--bs", "2", "--word", "a")[0] == 1
    assert run("lm-bound", "--lamp", "3", "--word", "t^-1 a^3 t")[0] == 0
    assert run("l2-reduce", "--sequence", "2,3,5,3,5,8,2,8")[0] == 0
    assert run("l2-reduce", "--sequence", "2,3")[0] == 1
    assert run("l2-reduce", "--sample-length", "100", "--seed", "1")[0] == 0


def test_bfs_check():
    code, text = run("bfs-check", "--r-max", "4", "--gens", "t-1", "--workers", "2")
    results = json.loads(text)
    assert code == 0 and len(results) == 2 and all(r["mismatches"] == 0 for r in results)


def test_manifest_and_determinism(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    argv = ["dehn-profile", "--gens", "t-1", "--n-max", "24"]
    assert run(*argv, "--out", str(a))[0] == 0
    man = json.loads((a / "manifest.json").read_text())
    assert set(man) == {"version", "timestamp", "config", "command"}
    assert man["config"]["gens"] == "t-1" and man["config"]["n_max"] == 24
    # re-run from the manifest's recorded command into a fresh directory
    cmd = list(man["command"])
    cmd[cmd.index("--out") + 1] = str(b)
    assert run(*cmd)[0] == 0
    assert (a / "dehn_profile.csv").read_bytes() == (b / "dehn_profile.csv").read_bytes()


def test_exact_rows_reproduced_with_doubled_budget():
    _, small = run("dehn-profile", "--gens", "t^2-2t+1", "--n-max", "20")
    _, big = run("dehn-profile", "--gens", "t^2-2t+1", "--n-max", "20", "--max-states", "4000000")
    rows_small = [line.split(",") for line in small.strip().splitlines()[1:]]
    rows_big = {r[0]: r for r in (line.split(",") for line in big.strip().splitlines()[1:])}
    for r in rows_small:
        if r[2] == "true":
            assert rows_big[r[0]] == r


def test_config_file_and_override(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# profile settings\ngens = t-1\nn-max = 10\nformat = json\n")
    assert read_config_file(str(cfg)) == {"gens": "t-1", "n_max": "10", "format": "json"}
    code, text = run("dehn-profile", "--config", str(cfg))
    assert code == 0 and len(json.loads(text)["rows"]) == 10
    code, text = run("dehn-profile", "--config", str(cfg), "--n-max", "5", "--format", "csv")
    assert code == 0 and len(text.strip().splitlines()) == 6
    bad = tmp_path / "bad.cfg"
    bad.write_text("colour = blue\n")
    assert run("dehn-profile", "--config", str(bad))[0] == 1
    bad.write_text("just words\n")
    assert run("dehn-profile", "--config", str(bad))[0] == 1
    assert run("dehn-profile", "--config", str(tmp_path / "missing.cfg"))[0] == 1


def test_manifest_function():
    m = manifest(RunConfig(command="fit"), timestamp="T")
    assert m["timestamp"] == "T" and m["command"] == ["fit"] and m["config"]["command"] == "fit"


def test_console_entry_point():
    env = dict(os.environ)
    proc = subprocess.run([sys.executable, "-m", "metadehn", "norm", "--element", "2t-3"],
                          capture_output=True, text=True, env=env)
    assert proc.returncode == 0 and json.loads(proc.stdout)["norm"] == 7
    proc = subprocess.run([sys.executable, "-m", "metadehn", "norm", "--element", "t^"],
                          capture_output=True, text=True, env=env)
    assert proc.returncode == 1 and "error" in proc.stderr
