import csv
import io
import json
import subprocess
import sys

import pytest

from polycap.cli import EXIT_INPUT, EXIT_OK, EXIT_SOLVER, fmt_complex, main, parse_complex


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(out):
    return list(csv.DictReader(io.StringIO(out)))


@pytest.mark.parametrize(
    "text, value",
    [("0", 0), ("0.5", 0.5), ("0.1+0.3i", 0.1 + 0.3j), ("-0.2+0.5i", -0.2 + 0.5j), ("-0.3-0.5i", -0.3 - 0.5j),
     ("0.3i", 0.3j), ("-i", -1j), ("1e-3-2e-1j", 0.001 - 0.2j), ("0.1,-0.2", 0.1 - 0.2j)],
)
def test_parse_complex(text, value):
    assert parse_complex(text) == value


@pytest.mark.parametrize("text", ["", "abc", "1+2i+3i", "i2", "1,2,3"])
def test_parse_complex_rejects(text):
    with pytest.raises(ValueError):
        parse_complex(text)


def test_fmt_complex_round_trips():
    for z in (0.1 + 0.3j, -0.3 - 0.5j, 0.5, -0.2j):
        assert parse_complex(fmt_complex(z)) == z


def test_cap_annulus_csv(capsys):
    code, out, err = run(capsys, "cap", "--domain", "builtin:annulus-0.7", "--n", "256")
    assert code == EXIT_OK and err == ""
    (row,) = rows(out)
    assert abs(float(row["capacity"]) - 17.615998583457760) < 1e-10
    assert len(row["capacity"].replace(".", "").lstrip("0")) == 16


def test_cap_json_mirror(capsys):
    code, out, _ = run(capsys, "cap", "--domain", "builtin:disk-0.8", "--n", "256", "--out", "json")
    data = json.loads(out)
    assert code == EXIT_OK
    assert abs(data["capacity"] - 28.157593038985901) < 1e-9
    assert {"residual", "condition", "solver"} <= set(data["diagnostics"])


def test_cap_alpha_override(capsys):
    code, out, _ = run(capsys, "cap", "--domain", "builtin:annulus-0.7", "--n", "256", "--alpha=-0.8,0.1")
    assert code == EXIT_OK and abs(float(rows(out)[0]["capacity"]) - 17.615998583457760) < 1e-9


def test_cap_invalid_domain_exit_2(capsys):
    code, out, err = run(capsys, "cap", "--domain", "builtin:mobius-E-literal", "--n", "64")
    assert code == EXIT_INPUT and out == "" and "not closed" in err


def test_cap_malformed_json_names_field(capsys, tmp_path):
    doc = {"format": "polycap-domain-v1", "outer": {"arcs": [{"kind": "full_circle", "center": [0, 0],
           "radius": 1, "ccw": True}]}, "holes": [{"arcs": [{"kind": "segment", "a": [0, 0]}]}]}
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc), encoding="utf-8")
    code, out, err = run(capsys, "cap", "--domain", str(path), "--n", "64")
    assert code == EXIT_INPUT and out == ""
    assert "holes[0].arcs[0].b" in err


def test_cap_alpha_on_boundary_is_a_validation_error(capsys):
    code, out, err = run(capsys, "cap", "--domain", "builtin:annulus-0.7", "--n", "64", "--alpha=0.7,0")
    assert code == EXIT_INPUT and out == "" and "alpha" in err


def test_cap_gmres_nonconvergence_exit_3(capsys):
    code, _, err = run(capsys, "cap", "--domain", "builtin:lens-0.8-0.3", "--n", "128",
                       "--solver", "gmres", "--gmres-tol", "1e-30")
    assert code == EXIT_SOLVER and "GMRES" in err


def test_sweep_single_row(capsys):
    code, out, _ = run(capsys, "sweep", "--domain", "builtin:annulus-0.7", "--n-list", "64")
    (row,) = rows(out)
    assert code == EXIT_OK and row["slope"] == "" and row["error"] == ""


def test_sweep_with_reference(capsys):
    code, out, _ = run(capsys, "sweep", "--domain", "builtin:lens-0.8-0.3", "--n-list", "128,256,512",
                       "--reference", "10.15585205509004")
    table = rows(out)
    errs = [float(r["error"]) for r in table]
    assert code == EXIT_OK and errs == sorted(errs, reverse=True)
    assert table[-1]["slope"] and float(table[-1]["slope"]) <= -2 and table[0]["slope"] == ""


def test_mobius_zero_only(capsys):
    code, out, _ = run(capsys, "mobius", "--domain", "builtin:mobius-E", "--a-list", "0", "--n", "128")
    (row,) = rows(out)
    assert code == EXIT_OK and float(row["deviation"]) == 0.0


def test_mobius_bad_parameter(capsys):
    code, out, err = run(capsys, "mobius", "--domain", "builtin:mobius-E", "--a-list", "0;1.2", "--n", "64")
    assert code == EXIT_INPUT and out == "" and "|a| < 1" in err


def test_bounds_rows(capsys):
    code, out, _ = run(capsys, "bounds", "--r", "0.8", "--s-grid", "0.4,0.8", "--n", "256")
    table = rows(out)
    assert code == EXIT_OK and [float(r["s"]) for r in table] == [0.4, 0.8]
    for r in table:
        assert float(r["lower"]) <= float(r["capacity"]) <= float(r["upper"]) + 1e-9
    assert abs(float(table[-1]["capacity"]) - 28.157593038985901) < 1e-8


@pytest.mark.parametrize(
    "what, param, value",
    [("annulus", "0.7", 17.615998583457760), ("annulus", "0.8", 28.157593038985901),
     ("segment", "0.8", 7.360222723821019), ("disk", "0.8", 28.157593038985901)],
)
def test_exact(capsys, what, param, value):
    code, out, _ = run(capsys, "exact", "--what", what, "--param", param)
    assert code == EXIT_OK and abs(float(out) - value) < 1e-12


def test_exact_domain_error(capsys):
    code, out, err = run(capsys, "exact", "--what", "annulus", "--param", "1.5")
    assert code == EXIT_INPUT and out == "" and err


def test_usage_error_exit_2(capsys):
    assert main(["cap", "--n", "64"]) == EXIT_INPUT


def test_threads_env(capsys, monkeypatch):
    monkeypatch.setenv("POLYCAP_THREADS", "1")
    code, out, _ = run(capsys, "exact", "--what", "grotzsch", "--param", "0.7071067811865476")
    assert code == EXIT_OK and abs(float(out) - 1.5707963267948966) < 1e-14
    monkeypatch.setenv("POLYCAP_THREADS", "many")
    assert main(["exact", "--what", "annulus", "--param", "0.5"]) == EXIT_INPUT


def test_subprocess_streams_and_exit_codes():
    ok = subprocess.run([sys.executable, "-m", "polycap", "cap", "--domain", "builtin:annulus-0.7", "--n", "128",
                         "--threads", "1"], capture_output=True, text=True)
    assert ok.returncode == 0 and ok.stderr == ""
    assert ok.stdout.splitlines()[0].startswith("capacity,")
    bad = subprocess.run([sys.executable, "-m", "polycap", "cap", "--domain", "builtin:nope", "--n", "64"],
                         capture_output=True, text=True)
    assert bad.returncode == 2 and bad.stdout == "" and "unknown builtin" in bad.stderr
