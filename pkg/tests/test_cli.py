import hashlib
import json
import subprocess
import sys
from fractions import Fraction

import numpy as np
import pytest

from pnkinetic import cli
from pnkinetic.bigfloat import DOUBLE
from pnkinetic.moment_system import read_state
from pnkinetic.propagator import PropagationError
from pnkinetic.solver import Study


def run(tmp_path, *args):
    return cli.main(list(args) + ["--outdir", str(tmp_path)])


def manifest(tmp_path):
    with open(tmp_path / "manifest.jsonl") as fh:
        return [json.loads(line) for line in fh]


def test_solve_at_zero_time_is_projected_initial_data(tmp_path):
    out = tmp_path / "s.csv"
    assert run(tmp_path, "solve", "--ic", "g2", "--N", "3", "--eps", "1/8", "--t", "0",
               "--modes", "16", "--out", str(out)) == 0
    got = read_state(out)
    expected = Study("g2", DOUBLE, modes=16).initial_state(3)
    assert np.array_equal(got.coeffs, expected.coeffs)


def test_manifest_records_digest(tmp_path):
    assert run(tmp_path, "solve", "--ic", "g3", "--N", "2", "--eps", "1/8", "--t", "1", "--modes", "8") == 0
    rec = manifest(tmp_path)[-1]
    assert rec["precision"] == "double"
    assert rec["config"]["eps"] == "1/8" and rec["config"]["modes"] == 8
    (name, digest), = rec["outputs"].items()
    assert hashlib.sha256((tmp_path / name).read_bytes()).hexdigest() == digest


def test_outputs_are_deterministic(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for d in (a, b):
        assert run(d, "table", "total", "--ic", "g3", "--Nmax", "2", "--modes", "16",
                   "--precision", "96") == 0
    for name in ("csv", "md", "raw.csv"):
        fa = next(a.glob(f"table_total_*.{name}"))
        fb = b / fa.name
        assert fa.read_bytes() == fb.read_bytes()
    assert manifest(a)[0]["outputs"] == manifest(b)[0]["outputs"]


def test_table_moment_and_coefficient(tmp_path):
    for kind, cols in (("moment", "xi0"), ("coefficient", "f0")):
        assert run(tmp_path, "table", kind, "--ic", "g3", "--N", "2", "--modes", "8") == 0
        text = next(tmp_path.glob(f"table_{kind}_*.csv")).read_text()
        assert f"column={cols}" in text


def test_an_ratio_columns(tmp_path):
    out = tmp_path / "an.csv"
    assert run(tmp_path, "figure", "an-ratio", "--s", "80/45", "--nmax", "5", "--out", str(out)) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "n,ratio,reference" and len(lines) == 6
    n, ratio, reference = lines[1].split(",")
    assert n == "1" and float(reference) == pytest.approx(2 * 45 / 80)
    assert float(ratio) > 0


def test_ratio_single_row(tmp_path):
    out = tmp_path / "r.csv"
    assert run(tmp_path, "figure", "ratio", "--ic", "g3", "--t", "1", "--eps", "1/2",
               "--Nmax", "1", "--modes", "16", "--out", str(out)) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "N,value,flag" and len(lines) == 2
    assert lines[1].startswith("1,") and float(lines[1].split(",")[1]) > 0


def test_bounds_flags_rough_data(tmp_path):
    out = tmp_path / "b.csv"
    assert run(tmp_path, "bounds", "--ic", "g1", "--N", "2", "--eps", "1/8", "--t", "1",
               "--out", str(out)) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "quantity,computed,bound,margin,pass"
    assert lines[1].startswith("total[hypothesis_unmet],")
    assert all(line.endswith(",true") for line in lines[1:])


@pytest.mark.parametrize("args", [
    ["table", "total", "--ic", "g3", "--Nmax", "0"],
    ["table", "total", "--ic", "g3", "--Nmax", "65"],
    ["table", "moment", "--ic", "g3"],
    ["solve", "--ic", "g3", "--N", "0", "--eps", "1/8", "--t", "1"],
    ["solve", "--ic", "g3", "--N", "2", "--eps", "2", "--t", "1"],
    ["solve", "--ic", "g9", "--N", "2", "--eps", "1/8", "--t", "1"],
    ["figure", "an-ratio"],
    ["bounds", "--ic", "g3", "--N", "2", "--eps", "1/8", "--t", "0"],
])
def test_usage_errors_exit_2(tmp_path, args):
    assert run(tmp_path, *args) == 2


@pytest.mark.parametrize("args", [
    ["solve", "--ic", "g3"],
    ["solve", "--ic", "g3", "--N", "2", "--eps", "abc", "--t", "1"],
    ["solve", "--ic", "g3", "--N", "2", "--eps", "1/8", "--t", "1", "--precision", "8"],
])
def test_parser_errors_exit_2(tmp_path, args):
    with pytest.raises(SystemExit) as exc:
        run(tmp_path, *args)
    assert exc.value.code == 2


def test_numerical_failure_exits_3(tmp_path, monkeypatch):
    def fail(self, *a, **kw):
        raise PropagationError("overflow in scaling-and-squaring")
    monkeypatch.setattr(Study, "solve", fail)
    assert run(tmp_path, "solve", "--ic", "g3", "--N", "2", "--eps", "1/8", "--t", "1") == 3
    assert not (tmp_path / "manifest.jsonl").exists()


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "pnkinetic", "solve", "--ic", "g3", "--N", "1",
                           "--eps", "1/2", "--t", "1", "--modes", "4", "--outdir", str(tmp_path)],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.strip().endswith("state_g3_N1_eps1_2_t1.csv")
    assert Fraction(manifest(tmp_path)[0]["config"]["t"]) == 1
