import json
import math
import shutil
import subprocess

import pytest

from fockmult.cli import main

Z3 = '{"kind":"cyclic","n":3}'
ZP = '{"kind":"zplus"}'
FREE2 = '{"kind":"free","rank":2}'
UNIT_ZP = '[{"elem":{"int":0},"re":1}]'
ONE_PLUS_Z = '[{"elem":{"int":0},"re":1},{"elem":{"int":1},"re":1}]'
GENS_FREE2 = '[{"elem":{"word":[1]},"re":1},{"elem":{"word":[2]},"re":1}]'


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    return code, json.loads(out)


# -- norm ------------------------------------------------------------------------


def test_norm_of_two_generators(capsys):
    code, rep = run_json(capsys, "norm", "--spec", FREE2,
                         "--symbol", GENS_FREE2, "--level", "3")
    assert code == 0
    assert rep["verdict"] == "converged"
    assert rep["results"]["value"] == pytest.approx(math.sqrt(2), abs=1e-12)
    assert rep["results"]["converged"] is True


def test_norm_of_unit_is_one(capsys):
    code, rep = run_json(capsys, "norm", "--spec", ZP, "--symbol", UNIT_ZP)
    assert code == 0
    assert rep["results"]["value"] == 1.0
    assert rep["config"]["level"] == 0  # defaults to the symbol degree


def test_report_shape(capsys):
    code, rep = run_json(capsys, "norm", "--spec", ZP, "--symbol", UNIT_ZP)
    assert code == 0
    assert sorted(rep) == ["config", "results", "runtime_ms", "verdict"]
    assert rep["config"]["command"] == "norm"
    assert rep["config"]["seed"] == 0
    assert rep["config"]["backend"] in ("cython", "python")


def test_norm_is_deterministic_up_to_runtime(capsys):
    argv = ("norm", "--spec", FREE2, "--symbol", GENS_FREE2, "--level", "2")
    _, a = run_json(capsys, *argv)
    _, b = run_json(capsys, *argv)
    a.pop("runtime_ms"), b.pop("runtime_ms")
    assert a == b


def test_norm_rejects_csv(capsys):
    code, _, err = run(capsys, "norm", "--spec", ZP, "--symbol", UNIT_ZP,
                       "--format", "csv")
    assert code == 1
    assert "csv" in err


def test_norm_capacity_exceeded(capsys):
    code, _, err = run(capsys, "norm", "--spec", FREE2,
                       "--symbol", '[{"elem":{"word":[1]},"re":1}]',
                       "--level", "18")
    assert code == 1
    assert "error" in err


# -- argument handling -------------------------------------------------------------


def test_malformed_symbol(capsys):
    code, _, err = run(capsys, "norm", "--spec", ZP, "--symbol", "not json")
    assert code == 1
    assert "error" in err


def test_malformed_spec(capsys):
    code, _, err = run(capsys, "norm", "--spec", '{"kind":"nope"}',
                       "--symbol", UNIT_ZP)
    assert code == 1


def test_unknown_flag(capsys):
    assert run(capsys, "norm", "--spec", ZP, "--symbol", UNIT_ZP,
               "--bogus")[0] == 1


def test_missing_subcommand(capsys):
    assert run(capsys)[0] == 1


def test_unknown_check_name(capsys):
    assert run(capsys, "verify", "nope", "--spec", Z3)[0] == 1


def test_help_exits_zero(capsys):
    code, out, _ = run(capsys, "--help")
    assert code == 0
    assert "usage" in out


def test_symbol_from_file(capsys, tmp_path):
    path = tmp_path / "phi.json"
    path.write_text(UNIT_ZP, encoding="utf-8")
    code, rep = run_json(capsys, "norm", "--spec", ZP, "--symbol", f"@{path}")
    assert code == 0
    assert rep["results"]["value"] == 1.0


def test_symbol_file_missing(capsys, tmp_path):
    code, _, err = run(capsys, "norm", "--spec", ZP,
                       "--symbol", f"@{tmp_path}/absent.json")
    assert code == 1


def test_out_writes_file(capsys, tmp_path):
    path = tmp_path / "report.json"
    code, out, _ = run(capsys, "norm", "--spec", ZP, "--symbol", UNIT_ZP,
                       "--out", str(path))
    assert code == 0
    assert out == ""
    rep = json.loads(path.read_text(encoding="utf-8"))
    assert rep["verdict"] == "converged"


# -- sweep -----------------------------------------------------------------------


def test_sweep_requires_levels(capsys):
    code, _, err = run(capsys, "sweep", "--spec", ZP, "--symbol", UNIT_ZP)
    assert code == 1
    assert "--levels" in err


def test_sweep_unit_converges(capsys):
    code, rep = run_json(capsys, "sweep", "--spec", ZP, "--symbol", UNIT_ZP,
                         "--levels", "0,1")
    assert code == 0
    assert rep["results"]["norms"] == [1.0, 1.0]
    assert "lower bounds" in rep["results"]["note"]


def test_sweep_csv_frozen(capsys):
    code, out, _ = run(capsys, "sweep", "--spec", ZP, "--symbol", UNIT_ZP,
                       "--levels", "0,1", "--format", "csv")
    assert code == 0
    assert out == "level,norm\n0,1\n1,1\n"


def test_sweep_not_converged_exits_two(capsys):
    code, rep = run_json(capsys, "sweep", "--spec", ZP, "--symbol", ONE_PLUS_Z,
                         "--levels", "1,2", "--tol", "1e-6")
    assert code == 2
    assert rep["verdict"] == "non-converged"


def test_sweep_bad_level_list(capsys):
    assert run(capsys, "sweep", "--spec", ZP, "--symbol", UNIT_ZP,
               "--levels", "2,1")[0] == 1
    assert run(capsys, "sweep", "--spec", ZP, "--symbol", UNIT_ZP,
               "--levels", "a,b")[0] == 1


# -- verify ----------------------------------------------------------------------


@pytest.mark.parametrize("check,spec", [
    ("cstar", Z3),
    ("flip", FREE2),
    ("intertwine", ZP),
    ("ruan", Z3),
    ("ustar", '{"kind":"cyclic","n":4}'),
    ("abelian", Z3),
])
def test_verify_checks_pass(capsys, check, spec):
    code, rep = run_json(capsys, "verify", check, "--spec", spec,
                         "--trials", "3")
    assert code == 0, rep
    assert rep["verdict"] == "pass"
    assert "tol" in rep["results"]


@pytest.mark.parametrize("check,spec", [
    ("cstar", ZP),          # needs a finite group
    ("flip", Z3),           # needs a free monoid
    ("ustar", FREE2),       # needs a group
    ("abelian", FREE2),     # needs an abelian monoid
])
def test_verify_incompatible_spec(capsys, check, spec):
    code, _, err = run(capsys, "verify", check, "--spec", spec, "--trials", "2")
    assert code == 1
    assert "error" in err


# -- identify --------------------------------------------------------------------


def test_identify_circulant_pass(capsys):
    code, rep = run_json(capsys, "identify", "circulant", "--spec", Z3,
                         "--symbol", '[{"elem":{"int":1},"re":1}]')
    assert code == 0
    assert rep["verdict"] == "pass"
    assert rep["results"]["round_trip_exact"] is True
    assert rep["results"]["matrix"] == [
        [[0.0, 0.0], [0.0, 0.0], [1.0, 0.0]],
        [[1.0, 0.0], [0.0, 0.0], [0.0, 0.0]],
        [[0.0, 0.0], [1.0, 0.0], [0.0, 0.0]],
    ]


def test_identify_circulant_needs_cyclic(capsys):
    assert run(capsys, "identify", "circulant", "--spec", ZP,
               "--symbol", UNIT_ZP)[0] == 1


def test_identify_hardy_pass(capsys):
    code, rep = run_json(capsys, "identify", "hardy", "--spec", ZP,
                         "--symbol", ONE_PLUS_Z, "--levels", "16,64",
                         "--grid", "4096", "--tol", "1e-2")
    assert code == 0
    assert rep["results"]["grid_value"] == pytest.approx(2.0, abs=1e-12)
    assert rep["results"]["gap"] <= 1e-2


def test_identify_hardy_gap_too_wide_exits_three(capsys):
    code, rep = run_json(capsys, "identify", "hardy", "--spec", ZP,
                         "--symbol", ONE_PLUS_Z, "--levels", "4,8",
                         "--grid", "4096", "--tol", "1e-9")
    assert code == 3
    assert rep["verdict"] == "fail"
    assert rep["results"]["gap"] > 1e-9


def test_identify_hardy_needs_hardy_space(capsys):
    assert run(capsys, "identify", "hardy", "--spec", FREE2,
               "--symbol", GENS_FREE2)[0] == 1


def test_identify_popescu_two_generators(capsys):
    code, rep = run_json(capsys, "identify", "popescu", "--spec", FREE2,
                         "--symbol", GENS_FREE2, "--levels", "1,2,3")
    assert code == 0
    assert rep["verdict"] == "pass"
    for v in rep["results"]["values"]:
        assert v == pytest.approx(math.sqrt(2), abs=1e-12)


def test_identify_popescu_csv(capsys):
    code, out, _ = run(capsys, "identify", "popescu", "--spec", FREE2,
                       "--symbol", '[{"elem":{"word":[1]},"re":1}]',
                       "--levels", "1,2", "--format", "csv")
    assert code == 0
    assert out == "depth,value\n1,1\n2,1\n"


def test_identify_popescu_needs_free(capsys):
    assert run(capsys, "identify", "popescu", "--spec", Z3,
               "--symbol", '[{"elem":{"int":1},"re":1}]')[0] == 1


# -- console script ----------------------------------------------------------------


def test_console_script_wired():
    exe = shutil.which("fockmult")
    assert exe is not None
    proc = subprocess.run([exe, "--help"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "usage" in proc.stdout
