"""Command-line surface: dispatch, formats, exit codes, determinism."""

import json
import os
import subprocess
import sys

import pytest

CLI = [sys.executable, "-m", "wreathcount.cli"]


def _subprocess_run(argv, hashseed="0", env_extra=None):
    env = dict(os.environ, PYTHONHASHSEED=hashseed)
    if env_extra:
        env.update(env_extra)
    return subprocess.run(CLI + argv, capture_output=True, env=env)


def test_count_closed_form_json(run_cli):
    code, out, err = run_cli("count", "--group", "cyclic:3", "--k", "2",
                             "--output", "json")
    assert code == 0 and err == ""
    doc = json.loads(out)
    assert doc["method"] == "closed-form"
    assert doc["value"] == "8"
    assert doc["group"] == "cyclic:3"


def test_count_clifford_method(run_cli):
    code, out, _ = run_cli("count", "--group", "symmetric:3", "--k", "2",
                           "--method", "clifford", "--output", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["method"] == "clifford"
    assert doc["value"] == "10"
    assert doc["orbit_count"] == "4"


def test_count_method_all_asserts_agreement(run_cli):
    code, out, _ = run_cli("count", "--group", "cyclic:2", "--k", "2",
                           "--method", "all", "--output", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["method"] == "all:brute+clifford+closed-form"
    assert doc["value"] == "5"
    code, out, _ = run_cli("count", "--group", "gens:4,(1 2)(3 4),(1 3)(2 4)",
                           "--k", "2", "--method", "all", "--output", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["method"] == "all:brute+clifford"  # no closed form here
    assert doc["value"] == "16"


def test_count_csv_multiple_groups_in_input_order(run_cli):
    code, out, _ = run_cli("count", "--group", "cyclic:3", "--group",
                           "symmetric:3", "--k", "2", "--output", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "group,k,degree,method,value,orbit_count"
    assert lines[1].startswith("cyclic:3,2,3,closed-form,8")
    assert lines[2].startswith("symmetric:3,2,3,")
    code2, out2, _ = run_cli("count", "--group", "cyclic:3", "--group",
                             "symmetric:3", "--k", "2", "--output", "csv",
                             "--jobs", "2")
    assert code2 == 0 and out2 == out


def test_count_x_gens_sets_color_count(run_cli):
    # the base group only matters through its class count: C_3 gives k = 3
    code, out, _ = run_cli("count", "--group", "cyclic:2",
                           "--x-gens", "(1 2 3)", "--output", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["k"] == 3
    assert doc["value"] == "9"


def test_count_table_output(run_cli):
    code, out, _ = run_cli("count", "--group", "cyclic:3", "--k", "2")
    assert code == 0
    assert "closed-form" in out and "8" in out


def test_usage_errors_exit_one(run_cli):
    assert run_cli("count", "--group", "cyclic:3")[0] == 1
    assert run_cli("count", "--group", "cyclic:3", "--k", "2",
                   "--x-gens", "(1 2)")[0] == 1
    assert run_cli("count", "--group", "nosuch:3", "--k", "2")[0] == 1
    assert run_cli("nosuchcommand")[0] == 1
    assert run_cli("verify", "nosuchsuite")[0] == 1


def test_parse_error_reports_column(run_cli):
    code, _, err = run_cli("count", "--group", "gens:4,(1 2", "--k", "2")
    assert code == 1
    assert "column" in err


def test_budget_refusal_exits_two(run_cli):
    code, _, err = run_cli("count", "--group", "dihedral:40", "--k", "2")
    assert code == 2
    assert "bracket: 13743895348 <= value" in err
    code, _, err = run_cli("count", "--group", "cyclic:4", "--k", "2",
                           "--method", "clifford", "--budget-max-colorings", "8")
    assert code == 2
    assert "budget refusal" in err


def test_budget_env_variable(run_cli):
    res = _subprocess_run(["count", "--group", "symmetric:5", "--k", "2",
                           "--method", "brute"],
                          env_extra={"WREATHCOUNT_MAX_ORDER": "100"})
    assert res.returncode == 2


def test_classify_json(run_cli):
    code, out, _ = run_cli("classify", "--group", "wreath-cyclic:2",
                           "--output", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["transitive"] is True
    assert doc["primitive"] is False
    assert doc["semiprimitive"] is False
    assert doc["normal_subgroups"] == 6
    assert (doc["mu"], doc["base_size"], doc["max_sigma"]) == (2, 2, 3)


def test_classify_csv(run_cli):
    code, out, _ = run_cli("classify", "--group", "cyclic:3", "--output", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("group,degree,order,abelian,transitive")
    assert lines[1] == "cyclic:3,3,3,yes,yes,yes,yes,yes,2,3,1,1"


def test_bounds_csv_rows(run_cli):
    code, out, _ = run_cli("bounds", "--group", "symmetric:3", "--k", "2",
                           "--output", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "group,name,lhs,rhs,holds,mode,asymptotic"
    names = [line.split(",")[1] for line in lines[1:]]
    assert names == ["count-upper-bound", "min-degree-base-product",
                     "fixed-point-ratio", "cycle-count-half-bound",
                     "log-margin-condition", "no-transposition",
                     "small-order-condition", "nonregular-orbit-count",
                     "nonregular-union-size"]
    assert lines[1].split(",")[2:5] == ["10", "76/3", "true"]


def test_bounds_adds_large_base_rows_for_subset_family(run_cli):
    import csv
    import io

    code, out, _ = run_cli("bounds", "--group", "subsets:5,2", "--k", "2",
                           "--output", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert all(row[0] == "subsets:5,2" for row in rows[1:])
    names = {row[1] for row in rows[1:]}
    assert {"subset-orbit-bound", "product-orbit-identity",
            "large-base-count-bound"} <= names


def test_bounds_table_includes_semiprimitive_section(run_cli):
    code, out, _ = run_cli("bounds", "--group", "cyclic:4", "--k", "2")
    assert code == 0
    assert "semiprimitive" in out
    code, out, _ = run_cli("bounds", "--group", "symmetric:3", "--k", "2")
    assert code == 0
    assert "semiprimitive" not in out


def test_bounds_json_shape(run_cli):
    code, out, _ = run_cli("bounds", "--group", "cyclic:3", "--k", "2",
                           "--output", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["group"] == "cyclic:3"
    assert doc["k"] == 2
    first = doc["reports"][0]
    assert first["holds"] is True
    assert first["rhs"] == "44/3"
    assert first["inputs"]["e"] == "3"


@pytest.mark.parametrize("suite", ["oracles", "burnside", "formulas",
                                   "bounds", "semiprimitive"])
def test_verify_suites_pass(run_cli, suite):
    code, out, _ = run_cli("verify", suite)
    assert code == 0
    summary = out.strip().splitlines()[-1]
    assert summary.startswith(f"{suite}:")
    assert "FAIL" not in out
    total = summary.split()[-2].split("/")
    assert total[0] == total[1]


def test_scan_csv(run_cli):
    code, out, _ = run_cli("scan", "--m", "2,3", "--output", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "param,k,n,order,value,bound,holds,mode"
    assert lines[1] == "wreath-cyclic:2|5^m/m,2,4,8,20,25/2,true,exact"
    assert lines[3] == "wreath-cyclic:3|5^m/m,2,6,24,55,125/3,true,exact"
    assert lines[4] == "wreath-cyclic:3|k^n,2,6,24,55,64,false,exact"


def test_scan_probe(run_cli):
    code, out, _ = run_cli("scan", "--m", "4,5", "--probe-fixed-subsets")
    assert code == 0
    assert out == "m=4: clean\nm=5: clean\n"


def test_seed_flag_accepted(run_cli):
    code, _, _ = run_cli("verify", "formulas", "--seed", "7")
    assert code == 0


def test_output_determinism_across_processes():
    argv = ["count", "--group", "cyclic:3", "--group", "symmetric:4",
            "--group", "subsets:5,2", "--k", "2", "--output", "json"]
    first = _subprocess_run(argv, hashseed="0")
    second = _subprocess_run(argv, hashseed="12345")
    assert first.returncode == second.returncode == 0
    assert first.stdout == second.stdout
    argv = ["bounds", "--group", "symmetric:3", "--k", "3", "--output", "csv"]
    assert (_subprocess_run(argv, "1").stdout
            == _subprocess_run(argv, "99").stdout)
    argv = ["scan", "--m", "2,3", "--output", "csv"]
    assert (_subprocess_run(argv, "7").stdout
            == _subprocess_run(argv, "8").stdout)
