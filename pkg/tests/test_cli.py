import json
from pathlib import Path

import pytest

from convexcomb.cli import main
from convexcomb.instance import InstanceError, dump_instance, load_instance, parse_instance

INSTANCES = Path(__file__).resolve().parent.parent / "instances"
SOLVABLE = sorted(INSTANCES.glob("*.json"))


def write(tmp_path, data, name="inst.json"):
    path = tmp_path / name
    path.write_text(json.dumps(data) if not isinstance(data, str) else data)
    return str(path)


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_solve_clustering(capsys):
    code, out, _ = run(capsys, "solve", INSTANCES / "clustering.json", "--json")
    report = json.loads(out)
    assert code == 0
    assert report["value"] == "82" and report["partition"] == [1, 1, 2, 2]
    assert report["k"] == len(report["candidates"]) == report["oracle_queries"]


def test_solve_text_summary(capsys):
    code, out, _ = run(capsys, "solve", INSTANCES / "clustering.json")
    assert code == 0 and "value: 82" in out and "partition: [1,1,2,2]" in out


def test_linear_shortcut_agrees(capsys, tmp_path):
    path = INSTANCES / "powerset_linear.json"
    _, full, _ = run(capsys, "solve", path, "--json")
    _, short, _ = run(capsys, "solve", path, "--json", "--linear")
    assert json.loads(full)["value"] == json.loads(short)["value"]
    assert json.loads(full)["optimum"] == json.loads(short)["optimum"]
    code, _, err = run(capsys, "solve", INSTANCES / "psd_qap.json", "--linear")
    assert code == 2


def test_brute_solve_and_output_file(capsys, tmp_path):
    out_file = tmp_path / "r.json"
    code, _, _ = run(capsys, "solve", INSTANCES / "graphic_matroid.json", "-o", out_file)
    assert code == 0 and json.loads(out_file.read_text())["value"] == "53/2"
    code, out, _ = run(capsys, "solve", INSTANCES / "graphic_matroid.json", "--brute", "--json")
    assert json.loads(out)["value"] == "53/2"


def test_decimal_rational_is_a_parse_error(capsys, tmp_path):
    path = write(tmp_path, {"version": 1, "family": {"type": "powerset", "n": 1},
                            "weighting": [["0.5"]], "objective": {"type": "squared_l2"}})
    code, _, err = run(capsys, "solve", path)
    assert code == 2 and "1/2" in err and "$.weighting" in err


@pytest.mark.parametrize(
    "data",
    [
        "{not json",
        {"version": 1, "family": {"type": "powerset", "n": 2}, "objective": {"type": "squared_l2"}},
        {"version": 1, "family": {"type": "nope"}, "objective": {"type": "squared_l2"}},
        {"version": 1, "family": {"type": "powerset", "n": 1}, "weighting": [[0.5]],
         "objective": {"type": "squared_l2"}},
        {"version": 9, "family": {"type": "powerset", "n": 1}, "weighting": [["1"]],
         "objective": {"type": "squared_l2"}},
    ],
)
def test_parse_errors(capsys, tmp_path, data):
    code, _, err = run(capsys, "solve", write(tmp_path, data))
    assert code == 2 and err.startswith("parse error")


def test_missing_file(capsys, tmp_path):
    code, _, _ = run(capsys, "solve", tmp_path / "absent.json")
    assert code == 2


def test_infeasible_exit_code(capsys, tmp_path):
    path = write(tmp_path, {"version": 1, "family": {"type": "shaped_partition", "points": [["1"], ["2"]],
                                                     "p": 2, "lower": [2, 2], "upper": [2, 2]},
                            "objective": {"type": "squared_l2"}})
    code, _, err = run(capsys, "solve", path)
    assert code == 3 and "infeasible" in err


def test_check_over_budget(capsys, tmp_path):
    path = write(tmp_path, {"version": 1, "family": {"type": "powerset", "n": 30},
                            "weighting": [["1"]] * 30, "objective": {"type": "squared_l2"}})
    code, _, err = run(capsys, "check", path)
    assert code == 4


def test_check_budget_flag(capsys):
    code, _, _ = run(capsys, "check", INSTANCES / "psd_qap.json", "--budget", "8")
    assert code == 4


@pytest.mark.parametrize("path", SOLVABLE, ids=lambda p: p.stem)
def test_check_shipped_instances(capsys, path):
    code, out, _ = run(capsys, "check", path)
    assert code == 0 and out.startswith("MATCH value=")


def test_check_clustering_message(capsys):
    _, out, _ = run(capsys, "check", INSTANCES / "clustering.json")
    assert out.strip() == "MATCH value=82"


def test_corrupted_oracle_mismatch(capsys):
    code, out, _ = run(capsys, "check", INSTANCES / "psd_qap.json", "--corrupt-oracle")
    assert code == 1 and out.startswith("MISMATCH")
    code, out, _ = run(capsys, "check", INSTANCES / "psd_qap.json", "--corrupt-oracle", "--json")
    report = json.loads(out)
    assert not report["match"] and report["witness_value"] == report["brute_value"]


def test_unrestricted_flag(capsys):
    _, out, _ = run(capsys, "solve", INSTANCES / "shaped_partition.json", "--json", "--unrestricted")
    free = json.loads(out)
    _, out, _ = run(capsys, "solve", INSTANCES / "shaped_partition.json", "--json")
    shaped = json.loads(out)
    assert free["k"] < shaped["k"]
    code, out, _ = run(capsys, "check", INSTANCES / "shaped_partition.json", "--unrestricted")
    assert code == 0


def test_jobs_flag_gives_same_report(capsys):
    _, a, _ = run(capsys, "solve", INSTANCES / "partition_plane.json", "--json")
    _, b, _ = run(capsys, "solve", INSTANCES / "partition_plane.json", "--json", "--jobs", "3")
    assert a == b


def test_zonotope_command(capsys):
    code, out, _ = run(capsys, "zonotope", "--gen", "1,0", "--gen", "0,1", "--gen", "1,1", "--json")
    arr = json.loads(out)
    assert code == 0 and arr["count"] == 6
    _, out, _ = run(capsys, "zonotope", INSTANCES / "generators" / "hexagon.json", "--brute", "--json")
    brute = json.loads(out)
    assert sorted(v["point"] for v in brute["vertices"]) == sorted(v["point"] for v in arr["vertices"])
    _, out, _ = run(capsys, "zonotope", "--gen", "3/2,-1")
    assert out.startswith("2 vertices")


def test_zonotope_errors(capsys):
    assert run(capsys, "zonotope", "--gen", "0,0")[0] == 2
    assert run(capsys, "zonotope", "--gen", "0.5,1")[0] == 2
    assert run(capsys, "zonotope")[0] == 2


def test_bench(capsys):
    code, out, _ = run(capsys, "bench", INSTANCES / "clustering.json", "--repeat", "1", "--json")
    assert code == 0 and json.loads(out)[0]["value"] == "82"


@pytest.mark.parametrize("path", SOLVABLE, ids=lambda p: p.stem)
def test_round_trip(path):
    inst = load_instance(str(path))
    dumped = dump_instance(inst)
    again = parse_instance(json.loads(json.dumps(dumped)))
    assert again == inst
    assert dump_instance(again) == dumped


def test_instance_error_location():
    with pytest.raises(InstanceError) as exc:
        parse_instance({"version": 1, "family": {"type": "powerset", "n": 2},
                        "weighting": [["1"], ["2"], ["3"]], "objective": {"type": "squared_l2"}})
    assert exc.value.location == "$.weighting"
