"""Command-line interface: happy paths, file layout, exit codes."""

import json
import shutil
import subprocess

import pytest

from fleetcharge.cli import main
from fleetcharge.model import scenario_to_json

from conftest import make_params, make_scenario, make_station, make_truck

RUN_FILES = (
    "metrics.json",
    "trips.csv",
    "stations.csv",
    "transcript.jsonl",
    "ledgers.json",
)


@pytest.fixture
def scenario_file(tmp_path):
    tpl = tmp_path / "template.json"
    tpl.write_text(
        json.dumps(
            {
                "label": "cli-test",
                "truck_count": 6,
                "station_count": 2,
                "port_count_range": [1, 1],
                "stations_per_route_range": [1, 2],
                "segment_time_range": [20.0, 40.0],
                "depart_window": [480.0, 510.0],
                "e_initial_range": [220.0, 320.0],
            }
        )
    )
    out = tmp_path / "scenario.json"
    assert main(["generate", "--template", str(tpl), "--seed", "0", "--out", str(out)]) == 0
    return out


def test_generate_then_run_both(tmp_path, scenario_file, capsys):
    run_dir = tmp_path / "run"
    code = main(
        ["run", "--scenario", str(scenario_file), "--strategy", "both", "--out", str(run_dir)]
    )
    assert code == 0
    for strategy in ("offline", "proposed"):
        for name in RUN_FILES:
            assert (run_dir / strategy / name).is_file()
    assert (run_dir / "compare.csv").is_file()
    out = capsys.readouterr().out
    assert "wait reduction" in out
    # the baseline writes an empty transcript, the live protocol a full one
    assert (run_dir / "offline" / "transcript.jsonl").read_text() == ""
    assert (run_dir / "proposed" / "transcript.jsonl").read_text() != ""


def test_both_matches_separate_single_strategy_runs(tmp_path, scenario_file):
    both = tmp_path / "both"
    assert main(["run", "--scenario", str(scenario_file), "--out", str(both)]) == 0
    for strategy in ("offline", "proposed"):
        single = tmp_path / f"only-{strategy}"
        assert (
            main(
                [
                    "run",
                    "--scenario",
                    str(scenario_file),
                    "--strategy",
                    strategy,
                    "--out",
                    str(single),
                ]
            )
            == 0
        )
        for name in RUN_FILES:
            a = (both / strategy / name).read_bytes()
            b = (single / strategy / name).read_bytes()
            assert a == b, f"{strategy}/{name} differs between both and single runs"


def test_single_strategy_run_writes_no_comparison(tmp_path, scenario_file):
    run_dir = tmp_path / "run"
    code = main(
        ["run", "--scenario", str(scenario_file), "--strategy", "proposed", "--out", str(run_dir)]
    )
    assert code == 0
    assert not (run_dir / "compare.csv").exists()
    assert not (run_dir / "offline").exists()


def test_usage_errors_exit_one(tmp_path, capsys):
    assert main([]) == 1
    assert main(["frobnicate"]) == 1
    assert main(["run", "--out", str(tmp_path)]) == 1  # missing --scenario
    assert (
        main(["run", "--scenario", str(tmp_path / "absent.json"), "--out", str(tmp_path / "r")])
        == 1
    )
    assert main(["generate", "--template", str(tmp_path / "absent.json")]) == 1
    capsys.readouterr()


def test_bad_override_syntax_exits_one(tmp_path, scenario_file):
    args = ["run", "--scenario", str(scenario_file), "--out", str(tmp_path / "r")]
    assert main(args + ["--set", "nonsense"]) == 1
    assert main(args + ["--set", "e_safe=abc"]) == 1
    assert main(args + ["--set", "mystery_knob=3"]) == 1


def test_invalid_scenario_exits_two(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["run", "--scenario", str(bad), "--out", str(tmp_path / "r")]) == 2

    # well-formed JSON that fails validation: a route through a missing station
    truck = make_truck(station_ids=("ghost",), e_initial=230.0)
    sc = make_scenario(trucks=(truck,), label="broken")
    invalid = tmp_path / "invalid.json"
    invalid.write_text(scenario_to_json(sc))
    assert main(["run", "--scenario", str(invalid), "--out", str(tmp_path / "r2")]) == 2
    assert "scenario invalid" in capsys.readouterr().err


def test_stranded_fleet_still_exits_zero(tmp_path):
    truck = make_truck(
        station_ids=("s01", "s02"),
        segment_times=(5.0, 60.0, 60.0),
        detour_times=(1.0, 1.0),
        e_initial=190.0,
        params=make_params(e_full=200.0),
    )
    sc = make_scenario(
        stations=(make_station("s01"), make_station("s02")),
        trucks=(truck,),
        label="doomed",
    )
    path = tmp_path / "doomed.json"
    path.write_text(scenario_to_json(sc))
    run_dir = tmp_path / "run"
    assert main(["run", "--scenario", str(path), "--out", str(run_dir)]) == 0
    doc = json.loads((run_dir / "proposed" / "metrics.json").read_text())
    assert doc["totals"]["stranded"] == 1


def test_run_overrides_apply(tmp_path, scenario_file):
    run_dir = tmp_path / "run"
    code = main(
        [
            "run",
            "--scenario",
            str(scenario_file),
            "--strategy",
            "proposed",
            "--out",
            str(run_dir),
            "--set",
            "port_count=2",
        ]
    )
    assert code == 0
    ledgers = json.loads((run_dir / "proposed" / "ledgers.json").read_text())
    assert ledgers
    for doc in ledgers.values():
        assert doc["port_count"] == 2


def test_generate_template_sets_override_file(tmp_path, scenario_file):
    out = tmp_path / "small.json"
    tpl = tmp_path / "template.json"  # written by the fixture
    code = main(
        [
            "generate",
            "--template",
            str(tpl),
            "--seed",
            "1",
            "--out",
            str(out),
            "--set",
            "truck_count=3",
        ]
    )
    assert code == 0
    assert len(json.loads(out.read_text())["trucks"]) == 3


def test_compare_subcommand(tmp_path, scenario_file, capsys):
    run_dir = tmp_path / "run"
    assert main(["run", "--scenario", str(scenario_file), "--out", str(run_dir)]) == 0
    out_csv = tmp_path / "cmp.csv"
    code = main(
        ["compare", str(run_dir / "offline"), str(run_dir / "proposed"), "--out", str(out_csv)]
    )
    assert code == 0
    assert out_csv.read_bytes() == (run_dir / "compare.csv").read_bytes()
    assert "wait reduction" in capsys.readouterr().out


def test_compare_rejects_different_scenarios(tmp_path, scenario_file, capsys):
    run_a = tmp_path / "a"
    assert main(["run", "--scenario", str(scenario_file), "--out", str(run_a)]) == 0
    other = tmp_path / "other.json"
    other.write_text(scenario_to_json(make_scenario(label="other", trucks=(make_truck(e_initial=230.0),))))
    run_b = tmp_path / "b"
    assert main(["run", "--scenario", str(other), "--out", str(run_b)]) == 0
    code = main(["compare", str(run_a / "offline"), str(run_b / "proposed")])
    assert code == 2
    capsys.readouterr()


def test_report_subcommand(tmp_path, scenario_file, capsys):
    run_dir = tmp_path / "run"
    assert main(["run", "--scenario", str(scenario_file), "--out", str(run_dir)]) == 0
    assert main(["report", str(run_dir / "proposed")]) == 0
    for name in (
        "waiting_by_truck.csv",
        "station_totals.csv",
        "residual_battery.csv",
        "port_schedule.csv",
    ):
        assert (run_dir / "proposed" / name).is_file()
    assert capsys.readouterr().out.count("wrote") == 4
    assert main(["report", str(tmp_path / "not-a-run")]) == 1


def test_report_omits_trucks_that_never_waited(tmp_path, capsys):
    truck = make_truck(e_initial=230.0)  # alone at a three-port station
    sc = make_scenario(trucks=(truck,), label="solo")
    path = tmp_path / "solo.json"
    path.write_text(scenario_to_json(sc))
    run_dir = tmp_path / "run"
    assert main(["run", "--scenario", str(path), "--strategy", "proposed", "--out", str(run_dir)]) == 0
    assert main(["report", str(run_dir / "proposed")]) == 0
    lines = (run_dir / "proposed" / "waiting_by_truck.csv").read_text().splitlines()
    assert lines == ["truck,total_wait"]
    capsys.readouterr()


def _plan_payload() -> dict:
    return {
        "params": {
            "p_max": 375.0,
            "p_bar": 1.83,
            "e_full": 624.0,
            "e_safe": 156.0,
            "kappa": 0.4,
            "rho": 10.0,
        },
        "stations": [
            {
                "id": "s01",
                "port_count": 3,
                "port_power": 300.0,
                "electricity_price_energy": 0.36,
            }
        ],
        "segment_times": [60.0],
        "detour_times": [5.0],
        "battery": 230.0,
        "remaining_time": 250.0,
    }


def test_plan_subcommand(tmp_path, capsys):
    src = tmp_path / "input.json"
    src.write_text(json.dumps(_plan_payload()))
    dst = tmp_path / "plan.json"
    assert main(["plan", "--input", str(src), "--out", str(dst)]) == 0
    doc = json.loads(dst.read_text())
    assert doc["status"] == "optimal"
    assert doc["decisions"][0]["charge"] is True
    assert doc["decisions"][0]["duration"] > 0
    # without --out the solution goes to stdout
    assert main(["plan", "--input", str(src)]) == 0
    captured = capsys.readouterr().out
    assert '"status": "optimal"' in captured


def test_plan_rejects_bad_input(tmp_path, capsys):
    missing = _plan_payload()
    del missing["battery"]
    src = tmp_path / "input.json"
    src.write_text(json.dumps(missing))
    assert main(["plan", "--input", str(src)]) == 2
    assert "battery" in capsys.readouterr().err
    src.write_text("[1, 2")
    assert main(["plan", "--input", str(src)]) == 2
    capsys.readouterr()


def test_console_script_is_installed():
    exe = shutil.which("fleetcharge")
    if exe is None:
        pytest.skip("console script not on PATH")
    proc = subprocess.run([exe, "--help"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "generate" in proc.stdout and "plan" in proc.stdout
