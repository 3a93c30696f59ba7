"""Data model: unit conversions, validation, canonical serialization."""

import json
from dataclasses import replace
from pathlib import Path

import pytest

from fleetcharge import defaults
from fleetcharge.model import (
    Route,
    Scenario,
    ScenarioFormatError,
    charging_rate,
    electricity_price_per_minute,
    scenario_from_json,
    scenario_to_json,
    validate_scenario,
)

from conftest import make_params, make_scenario, make_station, make_truck


def test_reserve_is_quarter_of_capacity():
    assert defaults.E_SAFE_KWH == 156.0
    assert defaults.E_FULL_KWH == 624.0
    assert defaults.E_SAFE_KWH == 0.25 * defaults.E_FULL_KWH


def test_charging_rate_is_capped_by_vehicle_limit(params):
    assert charging_rate(make_station(port_power=300.0), params) == 5.0
    # a port stronger than the vehicle limit charges at the vehicle limit
    assert charging_rate(make_station(port_power=600.0), params) == 375.0 / 60.0


def test_price_per_minute_follows_effective_rate(params):
    assert electricity_price_per_minute(make_station(port_power=300.0), params) == pytest.approx(
        1.8, abs=1e-12
    )
    assert electricity_price_per_minute(make_station(port_power=600.0), params) == pytest.approx(
        0.36 * 375.0 / 60.0, abs=1e-12
    )


def test_deadline_is_depart_plus_drive_plus_budget():
    truck = make_truck(segment_times=(30.0, 60.0), depart_time=480.0, budget=160.0)
    assert truck.deadline == 480.0 + 90.0 + 160.0


def test_valid_scenario_has_no_violations():
    assert validate_scenario(make_scenario()) == []


def test_validation_flags_duplicate_ids():
    sc = make_scenario(stations=(make_station("s01"), make_station("s01")))
    assert any("duplicate station id" in msg for msg in validate_scenario(sc))
    sc = make_scenario(trucks=(make_truck("t001"), make_truck("t001")))
    assert any("duplicate truck id" in msg for msg in validate_scenario(sc))


def test_validation_flags_bad_port_count():
    sc = make_scenario(stations=(make_station(port_count=0),))
    assert any("port_count" in msg for msg in validate_scenario(sc))


def test_validation_flags_route_shape_mismatch():
    truck = make_truck()
    bad = replace(
        truck,
        route=Route(
            ramp_count=1,
            segment_times=(30.0,),
            detour_times=(5.0,),
            station_ids=("s01",),
        ),
    )
    sc = make_scenario(trucks=(bad,))
    assert any("segment_times" in msg for msg in validate_scenario(sc))


def test_validation_flags_unknown_station_reference():
    sc = make_scenario(trucks=(make_truck(station_ids=("nope",)),))
    assert any("nope" in msg for msg in validate_scenario(sc))


def test_validation_flags_overfull_battery():
    sc = make_scenario(trucks=(make_truck(e_initial=700.0),))
    assert any("exceeds battery capacity" in msg for msg in validate_scenario(sc))


def test_validation_flags_battery_too_low_for_first_detour():
    # just below reserve plus the energy of the first detour leg
    sc = make_scenario(trucks=(make_truck(e_initial=156.0),))
    msgs = validate_scenario(sc)
    assert any("initial battery insufficient for first detour" in msg for msg in msgs)


def test_validation_is_pure():
    sc = make_scenario(trucks=(make_truck(e_initial=156.0),))
    assert validate_scenario(sc) == validate_scenario(sc)


def test_scenario_round_trips_byte_exactly():
    sc = make_scenario(
        stations=(make_station("s01"), make_station("s02", port_count=1)),
        trucks=(
            make_truck("t001"),
            make_truck(
                "t002",
                station_ids=("s01", "s02"),
                segment_times=(25.5, 40.1, 33.3),
                detour_times=(4.2, 7.9),
            ),
        ),
    )
    text = scenario_to_json(sc)
    again = scenario_to_json(scenario_from_json(text))
    assert text == again
    assert text.endswith("\n")


def test_parsing_preserves_integer_literals():
    sc = make_scenario()
    text = scenario_to_json(sc)
    doc = json.loads(text)
    assert isinstance(doc["stations"][0]["port_count"], int)
    parsed = scenario_from_json(text)
    assert isinstance(parsed.stations[0].port_count, int)


@pytest.mark.parametrize(
    "mutate, fragment",
    [
        (lambda d: d.pop("label"), "label"),
        (lambda d: d["stations"][0].pop("port_power"), "port_power"),
        (lambda d: d["stations"][0].update(port_count="three"), "port_count"),
        (lambda d: d["trucks"][0].update(e_initial="full"), "e_initial"),
        (lambda d: d["trucks"][0]["route"].update(ramp_count=1.5), "ramp_count"),
        (lambda d: d["trucks"][0]["params"].update(p_bar=True), "p_bar"),
    ],
)
def test_parser_rejects_malformed_documents(mutate, fragment):
    doc = json.loads(scenario_to_json(make_scenario()))
    mutate(doc)
    with pytest.raises(ScenarioFormatError, match=fragment):
        scenario_from_json(json.dumps(doc))


def test_parser_rejects_non_finite_numbers():
    doc = json.loads(scenario_to_json(make_scenario()))
    doc["trucks"][0]["e_initial"] = float("nan")
    with pytest.raises(ScenarioFormatError, match="e_initial"):
        scenario_from_json(json.dumps(doc))


def test_parser_rejects_invalid_json():
    with pytest.raises(ScenarioFormatError, match="invalid JSON"):
        scenario_from_json("{not json")
    with pytest.raises(ScenarioFormatError, match="object"):
        scenario_from_json("[1, 2]")


def test_scenario_matches_published_schema():
    jsonschema = pytest.importorskip("jsonschema")
    schema = json.loads(
        (Path(__file__).resolve().parent.parent / "schemas" / "scenario.schema.json").read_text()
    )
    doc = json.loads(scenario_to_json(make_scenario()))
    jsonschema.validate(doc, schema)


def test_schema_rejects_what_the_parser_rejects():
    jsonschema = pytest.importorskip("jsonschema")
    schema = json.loads(
        (Path(__file__).resolve().parent.parent / "schemas" / "scenario.schema.json").read_text()
    )
    doc = json.loads(scenario_to_json(make_scenario()))
    doc["stations"][0]["port_count"] = "three"
    with pytest.raises(jsonschema.ValidationError):
        jsonschema.validate(doc, schema)
