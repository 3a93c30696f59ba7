"""Shared builders for test scenarios and planner inputs."""

from __future__ import annotations

from dataclasses import replace

import pytest

from fleetcharge import defaults
from fleetcharge.model import Route, Scenario, StationSpec, TruckParams, TruckSpec
from fleetcharge.planner import PlannerInput


def make_params(**overrides) -> TruckParams:
    return replace(defaults.default_truck_params(), **overrides)


def make_station(
    sid: str = "s01",
    port_count: int = 3,
    port_power: float = defaults.PORT_POWER_KW,
    price: float = defaults.PRICE_ENERGY_EUR_PER_KWH,
) -> StationSpec:
    return StationSpec(
        id=sid,
        port_count=port_count,
        port_power=port_power,
        electricity_price_energy=price,
    )


def make_truck(
    tid: str = "t001",
    station_ids: tuple[str, ...] = ("s01",),
    segment_times: tuple[float, ...] = (30.0, 60.0),
    detour_times: tuple[float, ...] = (5.0,),
    e_initial: float = 400.0,
    depart_time: float = 480.0,
    budget: float = defaults.EXTRA_TIME_BUDGET_MIN,
    w_hat: float = defaults.W_HAT_DEFAULT_MIN,
    params: TruckParams | None = None,
) -> TruckSpec:
    return TruckSpec(
        id=tid,
        params=params if params is not None else make_params(),
        route=Route(
            ramp_count=len(station_ids),
            segment_times=segment_times,
            detour_times=detour_times,
            station_ids=station_ids,
        ),
        e_initial=e_initial,
        depart_time=depart_time,
        extra_time_budget=budget,
        w_hat_default=w_hat,
    )


def make_scenario(
    stations: tuple[StationSpec, ...] | None = None,
    trucks: tuple[TruckSpec, ...] | None = None,
    label: str = "test",
    seed: int = 0,
) -> Scenario:
    if stations is None:
        stations = (make_station(),)
    if trucks is None:
        trucks = (make_truck(),)
    return Scenario(stations=stations, trucks=trucks, rng_seed=seed, label=label)


def make_planner_input(
    stations: tuple[StationSpec, ...] | None = None,
    segment_times: tuple[float, ...] = (60.0,),
    detour_times: tuple[float, ...] = (5.0,),
    battery: float = 400.0,
    quoted_wait: float = 0.0,
    assumed_waits: tuple[float, ...] | None = None,
    remaining_time: float = 240.0,
    params: TruckParams | None = None,
    **kw,
) -> PlannerInput:
    if stations is None:
        stations = tuple(
            make_station(f"s{i + 1:02d}") for i in range(len(segment_times))
        )
    if assumed_waits is None:
        assumed_waits = (defaults.W_HAT_DEFAULT_MIN,) * max(len(stations) - 1, 0)
    return PlannerInput(
        params=params if params is not None else make_params(),
        stations=stations,
        segment_times=segment_times,
        detour_times=detour_times,
        battery=battery,
        quoted_wait=quoted_wait,
        assumed_waits=assumed_waits,
        remaining_time=remaining_time,
        **kw,
    )


@pytest.fixture
def params() -> TruckParams:
    return make_params()
