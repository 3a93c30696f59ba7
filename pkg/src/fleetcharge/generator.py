"""Seeded random scenario generation.

A template gives the ranges; a seed pins every draw. Trucks are resampled
until their route is completable (some choice of charging stops keeps the
battery above the reserve bounds all the way to the destination), so a
generated scenario never strands a truck under either strategy.

All sampled times and energies are snapped to a 0.1 grid so that scenario
files and message encodings round-trip without precision loss.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, fields
from typing import Any

from . import defaults
from .model import Route, Scenario, StationSpec, TruckParams, TruckSpec
from .planner import PlannerInput, _max_charge_feasible, _stop_patterns

__all__ = ["ScenarioTemplate", "generate_scenario"]


def _snap01(x: float) -> float:
    return round(x, 1)


def _ceil01(x: float) -> float:
    return math.ceil(x * 10.0 - 1e-9) / 10.0


def _floor01(x: float) -> float:
    return math.floor(x * 10.0 + 1e-9) / 10.0


@dataclass(frozen=True, slots=True)
class ScenarioTemplate:
    """Ranges and fixed parameters for scenario sampling. Ranges are
    inclusive (lo, hi) pairs; integer ranges use integer endpoints."""

    label: str = "generated"
    truck_count: int = 20
    station_count: int = 5
    port_count_range: tuple[int, int] = (1, defaults.PORT_COUNT)
    port_power_range: tuple[float, float] = (
        defaults.PORT_POWER_KW,
        defaults.PORT_POWER_KW,
    )
    price_range: tuple[float, float] = (
        defaults.PRICE_ENERGY_EUR_PER_KWH,
        defaults.PRICE_ENERGY_EUR_PER_KWH,
    )
    stations_per_route_range: tuple[int, int] = (2, 4)
    segment_time_range: tuple[float, float] = (20.0, 60.0)
    detour_time_range: tuple[float, float] = (3.0, 12.0)
    depart_window: tuple[float, float] = defaults.DEPART_WINDOW_MIN
    e_initial_range: tuple[float, float] = (220.0, 500.0)
    extra_time_budget: float = defaults.EXTRA_TIME_BUDGET_MIN
    w_hat: float = defaults.W_HAT_DEFAULT_MIN
    p_max: float = defaults.P_MAX_KW
    p_bar: float = defaults.P_BAR_KWH_PER_MIN
    e_full: float = defaults.E_FULL_KWH
    e_safe: float = defaults.E_SAFE_KWH
    kappa: float = defaults.KAPPA_EUR_PER_MIN
    rho: float = defaults.RHO_EUR_PER_MIN
    max_resample_attempts: int = 200

    def __post_init__(self) -> None:
        problems = []
        if self.truck_count < 1:
            problems.append("truck_count must be at least 1")
        if self.station_count < 1:
            problems.append("station_count must be at least 1")
        for name in (
            "port_count_range",
            "port_power_range",
            "price_range",
            "stations_per_route_range",
            "segment_time_range",
            "detour_time_range",
            "depart_window",
            "e_initial_range",
        ):
            lo, hi = getattr(self, name)
            if not (lo <= hi):
                problems.append(f"{name} has lo > hi")
        if self.port_count_range[0] < 1:
            problems.append("port_count_range must start at 1 or more")
        if self.stations_per_route_range[0] < 1:
            problems.append("stations_per_route_range must start at 1 or more")
        if self.segment_time_range[0] <= 0:
            problems.append("segment times must be positive")
        if self.detour_time_range[0] < 0:
            problems.append("detour times must be nonnegative")
        if problems:
            raise ValueError("invalid template ranges: " + "; ".join(problems))

    @classmethod
    def from_dict(cls, doc: dict[str, Any]) -> "ScenarioTemplate":
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(doc) - known)
        if unknown:
            raise ValueError(f"unknown template keys: {', '.join(unknown)}")
        kwargs: dict[str, Any] = {}
        for f in fields(cls):
            if f.name not in doc:
                continue
            value = doc[f.name]
            if isinstance(value, list):
                value = tuple(value)
            kwargs[f.name] = value
        return cls(**kwargs)


def _truck_params(template: ScenarioTemplate) -> TruckParams:
    return TruckParams(
        p_bar=template.p_bar,
        e_full=template.e_full,
        e_safe=template.e_safe,
        p_max=template.p_max,
        kappa=template.kappa,
        rho=template.rho,
    )


def _sample_stations(
    template: ScenarioTemplate, rng: random.Random
) -> tuple[StationSpec, ...]:
    out = []
    for i in range(template.station_count):
        out.append(
            StationSpec(
                id=f"s{i + 1:02d}",
                port_count=rng.randint(*template.port_count_range),
                port_power=float(round(rng.uniform(*template.port_power_range))),
                electricity_price_energy=round(rng.uniform(*template.price_range), 2),
            )
        )
    return tuple(out)


def _route_completable(
    params: TruckParams,
    stations: tuple[StationSpec, ...],
    segs: tuple[float, ...],
    detours: tuple[float, ...],
    e_initial: float,
    remaining_time: float,
) -> bool:
    inp = PlannerInput(
        params=params,
        stations=stations,
        segment_times=segs[1:],
        detour_times=detours,
        battery=e_initial - params.p_bar * segs[0],
        quoted_wait=0.0,
        assumed_waits=(0.0,) * (len(stations) - 1),
        remaining_time=remaining_time,
    )
    return any(
        _max_charge_feasible(inp, pattern)
        for pattern in _stop_patterns(len(stations))
    )


def generate_scenario(template: ScenarioTemplate, seed: int) -> Scenario:
    """Sample a scenario from ``template`` with every draw pinned by
    ``seed``. Raises ValueError if a completable truck cannot be sampled
    within the template's resample budget."""
    rng = random.Random(seed)
    stations = _sample_stations(template, rng)
    params = _truck_params(template)

    lo_stops, hi_stops = template.stations_per_route_range
    hi_stops = min(hi_stops, template.station_count)
    if lo_stops > hi_stops:
        raise ValueError(
            "invalid template ranges: stations_per_route_range exceeds station_count"
        )

    trucks = []
    for i in range(template.truck_count):
        accepted = None
        for _ in range(template.max_resample_attempts):
            n_stops = rng.randint(lo_stops, hi_stops)
            idxs = sorted(rng.sample(range(template.station_count), n_stops))
            route_stations = tuple(stations[j] for j in idxs)
            segs = tuple(
                _snap01(rng.uniform(*template.segment_time_range))
                for _ in range(n_stops + 1)
            )
            detours = tuple(
                _snap01(rng.uniform(*template.detour_time_range))
                for _ in range(n_stops)
            )
            depart = _snap01(rng.uniform(*template.depart_window))
            # enough charge to reach the first ramp with detour margin
            e_floor = _ceil01(
                params.e_safe + params.p_bar * (segs[0] + detours[0])
            )
            e_lo = max(_ceil01(template.e_initial_range[0]), e_floor)
            e_hi = min(_floor01(template.e_initial_range[1]), params.e_full)
            if e_lo > e_hi:
                continue
            e_initial = min(max(_snap01(rng.uniform(e_lo, e_hi)), e_lo), e_hi)
            remaining_time = sum(segs[1:]) + template.extra_time_budget
            if not _route_completable(
                params, route_stations, segs, detours, e_initial, remaining_time
            ):
                continue
            accepted = TruckSpec(
                id=f"t{i + 1:03d}",
                params=params,
                route=Route(
                    ramp_count=n_stops,
                    segment_times=segs,
                    detour_times=detours,
                    station_ids=tuple(s.id for s in route_stations),
                ),
                e_initial=e_initial,
                depart_time=depart,
                extra_time_budget=template.extra_time_budget,
                w_hat_default=template.w_hat,
            )
            break
        if accepted is None:
            raise ValueError(
                f"could not sample a completable truck after "
                f"{template.max_resample_attempts} attempts"
            )
        trucks.append(accepted)

    return Scenario(
        stations=stations,
        trucks=tuple(trucks),
        rng_seed=seed,
        label=template.label,
    )
