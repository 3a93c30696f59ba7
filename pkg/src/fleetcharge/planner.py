"""Truck-side charging planner: exact optimization over one remaining route.

Standing at a ramp, a truck faces the remaining stations of its route and
decides, for each one, whether to stop and for how long to charge. The
decision variables are a binary stop choice per station and a continuous
charging duration per chosen stop. The planner minimizes

    kappa * sum over stops of (detour + charge + wait minutes)
  + electricity cost of the energy bought
  + rho * max(anticipated overtime, 0)

subject to never planning the battery below the reserve level and never
charging past capacity. The wait used for the station currently being
negotiated is that station's live quote; stations further ahead get the
truck's assumed wait.

The problem is solved exactly: every stop pattern is enumerated (the route
tail is small), and for each pattern the durations form a linear program
with a single epigraph variable for the overtime hinge. Two prunings keep
the enumeration cheap, and neither is heuristic:

* a pattern whose charge-to-full trajectory already dips below a bound has
  no feasible durations at all (charging to full is pointwise the highest
  trajectory any durations can achieve);
* a pattern whose fixed detour-and-wait labor cost alone exceeds the best
  cost found so far cannot win, because every other objective term is
  nonnegative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product
from typing import Any, Sequence

import numpy as np

from .lp import LPResult, solve_lp
from .model import (
    ChargeDecision,
    ChargingPlan,
    StationSpec,
    TruckParams,
    charging_rate,
    electricity_price_per_minute,
)

__all__ = [
    "MAX_ENUMERATED_STATIONS",
    "PlannerInput",
    "PlannerSolution",
    "OracleResult",
    "RouteTooLongError",
    "compute_energy_trajectory",
    "check_feasibility",
    "anticipated_overtime",
    "evaluate_plan_cost",
    "solve_fixed_assignment",
    "solve_charging_problem",
    "minimal_rescue_charge",
    "brute_force_oracle",
    "planner_input_from_dict",
    "solution_to_dict",
]

# Stop patterns are enumerated exhaustively, so the plannable route tail is
# capped; 2^16 patterns is still exact and fast, beyond that the caller is
# holding the model wrong.
MAX_ENUMERATED_STATIONS = 16

_COST_TIE_TOL = 1e-9


class RouteTooLongError(ValueError):
    """More remaining stations than the exact enumeration supports."""


@dataclass(frozen=True, slots=True)
class PlannerInput:
    """Everything a truck knows when planning at a ramp.

    Local station index 0 is the station at the current ramp (the one whose
    wait was just quoted); index M-1 is the last reachable station.
    ``segment_times[l]`` is the main-road driving time from ramp ``l`` to
    ramp ``l+1`` (the last entry reaches the destination), so the list has
    one entry per remaining station. ``assumed_waits`` has one entry per
    station beyond the first. ``remaining_time`` is the time budget left
    until the delivery deadline; overshooting it is allowed but penalized.

    ``require_detour_margin_everywhere`` keeps the reserve-plus-detour
    bound active at every remaining ramp, including ones the plan skips;
    switching it off enforces the bound only at planned stops.
    """

    params: TruckParams
    stations: tuple[StationSpec, ...]
    segment_times: tuple[float, ...]
    detour_times: tuple[float, ...]
    battery: float
    quoted_wait: float
    assumed_waits: tuple[float, ...]
    remaining_time: float
    require_detour_margin_everywhere: bool = True

    def __post_init__(self) -> None:
        m = len(self.stations)
        if m > MAX_ENUMERATED_STATIONS:
            raise RouteTooLongError(
                f"{m} remaining stations exceeds the exact-enumeration cap "
                f"of {MAX_ENUMERATED_STATIONS}"
            )
        if len(self.segment_times) != m:
            raise ValueError(
                f"expected {m} segment_times (one per remaining station), "
                f"got {len(self.segment_times)}"
            )
        if len(self.detour_times) != m:
            raise ValueError(f"expected {m} detour_times, got {len(self.detour_times)}")
        if len(self.assumed_waits) != max(m - 1, 0):
            raise ValueError(
                f"expected {max(m - 1, 0)} assumed_waits (stations beyond the "
                f"first), got {len(self.assumed_waits)}"
            )
        for name in ("segment_times", "detour_times", "assumed_waits"):
            for i, x in enumerate(getattr(self, name)):
                if not math.isfinite(x) or x < 0:
                    raise ValueError(f"{name}[{i}] must be a finite nonnegative number")
        if m > 0 and (not math.isfinite(self.quoted_wait) or self.quoted_wait < 0):
            raise ValueError("quoted_wait must be a finite nonnegative number")
        if not math.isfinite(self.battery):
            raise ValueError("battery must be a finite number")
        if not math.isfinite(self.remaining_time):
            raise ValueError("remaining_time must be a finite number")

    @property
    def station_count(self) -> int:
        return len(self.stations)

    def waits(self) -> tuple[float, ...]:
        """Wait assumed at each remaining station (quote first, defaults after)."""
        if not self.stations:
            return ()
        return (self.quoted_wait,) + self.assumed_waits

    def rates(self) -> tuple[float, ...]:
        return tuple(charging_rate(s, self.params) for s in self.stations)

    def prices_per_minute(self) -> tuple[float, ...]:
        return tuple(electricity_price_per_minute(s, self.params) for s in self.stations)


@dataclass(frozen=True, slots=True)
class PlannerSolution:
    """status 'optimal' carries a plan; 'infeasible' means no stop pattern
    admits durations that keep the battery above its bounds."""

    status: str
    plan: ChargingPlan | None
    patterns_considered: int
    lp_solves: int


def _decisions_of(plan: ChargingPlan | Sequence[ChargeDecision]) -> tuple[ChargeDecision, ...]:
    if isinstance(plan, ChargingPlan):
        return plan.decisions
    return tuple(plan)


def compute_energy_trajectory(
    inp: PlannerInput, plan: ChargingPlan | Sequence[ChargeDecision]
) -> tuple[float, ...]:
    """Battery level at each remaining ramp and at the destination.

    Entry ``l`` is the level reaching ramp ``l``; the final entry is the
    level reaching the destination. Levels are the model's affine dynamics,
    uncapped, so a plan that would overfill shows up as a level above
    capacity rather than being silently clipped.
    """
    decisions = _decisions_of(plan)
    m = inp.station_count
    if len(decisions) != m:
        raise ValueError(f"expected {m} decisions, got {len(decisions)}")
    p = inp.params
    rates = inp.rates()
    levels = [inp.battery]
    e = inp.battery
    for l in range(m):
        dec = decisions[l]
        charged = rates[l] * dec.duration if dec.charge else 0.0
        detour = 2.0 * inp.detour_times[l] if dec.charge else 0.0
        e = e + charged - p.p_bar * (detour + inp.segment_times[l])
        levels.append(e)
    return tuple(levels)


def check_feasibility(
    inp: PlannerInput,
    plan: ChargingPlan | Sequence[ChargeDecision],
    slack: float = 1e-6,
) -> list[str]:
    """Check a plan against every battery and duration constraint.

    Returns one message per violation beyond ``slack``; empty means the plan
    is feasible. Checked: nonnegative durations, zero duration on skipped
    stations, the reserve-plus-detour bound at ramps (every ramp, or only
    planned stops, per the input's flag), the reserve bound at the
    destination, and the capacity bound on each planned charge.
    """
    decisions = _decisions_of(plan)
    m = inp.station_count
    if len(decisions) != m:
        raise ValueError(f"expected {m} decisions, got {len(decisions)}")
    p = inp.params
    rates = inp.rates()
    out: list[str] = []
    levels = compute_energy_trajectory(inp, decisions)
    for l in range(m):
        dec = decisions[l]
        if dec.duration < -slack:
            out.append(f"station {l}: negative duration {dec.duration}")
        if not dec.charge and dec.duration != 0.0:
            out.append(f"station {l}: skipped but duration {dec.duration} != 0")
        bound_applies = inp.require_detour_margin_everywhere or dec.charge
        if bound_applies:
            need = p.e_safe + p.p_bar * inp.detour_times[l]
            if levels[l] < need - slack:
                out.append(
                    f"station {l}: level {levels[l]:.6f} below reserve-plus-detour "
                    f"bound {need:.6f}"
                )
        if dec.charge:
            at_station = levels[l] - p.p_bar * inp.detour_times[l]
            headroom = p.e_full - at_station
            if rates[l] * dec.duration > headroom + slack:
                out.append(
                    f"station {l}: charge {rates[l] * dec.duration:.6f} kWh exceeds "
                    f"headroom {headroom:.6f} kWh"
                )
    if levels[m] < p.e_safe - slack:
        out.append(
            f"destination: level {levels[m]:.6f} below reserve {p.e_safe:.6f}"
        )
    return out


def anticipated_overtime(
    inp: PlannerInput, plan: ChargingPlan | Sequence[ChargeDecision]
) -> float:
    """Planned trip-tail time minus the remaining budget (negative = slack)."""
    decisions = _decisions_of(plan)
    waits = inp.waits()
    spent = sum(inp.segment_times)
    for l, dec in enumerate(decisions):
        if dec.charge:
            spent += 2.0 * inp.detour_times[l] + dec.duration + waits[l]
    return spent - inp.remaining_time


def evaluate_plan_cost(
    inp: PlannerInput, plan: ChargingPlan | Sequence[ChargeDecision]
) -> tuple[float, float]:
    """Exact objective value and overtime of a plan, as (cost, overtime)."""
    decisions = _decisions_of(plan)
    waits = inp.waits()
    prices = inp.prices_per_minute()
    p = inp.params
    labor_minutes = 0.0
    energy_cost = 0.0
    for l, dec in enumerate(decisions):
        if dec.charge:
            labor_minutes += 2.0 * inp.detour_times[l] + dec.duration + waits[l]
            energy_cost += prices[l] * dec.duration
    overtime = anticipated_overtime(inp, decisions)
    cost = p.kappa * labor_minutes + energy_cost + max(p.rho * overtime, 0.0)
    return cost, overtime


# -- fixed stop pattern: the duration LP -------------------------------------


def _drain_prefix(inp: PlannerInput, selected: frozenset[int]) -> list[float]:
    """Cumulative driving consumption reaching each ramp (and destination)
    for a given stop pattern: entry l covers all segments and planned
    detours strictly before ramp l."""
    p = inp.params
    out = [0.0]
    total = 0.0
    for l in range(inp.station_count):
        detour = 2.0 * inp.detour_times[l] if l in selected else 0.0
        total += p.p_bar * (detour + inp.segment_times[l])
        out.append(total)
    return out


def _assignment_lp(
    inp: PlannerInput,
    selected: tuple[int, ...],
    *,
    with_overtime: bool = True,
    cost_cap: float | None = None,
    minimize_total_time: bool = False,
) -> LPResult:
    """Solve the duration LP for one stop pattern.

    Variables are the charging durations of the selected stations (in
    pattern order) plus, when ``with_overtime``, an epigraph variable for
    the hinge max(rho * overtime, 0). ``cost_cap`` adds a row bounding the
    variable part of the objective; ``minimize_total_time`` swaps the
    objective for the sum of durations (used to canonicalize among
    cost-equal optima and for rescue charging).
    """
    p = inp.params
    m = inp.station_count
    sel_set = frozenset(selected)
    rates = inp.rates()
    prices = inp.prices_per_minute()
    waits = inp.waits()
    drain = _drain_prefix(inp, sel_set)
    n_t = len(selected)
    n_vars = n_t + (1 if with_overtime else 0)
    col_of = {l: i for i, l in enumerate(selected)}

    rows: list[np.ndarray] = []
    rhs: list[float] = []

    def energy_coeffs(upto: int) -> np.ndarray:
        """Coefficients of the charge contribution reaching ramp ``upto``."""
        row = np.zeros(n_vars)
        for l in selected:
            if l < upto:
                row[col_of[l]] = rates[l]
        return row

    # reserve-plus-detour bound at ramps
    for l in range(m):
        if not (inp.require_detour_margin_everywhere or l in sel_set):
            continue
        row = -energy_coeffs(l)
        bound = p.e_safe + p.p_bar * inp.detour_times[l]
        rows.append(row)
        rhs.append(inp.battery - drain[l] - bound)
    # reserve bound at the destination
    rows.append(-energy_coeffs(m))
    rhs.append(inp.battery - drain[m] - p.e_safe)
    # capacity bound at each planned stop
    for l in selected:
        row = energy_coeffs(l)
        row[col_of[l]] += rates[l]
        rows.append(row)
        rhs.append(p.e_full - inp.battery + drain[l] + p.p_bar * inp.detour_times[l])

    fixed_minutes = sum(inp.segment_times) + sum(
        2.0 * inp.detour_times[l] + waits[l] for l in selected
    )
    if with_overtime:
        # z >= rho * (fixed_minutes + sum of durations - budget)
        row = np.zeros(n_vars)
        for l in selected:
            row[col_of[l]] = p.rho
        row[-1] = -1.0
        rows.append(row)
        rhs.append(p.rho * (inp.remaining_time - fixed_minutes))

    objective = np.zeros(n_vars)
    if minimize_total_time:
        objective[:n_t] = 1.0
    else:
        for l in selected:
            objective[col_of[l]] = p.kappa + prices[l]
        if with_overtime:
            objective[-1] = 1.0

    if cost_cap is not None:
        row = np.zeros(n_vars)
        for l in selected:
            row[col_of[l]] = p.kappa + prices[l]
        if with_overtime:
            row[-1] = 1.0
        rows.append(row)
        rhs.append(cost_cap)

    a_ub = np.vstack(rows) if rows else np.zeros((0, n_vars))
    return solve_lp(objective, a_ub, np.array(rhs))


def _pattern_constant_cost(inp: PlannerInput, selected: tuple[int, ...]) -> float:
    waits = inp.waits()
    return inp.params.kappa * sum(
        2.0 * inp.detour_times[l] + waits[l] for l in selected
    )


def solve_fixed_assignment(
    inp: PlannerInput, selected: tuple[int, ...]
) -> tuple[tuple[float, ...], float] | None:
    """Best durations for one stop pattern, or None if none are feasible.

    Returns (durations, cost) where durations has one entry per remaining
    station (zero on skipped ones) and cost is the exact objective value.
    """
    result = _assignment_lp(inp, selected)
    if result.status != "optimal":
        return None
    durations = [0.0] * inp.station_count
    for i, l in enumerate(selected):
        durations[l] = max(float(result.x[i]), 0.0)
    decisions = tuple(
        ChargeDecision(charge=l in selected, duration=durations[l] if l in selected else 0.0)
        for l in range(inp.station_count)
    )
    cost, _ = evaluate_plan_cost(inp, decisions)
    return tuple(durations), cost


def _max_charge_feasible(inp: PlannerInput, selected: frozenset[int]) -> bool:
    """Exact energy-feasibility test for a stop pattern.

    Charging to full at every planned stop produces, pointwise, the highest
    battery trajectory any durations can achieve, so if that trajectory
    violates a bound the pattern has no feasible durations at all. A small
    margin keeps borderline patterns alive for the LP to judge.
    """
    p = inp.params
    eps = 1e-7
    e = inp.battery
    for l in range(inp.station_count):
        planned = l in selected
        if inp.require_detour_margin_everywhere or planned:
            if e < p.e_safe + p.p_bar * inp.detour_times[l] - eps:
                return False
        if planned:
            e = p.e_full - p.p_bar * (inp.detour_times[l] + inp.segment_times[l])
        else:
            e = e - p.p_bar * inp.segment_times[l]
    return e >= p.e_safe - eps


_PATTERN_CACHE: dict[int, list[tuple[int, ...]]] = {}


def _stop_patterns(m: int) -> list[tuple[int, ...]]:
    """All stop patterns as index tuples, fewest stops first, then by the
    pattern's bit string. The first cost-tied pattern in this order wins,
    so ties prefer fewer stops, then earlier stations."""
    cached = _PATTERN_CACHE.get(m)
    if cached is None:
        bit_tuples = sorted(product((0, 1), repeat=m), key=lambda b: (sum(b), b))
        cached = [tuple(i for i, b in enumerate(bits) if b) for bits in bit_tuples]
        _PATTERN_CACHE[m] = cached
    return cached


def solve_charging_problem(inp: PlannerInput) -> PlannerSolution:
    """Exactly solve the stop-and-duration problem for one route tail.

    Enumerates every stop pattern (fewest stops first), solves the duration
    LP for each surviving pattern, and keeps the cheapest; cost ties within
    1e-9 keep the earlier pattern. The winner's durations are then
    canonicalized by a second LP minimizing total charging time among
    cost-optimal durations, so reported plans are unique and replayable.
    """
    m = inp.station_count
    best_cost = math.inf
    best_selected: tuple[int, ...] | None = None
    lp_solves = 0
    considered = 0
    for selected in _stop_patterns(m):
        considered += 1
        if _pattern_constant_cost(inp, selected) > best_cost + _COST_TIE_TOL:
            continue
        if not _max_charge_feasible(inp, frozenset(selected)):
            continue
        lp_solves += 1
        result = _assignment_lp(inp, selected)
        if result.status != "optimal":
            continue
        cost = float(result.objective) + _pattern_constant_cost(inp, selected)
        if cost < best_cost - _COST_TIE_TOL:
            best_cost = cost
            best_selected = selected

    if best_selected is None:
        return PlannerSolution(
            status="infeasible", plan=None, patterns_considered=considered, lp_solves=lp_solves
        )

    # canonical durations: minimal total charging time at optimal cost
    cap = best_cost - _pattern_constant_cost(inp, best_selected) + _COST_TIE_TOL
    lp_solves += 1
    canonical = _assignment_lp(
        inp, best_selected, cost_cap=cap, minimize_total_time=True
    )
    if canonical.status == "optimal":
        chosen = canonical.x
    else:
        lp_solves += 1
        chosen = _assignment_lp(inp, best_selected).x
    durations = [0.0] * m
    for i, l in enumerate(best_selected):
        durations[l] = max(float(chosen[i]), 0.0)
    decisions = tuple(
        ChargeDecision(
            charge=l in best_selected,
            duration=durations[l] if l in best_selected else 0.0,
        )
        for l in range(m)
    )
    cost, overtime = evaluate_plan_cost(inp, decisions)
    plan = ChargingPlan(
        decisions=decisions, anticipated_cost=cost, anticipated_overtime=overtime
    )
    return PlannerSolution(
        status="optimal", plan=plan, patterns_considered=considered, lp_solves=lp_solves
    )


def minimal_rescue_charge(inp: PlannerInput) -> float | None:
    """Smallest charge (minutes) at the current station that keeps the rest
    of the route above the battery bounds, ignoring the deadline entirely.

    Used when the regular problem is infeasible and the truck is already at
    a ramp with a port available: buy just enough energy to stay safe, eat
    the overtime. Returns None when even that does not exist (the truck is
    stranded).
    """
    if inp.station_count == 0:
        return None
    result = _assignment_lp(
        inp, (0,), with_overtime=False, minimize_total_time=True
    )
    if result.status != "optimal":
        return None
    return max(float(result.x[0]), 0.0)


# -- reference oracle ---------------------------------------------------------


@dataclass(frozen=True, slots=True)
class OracleResult:
    """Best grid plan found by exhaustive search: durations per remaining
    station, the stop pattern, and the exact cost of that plan."""

    cost: float
    durations: tuple[float, ...]
    selected: tuple[int, ...]


def brute_force_oracle(
    inp: PlannerInput, step: float = 0.1
) -> OracleResult | None:
    """Exhaustive grid search over stop patterns and charging durations.

    An independent check on the LP-based planner for small inputs (at most
    three remaining stations). Durations of all but the last planned stop
    range over multiples of ``step`` up to a full-battery charge; the last
    planned stop's duration is resolved directly to the smallest feasible
    grid multiple, which is optimal for that coordinate because every
    objective term is nondecreasing in it. The winner is re-verified
    against the plan checker, including that one grid step less on the
    resolved coordinate is infeasible (or not cheaper).

    Returns None when no pattern has feasible durations.
    """
    m = inp.station_count
    if m > 3:
        raise ValueError(f"oracle supports at most 3 remaining stations, got {m}")
    if step <= 0:
        raise ValueError(f"step must be positive, got {step}")
    p = inp.params
    rates = inp.rates()
    prices = inp.prices_per_minute()
    waits = inp.waits()
    seg_total = sum(inp.segment_times)

    best_cost = math.inf
    best_durs: tuple[float, ...] | None = None
    best_selected: tuple[int, ...] | None = None

    for selected in _stop_patterns(m):
        sel_set = frozenset(selected)
        const_cost = _pattern_constant_cost(inp, selected)
        fixed_minutes = seg_total + sum(
            2.0 * inp.detour_times[l] + waits[l] for l in selected
        )

        if not selected:
            decisions = tuple(ChargeDecision(False, 0.0) for _ in range(m))
            if check_feasibility(inp, decisions, slack=0.0):
                continue
            overtime = fixed_minutes - inp.remaining_time
            cost = const_cost + max(p.rho * overtime, 0.0)
            if cost < best_cost - 1e-12:
                best_cost, best_durs, best_selected = cost, (0.0,) * m, selected
            continue

        inner = selected[-1]
        outer = selected[:-1]
        grids = []
        for l in outer:
            n_steps = math.ceil((p.e_full / rates[l]) / step)
            grids.append(np.arange(n_steps + 1) * step)
        if outer:
            mesh = np.meshgrid(*grids, indexing="ij")
        else:
            mesh = []
        shape = mesh[0].shape if mesh else ()
        outer_t = {l: mesh[i] for i, l in enumerate(outer)}

        feasible = np.ones(shape, dtype=bool)
        e = np.full(shape, inp.battery) if shape else np.float64(inp.battery)

        # forward pass to the last planned stop
        for l in range(inner):
            planned = l in sel_set
            if inp.require_detour_margin_everywhere or planned:
                feasible &= e >= p.e_safe + p.p_bar * inp.detour_times[l]
            if planned:
                at_station = e - p.p_bar * inp.detour_times[l]
                charge = rates[l] * outer_t[l]
                feasible &= charge <= p.e_full - at_station
                e = at_station + charge - p.p_bar * (
                    inp.detour_times[l] + inp.segment_times[l]
                )
            else:
                e = e - p.p_bar * inp.segment_times[l]
        feasible &= e >= p.e_safe + p.p_bar * inp.detour_times[inner]
        at_station = e - p.p_bar * inp.detour_times[inner]

        # smallest charge at the last stop meeting every downstream bound:
        # propagate the requirements backward to the level at the next ramp
        req = p.e_safe  # requirement on the destination level
        for l in range(m - 1, inner, -1):
            req += p.p_bar * inp.segment_times[l]
            if inp.require_detour_margin_everywhere:
                req = max(req, p.e_safe + p.p_bar * inp.detour_times[l])
        # leaving the last stop still burns the return leg and one segment
        needed = req + p.p_bar * (
            inp.detour_times[inner] + inp.segment_times[inner]
        ) - at_station
        t_min = np.maximum(needed / rates[inner], 0.0)
        t_inner = np.maximum(np.ceil(t_min / step - 1e-9) * step, 0.0)
        feasible &= rates[inner] * t_inner <= p.e_full - at_station + 1e-12

        total_t_cost = (p.kappa + prices[inner]) * t_inner
        total_minutes = t_inner.copy() if shape else t_inner
        for l in outer:
            total_t_cost = total_t_cost + (p.kappa + prices[l]) * outer_t[l]
            total_minutes = total_minutes + outer_t[l]
        overtime = fixed_minutes + total_minutes - inp.remaining_time
        cost = const_cost + total_t_cost + np.maximum(p.rho * overtime, 0.0)

        cost = np.where(feasible, cost, np.inf)
        if shape:
            flat_idx = int(np.argmin(cost))
            pattern_best = float(cost.reshape(-1)[flat_idx])
        else:
            flat_idx = 0
            pattern_best = float(cost)
        if not math.isfinite(pattern_best) or pattern_best >= best_cost - 1e-12:
            continue
        durs = [0.0] * m
        if shape:
            multi = np.unravel_index(flat_idx, shape)
            for i, l in enumerate(outer):
                durs[l] = float(grids[i][multi[i]])
            durs[inner] = float(t_inner[multi])
        else:
            durs[inner] = float(t_inner)
        best_cost, best_durs, best_selected = pattern_best, tuple(durs), selected

    if best_selected is None:
        return None

    decisions = tuple(
        ChargeDecision(charge=l in best_selected, duration=best_durs[l])
        for l in range(m)
    )
    violations = check_feasibility(inp, decisions, slack=1e-6)
    if violations:
        raise RuntimeError(f"oracle winner fails the plan checker: {violations}")
    exact_cost, _ = evaluate_plan_cost(inp, decisions)
    if best_selected:
        inner = best_selected[-1]
        if best_durs[inner] >= step - 1e-12:
            down = list(best_durs)
            down[inner] = down[inner] - step
            down_dec = tuple(
                ChargeDecision(charge=l in best_selected, duration=down[l])
                for l in range(m)
            )
            if not check_feasibility(inp, down_dec, slack=0.0):
                down_cost, _ = evaluate_plan_cost(inp, down_dec)
                if down_cost < exact_cost - 1e-12:
                    raise RuntimeError(
                        "oracle winner is not grid-minimal on its last stop"
                    )
    return OracleResult(cost=exact_cost, durations=best_durs, selected=best_selected)


# -- JSON shapes for the command-line planner ---------------------------------


def planner_input_from_dict(doc: dict[str, Any]) -> PlannerInput:
    """Build a planner input from parsed JSON (the CLI's `plan` payload)."""
    try:
        params = TruckParams(**doc["params"])
        stations = tuple(StationSpec(**s) for s in doc["stations"])
        return PlannerInput(
            params=params,
            stations=stations,
            segment_times=tuple(doc["segment_times"]),
            detour_times=tuple(doc["detour_times"]),
            battery=doc["battery"],
            quoted_wait=doc.get("quoted_wait", 0.0),
            assumed_waits=tuple(doc.get("assumed_waits", ())),
            remaining_time=doc["remaining_time"],
            require_detour_margin_everywhere=doc.get(
                "require_detour_margin_everywhere", True
            ),
        )
    except KeyError as exc:
        raise ValueError(f"planner input missing field {exc}") from exc
    except TypeError as exc:
        raise ValueError(f"planner input malformed: {exc}") from exc


def solution_to_dict(solution: PlannerSolution) -> dict[str, Any]:
    doc: dict[str, Any] = {"status": solution.status}
    if solution.plan is not None:
        doc["decisions"] = [
            {"charge": d.charge, "duration": d.duration}
            for d in solution.plan.decisions
        ]
        doc["anticipated_cost"] = solution.plan.anticipated_cost
        doc["anticipated_overtime"] = solution.plan.anticipated_overtime
    return doc
