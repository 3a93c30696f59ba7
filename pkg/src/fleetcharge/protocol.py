"""The four-step ramp exchange between a truck and one station.

Reaching a ramp triggers exactly one exchange with the station bound to it:

1. the truck announces its anticipated station arrival time (now plus the
   detour time);
2. the station answers with a wait estimate from its port ledger;
3. the truck plans its remaining route using that quote and commits a
   charging time (zero means it will skip this station);
4. the station acknowledges, having booked the slot if the time was
   positive.

Trucks never talk to each other and stations never talk to each other.
Each exchange is atomic with respect to the station's ledger: the engine
serializes exchanges, so a stale quote at commit time means a bug, and the
resulting error propagates instead of being retried.

Messages have a canonical single-line JSON wire form so transcripts are
replayable and diffable; numbers are written with at most six decimal
places.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace
from typing import Any, Union

from .planner import (
    PlannerInput,
    PlannerSolution,
    minimal_rescue_charge,
    solve_charging_problem,
)
from .station import Assignment, PortLedger, WaitQuote

__all__ = [
    "ArrivalAnnouncement",
    "WaitingEstimate",
    "ChargingCommitment",
    "Ack",
    "Message",
    "MessageDecodeError",
    "encode_message",
    "decode_message",
    "ExchangeTranscript",
    "ExchangeOutcome",
    "run_ramp_exchange",
]


class MessageDecodeError(ValueError):
    """A wire line is not a well-formed message; the text names the field."""


def _check_time(name: str, value: float) -> None:
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        raise ValueError(f"{name} must be a number")
    if not math.isfinite(value) or value < 0:
        raise ValueError(f"{name} must be finite and nonnegative, got {value}")


@dataclass(frozen=True, slots=True)
class ArrivalAnnouncement:
    """Truck to station: anticipated station arrival time, minutes."""

    truck: str
    station: str
    t_arrival: float

    def __post_init__(self) -> None:
        _check_time("t_arrival", self.t_arrival)


@dataclass(frozen=True, slots=True)
class WaitingEstimate:
    """Station to truck: anticipated wait at the announced arrival, minutes."""

    station: str
    truck: str
    wait: float

    def __post_init__(self) -> None:
        _check_time("wait", self.wait)


@dataclass(frozen=True, slots=True)
class ChargingCommitment:
    """Truck to station: planned charging time in minutes (0 = skip)."""

    truck: str
    station: str
    charge_time: float

    def __post_init__(self) -> None:
        _check_time("charge_time", self.charge_time)


@dataclass(frozen=True, slots=True)
class Ack:
    """Station to truck: the commitment is recorded."""

    station: str
    truck: str


Message = Union[ArrivalAnnouncement, WaitingEstimate, ChargingCommitment, Ack]


def _fmt_minutes(x: float) -> str:
    """Canonical wire form of a time value: at most 6 decimal places,
    no trailing zeros, no trailing dot."""
    s = f"{x:.6f}".rstrip("0").rstrip(".")
    return "0" if s == "-0" else s


def encode_message(message: Message) -> str:
    """One canonical JSON line (no trailing newline)."""
    if isinstance(message, ArrivalAnnouncement):
        return (
            f'{{"type":"arrival","truck":{json.dumps(message.truck)},'
            f'"station":{json.dumps(message.station)},'
            f'"t_arrival":{_fmt_minutes(message.t_arrival)}}}'
        )
    if isinstance(message, WaitingEstimate):
        return (
            f'{{"type":"estimate","station":{json.dumps(message.station)},'
            f'"truck":{json.dumps(message.truck)},'
            f'"wait":{_fmt_minutes(message.wait)}}}'
        )
    if isinstance(message, ChargingCommitment):
        return (
            f'{{"type":"commit","truck":{json.dumps(message.truck)},'
            f'"station":{json.dumps(message.station)},'
            f'"charge_time":{_fmt_minutes(message.charge_time)}}}'
        )
    if isinstance(message, Ack):
        return (
            f'{{"type":"ack","station":{json.dumps(message.station)},'
            f'"truck":{json.dumps(message.truck)}}}'
        )
    raise TypeError(f"not a message: {message!r}")


_FIELDS = {
    "arrival": ("truck", "station", "t_arrival"),
    "estimate": ("station", "truck", "wait"),
    "commit": ("truck", "station", "charge_time"),
    "ack": ("station", "truck"),
}
_NUMERIC = {"t_arrival", "wait", "charge_time"}


def decode_message(line: str) -> Message:
    """Parse one wire line back into a message.

    Raises MessageDecodeError naming the offending field on anything
    malformed: bad JSON, unknown type, missing, extra, mistyped, or
    out-of-range fields.
    """
    try:
        doc = json.loads(line)
    except json.JSONDecodeError as exc:
        raise MessageDecodeError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise MessageDecodeError("message must be a JSON object")
    kind = doc.get("type")
    if kind is None:
        raise MessageDecodeError("missing field 'type'")
    if kind not in _FIELDS:
        raise MessageDecodeError(f"unknown message type {kind!r}")
    expected = _FIELDS[kind]
    for name in expected:
        if name not in doc:
            raise MessageDecodeError(f"{kind}: missing field '{name}'")
    for name in doc:
        if name != "type" and name not in expected:
            raise MessageDecodeError(f"{kind}: unexpected field '{name}'")
    values: dict[str, Any] = {}
    for name in expected:
        value = doc[name]
        if name in _NUMERIC:
            if not isinstance(value, (int, float)) or isinstance(value, bool):
                raise MessageDecodeError(f"{kind}: field '{name}' must be a number")
            if not math.isfinite(value) or value < 0:
                raise MessageDecodeError(
                    f"{kind}: field '{name}' must be finite and nonnegative"
                )
            values[name] = float(value)
        else:
            if not isinstance(value, str):
                raise MessageDecodeError(f"{kind}: field '{name}' must be a string")
            values[name] = value
    cls = {
        "arrival": ArrivalAnnouncement,
        "estimate": WaitingEstimate,
        "commit": ChargingCommitment,
        "ack": Ack,
    }[kind]
    return cls(**values)


@dataclass(frozen=True, slots=True)
class ExchangeTranscript:
    """A completed exchange: its four messages in protocol order and the
    ledger versions bracketing the commit."""

    sequence_no: int
    messages: tuple[ArrivalAnnouncement, WaitingEstimate, ChargingCommitment, Ack]
    ledger_version_before: int
    ledger_version_after: int

    def wire_lines(self) -> list[str]:
        return [encode_message(m) for m in self.messages]


@dataclass(frozen=True, slots=True)
class ExchangeOutcome:
    """Everything the engine needs after an exchange: the transcript, the
    planner's full solution, the quote planned against, the booked slot
    (None when the commitment was zero), and the rescue charge if the
    regular problem was infeasible and a minimal safe charge existed."""

    transcript: ExchangeTranscript
    solution: PlannerSolution
    quote: WaitQuote
    assignment: Assignment | None
    rescue_charge: float | None

    @property
    def charge_time(self) -> float:
        return self.transcript.messages[2].charge_time


def run_ramp_exchange(
    sequence_no: int,
    ledger: PortLedger,
    truck_id: str,
    station_id: str,
    clock: float,
    base_input: PlannerInput,
) -> ExchangeOutcome:
    """Execute one complete exchange at a ramp.

    ``base_input`` describes the remaining route from this ramp; its
    ``quoted_wait`` is overwritten with the station's live quote before
    planning. The committed time is the planned duration at this station
    (zero when the plan skips it). If the planner finds no feasible plan,
    the truck falls back to the smallest charge here that keeps the rest of
    the route above the battery bounds, deadline ignored; if even that does
    not exist the commitment is zero and the caller decides what stranding
    means.

    A StaleQuoteError from the ledger propagates: exchanges are serialized
    by the engine, so staleness indicates a sequencing bug, not a condition
    to retry.
    """
    t_arrival = clock + base_input.detour_times[0]
    arrival = ArrivalAnnouncement(truck=truck_id, station=station_id, t_arrival=t_arrival)
    quote = ledger.estimate_wait(t_arrival)
    estimate = WaitingEstimate(station=station_id, truck=truck_id, wait=quote.wait)
    inp = replace(base_input, quoted_wait=quote.wait)
    solution = solve_charging_problem(inp)
    rescue_charge: float | None = None
    if solution.status == "optimal":
        first = solution.plan.decisions[0]
        charge_time = first.duration if first.charge else 0.0
    else:
        rescue_charge = minimal_rescue_charge(inp)
        charge_time = rescue_charge if rescue_charge is not None else 0.0
    version_before = ledger.version
    commitment = ChargingCommitment(
        truck=truck_id, station=station_id, charge_time=charge_time
    )
    assignment = ledger.commit(quote, truck_id, charge_time)
    ack = Ack(station=station_id, truck=truck_id)
    transcript = ExchangeTranscript(
        sequence_no=sequence_no,
        messages=(arrival, estimate, commitment, ack),
        ledger_version_before=version_before,
        ledger_version_after=ledger.version,
    )
    return ExchangeOutcome(
        transcript=transcript,
        solution=solution,
        quote=quote,
        assignment=assignment,
        rescue_charge=rescue_charge,
    )
