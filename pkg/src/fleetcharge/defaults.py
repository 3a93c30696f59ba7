"""Default parameter values for heavy electric trucks and highway stations.

These are the reference values used by the scenario generator and the CLI
when no override is given. Units follow the package conventions (minutes,
kWh, kW, euro).
"""

from __future__ import annotations

from .model import TruckParams

# Truck battery and cost parameters.
P_MAX_KW = 375.0           # highest charging power the battery accepts
P_BAR_KWH_PER_MIN = 1.83   # driving consumption
E_FULL_KWH = 624.0         # battery capacity
E_SAFE_KWH = 156.0         # reserve level plans must never cross (25% of capacity)
PRICE_ENERGY_EUR_PER_KWH = 0.36
KAPPA_EUR_PER_MIN = 0.4    # driver labor cost
RHO_EUR_PER_MIN = 10.0     # overtime penalty rate

# Protocol and mission defaults.
W_HAT_DEFAULT_MIN = 12.0       # assumed wait at stations not yet negotiated
EXTRA_TIME_BUDGET_MIN = 160.0  # slack added to pure driving time for the deadline
DEPART_WINDOW_MIN = (480.0, 600.0)  # departures drawn from 08:00-10:00

# Station defaults.
PORT_COUNT = 3
PORT_POWER_KW = 300.0


def default_truck_params() -> TruckParams:
    return TruckParams(
        p_bar=P_BAR_KWH_PER_MIN,
        e_full=E_FULL_KWH,
        e_safe=E_SAFE_KWH,
        p_max=P_MAX_KW,
        kappa=KAPPA_EUR_PER_MIN,
        rho=RHO_EUR_PER_MIN,
    )
