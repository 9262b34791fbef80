"""Thermodynamically consistent reservoir coupling in the dressed basis.

Jump operators are projected onto the instantaneous dressed eigenstates, so
each reservoir drives both dressed transitions |eps1> <-> |0> and
|eps2> <-> |0>, with weights set by the mixing angle.  Writing
c = cos(theta), the four downward rates are

    g1 = gamma_c(eps10) (1+c)/2 + gamma_h(eps10) (1-c)/2
    g2 = gamma_h(eps20) (1+c)/2 + gamma_c(eps20) (1-c)/2

and the upward rates g1m, g2m follow from detailed balance
gamma_alpha(-eps) = exp(-beta_alpha * eps) gamma_alpha(eps) applied per
reservoir.  The cross-coupling fractions q1 = hot share of g1 and
q2 = cold share of g2 control how much heat bypasses the work-extracting
cycle; the threshold ratios q10, q20 mark where that leakage closes the
engine window.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ConfigError, ZeroCouplingError
from .model import CouplingTable, EngineParams, SpectralData

#: named coupling layouts; "custom" takes an explicit table
SCHEMES = ("resonant", "intermediate", "uniform", "custom")


@dataclass(frozen=True)
class DissipatorRates:
    """Effective rates of the dressed-basis master equation."""

    g1: float    # downward rate on the lower dressed transition
    g2: float    # downward rate on the upper dressed transition
    g1m: float   # upward rate, lower transition (detailed balance)
    g2m: float   # upward rate, upper transition
    q1: float    # hot-reservoir share of g1, in [0, 1]
    q2: float    # cold-reservoir share of g2, in [0, 1]
    q10: float   # engine-window threshold for q1
    q20: float   # engine-window threshold for q2

    def channel_split(self) -> tuple[float, float, float, float]:
        """Downward rates by reservoir: (cold@lower, hot@lower, cold@upper, hot@upper)."""
        return ((1.0 - self.q1) * self.g1, self.q1 * self.g1,
                self.q2 * self.g2, (1.0 - self.q2) * self.g2)


def build_table(scheme: str, gamma: float = 1.0, ratio: float = 0.25,
                table: CouplingTable | None = None) -> CouplingTable:
    """Construct the coupling table for a named scheme.

    resonant      each reservoir addresses one dressed transition only
    intermediate  cross transitions carry a fraction ``ratio`` of ``gamma``
    uniform       all four weights equal ``gamma``
    custom        pass-through of an explicit table
    """
    if scheme not in SCHEMES:
        raise ConfigError(f"unknown coupling scheme {scheme!r}; expected one of {SCHEMES}")
    if scheme == "custom":
        if table is None:
            raise ConfigError("custom scheme requires an explicit coupling table")
        return table
    if not gamma > 0:
        raise ConfigError("coupling scale gamma must be > 0")
    if scheme == "resonant":
        return CouplingTable(gamma, 0.0, 0.0, gamma)
    if scheme == "intermediate":
        if not 0.0 < ratio < 1.0:
            raise ConfigError("intermediate scheme needs cross ratio in (0, 1)")
        return CouplingTable(gamma, ratio * gamma, ratio * gamma, gamma)
    return CouplingTable(gamma, gamma, gamma, gamma)


def _threshold(q_gap: float, window: float) -> float:
    # window / q_gap with a signed-infinity guard for beta_c == beta_h
    if q_gap > 0.0:
        return window / q_gap
    return math.copysign(math.inf, window) if window != 0.0 else 0.0


def rates(params: EngineParams, spc: SpectralData) -> DissipatorRates:
    """Effective rates for one working point.

    Raises ZeroCouplingError when either dressed transition is entirely
    disconnected from both reservoirs (the stationary state would then be
    non-unique).
    """
    t = params.table
    c = math.cos(spc.theta)
    up, down = 0.5 * (1.0 + c), 0.5 * (1.0 - c)
    a1c, a1h = t.gamma_c_10 * up, t.gamma_h_10 * down
    a2h, a2c = t.gamma_h_20 * up, t.gamma_c_20 * down
    g1, g2 = a1c + a1h, a2h + a2c
    if g1 <= 0.0 or g2 <= 0.0:
        raise ZeroCouplingError(
            f"dressed transition decoupled: g1={g1:.3e}, g2={g2:.3e}")
    bc, bh = params.beta_c, params.beta_h
    g1m = math.exp(-bc * spc.eps10) * a1c + math.exp(-bh * spc.eps10) * a1h
    g2m = math.exp(-bh * spc.eps20) * a2h + math.exp(-bc * spc.eps20) * a2c
    q1, q2 = a1h / g1, a2c / g2

    # engine window: the population inversion needs
    #   q1 / q10 + q2 / q20 < 1   with the thresholds below
    window = math.exp(-bh * spc.eps20) - math.exp(-bc * spc.eps10)
    q10 = _threshold(math.exp(-bh * spc.eps10) - math.exp(-bc * spc.eps10), window)
    q20 = _threshold(math.exp(-bh * spc.eps20) - math.exp(-bc * spc.eps20), window)
    return DissipatorRates(g1, g2, g1m, g2m, q1, q2, q10, q20)
