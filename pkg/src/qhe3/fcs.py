"""Counting statistics of the stationary energy exchange.

Dressing the jump terms of the rotating-frame generator with counting
factors e^{+-chi eps} per exchanged quantum gives a tilted 5x5 matrix whose
dominant eigenvalue is the scaled cumulant generating function of the
absorbed energy.  Its first derivative reproduces the mean power (total) or
the per-reservoir heat fluxes (separate fields); the second derivative is
the long-time power variance rate, for which a closed form in four additive
parts is implemented here.  The tilted matrix itself is exposed so the tests
can differentiate the eigenvalue numerically as an independent check.

Entropy production is evaluated in an expanded form with no pole at equal
temperatures: it stays finite and correct for beta_c -> beta_h, where it
reduces to beta * P (pure dissipation of the drive work).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import EngineParams
from .stationary import StationaryCore, generator, solve


@dataclass(frozen=True)
class TiltedLiouvillian:
    """Counting-field-dressed generator for one pair of fields."""

    chi_c: float
    chi_h: float
    matrix: np.ndarray

    def dominant_eigenvalue(self) -> float:
        """Eigenvalue with the largest real part (real for real fields)."""
        ev = np.linalg.eigvals(self.matrix)
        return float(ev[np.argmax(ev.real)].real)


@dataclass(frozen=True)
class FcsReport:
    """Fluctuation summary of one working point."""

    sigma_dot: float   # stationary entropy production rate
    var1: float        # population-channel shot noise
    var2: float        # correction from the finite relaxation time
    var3: float        # coherence backaction, even in the rate asymmetry
    var4: float        # coherence backaction, odd in the rate asymmetry
    var_power: float   # total long-time power variance rate
    tur: float         # sigma_dot * var_power / power^2


def entropy_production(params: EngineParams, core: StationaryCore | None = None) -> float:
    """Stationary entropy production rate, finite at equal temperatures."""
    core = solve(params) if core is None else core
    bc, bh = core.params.beta_c, core.params.beta_h
    return ((bc - bh) * (core.inv_eta_ssd * core.power + core.state.rho0 * core.p0_direct)
            - bc * core.power)


def tilted_liouvillian(params: EngineParams, chi_c: float = 0.0, chi_h: float = 0.0,
                       core: StationaryCore | None = None) -> TiltedLiouvillian:
    """Generator with counting factors on every reservoir jump.

    chi_c and chi_h count energy absorbed from the cold and hot reservoir;
    equal fields count the total, which in the steady state is the output
    work.  Emission gains pick up e^{-chi eps}, excitation gains e^{+chi eps}.
    """
    core = solve(params) if core is None else core
    spc, r = core.spc, core.rts
    a1c, a1h, a2c, a2h = r.channel_split()
    bc, bh = params.beta_c, params.beta_h
    e10, e20 = spc.eps10, spc.eps20

    m = generator(params, spc, r).astype(complex)
    m[0, 1] = a1c * np.exp(-chi_c * e10) + a1h * np.exp(-chi_h * e10)
    m[0, 2] = a2c * np.exp(-chi_c * e20) + a2h * np.exp(-chi_h * e20)
    m[1, 0] = (a1c * math.exp(-bc * e10) * np.exp(chi_c * e10)
               + a1h * math.exp(-bh * e10) * np.exp(chi_h * e10))
    m[2, 0] = (a2c * math.exp(-bc * e20) * np.exp(chi_c * e20)
               + a2h * math.exp(-bh * e20) * np.exp(chi_h * e20))
    if not np.iscomplexobj(np.asarray(chi_c)) and not np.iscomplexobj(np.asarray(chi_h)):
        m = m.real
    return TiltedLiouvillian(chi_c=chi_c, chi_h=chi_h, matrix=m)


def variance_parts(params: EngineParams, core: StationaryCore | None = None) -> tuple[float, float, float, float]:
    """The four additive contributions to the power variance rate.

    Written so that the engine-window factor appears only through the
    combination power / (w2 - w1), which never degenerates to 0/0.

    The first three parts are even under exchanging the two dissipative
    transitions and their sum is already the full variance whenever the
    total rates coincide (g1 = g2).  The fourth part carries the entire
    odd sector.  Its bracket was obtained by solving the second-order
    perturbation problem of the tilted generator in closed form (trace-
    bordered population block after eliminating the coherence pair) and
    subtracting the even parts; the result was checked against the same
    construction in exact rational arithmetic.  The explicit (1/g1 - 1/g2)
    prefactor keeps it identically zero for symmetric rates.
    """
    core = solve(params) if core is None else core
    r, spc = core.rts, core.spc
    g1, g2, m1, m2 = r.g1, r.g2, r.g1m, r.g2m
    i1, i2 = 1.0 / g1, 1.0 / g2
    f = i1 + i2 - 4.0 / (g1 + g2) + 4.0 / core.g_eff
    d = core.w2 - core.w1
    b = core.b_norm
    e21 = spc.eps21
    p = core.power
    p_over_d = e21 * core.drive_weight / core.z_norm

    var1 = e21 * (core.w1 + core.w2) * p_over_d
    var2 = -((i1 + i2 + (i1 - i2) * d) / b + f) * p * p
    var3 = ((i1 - i2) ** 2 + (i1 + i2) * f * b) * p * p * p_over_d / e21

    g, big_g, de = core.g_mean, core.g_eff, core.detuning
    pg = g1 * g2
    cross_sum = g1 * m2 + g2 * m1
    cross_diff = g1 * m2 - g2 * m1
    even_blk = (pg * (3.0 * g * g - pg) + (g * g - pg) * cross_sum
                + pg * g * (m1 + m2))
    damp_blk = g * g * (2.0 * pg * (3.0 * g * g + pg)
                        + 2.0 * (2.0 * g * g + pg) * cross_sum
                        - g * (g1 - g2) * cross_diff)
    bracket = (2.0 * de * de * even_blk + damp_blk) / (g * g * big_g * b * pg * pg)
    var4 = bracket * (i1 - i2) * p ** 3 / e21
    return var1, var2, var3, var4


def power_variance(params: EngineParams, core: StationaryCore | None = None) -> float:
    """Long-time variance rate of the output power."""
    return sum(variance_parts(params, core))


def tur_product(params: EngineParams, core: StationaryCore | None = None) -> float:
    """Thermodynamic uncertainty product sigma_dot * var_power / power^2."""
    core = solve(params) if core is None else core
    sigma = entropy_production(params, core)
    var = power_variance(params, core)
    if core.power == 0.0:
        return math.inf if sigma * var > 0.0 else math.nan
    return sigma * var / (core.power * core.power)


def fcs_report(params: EngineParams, core: StationaryCore | None = None) -> FcsReport:
    """Assemble the fluctuation summary of one working point."""
    core = solve(params) if core is None else core
    v1, v2, v3, v4 = variance_parts(params, core)
    return FcsReport(sigma_dot=entropy_production(params, core),
                     var1=v1, var2=v2, var3=v3, var4=v4,
                     var_power=v1 + v2 + v3 + v4,
                     tur=tur_product(params, core))
