"""Splitting the stationary heat currents by their microscopic origin.

Each reservoir's heat flux separates into a part carried by the populations
of the stationary density matrix in its own eigenbasis ("diagonal") and a
remainder carried by the stationary coherences ("nondiagonal").  The split is
evaluated in closed form; an explicit construction from the instantaneous
eigenbasis of rho(t) is kept in the test suite as an independent oracle.

The diagonal parts of the two reservoirs cancel exactly, so only the
nondiagonal parts sustain the engine's net heat-to-work conversion.  Their
signs classify the working point into flow patterns:

  pattern-ii : both nondiagonal flows feed the medium (qnd_h > 0, qnd_c > 0)
  pattern-i  : diagonal intake assists, nondiagonal cold flow is negative
  pattern-iii: nondiagonal hot flow is negative, cold one positive
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import BoundaryError
from .model import EngineParams
from .stationary import StationaryCore, solve

#: relative tolerance below which a heat flow counts as zero for patterns
PATTERN_TOL = 1e-9

#: relative size of the leakage-budget denominator treated as a pole
POLE_TOL = 1e-12


@dataclass(frozen=True)
class DensityEigensystem:
    """Eigendecomposition of the stationary density matrix.

    The eigenvalues are constant in time; the driven pair of eigenvectors
    precesses rigidly at the drive frequency, parametrised by a polar angle
    big_theta and a phase phi(t) = omega t + phi0.
    """

    p0: float
    p1: float
    p2: float
    big_theta: float
    phi0: float

    def eigenvalues(self) -> tuple[float, float, float]:
        return self.p0, self.p1, self.p2


@dataclass(frozen=True)
class DecompositionReport:
    """Population/coherence split of the stationary heat currents."""

    qd_h: float       # population-carried hot flux
    qd_c: float       # population-carried cold flux (= -qd_h exactly)
    qnd_h: float      # coherence-carried hot flux
    qnd_c: float      # coherence-carried cold flux
    eta_nd: float     # power / qnd_h: conversion efficiency of the coherent part
    eta_d: float      # population channel converts no work: identically zero
    g1_aux: float     # drive-dressed damping weight, lower transition
    g2_aux: float     # drive-dressed damping weight, upper transition
    pattern: str


def density_eigensystem(params: EngineParams, core: StationaryCore | None = None) -> DensityEigensystem:
    """Time-independent eigenvalues and orientation of the stationary state."""
    core = solve(params) if core is None else core
    st = core.state
    mean = 0.5 * (st.rho1 + st.rho2)
    half_gap = 0.5 * (st.rho2 - st.rho1)
    coh = math.hypot(st.delta1, st.delta2)
    radius = math.hypot(half_gap, coh)
    big_theta = math.atan2(coh, half_gap)
    phi0 = math.atan2(st.delta2, st.delta1)
    return DensityEigensystem(p0=st.rho0, p1=mean - radius, p2=mean + radius,
                              big_theta=big_theta, phi0=phi0)


def _aux_weights(core: StationaryCore) -> tuple[float, float]:
    """Damping weights entering the coherent-part efficiency."""
    lam, omega = core.params.lam, core.params.omega
    e21 = core.spc.eps21
    extra = 4.0 * lam * lam * omega * omega / (e21 * e21)
    return core.g_eff + extra / core.rts.g1, core.g_eff + extra / core.rts.g2


def inverse_eta_nd(params: EngineParams, core: StationaryCore | None = None) -> float:
    """Heat per work through the coherence channel, 1 / eta_nd.

    Diverges (sign change through a pole) on the line where the leakage
    budget is exactly exhausted; BoundaryError marks that line.
    """
    core = solve(params) if core is None else core
    r, spc, p = core.rts, core.spc, core.params
    bc, bh = p.beta_c, p.beta_h
    window = math.exp(-bh * spc.eps20) - math.exp(-bc * spc.eps10)
    leak1 = r.q1 * (math.exp(-bh * spc.eps10) - math.exp(-bc * spc.eps10))
    leak2 = r.q2 * (math.exp(-bh * spc.eps20) - math.exp(-bc * spc.eps20))
    # the window divides both the leakage ratios and their budget, so it
    # cancels; this form stays finite when the window itself closes
    den = window - leak1 - leak2
    if abs(den) <= POLE_TOL * (abs(window) + leak1 + leak2):
        raise BoundaryError("coherent-part efficiency pole: leakage budget exactly exhausted")
    g1a, g2a = _aux_weights(core)
    norm = r.g1 * g1a + r.g2 * g2a
    base = (r.g1 * r.q1 * g1a + r.g2 * (1.0 - r.q2) * g2a) / norm
    corr = ((-r.g1 * (1.0 - r.q1) * leak1 + r.g2 * (1.0 - r.q2) * leak2) / den
            * (g1a + g2a) / norm)
    return base + corr


def classify_flow_pattern(qd_h: float, qnd_h: float, qnd_c: float, scale: float) -> str:
    """Sign-pattern label for the split heat flows.

    ``scale`` sets the magnitude against which a flow counts as zero.
    """
    tol = PATTERN_TOL * max(scale, 1e-300)
    flows = (qd_h, qnd_h, qnd_c)
    if any(abs(f) <= tol for f in flows):
        return "boundary"
    if qnd_h > 0.0 and qnd_c > 0.0:
        return "pattern-ii"
    if qd_h > 0.0 and qnd_h > 0.0 and qnd_c < 0.0:
        return "pattern-i"
    if qd_h > 0.0 and qnd_h < 0.0 and qnd_c > 0.0:
        return "pattern-iii"
    return "other"


def decompose_heat(params: EngineParams, core: StationaryCore | None = None) -> DecompositionReport:
    """Closed-form population/coherence split of both heat currents."""
    core = solve(params) if core is None else core
    inv_nd = inverse_eta_nd(params, core)
    qd_h = (core.inv_eta_ssd - inv_nd) * core.power + core.state.rho0 * core.p0_direct
    qd_c = -qd_h
    qnd_h = core.qdot_h - qd_h
    qnd_c = core.qdot_c - qd_c
    eta_nd = math.inf if inv_nd == 0.0 else 1.0 / inv_nd
    g1a, g2a = _aux_weights(core)
    scale = abs(core.qdot_h) + abs(core.qdot_c) + core.state.rho0 * core.p0_direct
    pattern = classify_flow_pattern(qd_h, qnd_h, qnd_c, scale)
    return DecompositionReport(qd_h=qd_h, qd_c=qd_c, qnd_h=qnd_h, qnd_c=qnd_c,
                               eta_nd=eta_nd, eta_d=0.0, g1_aux=g1a, g2_aux=g2a,
                               pattern=pattern)
