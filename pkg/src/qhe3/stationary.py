"""Exact stationary state and thermodynamics of the driven engine.

In the frame rotating with the drive the dressed-basis master equation closes
on five real variables

    v = (rho00, rho11, rho22, delta1, delta2)

where rho_kk are dressed populations and delta1 + i delta2 is the co-rotating
coherence between the two driven dressed levels.  The generator is constant
in time, so the stationary state solves a 5x5 linear system; it also has a
compact closed form, which is the fast path for sweeps.  Every call
cross-checks the closed form against the direct linear solve and raises
InvariantViolation on disagreement, so a transcription error cannot silently
corrupt a sweep.

Sign conventions: power > 0 means work is delivered to the drive, heat flux
> 0 means energy flows from a reservoir into the working medium.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dissipator import DissipatorRates, rates
from .errors import InvariantViolation, NotAnEngineError
from .model import EngineParams, SpectralData, spectrum

#: relative tolerance for the closed form vs. linear-solve cross-check
SOLVE_CHECK_RTOL = 1e-10

#: relative margin inside which a domain inequality counts as "boundary"
DOMAIN_MARGIN = 1e-12


@dataclass(frozen=True)
class StationaryState:
    """Stationary point of the rotating-frame master equation."""

    rho0: float     # ground population
    rho1: float     # lower dressed population
    rho2: float     # upper dressed population
    delta1: float   # co-rotating coherence, real part
    delta2: float   # co-rotating coherence, imaginary part

    @property
    def delta0(self) -> float:
        """Stationary value of the work-carrying coherence component."""
        return self.delta2

    def as_vector(self) -> np.ndarray:
        return np.array([self.rho0, self.rho1, self.rho2, self.delta1, self.delta2])


@dataclass(frozen=True)
class StationaryCore:
    """One fully solved working point; shared by the downstream modules."""

    params: EngineParams
    spc: SpectralData
    rts: DissipatorRates
    s_drive: float      # omega * sin(theta): drive-coherence coupling
    detuning: float     # eps21 - omega * cos(theta): rotating-frame detuning
    g_mean: float       # (g1 + g2) / 2: coherence damping rate
    g_eff: float        # g_mean + detuning^2 / g_mean: dressed damping
    drive_weight: float  # s_drive^2 / (2 g_eff)
    w1: float           # g1m / g1: local excitation ratio, lower transition
    w2: float           # g2m / g2: local excitation ratio, upper transition
    b_norm: float       # 1 + w1 + w2: population normalisation
    a_factor: float     # 1 + drive_weight (1/g1 + 1/g2)
    z_norm: float       # full normalisation of the stationary solution
    state: StationaryState
    power: float        # stationary output power
    p0_direct: float    # direct hot->cold transfer rate coefficient
    qdot_c: float       # stationary heat flux from the cold reservoir
    qdot_h: float       # stationary heat flux from the hot reservoir
    inv_eta_ssd: float  # heat per work in the leakage-free limit


def liouvillian(params: EngineParams, spc: SpectralData | None = None,
                rts: DissipatorRates | None = None) -> np.ndarray:
    """5x5 system matrix whose solution against (1,0,0,0,0) is stationary.

    Row 0 enforces unit trace; the remaining rows are the stationary
    conditions for (rho11, rho22, delta1, delta2).
    """
    m = generator(params, spc, rts).copy()
    m[0] = (1.0, 1.0, 1.0, 0.0, 0.0)
    return m


def generator(params: EngineParams, spc: SpectralData | None = None,
              rts: DissipatorRates | None = None) -> np.ndarray:
    """Time-independent generator of the rotating-frame master equation."""
    spc = spectrum(params) if spc is None else spc
    r = rates(params, spc) if rts is None else rts
    s = params.omega * math.sin(spc.theta)
    detuning = spc.eps21 - params.omega * math.cos(spc.theta)
    g = 0.5 * (r.g1 + r.g2)
    return np.array([
        [-(r.g1m + r.g2m), r.g1, r.g2, 0.0, 0.0],
        [r.g1m, -r.g1, 0.0, 0.0, -s],
        [r.g2m, 0.0, -r.g2, 0.0, s],
        [0.0, 0.0, 0.0, -g, -detuning],
        [0.0, 0.5 * s, -0.5 * s, detuning, -g],
    ])


def solve(params: EngineParams, check: bool = True) -> StationaryCore:
    """Solve one working point: closed forms plus runtime cross-check."""
    spc = spectrum(params)
    r = rates(params, spc)
    p = params

    s = p.omega * math.sin(spc.theta)
    detuning = spc.eps21 - p.omega * math.cos(spc.theta)
    g = 0.5 * (r.g1 + r.g2)
    g_eff = g + detuning * detuning / g
    u = s * s / (2.0 * g_eff)
    w1, w2 = r.g1m / r.g1, r.g2m / r.g2
    inv1, inv2 = 1.0 / r.g1, 1.0 / r.g2
    b = 1.0 + w1 + w2
    a = 1.0 + u * (inv1 + inv2)
    z = a * b + u * (inv1 - inv2) * (w2 - w1)

    rho0 = a / z
    delta2 = -(s / (2.0 * g_eff)) * (w2 - w1) / z
    delta1 = -(detuning / g) * delta2
    rho1 = (r.g1m * rho0 - s * delta2) / r.g1
    rho2 = (r.g2m * rho0 + s * delta2) / r.g2
    state = StationaryState(rho0, rho1, rho2, delta1, delta2)

    power = spc.eps21 * u * (w2 - w1) / z
    bc, bh = p.beta_c, p.beta_h
    p0 = (spc.eps10 * r.g1 * r.q1 * (1.0 - r.q1)
          * (math.exp(-bh * spc.eps10) - math.exp(-bc * spc.eps10))
          + spc.eps20 * r.g2 * r.q2 * (1.0 - r.q2)
          * (math.exp(-bh * spc.eps20) - math.exp(-bc * spc.eps20)))
    e10, e20, e21 = spc.eps10, spc.eps20, spc.eps21
    qdot_c = ((e20 / e21) * r.q2 - (e10 / e21) * (1.0 - r.q1)) * power - rho0 * p0
    qdot_h = ((e20 / e21) * (1.0 - r.q2) - (e10 / e21) * r.q1) * power + rho0 * p0
    inv_eta_ssd = (e20 * (1.0 - r.q2) - e10 * r.q1) / e21

    if check:
        m = generator(params, spc, r)
        m[0] = (1.0, 1.0, 1.0, 0.0, 0.0)
        direct = np.linalg.solve(m, np.array([1.0, 0.0, 0.0, 0.0, 0.0]))
        vec = state.as_vector()
        err = np.linalg.norm(direct - vec) / np.linalg.norm(vec)
        if err > SOLVE_CHECK_RTOL:
            raise InvariantViolation(
                f"closed-form stationary state deviates from linear solve by {err:.3e} relative")

    return StationaryCore(params=p, spc=spc, rts=r, s_drive=s, detuning=detuning,
                          g_mean=g, g_eff=g_eff, drive_weight=u, w1=w1, w2=w2,
                          b_norm=b, a_factor=a, z_norm=z, state=state, power=power,
                          p0_direct=p0, qdot_c=qdot_c, qdot_h=qdot_h,
                          inv_eta_ssd=inv_eta_ssd)


def stationary_state(params: EngineParams, check: bool = True) -> StationaryState:
    """Closed-form stationary state, cross-checked against the 5x5 solve."""
    return solve(params, check=check).state


def power(params: EngineParams) -> float:
    """Stationary output power (positive when the drive extracts work)."""
    return solve(params).power


def heat_fluxes(params: EngineParams) -> tuple[float, float]:
    """Stationary heat fluxes (qdot_c, qdot_h), positive into the medium."""
    core = solve(params)
    return core.qdot_c, core.qdot_h


@dataclass(frozen=True)
class ThermoReport:
    """Stationary thermodynamic summary of one working point."""

    power: float
    qdot_c: float
    qdot_h: float
    eta: float          # power / qdot_h; NaN outside qdot_h > 0
    eta_ssd: float      # efficiency in the leakage-free limit
    eta_carnot: float
    p0_direct: float
    rho0: float
    g_factor: float     # dressed coherence damping g_eff
    z_factor: float     # stationary normalisation z_norm
    t0: float           # drive period 2 pi / omega
    is_engine: bool


@dataclass(frozen=True)
class DomainVerdict:
    """Engine-domain classification with per-condition diagnostics.

    verdict is "in", "out" or "boundary"; a point is "boundary" when any of
    the defining strict inequalities sits within DOMAIN_MARGIN (relative) of
    zero.  The diagnostic flags restate the same window in equivalent forms:
    inversion of the local excitation ratios, the bare necessary condition on
    the temperature-weighted gaps, the leakage budget on (q1, q2), and the
    drive-parameter bounds implied by them.
    """

    verdict: str
    is_engine: bool
    failed: tuple[str, ...]
    cond_inversion: bool    # w2 > w1, equivalent to power > 0
    cond_necessary: bool    # beta_c * eps10 > beta_h * eps20
    cond_leakage: bool      # q1 / q10 + q2 / q20 < 1
    cond_drive_bounds: bool  # Hamiltonian-parameter form of the window


def _classify(value: float, scale: float) -> int:
    """Sign of ``value`` with a relative dead band: -1, 0 (boundary), +1."""
    if abs(value) <= DOMAIN_MARGIN * max(scale, 1e-300):
        return 0
    return 1 if value > 0.0 else -1


def engine_domain(params: EngineParams, core: StationaryCore | None = None) -> DomainVerdict:
    """Classify a working point against the engine conditions."""
    core = solve(params) if core is None else core
    spc, r, p = core.spc, core.rts, core.params

    p_scale = spc.eps21 * core.drive_weight * (core.w1 + core.w2) / core.z_norm
    e10, e20, e21 = spc.eps10, spc.eps20, spc.eps21
    q_scale = (e20 / e21 + e10 / e21) * abs(core.power) + core.state.rho0 * core.p0_direct

    sig_p = _classify(core.power, p_scale)
    sig_h = _classify(core.qdot_h, q_scale)
    sig_c = _classify(-core.qdot_c, q_scale)

    failed = []
    if sig_p < 0:
        failed.append("P<=0")
    if sig_h < 0:
        failed.append("Qh<=0")
    if sig_c < 0:
        failed.append("Qc>=0")
    if failed:
        verdict = "out"
    elif 0 in (sig_p, sig_h, sig_c):
        verdict = "boundary"
    else:
        verdict = "in"

    bc, bh = p.beta_c, p.beta_h
    window = math.exp(-bh * e20) - math.exp(-bc * e10)
    leak1 = r.q1 * (math.exp(-bh * e10) - math.exp(-bc * e10))
    leak2 = r.q2 * (math.exp(-bh * e20) - math.exp(-bc * e20))
    cond_necessary = window > 0.0
    cond_leakage = cond_necessary and (leak1 + leak2) < window

    # same window written on the drive parameters, in units of the lower gap
    w10, w20 = p.omega1 - p.omega0, p.omega2 - p.omega0
    x = w20 / w10
    tau = bh / bc  # 1 - Carnot efficiency
    lam_n = p.lam / w10
    cond_drive = (x * tau < 1.0) and (lam_n ** 2 * (1.0 + tau) ** 2 < (x - tau) * (1.0 - tau * x))

    return DomainVerdict(verdict=verdict, is_engine=(verdict == "in"), failed=tuple(failed),
                         cond_inversion=core.w2 > core.w1, cond_necessary=cond_necessary,
                         cond_leakage=cond_leakage, cond_drive_bounds=cond_drive)


def efficiency(params: EngineParams) -> tuple[float, float]:
    """(eta, eta_ssd) of an engine working point.

    Raises NotAnEngineError when no net heat is absorbed from the hot
    reservoir, where "work per absorbed heat" stops being meaningful.
    """
    core = solve(params)
    if core.qdot_h <= 0.0:
        raise NotAnEngineError(f"qdot_h = {core.qdot_h:.3e} <= 0: no heat intake to convert")
    eta_ssd = math.inf if core.inv_eta_ssd == 0.0 else 1.0 / core.inv_eta_ssd
    return core.power / core.qdot_h, eta_ssd


def thermo_report(params: EngineParams, core: StationaryCore | None = None) -> ThermoReport:
    """Assemble the stationary thermodynamics of one working point."""
    core = solve(params) if core is None else core
    verdict = engine_domain(params, core)
    eta = core.power / core.qdot_h if core.qdot_h > 0.0 else math.nan
    eta_ssd = math.inf if core.inv_eta_ssd == 0.0 else 1.0 / core.inv_eta_ssd
    return ThermoReport(power=core.power, qdot_c=core.qdot_c, qdot_h=core.qdot_h,
                        eta=eta, eta_ssd=eta_ssd,
                        eta_carnot=1.0 - core.params.beta_h / core.params.beta_c,
                        p0_direct=core.p0_direct, rho0=core.state.rho0,
                        g_factor=core.g_eff, z_factor=core.z_norm,
                        t0=2.0 * math.pi / core.params.omega,
                        is_engine=verdict.is_engine)


def optimal_frequency(params: EngineParams) -> float:
    """Drive frequency maximising the output power.

    The dressed gaps and effective rates do not depend on the drive
    frequency, so the optimum is explicit:
    (eps21^2 + (g1 + g2)^2 / 4) / (omega2 - omega1).  The same frequency
    maximises the efficiency whenever the direct-transfer term is active.
    """
    spc = spectrum(params)
    r = rates(params, spc)
    return (spc.eps21 ** 2 + 0.25 * (r.g1 + r.g2) ** 2) / (params.omega2 - params.omega1)
