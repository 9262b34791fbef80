"""Transient relaxation toward the stationary working point.

In the rotating frame the master equation is linear and time independent on
nine real variables: the three dressed populations, the co-rotating
coherence between the driven dressed levels (two real components), and the
two coherences against the ground level (four real components).  The ground
coherences decouple from the thermodynamic block; they are carried along so
that an arbitrary bare-basis initial state can be propagated exactly.

Conversion helpers map between the nine rotating variables and the bare
3x3 density matrix at a given time, restoring the drive phases.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from .errors import ParameterError, StepSizeError
from .model import EngineParams, instantaneous_eigenvectors
from .stationary import StationaryCore, generator, solve

#: rk4 steps above this fraction of the fastest timescale are rejected
MAX_STEP_FRACTION = 0.1


def aux_block(params: EngineParams, core: StationaryCore | None = None) -> np.ndarray:
    """Complex 2x2 generator of the ground-level coherences.

    Acts on z = (<0|rho|e1>, e^{-i omega t} <0|rho|e2>); both components
    damp at half the total rate leaving their levels and mix through the
    drive.
    """
    core = solve(params, check=False) if core is None else core
    spc, r, omega = core.spc, core.rts, params.omega
    s2, c2 = math.sin(0.5 * spc.theta), math.cos(0.5 * spc.theta)
    kappa1 = 0.5 * (r.g1 + r.g1m + r.g2m)
    kappa2 = 0.5 * (r.g2 + r.g1m + r.g2m)
    d1 = spc.eps10 - omega * s2 * s2
    d2 = spc.eps20 + omega * s2 * s2 - omega
    k = omega * s2 * c2
    return np.array([[1j * d1 - kappa1, 1j * k],
                     [1j * k, 1j * d2 - kappa2]])


def _real_embedding(m: np.ndarray) -> np.ndarray:
    """2x2 complex matrix as a 4x4 real one on interleaved (re, im) pairs."""
    out = np.empty((4, 4))
    for i in range(2):
        for j in range(2):
            a, b = m[i, j].real, m[i, j].imag
            out[2 * i:2 * i + 2, 2 * j:2 * j + 2] = ((a, -b), (b, a))
    return out


def rotating_generator(params: EngineParams, core: StationaryCore | None = None) -> np.ndarray:
    """Full 9x9 real generator: thermodynamic block plus ground coherences."""
    core = solve(params, check=False) if core is None else core
    out = np.zeros((9, 9))
    out[:5, :5] = generator(params, core.spc, core.rts)
    out[5:, 5:] = _real_embedding(aux_block(params, core))
    return out


def vars_from_bare(params: EngineParams, rho: np.ndarray, t: float) -> np.ndarray:
    """Project a bare-basis density matrix onto the nine rotating variables."""
    v = instantaneous_eigenvectors(params, t)
    dressed = v.conj().T @ np.asarray(rho, dtype=complex) @ v
    phase = np.exp(-1j * params.omega * t)
    z12 = dressed[1, 2] * phase
    x1 = dressed[0, 1]
    y2 = dressed[0, 2] * phase
    return np.array([dressed[0, 0].real, dressed[1, 1].real, dressed[2, 2].real,
                     z12.real, z12.imag, x1.real, x1.imag, y2.real, y2.imag])


def bare_from_vars(params: EngineParams, vec: np.ndarray, t: float) -> np.ndarray:
    """Reassemble the bare-basis density matrix from the rotating variables."""
    p0, p1, p2, d1, d2, xr, xi, yr, yi = (float(c) for c in vec)
    phase = np.exp(1j * params.omega * t)
    z12 = phase * (d1 + 1j * d2)
    x1 = xr + 1j * xi
    y2 = phase * (yr + 1j * yi)
    dressed = np.array([[p0, x1, y2],
                        [np.conj(x1), p1, z12],
                        [np.conj(y2), np.conj(z12), p2]])
    v = instantaneous_eigenvectors(params, t)
    return v @ dressed @ v.conj().T


@dataclass(frozen=True)
class Trajectory:
    """Sampled relaxation run with instantaneous energy currents."""

    params: EngineParams
    times: np.ndarray    # (n,)
    states: np.ndarray   # (n, 5): populations and co-rotating coherence
    aux: np.ndarray      # (n, 2) complex: ground-level coherences
    wdot: np.ndarray     # (n,): instantaneous output power
    qdot_c: np.ndarray   # (n,): instantaneous cold heat flux
    qdot_h: np.ndarray   # (n,): instantaneous hot heat flux

    @property
    def aux_magnitudes(self) -> np.ndarray:
        return np.abs(self.aux)

    def bare_density(self, index: int) -> np.ndarray:
        """Bare-basis density matrix at the sampled time ``times[index]``."""
        vec = np.concatenate([self.states[index],
                              [self.aux[index, 0].real, self.aux[index, 0].imag,
                               self.aux[index, 1].real, self.aux[index, 1].imag]])
        return bare_from_vars(self.params, vec, float(self.times[index]))


def _observables(params: EngineParams, core: StationaryCore, states: np.ndarray):
    """Vectorised power and heat fluxes from the thermodynamic block."""
    spc, r = core.spc, core.rts
    a1c, a1h, a2c, a2h = r.channel_split()
    bc, bh = params.beta_c, params.beta_h
    up1c, up1h = a1c * math.exp(-bc * spc.eps10), a1h * math.exp(-bh * spc.eps10)
    up2c, up2h = a2c * math.exp(-bc * spc.eps20), a2h * math.exp(-bh * spc.eps20)
    p0, p1, p2 = states[:, 0], states[:, 1], states[:, 2]
    wdot = -2.0 * params.lam * params.omega * states[:, 4]
    qdot_c = -spc.eps10 * (a1c * p1 - up1c * p0) - spc.eps20 * (a2c * p2 - up2c * p0)
    qdot_h = -spc.eps10 * (a1h * p1 - up1h * p0) - spc.eps20 * (a2h * p2 - up2h * p0)
    return wdot, qdot_c, qdot_h


def _initial_vector(params: EngineParams, initial, core: StationaryCore) -> np.ndarray:
    if isinstance(initial, str):
        if initial == "ground":
            vec = np.zeros(9)
            vec[0] = 1.0
            return vec
        if initial == "mixed":
            vec = np.zeros(9)
            vec[:3] = 1.0 / 3.0
            return vec
        if initial == "stationary":
            vec = np.zeros(9)
            vec[:5] = core.state.as_vector()
            return vec
        raise ParameterError(f"unknown initial state {initial!r}; "
                             "use 'ground', 'mixed', 'stationary' or a vector")
    vec = np.asarray(initial, dtype=float)
    if vec.shape == (5,):
        vec = np.concatenate([vec, np.zeros(4)])
    if vec.shape != (9,):
        raise ParameterError("initial vector must have 5 or 9 components")
    if abs(vec[:3].sum() - 1.0) > 1e-9:
        raise ParameterError(f"initial populations sum to {vec[:3].sum():.6f}, expected 1")
    return vec


def integrate(params: EngineParams, initial="ground", t_end: float = 50.0,
              dt: float = 1e-3, method: str = "rk4", sample_every: int = 1) -> Trajectory:
    """Propagate the rotating-frame master equation on a fixed grid.

    method "rk4" uses the classic fixed-step rule and insists that dt stay
    below MAX_STEP_FRACTION of the fastest eigenvalue timescale; "expm"
    applies the exact matrix exponential per step and has no step limit.
    """
    if t_end <= 0.0 or dt <= 0.0:
        raise ParameterError("t_end and dt must be positive")
    if sample_every < 1:
        raise ParameterError("sample_every must be a positive integer")
    core = solve(params)
    gen = rotating_generator(params, core)

    n_steps = max(1, int(round(t_end / dt)))
    if method == "rk4":
        fastest = float(np.max(np.abs(np.linalg.eigvals(gen))))
        if fastest > 0.0 and dt > MAX_STEP_FRACTION / fastest:
            raise StepSizeError(
                f"dt = {dt:g} exceeds {MAX_STEP_FRACTION:g} / max|eigenvalue| = "
                f"{MAX_STEP_FRACTION / fastest:g}; shrink dt or use method='expm'")
        def step(v):
            k1 = gen @ v
            k2 = gen @ (v + 0.5 * dt * k1)
            k3 = gen @ (v + 0.5 * dt * k2)
            k4 = gen @ (v + dt * k3)
            return v + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    elif method == "expm":
        prop = expm(gen * dt)

        def step(v):
            return prop @ v
    else:
        raise ParameterError(f"unknown method {method!r}; use 'rk4' or 'expm'")

    vec = _initial_vector(params, initial, core)
    n_samples = n_steps // sample_every + 1
    samples = np.empty((n_samples, 9))
    times = np.empty(n_samples)
    samples[0], times[0] = vec, 0.0
    row = 1
    for k in range(1, n_steps + 1):
        vec = step(vec)
        if k % sample_every == 0:
            samples[row], times[row] = vec, k * dt
            row += 1
    samples, times = samples[:row], times[:row]

    states = samples[:, :5]
    aux = samples[:, 5::2] + 1j * samples[:, 6::2]
    wdot, qdot_c, qdot_h = _observables(params, core, states)
    return Trajectory(params=params, times=times, states=states, aux=aux,
                      wdot=wdot, qdot_c=qdot_c, qdot_h=qdot_h)
