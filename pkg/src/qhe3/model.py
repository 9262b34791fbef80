"""Driven three-level system with two thermal reservoirs.

The working medium has bare levels omega0 < omega1 < omega2.  A monochromatic
field of frequency omega and amplitude lam couples levels 1 and 2, so in the
bare basis

    H(t) = [[omega0, 0,                      0                 ],
            [0,      omega1,                 lam e^{+i omega t}],
            [0,      lam e^{-i omega t},     omega2            ]].

The quasienergies are time independent: level 0 stays put and the driven pair
splits symmetrically around (omega1 + omega2) / 2.  The dressing is captured
by a single mixing angle theta with tan(theta) = 2 lam / (omega2 - omega1),
taken on [0, pi/2) so that theta -> 0 recovers the undriven levels.

A cold reservoir couples through |0><1| and a hot one through |0><2|; their
spectral weights at the two dressed gaps are free inputs (see dissipator).
Everything downstream treats hbar = kB = 1 and is unit agnostic; the CLI
normalises all energies by the bare gap omega1 - omega0.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvariantViolation, ParameterError

#: relative tolerance for the closed-form vs. numerical eigenvalue cross-check
EIGEN_CHECK_RTOL = 1e-12


@dataclass(frozen=True)
class CouplingTable:
    """Reservoir spectral weights at the two dressed transition energies.

    Each entry is gamma_alpha evaluated at a positive transition energy; the
    negative-energy weights follow from detailed balance and are never stored.
    No functional form is assumed, so four independent non-negative numbers
    fully specify the coupling.
    """

    gamma_c_10: float  # cold weight at the lower dressed gap
    gamma_c_20: float  # cold weight at the upper dressed gap
    gamma_h_10: float  # hot weight at the lower dressed gap
    gamma_h_20: float  # hot weight at the upper dressed gap

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.gamma_c_10, self.gamma_c_20, self.gamma_h_10, self.gamma_h_20)


@dataclass(frozen=True)
class EngineParams:
    """Complete specification of one engine working point."""

    omega0: float
    omega1: float
    omega2: float
    lam: float      # drive amplitude
    omega: float    # drive frequency
    beta_c: float   # cold inverse temperature
    beta_h: float   # hot inverse temperature
    table: CouplingTable

    @classmethod
    def from_reduced(cls, omega20: float, lam: float, omega: float,
                     beta_c: float, beta_h: float, table: CouplingTable) -> "EngineParams":
        """Build a working point in units of the lower bare gap.

        ``omega20`` is the upper gap, ``lam`` and ``omega`` the drive
        amplitude and frequency, and the betas inverse temperatures, all
        expressed in units where omega1 - omega0 = 1 and omega0 = 0.
        """
        return cls(0.0, 1.0, float(omega20), float(lam), float(omega),
                   float(beta_c), float(beta_h), table)


def validate(params: EngineParams) -> list[str]:
    """Return a list of violated structural constraints (empty when valid).

    The drive bound lam^2 < omega10 * omega20 keeps the dressed level that
    descends from level 1 above the ground level, so the level ordering of
    the undriven system survives dressing.  Equal reservoir temperatures are
    allowed (the working point is then trivially outside the engine domain);
    beta_c < beta_h is not, by the cold/hot naming convention.
    """
    p = params
    bad: list[str] = []
    for name in ("omega0", "omega1", "omega2", "lam", "omega", "beta_c", "beta_h"):
        v = getattr(p, name)
        if not np.isfinite(v):
            bad.append(f"{name} must be finite")
    if bad:
        return bad
    if not (p.omega0 < p.omega1 < p.omega2):
        bad.append("level ordering omega0 < omega1 < omega2 violated")
    if p.lam < 0:
        bad.append("drive amplitude lam must be >= 0")
    else:
        w10, w20 = p.omega1 - p.omega0, p.omega2 - p.omega0
        if w10 > 0 and w20 > 0 and p.lam ** 2 >= w10 * w20:
            bad.append("drive amplitude too large: lam^2 must stay below omega10 * omega20")
    if not p.omega > 0:
        bad.append("drive frequency omega must be > 0")
    if not p.beta_h > 0:
        bad.append("beta_h must be > 0")
    if p.beta_c < p.beta_h:
        bad.append("beta_c must be >= beta_h (cold reservoir is the colder one)")
    if min(params.table.as_tuple()) < 0:
        bad.append("coupling table entries must be >= 0")
    if max(params.table.as_tuple()) <= 0:
        bad.append("coupling table must have at least one positive entry")
    return bad


def validated(params: EngineParams) -> EngineParams:
    """Raise ParameterError unless ``params`` is structurally valid."""
    bad = validate(params)
    if bad:
        raise ParameterError("; ".join(bad))
    return params


@dataclass(frozen=True)
class SpectralData:
    """Dressed spectrum of the driven Hamiltonian (time independent)."""

    eps0: float
    eps1: float
    eps2: float
    theta: float   # mixing angle on [0, pi/2)
    eps10: float
    eps20: float
    eps21: float


def hamiltonian(params: EngineParams, t: float) -> np.ndarray:
    """Bare-basis Hamiltonian matrix at time ``t``."""
    p = params
    drive = p.lam * np.exp(1j * p.omega * t)
    return np.array([
        [p.omega0, 0.0, 0.0],
        [0.0, p.omega1, drive],
        [0.0, np.conj(drive), p.omega2],
    ], dtype=complex)


def spectrum(params: EngineParams) -> SpectralData:
    """Dressed eigenvalues and mixing angle.

    Closed form: the driven 2x2 block has eigenvalues
    (omega1 + omega2)/2 -+ sqrt(((omega2 - omega1)/2)^2 + lam^2).  A direct
    numerical eigendecomposition of H(0) is the source of truth; the closed
    form is cross-checked against it on every call and an InvariantViolation
    is raised on disagreement.
    """
    p = validated(params)
    half_gap = 0.5 * (p.omega2 - p.omega1)
    split = np.hypot(half_gap, p.lam)
    mid = 0.5 * (p.omega1 + p.omega2)
    eps0, eps1, eps2 = p.omega0, mid - split, mid + split
    # branch [0, pi/2): lam >= 0 and omega2 > omega1; atan2(0, 0) pins theta = 0
    theta = np.arctan2(2.0 * p.lam, p.omega2 - p.omega1)

    numeric = np.linalg.eigvalsh(hamiltonian(params, 0.0))
    scale = max(abs(eps0), abs(eps1), abs(eps2), 1e-300)
    err = np.max(np.abs(numeric - np.array([eps0, eps1, eps2]))) / scale
    if err > EIGEN_CHECK_RTOL:
        raise InvariantViolation(
            f"closed-form spectrum deviates from direct eigendecomposition by {err:.3e} relative")
    return SpectralData(eps0, eps1, eps2, theta,
                        eps10=eps1 - eps0, eps20=eps2 - eps0, eps21=eps2 - eps1)


def instantaneous_eigenvectors(params: EngineParams, t: float) -> np.ndarray:
    """Orthonormal dressed eigenvectors at time ``t`` as matrix columns.

    Column k carries the dressed level of energy eps_k.  Level 0 keeps its
    bare ground state for all times; the driven pair rotates at the drive
    frequency.
    """
    spc = spectrum(params)
    c, s = np.cos(spc.theta / 2.0), np.sin(spc.theta / 2.0)
    phase = np.exp(1j * params.omega * t)
    v0 = np.array([1.0, 0.0, 0.0], dtype=complex)
    v1 = np.array([0.0, c, -np.conj(phase) * s], dtype=complex)
    v2 = np.array([0.0, phase * s, c], dtype=complex)
    return np.column_stack([v0, v1, v2])
