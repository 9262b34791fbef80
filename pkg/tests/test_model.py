import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

import qhe3 as q

from conftest import engine_params


def test_from_reduced_pins_lower_gap():
    p = q.EngineParams.from_reduced(2.0, 0.3, 1.5, 5.0, 1.0, q.build_table("uniform"))
    assert p.omega0 == 0.0 and p.omega1 == 1.0 and p.omega2 == 2.0


@given(engine_params(allow_custom=True))
def test_spectrum_matches_direct_diagonalisation(p):
    spc = q.spectrum(p)
    numeric = np.linalg.eigvalsh(q.hamiltonian(p, 0.0))
    assert np.allclose(numeric, [spc.eps0, spc.eps1, spc.eps2], rtol=1e-12, atol=1e-12)
    assert 0.0 <= spc.theta < math.pi / 2
    assert spc.eps10 > 0 and spc.eps21 > 0
    assert spc.eps20 == pytest.approx(spc.eps10 + spc.eps21)


def test_zero_drive_keeps_bare_levels():
    p = q.EngineParams.from_reduced(2.0, 0.0, 1.5, 5.0, 1.0, q.build_table("uniform"))
    spc = q.spectrum(p)
    assert spc.theta == 0.0
    assert spc.eps1 == pytest.approx(1.0, abs=1e-15)
    assert spc.eps2 == pytest.approx(2.0, abs=1e-15)


@given(engine_params(allow_custom=True), st.floats(0.0, 20.0))
def test_eigenvectors_diagonalise_hamiltonian(p, t):
    spc = q.spectrum(p)
    v = q.instantaneous_eigenvectors(p, t)
    assert np.allclose(v.conj().T @ v, np.eye(3), atol=1e-14)
    h = q.hamiltonian(p, t)
    assert np.allclose(h @ v, v @ np.diag([spc.eps0, spc.eps1, spc.eps2]), atol=1e-12)


@given(engine_params(), st.floats(0.0, 20.0))
def test_hamiltonian_is_hermitian(p, t):
    h = q.hamiltonian(p, t)
    assert np.allclose(h, h.conj().T)


def test_validate_passes_equal_temperatures():
    p = q.EngineParams.from_reduced(2.0, 0.3, 1.5, 2.0, 2.0, q.build_table("uniform"))
    assert q.validate(p) == []


@pytest.mark.parametrize("kwargs, fragment", [
    (dict(omega20=0.8), "ordering"),
    (dict(lam=-0.1), ">= 0"),
    (dict(lam=1.5), "too large"),
    (dict(omega=0.0), "omega must be > 0"),
    (dict(omega=-2.0), "omega must be > 0"),
    (dict(beta_h=0.0), "beta_h"),
    (dict(beta_c=0.5), "beta_c must be >="),
    (dict(omega20=math.inf), "finite"),
    (dict(lam=math.nan), "finite"),
])
def test_validated_rejects_bad_parameters(kwargs, fragment):
    base = dict(omega20=2.0, lam=0.3, omega=1.5, beta_c=5.0, beta_h=1.0)
    base.update(kwargs)
    p = q.EngineParams.from_reduced(base["omega20"], base["lam"], base["omega"],
                                    base["beta_c"], base["beta_h"],
                                    q.build_table("uniform"))
    with pytest.raises(q.ParameterError, match=fragment):
        q.validated(p)


def test_validated_rejects_bad_tables():
    negative = q.CouplingTable(1.0, -0.1, 1.0, 1.0)
    p = q.EngineParams.from_reduced(2.0, 0.3, 1.5, 5.0, 1.0, negative)
    with pytest.raises(q.ParameterError, match=">= 0"):
        q.validated(p)
    empty = q.CouplingTable(0.0, 0.0, 0.0, 0.0)
    p = q.EngineParams.from_reduced(2.0, 0.3, 1.5, 5.0, 1.0, empty)
    with pytest.raises(q.ParameterError, match="positive"):
        q.validated(p)


def test_drive_bound_is_strict():
    # lam^2 == omega10 * omega20 collapses eps1 onto the ground level
    lam = math.sqrt(2.0)
    p = q.EngineParams.from_reduced(2.0, lam, 1.5, 5.0, 1.0, q.build_table("uniform"))
    with pytest.raises(q.ParameterError):
        q.validated(p)
