import math

import pytest
from hypothesis import HealthCheck, settings, strategies as st

import qhe3 as q

settings.register_profile("suite", deadline=None, max_examples=50,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("suite")


def as_args(params):
    """Unpack an EngineParams into the flat tuple the oracles take."""
    return (params.omega0, params.omega1, params.omega2, params.lam,
            params.omega, params.beta_c, params.beta_h,
            params.table.as_tuple())


def at_optimal_frequency(omega20, lam, beta_c, beta_h, table):
    """Working point at the power-maximising drive frequency."""
    probe = q.EngineParams.from_reduced(omega20, lam, 1.0, beta_c, beta_h, table)
    return q.EngineParams.from_reduced(omega20, lam, q.optimal_frequency(probe),
                                       beta_c, beta_h, table)


@st.composite
def engine_params(draw, schemes=("resonant", "intermediate", "uniform"),
                  lam_min=0.01, allow_custom=False):
    """Structurally valid working points across schemes and temperatures."""
    omega20 = draw(st.floats(1.1, 4.8))
    lam = draw(st.floats(lam_min, 0.93 * math.sqrt(omega20)))
    beta_c = draw(st.floats(0.3, 7.0))
    beta_h = beta_c * draw(st.floats(0.05, 0.95))
    omega = draw(st.floats(0.05, 25.0))
    if allow_custom and draw(st.booleans()):
        weights = [draw(st.floats(0.05, 3.0)) for _ in range(4)]
        table = q.CouplingTable(*weights)
    else:
        table = q.build_table(draw(st.sampled_from(schemes)),
                              gamma=draw(st.floats(0.1, 3.5)),
                              ratio=draw(st.floats(0.05, 0.95)))
    return q.EngineParams.from_reduced(omega20, lam, omega, beta_c, beta_h, table)


@pytest.fixture
def anchor_point():
    """Resonant working point with a comfortable engine margin."""
    return at_optimal_frequency(2.5, 0.5, 5.0, 1.0, q.build_table("resonant", 2.0))


@pytest.fixture
def uniform_point():
    return at_optimal_frequency(2.5, 0.5, 5.0, 1.0, q.build_table("uniform", 2.0))


@pytest.fixture
def custom_point():
    """Asymmetric coupling table, so g1 != g2 effects are exercised."""
    return at_optimal_frequency(2.5, 0.5, 5.0, 1.0, q.CouplingTable(2.0, 0.3, 0.7, 1.1))
