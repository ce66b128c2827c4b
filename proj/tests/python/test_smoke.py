import math

import numpy as np
import pytest

import graphent as ge

OMEGA = ge.thz_to_omega(15.0)


def reference_env(vd=0.0):
    return ge.Environment(4.0, 4.0, mu_c_ev=0.1, tau_ps=0.35, vd_over_vf=vd)


def test_vacuum_wavelength():
    assert ge.vacuum_wavelength(15.0) == pytest.approx(19.986e-6, rel=1e-4)


def test_zero_drift_conductivity_is_local():
    sheet = ge.GrapheneParams(0.1, 0.35, 0.0)
    assert ge.doppler_conductivity(OMEGA, 3e7, sheet) == ge.local_conductivity(OMEGA, sheet)


def test_reciprocal_plasmon_wavelength():
    q = ge.solve_spp(0.0, OMEGA, reference_env())
    assert 2 * math.pi / q.real == pytest.approx(0.106e-6, rel=0.05)
    assert ge.spp_wavelength(OMEGA, reference_env()) == pytest.approx(2 * math.pi / q.real)


def test_bessel_and_double_integral_agree():
    lam = 0.106e-6
    a = ge.scattered_gzz(OMEGA, reference_env(), lam, 0.3, 0.5 * lam)
    b = ge.scattered_gzz(OMEGA, reference_env(), lam, 0.0, 0.5 * lam, bessel=True)
    assert abs(a - b) / abs(b) < 1e-6


def test_couplings_are_normalised():
    gamma, g = ge.couplings(OMEGA, ge.Environment(), 1e-6, 2e-6, 0.0)
    assert gamma.shape == (2, 2)
    assert gamma[0, 0] == 1.0
    assert gamma[0, 1] == pytest.approx(gamma[1, 0])
    assert g[0, 0] == 0.0


def test_dark_state_limit():
    states = ge.evolve(ge.DynamicsParams(gamma12=1.0, gamma21=1.0), [0.0, 50.0])
    assert len(states) == 2
    assert np.trace(states[1]).real == pytest.approx(1.0)
    assert ge.concurrence(states[0]) == 0.0
    assert ge.concurrence(states[1]) == pytest.approx(0.5, abs=1e-6)


def test_driven_steady_state():
    rho = ge.steady_state(ge.DynamicsParams(omega1=0.5))
    assert np.trace(rho).real == pytest.approx(1.0)


def test_vacuum_angle_sweep_is_flat():
    out = ge.run_sweep("angle", ge.Environment(), grid=[0.0, 90.0, 180.0])
    c = out["columns"]["concurrence_max"]
    assert max(c) - min(c) < 1e-6
    assert out["metadata"]["case"] == "homogeneous"
    assert out["csv"].startswith("theta_deg,")


def test_errors_map_to_python_exceptions():
    with pytest.raises(ValueError):
        ge.vacuum_wavelength(-1.0)
    with pytest.raises(ValueError):
        ge.run_sweep("bogus", ge.Environment())
    with pytest.raises(RuntimeError):
        ge.solve_spp(0.0, OMEGA, reference_env(-0.5))
