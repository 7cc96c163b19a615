from __future__ import annotations

import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bellkit import polarization as pol

ABS_TOL = 1e-12
RT2 = 1 / math.sqrt(2)

X = pol.PhotonState(1.0, 0.0, 0.0, 0.0)
Y = pol.PhotonState(0.0, 0.0, 1.0, 0.0)
DIAG = pol.PhotonState(RT2, 0.0, RT2, 0.0)
ANTIDIAG = pol.PhotonState(RT2, 0.0, RT2, math.pi)
RCP = pol.PhotonState(RT2, 0.0, RT2, math.pi / 2)
LCP = pol.PhotonState(RT2, 0.0, RT2, -math.pi / 2)


@st.composite
def photon_states(draw):
    split = draw(st.floats(0.0, 1.0, allow_nan=False))
    phix = draw(st.floats(-math.pi, math.pi, allow_nan=False))
    phiy = draw(st.floats(-math.pi, math.pi, allow_nan=False))
    return pol.PhotonState(math.sqrt(split), phix, math.sqrt(1.0 - split), phiy)


def test_canonical_points_on_poincare_sphere():
    expected = {
        X: (1, 0, 0),
        Y: (-1, 0, 0),
        DIAG: (0, 1, 0),
        ANTIDIAG: (0, -1, 0),
        RCP: (0, 0, 1),
        LCP: (0, 0, -1),
    }
    for state, (s1, s2, s3) in expected.items():
        s = pol.stokes_from_state(state)
        assert abs(s.s0 - 1) < ABS_TOL
        assert abs(s.s1 - s1) < ABS_TOL
        assert abs(s.s2 - s2) < ABS_TOL
        assert abs(s.s3 - s3) < ABS_TOL


def test_stokes_quarter_wave_example():
    s = pol.stokes_from_state(pol.PhotonState(RT2, 0.0, RT2, math.pi / 4))
    assert abs(s.s1) < ABS_TOL
    assert abs(s.s2 - RT2) < ABS_TOL
    assert abs(s.s3 - RT2) < ABS_TOL


def test_ellipse_stokes_round_trip():
    e = pol.PolarizationEllipse(math.radians(30), 0.0)
    s = pol.ellipse_to_stokes(e)
    assert abs(s.s1 - math.cos(math.radians(60))) < ABS_TOL
    assert abs(s.s2 - math.sin(math.radians(60))) < ABS_TOL
    back = pol.stokes_to_ellipse(s)
    assert abs(back.rho - e.rho) < 1e-9
    assert abs(back.eta - e.eta) < 1e-9


@settings(deadline=None)
@given(
    st.floats(0.0, math.pi - 1e-9, allow_nan=False),
    # stay clear of the circular poles, where the orientation degenerates
    st.floats(-math.pi / 4 + 1e-4, math.pi / 4 - 1e-4, allow_nan=False),
)
def test_ellipse_round_trip_property(rho, eta):
    back = pol.stokes_to_ellipse(pol.ellipse_to_stokes(pol.PolarizationEllipse(rho, eta)))
    assert abs(back.eta - eta) < 1e-9
    # rho wraps mod pi
    assert min(abs(back.rho - rho), abs(back.rho - rho + math.pi), abs(back.rho - rho - math.pi)) < 1e-7


def test_orientation_at_circular_pole_is_zero():
    e = pol.stokes_to_ellipse(pol.stokes_from_state(RCP))
    assert e.rho == 0.0
    assert abs(e.eta - math.pi / 4) < ABS_TOL


def test_analyzer_transmission_values():
    assert abs(pol.analyzer_transmission(DIAG, math.pi / 4) - 1.0) < ABS_TOL
    assert abs(pol.analyzer_transmission(X, math.pi / 2)) < ABS_TOL
    # Malus at 60 degrees
    assert abs(pol.analyzer_transmission(X, math.pi / 3) - 0.25) < ABS_TOL


@settings(deadline=None)
@given(photon_states(), st.floats(-2 * math.pi, 2 * math.pi, allow_nan=False))
def test_analyzer_two_forms_agree(p, theta):
    direct = pol.analyzer_transmission(p, theta)
    via_stokes = pol.analyzer_transmission_stokes(p, theta)
    assert abs(direct - via_stokes) < ABS_TOL


def test_circular_decomposition_of_basis_states():
    cx = pol.to_circular(X)
    assert abs(cx.beta_rcp - RT2) < ABS_TOL and abs(cx.beta_lcp - RT2) < ABS_TOL
    cy = pol.to_circular(Y)
    assert abs(cy.beta_rcp + 1j * RT2) < ABS_TOL and abs(cy.beta_lcp - 1j * RT2) < ABS_TOL
    crcp = pol.to_circular(RCP)
    assert abs(abs(crcp.beta_rcp) - 1.0) < ABS_TOL and abs(crcp.beta_lcp) < ABS_TOL


@settings(deadline=None)
@given(photon_states())
def test_circular_round_trip_and_stokes_equivalence(p):
    c = pol.to_circular(p)
    back = pol.from_circular(c)
    assert abs(back.cx - p.cx) < 1e-9 and abs(back.cy - p.cy) < 1e-9
    s_lin = pol.stokes_from_state(p)
    s_circ = pol.stokes_from_circular(c)
    for a, b in zip(s_lin.as_tuple(), s_circ.as_tuple()):
        assert abs(a - b) < ABS_TOL


def test_stokes_from_circular_example():
    c = pol.CircularDecomposition(math.cos(math.radians(22.5)), math.sin(math.radians(22.5)))
    s = pol.stokes_from_circular(c)
    assert abs(s.s1 - RT2) < ABS_TOL
    assert abs(s.s2) < ABS_TOL
    assert abs(s.s3 - RT2) < ABS_TOL


def test_bloch_coords_of_y_and_poles():
    b = pol.bloch_coords(pol.to_circular(Y))
    assert abs(b.theta0 - math.pi / 2) < ABS_TOL
    assert abs(b.phi0 - math.pi) < ABS_TOL
    north = pol.bloch_coords(pol.to_circular(RCP))
    assert north.theta0 < 1e-7
    assert north.phi0 == 0.0
    south = pol.bloch_coords(pol.to_circular(LCP))
    assert abs(south.theta0 - math.pi) < 1e-7
    assert south.phi0 == 0.0


def test_frame_rotation_quarter_turn_moves_x_to_y():
    c = pol.rotate_photon_frame(pol.to_circular(X), math.pi / 2)
    assert abs(c.beta_rcp - 1j * RT2) < ABS_TOL
    assert abs(c.beta_lcp + 1j * RT2) < ABS_TOL
    back = pol.from_circular(c)
    assert abs(back.alpha_x) < ABS_TOL
    assert abs(back.alpha_y - 1.0) < ABS_TOL


@settings(deadline=None)
@given(photon_states(), st.floats(-2 * math.pi, 2 * math.pi, allow_nan=False))
def test_frame_rotation_preserves_s3_and_latitude(p, chi):
    before = pol.stokes_from_circular(pol.to_circular(p))
    after = pol.stokes_from_circular(pol.rotate_photon_frame(pol.to_circular(p), chi))
    assert abs(before.s3 - after.s3) < 1e-9
    r_before = math.hypot(before.s1, before.s2)
    r_after = math.hypot(after.s1, after.s2)
    assert abs(r_before - r_after) < 1e-9


def test_photon_state_guards():
    with pytest.raises(ValueError):
        pol.PhotonState(1.0, 0.0, 1.0, 0.0)
    with pytest.raises(ValueError):
        pol.PhotonState(-1.0, 0.0, 0.0, 0.0)
    with pytest.raises(ValueError):
        pol.StokesVector(1.0, 1.0, 1.0, 0.0)
    p = pol.PhotonState.from_amplitudes(-0.6, 0.8j)
    assert p.alpha_x == 0.6 and abs(p.phi_x - math.pi) < ABS_TOL
    assert p.alpha_y == 0.8 and abs(p.phi_y - math.pi / 2) < ABS_TOL
