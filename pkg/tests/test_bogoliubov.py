"""Squeezed-frame construction and the optimal-phase closed forms."""

import cmath
import math

import numpy as np
import pytest

from kerrcool.bogoliubov import (
    build_frame,
    identity_frame,
    mu_identity_residuals,
    optimal_phases,
    phase_condition_residual,
)
from kerrcool.design import LinearizedParams
from kerrcool.errors import FrameUndefinedError, InvalidParameterError

WC = 2 * math.pi * 50e3


def lin(detuning, squeeze, phase=-math.pi / 2, coupling=0.0):
    return LinearizedParams(detuning=detuning, coupling=coupling,
                            squeeze=squeeze, squeeze_phase=phase)


class TestBuildFrame:
    def test_no_squeeze_identity(self):
        frame = build_frame(lin(WC, 0.0, coupling=0.3 * WC), n_bar_b=0.06)
        assert frame.r == 0.0
        assert frame.mu == pytest.approx(1.0)
        assert frame.detuning == pytest.approx(WC)
        assert frame.n_bath == pytest.approx(0.06)
        assert frame.m_bath == 0
        assert frame.coupling == pytest.approx(0.3 * WC)

    def test_mu_closed_form_point(self):
        # detuning_B = omega_c, kappa_b = 2 omega_c, squeeze = kappa_b / 2
        lam = WC
        frame = build_frame(lin(math.hypot(WC, lam), lam), n_bar_b=0.06)
        assert frame.detuning == pytest.approx(WC, rel=1e-12)
        assert frame.mu == pytest.approx(2 ** 0.25, rel=1e-12)

    def test_hyperbolic_identity(self):
        frame = build_frame(lin(2.3 * WC, 1.7 * WC, phase=0.9), n_bar_b=0.2)
        c2 = math.cosh(2 * frame.r)
        s2 = math.sinh(2 * frame.r)
        assert c2 * c2 - s2 * s2 == pytest.approx(1.0, abs=1e-12)

    def test_vacuum_bath_saturates_physicality(self):
        frame = build_frame(lin(2.0 * WC, 1.2 * WC, phase=1.3), n_bar_b=0.0)
        sh, ch = math.sinh(frame.r), math.cosh(frame.r)
        assert frame.n_bath == pytest.approx(sh * sh, rel=1e-12)
        assert abs(frame.m_bath) == pytest.approx(sh * ch, rel=1e-12)
        assert abs(frame.m_bath) ** 2 == pytest.approx(
            frame.n_bath * (frame.n_bath + 1), rel=1e-10)

    def test_thermal_bath_physicality_strict(self):
        frame = build_frame(lin(2.0 * WC, 1.2 * WC, phase=1.3), n_bar_b=0.5)
        assert abs(frame.m_bath) ** 2 < frame.n_bath * (frame.n_bath + 1)

    def test_mu_real_positive_for_random_phases(self):
        rng = np.random.default_rng(11)
        for _ in range(50):
            theta = rng.uniform(-math.pi, math.pi)
            lam = rng.uniform(0, 0.95) * 2 * WC
            frame = build_frame(lin(2 * WC, lam, phase=theta), n_bar_b=0.1)
            # mu is |cosh r - e^{-i theta} sinh r| by construction
            z = math.cosh(frame.r) - cmath.exp(-1j * theta) * math.sinh(frame.r)
            assert frame.mu == pytest.approx(abs(z), rel=1e-12)
            assert frame.mu > 0
            assert -math.pi / 2 < frame.phi <= math.pi / 2

    def test_frame_undefined_at_boundary(self):
        with pytest.raises(FrameUndefinedError):
            build_frame(lin(WC, WC), n_bar_b=0.06)
        with pytest.raises(FrameUndefinedError):
            build_frame(lin(WC, 1.5 * WC), n_bar_b=0.06)

    def test_invalid_inputs(self):
        with pytest.raises(InvalidParameterError):
            lin(WC, -0.1 * WC)
        with pytest.raises(InvalidParameterError):
            build_frame(lin(WC, 0.5 * WC), n_bar_b=-1.0)


class TestOptimalPhases:
    def test_reference_point(self):
        # detuning = omega_c, kappa_b = 2 omega_c: 2 phi = -pi/4
        theta, phi, mu = optimal_phases(WC, 2 * WC)
        assert theta == pytest.approx(-math.pi / 2)
        assert 2 * phi == pytest.approx(-math.pi / 4, rel=1e-12)
        assert mu == pytest.approx(2 ** 0.25, rel=1e-12)

    def test_lossless_limit(self):
        theta, phi, mu = optimal_phases(WC, 1e-9 * WC)
        assert theta == pytest.approx(-math.pi / 2)
        assert phi == pytest.approx(0.0, abs=1e-9)
        assert mu == pytest.approx(1.0, rel=1e-9)

    def test_mu_above_unity(self):
        for kappa in np.geomspace(1e-3, 10, 40) * WC:
            _, _, mu = optimal_phases(WC, kappa)
            assert mu > 1.0

    def test_phase_sum_condition(self):
        rng = np.random.default_rng(3)
        for _ in range(40):
            det = rng.uniform(0.05, 3) * WC
            kappa = rng.uniform(0.2, 10) * WC
            theta, phi, _ = optimal_phases(det, kappa)
            assert phase_condition_residual(theta, phi, det, kappa) < 1e-12

    def test_phase_sum_trig_forms(self):
        rng = np.random.default_rng(4)
        for _ in range(40):
            det = rng.uniform(0.05, 3) * WC
            kappa = rng.uniform(0.2, 10) * WC
            theta, phi, _ = optimal_phases(det, kappa)
            root = math.sqrt(kappa**2 + 4 * det**2)
            assert math.sin(theta + 2 * phi) == pytest.approx(-2 * det / root,
                                                              abs=1e-12)
            assert math.cos(theta + 2 * phi) == pytest.approx(-kappa / root,
                                                              abs=1e-12)

    def test_mu_identities(self):
        # the defining real/imaginary constraints hold at the optimum,
        # where the squeeze rate is kappa_b / 2
        rng = np.random.default_rng(5)
        for _ in range(40):
            det = rng.uniform(0.05, 3) * WC
            kappa = rng.uniform(0.2, 10) * WC
            theta, phi, mu = optimal_phases(det, kappa)
            d_musq, d_imag = mu_identity_residuals(theta, phi, mu,
                                                   kappa / 2, det)
            assert abs(d_musq) < 1e-10
            assert abs(d_imag) < 1e-10

    def test_matches_frame_construction_at_optimum(self):
        # at the optimal squeeze rate, the frame phase forced by a real mu
        # coincides with the closed-form optimal phase
        det, kappa = 0.7 * WC, 3.1 * WC
        theta, phi, mu = optimal_phases(det, kappa)
        frame = build_frame(lin(math.hypot(det, kappa / 2), kappa / 2,
                                phase=theta), n_bar_b=0.0)
        assert frame.phi == pytest.approx(phi, abs=1e-12)
        assert frame.mu == pytest.approx(mu, rel=1e-12)

    def test_invalid(self):
        with pytest.raises(InvalidParameterError):
            optimal_phases(0.0, WC)
        with pytest.raises(InvalidParameterError):
            optimal_phases(WC, 0.0)


def test_identity_frame_record():
    frame = identity_frame(WC, 0.2 * WC, 0.06)
    assert frame.r == 0 and frame.mu == 1.0 and frame.m_bath == 0
