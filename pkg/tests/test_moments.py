"""Second-moment dynamics: steady states, integration, frame equivalence."""

import math
from dataclasses import replace

import numpy as np
import pytest

from kerrcool.bogoliubov import build_frame, identity_frame, optimal_phases
from kerrcool.constants import SystemParams, thermal_occupation
from kerrcool.design import LinearizedParams
from kerrcool.errors import InstabilityError, StepSizeError
from kerrcool.moments import (
    MomentState,
    build_original_system,
    build_system,
    covariance_matrix,
    integrate,
    is_physical,
    original_frame_steady,
    physicality_margin,
    steady_state,
    to_original_frame,
)

TWO_PI = 2 * math.pi
WC = TWO_PI * 50e3
N_B = thermal_occupation(TWO_PI * 30e9, 0.5)
N_C = thermal_occupation(WC, 0.5)


def make_params(kappa_b, kappa_c=1e-9 * WC, temperature=0.5):
    return SystemParams(omega_a=TWO_PI * 30e9, omega_b=TWO_PI * 30e9,
                        omega_c=WC, kappa_a=kappa_b, kappa_b=kappa_b,
                        kappa_c=kappa_c, g=0.0, kerr=0.0,
                        temperature=temperature)


def make_frame(detuning_big, kappa_b, g_cal, squeeze=None, n_bar_b=N_B):
    lam = kappa_b / 2 if squeeze is None else squeeze
    theta, _, mu = optimal_phases(detuning_big, kappa_b)
    lin = LinearizedParams(detuning=math.hypot(detuning_big, lam),
                           coupling=g_cal / mu, squeeze=lam,
                           squeeze_phase=theta)
    return build_frame(lin, n_bar_b), lin


class TestDecoupledFixedPoint:
    def test_zero_coupling_analytic_steady(self):
        frame, _ = make_frame(0.4 * WC, 2 * WC, g_cal=0.0)
        params = make_params(2 * WC)
        state = steady_state(build_system(frame, params, N_C))
        assert state.n_magnon == pytest.approx(frame.n_bath, rel=1e-12)
        assert state.n_phonon == pytest.approx(N_C, rel=1e-12)
        expected_bb = (params.kappa_b * np.conj(frame.m_bath)
                       / (params.kappa_b + 2j * frame.detuning))
        assert state.bb == pytest.approx(expected_bb, rel=1e-12)
        assert state.cc == 0 and state.bc == 0 and state.bc_dag == 0

    def test_thermal_fixed_point_from_any_start(self):
        frame = identity_frame(0.5 * WC, 0.0, n_bath=0.3)
        params = make_params(2 * WC, kappa_c=0.2 * WC)
        system = build_system(frame, params, 4.0)
        x0 = MomentState(7.0, 9.0, 1 + 1j, 2 - 1j, 0.5j, -0.25)
        slowest = abs(system.eigenvalues().real.max())
        t_end = 60.0 / slowest
        dt = 2.0 / np.linalg.norm(system.drift, 2)
        _, states = integrate(system, x0, t_end, dt)
        final = MomentState.from_vector(states[-1])
        assert final.n_magnon == pytest.approx(0.3, abs=1e-8)
        assert final.n_phonon == pytest.approx(4.0, rel=1e-8)
        assert abs(final.bb) < 1e-8 and abs(final.cc) < 1e-8

    def test_conjugate_closure_against_complex_oracle(self):
        # the packed real system must reproduce the six complex moment
        # derivatives written out directly (and hence their conjugates)
        frame, _ = make_frame(0.3 * WC, 3 * WC, g_cal=0.25 * WC)
        params = make_params(3 * WC)
        system = build_system(frame, params, N_C)
        rng = np.random.default_rng(0)
        x = rng.normal(size=10)
        state = MomentState.from_vector(x)
        n1, n2 = state.n_magnon, state.n_phonon
        p, q, r, s = state.bc, state.bc_dag, state.bb, state.cc
        gc, det = frame.coupling, frame.detuning
        kb, kc, wc = params.kappa_b, params.kappa_c, params.omega_c
        gamma = (kb + kc) / 2
        d_n1 = kb * (frame.n_bath - n1) + 1j * gc * (p + q - np.conj(p) - np.conj(q))
        d_n2 = kc * (N_C - n2) + 1j * gc * (p + np.conj(q) - np.conj(p) - q)
        d_p = -(1j * (det + wc) + gamma) * p - 1j * gc * (r + n1 + s + n2 + 1)
        d_q = -(1j * (det - wc) + gamma) * q + 1j * gc * (r + n1 - np.conj(s) - n2)
        d_r = (kb * np.conj(frame.m_bath) - (kb + 2j * det) * r
               - 2j * gc * (p + q))
        d_s = -(kc + 2j * wc) * s - 2j * gc * (p + np.conj(q))
        oracle = np.array([d_n1.real, d_n2.real, d_p.real, d_p.imag,
                           d_q.real, d_q.imag, d_r.real, d_r.imag,
                           d_s.real, d_s.imag])
        np.testing.assert_allclose(system.drift @ x + system.pump, oracle,
                                   rtol=1e-12, atol=1e-9)

    def test_mirror_symmetry(self):
        # conjugating m while reversing the detuning, mechanical frequency,
        # and coupling sign mirrors the flow onto flipped imaginary parts
        from kerrcool.moments import _coupled_block

        frame, _ = make_frame(0.3 * WC, 3 * WC, g_cal=0.25 * WC)
        params = make_params(3 * WC)
        sys_m = build_system(frame, params, N_C)
        sys_mirror = _coupled_block(-frame.detuning, -params.omega_c,
                                    params.kappa_b, params.kappa_c,
                                    -frame.coupling, frame.n_bath, N_C,
                                    np.conj(frame.m_bath))
        flip = np.diag([1, 1, 1, -1, 1, -1, 1, -1, 1, -1]).astype(float)
        rng = np.random.default_rng(0)
        x = rng.normal(size=10)
        lhs = flip @ (sys_m.drift @ x + sys_m.pump)
        rhs = sys_mirror.drift @ (flip @ x) + sys_mirror.pump
        np.testing.assert_allclose(lhs, rhs, atol=1e-9 * np.abs(lhs).max())


class TestSteadyState:
    def test_matches_time_integration(self):
        frame, _ = make_frame(0.5 * WC, 2 * WC, g_cal=WC / 5)
        params = make_params(2 * WC, kappa_c=1e-3 * WC)
        system = build_system(frame, params, 50.0)
        target = steady_state(system)
        slowest = abs(max(system.eigenvalues().real))
        dt = 2.0 / np.linalg.norm(system.drift, 2)
        _, states = integrate(system, MomentState(0, 0, 0, 0, 0, 0),
                              50.0 / slowest, dt)
        np.testing.assert_allclose(states[-1], target.as_vector(),
                                   rtol=1e-6, atol=1e-9)

    def test_constant_from_steady_start(self):
        frame, _ = make_frame(0.5 * WC, 2 * WC, g_cal=WC / 5)
        params = make_params(2 * WC, kappa_c=1e-3 * WC)
        system = build_system(frame, params, 50.0)
        x_ss = steady_state(system)
        dt = 1.0 / np.linalg.norm(system.drift, 2)
        _, states = integrate(system, x_ss, 200 * dt, dt)
        np.testing.assert_allclose(states[-1], x_ss.as_vector(), rtol=1e-9,
                                   atol=1e-12 * max(1.0, x_ss.n_phonon))

    def test_relaxation_closed_form(self):
        # decoupled magnon relaxes as n_bath (1 - exp(-kappa_b t))
        frame = identity_frame(0.5 * WC, 0.0, n_bath=2.5)
        params = make_params(2 * WC, kappa_c=0.1 * WC)
        system = build_system(frame, params, 1.0)
        dt = 0.005 / params.kappa_b
        times, states = integrate(system, MomentState(0, 0, 0, 0, 0, 0),
                                  1.5 / params.kappa_b, dt)
        expected = 2.5 * (1 - np.exp(-params.kappa_b * times))
        np.testing.assert_allclose(states[:, 0], expected, rtol=1e-7,
                                   atol=1e-10)

    def test_step_size_guard(self):
        frame, _ = make_frame(0.5 * WC, 2 * WC, g_cal=WC / 5)
        params = make_params(2 * WC)
        system = build_system(frame, params, N_C)
        with pytest.raises(StepSizeError):
            integrate(system, MomentState(0, 0, 0, 0, 0, 0), 1.0,
                      10.0 / np.linalg.norm(system.drift, 2))

    def test_instability_reported_with_eigenvalue(self):
        # strong coupling on the two-mode-squeezing side destabilizes
        frame = identity_frame(0.02 * WC, 0.9 * WC, n_bath=N_B)
        params = make_params(0.05 * WC, kappa_c=1e-9 * WC)
        system = build_system(frame, params, N_C)
        with pytest.raises(InstabilityError) as err:
            steady_state(system)
        assert err.value.eigenvalue.real >= 0


class TestFrameEquivalence:
    def test_random_points(self):
        rng = np.random.default_rng(42)
        params_cache = {}
        checked = 0
        while checked < 25:
            kappa_b = rng.uniform(1, 10) * WC
            detuning_prime = rng.uniform(0.2, 3.0) * WC
            lam = rng.uniform(0.0, 0.9) * detuning_prime
            theta = rng.uniform(0, TWO_PI)
            coupling = rng.uniform(0.01, 0.5) * WC
            lin = LinearizedParams(detuning=detuning_prime, coupling=coupling,
                                   squeeze=lam, squeeze_phase=theta)
            params = params_cache.setdefault(kappa_b, make_params(kappa_b))
            frame = build_frame(lin, N_B)
            bogo = build_system(frame, params, N_C)
            orig = build_original_system(lin, params, N_B, N_C)
            if not (bogo.is_stable() and orig.is_stable()):
                continue
            nc_b = steady_state(bogo).n_phonon
            nc_o = steady_state(orig).n_phonon
            assert nc_b == pytest.approx(nc_o, rel=1e-10)
            checked += 1

    def test_identity_at_zero_squeeze(self):
        lin = LinearizedParams(detuning=0.8 * WC, coupling=0.2 * WC,
                               squeeze=0.0, squeeze_phase=0.0)
        params = make_params(2 * WC)
        nc_orig = original_frame_steady(lin, params, N_B, N_C)
        frame = build_frame(lin, N_B)
        nc_bogo = steady_state(build_system(frame, params, N_C)).n_phonon
        assert nc_bogo == pytest.approx(nc_orig, rel=1e-12)

    def test_full_moment_map_back(self):
        # inverse Bogoliubov map reproduces all untransformed moments
        lin = LinearizedParams(detuning=1.4 * WC, coupling=0.15 * WC,
                               squeeze=0.8 * WC, squeeze_phase=-math.pi / 2)
        params = make_params(2.5 * WC)
        frame = build_frame(lin, N_B)
        bogo_state = steady_state(build_system(frame, params, N_C))
        mapped = to_original_frame(frame, bogo_state)
        direct = steady_state(build_original_system(lin, params, N_B, N_C))
        np.testing.assert_allclose(mapped.as_vector(), direct.as_vector(),
                                   rtol=1e-8, atol=1e-10)


class TestPhysicality:
    def test_vacuum_covariance(self):
        vac = MomentState(0, 0, 0, 0, 0, 0)
        np.testing.assert_allclose(covariance_matrix(vac), np.eye(4) / 2)
        assert physicality_margin(vac) == pytest.approx(0.0, abs=1e-12)

    def test_steady_states_physical(self):
        frame, _ = make_frame(0.1 * WC, 2 * WC, g_cal=WC / 5)
        params = make_params(2 * WC)
        state = steady_state(build_system(frame, params, N_C))
        assert is_physical(state)

    def test_corrupted_bath_flagged(self):
        frame, _ = make_frame(0.1 * WC, 2 * WC, g_cal=WC / 5)
        params = make_params(2 * WC)
        bad = replace(frame, m_bath=10 * frame.m_bath)
        state = steady_state(build_system(bad, params, N_C))
        assert not is_physical(state)


class TestEnhancementOrdering:
    def test_squeezed_below_plain_on_grid(self):
        params_by_kappa = {}
        for kappa_factor in (2, 6, 10):
            kappa_b = kappa_factor * WC
            params = params_by_kappa.setdefault(kappa_b, make_params(kappa_b))
            for det in (0.1 * WC, 0.5 * WC, WC):
                frame, _ = make_frame(det, kappa_b, g_cal=WC / 5)
                nc_sq = steady_state(build_system(frame, params, N_C)).n_phonon
                plain = identity_frame(det, WC / 5, N_B)
                nc_plain = steady_state(
                    build_system(plain, params, N_C)).n_phonon
                assert nc_sq < nc_plain
