"""Second-moment dynamics of the linearized magnon-mechanical system.

The Gaussian fluctuation dynamics closes on six second moments. With the
conjugate pairs eliminated, the state is ten real numbers packed in the
fixed order

    [ <beta+ beta>, <c+ c>,
      Re<beta c>,  Im<beta c>,
      Re<beta c+>, Im<beta c+>,
      Re<beta beta>, Im<beta beta>,
      Re<c c>,     Im<c c> ]

(beta is the squeezed-frame magnon mode; for the untransformed system the
same packing holds with b in place of beta). The dynamics is affine,
xdot = D x + p, and the steady state is the dense linear solve -D^{-1} p,
guarded by an explicit eigenvalue stability check.

Two builders are provided: ``build_system`` from a squeezed frame (beam-
splitter coupling, squeezed thermal bath) and ``build_original_system``
from the untransformed linearized parameters (explicit squeeze term,
plain thermal bath). They describe the same physics; agreement of their
steady phonon numbers is the strongest internal consistency check in the
package.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .bogoliubov import BogoliubovFrame, build_frame
from .constants import SystemParams
from .design import LinearizedParams
from .errors import (
    InstabilityError,
    InvalidParameterError,
    NoSteadyStateError,
    StepSizeError,
)

STATE_DIM = 10


@dataclass(frozen=True)
class MomentState:
    """Second moments of the magnon-like and mechanical fluctuations."""

    n_magnon: float
    n_phonon: float
    bc: complex
    bc_dag: complex
    bb: complex
    cc: complex

    def as_vector(self) -> np.ndarray:
        return np.array([
            self.n_magnon, self.n_phonon,
            self.bc.real, self.bc.imag,
            self.bc_dag.real, self.bc_dag.imag,
            self.bb.real, self.bb.imag,
            self.cc.real, self.cc.imag,
        ])

    @classmethod
    def from_vector(cls, x: np.ndarray) -> "MomentState":
        if len(x) != STATE_DIM:
            raise InvalidParameterError(f"state vector must have {STATE_DIM} entries")
        return cls(float(x[0]), float(x[1]),
                   complex(x[2], x[3]), complex(x[4], x[5]),
                   complex(x[6], x[7]), complex(x[8], x[9]))


@dataclass(frozen=True)
class LinearSystem:
    """Affine moment dynamics xdot = drift @ x + pump."""

    drift: np.ndarray
    pump: np.ndarray

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvals(self.drift)

    def is_stable(self) -> bool:
        return bool(self.eigenvalues().real.max() < 0.0)


def _coupled_block(detuning: float, omega_c: float, kappa_b: float,
                   kappa_c: float, coupling: float, n_bath: float,
                   n_bar_c: float, m_bath: complex) -> LinearSystem:
    """Moment system for a beam-splitter coupling at the given detuning,
    with bath occupancies (n_bath, n_bar_c) and anomalous drive m_bath."""
    gc = coupling
    gamma = 0.5 * (kappa_b + kappa_c)
    w_sum = detuning + omega_c
    w_dif = detuning - omega_c
    d = np.zeros((STATE_DIM, STATE_DIM))
    p = np.zeros(STATE_DIM)

    # <beta+ beta>
    d[0, 0] = -kappa_b
    d[0, 3] = -2.0 * gc
    d[0, 5] = -2.0 * gc
    p[0] = kappa_b * n_bath
    # <c+ c>
    d[1, 1] = -kappa_c
    d[1, 3] = -2.0 * gc
    d[1, 5] = 2.0 * gc
    p[1] = kappa_c * n_bar_c
    # <beta c>
    d[2, 2] = -gamma
    d[2, 3] = w_sum
    d[2, 7] = gc
    d[2, 9] = gc
    d[3, 2] = -w_sum
    d[3, 3] = -gamma
    d[3, 0] = -gc
    d[3, 1] = -gc
    d[3, 6] = -gc
    d[3, 8] = -gc
    p[3] = -gc
    # <beta c+>
    d[4, 4] = -gamma
    d[4, 5] = w_dif
    d[4, 7] = -gc
    d[4, 9] = -gc
    d[5, 4] = -w_dif
    d[5, 5] = -gamma
    d[5, 0] = gc
    d[5, 1] = -gc
    d[5, 6] = gc
    d[5, 8] = -gc
    # <beta beta>
    d[6, 6] = -kappa_b
    d[6, 7] = 2.0 * detuning
    d[6, 3] = 2.0 * gc
    d[6, 5] = 2.0 * gc
    p[6] = kappa_b * m_bath.real
    d[7, 6] = -2.0 * detuning
    d[7, 7] = -kappa_b
    d[7, 2] = -2.0 * gc
    d[7, 4] = -2.0 * gc
    p[7] = -kappa_b * m_bath.imag
    # <c c>
    d[8, 8] = -kappa_c
    d[8, 9] = 2.0 * omega_c
    d[8, 3] = 2.0 * gc
    d[8, 5] = -2.0 * gc
    d[9, 8] = -2.0 * omega_c
    d[9, 9] = -kappa_c
    d[9, 2] = -2.0 * gc
    d[9, 4] = -2.0 * gc
    return LinearSystem(d, p)


def build_system(frame: BogoliubovFrame, params: SystemParams,
                 n_bar_c: float) -> LinearSystem:
    """Squeezed-frame moment system with the squeezed thermal bath."""
    return _coupled_block(frame.detuning, params.omega_c, params.kappa_b,
                          params.kappa_c, frame.coupling, frame.n_bath,
                          n_bar_c, frame.m_bath)


def build_original_system(lin: LinearizedParams, params: SystemParams,
                          n_bar_b: float, n_bar_c: float) -> LinearSystem:
    """Untransformed moment system with the explicit squeeze term.

    Same packing as ``build_system``; the squeeze rate couples moments to
    their conjugates and drives <bb> directly.
    """
    sys0 = _coupled_block(lin.detuning, params.omega_c, params.kappa_b,
                          params.kappa_c, lin.coupling, n_bar_b, n_bar_c, 0j)
    d = sys0.drift.copy()
    p = sys0.pump.copy()
    lam = lin.squeeze
    ct = math.cos(lin.squeeze_phase)
    st = math.sin(lin.squeeze_phase)

    # n_b gains -2 lam Im(e^{-i theta} <bb>)
    d[0, 6] += 2.0 * lam * st
    d[0, 7] += -2.0 * lam * ct
    # <bc> gains -i lam e^{i theta} conj(<bc+>)
    d[2, 4] += lam * st
    d[2, 5] += -lam * ct
    d[3, 4] += -lam * ct
    d[3, 5] += -lam * st
    # <bc+> gains -i lam e^{i theta} conj(<bc>)
    d[4, 2] += lam * st
    d[4, 3] += -lam * ct
    d[5, 2] += -lam * ct
    d[5, 3] += -lam * st
    # <bb> gains -i lam e^{i theta} (2 n_b + 1)
    d[6, 0] += 2.0 * lam * st
    d[7, 0] += -2.0 * lam * ct
    p[6] += lam * st
    p[7] += -lam * ct
    return LinearSystem(d, p)


def steady_state(system: LinearSystem,
                 residual_tol: float = 1e-10) -> MomentState:
    """Steady state of the affine dynamics by a dense linear solve.

    Raises ``NoSteadyStateError`` for a singular drift and
    ``InstabilityError`` (naming the offending eigenvalue) when any
    eigenvalue has a non-negative real part.
    """
    eigs = system.eigenvalues()
    idx = int(np.argmax(eigs.real))
    if eigs[idx].real >= 0.0:
        raise InstabilityError(
            f"drift matrix is not Hurwitz: eigenvalue {eigs[idx]:.6g} has "
            "non-negative real part", eigenvalue=complex(eigs[idx]))
    try:
        x = np.linalg.solve(system.drift, -system.pump)
    except np.linalg.LinAlgError as exc:
        raise NoSteadyStateError("drift matrix is singular") from exc
    res = np.abs(system.drift @ x + system.pump).max()
    scale = max(np.abs(system.pump).max(), 1e-300)
    if res > residual_tol * scale:
        raise NoSteadyStateError(
            f"steady-state residual {res:.3e} exceeds {residual_tol:.1e} "
            "of the pump scale")
    return MomentState.from_vector(x)


def integrate(system: LinearSystem, x0: MomentState, t_end: float,
              dt: float) -> tuple[np.ndarray, np.ndarray]:
    """Fixed-step fourth-order Runge-Kutta integration of the moments.

    Returns (times, states) with states of shape (n_steps + 1, 10). The
    step must satisfy dt * ||D||_2 <= 2.5, inside the stability region of
    the classical Runge-Kutta method on the negative real axis.
    """
    if dt <= 0 or t_end <= 0:
        raise InvalidParameterError("dt and t_end must be positive")
    norm = float(np.linalg.norm(system.drift, 2))
    if dt * norm > 2.5:
        raise StepSizeError(
            f"dt * ||D|| = {dt * norm:.3g} exceeds the stability bound 2.5; "
            f"reduce dt below {2.5 / norm:.3g}")
    n_steps = int(math.ceil(t_end / dt))
    d, p = system.drift, system.pump

    def rhs(x):
        return d @ x + p

    times = np.empty(n_steps + 1)
    states = np.empty((n_steps + 1, STATE_DIM))
    x = x0.as_vector().astype(float)
    times[0] = 0.0
    states[0] = x
    for i in range(n_steps):
        k1 = rhs(x)
        k2 = rhs(x + 0.5 * dt * k1)
        k3 = rhs(x + 0.5 * dt * k2)
        k4 = rhs(x + dt * k3)
        x = x + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        times[i + 1] = (i + 1) * dt
        states[i + 1] = x
    return times, states


def original_frame_steady(lin: LinearizedParams, params: SystemParams,
                          n_bar_b: float, n_bar_c: float) -> float:
    """Steady phonon number from the untransformed moment system.

    Independent of the squeezed-frame pipeline; equality of the two routes
    is the frame-equivalence oracle.
    """
    system = build_original_system(lin, params, n_bar_b, n_bar_c)
    return steady_state(system).n_phonon


def squeezed_frame_steady(lin: LinearizedParams, params: SystemParams,
                          n_bar_b: float, n_bar_c: float) -> float:
    """Steady phonon number via the Bogoliubov frame."""
    frame = build_frame(lin, n_bar_b)
    system = build_system(frame, params, n_bar_c)
    return steady_state(system).n_phonon


def to_original_frame(frame: BogoliubovFrame, state: MomentState) -> MomentState:
    """Map squeezed-frame moments back to the untransformed magnon mode.

    Inverse of the Bogoliubov transformation: b = u beta + v beta^dag with
    u = e^{-i phi} cosh r and v = -e^{i(theta + 2 phi)} e^{-i phi}... the
    coefficients below are written directly in terms of the stored frame
    phases. The mechanical moments are untouched.
    """
    ch, sh = math.cosh(frame.r), math.sinh(frame.r)
    # beta = e^{i phi}(b ch + e^{i theta} b+ sh) inverts to
    # b = e^{-i phi} beta ch - e^{i theta} e^{i phi} beta+ sh; theta is
    # recovered from the m_bath phase: arg m = -(theta + 2 phi)
    if frame.r == 0.0:
        return state
    theta = -cmath.phase(frame.m_bath) - 2.0 * frame.phi if frame.m_bath != 0 \
        else -2.0 * frame.phi
    u = cmath.exp(-1j * frame.phi) * ch
    v = -cmath.exp(1j * (theta + frame.phi)) * sh
    n1 = state.n_magnon
    bb = state.bb
    n_b = ((abs(u)**2 + abs(v)**2) * n1 + abs(v)**2
           + 2.0 * (u * np.conj(v) * bb).real)
    bb_b = u * u * bb + v * v * np.conj(bb) + u * v * (2.0 * n1 + 1.0)
    bc_b = u * state.bc + v * np.conj(state.bc_dag)
    bc_dag_b = u * state.bc_dag + v * np.conj(state.bc)
    return MomentState(float(n_b), state.n_phonon, complex(bc_b),
                       complex(bc_dag_b), complex(bb_b), state.cc)


_SYMPLECTIC = np.array([
    [0.0, 1.0, 0.0, 0.0],
    [-1.0, 0.0, 0.0, 0.0],
    [0.0, 0.0, 0.0, 1.0],
    [0.0, 0.0, -1.0, 0.0],
])


def covariance_matrix(state: MomentState) -> np.ndarray:
    """Symmetrized quadrature covariance (q_b, p_b, q_c, p_c), vacuum = 1/2."""
    n1, n2 = state.n_magnon, state.n_phonon
    bb, cc = state.bb, state.cc
    p, q = state.bc, state.bc_dag
    v = np.empty((4, 4))
    v[0, 0] = n1 + 0.5 + bb.real
    v[1, 1] = n1 + 0.5 - bb.real
    v[0, 1] = v[1, 0] = bb.imag
    v[2, 2] = n2 + 0.5 + cc.real
    v[3, 3] = n2 + 0.5 - cc.real
    v[2, 3] = v[3, 2] = cc.imag
    v[0, 2] = v[2, 0] = (p + q).real
    v[0, 3] = v[3, 0] = (p - q).imag
    v[1, 2] = v[2, 1] = (p + q).imag
    v[1, 3] = v[3, 1] = (q - p).real
    return v


def physicality_margin(state: MomentState) -> float:
    """Smallest eigenvalue of V + i Omega / 2.

    Non-negative (up to roundoff) for any state allowed by the bosonic
    uncertainty relation; negative values flag an unphysical moment set.
    """
    v = covariance_matrix(state).astype(complex)
    herm = v + 0.5j * _SYMPLECTIC
    return float(np.linalg.eigvalsh(herm).min())


def is_physical(state: MomentState, tol: float = 1e-9) -> bool:
    scale = max(1.0, abs(state.n_magnon), abs(state.n_phonon))
    return physicality_margin(state) > -tol * scale
