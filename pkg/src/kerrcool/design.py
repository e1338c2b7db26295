"""Classical steady-state amplitudes and drive design.

The displaced-frame steady state of the driven three-mode system is a set
of five coupled complex equations for the cavity amplitude A0, the two
magnon tone amplitudes B+/B-, and the two mechanical sidebands C+/C-.
This module solves them in both directions:

* ``inverse_design`` starts from a target linearized operating point
  (enhanced coupling G, squeeze rate lambda, squeeze phase theta) and
  produces the drive amplitudes and powers that realize it, in closed form.
* ``forward_solve`` starts from given drives and finds the amplitudes by
  damped Newton iteration with continuation in the Kerr coefficient.

The Kerr cubic admits multiple steady-state branches at strong two-tone
driving. The default forward solve tracks the branch continuously
connected to the zero-Kerr solution; pass ``initial`` to select another
branch (e.g. the designed one).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constants import SystemParams
from .errors import (
    ConvergenceError,
    DesignSingularityError,
    InvalidParameterError,
    NoCouplingError,
    NoSqueezingError,
)


@dataclass(frozen=True)
class DriveConfig:
    """Drive amplitudes (rad/s) and detunings (rad/s).

    ``delta_d`` is half the splitting of the two magnon tones; ``delta_a``
    and ``delta_b`` are the cavity and magnon detunings from the cavity
    drive frequency.
    """

    eps_a: complex
    eps_plus: complex
    eps_minus: complex
    delta_a: float
    delta_b: float
    delta_d: float


@dataclass(frozen=True)
class SteadyAmplitudes:
    """Classical amplitudes: DC cavity field and the +/- oscillating tones
    of the magnon and mechanical modes."""

    a0: complex
    b_plus: complex
    b_minus: complex
    c_plus: complex
    c_minus: complex

    def as_array(self) -> np.ndarray:
        return np.array([self.a0, self.b_plus, self.b_minus,
                         self.c_plus, self.c_minus], dtype=complex)

    @classmethod
    def from_array(cls, z: np.ndarray) -> "SteadyAmplitudes":
        return cls(complex(z[0]), complex(z[1]), complex(z[2]),
                   complex(z[3]), complex(z[4]))


@dataclass(frozen=True)
class LinearizedParams:
    """Effective parameters of the linearized fluctuation dynamics.

    detuning      effective magnon detuning including the Kerr shift, rad/s
    coupling      enhanced magnon-mechanical coupling G = g |A0|, rad/s
    squeeze       degenerate squeeze rate lambda = |k B+ B-|, rad/s
    squeeze_phase phase theta of the squeeze term, radians
    rotation      phase rotated out of A0 to make the coupling real
    """

    detuning: float
    coupling: float
    squeeze: float
    squeeze_phase: float
    rotation: float = 0.0

    def __post_init__(self):
        if self.squeeze < 0:
            raise InvalidParameterError("squeeze rate must be non-negative")


@dataclass(frozen=True)
class DriveDesign:
    """Drive configuration together with the input powers that realize it."""

    drives: DriveConfig
    power_a: float
    power_plus: float
    power_minus: float

    @property
    def powers_watt(self) -> dict:
        return {"P_a": self.power_a, "P_plus": self.power_plus,
                "P_minus": self.power_minus}


def steady_residuals(params: SystemParams, drives: DriveConfig,
                     amps: SteadyAmplitudes) -> np.ndarray:
    """Residuals of the five steady-state amplitude equations."""
    a0, bp, bm, cp, cm = amps.as_array()
    g, k = params.g, params.kerr
    f1 = ((1j * drives.delta_a + params.kappa_a / 2) * a0
          + 1j * g * (bm * (cp + np.conj(cm)) + bp * (cm + np.conj(cp)))
          - drives.eps_a)
    f2p = ((1j * (drives.delta_b - drives.delta_d) + params.kappa_b / 2) * bp
           + 1j * g * a0 * (cp + np.conj(cm))
           + 0.5j * k * bp * (abs(bp)**2 + 2 * abs(bm)**2)
           - drives.eps_plus)
    f2m = ((1j * (drives.delta_b + drives.delta_d) + params.kappa_b / 2) * bm
           + 1j * g * a0 * (cm + np.conj(cp))
           + 0.5j * k * bm * (abs(bm)**2 + 2 * abs(bp)**2)
           - drives.eps_minus)
    f3p = ((1j * (params.omega_c - drives.delta_d) + params.kappa_c / 2) * cp
           + 1j * g * (np.conj(a0) * bp + a0 * np.conj(bm)))
    f3m = ((1j * (params.omega_c + drives.delta_d) + params.kappa_c / 2) * cm
           + 1j * g * (np.conj(a0) * bm + a0 * np.conj(bp)))
    return np.array([f1, f2p, f2m, f3p, f3m])


def relative_residual(params: SystemParams, drives: DriveConfig,
                      amps: SteadyAmplitudes) -> float:
    """Max residual normalized by the drive/decay scale."""
    scale = max(abs(drives.eps_a), abs(drives.eps_plus),
                abs(drives.eps_minus), params.kappa_b)
    res = np.abs(steady_residuals(params, drives, amps)).max()
    return float(res / scale)


def drive_powers(params: SystemParams, drives: DriveConfig) -> DriveDesign:
    """Input powers from |E_a| = sqrt(P_a kappa_a / hbar omega_a) and
    |E_pm| = sqrt(P_pm kappa_b / hbar omega_b), inverted for P."""
    from .constants import DEFAULT_CONSTANTS

    hbar = DEFAULT_CONSTANTS.hbar
    p_a = abs(drives.eps_a)**2 * hbar * params.omega_a / params.kappa_a
    p_p = abs(drives.eps_plus)**2 * hbar * params.omega_b / params.kappa_b
    p_m = abs(drives.eps_minus)**2 * hbar * params.omega_b / params.kappa_b
    return DriveDesign(drives, p_a, p_p, p_m)


def inverse_design(params: SystemParams, target: LinearizedParams,
                   delta_d: float, delta_a: float = 0.0,
                   residual_tol: float = 1e-10) -> tuple[SteadyAmplitudes, DriveDesign]:
    """Closed-form drive design realizing a target linearized operating point.

    Fixes the tone amplitudes at |B-| = |B+| = sqrt(lambda/|k|) with a
    quarter-wave relative phase so that k B+ B- = lambda e^{-i pi/2}, sets
    A0 = G/g real, evaluates the mechanical sidebands from their linear
    response, and back-substitutes for the drive amplitudes. No iteration.

    Raises
    ------
    NoSqueezingError   if the Kerr coefficient vanishes.
    NoCouplingError    if g = 0.
    DesignSingularityError
        if a mechanical sideband is driven exactly on resonance with no
        damping to regularize it.
    """
    g, k = params.g, params.kerr
    if k == 0.0:
        raise NoSqueezingError("self-Kerr coefficient is zero: no squeezing "
                               "strength can be generated")
    if g == 0.0:
        raise NoCouplingError("bare coupling g = 0: no operating point exists")
    if target.squeeze <= 0:
        raise InvalidParameterError("inverse design requires squeeze > 0")

    beta = math.sqrt(target.squeeze / abs(k))
    b_minus = complex(beta)
    # the sign of the quarter-wave phase follows the sign of k so that the
    # squeeze phase is always -pi/2
    b_plus = 1j * math.copysign(1.0, -k) * beta
    a0 = complex(target.coupling / g)

    kerr_shift = k * (abs(b_plus)**2 + abs(b_minus)**2)
    delta_b = target.detuning - kerr_shift

    den_p = 1j * (params.omega_c - delta_d) + params.kappa_c / 2
    den_m = 1j * (params.omega_c + delta_d) + params.kappa_c / 2
    if den_p == 0 or den_m == 0:
        raise DesignSingularityError(
            "drive splitting resonant with the undamped mechanical mode "
            f"(omega_c = {params.omega_c}, delta_d = {delta_d}, kappa_c = "
            f"{params.kappa_c})")
    c_plus = -1j * g * (np.conj(a0) * b_plus + a0 * np.conj(b_minus)) / den_p
    c_minus = -1j * g * (np.conj(a0) * b_minus + a0 * np.conj(b_plus)) / den_m

    eps_p = ((1j * (delta_b - delta_d) + params.kappa_b / 2) * b_plus
             + 1j * g * a0 * (c_plus + np.conj(c_minus))
             + 0.5j * k * b_plus * (abs(b_plus)**2 + 2 * abs(b_minus)**2))
    eps_m = ((1j * (delta_b + delta_d) + params.kappa_b / 2) * b_minus
             + 1j * g * a0 * (c_minus + np.conj(c_plus))
             + 0.5j * k * b_minus * (abs(b_minus)**2 + 2 * abs(b_plus)**2))
    eps_a = ((1j * delta_a + params.kappa_a / 2) * a0
             + 1j * g * (b_minus * (c_plus + np.conj(c_minus))
                         + b_plus * (c_minus + np.conj(c_plus))))

    drives = DriveConfig(complex(eps_a), complex(eps_p), complex(eps_m),
                         delta_a, float(delta_b), float(delta_d))
    amps = SteadyAmplitudes(a0, complex(b_plus), b_minus, complex(c_plus),
                            complex(c_minus))
    rel = relative_residual(params, drives, amps)
    if rel > residual_tol:
        raise ConvergenceError(
            f"inverse design residual {rel:.3e} exceeds {residual_tol:.1e}",
            residual=rel)
    return amps, drive_powers(params, drives)


def _wirtinger_jacobian(z: np.ndarray, params: SystemParams,
                        drives: DriveConfig) -> np.ndarray:
    """Real 10x10 Jacobian of the steady equations at amplitudes z."""
    a0, bp, bm, cp, cm = z
    g, k = params.g, params.kerr
    ig = 1j * g
    fz = np.zeros((5, 5), dtype=complex)
    fzb = np.zeros((5, 5), dtype=complex)

    # cavity equation
    fz[0, 0] = 1j * drives.delta_a + params.kappa_a / 2
    fz[0, 1] = ig * (cm + np.conj(cp))
    fz[0, 2] = ig * (cp + np.conj(cm))
    fz[0, 3] = ig * bm
    fz[0, 4] = ig * bp
    fzb[0, 3] = ig * bp
    fzb[0, 4] = ig * bm
    # magnon + tone
    fz[1, 0] = ig * (cp + np.conj(cm))
    fz[1, 1] = (1j * (drives.delta_b - drives.delta_d) + params.kappa_b / 2
                + 1j * k * (abs(bp)**2 + abs(bm)**2))
    fzb[1, 1] = 0.5j * k * bp**2
    fz[1, 2] = 1j * k * bp * np.conj(bm)
    fzb[1, 2] = 1j * k * bp * bm
    fz[1, 3] = ig * a0
    fzb[1, 4] = ig * a0
    # magnon - tone
    fz[2, 0] = ig * (cm + np.conj(cp))
    fz[2, 2] = (1j * (drives.delta_b + drives.delta_d) + params.kappa_b / 2
                + 1j * k * (abs(bm)**2 + abs(bp)**2))
    fzb[2, 2] = 0.5j * k * bm**2
    fz[2, 1] = 1j * k * bm * np.conj(bp)
    fzb[2, 1] = 1j * k * bm * bp
    fz[2, 4] = ig * a0
    fzb[2, 3] = ig * a0
    # mechanical + tone
    fz[3, 3] = 1j * (params.omega_c - drives.delta_d) + params.kappa_c / 2
    fz[3, 0] = ig * np.conj(bm)
    fzb[3, 0] = ig * bp
    fz[3, 1] = ig * np.conj(a0)
    fzb[3, 2] = ig * a0
    # mechanical - tone
    fz[4, 4] = 1j * (params.omega_c + drives.delta_d) + params.kappa_c / 2
    fz[4, 0] = ig * np.conj(bp)
    fzb[4, 0] = ig * bm
    fz[4, 2] = ig * np.conj(a0)
    fzb[4, 1] = ig * a0

    jac = np.zeros((10, 10))
    jac[:5, :5] = (fz + fzb).real
    jac[:5, 5:] = -(fz - fzb).imag
    jac[5:, :5] = (fz + fzb).imag
    jac[5:, 5:] = (fz - fzb).real
    return jac


def _newton(params: SystemParams, drives: DriveConfig, z0: np.ndarray,
            max_iter: int) -> tuple[np.ndarray, float]:
    """Damped Newton iteration, polished until the residual stalls."""

    def res(z):
        return steady_residuals(params, drives,
                                SteadyAmplitudes.from_array(z))

    z = z0.astype(complex)
    best, best_r = z, float(np.abs(res(z)).max())
    for _ in range(max_iter):
        f = res(z)
        r0 = float(np.abs(f).max())
        if r0 == 0.0:
            return z, 0.0
        jac = _wirtinger_jacobian(z, params, drives)
        rhs = -np.concatenate([f.real, f.imag])
        try:
            dx = np.linalg.solve(jac, rhs)
        except np.linalg.LinAlgError:
            break
        step = dx[:5] + 1j * dx[5:]
        t, improved = 1.0, False
        for _ in range(60):
            zn = z + t * step
            rn = float(np.abs(res(zn)).max())
            if rn < r0:
                improved = True
                break
            t *= 0.5
        if not improved:
            break  # machine stall: cannot reduce the residual further
        z = zn
        if rn < best_r:
            best, best_r = z, rn
    return best, best_r


def _linear_guess(params: SystemParams, drives: DriveConfig) -> np.ndarray:
    """Zero-Kerr starting point: cavity amplitude without back-action, then
    the (linear) magnon-mechanical tone response at that cavity field."""
    a0 = drives.eps_a / (1j * drives.delta_a + params.kappa_a / 2)
    g = params.g
    dp = 1j * (drives.delta_b - drives.delta_d) + params.kappa_b / 2
    dm = 1j * (drives.delta_b + drives.delta_d) + params.kappa_b / 2
    ep = 1j * (params.omega_c - drives.delta_d) + params.kappa_c / 2
    em = 1j * (params.omega_c + drives.delta_d) + params.kappa_c / 2

    # (B+, B-, C+, C-) and conjugates form an 8-dimensional real linear
    # system at fixed a0; build it via the same Wirtinger packing
    fz = np.zeros((4, 4), dtype=complex)
    fzb = np.zeros((4, 4), dtype=complex)
    ig = 1j * g
    fz[0, 0] = dp
    fz[0, 2] = ig * a0
    fzb[0, 3] = ig * a0
    fz[1, 1] = dm
    fz[1, 3] = ig * a0
    fzb[1, 2] = ig * a0
    fz[2, 2] = ep
    fz[2, 0] = ig * np.conj(a0)
    fzb[2, 1] = ig * a0
    fz[3, 3] = em
    fz[3, 1] = ig * np.conj(a0)
    fzb[3, 0] = ig * a0
    jac = np.zeros((8, 8))
    jac[:4, :4] = (fz + fzb).real
    jac[:4, 4:] = -(fz - fzb).imag
    jac[4:, :4] = (fz + fzb).imag
    jac[4:, 4:] = (fz - fzb).real
    rhs_c = np.array([drives.eps_plus, drives.eps_minus, 0.0, 0.0])
    rhs = np.concatenate([rhs_c.real, rhs_c.imag])
    try:
        sol = np.linalg.solve(jac, rhs)
        tones = sol[:4] + 1j * sol[4:]
    except np.linalg.LinAlgError:
        tones = np.array([drives.eps_plus / dp, drives.eps_minus / dm, 0, 0])
    return np.array([a0, tones[0], tones[1], tones[2], tones[3]],
                    dtype=complex)


def forward_solve(params: SystemParams, drives: DriveConfig,
                  initial: SteadyAmplitudes | None = None,
                  max_iter: int = 200,
                  continuation_steps: int = 8) -> SteadyAmplitudes:
    """Solve the steady amplitude equations for given drives.

    By default the Kerr coefficient is continued from zero to its full
    value, so the returned root is the one continuously connected to the
    zero-Kerr solution. With ``initial`` the iteration starts from the
    given amplitudes instead, which selects the branch nearest to them;
    this is how a designed operating point is verified in a regime where
    the Kerr cubic is multistable.

    Convergence is declared at max residual <= 1e-12 * max(|E|, kappa_b);
    the iteration keeps polishing until the residual stalls at machine
    level, so converged results are typically far below the bound.
    """

    def check(val):
        if not np.all(np.isfinite(val)):
            raise InvalidParameterError("drive amplitudes must be finite")

    check(np.array([drives.eps_a, drives.eps_plus, drives.eps_minus]))
    scale = max(abs(drives.eps_a), abs(drives.eps_plus),
                abs(drives.eps_minus), params.kappa_b)
    tol = 1e-12 * scale

    if initial is not None:
        z, residual = _newton(params, drives, initial.as_array(), max_iter)
    else:
        z = _linear_guess(params, drives)
        if params.kerr == 0.0:
            z, residual = _newton(params, drives, z, max_iter)
        else:
            fractions = np.linspace(0.0, 1.0, continuation_steps + 1)[1:]
            residual = np.inf
            for frac in fractions:
                partial = SystemParams(
                    params.omega_a, params.omega_b, params.omega_c,
                    params.kappa_a, params.kappa_b, params.kappa_c,
                    params.g, params.kerr * frac, params.temperature)
                z, residual = _newton(partial, drives, z, max_iter)

    if residual > tol:
        raise ConvergenceError(
            f"steady-state iteration stalled at residual {residual:.3e} "
            f"(tolerance {tol:.3e}); the Kerr system may be bistable at "
            "these drives", residual=residual)
    return SteadyAmplitudes.from_array(z)


def linearized_params(amps: SteadyAmplitudes, params: SystemParams,
                      delta_b: float) -> LinearizedParams:
    """Linearized-dynamics parameters generated by steady amplitudes.

    If A0 carries a phase it is rotated into the drive reference so the
    enhanced coupling is real and non-negative; the rotation doubles into
    the squeeze phase and is reported in ``rotation``.
    """
    rotation = float(np.angle(amps.a0)) if amps.a0 != 0 else 0.0
    coupling = params.g * abs(amps.a0)
    squeeze_c = params.kerr * amps.b_plus * amps.b_minus * np.exp(-2j * rotation)
    detuning = delta_b + params.kerr * (abs(amps.b_minus)**2
                                        + abs(amps.b_plus)**2)
    return LinearizedParams(
        detuning=float(detuning),
        coupling=float(coupling),
        squeeze=float(abs(squeeze_c)),
        squeeze_phase=float(np.angle(squeeze_c)) if squeeze_c != 0 else 0.0,
        rotation=rotation,
    )
