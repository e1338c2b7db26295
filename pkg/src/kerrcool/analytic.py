"""Weak-coupling closed forms for the steady phonon occupancy.

These are the rate-equation style approximations valid for small coupling
and negligible mechanical damping: susceptibilities at the two mechanical
sidebands, the full occupancy expression with its quartic correction, the
three-term split that isolates the thermal-load, sideband-asymmetry, and
back-action contributions, and the optimized special cases (no squeezing,
optimal phases, optimal squeeze rate).

Occupancies from these formulas may be negative outside their regime of
validity; raw values are returned together with a validity flag instead
of being clamped, so regime breakdown is visible in comparisons against
the exact moment solver.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .bogoliubov import BogoliubovFrame
from .constants import SystemParams
from .errors import InvalidParameterError


@dataclass(frozen=True)
class Susceptibilities:
    """Response functions at the upper/lower sidebands and the carrier."""

    chi_plus: complex
    chi_minus: complex
    chi_b: complex


def susceptibilities(detuning: float, omega_c: float,
                     kappa_b: float) -> Susceptibilities:
    """chi_pm = [kappa_b/2 + i (detuning +/- omega_c)]^{-1} and the carrier
    response chi_b = [kappa_b/2 + i detuning]^{-1}."""
    half = kappa_b / 2.0
    return Susceptibilities(
        chi_plus=1.0 / complex(half, detuning + omega_c),
        chi_minus=1.0 / complex(half, detuning - omega_c),
        chi_b=1.0 / complex(half, detuning),
    )


@dataclass(frozen=True)
class WeakCouplingOccupancy:
    """Weak-coupling occupancy estimates and their term breakdown.

    full         occupancy with the mechanical damping kept in the denominator
    three_term   split form with kappa_c neglected in the denominator
    thermal_load kappa_c n_c / (G^2 W) heating term (first term of the split)
    base         squeezed-bath sideband ratio term (second term)
    backaction   quartic correction term (third term)
    valid        True when the expressions are in their cooling regime
    """

    full: float
    three_term: float
    thermal_load: float
    base: float
    backaction: float
    valid: bool


def _rates(chi: Susceptibilities) -> tuple[float, float, float]:
    r_plus = 2.0 * chi.chi_plus.real
    r_minus = 2.0 * chi.chi_minus.real
    return r_plus, r_minus, r_minus - r_plus


def occupancy_weak_coupling(frame: BogoliubovFrame, params: SystemParams,
                            n_bar_c: float) -> WeakCouplingOccupancy:
    """Weak-coupling steady phonon occupancy for a squeezed-frame system."""
    chi = susceptibilities(frame.detuning, params.omega_c, params.kappa_b)
    r_plus, r_minus, w = _rates(chi)
    if w == 0.0:
        raise InvalidParameterError(
            "sideband rates are equal; occupancy formula is singular")
    gc = frame.coupling
    kb, kc, wc = params.kappa_b, params.kappa_c, params.omega_c
    n_bath, m = frame.n_bath, frame.m_bath

    cross = kb * (m * np.conj(chi.chi_b)
                  * (np.conj(chi.chi_plus) + np.conj(chi.chi_minus))).real
    sideband = n_bath * r_minus + (n_bath + 1.0) * r_plus + cross
    f4 = ((2.0 * n_bath + 1.0) * (1.0 / wc**2 - (r_minus + r_plus) / kb)
          + w / kb
          + (2.0 / wc**2) * (m * (kb * np.conj(chi.chi_b)
                                  - 1j * wc * (np.conj(chi.chi_minus)
                                               - np.conj(chi.chi_plus))
                                  - 1.0)).real)

    denom = kc + gc**2 * w
    if denom == 0.0:
        raise InvalidParameterError("vanishing net cooling rate")
    full = (kc * n_bar_c + gc**2 * sideband + 0.5 * gc**4 * w * f4) / denom

    if gc == 0.0:
        raise InvalidParameterError(
            "three-term split diverges at zero coupling")
    thermal_load = kc * n_bar_c / (gc**2 * w)
    base = sideband / w
    backaction = 0.5 * gc**2 * f4
    three_term = thermal_load + base + backaction
    valid = bool(w > 0.0 and full >= 0.0 and three_term >= 0.0)
    return WeakCouplingOccupancy(full=float(full), three_term=float(three_term),
                                 thermal_load=float(thermal_load),
                                 base=float(base), backaction=float(backaction),
                                 valid=valid)


def base_occupancy(n_bath: float, m_bath: complex, detuning: float,
                   kappa_b: float, omega_c: float) -> float:
    """Sideband-ratio occupancy floor of a (possibly squeezed) bath.

    The coupling-independent term of the three-term split; reduces to the
    familiar (2 n + 1)-weighted sideband asymmetry without squeezing.
    """
    chi = susceptibilities(detuning, omega_c, kappa_b)
    r_plus, r_minus, w = _rates(chi)
    if w == 0.0:
        raise InvalidParameterError("sideband rates are equal")
    cross = kappa_b * (m_bath * np.conj(chi.chi_b)
                       * (np.conj(chi.chi_plus) + np.conj(chi.chi_minus))).real
    return float((n_bath * r_minus + (n_bath + 1.0) * r_plus + cross) / w)


def no_squeeze_occupancy(detuning_prime: float, omega_c: float,
                         kappa_b: float, n_bar_b: float) -> float:
    """Occupancy floor without squeezing, as a function of the detuning."""
    if detuning_prime <= 0:
        raise InvalidParameterError("detuning must be positive")
    return ((2.0 * n_bar_b + 1.0)
            * (4.0 * detuning_prime**2 + 4.0 * omega_c**2 + kappa_b**2)
            / (16.0 * detuning_prime * omega_c) - 0.5)


def no_squeeze_optimal_detuning(omega_c: float, kappa_b: float) -> float:
    """Detuning minimizing the no-squeeze occupancy floor."""
    return 0.5 * math.sqrt(kappa_b**2 + 4.0 * omega_c**2)


def no_squeeze_minimum(omega_c: float, kappa_b: float, n_bar_b: float) -> float:
    """No-squeeze occupancy floor at its optimal detuning."""
    return ((2.0 * n_bar_b + 1.0) * math.sqrt(kappa_b**2 + 4.0 * omega_c**2)
            / (4.0 * omega_c) - 0.5)


def squeezed_optimum(detuning: float, omega_c: float, kappa_b: float,
                     n_bar_b: float) -> float:
    """Occupancy floor with optimal phases and squeeze rate kappa_b / 2."""
    if detuning <= 0:
        raise InvalidParameterError("detuning must be positive")
    root = math.sqrt(kappa_b**2 + 4.0 * detuning**2)
    return ((2.0 * n_bar_b + 1.0)
            * (kappa_b**2 + 4.0 * detuning**2 + 4.0 * omega_c**2)
            / (8.0 * omega_c * root) - 0.5)


def squeezed_base_occupancy(detuning: float, lam, phase_sum, kappa_b: float,
                            omega_c: float, n_bar_b: float):
    """Occupancy floor at squeeze rate lam and phase sum theta + 2 phi,
    before either optimization. Accepts array-valued lam / phase_sum.

    ``detuning`` is the transformed detuning (held fixed while the squeeze
    rate varies).
    """
    lam = np.asarray(lam, dtype=float)
    phase_sum = np.asarray(phase_sum, dtype=float)
    chi = susceptibilities(detuning, omega_c, kappa_b)
    _, _, w = _rates(chi)
    pair = chi.chi_plus + chi.chi_minus
    inner = (2.0 * np.sqrt(detuning**2 + lam**2)
             + lam * kappa_b * chi.chi_b * np.exp(1j * phase_sum))
    val = ((2.0 * n_bar_b + 1.0) / (4.0 * detuning * w)
           * 2.0 * (pair * inner).real - 0.5)
    if val.ndim == 0:
        return float(val)
    return val


@dataclass(frozen=True)
class OptimalityReport:
    """Outcome of brute-force minimization of the pre-optimization floor."""

    detuning: float
    kappa_b: float
    lambda_star: float
    phase_star: float
    lambda_expected: float
    phase_expected: float
    lambda_step: float
    phase_step: float
    minimum: float

    @property
    def lambda_offset_steps(self) -> float:
        return (self.lambda_star - self.lambda_expected) / self.lambda_step

    @property
    def phase_offset_steps(self) -> float:
        delta = (self.phase_star - self.phase_expected + math.pi) \
            % (2.0 * math.pi) - math.pi
        return delta / self.phase_step


def verify_optimality(detuning: float, kappa_b: float, omega_c: float,
                      n_bar_b: float, n_lambda: int = 200,
                      n_phase: int = 200,
                      lambda_max: float | None = None) -> OptimalityReport:
    """Grid-minimize the pre-optimization occupancy floor over
    (squeeze rate, phase sum) and compare with the closed-form optimum
    lambda = kappa_b / 2, theta + 2 phi = pi - arg chi_b."""
    if lambda_max is None:
        lambda_max = 2.0 * kappa_b
    lams = np.linspace(lambda_max / n_lambda, lambda_max, n_lambda)
    phases = np.linspace(0.0, 2.0 * math.pi, n_phase, endpoint=False)
    grid_l, grid_p = np.meshgrid(lams, phases, indexing="ij")
    values = squeezed_base_occupancy(detuning, grid_l, grid_p, kappa_b,
                                     omega_c, n_bar_b)
    i, j = np.unravel_index(int(np.argmin(values)), values.shape)
    chi_b = 1.0 / complex(kappa_b / 2.0, detuning)
    phase_expected = (math.pi - cmath.phase(chi_b)) % (2.0 * math.pi)
    return OptimalityReport(
        detuning=detuning, kappa_b=kappa_b,
        lambda_star=float(lams[i]), phase_star=float(phases[j]),
        lambda_expected=kappa_b / 2.0, phase_expected=phase_expected,
        lambda_step=float(lams[1] - lams[0]),
        phase_step=float(phases[1] - phases[0]),
        minimum=float(values[i, j]))
