"""Physical constants, system parameters, and bare coupling rates.

All angular frequencies and rates are stored in rad/s. Conversions from
ordinary frequency (Hz) happen only at the user-facing boundary (CLI and
config loading), never inside the solver.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InvalidParameterError

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class PhysicalConstants:
    """Fundamental constants and YIG material parameters (SI units).

    hbar      reduced Planck constant, J s
    k_B       Boltzmann constant, J/K
    gamma0    gyromagnetic ratio, rad/(s T)
    mu0       vacuum permeability, N/A^2
    rho_s     spin density, 1/m^3
    rho_m     mass density, kg/m^3
    s_spin    ground-state spin number
    K_an      first-order magnetocrystalline anisotropy constant, J/m^3
    """

    hbar: float = 1.054571817e-34
    k_B: float = 1.380649e-23
    gamma0: float = TWO_PI * 28e9
    mu0: float = 4.0e-7 * math.pi
    rho_s: float = 4.22e27
    rho_m: float = 5170.0
    s_spin: float = 2.5
    K_an: float = -610.0

    def __post_init__(self):
        for name in ("hbar", "k_B", "gamma0", "mu0", "rho_s", "rho_m", "s_spin"):
            if getattr(self, name) <= 0:
                raise InvalidParameterError(f"{name} must be positive")
        if self.K_an >= 0:
            raise InvalidParameterError("K_an must be negative for YIG")


DEFAULT_CONSTANTS = PhysicalConstants()


@dataclass(frozen=True)
class GeometryParams:
    """Cavity mode volume and magnet sphere radius, both in SI units."""

    cavity_volume: float
    sphere_radius: float

    def __post_init__(self):
        if self.cavity_volume <= 0:
            raise InvalidParameterError("cavity_volume must be positive")
        if self.sphere_radius <= 0:
            raise InvalidParameterError("sphere_radius must be positive")

    @property
    def sphere_volume(self) -> float:
        return 4.0 / 3.0 * math.pi * self.sphere_radius**3


@dataclass(frozen=True)
class SystemParams:
    """Mode frequencies, decay rates, bare couplings, and bath temperature.

    All frequencies and rates in rad/s; ``kerr`` is signed (negative for
    YIG, where the anisotropy constant is negative) and ``g`` is the bare
    photon-magnon-phonon coupling.
    """

    omega_a: float
    omega_b: float
    omega_c: float
    kappa_a: float
    kappa_b: float
    kappa_c: float
    g: float
    kerr: float
    temperature: float

    def __post_init__(self):
        if self.omega_c <= 0:
            raise InvalidParameterError("omega_c must be positive")
        if self.kappa_b <= 0:
            raise InvalidParameterError("kappa_b must be positive")
        if self.kappa_c < 0:
            raise InvalidParameterError("kappa_c must be non-negative")
        if self.temperature < 0:
            raise InvalidParameterError("temperature must be non-negative")


def thermal_occupation(omega: float, temperature: float,
                       consts: PhysicalConstants = DEFAULT_CONSTANTS) -> float:
    """Mean thermal occupation of a bosonic mode at angular frequency omega.

    Returns 1/(exp(hbar omega / k_B T) - 1); exactly zero at T = 0 instead
    of evaluating the (overflowing) exponential.
    """
    if omega <= 0:
        raise InvalidParameterError("thermal_occupation requires omega > 0")
    if temperature < 0:
        raise InvalidParameterError("temperature must be non-negative")
    if temperature == 0.0:
        return 0.0
    x = consts.hbar * omega / (consts.k_B * temperature)
    if x > 700.0:  # expm1 would overflow; occupancy is below double precision
        return math.exp(-x)
    return 1.0 / math.expm1(x)


def saturation_magnetization(consts: PhysicalConstants = DEFAULT_CONSTANTS) -> float:
    """Saturation magnetization M = hbar gamma0 rho_s s, in A/m."""
    return consts.hbar * consts.gamma0 * consts.rho_s * consts.s_spin


def tripartite_coupling(consts: PhysicalConstants, geometry: GeometryParams,
                        omega_a: float, omega_c: float) -> float:
    """Bare photon-magnon-phonon coupling rate.

    g = (gamma0/2) sqrt(hbar omega_a mu0 / V_a)
        * sqrt(2 rho_s V_s s) * sqrt(hbar / (2 rho_m V_s omega_c))

    The sphere volume V_s enters the collective spin enhancement and the
    zero-point motion with opposite exponents and cancels; the factors are
    kept explicit so the cancellation is exercised numerically rather than
    assumed.
    """
    if omega_a <= 0 or omega_c <= 0:
        raise InvalidParameterError("omega_a and omega_c must be positive")
    v_s = geometry.sphere_volume
    field = math.sqrt(consts.hbar * omega_a * consts.mu0 / geometry.cavity_volume)
    spins = math.sqrt(2.0 * consts.rho_s * v_s * consts.s_spin)
    zpf = math.sqrt(consts.hbar / (2.0 * consts.rho_m * v_s * omega_c))
    return 0.5 * consts.gamma0 * field * spins * zpf


def kerr_coefficient(consts: PhysicalConstants, sphere_radius: float) -> float:
    """Magnon self-Kerr coefficient k = 13 hbar K_an gamma0^2 / (4 M^2 V_s).

    Negative whenever K_an is negative; scales as 1/V_s.
    """
    if sphere_radius <= 0:
        raise InvalidParameterError("sphere_radius must be positive")
    v_s = 4.0 / 3.0 * math.pi * sphere_radius**3
    m_sat = saturation_magnetization(consts)
    return 13.0 * consts.hbar * consts.K_an * consts.gamma0**2 / (4.0 * m_sat**2 * v_s)
