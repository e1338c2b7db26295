"""Squeezed-frame construction for the magnon mode.

The degenerate squeeze term in the linearized Hamiltonian is absorbed by a
Bogoliubov transformation beta = e^{i phi} (b cosh r + e^{i theta} b^dag
sinh r). With tanh 2r = lambda / detuning the transformed Hamiltonian is a
plain beam-splitter coupling at a reduced detuning, at the price of the
magnon bath becoming a squeezed thermal bath with occupancy n_bath and
anomalous correlation m_bath.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .design import LinearizedParams
from .errors import FrameUndefinedError, InvalidParameterError


@dataclass(frozen=True)
class BogoliubovFrame:
    """Squeezed-frame parameters.

    r         squeeze parameter of the transformation (>= 0)
    phi       frame phase chosen so the transformed coupling is real
    mu        real coupling enhancement factor (> 0)
    detuning  transformed magnon detuning sqrt(detuning'^2 - lambda^2), rad/s
    coupling  transformed magnon-mechanical coupling mu * G, rad/s
    n_bath    squeezed-bath thermal occupancy
    m_bath    squeezed-bath anomalous correlation (complex)
    """

    r: float
    phi: float
    mu: float
    detuning: float
    coupling: float
    n_bath: float
    m_bath: complex


def identity_frame(detuning: float, coupling: float, n_bath: float) -> BogoliubovFrame:
    """Trivial frame (no squeezing): useful as the reference configuration."""
    return BogoliubovFrame(r=0.0, phi=0.0, mu=1.0, detuning=detuning,
                           coupling=coupling, n_bath=n_bath, m_bath=0j)


def build_frame(lin: LinearizedParams, n_bar_b: float) -> BogoliubovFrame:
    """Construct the squeezed frame for a linearized operating point.

    Requires 0 <= lambda < detuning'; at lambda = detuning' the transformed
    detuning vanishes and the frame is singular, which is treated as an
    error rather than a limit.
    """
    lam = lin.squeeze
    dp = lin.detuning
    if lam < 0:
        raise InvalidParameterError("squeeze rate must be non-negative")
    if n_bar_b < 0:
        raise InvalidParameterError("thermal occupancy must be non-negative")
    if lam >= abs(dp) or dp <= 0:
        raise FrameUndefinedError(
            f"squeezed frame undefined: requires 0 <= squeeze < detuning "
            f"(squeeze = {lam:.6g}, detuning = {dp:.6g})")

    det_b = math.sqrt(dp * dp - lam * lam)
    # cosh 2r = dp/det_b, sinh 2r = lam/det_b
    r = 0.5 * math.asinh(lam / det_b)
    ch, sh = math.cosh(r), math.sinh(r)
    z = ch - cmath.exp(-1j * lin.squeeze_phase) * sh
    phi = cmath.phase(z)  # makes mu = e^{-i phi} z real and positive
    mu = abs(z)
    cosh2r = dp / det_b
    n_bath = n_bar_b * cosh2r + sh * sh
    m_bath = (2.0 * n_bar_b + 1.0) * cmath.exp(
        -1j * (lin.squeeze_phase + 2.0 * phi)) * sh * ch

    # physicality of the squeezed thermal bath: |m|^2 <= n (n + 1), with
    # equality only for a vacuum input
    if abs(m_bath)**2 > n_bath * (n_bath + 1.0) * (1.0 + 1e-12) + 1e-30:
        raise InvalidParameterError("squeezed bath violates physicality")

    return BogoliubovFrame(r=r, phi=phi, mu=mu, detuning=det_b,
                           coupling=mu * lin.coupling, n_bath=n_bath,
                           m_bath=m_bath)


def optimal_phases(detuning: float, kappa_b: float) -> tuple[float, float, float]:
    """Cooling-optimal squeeze and frame phases, with the coupling factor.

    Closed-form optimum of the squeezed-bath cooling rate at squeeze rate
    lambda = kappa_b / 2:

        sin theta = -1,
        cos 2phi = 2 detuning / sqrt(kappa_b^2 + 4 detuning^2),
        sin 2phi = -kappa_b / sqrt(kappa_b^2 + 4 detuning^2),
        mu = sqrt(sqrt(4 detuning^2 + kappa_b^2) / (2 detuning)).

    Returns (theta, phi, mu) with phi on the branch (-pi/2, pi/2].
    """
    if detuning <= 0:
        raise InvalidParameterError("optimal_phases requires detuning > 0")
    if kappa_b <= 0:
        raise InvalidParameterError("optimal_phases requires kappa_b > 0")
    theta = -0.5 * math.pi
    root = math.sqrt(kappa_b**2 + 4.0 * detuning**2)
    two_phi = math.atan2(-kappa_b / root, 2.0 * detuning / root)
    phi = 0.5 * two_phi
    mu = math.sqrt(root / (2.0 * detuning))
    return theta, phi, mu


def phase_condition_residual(theta: float, phi: float, detuning: float,
                             kappa_b: float) -> float:
    """Distance (mod 2 pi) of theta + 2 phi + arg chi_b from pi.

    chi_b = (kappa_b/2 + i detuning)^{-1} is the magnon susceptibility at
    the transformed detuning. Zero at the optimal phases.
    """
    chi_b = 1.0 / complex(kappa_b / 2.0, detuning)
    total = theta + 2.0 * phi + cmath.phase(chi_b) - math.pi
    return abs((total + math.pi) % (2.0 * math.pi) - math.pi)


def mu_identity_residuals(theta: float, phi: float, mu: float, lam: float,
                          detuning: float) -> tuple[float, float]:
    """Evaluate the two real constraints fixing (theta, phi, mu).

    The first expression must equal mu^2 and the second must vanish when
    the frame phase makes the transformed coupling real. ``detuning`` is
    the transformed value, ``lam`` the squeeze rate.
    """
    dp = math.sqrt(detuning**2 + lam**2)
    spsum = math.sin(theta + 2.0 * phi)
    cpsum = math.cos(theta + 2.0 * phi)
    mu_sq = (cpsum * (dp * math.cos(theta) - lam) / detuning
             + math.sin(theta) * spsum)
    imag = (-spsum * (dp * math.cos(theta) - lam) / detuning
            + math.sin(theta) * cpsum)
    return mu_sq - mu * mu, imag
