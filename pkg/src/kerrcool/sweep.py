"""Parameter sweeps over the cooling curves, CSV output, and figures.

A sweep point fixes the mechanical/magnon bath, the transformed detuning,
and the working coupling, then evaluates up to three occupancy curves:

* ``squeezed_exact``    steady phonon number of the squeezed-frame moment
                        system (the reference result),
* ``squeezed_approx``   the weak-coupling closed form for the same system,
* ``no_squeeze_exact``  the moment system without squeezing at the same
                        detuning and the same coupling value.

Unstable or invalid points are written as ``nan`` with flags, never
omitted, so the three curves stay aligned. CSV formatting is fixed at
twelve significant digits and is byte-stable across runs.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .analytic import occupancy_weak_coupling
from .bogoliubov import build_frame, identity_frame, optimal_phases
from .constants import TWO_PI, SystemParams, thermal_occupation
from .design import LinearizedParams
from .errors import InstabilityError, InvalidParameterError, NoSteadyStateError
from .moments import build_system, is_physical, steady_state

MODES = ("squeezed_approx", "squeezed_exact", "no_squeeze_exact")
SWEEP_VARIABLES = ("kappa_b", "g_cal", "delta_big_b", "temperature")
CSV_HEADER = "x,nc_squeezed_approx,nc_squeezed_exact,nc_no_squeeze_exact,stable,valid"


@dataclass(frozen=True)
class OperatingPoint:
    """One solver configuration. All rates in rad/s, temperature in K.

    ``squeeze`` of None selects the optimal rate kappa_b / 2.
    """

    omega_b: float
    omega_c: float
    kappa_b: float
    kappa_c: float
    temperature: float
    detuning_big: float
    g_cal: float
    squeeze: float | None = None

    def system_params(self) -> SystemParams:
        # bare couplings and the cavity mode do not enter the fluctuation
        # dynamics; placeholders keep the record complete
        return SystemParams(
            omega_a=self.omega_b, omega_b=self.omega_b, omega_c=self.omega_c,
            kappa_a=self.kappa_b, kappa_b=self.kappa_b, kappa_c=self.kappa_c,
            g=0.0, kerr=0.0, temperature=self.temperature)


@dataclass(frozen=True)
class SweepSpec:
    """Grid description for one swept variable."""

    variable: str
    start: float
    stop: float
    points: int
    fixed: OperatingPoint
    scale: str = "linear"
    modes: tuple[str, ...] = MODES

    def __post_init__(self):
        if self.variable not in SWEEP_VARIABLES:
            raise InvalidParameterError(
                f"unknown sweep variable {self.variable!r}; choose from "
                f"{SWEEP_VARIABLES}")
        if self.points < 2:
            raise InvalidParameterError("sweep needs at least 2 points")
        if self.start > self.stop:
            raise InvalidParameterError("sweep start must not exceed stop")
        if self.scale not in ("linear", "log"):
            raise InvalidParameterError("scale must be 'linear' or 'log'")
        for mode in self.modes:
            if mode not in MODES:
                raise InvalidParameterError(f"unknown mode {mode!r}")

    def grid(self) -> np.ndarray:
        if self.scale == "log":
            if self.start <= 0:
                raise InvalidParameterError("log scale requires start > 0")
            return np.geomspace(self.start, self.stop, self.points)
        return np.linspace(self.start, self.stop, self.points)


@dataclass(frozen=True)
class ResultRow:
    """One grid point: swept value plus the requested occupancies."""

    x: float
    nc_squeezed_approx: float
    nc_squeezed_exact: float
    nc_no_squeeze_exact: float
    stable: bool
    valid: bool


def solve_point(point: OperatingPoint,
                modes: tuple[str, ...] = MODES) -> ResultRow:
    """Evaluate the requested occupancy curves at one operating point."""
    params = point.system_params()
    n_bar_b = thermal_occupation(point.omega_b, point.temperature) \
        if point.temperature > 0 else 0.0
    n_bar_c = thermal_occupation(point.omega_c, point.temperature) \
        if point.temperature > 0 else 0.0
    lam = point.kappa_b / 2.0 if point.squeeze is None else point.squeeze

    nc_approx = math.nan
    nc_exact = math.nan
    nc_plain = math.nan
    stable = True
    valid = True

    frame = None
    if "squeezed_exact" in modes or "squeezed_approx" in modes:
        theta, _, mu = optimal_phases(point.detuning_big, point.kappa_b)
        lin = LinearizedParams(
            detuning=math.hypot(point.detuning_big, lam),
            coupling=point.g_cal / mu, squeeze=lam, squeeze_phase=theta)
        frame = build_frame(lin, n_bar_b)

    if "squeezed_exact" in modes:
        try:
            state = steady_state(build_system(frame, params, n_bar_c))
            nc_exact = state.n_phonon
            if not is_physical(state):
                stable = False
                nc_exact = math.nan
        except (InstabilityError, NoSteadyStateError):
            stable = False

    if "no_squeeze_exact" in modes:
        plain = identity_frame(point.detuning_big, point.g_cal, n_bar_b)
        try:
            state = steady_state(build_system(plain, params, n_bar_c))
            nc_plain = state.n_phonon
            if not is_physical(state):
                stable = False
                nc_plain = math.nan
        except (InstabilityError, NoSteadyStateError):
            stable = False

    if "squeezed_approx" in modes:
        try:
            approx = occupancy_weak_coupling(frame, params, n_bar_c)
            nc_approx = approx.full
            valid = approx.valid
        except InvalidParameterError:
            valid = False

    return ResultRow(x=0.0, nc_squeezed_approx=nc_approx,
                     nc_squeezed_exact=nc_exact,
                     nc_no_squeeze_exact=nc_plain,
                     stable=stable, valid=valid)


def _point_at(spec: SweepSpec, value: float) -> OperatingPoint:
    """Operating point with the swept variable set to ``value`` (rad/s for
    rates, K for temperature)."""
    fixed = spec.fixed
    if spec.variable == "kappa_b":
        return replace(fixed, kappa_b=value)
    if spec.variable == "g_cal":
        return replace(fixed, g_cal=value)
    if spec.variable == "delta_big_b":
        return replace(fixed, detuning_big=value)
    return replace(fixed, temperature=value)


def run_sweep(spec: SweepSpec, workers: int = 1) -> list[ResultRow]:
    """Solve every grid point, in grid order regardless of scheduling.

    Grid values are interpreted at the user boundary: Hz for rates and
    frequencies (converted to rad/s internally), kelvin for temperature.
    """
    grid = spec.grid()

    def solve_one(x: float) -> ResultRow:
        internal = x if spec.variable == "temperature" else TWO_PI * x
        row = solve_point(_point_at(spec, internal), spec.modes)
        return replace(row, x=float(x))

    if workers <= 1:
        return [solve_one(x) for x in grid]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(solve_one, grid))


def _fmt(value: float) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if math.isnan(value):
        return "nan"
    return f"{value:.12g}"


def write_csv(rows: list[ResultRow], path: str) -> None:
    """Write rows with the fixed header, twelve significant digits."""
    lines = [CSV_HEADER]
    for row in rows:
        lines.append(",".join([
            _fmt(row.x),
            _fmt(row.nc_squeezed_approx),
            _fmt(row.nc_squeezed_exact),
            _fmt(row.nc_no_squeeze_exact),
            "true" if row.stable else "false",
            "true" if row.valid else "false",
        ]))
    with open(path, "w", newline="\n") as handle:
        handle.write("\n".join(lines) + "\n")


_X_LABEL = {
    "kappa_b": "magnon decay rate (Hz)",
    "g_cal": "coupling rate (Hz)",
    "delta_big_b": "transformed detuning (Hz)",
    "temperature": "temperature (K)",
}


def render_figure(rows: list[ResultRow], spec: SweepSpec, path: str) -> None:
    """Render the swept curves next to the CSV output."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    x = [row.x for row in rows]
    fig, ax = plt.subplots(figsize=(5.0, 3.4))
    if "squeezed_approx" in spec.modes:
        ax.plot(x, [r.nc_squeezed_approx for r in rows], "k-",
                label="squeezed, weak coupling")
    if "squeezed_exact" in spec.modes:
        ax.plot(x, [r.nc_squeezed_exact for r in rows], "r--",
                label="squeezed, exact")
    if "no_squeeze_exact" in spec.modes:
        ax.plot(x, [r.nc_no_squeeze_exact for r in rows], "b:",
                label="no squeezing, exact")
    if spec.scale == "log":
        ax.set_xscale("log")
    finite = [v for r in rows
              for v in (r.nc_squeezed_approx, r.nc_squeezed_exact,
                        r.nc_no_squeeze_exact)
              if not math.isnan(v) and v > 0]
    if finite and max(finite) / max(min(finite), 1e-12) > 50:
        ax.set_yscale("log")
    ax.set_xlabel(_X_LABEL[spec.variable])
    ax.set_ylabel("steady phonon occupancy")
    ax.legend(frameon=False, fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=160)
    plt.close(fig)
