"""Command-line interface: sweep, solve, and design subcommands.

Exit codes: 0 on success, 1 on usage or parameter-file errors, 2 on solver
errors (instability, non-convergence, missing steady state).
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import __version__
from .analytic import occupancy_weak_coupling
from .bogoliubov import build_frame, identity_frame, optimal_phases
from .constants import (
    DEFAULT_CONSTANTS,
    TWO_PI,
    SystemParams,
    kerr_coefficient,
    thermal_occupation,
    tripartite_coupling,
)
from .config import load_design, load_solve_point, load_sweep
from .design import (
    LinearizedParams,
    forward_solve,
    inverse_design,
    linearized_params,
    relative_residual,
)
from .errors import (
    ConfigError,
    ConvergenceError,
    InstabilityError,
    InvalidParameterError,
    KerrcoolError,
    NoSteadyStateError,
)
from .moments import (
    build_original_system,
    build_system,
    physicality_margin,
    steady_state,
)
from .sweep import render_figure, run_sweep, write_csv

USAGE_ERROR, SOLVER_ERROR = 1, 2


def _cmd_sweep(args) -> int:
    spec = load_sweep(args.config)
    rows = run_sweep(spec, workers=args.workers)
    write_csv(rows, args.out)
    if not args.no_plot:
        stem = args.out.rsplit(".", 1)[0] if "." in args.out else args.out
        render_figure(rows, spec, stem + ".png")
    print(f"wrote {len(rows)} rows to {args.out}")
    return 0


def _cmd_solve(args) -> int:
    point = load_solve_point(args.config)
    params = point.system_params()
    n_bar_b = thermal_occupation(point.omega_b, point.temperature) \
        if point.temperature > 0 else 0.0
    n_bar_c = thermal_occupation(point.omega_c, point.temperature) \
        if point.temperature > 0 else 0.0
    lam = point.kappa_b / 2.0 if point.squeeze is None else point.squeeze
    theta, phi, mu = optimal_phases(point.detuning_big, point.kappa_b)
    lin = LinearizedParams(detuning=math.hypot(point.detuning_big, lam),
                           coupling=point.g_cal / mu, squeeze=lam,
                           squeeze_phase=theta)
    frame = build_frame(lin, n_bar_b)

    system = build_system(frame, params, n_bar_c)
    eigs = np.sort_complex(system.eigenvalues())
    lines = []
    try:
        state = steady_state(system)
        nc_exact = state.n_phonon
        lines.append(f"n_c exact (squeezed)      : {nc_exact:.6g}")
        lines.append(f"physicality margin        : {physicality_margin(state):.3e}")
        nc_orig = steady_state(
            build_original_system(lin, params, n_bar_b, n_bar_c)).n_phonon
        lines.append(
            "frame-equivalence residual: "
            f"{abs(nc_exact - nc_orig) / max(abs(nc_exact), 1e-300):.3e}")
    except (InstabilityError, NoSteadyStateError) as exc:
        lines.append(f"n_c exact (squeezed)      : unstable ({exc})")

    approx = occupancy_weak_coupling(frame, params, n_bar_c)
    lines.append(f"n_c weak coupling         : {approx.full:.6g} "
                 f"(three-term {approx.three_term:.6g}, valid={approx.valid})")
    plain = identity_frame(point.detuning_big, point.g_cal, n_bar_b)
    try:
        nc_plain = steady_state(build_system(plain, params, n_bar_c)).n_phonon
        lines.append(f"n_c exact (no squeezing)  : {nc_plain:.6g}")
    except (InstabilityError, NoSteadyStateError) as exc:
        lines.append(f"n_c exact (no squeezing)  : unstable ({exc})")

    lines.append(f"frame: r = {frame.r:.6g}, phi = {frame.phi:.6g} rad, "
                 f"mu = {frame.mu:.6g}")
    lines.append(f"       detuning = {frame.detuning / TWO_PI:.6g} Hz, "
                 f"n_bath = {frame.n_bath:.6g}, |m| = {abs(frame.m_bath):.6g}")
    lines.append("stability eigenvalues (rad/s):")
    for eig in eigs:
        lines.append(f"  {eig.real:+.6e} {eig.imag:+.6e}j")
    report = "\n".join(lines)
    print(report)
    if args.out:
        with open(args.out, "w") as handle:
            handle.write(report + "\n")
    return 0


def _cmd_design(args) -> int:
    inputs = load_design(args.config)
    params = inputs.params
    if inputs.geometry is not None:
        g = tripartite_coupling(DEFAULT_CONSTANTS, inputs.geometry,
                                params.omega_a, params.omega_c)
        kerr = kerr_coefficient(DEFAULT_CONSTANTS,
                                inputs.geometry.sphere_radius)
        params = SystemParams(params.omega_a, params.omega_b, params.omega_c,
                              params.kappa_a, params.kappa_b, params.kappa_c,
                              g, kerr, params.temperature)
    lam = params.kappa_b / 2.0 if inputs.squeeze is None else inputs.squeeze
    target = LinearizedParams(
        detuning=math.hypot(inputs.detuning_big, lam),
        coupling=inputs.coupling, squeeze=lam,
        squeeze_phase=-0.5 * math.pi)
    amps, design = inverse_design(params, target, inputs.delta_d,
                                  inputs.delta_a)
    residual = relative_residual(params, design.drives, amps)

    # verify: re-solve the steady equations from the designed amplitudes
    solved = forward_solve(params, design.drives, initial=amps)
    recovered = linearized_params(solved, params, design.drives.delta_b)
    round_trip = max(
        abs(recovered.coupling - target.coupling) / max(target.coupling, 1e-300),
        abs(recovered.squeeze - target.squeeze) / target.squeeze,
        abs(recovered.squeeze_phase - target.squeeze_phase)
        / abs(target.squeeze_phase),
    )

    lines = [
        f"bare couplings: g/2pi = {params.g / TWO_PI:.6g} Hz, "
        f"k/2pi = {params.kerr / TWO_PI:.6g} Hz",
        f"amplitudes: A0 = {amps.a0:.6g}",
        f"            B+ = {amps.b_plus:.6g}, B- = {amps.b_minus:.6g}",
        f"            C+ = {amps.c_plus:.6g}, C- = {amps.c_minus:.6g}",
        f"steady-equation residual  : {residual:.3e}",
        f"round-trip residual       : {round_trip:.3e}",
        f"P_a     = {design.power_a * 1e3:.6g} mW",
        f"P_plus  = {design.power_plus * 1e3:.6g} mW",
        f"P_minus = {design.power_minus * 1e3:.6g} mW",
    ]
    print("\n".join(lines))

    if args.out:
        record = {
            "bare_coupling_rad_s": params.g,
            "kerr_rad_s": params.kerr,
            "amplitudes": {
                "a0": [amps.a0.real, amps.a0.imag],
                "b_plus": [amps.b_plus.real, amps.b_plus.imag],
                "b_minus": [amps.b_minus.real, amps.b_minus.imag],
                "c_plus": [amps.c_plus.real, amps.c_plus.imag],
                "c_minus": [amps.c_minus.real, amps.c_minus.imag],
            },
            "drives": {
                "eps_a": [design.drives.eps_a.real, design.drives.eps_a.imag],
                "eps_plus": [design.drives.eps_plus.real,
                             design.drives.eps_plus.imag],
                "eps_minus": [design.drives.eps_minus.real,
                              design.drives.eps_minus.imag],
                "delta_a_rad_s": design.drives.delta_a,
                "delta_b_rad_s": design.drives.delta_b,
                "delta_d_rad_s": design.drives.delta_d,
            },
            "residual": residual,
            "round_trip_residual": round_trip,
            "powers_W": design.powers_watt,
        }
        with open(args.out, "w") as handle:
            json.dump(record, handle, indent=2)
            handle.write("\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kerrcool",
        description="Steady-state cooling solver for the Kerr-squeezed "
                    "cavity magnomechanical system")
    parser.add_argument("--version", action="version",
                        version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sweep = sub.add_parser("sweep", help="occupancy curves over a parameter grid")
    sweep.add_argument("--config", required=True, help="parameter file")
    sweep.add_argument("--out", required=True, help="output CSV path")
    sweep.add_argument("--workers", type=int, default=1)
    sweep.add_argument("--no-plot", action="store_true",
                       help="skip the PNG figure next to the CSV")
    sweep.set_defaults(func=_cmd_sweep)

    solve = sub.add_parser("solve", help="full report for a single point")
    solve.add_argument("--config", required=True)
    solve.add_argument("--out", default=None, help="optional report file")
    solve.set_defaults(func=_cmd_solve)

    design = sub.add_parser("design", help="drive amplitudes and powers for "
                                           "a target operating point")
    design.add_argument("--config", required=True)
    design.add_argument("--out", default=None, help="optional JSON record")
    design.set_defaults(func=_cmd_design)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (ConfigError, InvalidParameterError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except (ConvergenceError, InstabilityError, NoSteadyStateError,
            KerrcoolError) as exc:
        print(f"solver error: {exc}", file=sys.stderr)
        return SOLVER_ERROR


if __name__ == "__main__":
    sys.exit(main())
