"""Parameter-file loading for the command-line tools.

Files are flat key-value text with sections, e.g.::

    [system]
    omega_b = 30e9      ; Hz
    omega_c = 50e3      ; Hz
    kappa_b = 100e3     ; Hz
    kappa_c = 5e-5      ; Hz
    temperature = 0.5   ; K
    detuning_big = 5e3  ; Hz
    g_cal = 10e3        ; Hz
    squeeze = optimal

    [sweep]
    variable = kappa_b
    start = 50e3
    stop = 500e3
    points = 60
    scale = linear

Frequencies and rates are entered in ordinary frequency (Hz) and converted
to rad/s on load; temperatures are kelvin; geometry is SI.
"""

from __future__ import annotations

import configparser
import math
from dataclasses import dataclass

from .constants import TWO_PI, GeometryParams, SystemParams
from .errors import ConfigError
from .sweep import MODES, OperatingPoint, SweepSpec


def _read(path: str) -> configparser.ConfigParser:
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    loaded = parser.read(path)
    if not loaded:
        raise ConfigError(f"cannot read parameter file {path!r}")
    return parser


def _get(parser, section: str, key: str, kind=float, default=None):
    if not parser.has_section(section):
        if default is not None:
            return default
        raise ConfigError(f"missing section [{section}]")
    if not parser.has_option(section, key):
        if default is not None:
            return default
        raise ConfigError(f"missing key {key!r} in section [{section}]")
    raw = parser.get(section, key)
    try:
        return kind(raw)
    except ValueError as exc:
        raise ConfigError(
            f"[{section}] {key} = {raw!r}: expected {kind.__name__}") from exc


def _squeeze_value(raw: str) -> float | None:
    if raw.strip().lower() == "optimal":
        return None
    try:
        return TWO_PI * float(raw)
    except ValueError as exc:
        raise ConfigError(
            f"squeeze must be 'optimal' or a rate in Hz, got {raw!r}") from exc


def load_operating_point(parser) -> OperatingPoint:
    sq = _get(parser, "system", "squeeze", kind=str, default="optimal")
    return OperatingPoint(
        omega_b=TWO_PI * _get(parser, "system", "omega_b"),
        omega_c=TWO_PI * _get(parser, "system", "omega_c"),
        kappa_b=TWO_PI * _get(parser, "system", "kappa_b"),
        kappa_c=TWO_PI * _get(parser, "system", "kappa_c"),
        temperature=_get(parser, "system", "temperature"),
        detuning_big=TWO_PI * _get(parser, "system", "detuning_big"),
        g_cal=TWO_PI * _get(parser, "system", "g_cal"),
        squeeze=_squeeze_value(sq),
    )


def load_sweep(path: str) -> SweepSpec:
    parser = _read(path)
    point = load_operating_point(parser)
    modes_raw = _get(parser, "sweep", "modes", kind=str,
                     default=",".join(MODES))
    modes = tuple(m.strip() for m in modes_raw.split(",") if m.strip())
    spec = SweepSpec(
        variable=_get(parser, "sweep", "variable", kind=str),
        start=_get(parser, "sweep", "start"),
        stop=_get(parser, "sweep", "stop"),
        points=_get(parser, "sweep", "points", kind=int),
        scale=_get(parser, "sweep", "scale", kind=str, default="linear"),
        modes=modes,
        fixed=point,
    )
    return spec


def load_solve_point(path: str) -> OperatingPoint:
    return load_operating_point(_read(path))


@dataclass(frozen=True)
class DesignInputs:
    """Inputs for the drive-design command."""

    params: SystemParams
    geometry: GeometryParams | None
    coupling: float       # target enhanced coupling G, rad/s
    squeeze: float | None  # target squeeze rate, rad/s (None = kappa_b / 2)
    detuning_big: float   # operating transformed detuning, rad/s
    delta_d: float        # tone half-splitting, rad/s
    delta_a: float        # cavity drive detuning, rad/s


def load_design(path: str) -> DesignInputs:
    parser = _read(path)
    geometry = None
    if parser.has_section("geometry"):
        geometry = GeometryParams(
            cavity_volume=_get(parser, "geometry", "cavity_volume"),
            sphere_radius=_get(parser, "geometry", "sphere_radius"))
    g_raw = _get(parser, "system", "g", default=math.nan)
    kerr_raw = _get(parser, "system", "kerr", default=math.nan)
    if geometry is None and (math.isnan(g_raw) or math.isnan(kerr_raw)):
        raise ConfigError("design needs either a [geometry] section or "
                          "explicit g and kerr values in [system] (Hz)")
    params = SystemParams(
        omega_a=TWO_PI * _get(parser, "system", "omega_a"),
        omega_b=TWO_PI * _get(parser, "system", "omega_b"),
        omega_c=TWO_PI * _get(parser, "system", "omega_c"),
        kappa_a=TWO_PI * _get(parser, "system", "kappa_a"),
        kappa_b=TWO_PI * _get(parser, "system", "kappa_b"),
        kappa_c=TWO_PI * _get(parser, "system", "kappa_c"),
        g=TWO_PI * g_raw if not math.isnan(g_raw) else 0.0,
        kerr=TWO_PI * kerr_raw if not math.isnan(kerr_raw) else 0.0,
        temperature=_get(parser, "system", "temperature", default=0.0),
    )
    sq = _get(parser, "targets", "squeeze", kind=str, default="optimal")
    return DesignInputs(
        params=params,
        geometry=geometry,
        coupling=TWO_PI * _get(parser, "targets", "coupling"),
        squeeze=_squeeze_value(sq),
        detuning_big=TWO_PI * _get(parser, "targets", "detuning_big"),
        delta_d=TWO_PI * _get(parser, "targets", "delta_d"),
        delta_a=TWO_PI * _get(parser, "targets", "delta_a", default=0.0),
    )
