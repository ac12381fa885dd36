"""Flat key=value run configuration with section prefixes.

Lines look like ``curve.1.preset=linked-circles-neg:1`` or
``step.tolerance=1e-3``; blank lines and ``#`` comments are ignored.
Unknown keys are rejected with the list of valid keys, parse failures cite
the line number and key, and ``--set key=value`` overrides are applied on
top before validation.
"""

from __future__ import annotations

import re

from .forces import BiotSavartParams
from .integrator import StepControl
from .scheme import FlowParams
from .sim import CurveSpec, SimulationConfig

VALID_KEYS = [
    "curve.<i>.preset",
    "curve.<i>.file",
    "curve.<i>.m",
    "curve.<i>.uniformize",
    "flow.a",
    "flow.b",
    "flow.<i>.a",
    "flow.<i>.b",
    "biot.delta",
    "biot.epsilon",
    "redistribution",
    "step.tolerance",
    "step.dt_init",
    "step.dt_min",
    "step.dt_max",
    "step.t_end",
    "output.dt",
    "output.dir",
]

_KEY_PATTERNS = [
    re.compile(r"^curve\.(\d+)\.(preset|file|m|uniformize)$"),
    re.compile(r"^flow\.(\d+)\.(a|b)$"),
    re.compile(r"^flow\.(a|b)$"),
    re.compile(r"^biot\.(delta|epsilon)$"),
    re.compile(r"^redistribution$"),
    re.compile(r"^step\.(tolerance|dt_init|dt_min|dt_max|t_end)$"),
    re.compile(r"^output\.(dt|dir)$"),
]


class ConfigError(ValueError):
    pass


def _check_key(key: str, where: str) -> None:
    if not any(p.match(key) for p in _KEY_PATTERNS):
        raise ConfigError(
            f"{where}: unknown key {key!r}; valid keys: {', '.join(VALID_KEYS)}"
        )


def parse_config_text(text: str, source: str = "<config>") -> dict[str, str]:
    entries: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected key=value, got {line!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        _check_key(key, f"{source}:{lineno}")
        entries[key] = value
    return entries


def load_config_file(path) -> dict[str, str]:
    with open(path) as fh:
        return parse_config_text(fh.read(), source=str(path))


def apply_overrides(entries: dict[str, str], overrides) -> dict[str, str]:
    merged = dict(entries)
    for item in overrides or []:
        if "=" not in item:
            raise ConfigError(f"override {item!r}: expected key=value")
        key, _, value = item.partition("=")
        key = key.strip()
        _check_key(key, f"override {item!r}")
        merged[key] = value.strip()
    return merged


def _to_float(entries, key, where="config"):
    try:
        return float(entries[key])
    except ValueError:
        raise ConfigError(f"{where}: key {key}: not a number: {entries[key]!r}") from None


def _to_int(entries, key, where="config"):
    try:
        return int(entries[key])
    except ValueError:
        raise ConfigError(f"{where}: key {key}: not an integer: {entries[key]!r}") from None


def _to_flag(entries, key, where="config"):
    value = entries[key].lower()
    if value in ("on", "true", "1", "yes"):
        return True
    if value in ("off", "false", "0", "no"):
        return False
    raise ConfigError(f"{where}: key {key}: expected on or off, got {entries[key]!r}")


def build_config(entries: dict[str, str]) -> SimulationConfig:
    """Resolve a parsed key=value mapping into a SimulationConfig."""
    indices = sorted(
        {int(m.group(1)) for k in entries for m in [re.match(r"^curve\.(\d+)\.", k)] if m}
    )
    if not indices:
        raise ConfigError("config defines no curves (need curve.1.preset or curve.1.file)")
    if indices != list(range(1, len(indices) + 1)):
        raise ConfigError(f"curve indices must be 1..n without gaps, got {indices}")

    curves = []
    flows = []
    for i in indices:
        preset = entries.get(f"curve.{i}.preset")
        file = entries.get(f"curve.{i}.file")
        if (preset is None) == (file is None):
            raise ConfigError(f"curve.{i}: set exactly one of curve.{i}.preset, curve.{i}.file")
        m = _to_int(entries, f"curve.{i}.m") if f"curve.{i}.m" in entries else 200
        uniformize = (
            _to_flag(entries, f"curve.{i}.uniformize")
            if f"curve.{i}.uniformize" in entries
            else True
        )
        curves.append(CurveSpec(preset=preset, file=file, m=m, uniformize=uniformize))

        a_key = f"flow.{i}.a" if f"flow.{i}.a" in entries else "flow.a"
        b_key = f"flow.{i}.b" if f"flow.{i}.b" in entries else "flow.b"
        a = _to_float(entries, a_key) if a_key in entries else 1.0
        b = _to_float(entries, b_key) if b_key in entries else 0.0
        flows.append(FlowParams(a=a, b=b))

    biot = BiotSavartParams(
        delta=_to_float(entries, "biot.delta") if "biot.delta" in entries else 0.1,
        epsilon=_to_float(entries, "biot.epsilon") if "biot.epsilon" in entries else 1e-3,
    )

    if "step.t_end" not in entries:
        raise ConfigError("config must set step.t_end")
    control_kwargs = {}
    if "step.tolerance" in entries:
        control_kwargs["tolerance"] = _to_float(entries, "step.tolerance")
    if "step.dt_init" in entries:
        control_kwargs["initial_dt"] = _to_float(entries, "step.dt_init")
    if "step.dt_min" in entries:
        control_kwargs["dt_min"] = _to_float(entries, "step.dt_min")
    if "step.dt_max" in entries:
        control_kwargs["dt_max"] = _to_float(entries, "step.dt_max")

    return SimulationConfig(
        curves=tuple(curves),
        flows=tuple(flows),
        biot=biot,
        control=StepControl(**control_kwargs),
        redistribution=_to_flag(entries, "redistribution")
        if "redistribution" in entries
        else True,
        t_end=_to_float(entries, "step.t_end"),
        frame_dt=_to_float(entries, "output.dt") if "output.dt" in entries else None,
        output_dir=entries.get("output.dir"),
    )
