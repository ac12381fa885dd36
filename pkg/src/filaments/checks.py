"""Built-in invariant suite behind the ``check`` CLI subcommand.

Each check runs a small simulation or quadrature with a known analytic or
topological answer and reports the measured error against a fixed bound.
"""

from __future__ import annotations

import numpy as np

from .curves import preset
from .forces import BiotSavartParams, biot_savart_at_point
from .integrator import StepControl
from .scheme import FlowParams
from .sim import CurveSpec, SimulationConfig, run
from .topology import linking_number_gauss


def _radius(nodes) -> float:
    center = nodes.mean(axis=0)
    return float(np.linalg.norm(nodes - center, axis=1).mean())


def check_shrinking_circle():
    """Curvature flow of the unit circle against r(t) = sqrt(1 - 2t)."""
    config = SimulationConfig(
        curves=(CurveSpec(preset="linked-circles-neg:1", m=128),),
        flows=(FlowParams(a=1.0, b=0.0),),
        biot=BiotSavartParams(delta=0.0),
        control=StepControl(tolerance=1e-3),
        t_end=0.3,
        frame_dt=0.1,
    )
    frames = run(config)
    worst_r = 0.0
    worst_len = 0.0
    for frame in frames[1:]:
        expected = np.sqrt(1.0 - 2.0 * frame.time)
        r = _radius(frame.curves[0])
        worst_r = max(worst_r, abs(r - expected))
        worst_len = max(worst_len, abs(frame.lengths[0] - 2.0 * np.pi * r) / (2.0 * np.pi * r))
    ok = worst_r < 2e-3 and worst_len < 5e-3
    return "shrinking-circle", ok, f"max radius error {worst_r:.2e}, max length error {worst_len:.2e}"


def check_binormal_translation():
    """Pure binormal flow translates a circle rigidly along its axis."""
    config = SimulationConfig(
        curves=(CurveSpec(preset="linked-circles-neg:1", m=200),),
        flows=(FlowParams(a=0.0, b=1.0),),
        biot=BiotSavartParams(delta=0.0),
        control=StepControl(tolerance=1e-3),
        t_end=0.5,
        frame_dt=0.5,
    )
    frames = run(config)
    first, last = frames[0].curves[0], frames[-1].curves[0]
    lift = float(last[:, 2].mean() - first[:, 2].mean())
    drift = abs(_radius(last) - _radius(first))
    stretch = abs(frames[-1].lengths[0] - frames[0].lengths[0]) / frames[0].lengths[0]
    ok = abs(lift - 0.5) < 1e-2 and drift < 1e-3 and stretch < 1e-3
    return "binormal-translation", ok, (
        f"lift {lift:.5f}, radius drift {drift:.2e}, length drift {stretch:.2e}"
    )


def check_linking_presets():
    """The four preset pairs snap to their known integers."""
    cases = [
        ("linked-circles-neg", None, 200, -1),
        ("linked-circles-pos", None, 200, +1),
        ("eight-knot", "knot-circle", 400, 0),
        ("eight-knot", "knot-ellipse", 400, -2),
    ]
    results = []
    for name_a, name_b, m, expected in cases:
        if name_b is None:
            c1, c2 = (fc.sample(m) for fc in preset(name_a))
            label = name_a
        else:
            c1 = preset(name_a)[0].sample(m)
            c2 = preset(name_b)[0].sample(m)
            label = f"{name_a}+{name_b}"
        res = linking_number_gauss(c1, c2)
        ok = res.rounded == expected and res.residual < 0.05
        results.append(
            (f"linking:{label}", ok, f"rounded {res.rounded} (want {expected}), residual {res.residual:.3f}")
        )
    return results


def check_field_oracle():
    """Kernel value at the center of the unit circle is (0, 0, -2*pi)."""
    circle = preset("linked-circles-neg")[0].sample(400)
    value = biot_savart_at_point((0.0, 0.0, 0.0), circle, BiotSavartParams(epsilon=0.0))
    err = float(np.linalg.norm(value - np.array([0.0, 0.0, -2.0 * np.pi])))
    return "field-center-oracle", err < 1e-3, f"|error| = {err:.2e}"


def run_all():
    """All checks as (name, ok, detail) tuples."""
    results = [check_shrinking_circle(), check_binormal_translation()]
    results.extend(check_linking_presets())
    results.append(check_field_oracle())
    return results
