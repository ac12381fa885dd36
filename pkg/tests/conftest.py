import numpy as np
import pytest

from filaments.forces import BiotSavartParams
from filaments.integrator import StepControl
from filaments.scheme import FlowParams
from filaments.sim import CurveSpec, SimulationConfig, run


def circle_nodes(m, radius=1.0, center=(0.0, 0.0, 0.0)):
    """Uniform polygon on a circle in the xy-plane, counterclockwise."""
    th = 2.0 * np.pi * np.arange(m) / m
    return np.column_stack([
        center[0] + radius * np.cos(th),
        center[1] + radius * np.sin(th),
        np.full(m, center[2], dtype=float),
    ])


def rotation_matrix(axis, angle):
    axis = np.asarray(axis, dtype=float)
    axis = axis / np.linalg.norm(axis)
    x, y, z = axis
    c, s = np.cos(angle), np.sin(angle)
    cc = 1.0 - c
    return np.array([
        [c + x * x * cc, x * y * cc - z * s, x * z * cc + y * s],
        [y * x * cc + z * s, c + y * y * cc, y * z * cc - x * s],
        [z * x * cc - y * s, z * y * cc + x * s, c + z * z * cc],
    ])


def linked_pair_config(t_end=0.146, frame_dt=0.031, m=200, redistribution=True):
    return SimulationConfig(
        curves=(
            CurveSpec(preset="linked-circles-neg:1", m=m),
            CurveSpec(preset="linked-circles-neg:2", m=m),
        ),
        flows=(FlowParams(a=1.0, b=0.0), FlowParams(a=1.0, b=0.0)),
        biot=BiotSavartParams(delta=0.1, epsilon=1e-3),
        control=StepControl(tolerance=1e-3),
        t_end=t_end,
        frame_dt=frame_dt,
        redistribution=redistribution,
    )


@pytest.fixture(scope="session")
def linked_pair_frames():
    """Coupled evolution of the negatively linked circle pair, shared by the
    redistribution and topology acceptance criteria (the heavy fixture)."""
    return run(linked_pair_config())
