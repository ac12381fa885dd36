"""Evolution of interacting closed space curves by curvature and binormal motion.

The engine moves families of closed 3D polylines with normal (curvature),
binormal and nonlocal Biot-Savart velocities, keeps node spacing uniform
through a tangential redistribution speed, integrates in time with an
adaptive Runge-Kutta-Merson scheme, and tracks the Gauss linking number as
a topological diagnostic.
"""

__version__ = "0.1.0"

from .curves import FourierCurve, FourierTerm, preset, preset_curve
from .errors import (
    CurvesTooClose,
    DegenerateSegment,
    FilamentError,
    NonFiniteDerivative,
    SingularEvaluation,
    StepSizeUnderflow,
)
from .forces import BiotSavartParams, assemble_forces, biot_savart_at_point, biot_savart_field
from .geometry import CurveGeometry, DiscreteCurve, compute_geometry, resample_uniform
from .integrator import SimulationState, StepControl, integrate, rkm_step
from .redistribution import compute_tangential
from .scheme import FlowParams, assemble_rhs
from .sim import CurveSpec, FrameRecord, SimulationConfig, build_rhs, run, save_run
from .topology import LinkingResult, linking_number_gauss, linking_number_via_force

__all__ = [
    "BiotSavartParams",
    "CurveGeometry",
    "CurveSpec",
    "CurvesTooClose",
    "DegenerateSegment",
    "DiscreteCurve",
    "FilamentError",
    "FlowParams",
    "FourierCurve",
    "FourierTerm",
    "FrameRecord",
    "LinkingResult",
    "NonFiniteDerivative",
    "SimulationConfig",
    "SimulationState",
    "SingularEvaluation",
    "StepControl",
    "StepSizeUnderflow",
    "assemble_forces",
    "assemble_rhs",
    "biot_savart_at_point",
    "biot_savart_field",
    "build_rhs",
    "compute_geometry",
    "compute_tangential",
    "integrate",
    "linking_number_gauss",
    "linking_number_via_force",
    "preset",
    "preset_curve",
    "resample_uniform",
    "rkm_step",
    "run",
    "save_run",
]
