"""Multi-curve simulation driver: coupling, frame capture, diagnostics, file output.

Each right-hand-side evaluation unpacks the flat state into per-curve node
arrays, recomputes every geometric quantity, assembles the mutual coupling
forces, solves for the tangential redistribution speeds and stacks the
finite-volume velocities back into one vector. Frames are captured at a
fixed output cadence by linear interpolation between the accepted steps
that bracket each target time.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field, replace

import numpy as np

from . import __version__
from .curves import load_curve_csv, preset_curve
from .errors import DegenerateSegment, NonFiniteDerivative, StepSizeUnderflow
from .forces import BiotSavartParams, assemble_forces
from .geometry import DiscreteCurve, compute_geometry, polyline_min_distance
from .integrator import SimulationState, StepControl, integrate
from .redistribution import compute_tangential
from .scheme import FlowParams, assemble_rhs
from .topology import LinkingResult, linking_number_gauss


@dataclass(frozen=True)
class CurveSpec:
    """One initial curve: a preset name (``name`` or ``name:k``) or a CSV file."""

    preset: str | None = None
    file: str | None = None
    m: int = 200
    uniformize: bool = True

    def build(self) -> DiscreteCurve:
        if (self.preset is None) == (self.file is None):
            raise ValueError("curve spec needs exactly one of preset or file")
        if self.preset is not None:
            return preset_curve(self.preset).sample(self.m, uniformize=self.uniformize)
        curve = load_curve_csv(self.file)
        if self.uniformize or len(curve) != self.m:
            from .geometry import resample_uniform

            curve = resample_uniform(curve, self.m)
        return curve


@dataclass(frozen=True)
class SimulationConfig:
    curves: tuple[CurveSpec, ...]
    flows: tuple[FlowParams, ...]
    biot: BiotSavartParams = field(default_factory=BiotSavartParams)
    control: StepControl = field(default_factory=StepControl)
    redistribution: bool = True
    t_end: float = 0.1
    frame_dt: float | None = None
    output_dir: str | None = None

    def __post_init__(self):
        if not self.curves:
            raise ValueError("need at least one curve")
        if len(self.flows) != len(self.curves):
            raise ValueError(
                f"{len(self.curves)} curves but {len(self.flows)} flow parameter sets"
            )
        if not self.t_end > 0.0:
            raise ValueError(f"t_end must be > 0, got {self.t_end}")
        if self.frame_dt is not None and not self.frame_dt > 0.0:
            raise ValueError(f"frame_dt must be > 0, got {self.frame_dt}")

    def resolved_frame_dt(self) -> float:
        return self.frame_dt if self.frame_dt is not None else self.t_end / 5.0

    def frame_times(self) -> np.ndarray:
        """Multiples of the output cadence below t_end, then t_end itself."""
        dt = self.resolved_frame_dt()
        n = int(math.floor(self.t_end / dt + 1e-9))
        times = [k * dt for k in range(n + 1) if k * dt < self.t_end * (1 - 1e-12)]
        times.append(self.t_end)
        return np.asarray(times)


@dataclass
class FrameRecord:
    """One saved snapshot with diagnostics derived from its own nodes."""

    time: float
    curves: list[np.ndarray]
    lengths: list[float]
    max_curvatures: list[float]
    min_distance: float
    linking: dict[tuple[int, int], LinkingResult | None]
    step_sizes: list[float]
    status: str = "ok"


def _pack(arrays) -> np.ndarray:
    return np.concatenate([a.ravel() for a in arrays])


def _unpack(y: np.ndarray, counts) -> list[np.ndarray]:
    out = []
    offset = 0
    for m in counts:
        out.append(y[offset:offset + 3 * m].reshape(m, 3))
        offset += 3 * m
    return out


def build_rhs(config: SimulationConfig, counts):
    """State-to-derivative closure over the configured curve family."""
    flows = config.flows
    biot = config.biot
    redistribute = config.redistribution
    single = len(counts) == 1

    def rhs(t, y):
        nodes = _unpack(y, counts)
        geoms = []
        for i, n in enumerate(nodes):
            try:
                geoms.append(compute_geometry(n))
            except DegenerateSegment as exc:
                raise DegenerateSegment(f"curve {i}: {exc}") from exc
        if single:
            forces = [None] * len(nodes)
        else:
            forces = assemble_forces(nodes, biot)
        velocities = []
        for n, g, fp, f in zip(nodes, geoms, flows, forces):
            alpha = None
            if redistribute:
                a_k = fp.a(n, g.tangent) if callable(fp.a) else fp.a
                v_n = a_k * g.curvature
                drive = None
                if f is not None:
                    v_n = v_n + (f * g.normal).sum(axis=1)
                    drive = (f * g.tangent).sum(axis=1)
                alpha = compute_tangential(g, v_n, drive)
            velocities.append(assemble_rhs(n, g, fp, force=f, alpha=alpha))
        return _pack(velocities)

    return rhs


def compute_diagnostics(node_arrays):
    """Lengths, curvature maxima, pairwise clearance and linking of a family."""
    lengths = []
    max_curv = []
    for n in node_arrays:
        try:
            g = compute_geometry(n)
            lengths.append(g.length)
            max_curv.append(float(g.curvature.max()))
        except DegenerateSegment:
            lengths.append(float(np.linalg.norm(n - np.roll(n, 1, axis=0), axis=1).sum()))
            max_curv.append(float("nan"))
    min_dist = math.inf
    linking: dict[tuple[int, int], LinkingResult | None] = {}
    for i in range(len(node_arrays)):
        for j in range(i + 1, len(node_arrays)):
            min_dist = min(min_dist, polyline_min_distance(node_arrays[i], node_arrays[j]))
            try:
                linking[(i, j)] = linking_number_gauss(node_arrays[i], node_arrays[j])
            except Exception:
                linking[(i, j)] = None
    return lengths, max_curv, min_dist, linking


def _make_frame(t, node_arrays, step_sizes, status="ok") -> FrameRecord:
    lengths, max_curv, min_dist, linking = compute_diagnostics(node_arrays)
    return FrameRecord(
        time=t,
        curves=[n.copy() for n in node_arrays],
        lengths=lengths,
        max_curvatures=max_curv,
        min_distance=min_dist,
        linking=linking,
        step_sizes=list(step_sizes),
        status=status,
    )


def initial_state(config: SimulationConfig):
    """Build the initial curves and stack them into the ODE state."""
    curves = [spec.build() for spec in config.curves]
    counts = [len(c) for c in curves]
    y0 = _pack([c.nodes for c in curves])
    return SimulationState(y0, 0.0), counts


def run(config: SimulationConfig) -> list[FrameRecord]:
    """Integrate the family to t_end, capturing frames at the output cadence.

    On step-size underflow or a non-finite derivative the run stops early
    and the last accepted state is appended as a diagnostic frame whose
    status names the failure.
    """
    state0, counts = initial_state(config)
    rhs = build_rhs(config, counts)

    control = config.control
    if control.initial_dt is None:
        h = 1.0 / max(counts)
        control = replace(control, initial_dt=4.0 * h * h)

    targets = list(config.frame_times())
    frames = [_make_frame(0.0, _unpack(state0.y, counts), [])]
    targets = [t for t in targets if t > 0.0]

    prev_t = state0.t
    prev_y = state0.y.copy()
    pending_steps: list[float] = []

    def observer(s: SimulationState):
        nonlocal prev_t, prev_y
        pending_steps.append(s.t - prev_t)
        while targets and s.t >= targets[0] - 1e-12:
            t_star = targets.pop(0)
            if s.t == prev_t:
                y_star = s.y
            else:
                w = (t_star - prev_t) / (s.t - prev_t)
                y_star = prev_y + w * (s.y - prev_y)
            frames.append(_make_frame(t_star, _unpack(y_star, counts), pending_steps))
            pending_steps.clear()
        prev_t = s.t
        prev_y = s.y.copy()

    status = "ok"
    try:
        integrate(state0, config.t_end, control, rhs, observer=observer)
    except StepSizeUnderflow as exc:
        status = f"step_size_underflow at t={exc.t:.6g}"
    except NonFiniteDerivative as exc:
        status = f"non_finite_derivative: {exc}"
    if status != "ok":
        frames.append(_make_frame(prev_t, _unpack(prev_y, counts), pending_steps, status))
    return frames


def _fmt(x) -> str:
    return "%.17g" % x


def save_run(frames, config: SimulationConfig, out_dir, manifest_lines=None) -> None:
    """Write frame CSVs, diagnostics.csv and the manifest into out_dir.

    Frame files are named frame_<idx>_curve_<i>.csv (frames 0-based, curves
    1-based) with an x,y,z header; every value carries 17 significant digits
    so identical runs produce identical bytes.
    """
    os.makedirs(out_dir, exist_ok=True)
    n_curves = len(frames[0].curves)
    pairs = sorted(frames[0].linking.keys())

    for idx, frame in enumerate(frames):
        for i, nodes in enumerate(frame.curves, start=1):
            path = os.path.join(out_dir, f"frame_{idx}_curve_{i}.csv")
            with open(path, "w", newline="") as fh:
                fh.write("x,y,z\n")
                for row in nodes:
                    fh.write(f"{_fmt(row[0])},{_fmt(row[1])},{_fmt(row[2])}\n")

    header = ["time"]
    header += [f"length_{i}" for i in range(1, n_curves + 1)]
    header += [f"max_kappa_{i}" for i in range(1, n_curves + 1)]
    header += ["min_distance"]
    for i, j in pairs:
        header += [f"link_{i + 1}_{j + 1}", f"link_residual_{i + 1}_{j + 1}"]
    header += ["steps", "status"]
    with open(os.path.join(out_dir, "diagnostics.csv"), "w", newline="") as fh:
        fh.write(",".join(header) + "\n")
        for frame in frames:
            row = [_fmt(frame.time)]
            row += [_fmt(v) for v in frame.lengths]
            row += [_fmt(v) for v in frame.max_curvatures]
            row += [_fmt(frame.min_distance)]
            for pair in pairs:
                res = frame.linking.get(pair)
                if res is None:
                    row += ["nan", "nan"]
                else:
                    row += [str(res.rounded), _fmt(res.residual)]
            row += [str(len(frame.step_sizes)), frame.status]
            fh.write(",".join(row) + "\n")

    with open(os.path.join(out_dir, "manifest"), "w", newline="") as fh:
        fh.write(f"version={__version__}\n")
        if manifest_lines:
            for line in manifest_lines:
                fh.write(line + "\n")
        else:
            for line in describe_config(config):
                fh.write(line + "\n")
        fh.write(f"n_frames={len(frames)}\n")
        fh.write("frame_times=" + ",".join(_fmt(f.time) for f in frames) + "\n")
        fh.write(f"status={frames[-1].status}\n")


def describe_config(config: SimulationConfig) -> list[str]:
    """Flat key=value lines naming every resolved setting of a config."""
    lines = []
    for i, (spec, flow) in enumerate(zip(config.curves, config.flows), start=1):
        if spec.preset is not None:
            lines.append(f"curve.{i}.preset={spec.preset}")
        else:
            lines.append(f"curve.{i}.file={spec.file}")
        lines.append(f"curve.{i}.m={spec.m}")
        lines.append(f"curve.{i}.uniformize={'on' if spec.uniformize else 'off'}")
        a = flow.a if not callable(flow.a) else "<callable>"
        b = flow.b if not callable(flow.b) else "<callable>"
        lines.append(f"flow.{i}.a={a}")
        lines.append(f"flow.{i}.b={b}")
    lines.append(f"biot.delta={config.biot.delta}")
    lines.append(f"biot.epsilon={config.biot.epsilon}")
    lines.append(f"redistribution={'on' if config.redistribution else 'off'}")
    lines.append(f"step.tolerance={config.control.tolerance}")
    if config.control.initial_dt is not None:
        lines.append(f"step.dt_init={config.control.initial_dt}")
    lines.append(f"step.dt_min={config.control.dt_min}")
    lines.append(f"step.dt_max={config.control.dt_max}")
    lines.append(f"step.t_end={config.t_end}")
    lines.append(f"output.dt={config.resolved_frame_dt()}")
    return lines
