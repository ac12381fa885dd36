"""Regularized Biot-Savart field of polygonal curves and force assembly.

The kernel integrates (X - Y) x dY / (|X - Y|^2 + eps^2)^(3/2) over a closed
source polyline with one midpoint evaluation per segment, the exact chord as
the dl factor. With eps = 0 this is the raw singular kernel and evaluation
on the source is rejected. Curves exert no such force on themselves; in a
family, each curve collects the scaled fields of all the others.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._threads import map_chunks, thread_count
from .errors import SingularEvaluation
from .geometry import _as_nodes, point_polyline_distance, segment_midpoints


@dataclass(frozen=True)
class BiotSavartParams:
    """Interaction strength and regularization of the coupling force.

    delta scales the assembled force between distinct curves; epsilon is a
    Rosenhead-style mollification length added in quadrature to the kernel
    denominator (epsilon = 0 gives the raw singular kernel).
    """

    delta: float = 0.1
    epsilon: float = 1e-3

    def __post_init__(self):
        if not np.isfinite(self.delta):
            raise ValueError(f"delta must be finite, got {self.delta}")
        if not (np.isfinite(self.epsilon) and self.epsilon >= 0.0):
            raise ValueError(f"epsilon must be >= 0, got {self.epsilon}")


def biot_savart_field(points, source, params: BiotSavartParams) -> np.ndarray:
    """Unscaled kernel sum at many points; (P, 3) in, (P, 3) out.

    Raises SingularEvaluation when epsilon = 0 and some point sits within
    1e-12 * L of the source polyline.
    """
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    nodes = _as_nodes(source)
    mids, chords = segment_midpoints(nodes)
    seg_len = np.linalg.norm(chords, axis=1)
    total_len = float(seg_len.sum())

    if params.epsilon == 0.0:
        dist = point_polyline_distance(pts, nodes)
        bad = dist < 1e-12 * total_len
        if np.any(bad):
            idx = int(np.argmax(bad))
            raise SingularEvaluation(
                f"point {idx} lies on the source polyline (distance {dist[idx]:.3e})",
                point_index=idx,
            )

    eps2 = params.epsilon ** 2
    out = np.empty_like(pts)
    mx, my, mz = mids[:, 0], mids[:, 1], mids[:, 2]
    cx, cy, cz = chords[:, 0], chords[:, 1], chords[:, 2]

    def eval_block(lo, hi):
        # components unrolled; the broadcast cross product is the hot spot
        dx = pts[lo:hi, 0, None] - mx
        dy = pts[lo:hi, 1, None] - my
        dz = pts[lo:hi, 2, None] - mz
        w = (dx * dx + dy * dy + dz * dz + eps2) ** -1.5
        out[lo:hi, 0] = ((dy * cz - dz * cy) * w).sum(axis=1)
        out[lo:hi, 1] = ((dz * cx - dx * cz) * w).sum(axis=1)
        out[lo:hi, 2] = ((dx * cy - dy * cx) * w).sum(axis=1)

    if thread_count() > 1:
        map_chunks(eval_block, pts.shape[0])
    else:
        eval_block(0, pts.shape[0])
    return out


def biot_savart_at_point(point, source, params: BiotSavartParams) -> np.ndarray:
    """Unscaled kernel sum at a single 3D point."""
    return biot_savart_field(np.asarray(point, dtype=float).reshape(1, 3), source, params)[0]


def assemble_forces(curve_list, params: BiotSavartParams) -> list[np.ndarray]:
    """Per-node coupling force on each curve of a family.

    The force at node k of curve i is delta times the summed fields of every
    other curve evaluated at X_k; with a single curve the force is zero.
    Returns one (M_i, 3) array per curve.
    """
    if not curve_list:
        raise ValueError("need at least one curve")
    node_arrays = [_as_nodes(c) for c in curve_list]
    forces = []
    for i, targets in enumerate(node_arrays):
        total = np.zeros_like(targets)
        for j, src in enumerate(node_arrays):
            if j == i:
                continue
            try:
                total += biot_savart_field(targets, src, params)
            except SingularEvaluation as exc:
                raise SingularEvaluation(
                    f"node {exc.point_index} of curve {i} lies on curve {j}",
                    point_index=exc.point_index,
                ) from exc
        forces.append(params.delta * total)
    return forces
