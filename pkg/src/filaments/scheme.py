"""Flowing finite-volume right-hand side of the curve evolution.

The node velocity collects four terms over the dual volume
V_k = (d_k + d_{k+1})/2:

    dX_k/dt * V_k = a_k * ((X_{k+1}-X_k)/d_{k+1} - (X_k-X_{k-1})/d_k)
                  + b_k * V_k * kappa_k * (T_k x N_k)
                  + F_k * V_k
                  + alpha_k * (X_{k+1} - X_{k-1})/2

cyclically for all k. The tangential term keeps the central-difference
form, not the dual volume; the division by V_k happens once, last.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from .geometry import CurveGeometry, _as_nodes

Coefficient = Union[float, Callable]


@dataclass(frozen=True)
class FlowParams:
    """Motion coefficients of one curve.

    a >= 0 scales the curvature (normal) velocity, b the binormal velocity.
    Either may be a constant or a callback coefficient(nodes, tangents)
    returning one value per node.
    """

    a: Coefficient = 1.0
    b: Coefficient = 0.0

    def __post_init__(self):
        if not callable(self.a):
            if not np.isfinite(self.a) or self.a < 0.0:
                raise ValueError(f"a must be finite and >= 0, got {self.a}")
        if not callable(self.b) and not np.isfinite(self.b):
            raise ValueError(f"b must be finite, got {self.b}")


def _per_node(coeff: Coefficient, nodes, tangents) -> np.ndarray:
    if callable(coeff):
        return np.broadcast_to(np.asarray(coeff(nodes, tangents), dtype=float), nodes.shape[:1])
    return np.full(nodes.shape[0], float(coeff))


def assemble_rhs(curve, geom: CurveGeometry, params: FlowParams,
                 force=None, alpha=None) -> np.ndarray:
    """Node velocities dX_k/dt of one curve; (M, 3) array.

    force is the per-node external force (default zero), alpha the
    tangential speed from the redistribution (default zero). geom must be
    the geometry of exactly this node configuration.
    """
    nodes = _as_nodes(curve)
    nxt = np.roll(nodes, -1, axis=0)
    prv = np.roll(nodes, 1, axis=0)
    d = geom.seg_lengths
    d_next = np.roll(d, -1)
    dual = geom.dual_lengths

    a_k = _per_node(params.a, nodes, geom.tangent)
    b_k = _per_node(params.b, nodes, geom.tangent)

    v = a_k[:, None] * ((nxt - nodes) / d_next[:, None] - (nodes - prv) / d[:, None])
    v += (b_k * dual * geom.curvature)[:, None] * np.cross(geom.tangent, geom.normal)
    if force is not None:
        v += np.asarray(force, dtype=float) * dual[:, None]
    if alpha is not None:
        v += np.asarray(alpha, dtype=float)[:, None] * (0.5 * (nxt - prv))
    return v / dual[:, None]
