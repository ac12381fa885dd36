"""Gauss linking number of two closed polygonal curves.

Two independent routes to the same integer: the double integral of
det(dX1, dX2, X1 - X2)/|X1 - X2|^3 over both curves (prefactor 1/(4*pi)),
and the line integral of the unregularized Biot-Savart field of one curve
along the other (prefactor -1/(4*pi)). Both use segment-midpoint
quadrature; the residual to the nearest integer measures quadrature error.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import CurvesTooClose
from .forces import BiotSavartParams, biot_savart_field
from .geometry import _as_nodes, polyline_min_distance, segment_midpoints

FOUR_PI = 4.0 * np.pi


@dataclass(frozen=True)
class LinkingResult:
    """Quadrature value of the linking integral with its integer snap."""

    raw_value: float
    rounded: int
    residual: float


def _to_result(raw: float) -> LinkingResult:
    rounded = int(np.rint(raw))
    residual = abs(raw - rounded)
    if residual >= 0.2:
        warnings.warn(
            f"linking-number residual {residual:.3f} is large; quadrature too coarse",
            stacklevel=3,
        )
    return LinkingResult(raw_value=raw, rounded=rounded, residual=residual)


def _check_separation(nodes1, nodes2) -> None:
    total = float(np.linalg.norm(nodes1 - np.roll(nodes1, 1, axis=0), axis=1).sum()
                  + np.linalg.norm(nodes2 - np.roll(nodes2, 1, axis=0), axis=1).sum())
    dist = polyline_min_distance(nodes1, nodes2)
    if dist < 1e-9 * total:
        raise CurvesTooClose(
            f"curves are {dist:.3e} apart (threshold {1e-9 * total:.3e}); "
            "the linking quadrature is unreliable"
        )


def linking_number_gauss(curve1, curve2) -> LinkingResult:
    """Linking number from the double sum over segment pairs."""
    n1 = _as_nodes(curve1)
    n2 = _as_nodes(curve2)
    _check_separation(n1, n2)
    m1, v1 = segment_midpoints(n1)
    m2, v2 = segment_midpoints(n2)
    dx = m1[:, 0, None] - m2[None, :, 0]
    dy = m1[:, 1, None] - m2[None, :, 1]
    dz = m1[:, 2, None] - m2[None, :, 2]
    w = (dx * dx + dy * dy + dz * dz) ** -1.5
    # det(v1, v2, d) = v1 . (v2 x d), components unrolled
    ex = v2[None, :, 1] * dz - v2[None, :, 2] * dy
    ey = v2[None, :, 2] * dx - v2[None, :, 0] * dz
    ez = v2[None, :, 0] * dy - v2[None, :, 1] * dx
    det = v1[:, 0, None] * ex + v1[:, 1, None] * ey + v1[:, 2, None] * ez
    raw = float((det * w).sum()) / FOUR_PI
    return _to_result(raw)


def linking_number_via_force(curve1, curve2) -> LinkingResult:
    """Linking number as the circulation of curve2's raw field along curve1."""
    n1 = _as_nodes(curve1)
    n2 = _as_nodes(curve2)
    _check_separation(n1, n2)
    m1, v1 = segment_midpoints(n1)
    field = biot_savart_field(m1, n2, BiotSavartParams(delta=1.0, epsilon=0.0))
    raw = -float((field * v1).sum()) / FOUR_PI
    return _to_result(raw)
