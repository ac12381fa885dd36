"""Discrete closed space curves and their per-node differential geometry.

A curve is a closed oriented polyline of M >= 3 nodes in R^3; indexing is
cyclic. All derived quantities follow the finite-volume collocation
formulas used by the evolution scheme: segment lengths d_k = |X_k - X_{k-1}|,
the curvature vector as a second difference of unit chords divided by the
dual volume (d_k + d_{k+1})/2, and the central-difference tangent
T_k = (X_{k+1} - X_{k-1}) / (d_k + d_{k+1}). The tangent is deliberately
left un-normalized so that the frame matches the scheme exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateSegment

# Curvature below this, scaled by the node density M/L, is treated as zero
# and the principal normal is flagged undefined.
CURVATURE_FLOOR = 1e-12


class DiscreteCurve:
    """Closed oriented polyline of M >= 3 distinct nodes in R^3.

    The node order fixes the orientation; node M connects back to node 0.
    Construction validates shape, finiteness and that consecutive nodes
    (including the closing segment) are distinct.
    """

    __slots__ = ("nodes",)

    def __init__(self, nodes):
        nodes = np.asarray(nodes, dtype=float)
        if nodes.ndim != 2 or nodes.shape[1] != 3:
            raise ValueError(f"expected an (M, 3) array of nodes, got shape {nodes.shape}")
        if nodes.shape[0] < 3:
            raise ValueError(f"a closed curve needs at least 3 nodes, got {nodes.shape[0]}")
        if not np.isfinite(nodes).all():
            raise ValueError("curve nodes must all be finite")
        gaps = np.linalg.norm(nodes - np.roll(nodes, 1, axis=0), axis=1)
        if np.any(gaps == 0.0):
            k = int(np.argmin(gaps))
            raise DegenerateSegment(f"coincident consecutive nodes at index {k}")
        self.nodes = nodes

    def __len__(self):
        return self.nodes.shape[0]

    def reversed(self) -> "DiscreteCurve":
        """The same polyline traversed with opposite orientation."""
        return DiscreteCurve(self.nodes[::-1].copy())

    def length(self) -> float:
        """Total polyline length."""
        return float(np.linalg.norm(self.nodes - np.roll(self.nodes, 1, axis=0), axis=1).sum())


@dataclass
class CurveGeometry:
    """Per-node geometric quantities of a closed polyline.

    Attributes
    ----------
    seg_lengths : (M,) array
        d_k = |X_k - X_{k-1}|, the segment ending at node k.
    dual_lengths : (M,) array
        (d_k + d_{k+1})/2, the flowing finite volume around node k.
    curvature : (M,) array
        Nonnegative discrete curvature; zeroed below the resolution floor.
    tangent, normal, binormal : (M, 3) arrays
        Discrete frame. The tangent is a central difference and not unit
        length in general; the normal is unit where defined; the binormal
        is tangent x normal. Rows of normal/binormal are zero where the
        curvature vanishes (flat nodes have no principal normal).
    normal_defined : (M,) bool array
        False where the curvature is below the floor.
    length : float
        Total polyline length, sum of seg_lengths.
    """

    seg_lengths: np.ndarray
    dual_lengths: np.ndarray
    curvature: np.ndarray
    tangent: np.ndarray
    normal: np.ndarray
    binormal: np.ndarray
    normal_defined: np.ndarray
    length: float


def _as_nodes(curve) -> np.ndarray:
    if isinstance(curve, DiscreteCurve):
        return curve.nodes
    return np.asarray(curve, dtype=float)


def compute_geometry(curve) -> CurveGeometry:
    """Compute segment lengths, curvature and the discrete frame of a closed curve.

    Parameters
    ----------
    curve : DiscreteCurve or (M, 3) array
        Closed polyline; arrays are accepted so the hot integration path
        can skip re-wrapping.

    Raises
    ------
    DegenerateSegment
        If any segment has zero length (coincident nodes, mesh collapse).
    """
    nodes = _as_nodes(curve)
    prev = np.roll(nodes, 1, axis=0)
    chords = nodes - prev
    d = np.linalg.norm(chords, axis=1)
    if np.any(d == 0.0):
        k = int(np.argmin(d))
        raise DegenerateSegment(f"zero-length segment ending at node {k}")
    d_next = np.roll(d, -1)
    dual = 0.5 * (d + d_next)
    length = float(d.sum())

    unit_chords = chords / d[:, None]
    # curvature vector kappa*N = (e_{k+1} - e_k) / dual volume
    curv_vec = (np.roll(unit_chords, -1, axis=0) - unit_chords) / dual[:, None]
    kappa = np.linalg.norm(curv_vec, axis=1)
    tangent = (np.roll(nodes, -1, axis=0) - prev) / (2.0 * dual)[:, None]

    floor = CURVATURE_FLOOR * nodes.shape[0] / length
    defined = kappa >= floor
    kappa = np.where(defined, kappa, 0.0)
    normal = np.zeros_like(nodes)
    normal[defined] = curv_vec[defined] / kappa[defined, None]
    binormal = np.cross(tangent, normal)

    return CurveGeometry(
        seg_lengths=d,
        dual_lengths=dual,
        curvature=kappa,
        tangent=tangent,
        normal=normal,
        binormal=binormal,
        normal_defined=defined,
        length=length,
    )


def resample_uniform(curve, m_out: int) -> DiscreteCurve:
    """Redistribute nodes at equal arc-length spacing along the polyline.

    Nodes are placed at arc positions k*L/m_out, k = 0..m_out-1, measured
    along the closed input polyline starting from node 0. Interpolation is
    piecewise linear, so every output node lies on the input polyline and
    the orientation is preserved.
    """
    if m_out < 3:
        raise ValueError(f"need at least 3 output nodes, got {m_out}")
    nodes = _as_nodes(curve)
    closed = np.vstack([nodes, nodes[:1]])
    seg = np.linalg.norm(np.diff(closed, axis=0), axis=1)
    if np.any(seg == 0.0):
        raise DegenerateSegment("zero-length segment in resampling input")
    s = np.concatenate([[0.0], np.cumsum(seg)])
    targets = s[-1] * np.arange(m_out) / m_out
    out = np.column_stack([np.interp(targets, s, closed[:, i]) for i in range(3)])
    return DiscreteCurve(out)


def segment_midpoints(nodes) -> tuple[np.ndarray, np.ndarray]:
    """Midpoints m_k and chord vectors X_k - X_{k-1} of all M closing segments."""
    nodes = _as_nodes(nodes)
    prev = np.roll(nodes, 1, axis=0)
    return 0.5 * (nodes + prev), nodes - prev


def point_polyline_distance(points, nodes) -> np.ndarray:
    """Distance from each query point to a closed polyline.

    Parameters
    ----------
    points : (P, 3) or (3,) array
    nodes : DiscreteCurve or (M, 3) array

    Returns
    -------
    (P,) array of min-over-segments point-to-segment distances.
    """
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    nodes = _as_nodes(nodes)
    a = np.roll(nodes, 1, axis=0)
    u = nodes - a
    uu = (u * u).sum(axis=1)
    w = pts[:, None, :] - a[None, :, :]
    t = np.clip((w * u[None, :, :]).sum(axis=2) / uu[None, :], 0.0, 1.0)
    closest = a[None, :, :] + t[:, :, None] * u[None, :, :]
    dist = np.linalg.norm(pts[:, None, :] - closest, axis=2)
    return dist.min(axis=1)


def polyline_min_distance(curve_a, curve_b) -> float:
    """Minimum distance between the segments of two closed polylines.

    Exact pairwise segment-segment distance: the quadratic over the unit
    parameter square is minimized over its interior critical point and all
    four boundary edges (endpoint-versus-segment problems).
    """
    a_nodes = _as_nodes(curve_a)
    b_nodes = _as_nodes(curve_b)
    p0 = np.roll(a_nodes, 1, axis=0)
    u = a_nodes - p0
    q0 = np.roll(b_nodes, 1, axis=0)
    v = b_nodes - q0

    # boundary edges of the parameter square
    d = min(
        point_polyline_distance(a_nodes, b_nodes).min(),
        point_polyline_distance(p0, b_nodes).min(),
        point_polyline_distance(b_nodes, a_nodes).min(),
        point_polyline_distance(q0, a_nodes).min(),
    )

    # interior critical point, where it falls inside (0,1)^2
    w0 = p0[:, None, :] - q0[None, :, :]
    aa = (u * u).sum(axis=1)[:, None]
    bb = (u[:, None, :] * v[None, :, :]).sum(axis=2)
    cc = (v * v).sum(axis=1)[None, :]
    dd = (u[:, None, :] * w0).sum(axis=2)
    ee = (v[None, :, :] * w0).sum(axis=2)
    den = aa * cc - bb * bb
    with np.errstate(divide="ignore", invalid="ignore"):
        s = (bb * ee - cc * dd) / den
        t = (aa * ee - bb * dd) / den
    inside = (den > 0) & (s > 0) & (s < 1) & (t > 0) & (t < 1)
    if np.any(inside):
        si = s[inside][:, None]
        ti = t[inside][:, None]
        ai, bi = np.nonzero(inside)
        diff = (p0[ai] + si * u[ai]) - (q0[bi] + ti * v[bi])
        d = min(d, float(np.linalg.norm(diff, axis=1).min()))
    return float(d)
