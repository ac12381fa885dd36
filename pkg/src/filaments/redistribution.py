"""Length-preserving tangential node velocity.

Moving nodes along the curve does not change its shape, but a well-chosen
tangential speed keeps the relative local length d_k * M / L constant in
time so the mesh never degrades. The total tangential velocity v_T must
satisfy

    dv_T/ds = kappa * v_N - (1/L) * integral of kappa * v_N ds,

where v_N is the normal speed of the non-tangential motion. The discrete
version integrates the right side with the trapezoidal rule along the
polyline, starting from node 0, and fixes the free constant so that
sum_j alpha_j * d_j = 0.
"""

from __future__ import annotations

import numpy as np

from .geometry import CurveGeometry


def compute_tangential(geom: CurveGeometry, normal_speed, tangential_drive=None) -> np.ndarray:
    """Tangential node speeds alpha_k keeping the relative local length constant.

    Parameters
    ----------
    geom : CurveGeometry
        Freshly computed geometry of the curve.
    normal_speed : (M,) array
        Normal speed v_N per node; for the full flow this is
        a_k * kappa_k + F_k . N_k (the binormal part does not stretch
        arc length and contributes nothing here).
    tangential_drive : (M,) array, optional
        Tangential projection F_k . T_k of the external force. alpha is the
        total tangential velocity minus this drive; defaults to zero.

    Returns
    -------
    (M,) array alpha with sum(alpha * seg_lengths) = 0 to round-off.
    """
    v_n = np.asarray(normal_speed, dtype=float)
    f = geom.curvature * v_n
    f = f - (f * geom.dual_lengths).sum() / geom.length

    # trapezoid across each segment: v_T[k] = v_T[k-1] + d_k (f_{k-1} + f_k)/2
    incr = 0.5 * geom.seg_lengths * (f + np.roll(f, 1))
    v_t = np.concatenate([[0.0], np.cumsum(incr[1:])])

    if tangential_drive is None:
        alpha = v_t
    else:
        alpha = v_t - np.asarray(tangential_drive, dtype=float)
    alpha = alpha - (alpha * geom.seg_lengths).sum() / geom.length
    return alpha
