"""Adaptive Runge-Kutta-Merson time integration.

Five-stage explicit scheme of order 4 with stages at 0, 1/3, 1/3, 1/2, 1,
propagating y + dt*(k1 + 4*k4 + k5)/6 and estimating the local error as
dt*|k1 - 4.5*k3 + 4*k4 - 0.5*k5|/5 in the max norm. Steps are accepted
when the estimate stays under the tolerance; rejected steps halve, accepted
steps grow by min(2, 0.8*(tol/err)^(1/5)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import NonFiniteDerivative, StepSizeUnderflow


@dataclass
class SimulationState:
    """Flat unknown vector of all node coordinates plus the current time."""

    y: np.ndarray
    t: float = 0.0

    def __post_init__(self):
        self.y = np.asarray(self.y, dtype=float).ravel()

    def copy(self) -> "SimulationState":
        return SimulationState(self.y.copy(), self.t)


@dataclass(frozen=True)
class StepControl:
    """Adaptive step-size settings.

    initial_dt left as None is resolved to (t_end - t)/100 at integration
    time; drivers that know their mesh pass 4*h^2 with h the parameter
    mesh size. safety_factor damps the growth after accepted steps.
    """

    tolerance: float = 1e-3
    initial_dt: float | None = None
    dt_min: float = 1e-12
    dt_max: float = math.inf
    safety_factor: float = 0.8

    def __post_init__(self):
        if not self.tolerance > 0.0:
            raise ValueError(f"tolerance must be > 0, got {self.tolerance}")
        if not 0.0 < self.dt_min <= self.dt_max:
            raise ValueError(f"need 0 < dt_min <= dt_max, got {self.dt_min}, {self.dt_max}")
        if self.initial_dt is not None and not self.dt_min <= self.initial_dt <= self.dt_max:
            raise ValueError(
                f"need dt_min <= initial_dt <= dt_max, got initial_dt={self.initial_dt}"
            )
        if not 0.0 < self.safety_factor <= 1.0:
            raise ValueError(f"safety_factor must be in (0, 1], got {self.safety_factor}")


def _checked(rhs, t, y):
    k = np.asarray(rhs(t, y), dtype=float)
    if not np.isfinite(k).all():
        raise NonFiniteDerivative(f"right-hand side returned non-finite entries at t={t:.6g}")
    return k


def rkm_step(state: SimulationState, dt: float, rhs) -> tuple[SimulationState, float]:
    """One candidate step of size dt; returns (candidate, error_estimate).

    rhs maps (t, y) to dy/dt. The candidate is not guaranteed acceptable;
    the caller compares the estimate against its tolerance.
    """
    t, y = state.t, state.y
    k1 = _checked(rhs, t, y)
    k2 = _checked(rhs, t + dt / 3.0, y + dt * k1 / 3.0)
    k3 = _checked(rhs, t + dt / 3.0, y + dt * (k1 + k2) / 6.0)
    k4 = _checked(rhs, t + dt / 2.0, y + dt * (k1 + 3.0 * k3) / 8.0)
    k5 = _checked(rhs, t + dt, y + dt * (0.5 * k1 - 1.5 * k3 + 2.0 * k4))
    y_new = y + dt * (k1 + 4.0 * k4 + k5) / 6.0
    err = dt * float(np.max(np.abs(k1 - 4.5 * k3 + 4.0 * k4 - 0.5 * k5))) / 5.0
    return SimulationState(y_new, t + dt), err


def integrate(state0: SimulationState, t_end: float, control: StepControl,
              rhs, observer=None) -> SimulationState:
    """Advance state0 to exactly t_end under automatic step control.

    observer, when given, is called with every accepted SimulationState.
    Raises StepSizeUnderflow when repeated rejections push the step below
    dt_min, and propagates NonFiniteDerivative from the right-hand side.
    """
    if t_end < state0.t:
        raise ValueError(f"t_end={t_end} lies before the state time {state0.t}")
    if t_end == state0.t:
        return state0.copy()

    if control.initial_dt is None:
        control = replace(control, initial_dt=(t_end - state0.t) / 100.0)

    state = state0.copy()
    dt_prop = min(control.initial_dt, control.dt_max)
    tiny = 1e-14 * max(1.0, abs(t_end))

    while state.t < t_end - tiny:
        clipped = t_end - state.t <= dt_prop
        dt = t_end - state.t if clipped else dt_prop
        candidate, err = rkm_step(state, dt, rhs)
        if err <= control.tolerance:
            if clipped:
                candidate.t = t_end
            state = candidate
            if observer is not None:
                observer(state)
            if err == 0.0:
                grow = 2.0
            else:
                grow = min(2.0, control.safety_factor * (control.tolerance / err) ** 0.2)
            dt_prop = min(dt * grow, control.dt_max)
        else:
            dt_prop = dt / 2.0
            if dt_prop < control.dt_min:
                raise StepSizeUnderflow(
                    f"step size {dt_prop:.3e} fell below dt_min={control.dt_min:.3e} "
                    f"at t={state.t:.6g}",
                    t=state.t,
                    dt=dt_prop,
                )
    return state
