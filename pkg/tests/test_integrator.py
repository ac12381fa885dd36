import math

import numpy as np
import pytest

from filaments.errors import NonFiniteDerivative, StepSizeUnderflow
from filaments.integrator import SimulationState, StepControl, integrate, rkm_step


def decay(t, y):
    return -y


def test_single_step_exponential():
    state = SimulationState(np.array([1.0]))
    candidate, err = rkm_step(state, 0.1, decay)
    assert abs(candidate.y[0] - np.exp(-0.1)) < 1e-7
    assert candidate.t == 0.1
    assert err > 0.0


def test_zero_rhs_is_exact():
    state = SimulationState(np.array([2.0, -3.0]), t=1.0)
    candidate, err = rkm_step(state, 0.5, lambda t, y: np.zeros_like(y))
    assert np.all(candidate.y == state.y)
    assert err == 0.0


def test_nilpotent_system_exact_in_one_step():
    # y' = A y with A^5 = 0 has a degree-4 polynomial solution, which a
    # fourth-order scheme reproduces exactly: the order-5 remainder carries A^5
    a = np.diag(np.ones(4), k=1)
    y0 = np.array([0.0, 0.0, 0.0, 0.0, 1.0])
    dt = 0.7
    candidate, _ = rkm_step(SimulationState(y0), dt, lambda t, y: a @ y)
    exact = sum(np.linalg.matrix_power(a, k) * dt**k / math.factorial(k) for k in range(5)) @ y0
    assert np.abs(candidate.y - exact).max() < 1e-14


def test_fixed_step_convergence_order():
    errors = []
    for dt in (0.1, 0.05, 0.025):
        state = SimulationState(np.array([1.0]))
        for _ in range(round(1.0 / dt)):
            state, _ = rkm_step(state, dt, decay)
        errors.append(abs(state.y[0] - np.exp(-1.0)))
    orders = np.log2(np.array(errors[:-1]) / np.array(errors[1:]))
    assert np.all((orders >= 3.7) & (orders <= 4.3))


def test_error_estimate_brackets_true_local_error():
    # loose brackets; the estimate is only exact for some linear problems
    for dt in (0.1, 0.05, 0.025):
        state = SimulationState(np.array([1.0]))
        candidate, est = rkm_step(state, dt, decay)
        true = abs(candidate.y[0] - np.exp(-dt))
        print(f"dt={dt}: estimate/true = {est / true:.3f}")
        assert est >= 0.1 * true
        assert est <= 50.0 * true


def test_adaptive_exponential():
    steps = []
    final = integrate(
        SimulationState(np.array([1.0])),
        1.0,
        StepControl(tolerance=1e-3),
        decay,
        observer=lambda s: steps.append(s.t),
    )
    assert abs(final.y[0] - np.exp(-1.0)) < 1e-4
    assert len(steps) >= 1
    assert final.t == 1.0
    assert steps[-1] == 1.0


def test_empty_interval_returns_input():
    state = SimulationState(np.array([5.0]), t=2.0)
    calls = []
    result = integrate(state, 2.0, StepControl(), decay, observer=calls.append)
    assert result.t == 2.0
    assert np.all(result.y == state.y)
    assert calls == []
    with pytest.raises(ValueError):
        integrate(state, 1.0, StepControl(), decay)


def test_determinism():
    def run_once():
        trace = []
        final = integrate(
            SimulationState(np.array([1.0, 0.5])),
            1.0,
            StepControl(tolerance=1e-4),
            lambda t, y: np.array([-y[0], y[0] - y[1]]),
            observer=lambda s: trace.append((s.t, s.y.copy())),
        )
        return final, trace

    f1, t1 = run_once()
    f2, t2 = run_once()
    assert f1.t == f2.t
    assert np.all(f1.y == f2.y)
    assert len(t1) == len(t2)
    for (ta, ya), (tb, yb) in zip(t1, t2):
        assert ta == tb
        assert np.all(ya == yb)


def test_non_finite_rhs_raises():
    with pytest.raises(NonFiniteDerivative):
        rkm_step(SimulationState(np.array([1.0])), 0.1, lambda t, y: y * np.nan)


def test_step_size_underflow():
    # an rhs whose magnitude defeats any tolerance forces endless rejection
    rough = lambda t, y: np.array([1e12 * (1 + t * 1e6)])
    with pytest.raises(StepSizeUnderflow) as info:
        integrate(
            SimulationState(np.array([0.0])),
            1.0,
            StepControl(tolerance=1e-12, initial_dt=0.1, dt_min=1e-6),
            rough,
        )
    assert info.value.dt is not None
    assert info.value.dt < 1e-6


def test_growth_is_capped_and_clipped():
    # with a zero rhs the error is zero, the step doubles each time and the
    # final step clips to land exactly on t_end
    times = []
    final = integrate(
        SimulationState(np.array([1.0])),
        10.0,
        StepControl(tolerance=1e-3, initial_dt=1.0, dt_max=3.0),
        lambda t, y: np.zeros_like(y),
        observer=lambda s: times.append(s.t),
    )
    assert final.t == 10.0
    dts = np.diff([0.0] + times)
    assert dts.max() <= 3.0 + 1e-15
    assert abs(dts[1] - 2.0) < 1e-15  # doubled once before hitting the cap


def test_control_validation():
    with pytest.raises(ValueError):
        StepControl(tolerance=0.0)
    with pytest.raises(ValueError):
        StepControl(dt_min=1e-3, initial_dt=1e-6)
    with pytest.raises(ValueError):
        StepControl(dt_min=0.0)
    with pytest.raises(ValueError):
        StepControl(safety_factor=0.0)


def test_state_flattening():
    state = SimulationState(np.ones((4, 3)))
    assert state.y.shape == (12,)
    clone = state.copy()
    clone.y[0] = 7.0
    assert state.y[0] == 1.0
