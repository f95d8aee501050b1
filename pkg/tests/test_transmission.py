import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracle
from fractunnel.errors import DomainError, RegimeError
from fractunnel.kinematics import BarrierSpec
from fractunnel.transmission import (
    LOG_SPACE_THRESHOLD,
    phase_profile,
    transmission,
    transmission_allowed,
    transmission_forbidden,
)


def eq5_phase(E, V, d):
    k, kappa = math.sqrt(E), math.sqrt(V - E)
    return math.atan((k * k - kappa * kappa) / (2 * k * kappa) * math.tanh(kappa * d))


@pytest.mark.parametrize("E,Vi,alpha", [(4.0, 0.0, 2.0), (1.0, 20.0, 1.9), (4.5, 60.0, 1.5)])
def test_zero_width_is_transparent(E, Vi, alpha):
    res = transmission_forbidden(E, BarrierSpec(5.0, Vi, 0.0), alpha)
    assert (res.xi, res.zeta) == (1.0, 0.0)
    assert res.modulus == 1.0
    assert res.phase_net == 0.0


def test_standard_phase_reduction():
    res = transmission_forbidden(4.0, BarrierSpec(5.0, 0.0, 3.0), 2.0)
    # k = 2, kappa = 1
    assert math.tan(res.phase) == pytest.approx((4 - 1) / 4 * math.tanh(3.0), rel=1e-12)
    assert res.phase_net == pytest.approx(eq5_phase(4.0, 5.0, 3.0) - 2.0 * 3.0, abs=1e-10)


def test_absorptive_fractional_example():
    # frozen from oracle.amplitude_forbidden(4, 5, 20, 1.95, 5)
    res = transmission_forbidden(4.0, BarrierSpec(5.0, 20.0, 5.0), 1.95)
    assert res.modulus == pytest.approx(8.4123404231643537e-11, rel=1e-10)
    assert res.t_re == pytest.approx(5.7263873502484893e-11, rel=1e-10)
    assert res.t_im == pytest.approx(6.162463737022645e-11, rel=1e-10)
    assert math.remainder(res.phase_net - 0.82206116626382566, 2 * math.pi) == pytest.approx(0.0, abs=1e-10)


def test_modulus_identity():
    res = transmission_forbidden(3.0, BarrierSpec(5.0, 5.0, 2.0), 1.9)
    assert res.modulus**2 == pytest.approx(1.0 / (res.xi**2 + res.zeta**2), rel=1e-12)


@settings(max_examples=150, deadline=None)
@given(
    E=st.floats(0.05, 4.95),
    Vi=st.floats(0.0, 60.0),
    alpha=st.floats(1.05, 2.0),
    d=st.floats(0.0, 8.0),
)
def test_decomposition_matches_direct_complex_evaluation(E, Vi, alpha, d):
    res = transmission_forbidden(E, BarrierSpec(5.0, Vi, d), alpha)
    ref = oracle.amplitude_forbidden(E, 5, Vi, alpha, d)
    # compare in log-polar form: |T| underflows for opaque absorptive barriers
    assert res.log_modulus == pytest.approx(float(mp.log(abs(ref))), rel=1e-10, abs=1e-10)
    # phase_net carries k_alpha d, which reaches ~1e5 as alpha -> 1
    tol = 1e-10 * max(1.0, abs(res.phase_net))
    assert math.remainder(res.phase_net - float(mp.arg(ref)), 2 * math.pi) == pytest.approx(0.0, abs=tol)


@pytest.mark.parametrize("E", np.linspace(0.2, 4.8, 13))
@pytest.mark.parametrize("d", [0.5, 2.0, 7.0])
def test_reduction_grid(E, d):
    res = transmission_forbidden(float(E), BarrierSpec(5.0, 0.0, d), 2.0)
    expected = eq5_phase(E, 5.0, d) - math.sqrt(E) * d
    assert math.remainder(res.phase_net - expected, 2 * math.pi) == pytest.approx(0.0, abs=1e-10)


def test_absorption_bound_on_grid(caplog):
    for E in np.linspace(0.1, 4.9, 25):
        for Vi in (0.0, 5.0, 20.0, 60.0):
            for alpha in (1.5, 1.9, 2.0):
                for d in (0.5, 2.0, 6.0):
                    assert transmission_forbidden(float(E), BarrierSpec(5.0, Vi, d), alpha).modulus <= 1.0 + 1e-12
    assert "> 1" not in caplog.text


def test_large_width_log_space():
    barrier_ok = BarrierSpec(5.0, 0.0, 500.0)
    barrier_big = BarrierSpec(5.0, 0.0, 2000.0)
    near = transmission_forbidden(4.0, barrier_ok, 2.0)
    far = transmission_forbidden(4.0, barrier_big, 2.0)
    assert near.log_scale == 0.0
    assert far.log_scale == pytest.approx(2000.0)
    assert math.isfinite(far.phase_net)
    # |T| ~ exp(-kappa d) / |1 + mu|: log-modulus stays exact even when |T| underflows
    assert far.modulus == 0.0
    assert far.log_modulus - near.log_modulus == pytest.approx(-1500.0, rel=1e-12)
    ref = oracle.amplitude_forbidden(4.0, 5, 0, 2, 2000)
    assert far.log_modulus == pytest.approx(float(mp.log(abs(ref))), rel=1e-12)


def test_log_space_switch_is_continuous():
    E, alpha = 4.0, 2.0
    # lambda2 = 1, so d straddling the threshold
    a = transmission_forbidden(E, BarrierSpec(5.0, 0.0, LOG_SPACE_THRESHOLD - 1e-9), alpha)
    b = transmission_forbidden(E, BarrierSpec(5.0, 0.0, LOG_SPACE_THRESHOLD + 1e-9), alpha)
    assert a.log_scale == 0.0 and b.log_scale > 0.0
    assert b.log_modulus == pytest.approx(a.log_modulus, abs=1e-8)
    assert math.remainder(b.phase_net - a.phase_net, 2 * math.pi) == pytest.approx(0.0, abs=1e-6)


def test_no_barrier_allowed_is_unit_modulus():
    # V_r -> 0+ is the free particle; V_r must be positive so use a tiny height
    for d in (0.0, 1.0, 10.0):
        res = transmission_allowed(4.0, BarrierSpec(1e-300, 0.0, d), 1.9)
        assert res.modulus == pytest.approx(1.0, abs=1e-12)


def textbook_above_barrier_modulus(E, V, d):
    k, q = math.sqrt(E), math.sqrt(E - V)
    return 1.0 / math.sqrt(1.0 + (k * k - q * q) ** 2 / (4 * k * k * q * q) * math.sin(q * d) ** 2)


@pytest.mark.parametrize("d", [0.3, 1.0, 2.5, 7.0])
def test_allowed_standard_modulus(d):
    res = transmission_allowed(9.0, BarrierSpec(5.0, 0.0, d), 2.0)
    assert res.modulus == pytest.approx(textbook_above_barrier_modulus(9.0, 5.0, d), rel=1e-12)


def test_allowed_absorptive_fractional():
    # frozen from oracle.amplitude_allowed(9, 5, 10, 1.9, 2)
    res = transmission_allowed(9.0, BarrierSpec(5.0, 10.0, 2.0), 1.9)
    assert res.modulus == pytest.approx(0.00055204483430458389, rel=1e-10)
    assert res.t_re == pytest.approx(0.00014026703380124393, rel=1e-9)
    assert res.t_im == pytest.approx(-0.00053392757777715151, rel=1e-9)


def test_regimes_are_exclusive():
    with pytest.raises(RegimeError):
        transmission_allowed(4.0, BarrierSpec(5.0), 2.0)
    with pytest.raises(RegimeError):
        transmission_forbidden(6.0, BarrierSpec(5.0), 2.0)
    for fn in (transmission_allowed, transmission_forbidden, transmission):
        with pytest.raises(RegimeError):
            fn(5.0, BarrierSpec(5.0, 2.0, 1.0), 2.0)


def test_phase_profile_zero_width():
    assert np.all(phase_profile(np.linspace(1, 4, 10), BarrierSpec(5.0, 3.0, 0.0), 1.9) == 0.0)


def test_phase_profile_unwraps_jumps():
    # k_alpha d grows by far more than 2 pi across the grid, so the raw phase wraps
    grid = np.linspace(0.5, 4.5, 400)
    barrier = BarrierSpec(5.0, 20.0, 5.0)
    raw = np.array([transmission_forbidden(float(E), barrier, 1.9).phase_net for E in grid])
    assert np.max(np.abs(np.diff(raw))) > math.pi
    unwrapped = phase_profile(grid, barrier, 1.9)
    assert np.max(np.abs(np.diff(unwrapped))) < math.pi
    assert np.allclose(np.remainder(unwrapped - raw + math.pi, 2 * math.pi) - math.pi, 0.0, atol=1e-12)


def test_phase_profile_derivative_matches_closed_form():
    from fractunnel.tunneling import tunneling_time_closed

    barrier = BarrierSpec(5.0, 20.0, 5.0)
    grid = np.linspace(3.9, 4.1, 2001)
    phases = phase_profile(grid, barrier, 1.95)
    slope = np.gradient(phases, grid)[1000]
    res = tunneling_time_closed(4.0, barrier, 1.95)
    assert slope == pytest.approx(res.term_phase + res.term_fractional, rel=1e-5)


def test_phase_profile_validation():
    barrier = BarrierSpec(5.0, 1.0, 1.0)
    with pytest.raises(DomainError):
        phase_profile([2.0, 1.0], barrier, 2.0)
    with pytest.raises(RegimeError):
        phase_profile([4.0, 6.0], barrier, 2.0)
    with pytest.raises(DomainError):
        phase_profile([], barrier, 2.0)
    assert phase_profile([6.0, 7.0], barrier, 2.0).shape == (2,)


def max_jump(f, lo, hi, n):
    values = np.array([f(float(x)) for x in np.linspace(lo, hi, n)])
    return np.max(np.abs(np.diff(values)))


@pytest.mark.parametrize("alpha", [1.9, 2.0])
@pytest.mark.parametrize(
    "name,f,lo,hi",
    [
        ("modulus vs d", lambda a: lambda d: transmission_forbidden(4.0, BarrierSpec(5.0, 20.0, d), a).modulus, 0.0, 6.0),
        ("log|T| vs E", lambda a: lambda E: transmission_forbidden(E, BarrierSpec(5.0, 20.0, 3.0), a).log_modulus, 0.5, 4.5),
    ],
)
def test_continuity(alpha, name, f, lo, hi):
    # a jump discontinuity would not shrink when the grid is refined
    coarse = max_jump(f(alpha), lo, hi, 301)
    fine = max_jump(f(alpha), lo, hi, 601)
    assert fine < 0.6 * coarse, name


def test_continuity_in_alpha():
    f = lambda a: transmission_forbidden(4.0, BarrierSpec(5.0, 20.0, 3.0), a).log_modulus  # noqa: E731
    assert max_jump(f, 1.8, 2.0, 401) < 0.6 * max_jump(f, 1.8, 2.0, 201)
    g = lambda a: phase_profile([3.9, 4.0], BarrierSpec(5.0, 20.0, 3.0), a)[1]  # noqa: E731
    alphas = np.linspace(1.8, 2.0, 401)
    unwrapped = np.unwrap([g(float(a)) for a in alphas])
    assert np.max(np.abs(np.diff(unwrapped))) < 0.1


def test_phase_profile_is_continuous_on_fine_grid():
    phases = phase_profile(np.arange(3.0, 4.5, 1e-3), BarrierSpec(5.0, 20.0, 3.0), 1.9)
    steps = np.abs(np.diff(phases))
    assert np.max(steps) < 0.1
