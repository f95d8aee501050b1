"""Stationary-phase tunnelling time through the complex barrier.

Gamma = hbar dPhi/dE + d / (hbar k / m), with Phi = phi - k_alpha d the net
transmission phase and k = sqrt(2 m E) / hbar the free-traversal wavenumber.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

from .config import DEFAULT_UNITS, UnitSystem, check_energy, wavenumber_standard
from .errors import DomainError
from .kinematics import BarrierSpec, forbidden_state
from .transmission import LOG_SPACE_THRESHOLD, phase_profile

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class TunnelTimeResult:
    """Gamma = term_phase + term_fractional + term_free.

    ``J`` and ``H`` are stored divided by ``exp(log_scale)`` (0 unless the barrier is opaque).
    """

    gamma: float
    term_phase: float
    term_fractional: float
    term_free: float
    J: float
    H: float
    log_scale: float


@dataclass(frozen=True)
class SlopeResult:
    """Large-width asymptote Gamma(d) ~ slope * d + intercept."""

    slope: float
    intercept: float
    intercept_numerator: float


def _free_term(E: float, d: float, units: UnitSystem) -> float:
    return d * units.mass / (units.hbar * wavenumber_standard(E, units))


def _fractional_term(E: float, d: float, alpha: float, k_alpha: float, units: UnitSystem) -> float:
    # hbar * d * dk_alpha/dE, and dk_alpha/dE = k_alpha / (alpha E) = k_alpha**(1-alpha) / (alpha D hbar**alpha)
    return -units.hbar * d * k_alpha / (alpha * E)


def tunneling_time_closed(
    E: float, barrier: BarrierSpec, alpha: float, units: UnitSystem = DEFAULT_UNITS
) -> TunnelTimeResult:
    """Closed-form time from the analytic phase derivative J / H."""
    kin, mu, k_alpha = forbidden_state(E, barrier, alpha, units)
    d = barrier.d
    l1, l2 = kin.lambda1, kin.lambda2
    dl1, dl2 = kin.dlambda1_dE, kin.dlambda2_dE
    m1, m2, dm1, dm2 = mu.mu1, mu.mu2, mu.dmu1_dE, mu.dmu2_dE
    norm2 = m1 * m1 + m2 * m2

    x = 2.0 * d * l2
    c, s = math.cos(2.0 * d * l1), math.sin(2.0 * d * l1)
    if x > LOG_SPACE_THRESHOLD:
        tail = math.exp(-x)
        ch, sh = 0.5 * (1.0 + tail * tail), 0.5 * (1.0 - tail * tail)
        c, s = c * tail, s * tail
        log_scale = x
    else:
        ch, sh = math.cosh(x), math.sinh(x)
        log_scale = 0.0

    J = 0.5 * (
        (m1 * dm2 - m2 * (dm1 + 2.0 * d * dl2)) * c
        + (dm1 * m2 - m1 * dm2 + 2.0 * d * m1 * dl1) * ch
        + (dm1 - d * dl2 * (norm2 - 1.0)) * s
        + (-dm2 + d * dl1 * (norm2 + 1.0)) * sh
    )
    H = 0.5 * ((norm2 + 1.0) * ch - (norm2 - 1.0) * c) + m2 * s + m1 * sh
    if not H > 0:
        log.warning("H = %r is not positive at E=%r, barrier=%r, alpha=%r", H, E, barrier, alpha)

    term_phase = units.hbar * J / H
    term_fractional = _fractional_term(E, d, alpha, k_alpha, units)
    term_free = _free_term(E, d, units)
    return TunnelTimeResult(
        gamma=term_phase + term_fractional + term_free,
        term_phase=term_phase,
        term_fractional=term_fractional,
        term_free=term_free,
        J=J,
        H=H,
        log_scale=log_scale,
    )


def default_step(E: float) -> float:
    return 1e-6 * max(1.0, E)


def tunneling_time_numeric(
    E: float,
    barrier: BarrierSpec,
    alpha: float,
    h: float | None = None,
    units: UnitSystem = DEFAULT_UNITS,
) -> float:
    """Central difference of the unwrapped net phase; oracle for the closed form."""
    if h is None:
        h = default_step(E)
    if not h > 0:
        raise DomainError(f"step h must be positive, got {h!r}")
    if E - h <= 0 or E + h >= barrier.V_r:
        raise DomainError(f"stencil [{E - h!r}, {E + h!r}] leaves the forbidden regime (0, {barrier.V_r!r})")
    phases = phase_profile([E - h, E, E + h], barrier, alpha, units)
    return units.hbar * (phases[2] - phases[0]) / (2.0 * h) + _free_term(E, barrier.d, units)


def tunneling_time_standard(E: float, V: float, d: float, units: UnitSystem = DEFAULT_UNITS) -> float:
    """Real square barrier in ordinary QM: hbar d/dE arctan(((k^2-kappa^2)/(2 k kappa)) tanh(kappa d))."""
    check_energy(E)
    if E >= V:
        raise DomainError(f"E={E!r} must be below the barrier height V={V!r}")
    if d < 0:
        raise DomainError(f"barrier width must be non-negative, got {d!r}")
    m, hbar = units.mass, units.hbar
    kappa = math.sqrt(2.0 * m * (V - E)) / hbar
    root = math.sqrt(E * (V - E))
    # (k^2 - kappa^2) / (2 k kappa) depends on E only through (2E - V) / (2 sqrt(E (V - E)))
    g = (2.0 * E - V) / (2.0 * root)
    dg = V * V / (4.0 * root**3)
    x = kappa * d
    t = math.tanh(x)
    q = math.exp(-2.0 * x)
    sech2 = 4.0 * q / (1.0 + q) ** 2
    dkappa = -m / (hbar * hbar * kappa)
    dt = sech2 * d * dkappa
    f = g * t
    return hbar * (dg * t + g * dt) / (1.0 + f * f)


def asymptotic_slope(E: float, barrier: BarrierSpec, alpha: float, units: UnitSystem = DEFAULT_UNITS) -> SlopeResult:
    """Coefficient of d and constant term of Gamma for opaque barriers (lambda2 d >> 1)."""
    kin, mu, k_alpha = forbidden_state(E, barrier, alpha, units)
    hbar = units.hbar
    k = wavenumber_standard(E, units)
    slope = hbar * kin.dlambda1_dE - hbar * k_alpha / (alpha * E) + units.mass / (hbar * k)
    numerator = mu.dmu1_dE * mu.mu2 - mu.dmu2_dE * (mu.mu1 + 1.0)
    # J/H tends to d lambda1' + numerator / |1 + mu|^2
    weight = (1.0 + mu.mu1) ** 2 + mu.mu2**2
    return SlopeResult(slope=slope, intercept=hbar * numerator / weight, intercept_numerator=numerator)


def tunneling_time(E: float, barrier: BarrierSpec, alpha: float, units: UnitSystem = DEFAULT_UNITS) -> float:
    return tunneling_time_closed(E, barrier, alpha, units).gamma
