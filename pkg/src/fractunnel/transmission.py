"""Transmission amplitude and net tunnelling phase through the complex barrier."""

from __future__ import annotations

import cmath
import logging
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .config import DEFAULT_UNITS, UnitSystem, check_alpha, check_energy, diffusion_coefficient, wavenumber_free
from .errors import DomainError, RegimeError
from .kinematics import BarrierSpec, forbidden_state

log = logging.getLogger(__name__)

# cosh/sinh overflow near 710; past this the common factor exp(lambda2 d) is divided out
LOG_SPACE_THRESHOLD = 600.0


@dataclass(frozen=True)
class TransmissionResult:
    """T = exp(-i k_alpha d) / (xi - i zeta).

    ``xi`` and ``zeta`` are stored divided by ``exp(log_scale)``; ``log_scale`` is 0
    unless the barrier is opaque enough to overflow double precision.
    """

    xi: float
    zeta: float
    log_scale: float
    t_re: float
    t_im: float
    modulus: float
    log_modulus: float
    phase: float
    phase_net: float

    @property
    def amplitude(self) -> complex:
        return complex(self.t_re, self.t_im)


def _result(xi: float, zeta: float, log_scale: float, k_alpha: float, d: float) -> TransmissionResult:
    phi = math.atan2(zeta, xi)
    log_modulus = -log_scale - math.log(math.hypot(xi, zeta))
    modulus = math.exp(log_modulus)
    phase_net = phi - k_alpha * d
    return TransmissionResult(
        xi=xi,
        zeta=zeta,
        log_scale=log_scale,
        t_re=modulus * math.cos(phase_net),
        t_im=modulus * math.sin(phase_net),
        modulus=modulus,
        log_modulus=log_modulus,
        phase=phi,
        phase_net=phase_net,
    )


def forbidden_denominator(lambda1: float, lambda2: float, mu1: float, mu2: float, d: float) -> tuple[float, float, float]:
    """Return (xi, zeta, log_scale) for the denominator xi - i zeta.

    For lambda2 d beyond LOG_SPACE_THRESHOLD both parts are divided by exp(lambda2 d).
    """
    x = lambda2 * d
    c1, s1 = math.cos(lambda1 * d), math.sin(lambda1 * d)
    if x > LOG_SPACE_THRESHOLD:
        tail = math.exp(-2.0 * x)
        ch, sh = 0.5 * (1.0 + tail), 0.5 * (1.0 - tail)
        log_scale = x
    else:
        ch, sh = math.cosh(x), math.sinh(x)
        log_scale = 0.0
    xi = c1 * (ch + mu1 * sh) + mu2 * s1 * ch
    zeta = s1 * (sh + mu1 * ch) - mu2 * c1 * sh
    return xi, zeta, log_scale


def transmission_forbidden(
    E: float, barrier: BarrierSpec, alpha: float, units: UnitSystem = DEFAULT_UNITS
) -> TransmissionResult:
    kin, mu, k_alpha = forbidden_state(E, barrier, alpha, units)
    xi, zeta, log_scale = forbidden_denominator(kin.lambda1, kin.lambda2, mu.mu1, mu.mu2, barrier.d)
    res = _result(xi, zeta, log_scale, k_alpha, barrier.d)
    if res.modulus > 1.0 + 1e-12:
        log.warning("|T| = %.15g > 1 at E=%r, barrier=%r, alpha=%r", res.modulus, E, barrier, alpha)
    return res


def transmission_allowed(
    E: float, barrier: BarrierSpec, alpha: float, units: UnitSystem = DEFAULT_UNITS
) -> TransmissionResult:
    """Above-barrier transmission with principal-branch complex powers."""
    check_energy(E)
    check_alpha(alpha)
    if E <= barrier.V_r:
        raise RegimeError(f"E={E!r} <= V_r={barrier.V_r!r}: use transmission_forbidden below the barrier")
    D = diffusion_coefficient(alpha, units)
    k_alpha = wavenumber_free(E, alpha, units)
    kappa = (complex(E - barrier.V_r, barrier.V_i) / (D * units.hbar**alpha)) ** (1.0 / alpha)
    rho = (k_alpha / kappa) ** (alpha - 1.0)
    mu = 0.5 * (rho + 1.0 / rho)
    d = barrier.d
    den = cmath.cos(kappa * d) - 1j * mu * cmath.sin(kappa * d)
    return _result(den.real, -den.imag, 0.0, k_alpha, d)


def transmission(E: float, barrier: BarrierSpec, alpha: float, units: UnitSystem = DEFAULT_UNITS) -> TransmissionResult:
    """Dispatch on regime; E == V_r is rejected by both paths."""
    if E < barrier.V_r:
        return transmission_forbidden(E, barrier, alpha, units)
    return transmission_allowed(E, barrier, alpha, units)


def phase_profile(
    E_grid: Sequence[float], barrier: BarrierSpec, alpha: float, units: UnitSystem = DEFAULT_UNITS
) -> np.ndarray:
    """Net phase on an increasing energy grid, unwrapped so neighbours differ by < pi."""
    energies = np.asarray(E_grid, dtype=float)
    if energies.ndim != 1 or energies.size == 0:
        raise DomainError("E_grid must be a non-empty 1-D sequence")
    if np.any(np.diff(energies) <= 0):
        raise DomainError("E_grid must be strictly increasing")
    below = energies < barrier.V_r
    if below.any() and not below.all():
        raise RegimeError(f"E_grid crosses the regime boundary E = V_r = {barrier.V_r!r}")
    raw = np.array([transmission(float(E), barrier, alpha, units).phase_net for E in energies])
    return np.unwrap(raw)
