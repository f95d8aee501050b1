"""Branch-rotated interior wavenumber and the mu coefficients for E < V_r.

Inside a complex barrier V_r - i V_i the interior wavenumber is

    kappa = exp(i pi / alpha) * (chi + i eta) = lambda1 + i lambda2

with chi + i eta the principal alpha-th root of (V_r - E - i V_i) / (D_alpha hbar**alpha).
Every quantity comes with its analytic energy derivative, needed by the
closed-form tunnelling time.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .config import DEFAULT_UNITS, UnitSystem, check_alpha, check_energy, diffusion_coefficient, wavenumber_free
from .errors import DomainError, RegimeError, SingularityError


@dataclass(frozen=True)
class BarrierSpec:
    """Rectangular barrier V_r - i V_i on 0 <= x <= d."""

    V_r: float
    V_i: float = 0.0
    d: float = 0.0

    def __post_init__(self) -> None:
        if not self.V_r > 0:
            raise DomainError(f"barrier height V_r must be positive, got {self.V_r!r}")
        if not self.V_i >= 0:
            raise DomainError(f"absorption V_i must be non-negative (no gain media), got {self.V_i!r}")
        if not self.d >= 0:
            raise DomainError(f"barrier width d must be non-negative, got {self.d!r}")

    def with_width(self, d: float) -> BarrierSpec:
        return BarrierSpec(self.V_r, self.V_i, d)


@dataclass(frozen=True)
class ForbiddenKinematics:
    E: float
    alpha: float
    U: float
    theta: float
    chi: float
    eta: float
    gamma: float
    lambda_: float
    lambda1: float
    lambda2: float
    dU_dE: float
    dtheta_dE: float
    dchi_dE: float
    deta_dE: float
    dlambda_dE: float
    dlambda1_dE: float
    dlambda2_dE: float


@dataclass(frozen=True)
class MuPair:
    mu1: float
    mu2: float
    dmu1_dE: float
    dmu2_dE: float


def branch_rotation(alpha: float) -> tuple[float, float]:
    """Return (cos(pi/alpha), sin(pi/alpha)), exact (0, 1) at alpha = 2.

    Written as an offset from pi/2 so the standard-QM reduction has no 6e-17 residue.
    """
    offset = math.pi * (alpha - 2.0) / (2.0 * alpha)
    return math.sin(offset), math.cos(offset)


def forbidden_kinematics(
    E: float, barrier: BarrierSpec, alpha: float, units: UnitSystem = DEFAULT_UNITS
) -> ForbiddenKinematics:
    check_energy(E)
    check_alpha(alpha)
    V_r, V_i = barrier.V_r, barrier.V_i
    if E >= V_r:
        raise RegimeError(f"E={E!r} >= V_r={V_r!r}: use transmission_allowed for the above-barrier regime")

    detuning = V_r - E
    U = detuning**2 + V_i**2
    theta = -math.atan(V_i / detuning)
    dU = -2.0 * detuning
    dtheta = -V_i / U

    D = diffusion_coefficient(alpha, units)
    radius = (math.sqrt(U) / (D * units.hbar**alpha)) ** (1.0 / alpha)
    dradius = radius * dU / (2.0 * alpha * U)

    c_t, s_t = math.cos(theta / alpha), math.sin(theta / alpha)
    chi = radius * c_t
    eta = radius * s_t
    dchi = dradius * c_t - radius * s_t * dtheta / alpha
    deta = dradius * s_t + radius * c_t * dtheta / alpha

    gamma = chi * chi + eta * eta
    lam = -math.pi / alpha - math.atan(eta / chi)
    dlam = -(chi * deta - eta * dchi) / gamma

    c_r, s_r = branch_rotation(alpha)
    lambda1 = chi * c_r - eta * s_r
    lambda2 = eta * c_r + chi * s_r
    dlambda1 = dchi * c_r - deta * s_r
    dlambda2 = deta * c_r + dchi * s_r

    return ForbiddenKinematics(
        E=E,
        alpha=alpha,
        U=U,
        theta=theta,
        chi=chi,
        eta=eta,
        gamma=gamma,
        lambda_=lam,
        lambda1=lambda1,
        lambda2=lambda2,
        dU_dE=dU,
        dtheta_dE=dtheta,
        dchi_dE=dchi,
        deta_dE=deta,
        dlambda_dE=dlam,
        dlambda1_dE=dlambda1,
        dlambda2_dE=dlambda2,
    )


def mu_coefficients(kin: ForbiddenKinematics, k_alpha: float, alpha: float) -> MuPair:
    """Real and imaginary parts of mu = ((k/kappa)**(alpha-1) + (kappa/k)**(alpha-1)) / 2.

    With ratio = (k/sqrt(gamma))**(alpha-1):
        mu1 = (ratio + 1/ratio)/2 * cos(lambda (alpha-1))
        mu2 = (ratio - 1/ratio)/2 * sin(lambda (alpha-1))
    """
    if not kin.gamma > 0:
        raise SingularityError("gamma = 0: kappa vanishes (E = V_r with V_i = 0)")
    if not k_alpha > 0:
        raise DomainError(f"k_alpha must be positive, got {k_alpha!r}")

    p = alpha - 1.0
    sqrt_gamma = math.sqrt(kin.gamma)
    log_ratio = p * (math.log(k_alpha) - math.log(sqrt_gamma))
    ratio = math.exp(log_ratio)
    inv = 1.0 / ratio
    plus, minus = 0.5 * (ratio + inv), 0.5 * (ratio - inv)

    # d/dE ln k_alpha = 1/(alpha E); d/dE ln sqrt(gamma) = gamma' / (2 gamma)
    dgamma = 2.0 * (kin.chi * kin.dchi_dE + kin.eta * kin.deta_dE)
    dlog_ratio = p * (1.0 / (alpha * kin.E) - dgamma / (2.0 * kin.gamma))

    # lambda (alpha-1) = -pi/2 + offset; offset is exactly 0 at alpha=2, V_i=0
    offset = math.pi * (2.0 - alpha) / (2.0 * alpha) - p * math.atan(kin.eta / kin.chi)
    cos_l, sin_l = math.sin(offset), -math.cos(offset)
    doffset = p * kin.dlambda_dE

    mu1 = plus * cos_l
    mu2 = minus * sin_l
    dmu1 = minus * dlog_ratio * cos_l - plus * sin_l * doffset
    dmu2 = plus * dlog_ratio * sin_l + minus * cos_l * doffset
    return MuPair(mu1, mu2, dmu1, dmu2)


def forbidden_state(
    E: float, barrier: BarrierSpec, alpha: float, units: UnitSystem = DEFAULT_UNITS
) -> tuple[ForbiddenKinematics, MuPair, float]:
    """Kinematics, mu pair and k_alpha for one forbidden-regime query."""
    kin = forbidden_kinematics(E, barrier, alpha, units)
    k_alpha = wavenumber_free(E, alpha, units)
    return kin, mu_coefficients(kin, k_alpha, alpha), k_alpha


_CHECKED = ("chi", "eta", "lambda1", "lambda2", "mu1", "mu2")


def _values(E: float, barrier: BarrierSpec, alpha: float, units: UnitSystem) -> dict[str, float]:
    kin, mu, _ = forbidden_state(E, barrier, alpha, units)
    return {
        "chi": kin.chi,
        "eta": kin.eta,
        "lambda1": kin.lambda1,
        "lambda2": kin.lambda2,
        "mu1": mu.mu1,
        "mu2": mu.mu2,
    }


def _derivatives(E: float, barrier: BarrierSpec, alpha: float, units: UnitSystem) -> dict[str, float]:
    kin, mu, _ = forbidden_state(E, barrier, alpha, units)
    return {
        "chi": kin.dchi_dE,
        "eta": kin.deta_dE,
        "lambda1": kin.dlambda1_dE,
        "lambda2": kin.dlambda2_dE,
        "mu1": mu.dmu1_dE,
        "mu2": mu.dmu2_dE,
    }


def derivative_deviations(
    E: float,
    barrier: BarrierSpec,
    alpha: float,
    delta: float | None = None,
    units: UnitSystem = DEFAULT_UNITS,
) -> dict[str, float]:
    """Relative gap between each analytic derivative and a central difference."""
    if delta is None:
        delta = 1e-6 * max(1.0, E)
    if not delta > 0:
        raise DomainError(f"step must be positive, got {delta!r}")
    if E - delta <= 0 or E + delta >= barrier.V_r:
        raise DomainError(f"E +/- delta = [{E - delta!r}, {E + delta!r}] leaves the forbidden regime (0, {barrier.V_r!r})")

    analytic = _derivatives(E, barrier, alpha, units)
    hi = _values(E + delta, barrier, alpha, units)
    lo = _values(E - delta, barrier, alpha, units)
    out = {}
    for name in _CHECKED:
        numeric = (hi[name] - lo[name]) / (2.0 * delta)
        out[name] = abs(analytic[name] - numeric) / max(abs(analytic[name]), 1e-300)
    return out


def derivative_selfcheck(
    E: float,
    barrier: BarrierSpec,
    alpha: float,
    delta: float | None = None,
    units: UnitSystem = DEFAULT_UNITS,
) -> float:
    """Worst relative deviation over chi', eta', lambda1', lambda2', mu1', mu2'."""
    return max(derivative_deviations(E, barrier, alpha, delta, units).values())
