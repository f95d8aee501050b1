"""Stationary-phase tunnelling time through absorptive barriers in space-fractional quantum mechanics."""

__version__ = "0.1.0"

from .config import DEFAULT_UNITS, Query, UnitSystem, diffusion_coefficient, load_config, wavenumber_free  # noqa: E402
from .errors import ConfigError, DomainError, FractunnelError, RegimeError, SingularityError  # noqa: E402
from .hartman import AlphaHResult, find_alpha_H, hartman_curve  # noqa: E402
from .kinematics import (  # noqa: E402
    BarrierSpec,
    ForbiddenKinematics,
    MuPair,
    derivative_selfcheck,
    forbidden_kinematics,
    mu_coefficients,
)
from .transmission import TransmissionResult, phase_profile, transmission_allowed, transmission_forbidden  # noqa: E402
from .tunneling import (  # noqa: E402
    SlopeResult,
    TunnelTimeResult,
    asymptotic_slope,
    tunneling_time_closed,
    tunneling_time_numeric,
    tunneling_time_standard,
)

__all__ = [
    "AlphaHResult",
    "BarrierSpec",
    "ConfigError",
    "DEFAULT_UNITS",
    "DomainError",
    "ForbiddenKinematics",
    "FractunnelError",
    "MuPair",
    "Query",
    "RegimeError",
    "SingularityError",
    "SlopeResult",
    "TransmissionResult",
    "TunnelTimeResult",
    "UnitSystem",
    "asymptotic_slope",
    "derivative_selfcheck",
    "diffusion_coefficient",
    "find_alpha_H",
    "forbidden_kinematics",
    "hartman_curve",
    "load_config",
    "mu_coefficients",
    "phase_profile",
    "transmission_allowed",
    "transmission_forbidden",
    "tunneling_time_closed",
    "tunneling_time_numeric",
    "tunneling_time_standard",
    "wavenumber_free",
]
