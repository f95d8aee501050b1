"""Natural-unit conventions and the Levy-index-dependent dispersion constants."""

from __future__ import annotations

import math
from dataclasses import dataclass, fields, replace
from pathlib import Path

from .errors import ConfigError, DomainError


@dataclass(frozen=True)
class UnitSystem:
    """Natural units with 2m = hbar = c = 1 by default.

    ``u`` is the characteristic speed entering the diffusion coefficient, in units of c.
    """

    hbar: float = 1.0
    c: float = 1.0
    mass: float = 0.5
    u: float = 1.0e-5

    def __post_init__(self) -> None:
        for f in fields(self):
            value = getattr(self, f.name)
            if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
                raise DomainError(f"unit {f.name} must be a positive finite number, got {value!r}")


DEFAULT_UNITS = UnitSystem()

_CONFIG_KEYS = {"mass", "u", "hbar", "c"}


@dataclass(frozen=True)
class Query:
    """A single (energy, Levy index) evaluation point."""

    E: float
    alpha: float

    def __post_init__(self) -> None:
        check_energy(self.E)
        check_alpha(self.alpha)


def check_alpha(alpha: float) -> float:
    if not (1.0 < alpha <= 2.0):
        raise DomainError(f"Levy index alpha must satisfy 1 < alpha <= 2, got {alpha!r}")
    return alpha


def check_energy(E: float) -> float:
    if not (E > 0.0 and math.isfinite(E)):
        raise DomainError(f"energy must be positive and finite, got {E!r}")
    return E


def diffusion_coefficient(alpha: float, units: UnitSystem = DEFAULT_UNITS) -> float:
    """Generalised fractional diffusion coefficient u**(2-alpha) / (alpha * m**(alpha-1))."""
    check_alpha(alpha)
    return units.u ** (2.0 - alpha) / (alpha * units.mass ** (alpha - 1.0))


def wavenumber_free(E: float, alpha: float, units: UnitSystem = DEFAULT_UNITS) -> float:
    """Free-space wavenumber k_alpha solving D_alpha (hbar k)**alpha = E."""
    check_energy(E)
    D = diffusion_coefficient(alpha, units)
    return (E / (D * units.hbar**alpha)) ** (1.0 / alpha)


def wavenumber_standard(E: float, units: UnitSystem = DEFAULT_UNITS) -> float:
    """Ordinary quantum-mechanical wavenumber sqrt(2 m E) / hbar."""
    check_energy(E)
    return math.sqrt(2.0 * units.mass * E) / units.hbar


def parse_config(text: str, base: UnitSystem = DEFAULT_UNITS) -> UnitSystem:
    """Parse ``key = value`` lines (``#`` starts a comment) into a UnitSystem."""
    overrides: dict[str, float] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep or not key:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
        if key not in _CONFIG_KEYS:
            raise ConfigError(f"line {lineno}: unknown key {key!r} (allowed: {', '.join(sorted(_CONFIG_KEYS))})")
        try:
            overrides[key] = float(value.strip())
        except ValueError:
            raise ConfigError(f"line {lineno}: {key} is not a number: {value.strip()!r}") from None
    try:
        return replace(base, **overrides)
    except DomainError as exc:
        raise ConfigError(str(exc)) from None


def load_config(path: str | Path | None) -> UnitSystem:
    """Load a unit override file; ``None`` gives the default natural units."""
    if path is None:
        return DEFAULT_UNITS
    return parse_config(Path(path).read_text())
