"""Locate the Levy index alpha_H where the large-width slope of Gamma(d) vanishes."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .config import DEFAULT_UNITS, UnitSystem
from .errors import DomainError, FractunnelError
from .kinematics import BarrierSpec
from .tunneling import asymptotic_slope

SCAN_PROBES = 41
SLOPE_TOL = 1e-8
MAX_ITERATIONS = 200


@dataclass(frozen=True)
class AlphaHResult:
    alpha_H: float | None
    bracket: tuple[float, float]
    slope_at_root: float | None
    iterations: int
    endpoint_slopes: tuple[float, float]
    roots: tuple[float, ...] = ()
    boundary_zeros: tuple[float, ...] = ()


def slope_of_alpha(E: float, V_r: float, V_i: float, alpha: float, units: UnitSystem = DEFAULT_UNITS) -> float:
    return asymptotic_slope(E, BarrierSpec(V_r, V_i), alpha, units).slope


def _bisect(f, lo: float, hi: float, f_lo: float, tol: float, slope_tol: float) -> tuple[float, float, int]:
    """Shrink [lo, hi] until it is narrower than tol and the midpoint slope is below slope_tol."""
    iterations = 0
    while True:
        mid = 0.5 * (lo + hi)
        f_mid = f(mid)
        iterations += 1
        if f_mid == 0.0:
            return mid, f_mid, iterations
        if (hi - lo) < tol and abs(f_mid) < slope_tol:
            return mid, f_mid, iterations
        if mid <= lo or mid >= hi or iterations >= MAX_ITERATIONS:
            # interval at float resolution
            return mid, f_mid, iterations
        if math.copysign(1.0, f_mid) == math.copysign(1.0, f_lo):
            lo, f_lo = mid, f_mid
        else:
            hi = mid


def find_alpha_H(
    E: float,
    V_r: float,
    V_i: float,
    bracket: tuple[float, float] = (1.5, 2.0),
    tol: float = 1e-6,
    units: UnitSystem = DEFAULT_UNITS,
    slope_tol: float = SLOPE_TOL,
) -> AlphaHResult:
    """Bisect the zero of the opaque-barrier slope over alpha.

    The bracket is scanned with SCAN_PROBES equally spaced probes; every sign
    change is refined, and the root closest to 2 is reported as alpha_H. Zeros
    sitting on the bracket ends (alpha = 2 at V_i = 0) are not interior roots
    and are listed in ``boundary_zeros`` only.
    """
    lo, hi = bracket
    if not (1.0 < lo < hi <= 2.0):
        raise DomainError(f"bracket must satisfy 1 < lo < hi <= 2, got {bracket!r}")
    if not tol > 0:
        raise DomainError(f"tol must be positive, got {tol!r}")

    def f(alpha: float) -> float:
        return slope_of_alpha(E, V_r, V_i, alpha, units)

    probes = np.linspace(lo, hi, SCAN_PROBES)
    values = [f(float(a)) for a in probes]
    if not all(math.isfinite(v) for v in values):
        raise DomainError(f"slope is not finite on the bracket {bracket!r}")

    boundary = tuple(float(probes[i]) for i in (0, -1) if abs(values[i]) < slope_tol)
    # boundary zeros count as zero so they never produce a sign change
    signs = [0 if (i in (0, len(values) - 1) and abs(v) < slope_tol) else np.sign(v) for i, v in enumerate(values)]

    roots: list[tuple[float, float, int]] = []
    for i in range(len(probes) - 1):
        a0, a1 = float(probes[i]), float(probes[i + 1])
        s0, s1 = signs[i], signs[i + 1]
        if s0 == 0 and 0 < i:
            roots.append((a0, values[i], 0))
        elif s0 * s1 < 0:
            roots.append(_bisect(f, a0, a1, values[i], tol, slope_tol))

    endpoint = (values[0], values[-1])
    if not roots:
        return AlphaHResult(None, (lo, hi), None, 0, endpoint, (), boundary)
    best = max(roots, key=lambda r: r[0])
    return AlphaHResult(
        alpha_H=best[0],
        bracket=(lo, hi),
        slope_at_root=best[1],
        iterations=best[2],
        endpoint_slopes=endpoint,
        roots=tuple(r[0] for r in roots),
        boundary_zeros=boundary,
    )


@dataclass(frozen=True)
class HartmanRow:
    V_i: float
    result: AlphaHResult | None
    error: str | None = None

    @property
    def alpha_H(self) -> float | None:
        return None if self.result is None else self.result.alpha_H


def hartman_curve(
    E: float,
    V_r: float,
    Vi_values: Sequence[float],
    bracket: tuple[float, float] = (1.5, 2.0),
    tol: float = 1e-6,
    units: UnitSystem = DEFAULT_UNITS,
) -> list[HartmanRow]:
    """One row per absorption strength, in input order; per-row failures are recorded."""
    rows = []
    for V_i in Vi_values:
        try:
            rows.append(HartmanRow(V_i, find_alpha_H(E, V_r, V_i, bracket, tol, units)))
        except FractunnelError as exc:
            rows.append(HartmanRow(V_i, None, str(exc)))
    return rows
