"""Self-check suites run by ``fractunnel selfcheck``."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .config import DEFAULT_UNITS, UnitSystem
from .kinematics import BarrierSpec, derivative_selfcheck
from .tunneling import default_step, tunneling_time_closed, tunneling_time_numeric

GRID_E = (1.0, 2.0, 3.0, 4.0, 4.5)
GRID_ALPHA = (2.0, 1.98, 1.95, 1.9, 1.8)
GRID_VI = (0.0, 5.0, 20.0)
GRID_D = (1.0, 3.0, 5.0)
V_R = 5.0


@dataclass(frozen=True)
class SuiteResult:
    name: str
    worst: float
    tolerance: float
    where: tuple

    @property
    def passed(self) -> bool:
        return self.worst < self.tolerance


def oracle_equivalence(units: UnitSystem = DEFAULT_UNITS, tolerance: float = 1e-6) -> SuiteResult:
    """Closed-form Gamma against the central-difference phase derivative."""
    worst, where = 0.0, ()
    for E, alpha, V_i, d in product(GRID_E, GRID_ALPHA, GRID_VI, GRID_D):
        barrier = BarrierSpec(V_R, V_i, d)
        closed = tunneling_time_closed(E, barrier, alpha, units).gamma
        numeric = tunneling_time_numeric(E, barrier, alpha, default_step(E), units)
        err = abs(closed - numeric) / max(abs(closed), 1e-12)
        if err >= worst:
            worst, where = err, (E, alpha, V_i, d)
    return SuiteResult("oracle-equivalence", worst, tolerance, where)


def derivative_suite(units: UnitSystem = DEFAULT_UNITS, tolerance: float = 1e-6) -> SuiteResult:
    """Analytic energy derivatives against central differences."""
    worst, where = 0.0, ()
    for E, alpha, V_i in product(GRID_E, GRID_ALPHA, GRID_VI):
        err = derivative_selfcheck(E, BarrierSpec(V_R, V_i), alpha, default_step(E), units)
        if err >= worst:
            worst, where = err, (E, alpha, V_i)
    return SuiteResult("derivatives", worst, tolerance, where)


def run_all(units: UnitSystem = DEFAULT_UNITS) -> list[SuiteResult]:
    return [derivative_suite(units), oracle_equivalence(units)]
