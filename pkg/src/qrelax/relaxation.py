"""Relaxation-time (T1) estimates from the environment admittance.

A qubit of capacitance ``C`` looking into an admittance ``Y`` relaxes with
the RC time ``alpha * C / Re{Y}``; ``alpha`` (1 to 3 for realistic flux
qubits) absorbs the anharmonic correction to the harmonic matrix element.
A lossless environment gives ``math.inf``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Optional

from .constants import HBAR, KB, PHI0
from .errors import (
    DegenerateCancellation,
    InvalidParameter,
    LosslessEnvironment,
    NonPositiveCapacitance,
    NonPositiveCurrent,
    NonPositiveInductance,
    RegimeViolation,
)

LOSSLESS_ABS = 1e-30  # S
LOSSLESS_RTOL = 1e-12  # relative to |Y|; round-off floor of the nodal solve
CANCELLATION_RTOL = 1e-6
REGIME_LIMIT = 0.1  # max omega * Ceff * Z0 for the closed forms
INF = math.inf


def check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not 0.5 <= alpha <= 10:
        raise InvalidParameter(f"alpha={alpha} outside the accepted range [0.5, 10]")
    if not 1 <= alpha <= 3:
        warnings.warn(f"alpha={alpha} outside the typical range [1, 3]", stacklevel=3)
    return alpha


def _positive(name, x, exc=InvalidParameter):
    x = float(x)
    if not x > 0 or not math.isfinite(x):
        raise exc(f"{name} must be positive and finite, got {x}")
    return x


def josephson_inductance(I0: float) -> float:
    """Junction inductance at phase pi, ``-Phi0 / (2 pi I0)``; always negative."""
    I0 = _positive("I0", I0, NonPositiveCurrent)
    return -PHI0 / (2 * math.pi * I0)


@dataclass(frozen=True)
class QubitParams:
    """Linearized RF-SQUID: loop inductance ``L`` parallel to ``LJ`` and ``C``.

    Give exactly one of ``I0`` or ``LJ``; the other is derived.
    """

    C: float
    L: float
    I0: Optional[float] = None
    LJ: Optional[float] = None
    alpha: float = 1.0

    def __post_init__(self):
        _positive("C", self.C, NonPositiveCapacitance)
        _positive("L", self.L, NonPositiveInductance)
        if (self.I0 is None) == (self.LJ is None):
            raise InvalidParameter("give exactly one of I0 or LJ")
        if self.I0 is not None:
            object.__setattr__(self, "LJ", josephson_inductance(self.I0))
        else:
            LJ = float(self.LJ)
            if LJ == 0 or not math.isfinite(LJ):
                raise InvalidParameter(f"LJ must be finite and nonzero, got {LJ}")
            object.__setattr__(self, "I0", PHI0 / (2 * math.pi * abs(LJ)))
        check_alpha(self.alpha)

    @property
    def parallel_inductance(self) -> float:
        return effective_parallel_inductance(self.L, self.LJ)


@dataclass(frozen=True)
class ThermalState:
    T: float
    omega: float

    def __post_init__(self):
        if not self.T >= 0 or not math.isfinite(self.T):
            raise InvalidParameter(f"temperature must be >= 0, got {self.T}")
        _positive("omega", self.omega)


@dataclass(frozen=True)
class PhaseMatrixElement:
    """Magnitude of the phase-operator matrix element between the two lowest levels."""

    value: float

    def __post_init__(self):
        _positive("matrix element", self.value)


def effective_parallel_inductance(L: float, LJ: float) -> float:
    if math.isinf(LJ):
        return float(L)
    total = L + LJ
    if abs(total) < CANCELLATION_RTOL * abs(L):
        raise DegenerateCancellation(f"L + LJ = {total:.3e} H: linear resonator model is singular")
    return L * LJ / total


def loaded_resonance_frequency(Lp: float, C: float, Ceff: float = 0.0) -> float:
    """Angular frequency of the LC mode with the environment's capacitive load added."""
    if not Lp > 0:
        raise NonPositiveInductance(f"parallel inductance {Lp} H has no oscillatory mode")
    _positive("C", C, NonPositiveCapacitance)
    if not Ceff >= 0:
        raise NonPositiveCapacitance(f"Ceff must be >= 0, got {Ceff}")
    return 1.0 / math.sqrt(Lp * (C + Ceff))


def _loss_conductance(Y: complex) -> float:
    """``Re{Y}``, or ``None`` when the environment counts as lossless."""
    Y = complex(Y)
    g = Y.real
    if g <= max(LOSSLESS_ABS, LOSSLESS_RTOL * abs(Y)):
        if g < -LOSSLESS_RTOL * abs(Y):
            raise InvalidParameter(f"Re{{Y}} = {g:.3e} S < 0: environment is active, not passive")
        return None
    return g


def is_lossless(Y: complex) -> bool:
    return _loss_conductance(Y) is None


def t1_classical(C: float, Y: complex, alpha: float = 1.0) -> float:
    """``alpha * C / Re{Y}`` in seconds, ``inf`` for a lossless environment."""
    _positive("C", C, NonPositiveCapacitance)
    alpha = check_alpha(alpha)
    g = _loss_conductance(Y)
    if g is None:
        return INF
    return alpha * C / g


def effective_resistance(Y: complex) -> float:
    g = _loss_conductance(Y)
    return INF if g is None else 1.0 / g


def harmonic_matrix_element(omega: float, C: float) -> PhaseMatrixElement:
    omega = _positive("omega", omega)
    C = _positive("C", C, NonPositiveCapacitance)
    return PhaseMatrixElement((2 * math.pi / PHI0) * math.sqrt(HBAR / (2 * omega * C)))


def thermal_factor(state: ThermalState) -> float:
    """``coth(hbar omega / 2 kB T)``, exactly 1 at T = 0."""
    if state.T == 0:
        return 1.0
    x = HBAR * state.omega / (2 * KB * state.T)
    return 1.0 / math.tanh(x)


def t1_quantum(state: ThermalState, Y: complex, m: PhaseMatrixElement) -> float:
    """Golden-rule T1 from the phase matrix element.

    The thermal factor multiplies T1 here, so for T > 0 the result grows
    with temperature. That is the formula as written, kept verbatim; a
    standard fluctuation-dissipation treatment would divide instead.
    """
    g = _loss_conductance(Y)
    if g is None:
        return INF
    prefactor = (2 * math.pi / PHI0) ** 2 * HBAR / (2 * state.omega)
    return prefactor * thermal_factor(state) / (m.value**2 * g)


def coupling_strength(omega: float, Ceff: float, Z0: float) -> float:
    """``omega * Ceff * Z0``; the closed forms need this well below 1."""
    return omega * Ceff * Z0


def _closed_form_checks(C, Ceff, omega, Z0):
    for name, x in (("C", C), ("Ceff", Ceff), ("omega", omega), ("Z0", Z0)):
        _positive(name, x)
    x = coupling_strength(omega, Ceff, Z0)
    if x >= REGIME_LIMIT:
        raise RegimeViolation(f"omega*Ceff*Z0 = {x:.3g} >= {REGIME_LIMIT}: weak-coupling form invalid")


def t1_closed_form_lumped(C: float, Ceff: float, omega: float, Z0: float = 50.0, alpha: float = 1.0) -> float:
    """``alpha (C + Ceff) / (Z0 (omega Ceff)^2)`` for weak capacitive coupling."""
    _closed_form_checks(C, Ceff, omega, Z0)
    alpha = check_alpha(alpha)
    return alpha * (C + Ceff) / (Z0 * (omega * Ceff) ** 2)


def t1_distributed_estimate(
    C: float, Ceff: float, omega: float, Z0: float = 50.0, alpha: float = 1.0, beta: float = 1.0
) -> float:
    """Lumped closed form scaled by the distributed-ground improvement ``beta``."""
    _positive("beta", beta)
    return beta * t1_closed_form_lumped(C, Ceff, omega, Z0, alpha)


def t2_bound(t1: float) -> float:
    """Upper bound ``T2 <= 2 T1`` set by relaxation alone."""
    return 2.0 * t1


def require_lossy(Y: complex, what: str = "environment") -> float:
    g = _loss_conductance(Y)
    if g is None:
        raise LosslessEnvironment(f"{what} is lossless (Re{{Y}} = {complex(Y).real:.3e} S)")
    return g
