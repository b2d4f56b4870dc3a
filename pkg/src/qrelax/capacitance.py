"""Closed-form capacitance-to-ground estimates for a qubit loop.

All estimates assume ground at infinity, so they are lower bounds: a real
ground plane close to the chip only raises the capacitance.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .constants import EPS0
from .errors import DegenerateLogarithm, NonPositiveCapacitance, NonPositiveDimension

LOWER_BOUND_NOTE = (
    "note: the substrate toroid estimate is a lower bound on the capacitance, "
    "since it assumes ground is at infinity; a nearby ground plane raises C_g"
)


def _positive(name: str, x: float) -> float:
    x = float(x)
    if not x > 0 or not math.isfinite(x):
        raise NonPositiveDimension(f"{name} must be positive and finite, got {x}")
    return x


@dataclass(frozen=True)
class LoopGeometry:
    """A thin superconducting loop of mean diameter ``D`` and trace width ``a``.

    Square or rectangular loops are treated as rings with their mean
    diameter, which is only an order-of-magnitude estimate.
    """

    D: float
    a: float
    eps_subs: float = EPS0

    def __post_init__(self):
        _positive("D", self.D)
        _positive("a", self.a)
        if not self.eps_subs >= EPS0:
            raise NonPositiveDimension(f"eps_subs must be >= eps0, got {self.eps_subs}")
        if not 8 * self.D / self.a > 1:
            raise DegenerateLogarithm(f"ln(8D/a) <= 0 for D={self.D}, a={self.a}")
        if self.D / self.a < 10:
            warnings.warn(
                f"D/a = {self.D / self.a:.3g} < 10; the thin-ring formula assumes D >> a",
                stacklevel=3,
            )

    @property
    def log_term(self) -> float:
        return math.log(8 * self.D / self.a)


def sphere_capacitance(D: float) -> float:
    return 2 * math.pi * EPS0 * _positive("D", D)


def disc_capacitance(D: float) -> float:
    return 4 * EPS0 * _positive("D", D)


def _log_term(g: LoopGeometry) -> float:
    # LoopGeometry already rejects this, but instances can be built via replace()
    ln = g.log_term
    if ln <= 0:
        raise DegenerateLogarithm(f"ln(8D/a) = {ln:.3g} <= 0")
    return ln


def toroid_capacitance(g: LoopGeometry) -> float:
    """Isolated thin ring in vacuum: ``2 pi^2 eps0 D / ln(8D/a)``."""
    return 2 * math.pi**2 * EPS0 * g.D / _log_term(g)


def toroid_on_substrate(g: LoopGeometry) -> float:
    """Ring on a dielectric half-space, averaging vacuum and full-dielectric values."""
    return math.pi**2 * (g.eps_subs + EPS0) * g.D / _log_term(g)


def series_effective_capacitance(Cg: float, Cc: float) -> float:
    """Series combination of the capacitance to ground and to the bias lead."""
    for name, c in (("Cg", Cg), ("Cc", Cc)):
        if not c > 0 or not math.isfinite(c):
            raise NonPositiveCapacitance(f"{name} must be positive and finite, got {c}")
    return 1.0 / (1.0 / Cg + 1.0 / Cc)
