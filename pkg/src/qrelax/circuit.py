"""Linear RLC netlists and small-signal nodal analysis.

Inductors are stamped directly as admittances ``-1j / (omega * L)``, so every
analysis requires ``omega > 0``. Node 0 is the ground reference.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np
from scipy.linalg import LinAlgWarning, lu_factor, lu_solve

from .errors import (
    InfiniteAdmittance,
    InvalidElement,
    InvalidNetlist,
    NonPositiveFrequency,
    SingularNetwork,
    UnknownElementLabel,
)

GROUND = 0
KINDS = ("R", "L", "C")
PIVOT_RTOL = 1e-14
MIN_PORT_VOLTAGE = 1e-300


@dataclass(frozen=True)
class Element:
    """A two-terminal lumped element.

    ``label`` is the full identifier as it appears in a netlist file and must
    start with the kind letter (``"R1"``, ``"Cc"``, ``"LJ"``).
    """

    kind: str
    n1: int
    n2: int
    value: float
    label: str

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidElement(f"unknown element kind {self.kind!r}")
        for n in (self.n1, self.n2):
            if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 0:
                raise InvalidElement(f"{self.label}: node ids must be non-negative integers")
        if self.n1 == self.n2:
            raise InvalidElement(f"{self.label}: both terminals on node {self.n1}")
        value = float(self.value)
        if not math.isfinite(value) or value == 0.0:
            raise InvalidElement(f"{self.label}: value must be finite and nonzero")
        if value < 0 and self.kind != "L":
            raise InvalidElement(f"{self.label}: negative {self.kind} values are not allowed")
        if not self.label or not self.label.startswith(self.kind) or any(c.isspace() for c in self.label):
            raise InvalidElement(
                f"label {self.label!r} must be non-empty, whitespace-free and start with {self.kind!r}"
            )
        object.__setattr__(self, "value", value)
        object.__setattr__(self, "n1", int(self.n1))
        object.__setattr__(self, "n2", int(self.n2))

    def admittance(self, omega: float) -> complex:
        return element_admittance(self, omega)


@dataclass(frozen=True)
class Netlist:
    """An ordered collection of elements with a designated qubit port.

    ``port`` is ``(plus, minus)``: the pair of nodes across which the qubit
    looks out into the circuit.
    """

    elements: tuple[Element, ...]
    port: tuple[int, int]
    nodes: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        elements = tuple(self.elements)
        object.__setattr__(self, "elements", elements)
        port = tuple(int(p) for p in self.port)
        if len(port) != 2:
            raise InvalidNetlist("port must be a pair of nodes")
        if port[0] == port[1]:
            raise InvalidNetlist(f"port terminals must differ, got {port}")
        object.__setattr__(self, "port", port)

        seen = set()
        for e in elements:
            if e.label in seen:
                raise InvalidNetlist(f"duplicate element label {e.label!r}")
            seen.add(e.label)

        used = {n for e in elements for n in (e.n1, e.n2)}
        if elements:
            missing = [p for p in port if p not in used]
            if missing:
                raise InvalidNetlist(f"port node(s) {missing} not connected to any element")
        object.__setattr__(self, "nodes", tuple(sorted(used - {GROUND})))

    @property
    def node_count(self) -> int:
        """Number of distinct nodes, ground included."""
        return len(self.nodes) + 1

    def element(self, label: str) -> Element:
        for e in self.elements:
            if e.label == label:
                return e
        raise UnknownElementLabel(label)

    def without(self, labels) -> "Netlist":
        """Copy of this netlist with the named elements removed."""
        drop = set(labels)
        return Netlist(tuple(e for e in self.elements if e.label not in drop), self.port)

    def scaled(self, k: float) -> "Netlist":
        """Multiply every element impedance by ``k``."""
        scale = {"R": k, "L": k, "C": 1.0 / k}
        return Netlist(
            tuple(Element(e.kind, e.n1, e.n2, e.value * scale[e.kind], e.label) for e in self.elements),
            self.port,
        )


def _check_omega(omega: float) -> float:
    omega = float(omega)
    if not omega > 0 or not math.isfinite(omega):
        raise NonPositiveFrequency(f"angular frequency must be positive and finite, got {omega}")
    return omega


def element_admittance(e: Element, omega: float) -> complex:
    omega = _check_omega(omega)
    if e.kind == "R":
        return complex(1.0 / e.value, 0.0)
    if e.kind == "C":
        return complex(0.0, omega * e.value)
    return complex(0.0, -1.0 / (omega * e.value))


def assemble_admittance_matrix(net: Netlist, omega: float) -> np.ndarray:
    """Nodal admittance matrix with the ground row and column removed.

    Rows follow ``net.nodes`` (sorted non-ground node ids).
    """
    omega = _check_omega(omega)
    index = {n: i for i, n in enumerate(net.nodes)}
    Y = np.zeros((len(index), len(index)), dtype=complex)
    for e in net.elements:
        y = element_admittance(e, omega)
        i = index.get(e.n1)
        j = index.get(e.n2)
        if i is not None:
            Y[i, i] += y
        if j is not None:
            Y[j, j] += y
        if i is not None and j is not None:
            Y[i, j] -= y
            Y[j, i] -= y
    return Y


def _stamp_scale(net: Netlist, omega: float) -> float:
    """Largest single element admittance.

    Matrix entries can cancel during stamping (an ideal tank at resonance
    sums to ~1e-17 S), so pivots are judged against the uncancelled scale.
    """
    return max((abs(element_admittance(e, omega)) for e in net.elements), default=0.0)


def _factor(Y: np.ndarray, stamp_scale: float = 0.0):
    if Y.size == 0:
        raise SingularNetwork("netlist has no non-ground nodes")
    scale = max(np.abs(Y).max(), stamp_scale)
    if scale == 0:
        raise SingularNetwork("all admittances are zero")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", LinAlgWarning)
        lu, piv = lu_factor(Y, check_finite=True)
    pivots = np.abs(np.diag(lu))
    k = int(np.argmin(pivots))
    if pivots[k] < PIVOT_RTOL * scale:
        raise SingularNetwork(
            f"pivot {pivots[k]:.3e} below {PIVOT_RTOL:g} x max entry {scale:.3e} "
            "(floating subnetwork or lossless resonance)"
        )
    return lu, piv


def solve_node_voltages(net: Netlist, injections: Mapping[int, complex], omega: float) -> dict[int, complex]:
    """Solve ``Y V = I`` for the node voltages given injected currents.

    Injections into ground are ignored; the returned map always has
    ``V[0] == 0``.
    """
    Y = assemble_admittance_matrix(net, omega)
    index = {n: i for i, n in enumerate(net.nodes)}
    current = np.zeros(len(index), dtype=complex)
    for node, amps in injections.items():
        if node == GROUND:
            continue
        if node not in index:
            raise InvalidNetlist(f"injection node {node} is not in the netlist")
        current[index[node]] += amps
    V = lu_solve(_factor(Y, _stamp_scale(net, omega)), current)
    out = {GROUND: 0j}
    out.update({n: complex(V[i]) for n, i in index.items()})
    return out


def _unit_drive(net: Netlist, port: tuple[int, int], omega: float) -> dict[int, complex]:
    plus, minus = port
    inj: dict[int, complex] = {}
    inj[plus] = inj.get(plus, 0) + 1.0
    inj[minus] = inj.get(minus, 0) - 1.0
    return solve_node_voltages(net, inj, omega)


def driving_point_admittance(net: Netlist, omega: float) -> complex:
    """Admittance (S) seen looking into ``net.port``."""
    if not net.elements:
        raise SingularNetwork("empty netlist")
    V = _unit_drive(net, net.port, omega)
    v = V[net.port[0]] - V[net.port[1]]
    if abs(v) < MIN_PORT_VOLTAGE:
        raise InfiniteAdmittance(f"port voltage {abs(v):.3e} V under unit drive")
    y = 1.0 / v
    if not (math.isfinite(y.real) and math.isfinite(y.imag)):
        raise InfiniteAdmittance("non-finite driving-point admittance")
    return y


def branch_current_from_drive(net: Netlist, drive_port: tuple[int, int], branch: str, omega: float) -> complex:
    """Current through element ``branch`` (n1 to n2 positive) under a 1 A drive.

    The drive is an ideal current source pushing 1 A into ``drive_port[0]``
    and drawing it from ``drive_port[1]``.
    """
    e = net.element(branch)
    for n in drive_port:
        if n != GROUND and n not in net.nodes:
            raise InvalidNetlist(f"drive node {n} is not in the netlist")
    V = _unit_drive(net, tuple(drive_port), omega)
    return element_admittance(e, omega) * (V[e.n1] - V[e.n2])
