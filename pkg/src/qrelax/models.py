"""Circuit topologies for a capacitively coupled floating RF-SQUID qubit.

Node numbering used by every builder::

    lumped / grounded   1 = junction terminal on the bias side, 2 = far terminal
                        (grounded: 0), 3 = bias node
    ladder models       k + 1 for ladder position k = 0..n (junction between
                        positions 0 and n), n + 2 = bias node

Qubit elements carry the labels in ``QUBIT_LABELS``. T1 is computed from the
*environment* only, i.e. the netlist with those elements removed, so that the
junction capacitance is not counted twice.
"""

from __future__ import annotations

import math
import os
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

from .capacitance import series_effective_capacitance
from .circuit import Element, Netlist, driving_point_admittance
from .errors import InfiniteAdmittance, InvalidParameter, NonPositiveLength, SingularNetwork
from .relaxation import QubitParams, check_alpha, effective_resistance, require_lossy, t1_classical

QUBIT_LABELS = ("Lq", "LJ", "Cq")
WIRE_INDUCTANCE_PER_M = 1e-6  # H/m, i.e. 1 nH per mm
MAX_SEGMENTS = 1024
LAYOUTS = ("end", "symmetric")


@dataclass(frozen=True)
class CouplingEnvironment:
    """Capacitive coupling of the qubit to ground and to one bias lead.

    ``Lg=None`` means the bias lead has no inductive path to ground.
    ``n`` and ``tap_index`` only matter for the ladder models.
    """

    Cg: float
    Cc: float
    Z0: float = 50.0
    Lg: Optional[float] = None
    n: int = 1
    tap_index: int = 0

    def __post_init__(self):
        for name in ("Cg", "Cc", "Z0"):
            x = getattr(self, name)
            if not x > 0 or not math.isfinite(x):
                raise InvalidParameter(f"{name} must be positive and finite, got {x}")
        if self.Lg is not None and not (self.Lg > 0 and math.isfinite(self.Lg)):
            raise InvalidParameter(f"Lg must be positive and finite when given, got {self.Lg}")
        if isinstance(self.n, bool) or int(self.n) != self.n or not 1 <= self.n <= MAX_SEGMENTS:
            raise InvalidParameter(f"n must be an integer in [1, {MAX_SEGMENTS}], got {self.n}")
        if int(self.tap_index) != self.tap_index or not 0 <= self.tap_index <= self.n:
            raise InvalidParameter(f"tap_index must be in [0, n={self.n}], got {self.tap_index}")

    @classmethod
    def from_ceff(cls, Ceff: float, **kw) -> "CouplingEnvironment":
        """Environment with ``Cg = Cc = 2 Ceff``, whose series value is ``Ceff``."""
        return cls(Cg=2 * Ceff, Cc=2 * Ceff, **kw)

    @property
    def Ceff(self) -> float:
        return series_effective_capacitance(self.Cg, self.Cc)

    def with_(self, **changes) -> "CouplingEnvironment":
        fields = dict(Cg=self.Cg, Cc=self.Cc, Z0=self.Z0, Lg=self.Lg, n=self.n, tap_index=self.tap_index)
        fields.update(changes)
        return CouplingEnvironment(**fields)


def loaded_capacitance(q: QubitParams, env: CouplingEnvironment) -> float:
    """Junction capacitance plus the environment's series capacitive load."""
    return q.C + env.Ceff


def environment(net: Netlist) -> Netlist:
    return net.without(QUBIT_LABELS)


def environment_admittance(net: Netlist, omega: float) -> complex:
    """Admittance seen by the qubit, with its own L, LJ and C excluded."""
    return driving_point_admittance(environment(net), omega)


def _bias(env: CouplingEnvironment, node: int) -> list[Element]:
    out = [Element("R", node, 0, env.Z0, "R0")]
    if env.Lg is not None:
        out.append(Element("L", node, 0, env.Lg, "Lg"))
    return out


def _junction(q: QubitParams, a: int, b: int, with_loop: bool) -> list[Element]:
    out = [Element("L", a, b, q.L, "Lq")] if with_loop else []
    out += [Element("L", a, b, q.LJ, "LJ"), Element("C", a, b, q.C, "Cq")]
    return out


def build_lumped_model(q: QubitParams, env: CouplingEnvironment, include_qubit: bool = True) -> Netlist:
    """Single ``Cc`` to the bias lead on one terminal, ``Cg`` to ground on the other."""
    elements = _junction(q, 1, 2, with_loop=True) if include_qubit else []
    elements += [Element("C", 1, 3, env.Cc, "Cc"), Element("C", 2, 0, env.Cg, "Cg")]
    elements += _bias(env, 3)
    return Netlist(tuple(elements), (1, 2))


def _ladder(
    q: QubitParams,
    env: CouplingEnvironment,
    taps: Sequence[tuple[int, float, str]],
    layout: str,
    include_qubit: bool,
) -> Netlist:
    if layout not in LAYOUTS:
        raise InvalidParameter(f"layout must be one of {LAYOUTS}, got {layout!r}")
    n = int(env.n)
    node = lambda k: k + 1  # noqa: E731
    bias = n + 2
    elements = []
    if include_qubit:
        elements += _junction(q, node(0), node(n), with_loop=False)
    elements += [Element("L", node(k), node(k + 1), q.L / n, f"L{k + 1}") for k in range(n)]
    if layout == "end":
        # Cg/n on positions 1..n; n=1 is then exactly the lumped circuit
        caps = [(k, env.Cg / n) for k in range(1, n + 1)]
    else:
        # mirror-symmetric about the junction: half shares at both ends
        caps = [(k, env.Cg / (2 * n) if k in (0, n) else env.Cg / n) for k in range(n + 1)]
    elements += [Element("C", node(k), 0, c, f"Cg{k}") for k, c in caps]
    for k, c, label in taps:
        if not 0 <= k <= n:
            raise InvalidParameter(f"tap position {k} outside ladder 0..{n}")
        if c:
            elements.append(Element("C", node(k), bias, c, label))
    elements += _bias(env, bias)
    return Netlist(tuple(elements), (node(0), node(n)))


def build_distributed_model(
    q: QubitParams, env: CouplingEnvironment, include_qubit: bool = True, layout: str = "end"
) -> Netlist:
    """Loop split into ``env.n`` segments of ``L/n`` with ``Cg/n`` to ground each.

    ``Cc`` attaches at ladder position ``env.tap_index`` (default 0, the end
    next to the junction).
    """
    return _ladder(q, env, [(env.tap_index, env.Cc, "Cc")], layout, include_qubit)


def _require_even(env: CouplingEnvironment):
    if env.n % 2:
        raise InvalidParameter(f"symmetric models need an even segment count, got n={env.n}")


def default_symmetric_tap(n: int) -> int:
    return int(math.floor(n / 4 + 0.5))


def build_symmetric_single_lead(
    q: QubitParams,
    env: CouplingEnvironment,
    cc1: float,
    cc2: float,
    k: Optional[int] = None,
    taps: Optional[tuple[int, int]] = None,
    include_qubit: bool = True,
) -> Netlist:
    """Two coupling capacitors at mirror positions ``k`` and ``n - k`` on one lead.

    A zero ``cc1`` or ``cc2`` removes that capacitor. ``taps`` overrides the
    two positions, e.g. to break the mirror symmetry on purpose.
    """
    _require_even(env)
    if taps is None:
        k = default_symmetric_tap(env.n) if k is None else int(k)
        taps = (k, env.n - k)
    for name, c in (("cc1", cc1), ("cc2", cc2)):
        if c < 0 or not math.isfinite(c):
            raise InvalidParameter(f"{name} must be >= 0, got {c}")
    return _ladder(
        q, env, [(taps[0], cc1, "Cc1"), (taps[1], cc2, "Cc2")], "symmetric", include_qubit
    )


def build_center_tap(
    q: QubitParams, env: CouplingEnvironment, tap: Optional[int] = None, include_qubit: bool = True
) -> Netlist:
    """Single ``Cc`` from the loop midpoint to the bias lead."""
    _require_even(env)
    tap = env.n // 2 if tap is None else int(tap)
    return _ladder(q, env, [(tap, env.Cc, "Cc")], "symmetric", include_qubit)


def build_grounded_bias(q: QubitParams, env: CouplingEnvironment, include_qubit: bool = True) -> Netlist:
    """Series ``Ceff`` into a bias node grounded through ``Z0`` and ``Lg`` in parallel.

    Without ``env.Lg`` this is the ungrounded baseline.
    """
    elements = _junction(q, 1, 0, with_loop=True) if include_qubit else []
    elements.append(Element("C", 1, 2, env.Ceff, "Ceff"))
    elements += _bias(env, 2)
    return Netlist(tuple(elements), (1, 0))


def beta_factor(q: QubitParams, env: CouplingEnvironment, omega: float, layout: str = "end") -> float:
    """T1 of the distributed ladder divided by T1 of the lumped model at ``omega``."""
    if env.n < 16:
        warnings.warn(f"n={env.n} < 16: the ladder may not be converged", stacklevel=2)
    C = loaded_capacitance(q, env)
    y_dist = environment_admittance(build_distributed_model(q, env, layout=layout), omega)
    y_lump = environment_admittance(build_lumped_model(q, env), omega)
    require_lossy(y_dist, "distributed model")
    require_lossy(y_lump, "lumped model")
    return t1_classical(C, y_dist, q.alpha) / t1_classical(C, y_lump, q.alpha)


def wire_inductance(length: float) -> float:
    """Inductance of a bias wire, about 1 nH per mm."""
    if not length > 0 or not math.isfinite(length):
        raise NonPositiveLength(f"length must be positive, got {length}")
    return WIRE_INDUCTANCE_PER_M * length


@dataclass(frozen=True)
class SweepSpec:
    f_start: float
    f_stop: float
    points: int
    spacing: str = "linear"

    def __post_init__(self):
        if not 0 < self.f_start < self.f_stop or not math.isfinite(self.f_stop):
            raise InvalidParameter(f"need 0 < f_start < f_stop, got {self.f_start}, {self.f_stop}")
        if isinstance(self.points, bool) or int(self.points) != self.points or self.points < 2:
            raise InvalidParameter(f"points must be an integer >= 2, got {self.points}")
        if self.spacing not in ("linear", "log"):
            raise InvalidParameter(f"spacing must be 'linear' or 'log', got {self.spacing!r}")

    def frequencies(self) -> np.ndarray:
        if self.spacing == "log":
            f = np.geomspace(self.f_start, self.f_stop, int(self.points))
        else:
            f = np.linspace(self.f_start, self.f_stop, int(self.points))
        f[0], f[-1] = self.f_start, self.f_stop
        return f


@dataclass(frozen=True)
class SweepRecord:
    freq_hz: float
    Y: complex
    r_eff: float
    t1: float
    status: str = "ok"

    @property
    def ok(self) -> bool:
        return self.status == "ok"


@dataclass(frozen=True)
class SweepResult:
    records: tuple[SweepRecord, ...]

    def __iter__(self) -> Iterator[SweepRecord]:
        return iter(self.records)

    def __len__(self) -> int:
        return len(self.records)

    @property
    def all_ok(self) -> bool:
        return all(r.ok for r in self.records)

    @property
    def frequencies(self) -> np.ndarray:
        return np.array([r.freq_hz for r in self.records])

    @property
    def r_eff(self) -> np.ndarray:
        return np.array([r.r_eff for r in self.records])


def _sweep_point(net: Netlist, f: float, C: float, alpha: float) -> SweepRecord:
    nan = math.nan
    try:
        Y = driving_point_admittance(net, 2 * math.pi * f)
    except SingularNetwork:
        return SweepRecord(float(f), complex(nan, nan), nan, nan, "singular")
    except InfiniteAdmittance:
        return SweepRecord(float(f), complex(nan, nan), 0.0, nan, "short")
    return SweepRecord(float(f), Y, effective_resistance(Y), t1_classical(C, Y, alpha))


def sweep_threads() -> int:
    raw = os.environ.get("QRELAX_THREADS", "").strip()
    if not raw:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        raise InvalidParameter(f"QRELAX_THREADS must be an integer, got {raw!r}") from None


def effective_resistance_sweep(
    net: Netlist, spec: SweepSpec, C: float, alpha: float = 1.0, threads: Optional[int] = None
) -> SweepResult:
    """Driving-point admittance, ``1/Re{Y}`` and T1 at every sweep frequency.

    ``net`` is solved as given, so pass an environment netlist. Singular
    points are flagged in ``status`` and the sweep carries on. Results are in
    frequency order whatever the thread count.
    """
    alpha = check_alpha(alpha)
    freqs = spec.frequencies()
    threads = sweep_threads() if threads is None else max(1, int(threads))
    if threads == 1:
        records = [_sweep_point(net, f, C, alpha) for f in freqs]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            records = list(pool.map(lambda f: _sweep_point(net, f, C, alpha), freqs))
    return SweepResult(tuple(records))


@dataclass(frozen=True)
class SymmetryRow:
    epsilon: float
    Y: complex
    t1: float


def symmetry_breaking_scan(
    q: QubitParams, env: CouplingEnvironment, omega: float, epsilons: Iterable[float] = (0, 1e-3, 1e-2, 1e-1)
) -> list[SymmetryRow]:
    """Environment admittance of the two-tap model with ``cc2 = cc1 (1 + eps)``."""
    C = loaded_capacitance(q, env)
    rows = []
    for eps in epsilons:
        net = build_symmetric_single_lead(q, env, env.Cc, env.Cc * (1 + eps), include_qubit=False)
        Y = driving_point_admittance(net, omega)
        rows.append(SymmetryRow(float(eps), Y, t1_classical(C, Y, q.alpha)))
    return rows
