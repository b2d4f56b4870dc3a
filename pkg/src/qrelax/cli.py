"""``qrelax`` command-line interface.

Frequencies on the command line are cyclic (Hz); all values accept SI
suffixes (``10f``, ``5G``, ``50u``). Exit codes: 0 success, 1 computation
error, 2 usage error.
"""

from __future__ import annotations

import argparse
import math
import sys
import warnings
from typing import Optional, Sequence

from . import __version__
from .capacitance import (
    LOWER_BOUND_NOTE,
    LoopGeometry,
    disc_capacitance,
    series_effective_capacitance,
    sphere_capacitance,
    toroid_capacitance,
    toroid_on_substrate,
)
from .constants import EPS0
from .errors import QRelaxError, RegimeViolation
from .models import (
    CouplingEnvironment,
    SweepSpec,
    build_center_tap,
    build_distributed_model,
    build_grounded_bias,
    build_lumped_model,
    build_symmetric_single_lead,
    effective_resistance_sweep,
    environment_admittance,
    loaded_capacitance,
    symmetry_breaking_scan,
)
from .netlist_io import read_netlist, serialize_netlist
from .relaxation import (
    QubitParams,
    effective_resistance,
    t1_classical,
    t1_closed_form_lumped,
    t2_bound,
)
from .report import render, sweep_rows

MODELS = ("lumped", "distributed", "symmetric", "center", "grounded")
DEFAULT_EPSILONS = (0.0, 1e-3, 1e-2, 1e-1)


class UsageError(Exception):
    pass


def si(text: str) -> float:
    from .units import parse_si

    try:
        return parse_si(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    return v


def _add_output(p, default="table"):
    p.add_argument("--format", choices=("table", "csv", "json"), default=default)
    p.add_argument("--output", "-o", metavar="PATH", help="write here instead of stdout")


def _add_qubit(p):
    g = p.add_argument_group("qubit")
    g.add_argument("--C", type=si, default=10e-15, help="junction/shunt capacitance [F] (default 10f)")
    g.add_argument("--L", type=si, default=1e-9, help="loop inductance [H] (default 1n)")
    g.add_argument("--I0", type=si, help="junction critical current [A] (default 0.3u)")
    g.add_argument("--LJ", type=si, help="Josephson inductance [H], instead of --I0")
    g.add_argument("--alpha", type=si, default=1.0, help="anharmonicity factor (default 1)")


def _add_environment(p, models=MODELS, default_model="lumped"):
    g = p.add_argument_group("environment")
    g.add_argument("--model", choices=models, default=default_model)
    g.add_argument("--Cg", type=si, default=10e-15, help="capacitance to ground [F] (default 10f)")
    g.add_argument("--Cc", type=si, default=10e-15, help="coupling capacitance to the bias lead [F] (default 10f)")
    g.add_argument("--Ceff", type=si, help="series Cg-Cc capacitance [F], grounded model only")
    g.add_argument("--cc2", type=si, help="second tap capacitance for --model symmetric (default: --Cc)")
    g.add_argument("--Z0", type=si, default=50.0, help="bias lead resistance [ohm] (default 50)")
    g.add_argument("--Lg", type=si, help="bias lead inductance to ground [H] (default: none)")
    g.add_argument("--n", type=_int, default=64, help="ladder segments (default 64)")
    g.add_argument("--tap", type=_int, help="ladder tap position (model dependent default)")
    g.add_argument("--dump-netlist", metavar="PATH", help="write the solved environment netlist")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qrelax", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cap", help="capacitance-to-ground estimates of a loop")
    p.add_argument("--D", type=si, required=True, help="loop diameter [m]")
    p.add_argument("--a", type=si, help="wire width [m]; needed for the toroid estimates")
    p.add_argument("--eps-r", type=si, default=1.0, help="relative substrate permittivity (default 1)")
    _add_output(p)

    p = sub.add_parser("t1", help="T1 of one topology at one frequency")
    _add_qubit(p)
    _add_environment(p)
    p.add_argument("--freq", type=si, default=5e9, help="qubit frequency [Hz] (default 5G)")
    _add_output(p)

    p = sub.add_parser("sweep", help="effective resistance and T1 over frequency")
    _add_qubit(p)
    _add_environment(p)
    p.add_argument("--netlist", metavar="FILE", help="environment netlist file instead of a builder")
    p.add_argument("--from", dest="f_start", type=si, default=1e9, help="start frequency [Hz] (default 1G)")
    p.add_argument("--to", dest="f_stop", type=si, default=10e9, help="stop frequency [Hz] (default 10G)")
    p.add_argument("--points", type=_int, default=91)
    p.add_argument("--spacing", choices=("linear", "log"), default="linear")
    _add_output(p, default="csv")

    p = sub.add_parser("symmetry", help="symmetric two-tap coupling and its breaking")
    _add_qubit(p)
    _add_environment(p, models=("symmetric",), default_model="symmetric")
    p.add_argument("--freq", type=si, default=5e9, help="qubit frequency [Hz] (default 5G)")
    p.add_argument("--epsilon", type=float, nargs="*", default=None, help="cc2/cc1 - 1 values")
    _add_output(p)
    return parser


def _qubit(args) -> QubitParams:
    if args.I0 is not None and args.LJ is not None:
        raise UsageError("give at most one of --I0 and --LJ")
    if args.I0 is None and args.LJ is None:
        return QubitParams(C=args.C, L=args.L, I0=0.3e-6, alpha=args.alpha)
    return QubitParams(C=args.C, L=args.L, I0=args.I0, LJ=args.LJ, alpha=args.alpha)


def _environment(args) -> CouplingEnvironment:
    if args.model == "grounded":
        Ceff = args.Ceff if args.Ceff is not None else series_effective_capacitance(args.Cg, args.Cc)
        return CouplingEnvironment.from_ceff(Ceff, Z0=args.Z0, Lg=args.Lg)
    if args.Ceff is not None:
        raise UsageError("--Ceff only applies to --model grounded; use --Cg/--Cc")
    n = 1 if args.model == "lumped" else args.n
    # symmetric and center builders take --tap directly
    tap = args.tap if args.model == "distributed" and args.tap is not None else 0
    return CouplingEnvironment(Cg=args.Cg, Cc=args.Cc, Z0=args.Z0, Lg=args.Lg, n=n, tap_index=tap)


def _environment_netlist(args, q, env):
    try:
        return _build(args, q, env)
    except QRelaxError as exc:
        raise UsageError(str(exc)) from None


def _build(args, q, env):
    if args.model == "lumped":
        return build_lumped_model(q, env, include_qubit=False)
    if args.model == "distributed":
        return build_distributed_model(q, env, include_qubit=False)
    if args.model == "symmetric":
        cc2 = args.Cc if args.cc2 is None else args.cc2
        return build_symmetric_single_lead(q, env, env.Cc, cc2, k=args.tap, include_qubit=False)
    if args.model == "center":
        return build_center_tap(q, env, tap=args.tap, include_qubit=False)
    return build_grounded_bias(q, env, include_qubit=False)


def _dump(args, net, header):
    if getattr(args, "dump_netlist", None):
        with open(args.dump_netlist, "w", encoding="utf-8") as fh:
            fh.write(serialize_netlist(net, header=header))


def cmd_cap(args) -> tuple[list[dict], list[str]]:
    if not args.D > 0:
        raise UsageError(f"--D must be positive, got {args.D}")
    if args.a is not None and not args.a > 0:
        raise UsageError(f"--a must be positive, got {args.a}")
    if not args.eps_r >= 1:
        raise UsageError(f"--eps-r must be >= 1, got {args.eps_r}")
    row = {
        "D_m": args.D,
        "sphere_f": sphere_capacitance(args.D),
        "disc_f": disc_capacitance(args.D),
    }
    if args.a is not None:
        try:
            g = LoopGeometry(args.D, args.a, args.eps_r * EPS0)
        except QRelaxError as exc:
            raise UsageError(str(exc)) from None
        row.update(
            a_m=args.a,
            eps_r=args.eps_r,
            log_term=g.log_term,
            toroid_f=toroid_capacitance(g),
            toroid_substrate_f=toroid_on_substrate(g),
        )
    if args.format != "table":
        row["note"] = LOWER_BOUND_NOTE
    return [row], [LOWER_BOUND_NOTE]


def cmd_t1(args):
    q, env = _validated_inputs(args)
    if not args.freq > 0:
        raise UsageError(f"--freq must be positive, got {args.freq}")
    omega = 2 * math.pi * args.freq
    net = _environment_netlist(args, q, env)
    _dump(args, net, f"qrelax t1 --model {args.model} environment")
    Y = environment_admittance(net, omega)
    C = loaded_capacitance(q, env)
    t1 = t1_classical(C, Y, q.alpha)
    row = {
        "model": args.model,
        "freq_hz": args.freq,
        "re_y_s": Y.real,
        "im_y_s": Y.imag,
        "r_eff_ohm": effective_resistance(Y),
        "c_loaded_f": C,
        "alpha": q.alpha,
        "t1_s": t1,
        "t2_bound_s": t2_bound(t1),
    }
    notes = []
    if args.model in ("lumped", "grounded") and env.Lg is None:
        try:
            row["t1_closed_form_s"] = t1_closed_form_lumped(q.C, env.Ceff, omega, env.Z0, q.alpha)
        except RegimeViolation as exc:
            print(f"warning: {exc}; reporting the exact network result only", file=sys.stderr)
    if args.model == "distributed":
        lumped = build_lumped_model(q, env, include_qubit=False)
        t1_lumped = t1_classical(C, environment_admittance(lumped, omega), q.alpha)
        row["t1_lumped_s"] = t1_lumped
        row["beta"] = t1 / t1_lumped
    if math.isinf(t1):
        notes.append("note: environment is lossless at this frequency (T1 = inf)")
    return [row], notes


def cmd_sweep(args):
    q, env = _validated_inputs(args)
    try:
        spec = SweepSpec(args.f_start, args.f_stop, args.points, args.spacing)
    except QRelaxError as exc:
        raise UsageError(str(exc)) from None
    if args.netlist:
        try:
            net = read_netlist(args.netlist)
        except OSError as exc:
            raise UsageError(f"cannot read {args.netlist}: {exc.strerror}") from None
        except QRelaxError as exc:
            raise UsageError(f"{args.netlist}: {exc}") from None
    else:
        net = _environment_netlist(args, q, env)
    _dump(args, net, f"qrelax sweep --model {args.model} environment")
    result = effective_resistance_sweep(net, spec, C=q.C, alpha=q.alpha)
    notes = [] if result.all_ok else ["note: some points are singular, see the status column"]
    return sweep_rows(result), notes


def cmd_symmetry(args):
    q, env = _validated_inputs(args)
    _environment_netlist(args, q, env)  # validates n and taps up front
    epsilons = DEFAULT_EPSILONS if not args.epsilon else tuple(args.epsilon)
    if any(not e > -1 for e in epsilons):
        raise UsageError("every --epsilon must be > -1")
    omega = 2 * math.pi * args.freq
    rows = []
    for r in symmetry_breaking_scan(q, env, omega, epsilons):
        rows.append(
            {
                "epsilon": r.epsilon,
                "cc2_over_cc1": 1 + r.epsilon,
                "re_y_s": r.Y.real,
                "im_y_s": r.Y.imag,
                "re_over_abs_im": abs(r.Y.real) / abs(r.Y.imag),
                "t1_s": r.t1,
            }
        )
    return rows, []


def _validated_inputs(args):
    try:
        return _qubit(args), _environment(args)
    except QRelaxError as exc:
        raise UsageError(str(exc)) from None


COMMANDS = {"cap": cmd_cap, "t1": cmd_t1, "sweep": cmd_sweep, "symmetry": cmd_symmetry}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            rows, notes = COMMANDS[args.command](args)
        for w in caught:
            print(f"warning: {w.message}", file=sys.stderr)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except QRelaxError as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return 1

    text = render(rows, args.format, notes)
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
