"""Command-line front end.

Exit codes: 0 success, 1 validation failure, 2 input error, 64 usage error.
"""
import argparse
import csv
import json
import sys

import numpy as np

from . import entangle, povm, qubit_phase, twoqubit, validate
from .config import DEFAULT_TOL
from .core import QuantumState
from .statefile import StateFileError, load_state

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_USAGE = 0, 1, 2, 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _fmt(x):
    return repr(float(x))


def _gamma(text):
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not 0.0 < value <= 1.0:
        raise argparse.ArgumentTypeError(f"gamma must lie in (0, 1], got {text}")
    return value


def _points(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 8:
        raise argparse.ArgumentTypeError(f"need at least 8 points, got {value}")
    return value


def _steps(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 2:
        raise argparse.ArgumentTypeError(f"need at least 2 steps, got {value}")
    return value


def _tol_scale(text):
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not value > 0:
        raise argparse.ArgumentTypeError(f"tolerance scale must be positive, got {text}")
    return value


def _load(path, qubits):
    state = load_state(path)
    if state.qubits != qubits:
        raise StateFileError(f"{path}: expected a {qubits}-qubit state, got {state.qubits} qubit(s)")
    return state


def _emit_rows(args, header, rows):
    """CSV to ``--out`` (or stdout); with ``--json`` a list of objects on stdout."""
    if args.json:
        print(json.dumps([dict(zip(header, map(float, r))) for r in rows]))
        return
    out = open(args.out, "w", newline="", encoding="utf-8") if args.out else sys.stdout
    try:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(header)
        for r in rows:
            writer.writerow([_fmt(x) for x in r])
    finally:
        if out is not sys.stdout:
            out.close()


def cmd_phase_dist(args):
    state = _load(args.state, 1)
    dist = povm.phase_distribution(state, args.gamma)
    grid, _ = povm.periodic_grid(args.points)
    _emit_rows(args, ["phi", "p"], zip(grid, dist(grid)))
    return EXIT_OK


def cmd_phase_herm(args):
    state = _load(args.state, 1)
    p_plus, p_minus = qubit_phase.hermitian_phase_distribution(state)
    print(json.dumps({"p_plus": p_plus, "p_minus": p_minus}))
    return EXIT_OK


def cmd_joint_dist(args):
    state = _load(args.state, 2)
    joint = twoqubit.joint_distribution(state, args.gamma_a, args.gamma_b)
    grid, _ = povm.periodic_grid(args.points)
    pp, pm = np.meshgrid(grid, grid, indexing="ij")
    vals = joint(pp, pm)
    _emit_rows(args, ["phi_plus", "phi_minus", "p"], zip(pp.ravel(), pm.ravel(), vals.ravel()))
    return EXIT_OK


def cmd_entanglement(args):
    state = _load(args.state, 2)
    report = entangle.entanglement_degree(state, args.gamma_a, args.gamma_b)
    print(json.dumps(report.to_dict()))
    return EXIT_OK


def cmd_sweep_epsilon(args):
    sign = 1 if args.sign == "plus" else -1
    rows = []
    for eps in np.linspace(0.0, 1.0, args.steps):
        state, predicted = entangle.epsilon_family(float(eps), sign)
        report = entangle.entanglement_degree(state, args.gamma_a, args.gamma_b)
        rows.append((eps, predicted, report.degree, report.concurrence))
    _emit_rows(args, ["epsilon", "predicted", "computed", "concurrence"], rows)
    return EXIT_OK


def cmd_lu_demo(args):
    """Degree and concurrence for |Phi+> and the locally rotated (H x I)|Phi+>."""
    phi_plus = entangle.bell_states()["phi+"]
    h = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
    rotated = QuantumState.pure(np.kron(h, np.eye(2)) @ phi_plus.data)
    out = {}
    for name, state in (("phi+", phi_plus), ("(H x I) phi+", rotated)):
        report = entangle.entanglement_degree(state, args.gamma_a, args.gamma_b)
        maximal, _ = entangle.is_maximally_entangled(state)
        out[name] = {**report.to_dict(), "maximally_entangled": maximal}
    print(json.dumps(out, indent=None if args.json else 2))
    return EXIT_OK


def cmd_validate(args):
    tol = DEFAULT_TOL.scaled(args.tol_scale)
    report = validate.run_all(seed=args.seed, tol=tol, modules=args.module or None)
    if args.json:
        print(json.dumps(report))
    else:
        for r in report["checks"]:
            if args.verbose or not r["passed"]:
                status = "PASS" if r["passed"] else "FAIL"
                print(f"{status}  {r['module']:<12} {r['check']:<40} residual={r['residual']:.3e}")
        n_fail = sum(not r["passed"] for r in report["checks"])
        print(f"{len(report['checks']) - n_fail}/{len(report['checks'])} checks passed "
              f"in {report['seconds']:.2f} s (seed {report['seed']})")
    return EXIT_OK if report["passed"] else EXIT_FAIL


def build_parser():
    parser = _Parser(prog="qphase", description="Qubit phase distributions and the phase-dispersion "
                                                "entanglement degree.")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    def common(p, state=True, out=False):
        if state:
            p.add_argument("--state", required=True, metavar="PATH", help="JSON state file")
        if out:
            p.add_argument("--out", metavar="PATH", help="CSV output path (default stdout)")
        p.add_argument("--json", action="store_true", help="write JSON to stdout")

    def gammas(p):
        p.add_argument("--gamma-a", type=_gamma, default=1.0, metavar="X")
        p.add_argument("--gamma-b", type=_gamma, default=1.0, metavar="X")

    p = sub.add_parser("phase-dist", help="single-qubit POVM phase distribution on a grid")
    common(p, out=True)
    p.add_argument("--gamma", type=_gamma, default=1.0, metavar="X")
    p.add_argument("--points", type=_points, default=256, metavar="N")
    p.set_defaults(func=cmd_phase_dist)

    p = sub.add_parser("phase-herm", help="two-valued distribution of the Hermitian phase")
    common(p)
    p.set_defaults(func=cmd_phase_herm)

    p = sub.add_parser("joint-dist", help="cast phase sum/difference distribution on a grid")
    common(p, out=True)
    gammas(p)
    p.add_argument("--points", type=_points, default=128, metavar="N")
    p.set_defaults(func=cmd_joint_dist)

    p = sub.add_parser("entanglement", help="entanglement report for a two-qubit state")
    common(p)
    gammas(p)
    p.set_defaults(func=cmd_entanglement)

    p = sub.add_parser("sweep-epsilon", help="degree along the Phi_epsilon family")
    common(p, state=False, out=True)
    gammas(p)
    p.add_argument("--steps", type=_steps, default=11, metavar="N")
    p.add_argument("--sign", choices=("plus", "minus"), default="plus")
    p.set_defaults(func=cmd_sweep_epsilon)

    p = sub.add_parser("lu-demo", help="show that the degree is not local-unitary invariant")
    common(p, state=False)
    gammas(p)
    p.set_defaults(func=cmd_lu_demo)

    p = sub.add_parser("validate", help="run the invariant suites")
    p.add_argument("--seed", type=int, default=0, metavar="N")
    p.add_argument("--tol-scale", type=_tol_scale, default=1.0, metavar="X",
                   help="multiply every tolerance by X (> 0)")
    p.add_argument("--module", action="append", metavar="NAME",
                   choices=("core", "qubit_phase", "povm", "twoqubit", "entangle"),
                   help="restrict to one module (repeatable)")
    p.add_argument("-v", "--verbose", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except StateFileError as exc:
        print(f"qphase: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"qphase: {exc}", file=sys.stderr)
        return EXIT_INPUT


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
