"""
``walk`` command line.

    walk run --lattice square --steps 50 --theta 0 --initial plus-i --out d.csv
    walk run --lattice triangular --steps 20 --theta y=pi/4 --theta x=0 --theta z=0 --out t.csv
    walk compare d.csv g.csv
    walk verify [CHECK ...] [--oracle-check] [--hamiltonian-check] [--degenerate-tolerance T]

Exit codes: 0 success, 1 failed check or mismatch, 2 invalid arguments,
3 internal invariant violation (normalization breach or oracle disagreement).
"""

from __future__ import annotations

import argparse
import ast
import json
import math
import operator
import sys
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from . import __version__
from .analysis import Distribution, distribution, max_abs_diff
from .dense import dense_evolve
from .engine import NormalizationError, WalkConfig, evolve
from .grover import grover_evolve_state
from .hamiltonian import DEGENERACY_TOL, triangular_commutator_report
from .io import read_distribution, write_distribution
from .lattice import LatticeKind
from .recursion import grover_recursion
from .spinor import DOWN, PLUS_I, UP, PauliAxis, spin_from_angles
from .verify import SUITES, UnknownCheckError, run_checks

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INVARIANT = 0, 1, 2, 3

GROVER = "grover-square"
LATTICES = [k.value for k in LatticeKind] + [GROVER]
COORD_NAMES = {
    "line": ("z",),
    "square": ("x", "z"),
    GROVER: ("x", "z"),
    "cubic": ("x", "y", "z"),
    "triangular": ("x", "y", "z"),
    "kagome": ("x", "y", "z"),
}
PRESETS = {"down": DOWN, "up": UP, "plus-i": PLUS_I}

# dense oracle cost grows quickly with the truncation radius
ORACLE_MAX_STEPS = 6

_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul, ast.Div: operator.truediv}


class UsageError(ValueError):
    pass


def parse_angle(text: str) -> float:
    """Evaluate a number or a small arithmetic expression in ``pi``, e.g. ``-3*pi/4``."""

    def ev(node: ast.AST) -> float:
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
            return float(node.value)
        if isinstance(node, ast.Name) and node.id == "pi":
            return math.pi
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](ev(node.left), ev(node.right))
        raise UsageError(f"cannot parse angle {text!r}")

    try:
        value = ev(ast.parse(text.strip(), mode="eval"))
    except (SyntaxError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot parse angle {text!r}") from exc
    if not math.isfinite(value):
        raise UsageError(f"angle {text!r} is not finite")
    return value


def parse_thetas(values: Sequence[str] | None) -> float | dict[PauliAxis, float]:
    if not values:
        return 0.0
    bare = [v for v in values if "=" not in v]
    keyed = [v for v in values if "=" in v]
    if bare and (keyed or len(bare) > 1):
        raise UsageError("give either one bare --theta or per-axis --theta axis=value flags")
    if bare:
        return parse_angle(bare[0])
    out: dict[PauliAxis, float] = {}
    for item in keyed:
        name, _, val = item.partition("=")
        try:
            axis = PauliAxis.parse(name.strip())
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        if axis in out:
            raise UsageError(f"--theta given twice for axis {axis.value}")
        out[axis] = parse_angle(val)
    return out


def parse_initial(text: str) -> np.ndarray:
    if text in PRESETS:
        return PRESETS[text]
    if text.startswith("delta-eta:"):
        parts = text.split(":")
        if len(parts) != 3:
            raise UsageError("expected delta-eta:<delta>:<eta>")
        return spin_from_angles(parse_angle(parts[1]), parse_angle(parts[2]))
    raise UsageError(f"unknown initial state {text!r}; use down, up, plus-i or delta-eta:<d>:<e>")


def _parse_ints(text: str | None) -> tuple[int, ...] | None:
    if text is None:
        return None
    try:
        return tuple(int(v) for v in text.split(","))
    except ValueError as exc:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from exc


def _spinor_json(spin: np.ndarray) -> list[list[float]]:
    return [[float(a.real), float(a.imag)] for a in spin]


def _oracle_check(cfg: WalkConfig | None, steps: int, produced: Distribution) -> dict[str, Any]:
    """Re-derive a short prefix of the run independently and compare."""
    t = min(steps, ORACLE_MAX_STEPS)
    if cfg is None:
        ref = grover_recursion(t).distribution(t)
        mine = distribution(grover_evolve_state(t))
        name = "grover_recursion"
    elif cfg.lattice.kind is LatticeKind.KAGOME:
        return {"oracle": None, "note": "no dense oracle for kagome site typing"}
    else:
        short = WalkConfig(cfg.lattice, t, cfg.thetas, cfg.initial_spin, cfg.initial_position)
        ref = distribution(dense_evolve(short))
        mine = produced if t == steps else distribution(evolve(short))
        name = "dense_matrix"
    diff = max_abs_diff(mine, ref)
    return {"oracle": name, "steps": t, "max_abs_diff": diff, "passed": diff < 1e-10}


def cmd_run(args: argparse.Namespace) -> int:
    if args.steps < 0:
        raise UsageError(f"--steps must be non-negative, got {args.steps}")
    coord_names = COORD_NAMES[args.lattice]
    manifest: dict[str, Any] = {"version": __version__, "lattice": args.lattice, "steps": args.steps}
    if args.lattice == GROVER:
        if args.theta or args.initial != "plus-i" or args.ordering or args.origin_type or args.position:
            raise UsageError("grover-square takes only --steps (its coin and seed are fixed)")
        cfg = None
        d = distribution(grover_evolve_state(args.steps))
    else:
        spin = parse_initial(args.initial)
        ordering = [s.strip() for s in args.ordering.split(",")] if args.ordering else None
        cfg = WalkConfig.build(
            args.lattice,
            args.steps,
            parse_thetas(args.theta),
            spin,
            initial_position=_parse_ints(args.position),
            ordering=ordering,
            origin_type=args.origin_type,
            convention=args.convention,
        )
        d = distribution(evolve(cfg))
        manifest.update(
            thetas={a.value: cfg.thetas[a] for a in cfg.lattice.ordering},
            ordering=[a.value for a in cfg.lattice.ordering],
            initial=args.initial,
            initial_spin=_spinor_json(cfg.initial_spin),
            initial_position=list(cfg.initial_position),
        )
        if cfg.lattice.kind is LatticeKind.KAGOME:
            manifest["origin_type"] = cfg.lattice.origin_type.value
        if cfg.lattice.kind in (LatticeKind.TRIANGULAR, LatticeKind.KAGOME):
            manifest["convention"] = cfg.lattice.convention.value
    status = EXIT_OK
    if args.oracle_check:
        check = _oracle_check(cfg, args.steps, d)
        manifest["oracle_check"] = check
        if check.get("passed") is False:
            print(f"oracle mismatch: max abs diff {check['max_abs_diff']:.3e}", file=sys.stderr)
            status = EXIT_INVARIANT
    write_distribution(d, coord_names, args.out, manifest, args.format)
    print(f"wrote {len(d)} sites to {args.out} (total probability {d.total():.15f})")
    return status


def cmd_compare(args: argparse.Namespace) -> int:
    names_a, a = read_distribution(args.a)
    names_b, b = read_distribution(args.b)
    if names_a != names_b:
        print(f"column mismatch: {names_a} vs {names_b}", file=sys.stderr)
        return EXIT_FAIL
    diff = max_abs_diff(a, b)
    same = diff < args.tol
    print(json.dumps({"max_abs_diff": diff, "tolerance": args.tol, "match": same}, sort_keys=True))
    return EXIT_OK if same else EXIT_FAIL


def cmd_verify(args: argparse.Namespace) -> int:
    names = list(args.checks)
    if args.oracle_check:
        names += SUITES["oracle"]
    if args.hamiltonian_check:
        names += SUITES["hamiltonian"]
    try:
        report = run_checks(names or None, degenerate_tolerance=args.degenerate_tolerance)
    except UnknownCheckError as exc:
        print(exc.args[0], file=sys.stderr)
        return EXIT_USAGE
    text = json.dumps(report, indent=2, sort_keys=True, default=float)
    if args.out:
        Path(args.out).write_text(text + "\n", encoding="utf-8")
    print(text)
    for name in report["failed"]:
        print(f"check failed: {name}", file=sys.stderr)
    return EXIT_OK if report["passed"] else EXIT_FAIL


def cmd_commutator(args: argparse.Namespace) -> int:
    theta = parse_thetas(args.theta)
    rep = triangular_commutator_report(theta, args.grid, args.degenerate_tolerance)
    print(json.dumps(rep.to_dict(), indent=2, sort_keys=True))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="walk", description="Two-state Pauli-axis quantum walks.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="evolve a walk and write its probability distribution")
    run.add_argument("--lattice", choices=LATTICES, default="square")
    run.add_argument("--steps", type=int, required=True)
    run.add_argument("--theta", action="append", metavar="[AXIS=]ANGLE",
                     help="coin angle in radians, pi allowed; repeat as axis=value for per-axis angles")
    run.add_argument("--initial", default="plus-i", help="down, up, plus-i or delta-eta:<delta>:<eta>")
    run.add_argument("--origin-type", choices=["o", "p", "q"], help="kagome sublattice of the start site")
    run.add_argument("--ordering", help="comma-separated sub-step axes, e.g. z,x")
    run.add_argument("--convention", choices=["literal", "planar"], default="literal",
                     help="triangular/kagome displacement table")
    run.add_argument("--position", help="comma-separated start site (default origin)")
    run.add_argument("--out", required=True)
    run.add_argument("--format", choices=["csv", "json"], default="csv")
    run.add_argument("--oracle-check", action="store_true",
                     help="cross-check the first steps against an independent oracle")
    run.set_defaults(func=cmd_run)

    cmp_ = sub.add_parser("compare", help="max abs difference between two distribution files")
    cmp_.add_argument("a")
    cmp_.add_argument("b")
    cmp_.add_argument("--tol", type=float, default=1e-10)
    cmp_.set_defaults(func=cmd_compare)

    ver = sub.add_parser("verify", help="run numerical checks and print a JSON report")
    ver.add_argument("checks", nargs="*", metavar="CHECK")
    ver.add_argument("--oracle-check", action="store_true", help="add the oracle checks")
    ver.add_argument("--hamiltonian-check", action="store_true", help="add the momentum-space checks")
    ver.add_argument("--degenerate-tolerance", type=float, default=DEGENERACY_TOL)
    ver.add_argument("--out", help="also write the report here")
    ver.set_defaults(func=cmd_verify)

    com = sub.add_parser("commutator", help="triangular commutator report on a momentum grid")
    com.add_argument("--theta", action="append", metavar="[AXIS=]ANGLE")
    com.add_argument("--grid", type=int, default=5)
    com.add_argument("--degenerate-tolerance", type=float, default=DEGENERACY_TOL)
    com.set_defaults(func=cmd_commutator)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NormalizationError as exc:
        print(f"invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (UsageError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
