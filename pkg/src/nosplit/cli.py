"""Command-line interface: ``nosplit <command> [flags]``.

Results go to stdout as JSON (default) or CSV, diagnostics to stderr.
Exit codes: 0 success, 1 usage error, 2 gate-file parse error,
3 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import statistics
import sys
from typing import Any, Sequence

import numpy as np

from . import __version__, combiner, qmat, searcher, splitcheck
from .gatelang import ParseError, compile_program, load_program
from .states import BlochAngles, bloch_state, trace_distance

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_NUMERIC = 0, 1, 2, 3


class UsageError(Exception):
    pass


class NumericalFailure(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# ---------------------------------------------------------------- output

def _fmt_float(x: float) -> str:
    if not math.isfinite(x):
        raise NumericalFailure(f"non-finite value {x!r} in output")
    text = format(x, ".17g")
    if not any(ch in text for ch in ".en"):
        text += ".0"
    return text


def _plain(obj: Any) -> Any:
    """Convert numpy scalars/arrays, complex numbers and tuples to JSON-like values."""
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _plain(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": float(obj.real), "im": float(obj.imag)}
    return obj


def dump_json(obj: Any) -> str:
    """JSON with every float written to 17 significant digits."""
    if isinstance(obj, dict):
        items = ", ".join(f"{json.dumps(k)}: {dump_json(v)}" for k, v in obj.items())
        return "{" + items + "}"
    if isinstance(obj, list):
        return "[" + ", ".join(dump_json(v) for v in obj) + "]"
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, float):
        return _fmt_float(obj)
    return json.dumps(obj)


def _flatten(obj: Any, prefix: str = "") -> dict:
    if isinstance(obj, dict):
        out = {}
        for k, v in obj.items():
            out.update(_flatten(v, f"{prefix}.{k}" if prefix else k))
        return out
    if isinstance(obj, list):
        out = {}
        for i, v in enumerate(obj):
            out.update(_flatten(v, f"{prefix}.{i}" if prefix else str(i)))
        return out
    return {prefix: obj}


def dump_csv(document: dict) -> str:
    """One header row and one value row; nested keys joined with dots."""
    flat = _flatten({"command": document["command"], "version": document["version"],
                     "params": document["params"], "result": document["result"]})
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(list(flat))
    row = []
    for v in flat.values():
        if isinstance(v, bool) or v is None:
            row.append("" if v is None else str(v).lower())
        elif isinstance(v, float):
            row.append(_fmt_float(v))
        else:
            row.append(v)
    writer.writerow(row)
    return buf.getvalue()


# -------------------------------------------------------------- commands

def _grid(args) -> splitcheck.AngleGrid:
    return splitcheck.AngleGrid.uniform(args.theta_steps, args.phi_steps)


def _ancilla(args) -> np.ndarray:
    try:
        return bloch_state(BlochAngles(args.w_theta, args.w_phi))
    except ValueError as exc:
        raise UsageError(f"ancilla angles: {exc}") from None


def _circuit(args) -> np.ndarray:
    if args.circuit is None:
        raise UsageError("--circuit is required")
    try:
        prog = load_program(args.circuit)
    except OSError as exc:
        raise UsageError(f"cannot read circuit file: {exc}") from None
    return compile_program(prog)


def cmd_cnot_demo(args, warn) -> tuple[dict, dict]:
    if args.theta is not None or args.phi is not None:
        if args.grid_flags_given:
            warn("--theta/--phi given: grid flags ignored")
        points = [BlochAngles(args.theta if args.theta is not None else math.pi / 2,
                              args.phi if args.phi is not None else 0.0)]
    else:
        grid = _grid(args)
        points = [BlochAngles(t, p) for t in grid.thetas for p in grid.phis]
    rows = []
    max_dev = 0.0
    by_theta: dict = {}
    for a in points:
        demo = splitcheck.cnot_demo(a)
        by_theta.setdefault(a.theta, []).append(demo.rho_a)
        expected = np.diag([math.cos(a.theta / 2) ** 2, math.sin(a.theta / 2) ** 2])
        dev = max(np.abs(demo.rho_a - expected).max(), np.abs(demo.rho_b - expected).max())
        max_dev = max(max_dev, float(dev))
        rows.append({"theta": a.theta, "phi": a.phi,
                     "rhoA_00": demo.rho_a[0, 0].real, "rhoA_11": demo.rho_a[1, 1].real,
                     "rhoA_01_abs": abs(demo.rho_a[0, 1]),
                     "rhoB_00": demo.rho_b[0, 0].real, "rhoB_11": demo.rho_b[1, 1].real,
                     "rhoB_01_abs": abs(demo.rho_b[0, 1])})
    # phi-dependence of rho_A at fixed theta
    phi_dep = 0.0
    for mats in by_theta.values():
        for i in range(len(mats)):
            for j in range(i + 1, len(mats)):
                phi_dep = max(phi_dep, trace_distance(mats[i], mats[j]))
    params = {"points": len(points)}
    result = {"max_phi_dependence_rhoA": phi_dep, "max_deviation_from_diag": max_dev,
              "phi_independent": phi_dep <= args.tol, "table": rows}
    return params, result


def cmd_residual(args, warn) -> tuple[dict, dict]:
    u = _circuit(args)
    w = _ancilla(args)
    grid = _grid(args)
    sv = splitcheck.splitting_residual(u, w, grid)
    ent = splitcheck.output_entanglement(u, w, grid)
    params = {"circuit": args.circuit, "w_theta": args.w_theta, "w_phi": args.w_phi,
              "theta_steps": args.theta_steps, "phi_steps": args.phi_steps, "tol": args.tol}
    result = {"vA": sv.vA, "vB": sv.vB, "total": sv.total, "output_entanglement": ent,
              "splits": sv.total < args.tol}
    return params, result


def cmd_constraints(args, warn) -> tuple[dict, dict]:
    u = _circuit(args)
    w = _ancilla(args)
    pc = splitcheck.proof_coefficients(u, w)
    res = splitcheck.constraint_residuals(pc)
    params = {"circuit": args.circuit, "w_theta": args.w_theta, "w_phi": args.w_phi, "tol": args.tol}
    result = {"coefficients": {"r0": pc.r0, "r1": pc.r1, "alpha": pc.alpha, "c": pc.c, "d": pc.d,
                               "degenerate": pc.degenerate},
              "residuals": list(res), "max_residual": res.max,
              "all_satisfied": res.max < args.tol}
    return params, result


def _summary(values: list) -> dict:
    return {"min": min(values), "median": statistics.median(values), "max": max(values)}


def cmd_sweep(args, warn) -> tuple[dict, dict]:
    rng = np.random.default_rng(args.seed)
    grid = _grid(args)
    totals, maxres = [], []
    for _ in range(args.samples):
        u = searcher.haar_unitary(rng)
        w = searcher.random_qubit(rng)
        totals.append(splitcheck.splitting_residual(u, w, grid).total)
        maxres.append(splitcheck.constraint_residuals(splitcheck.proof_coefficients(u, w)).max)
    params = {"samples": args.samples, "seed": args.seed, "theta_steps": args.theta_steps,
              "phi_steps": args.phi_steps, "tol": args.tol}
    result = {"total_residual": _summary(totals), "max_constraint_residual": _summary(maxres),
              "floor_holds": min(totals) > args.tol and min(maxres) > args.tol}
    return params, result


def cmd_search(args, warn) -> tuple[dict, dict]:
    opts = searcher.SearchOptions(restarts=args.restarts, max_evals_per_restart=args.max_evals,
                                  seed=args.seed, grid=_grid(args))
    res = searcher.search_splitter(opts, progress=lambda r: warn(
        f"restart {r.restart}: total={r.total:.6g}" + ("" if r.converged else " (failed)")))
    params = {"restarts": args.restarts, "max_evals": args.max_evals, "seed": args.seed,
              "theta_steps": args.theta_steps, "phi_steps": args.phi_steps, "tol": args.tol}
    result = {"best_total": res.best_total, "best_vA": res.best_vA, "best_vB": res.best_vB,
              "best_params": {"u_params": list(res.best_params.u_params),
                              "w_params": list(res.best_params.w_params)},
              "restarts": res.restarts, "evals": res.evals, "seed": res.seed,
              "floor_holds": res.best_total > args.tol,
              "history": [{"restart": h.restart, "total": h.total if h.converged else None,
                           "converged": h.converged} for h in res.history]}
    return params, result


def cmd_combine(args, warn) -> tuple[dict, dict]:
    if args.theta is None or args.phi is None:
        raise UsageError("combine requires --theta and --phi")
    try:
        angles = BlochAngles(args.theta, args.phi)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    even, odd = combiner.parity_branches(combiner.combiner_input(angles))
    branches = {}
    for b in (even, odd):
        entry = {"probability": b.probability}
        if b.post_state is not None:
            final = combiner.finish_branch(b).final
            entry["final"] = list(final)
            entry["fidelity"] = abs(np.vdot(combiner.expected_final(angles, b.label), final)) ** 2
        branches[b.label] = entry
    stats = combiner.combiner_statistics(angles, args.shots, np.random.default_rng(args.seed))
    params = {"theta": args.theta, "phi": args.phi, "shots": args.shots, "seed": args.seed}
    result = {"analytic": branches,
              "monte_carlo": {"n_even": stats.n_even, "n_odd": stats.n_odd,
                              "p_even": stats.n_even / args.shots,
                              "fidelity_even": stats.empirical_fidelity_even,
                              "fidelity_odd": stats.empirical_fidelity_odd}}
    return params, result


COMMANDS = {
    "cnot-demo": (cmd_cnot_demo, "tabulate the CNOT example marginals over the grid"),
    "residual": (cmd_residual, "splitting residual of a gate file"),
    "constraints": (cmd_constraints, "proof coefficients and the seven constraint residuals"),
    "sweep": (cmd_sweep, "Haar-random sweep of residuals"),
    "search": (cmd_search, "multi-start Nelder-Mead search for a splitter"),
    "combine": (cmd_combine, "simulate the combining protocol"),
}


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _positive_float(text: str) -> float:
    value = float(text)
    if not value > 0 or not math.isfinite(value):
        raise argparse.ArgumentTypeError("must be a positive finite number")
    return value


def _seed(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=_seed, default=0)
    common.add_argument("--theta-steps", type=_positive_int, default=None)
    common.add_argument("--phi-steps", type=_positive_int, default=None)
    common.add_argument("--restarts", type=_positive_int, default=100)
    common.add_argument("--max-evals", type=_positive_int, default=20000)
    common.add_argument("--samples", type=_positive_int, default=1000)
    common.add_argument("--shots", type=_positive_int, default=100000)
    common.add_argument("--tol", type=_positive_float, default=1e-6)
    common.add_argument("--circuit", default=None, help="gate file")
    common.add_argument("--theta", type=float, default=None)
    common.add_argument("--phi", type=float, default=None)
    common.add_argument("--w-theta", type=float, default=0.0, help="ancilla polar angle")
    common.add_argument("--w-phi", type=float, default=0.0, help="ancilla azimuth")
    common.add_argument("--output", choices=("json", "csv"), default="json")

    parser = _Parser(prog="nosplit", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"nosplit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, (_, help_text) in COMMANDS.items():
        sub.add_parser(name, parents=[common], help=help_text)
    return parser


def main(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr

    def warn(msg):
        print(f"nosplit: {msg}", file=stderr)

    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        warn(f"error: {exc}")
        return EXIT_USAGE
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)

    args.grid_flags_given = args.theta_steps is not None or args.phi_steps is not None
    args.theta_steps = args.theta_steps or 13
    args.phi_steps = args.phi_steps or 16

    handler = COMMANDS[args.command][0]
    try:
        with np.errstate(invalid="raise", over="raise", divide="raise"):
            params, result = handler(args, warn)
        params.setdefault("seed", args.seed)
        document = _plain({"command": args.command, "params": params, "result": result,
                           "version": __version__})
        text = dump_json(document) + "\n" if args.output == "json" else dump_csv(document)
    except UsageError as exc:
        warn(f"error: {exc}")
        return EXIT_USAGE
    except ParseError as exc:
        warn(f"parse error at line {exc.line}:{exc.column} ({exc.source_name}): {exc.message}")
        return EXIT_PARSE
    except (NumericalFailure, FloatingPointError, qmat.NonFinite, searcher.NonFiniteObjective,
            splitcheck.NotUnitary, combiner.EntangledResidue) as exc:
        warn(f"numerical failure: {exc}")
        return EXIT_NUMERIC
    stdout.write(text)
    return EXIT_OK


def run_cli(argv: Sequence[str]) -> int:
    return main(argv)


if __name__ == "__main__":
    sys.exit(main())
