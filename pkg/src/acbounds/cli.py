"""Command-line front end.

Subcommands
-----------
``bound``      evaluate an entropy bound for a matrix of anti-commutators
``ellipse``    emit the two-observable feasible boundary as CSV (+ figure)
``compare``    tabulate q_mu / q_ac / q_opt over an overlap grid (+ figure)
``certify``    run the CHSH certification pipeline and report bounds
``soundness``  randomised soundness sweep of the bounds
``construct``  build an explicit realisation for a feasible (g, T) pair

Exit codes: 0 success, 1 usage error, 2 malformed input, 3 infeasible
request, 4 soundness violation.  All numbers are serialised with 12
significant digits; runs with identical flags and seed produce identical
bytes.  Matrices of complex numbers are serialised as ``{"re": .., "im": ..}``
pairs.  The only environment variable honoured is ``ACBOUNDS_OUTPUT_DIR``,
which redirects relative output paths.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys

import numpy as np

from . import __version__
from .bounds import UncertaintyBound, bound, parse_bound_order
from .certify import CertificationReport, certify_pipeline
from .ellipsoid import InfeasibleError, construct_realization, ellipse_boundary
from .entropy import SHANNON, RenyiOrder
from .oracle import SoundnessReport, compare_curve, verify_soundness

DEFAULT_SEED = 42

_SOUNDNESS_ORDERS = (
    SHANNON,
    RenyiOrder.finite(1.2),
    RenyiOrder.finite(1.5),
    RenyiOrder.finite(2.0),
    RenyiOrder.finite(3.0),
    RenyiOrder.min_entropy(),
)


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse that reports usage problems instead of calling sys.exit(2)."""

    def error(self, message: str):  # noqa: D401 - argparse hook
        raise _UsageError(message)


def _fmt(x: float) -> str:
    return format(float(x), ".12g")


def _round12(obj):
    """Recursively cap floats at 12 significant digits for serialisation."""
    if isinstance(obj, float):
        return float(_fmt(obj))
    if isinstance(obj, dict):
        return {k: _round12(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round12(v) for v in obj]
    return obj


def _alpha_arg(text: str) -> RenyiOrder:
    try:
        return parse_bound_order(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _resolve_out(path: str) -> str:
    base = os.environ.get("ACBOUNDS_OUTPUT_DIR")
    if base and not os.path.isabs(path):
        os.makedirs(base, exist_ok=True)
        return os.path.join(base, path)
    return path


def _emit_json(payload: dict, out: str | None) -> None:
    text = json.dumps(_round12(payload), indent=2) + "\n"
    if out is None:
        sys.stdout.write(text)
    else:
        with open(_resolve_out(out), "w", encoding="utf-8") as fh:
            fh.write(text)


def _write_csv(path: str, header: list[str], rows) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])


def _load_json(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise ValueError(f"{path}: expected a JSON object")
    return data


def _load_matrix(path: str) -> np.ndarray:
    """Read an anti-commutation matrix file: {"m": M, "entries": [[...]]}."""
    data = _load_json(path)
    if "m" not in data or "entries" not in data:
        raise ValueError(f'{path}: expected keys "m" and "entries"')
    m = data["m"]
    entries = np.asarray(data["entries"], dtype=float)
    if not isinstance(m, int) or entries.shape != (m, m):
        raise ValueError(f'{path}: "entries" must be an {m} x {m} row-major table')
    if np.max(np.abs(entries - entries.T)) > 1e-12:
        raise ValueError(f"{path}: matrix is not symmetric to 1e-12")
    return (entries + entries.T) / 2.0


def _load_vector(path: str) -> np.ndarray:
    data = _load_json(path)
    if "g" not in data:
        raise ValueError(f'{path}: expected key "g"')
    g = np.asarray(data["g"], dtype=float)
    if g.ndim != 1 or g.size < 1:
        raise ValueError(f'{path}: "g" must be a non-empty vector')
    return g


def _complex_payload(a: np.ndarray) -> dict:
    a = np.asarray(a, dtype=complex)
    return {"re": a.real.tolist(), "im": a.imag.tolist()}


def _bound_payload(b: UncertaintyBound) -> dict:
    return {
        "order": b.order.label(),
        "value_bits": b.value_bits,
        "m": b.m,
        "r": b.r,
        "method": b.method,
        "assignment": b.assignment.t.tolist(),
    }


def _figure_path(csv_path: str) -> str:
    stem, _ = os.path.splitext(csv_path)
    return stem + ".png"


# ---------------------------------------------------------------- commands


def _cmd_bound(args) -> int:
    t = _load_matrix(args.t)
    b = bound(args.alpha, t)
    payload = _bound_payload(b)
    payload["projective"] = bool(np.max(np.abs(np.diag(t) - 1.0)) <= 1e-12)
    _emit_json(payload, args.out)
    return 0


def _cmd_ellipse(args) -> int:
    pts = ellipse_boundary(args.epsilon, args.points)
    out = _resolve_out(args.out)
    _write_csv(out, ["g1", "g2"], pts)
    if not args.no_plot:
        from . import figures

        figures.render_ellipse(pts, args.epsilon, _figure_path(out))
    return 0


def _cmd_compare(args) -> int:
    grid = np.linspace(0.5, 1.0, args.grid)
    rows = compare_curve(grid, seed=args.seed, state_samples=args.samples)
    out = _resolve_out(args.out)
    _write_csv(out, ["c", "q_mu", "q_ac", "q_opt"], rows)
    if not args.no_plot:
        from . import figures

        figures.render_compare(rows, _figure_path(out))
    return 0


def _certify_payload(report: CertificationReport) -> dict:
    return {
        "m": report.m,
        "seed": report.seed,
        "exact": report.exact,
        "rounds_per_setting": report.rounds_per_setting,
        "total_rounds": report.total_rounds,
        "pairs": [
            {
                "j": s.j,
                "k": s.k,
                "beta_hat": s.beta_hat,
                "std_error": s.std_error,
                "rounds_used": s.rounds_used,
                "epsilon_ceiling": report.c_pairs[(s.j, s.k)],
            }
            for s in report.stats
        ],
        "t_prime": report.t_prime.tolist(),
        "r_prime": report.r_prime,
        "bounds": [_bound_payload(b) for b in report.bounds],
        "subclassical_pairs": [list(p) for p in report.subclassical_pairs],
        "assumptions": list(report.assumptions),
    }


def _cmd_certify(args) -> int:
    rounds = 0 if args.exact else args.rounds
    orders = args.alpha if args.alpha else [SHANNON]
    report = certify_pipeline(
        args.m, orders, rounds_per_setting=rounds, seed=args.seed
    )
    _emit_json(_certify_payload(report), args.out)
    return 0


def _soundness_payload(report: SoundnessReport) -> dict:
    return {
        "trials": report.trials,
        "max_m": report.max_m,
        "orders": [o.label() for o in report.orders],
        "seed": report.seed,
        "checks": report.checks,
        "violation_count": report.violation_count,
        "min_slack": report.min_slack,
        "max_slack": report.max_slack,
        "violations": list(report.violations),
    }


def _cmd_soundness(args) -> int:
    report = verify_soundness(
        args.trials, args.max_m, _SOUNDNESS_ORDERS, seed=args.seed
    )
    _emit_json(_soundness_payload(report), args.out)
    return 4 if report.violation_count else 0


def _cmd_construct(args) -> int:
    g = _load_vector(args.g)
    t = _load_matrix(args.t)
    if g.size != t.shape[0]:
        raise ValueError("expectation vector and matrix sizes disagree")
    real = construct_realization(g, t)
    payload = {
        "m": int(g.size),
        "rank": real.rank,
        "dim": real.dim,
        "bloch": real.bloch.tolist(),
        "state": _complex_payload(real.state.rho),
        "observables": [_complex_payload(a) for a in real.observables],
    }
    _emit_json(payload, args.out)
    return 0


def _build_parser() -> _Parser:
    parser = _Parser(prog="acbounds", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"acbounds {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="command")

    p = sub.add_parser("bound", help="entropy bound from an anti-commutation matrix")
    p.add_argument("--t", required=True, help='JSON file {"m": M, "entries": [[..]]}')
    p.add_argument("--alpha", required=True, type=_alpha_arg, help='"shannon", "inf" or a decimal > 1')
    p.add_argument("--out", default=None, help="write JSON here instead of stdout")
    p.set_defaults(func=_cmd_bound)

    p = sub.add_parser("ellipse", help="two-observable feasible boundary as CSV")
    p.add_argument("--epsilon", required=True, type=float, help="effective anti-commutator in [-1, 1]")
    p.add_argument("--points", type=int, default=256, help="boundary samples (default 256)")
    p.add_argument("--out", required=True, help="CSV output path (figure lands next to it)")
    p.add_argument("--no-plot", action="store_true", help="skip the PNG figure")
    p.set_defaults(func=_cmd_ellipse)

    p = sub.add_parser("compare", help="bound comparison table over the overlap range")
    p.add_argument("--grid", type=int, default=50, help="grid size on [0.5, 1] (default 50)")
    p.add_argument("--samples", type=int, default=100_000, help="state samples per point")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--out", required=True, help="CSV output path (figure lands next to it)")
    p.add_argument("--no-plot", action="store_true", help="skip the PNG figure")
    p.set_defaults(func=_cmd_compare)

    p = sub.add_parser("certify", help="CHSH certification pipeline")
    p.add_argument("--m", required=True, type=int, help="number of observables (>= 2)")
    p.add_argument("--rounds", type=int, default=10_000, help="rounds per correlator")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument(
        "--alpha", action="append", type=_alpha_arg, default=None,
        help="entropy order (repeatable; default shannon)",
    )
    p.add_argument("--exact", action="store_true", help="use exact expectations (no sampling)")
    p.add_argument("--out", default=None, help="write JSON here instead of stdout")
    p.set_defaults(func=_cmd_certify)

    p = sub.add_parser("soundness", help="randomised soundness sweep")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--max-m", type=int, default=5, dest="max_m")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--out", default=None, help="write JSON here instead of stdout")
    p.set_defaults(func=_cmd_soundness)

    p = sub.add_parser("construct", help="explicit realisation of a feasible (g, T)")
    p.add_argument("--g", required=True, help='JSON file {"g": [..]}')
    p.add_argument("--t", required=True, help='JSON file {"m": M, "entries": [[..]]}')
    p.add_argument("--out", default=None, help="write JSON here instead of stdout")
    p.set_defaults(func=_cmd_construct)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "command", None):
            parser.error("a command is required")
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    try:
        return args.func(args)
    except InfeasibleError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry_point() -> None:  # console-script hook
    sys.exit(main())
