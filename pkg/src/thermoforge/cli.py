"""Command-line front end.

Exit codes: 0 feasible (or pass), 1 infeasible (or fail), 2 input error,
3 undecided. On exit 2 nothing is written to stdout; the offending field
path goes to stderr.
"""
from __future__ import annotations

import argparse
import io
import os
import sys

from .asymmetry import asymmetry_necessary, asymmetry_table
from .divergences import alpha_grid
from .engine import correlation_engine, engine_report
from .instances import InstanceError, csv_num, dumps, load_instance
from .lp import UNDECIDED
from .majorization import d_majorize_lp, thermo_lorenz_curve
from .spectra import BlockSpectrum, DenseState, semi_gibbs
from .transforms import (
    FEAS_TOL, SplitRule, Transformation, free_entropy_distance, free_entropy_profile, signed_grid, transform_report,
)
from .veribench import SUITES, TrialConfig, run_suite

EXIT_OK, EXIT_NO, EXIT_INPUT, EXIT_UNDECIDED = 0, 1, 2, 3


class InputError(Exception):
    """Bad command-line input; ``path`` names the field or flag."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")


def _default_tol() -> float:
    env = os.environ.get("THERMOFORGE_TOL")
    if env is None:
        return FEAS_TOL
    try:
        v = float(env)
    except ValueError:
        raise InputError("THERMOFORGE_TOL", f"not a number: {env!r}") from None
    if not v >= 0:
        raise InputError("THERMOFORGE_TOL", "must be non-negative")
    return v


def _read(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(path, exc.strerror or str(exc)) from None
    try:
        return load_instance(text)
    except InstanceError as exc:
        raise InputError(f"{path}: {exc.path}", exc.message) from None


def _block(inst, which: str) -> BlockSpectrum:
    try:
        return inst.block(which)
    except ValueError as exc:
        raise InputError(f"$.{which}", str(exc)) from None


def _grid(args):
    if args.alpha_grid is not None and args.alpha_grid < 2:
        raise InputError("--alpha-grid", "needs at least 2 points")
    return alpha_grid() if args.alpha_grid is None else alpha_grid(args.alpha_grid)


def _csv(header, rows) -> str:
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for r in rows:
        buf.write(",".join(v if isinstance(v, str) else csv_num(v) for v in r) + "\n")
    return buf.getvalue()


def _flag(v) -> str:
    return "true" if v else "false"


# ------------------------------------------------------------- subcommands


def cmd_check(args):
    inst = _read(args.file)
    if inst.final is None:
        raise InputError("$.final", "check needs a final state")
    tol = _default_tol() if args.tol is None else args.tol
    t = Transformation(_block(inst, "state"), inst.spec, _block(inst, "final"), inst.spec_final)
    grid = _grid(args)
    rep = transform_report(t, catalytic=args.catalytic, signed=args.signed_alpha, grid=grid, tol=tol)
    code = EXIT_OK if rep.feasible else EXIT_NO
    out = rep.to_dict()
    if args.cross_check:
        gi, gf = semi_gibbs(t.spec_initial), semi_gibbs(t.spec_final)
        try:
            verdict, witness = d_majorize_lp(t.initial.p, gi.q, t.final.p, gf.q, tol=tol)
        except ValueError as exc:
            verdict, witness = UNDECIDED, None
            out["cross_check"] = {"lp": UNDECIDED, "reason": str(exc)}
        else:
            out["cross_check"] = {"lp": verdict if verdict == UNDECIDED else bool(verdict),
                                  "agrees_non_catalytic": None if verdict == UNDECIDED else bool(verdict) == rep.feasible_slto}
        if verdict == UNDECIDED:
            code = EXIT_UNDECIDED
    if args.format == "csv":
        d = free_entropy_distance(t, grid)
        g = d.scan.grid
        if args.signed_alpha:
            g = signed_grid(g)
            vals = free_entropy_profile(t)[0](g)
        else:
            vals = d.scan.values
        return code, _csv(["alpha", "delta_s"], zip(g, vals))
    return code, dumps(out) + "\n"


def cmd_engine(args):
    inst = _read(args.file)
    spec = inst.spec
    if not spec.beta1 < spec.beta2:
        raise InputError("$.beta", "the engine needs beta1 < beta2 (bath 1 hotter)")
    try:
        split = SplitRule.parse(args.split) if args.split else None
    except ValueError as exc:
        raise InputError("--split", str(exc)) from None
    state = _block(inst, "state")
    tol = _default_tol() if args.tol is None else args.tol
    grid = _grid(args)
    try:
        if args.correlation:
            rep = correlation_engine(state, spec, split, args.catalytic, grid, tol)
        else:
            rep = engine_report(state, spec, split, args.catalytic, grid, tol)
    except ValueError as exc:
        raise InputError("$.state", str(exc)) from None
    code = EXIT_OK if rep.spontaneous else EXIT_NO
    if args.table:
        if rep.alpha_works is None:
            raise InputError("--table", "alpha-works need a product input state")
        return code, _csv(["alpha", "w1", "w2", "w_ext", "eta1", "eta2"], rep.alpha_works.rows())
    return code, dumps(rep) + "\n"


def cmd_curve(args):
    inst = _read(args.file)
    which = "final" if args.final else "state"
    if args.final and inst.final is None:
        raise InputError("$.final", "no final state in the instance")
    spec = inst.spec if which == "state" else inst.spec_final
    c = thermo_lorenz_curve(_block(inst, which), spec).simplified()
    return EXIT_OK, _csv(["x", "y"], zip(c.x, c.y))


def cmd_asym(args):
    inst = _read(args.file)
    rho = inst.state if isinstance(inst.state, DenseState) else DenseState.diagonal(inst.state.p)
    grid = _grid(args)
    tab = asymmetry_table(rho, inst.spec, grid)
    if args.format == "csv":
        rows = ((a, v, _flag(f)) for a, v, f in zip(tab.alpha, tab.values, tab.informational))
        return EXIT_OK, _csv(["alpha", "asymmetry", "informational"], rows)
    out = {"alpha": tab.alpha, "asymmetry": tab.values, "informational": tab.informational}
    code = EXIT_OK
    if inst.final is not None:
        sigma = inst.final if isinstance(inst.final, DenseState) else DenseState.diagonal(inst.final.p)
        chk = asymmetry_necessary(rho, inst.spec, sigma, inst.spec_final, grid)
        out["necessary_check"] = {"holds": chk.holds, "witness_alpha": chk.witness_alpha, "necessary_only": True}
        code = EXIT_OK if chk.holds else EXIT_NO
    return code, dumps(out) + "\n"


def cmd_bench(args):
    names = list(SUITES) if args.suite == "all" else [args.suite]
    for n in names:
        if n not in SUITES:
            raise InputError("--suite", f"unknown suite {n!r}; choose from {', '.join(SUITES)} or all")
    if args.trials < 1:
        raise InputError("--trials", "must be positive")
    cfg = TrialConfig(seed=args.seed, trials=args.trials)
    reports = [run_suite(n, cfg) for n in names]
    code = EXIT_OK
    for r in reports:
        if r.failed:
            code = EXIT_NO
        elif not r.ok and code == EXIT_OK:
            code = EXIT_UNDECIDED
    body = reports[0].to_dict() if len(reports) == 1 else {"suites": [r.to_dict() for r in reports]}
    return code, dumps(body) + "\n"


# ------------------------------------------------------------------ parser


def _nonneg_float(text):
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not v >= 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="thermoforge", description="Second-law checks for two-bath thermal machines.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, catalytic=True):
        sp.add_argument("file", help="instance JSON file")
        sp.add_argument("--alpha-grid", type=int, default=None, metavar="N", help="log-spaced alpha points")
        sp.add_argument("--tol", type=_nonneg_float, default=None, help="feasibility slack (env THERMOFORGE_TOL)")
        if catalytic:
            sp.add_argument("--catalytic", dest="catalytic", action="store_true", default=True)
            sp.add_argument("--no-catalytic", dest="catalytic", action="store_false")

    c = sub.add_parser("check", help="decide a state transformation")
    common(c)
    c.add_argument("--signed-alpha", action="store_true", help="also scan negative alpha")
    c.add_argument("--format", choices=("json", "csv"), default="json")
    c.add_argument("--cross-check", action="store_true", help="add the LP stochastic-map verdict")
    c.set_defaults(func=cmd_check)

    e = sub.add_parser("engine", help="analyse the one-step engine cycle")
    common(e)
    e.add_argument("--split", default=None, help="w1=<val> | bath1 | bath2 | alpha1")
    e.add_argument("--table", action="store_true", help="CSV of per-alpha works")
    e.add_argument("--correlation", action="store_true", help="consume correlations (needs H1 = H2)")
    e.set_defaults(func=cmd_engine)

    cv = sub.add_parser("curve", help="thermo-majorization curve as CSV")
    cv.add_argument("file")
    cv.add_argument("--final", action="store_true", help="curve of the final state")
    cv.set_defaults(func=cmd_curve)

    a = sub.add_parser("asym", help="asymmetry table")
    common(a, catalytic=False)
    a.add_argument("--format", choices=("csv", "json"), default="csv")
    a.set_defaults(func=cmd_asym)

    b = sub.add_parser("bench", help="randomized verification suites")
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--trials", type=int, default=100)
    b.add_argument("--suite", default="thermo_vs_lp", help="suite name or 'all'")
    b.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        code, text = args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
