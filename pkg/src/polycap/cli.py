"""Command-line interface.

Subcommands ``cap``, ``sweep``, ``mobius``, ``bounds`` and ``exact`` write CSV
(with a header row) or JSON to stdout; diagnostics go to stderr.

Exit codes: 0 success, 2 invalid input (bad flags, malformed or invalid
domain, parameters out of range), 3 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import re
import sys
from contextlib import nullcontext
from dataclasses import replace

import numpy as np

from . import analytic
from .bie import SolverOptions
from .capacity import (
    CapacityRequest,
    compute_capacity,
    convergence_sweep,
    lens_family,
    mobius_invariance_report,
    parse_grid,
)
from .domainfile import load_domain
from .errors import GeometryDegenerate, PolycapError, SolverFailure, ValidationFailed

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_SOLVER = 3


class PolycapValueError(PolycapError, ValueError):
    """Unparseable flag value."""


_COMPLEX_RE = re.compile(r"^[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?$")


def fmt_real(x: float) -> str:
    """16 significant digits."""
    return f"{x:.16g}"


def fmt_complex(z: complex) -> str:
    z = complex(z)
    if z.imag == 0:
        return fmt_real(z.real)
    sign = "-" if z.imag < 0 else "+"
    return f"{fmt_real(z.real)}{sign}{fmt_real(abs(z.imag))}i"


def parse_complex(text: str) -> complex:
    """Parse ``"x+yi"`` (either part optional, ``i`` or ``j``) or ``"x,y"``."""
    s = text.strip().replace(" ", "")
    if not s:
        raise ValueError("empty complex number")
    if "," in s:
        parts = s.split(",")
        if len(parts) != 2 or not all(_COMPLEX_RE.match(p) for p in parts):
            raise ValueError(f"cannot parse point {text!r}; expected X,Y")
        return complex(float(parts[0]), float(parts[1]))
    s = s.replace("i", "j")
    if s.count("j") > 1 or ("j" in s and not s.endswith("j")):
        raise ValueError(f"cannot parse complex number {text!r}")
    try:
        return complex(s)
    except ValueError:
        raise ValueError(f"cannot parse complex number {text!r}") from None


def _positive_int(text: str) -> int:
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _complex_arg(text: str) -> complex:
    try:
        return parse_complex(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=_positive_int, default=None,
                        help="worker threads for BLAS and compiled kernels (default: POLYCAP_THREADS or all cores)")
    common.add_argument("--out", choices=("csv", "json"), default="csv")

    solver = argparse.ArgumentParser(add_help=False)
    solver.add_argument("--grading-p", type=int, default=3)
    solver.add_argument("--solver", choices=("auto", "dense", "gmres"), default="auto")
    solver.add_argument("--gmres-tol", type=float, default=1e-12)

    domain = argparse.ArgumentParser(add_help=False)
    domain.add_argument("--domain", required=True, help="JSON domain file or builtin:NAME")
    domain.add_argument("--alpha", type=_complex_arg, default=None, help="override alpha, as X,Y or x+yi")

    parser = argparse.ArgumentParser(prog="polycap", description="Conformal capacity of polycircular condensers.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cap", parents=[common, solver, domain], help="capacity of one condenser")
    p.add_argument("--n", type=_positive_int, required=True, help="nodes per boundary component")

    p = sub.add_parser("sweep", parents=[common, solver, domain], help="convergence sweep over n")
    p.add_argument("--n-list", required=True, help="comma separated, ascending")
    p.add_argument("--reference", type=float, default=None)

    p = sub.add_parser("mobius", parents=[common, solver, domain], help="Moebius invariance table")
    p.add_argument("--a-list", required=True, help='semicolon separated complex values, e.g. "0;0.1+0.3i"')
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--method", choices=("pushforward", "rebuild"), default="pushforward")

    p = sub.add_parser("bounds", parents=[common, solver], help="lens family with perimeter bounds")
    p.add_argument("--r", type=float, default=0.8)
    p.add_argument("--s-grid", default="0.05:0.8:0.05", help="start:stop:step (inclusive) or comma list")
    p.add_argument("--n", type=_positive_int, default=1024)

    p = sub.add_parser("exact", parents=[common], help="closed-form values")
    p.add_argument("--what", choices=("annulus", "disk", "segment", "grotzsch"), required=True)
    p.add_argument("--param", type=float, required=True)
    return parser


def _solver_kwargs(args) -> dict:
    return {
        "grading_p": args.grading_p,
        "solver": SolverOptions(method=args.solver, tol=args.gmres_tol),
    }


def _condenser(args):
    cond = load_domain(args.domain)
    if args.alpha is not None:
        cond = replace(cond, alpha=args.alpha)
    return cond


def _emit(args, header, rows, payload):
    if args.out == "json":
        json.dump(payload, sys.stdout, indent=2)
        sys.stdout.write("\n")
        return
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)


def cmd_cap(args) -> int:
    res = compute_capacity(CapacityRequest(_condenser(args), args.n, **_solver_kwargs(args)))
    d = res.diagnostics
    header = ["capacity", "n", "grading_p", "m", "a", "c", "h_dev", "solver", "gmres_iterations", "residual", "seconds"]
    row = [
        fmt_real(res.capacity), res.n, res.grading_p, len(res.a),
        ";".join(fmt_real(a) for a in res.a), fmt_real(res.c), f"{res.h_dev:.3e}", d["solver"],
        ";".join(str(i) for i in d["gmres_iterations"]), f"{d['residual']:.3e}", f"{res.seconds:.3f}",
    ]
    payload = {
        "capacity": res.capacity,
        "capacity_str": fmt_real(res.capacity),
        "n": res.n,
        "grading_p": res.grading_p,
        "a": [float(a) for a in res.a],
        "c": res.c,
        "h_dev": res.h_dev,
        "alpha": fmt_complex(res.alpha),
        "alpha_k": [fmt_complex(z) for z in res.alpha_k],
        "seconds": res.seconds,
        "diagnostics": d,
    }
    _emit(args, header, [row], payload)
    return EXIT_OK


def cmd_sweep(args) -> int:
    try:
        n_list = [int(x) for x in args.n_list.split(",") if x.strip()]
    except ValueError:
        raise PolycapValueError(f"--n-list: cannot parse {args.n_list!r}") from None
    table = convergence_sweep(_condenser(args), n_list, args.reference, **_solver_kwargs(args))
    rows = []
    for i, r in enumerate(table.rows):
        last = i == len(table.rows) - 1
        rows.append([
            r.n, fmt_real(r.capacity),
            "" if r.error is None else f"{r.error:.6e}",
            f"{table.slope:.4f}" if last and table.slope is not None else "",
        ])
    payload = {
        "reference": table.reference,
        "reference_is_computed": table.reference_is_computed,
        "slope": table.slope,
        "rows": [{"n": r.n, "capacity": r.capacity, "error": r.error} for r in table.rows],
    }
    _emit(args, ["n", "capacity", "error", "slope"], rows, payload)
    return EXIT_OK


def cmd_mobius(args) -> int:
    try:
        a_list = [parse_complex(a) for a in args.a_list.split(";") if a.strip()]
    except ValueError as exc:
        raise PolycapValueError(f"--a-list: {exc}") from None
    rows = mobius_invariance_report(_condenser(args), a_list, args.n, args.method, **_solver_kwargs(args))
    _emit(
        args,
        ["a", "capacity", "deviation"],
        [[fmt_complex(r.a), fmt_real(r.capacity), f"{r.deviation:.3e}"] for r in rows],
        {"n": args.n, "method": args.method,
         "rows": [{"a": fmt_complex(r.a), "capacity": r.capacity, "deviation": r.deviation} for r in rows]},
    )
    return EXIT_OK


def cmd_bounds(args) -> int:
    try:
        grid = parse_grid(args.s_grid)
    except ValueError as exc:
        raise PolycapValueError(f"--s-grid: {exc}") from None
    rows = lens_family(args.r, grid, args.n, **_solver_kwargs(args))
    _emit(
        args,
        ["s", "hyp_perimeter", "capacity", "lower", "upper"],
        [[fmt_real(r.s), fmt_real(r.hyp_perimeter), fmt_real(r.capacity), fmt_real(r.lower), fmt_real(r.upper)]
         for r in rows],
        {"r": args.r, "n": args.n, "rows": [vars(r) for r in rows]},
    )
    return EXIT_OK


def cmd_exact(args) -> int:
    fn = {
        "annulus": analytic.cap_annulus,
        "disk": analytic.cap_annulus,  # disk |z| <= q inside the unit disk
        "segment": analytic.cap_disk_segment,
        "grotzsch": analytic.mu_grotzsch,
    }[args.what]
    value = fn(args.param)
    if args.out == "json":
        _emit(args, None, None, {"what": args.what, "param": args.param, "value": value})
    else:
        sys.stdout.write(fmt_real(value) + "\n")
    return EXIT_OK


COMMANDS = {"cap": cmd_cap, "sweep": cmd_sweep, "mobius": cmd_mobius, "bounds": cmd_bounds, "exact": cmd_exact}


def _thread_limit(args):
    threads = args.threads
    if threads is None and os.environ.get("POLYCAP_THREADS"):
        try:
            threads = int(os.environ["POLYCAP_THREADS"])
        except ValueError:
            raise PolycapValueError(f"POLYCAP_THREADS: not an integer: {os.environ['POLYCAP_THREADS']!r}") from None
    if threads is None:
        return nullcontext()
    import numba
    from threadpoolctl import threadpool_limits

    numba.set_num_threads(max(1, min(threads, numba.config.NUMBA_NUM_THREADS)))
    return threadpool_limits(limits=threads)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse reports usage errors with status 2
        return int(exc.code or 0)
    np.seterr(all="ignore")
    try:
        with _thread_limit(args):
            return COMMANDS[args.command](args)
    except ValidationFailed as exc:
        print("polycap: invalid condenser:", file=sys.stderr)
        for v in exc.violations:
            print(f"  {v}", file=sys.stderr)
        return EXIT_INPUT
    except (SolverFailure, GeometryDegenerate) as exc:
        print(f"polycap: numerical failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except (PolycapError, ValueError) as exc:
        print(f"polycap: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    main_entry()
