"""Command-line entry point: ``tkz {run,solve,gen,rates}``.

Exit codes: 0 on success, 1 on runtime errors, 2 on bad flags.
"""

from __future__ import annotations

import argparse
import sys

from .analysis import SizeLimitError, contraction_brk, contraction_exact, \
    contraction_trk
from .core import read_tns
from .harness import default_spec, generate_system, solve_files, \
    run_experiment
from .solvers import SolverConfig


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tkz",
        description="Randomized Kaczmarz solvers for t-product tensor "
                    "linear systems: experiments, one-off solves, system "
                    "generation and rate reports.")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a figure experiment, write CSV")
    run.add_argument("--experiment", required=True,
                     choices=["fig1", "fig2", "fig3", "fig4"])
    run.add_argument("--m", type=int)
    run.add_argument("--ell", type=int)
    run.add_argument("--n", type=int)
    run.add_argument("--p", type=int)
    run.add_argument("--mu", type=int)
    run.add_argument("--trials", type=int)
    run.add_argument("--iters", type=int, dest="iterations")
    run.add_argument("--seed", type=int, default=0)
    run.add_argument("--sampling", choices=["uniform", "sqnorm"],
                     default="uniform")
    run.add_argument("--log-stride", type=int, dest="log_stride")
    run.add_argument("--m-sweep", dest="m_sweep",
                     help="comma-separated m values (fig1)")
    run.add_argument("--out", required=True)

    solve = sub.add_parser("solve", help="solve a serialized tensor system")
    solve.add_argument("--a", required=True)
    solve.add_argument("--b", required=True)
    solve.add_argument("--method", required=True,
                       choices=["mrk", "trk", "trk-fourier", "brk"])
    solve.add_argument("--iters", type=int, dest="iterations", default=1000)
    solve.add_argument("--seed", type=int, default=0)
    solve.add_argument("--sampling", choices=["uniform", "sqnorm"],
                       default="uniform")
    solve.add_argument("--log-stride", type=int, dest="log_stride",
                       default=10)
    solve.add_argument("--out", required=True)

    gen = sub.add_parser("gen", help="generate a consistent random system")
    gen.add_argument("--m", type=int, required=True)
    gen.add_argument("--ell", type=int, required=True)
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--p", type=int, default=1)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--normalize", choices=["row-slice", "none"],
                     default="none")
    gen.add_argument("--out", required=True,
                     help="path prefix for the _a/_x/_b.tns files")

    rates = sub.add_parser("rates", help="print contraction rates for a "
                                         "serialized tensor")
    rates.add_argument("--a", required=True)
    return parser


def _cmd_run(args) -> int:
    overrides = {}
    for name in ("m", "ell", "n", "p", "mu", "trials", "iterations",
                 "log_stride"):
        value = getattr(args, name)
        if value is not None:
            overrides[name] = value
    if args.m_sweep:
        overrides["m_sweep"] = tuple(
            int(v) for v in args.m_sweep.split(","))
    spec = default_spec(args.experiment, seed=args.seed,
                        sampling=args.sampling, out=args.out, **overrides)
    out = run_experiment(spec)
    print(f"wrote {out} and {out.with_suffix('.meta')}")
    return 0


def _cmd_solve(args) -> int:
    cfg = SolverConfig(iterations=args.iterations, seed=args.seed,
                       sampling=args.sampling, log_stride=args.log_stride)
    _, log = solve_files(args.a, args.b, args.method, cfg, args.out)
    print(f"wrote {args.out}; final residual {log.residual[-1]:.6e} "
          f"after {log.iterations[-1]} iterations")
    return 0


def _cmd_gen(args) -> int:
    paths = generate_system(args.m, args.ell, args.n, args.p, args.seed,
                            args.normalize, args.out)
    print("wrote " + " ".join(str(p) for p in paths))
    return 0


def _cmd_rates(args) -> int:
    a = read_tns(args.a)
    report = contraction_trk(a)
    print(f"method=trk rho={report.rho!r}")
    for k in range(a.n):
        print(f"slice={k} sigma_min={report.sigma_min[k]!r} "
              f"inf2={report.inf2[k]!r}")
    print(f"method=brk rho={contraction_brk(a)!r}")
    try:
        print(f"method=exact rho={contraction_exact(a)!r}")
    except SizeLimitError as exc:
        print(f"method=exact skipped ({exc})")
    return 0


_COMMANDS = {"run": _cmd_run, "solve": _cmd_solve, "gen": _cmd_gen,
             "rates": _cmd_rates}


def cli_main(argv: list[str] | None = None) -> int:
    """Parse arguments and dispatch; returns the process exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except BrokenPipeError:
        return 1
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
