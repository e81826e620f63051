"""Command line interface: ``sdepth compute`` and ``sdepth bench``.

Exit codes: 0 ok, 2 validation, 3 numeric (non-PD or rank-deficient input),
4 I/O. Errors are printed to stderr as ``error [<category>]: <message>``,
or as a JSON object with ``--json``.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .api import METHODS, scatter_depth
from .bench import BenchSpec, format_table, run_bench, write_csv
from .errors import SDepthError, ValidationError
from .exactnd import DEFAULT_EPS
from .io import read_dataset, resolve_mu, resolve_sigma


def _int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _str_list(text: str) -> list[str]:
    return [v.strip() for v in text.split(",") if v.strip()]


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sdepth", description="Scatter halfspace depth of a positive definite matrix.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", help="depth of (mu, sigma) for one dataset")
    c.add_argument("--data", required=True, help="text file, one point per row")
    c.add_argument("--mu", default=None, help="inline vector '1,2', a file, or 'mean' (default: origin)")
    c.add_argument("--sigma", default=None, help="inline matrix '2,1;1,2', a file, or 'identity' (default)")
    c.add_argument("--method", required=True, choices=METHODS)
    c.add_argument("--N", type=int, default=None, help="number of random draws (approximations)")
    c.add_argument("--seed", type=int, default=None, help="RNG seed (approximations)")
    c.add_argument("--eps", type=float, default=DEFAULT_EPS, help="strict-count tolerance (default 1e-14)")
    c.add_argument("--threads", type=int, default=1)
    c.add_argument("--json", action="store_true", help="print one JSON object")

    b = sub.add_parser("bench", help="timing and accuracy tables on Gaussian data")
    b.add_argument("--dims", type=_int_list, default=[2, 3])
    b.add_argument("--sizes", type=_int_list, default=[32, 64])
    b.add_argument("--trials", type=int, default=20)
    b.add_argument("--methods", type=_str_list, default=["exact"])
    b.add_argument("--budget", type=float, default=60.0, help="seconds per cell before censoring")
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--N", type=int, default=10_000)
    b.add_argument("--threads", type=int, default=1)
    b.add_argument("--parallel-trials", action="store_true", help="run trials concurrently (timings contended)")
    b.add_argument("--out", default=None, help="CSV output path")
    b.add_argument("--quiet", action="store_true")
    return p


def _compute(args) -> dict:
    if args.method in ("rdirections", "rpoints") and (args.N is None or args.seed is None):
        raise ValidationError(f"--method {args.method} requires --N and --seed")
    if args.eps < 0:
        raise ValidationError("--eps must be non-negative")
    x = read_dataset(args.data)
    mu = resolve_mu(args.mu, x)
    sigma = resolve_sigma(args.sigma, x)
    t0 = time.perf_counter()
    res = scatter_depth(x, mu, sigma, args.method, N=args.N, seed=args.seed,
                        eps=args.eps, threads=args.threads)
    elapsed = time.perf_counter() - t0
    out = {
        "depth": int(res.depth),
        "depth_normalized": res.depth_normalized,
        "method": args.method,
        "n": int(x.shape[0]),
        "d": int(x.shape[1]),
        "elapsed_s": elapsed,
        "evaluations": int(res.evaluations),
    }
    if args.method in ("rdirections", "rpoints"):
        out["seed"] = args.seed
        out["N"] = args.N
    return out


def _bench(args) -> None:
    spec = BenchSpec(args.dims, args.sizes, args.trials, args.methods, args.budget,
                     args.seed, args.N, args.threads, args.parallel_trials)

    def progress(cell):
        if not args.quiet:
            state = "censored" if cell.censored else f"{cell.time_mean:.4f}s"
            print(f"d={cell.d} n={cell.n} {cell.method}: {state}", file=sys.stderr)

    cells = run_bench(spec, progress)
    if args.out:
        write_csv(cells, args.out)
    print(format_table(cells))


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    as_json = getattr(args, "json", False)
    try:
        if args.command == "compute":
            out = _compute(args)
            if as_json:
                print(json.dumps(out))
            else:
                print(f"sHD = {out['depth']} ({out['depth']}/{out['n']})")
                print(f"time: {out['elapsed_s']:.6f} s ({out['method']}, {out['evaluations']} evaluations)")
        else:
            _bench(args)
    except SDepthError as exc:
        if as_json:
            print(json.dumps({"error": exc.category, "type": type(exc).__name__, "message": str(exc)}))
        else:
            print(f"error [{exc.category}]: {exc}", file=sys.stderr)
        return exc.exit_code
    return 0


if __name__ == "__main__":
    sys.exit(main())
