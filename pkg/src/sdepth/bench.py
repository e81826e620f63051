"""Wall-time and accuracy tables over seeded standard-Gaussian datasets.

Each (d, n, method) cell runs ``trials`` datasets and records the mean and
standard deviation of the wall time. Randomized methods are compared with
the exact depth of the same datasets when ``exact`` is among the methods.

A cell whose cumulative wall time exceeds the budget is stopped and
reported as censored ("—"); larger n for the same (d, method) are then
censored without being run. A trial already running is not interrupted.
"""

from __future__ import annotations

import csv
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .api import METHODS, scatter_depth
from .errors import ValidationError

CENSORED = "—"
APPROX = ("rdirections", "rpoints")


@dataclass
class BenchSpec:
    dims: list[int]
    sizes: list[int]
    trials: int = 20
    methods: list[str] = field(default_factory=lambda: ["exact"])
    time_budget_s: float = 60.0
    seed: int = 0
    N: int = 10_000
    threads: int = 1
    parallel_trials: bool = False

    def __post_init__(self):
        if not self.dims or not self.sizes or not self.methods:
            raise ValidationError("dims, sizes and methods must be non-empty")
        bad = [m for m in self.methods if m not in METHODS]
        if bad:
            raise ValidationError(f"unknown method(s): {', '.join(bad)}")
        if any(d < 2 for d in self.dims):
            raise ValidationError("dims must be >= 2")
        if "exact2d" in self.methods and any(d != 2 for d in self.dims):
            raise ValidationError("exact2d only runs with dims = 2")
        if any(n < 1 for n in self.sizes):
            raise ValidationError("sizes must be positive")
        if self.trials < 1:
            raise ValidationError("trials must be >= 1")
        if self.time_budget_s <= 0:
            raise ValidationError("budget must be positive")
        if self.seed < 0 or self.N < 1:
            raise ValidationError("seed must be non-negative and N positive")


@dataclass
class CellResult:
    d: int
    n: int
    method: str
    trials_run: int
    censored: bool
    times: list[float]
    depths: list[int]
    contended: bool = False
    rel_diff_mean: float | None = None
    match_fraction: float | None = None
    zero_exact_skipped: int = 0

    @property
    def time_mean(self) -> float | None:
        return float(np.mean(self.times)) if self.times and not self.censored else None

    @property
    def time_sd(self) -> float | None:
        if not self.times or self.censored:
            return None
        return float(np.std(self.times, ddof=1)) if len(self.times) > 1 else 0.0


def dataset(seed: int, d: int, n: int, trial: int) -> np.ndarray:
    """The standard-Gaussian dataset of one trial; depends only on its arguments."""
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, d, n, trial])))
    return rng.standard_normal((n, d))


def trial_seed(seed: int, d: int, n: int, trial: int) -> int:
    return int(np.random.SeedSequence([seed, d, n, trial, 1]).generate_state(1, np.uint32)[0])


def _one(spec: BenchSpec, method: str, d: int, n: int, trial: int) -> tuple[int, float]:
    x = dataset(spec.seed, d, n, trial)
    kw = {}
    if method in APPROX:
        kw = {"N": spec.N, "seed": trial_seed(spec.seed, d, n, trial)}
    t0 = time.perf_counter()
    res = scatter_depth(x, method=method, threads=spec.threads, **kw)
    return res.depth, time.perf_counter() - t0


def _warm_up(methods) -> None:
    # trigger numba compilation outside the timed region
    for d in (2, 3):
        x = dataset(0, d, 12, 0)
        for method in methods:
            if method == "exact2d" and d != 2:
                continue
            kw = {"N": 8, "seed": 0} if method in APPROX else {}
            scatter_depth(x, method=method, **kw)


def _run_cell(spec: BenchSpec, method: str, d: int, n: int) -> CellResult:
    depths, times = [], []
    if spec.parallel_trials:
        with ThreadPoolExecutor() as pool:
            out = list(pool.map(lambda t: _one(spec, method, d, n, t), range(spec.trials)))
        depths = [o[0] for o in out]
        times = [o[1] for o in out]
        censored = sum(times) > spec.time_budget_s
        return CellResult(d, n, method, spec.trials, censored, times, depths, contended=True)
    for t in range(spec.trials):
        dep, el = _one(spec, method, d, n, t)
        depths.append(dep)
        times.append(el)
        if sum(times) > spec.time_budget_s:
            return CellResult(d, n, method, len(times), True, times, depths)
    return CellResult(d, n, method, spec.trials, False, times, depths)


def _compare(cell: CellResult, exact: CellResult | None) -> None:
    if exact is None or exact.censored or cell.censored:
        return
    a = np.array(cell.depths, dtype=float)
    e = np.array(exact.depths, dtype=float)
    cell.match_fraction = float(np.mean(a == e))
    nz = e > 0
    cell.zero_exact_skipped = int(np.count_nonzero(~nz))
    if nz.any():
        cell.rel_diff_mean = float(np.mean((a[nz] - e[nz]) / e[nz]))


def run_bench(spec: BenchSpec, progress=None) -> list[CellResult]:
    """Run every (d, n, method) cell in order of d, then n, then method."""
    _warm_up(spec.methods)
    cells = []
    dead = set()
    for d in spec.dims:
        for n in sorted(spec.sizes):
            by_method = {}
            for method in spec.methods:
                if (d, method) in dead:
                    cell = CellResult(d, n, method, 0, True, [], [])
                else:
                    cell = _run_cell(spec, method, d, n)
                    if cell.censored:
                        dead.add((d, method))
                by_method[method] = cell
                if progress is not None:
                    progress(cell)
            ref = by_method.get("exact") or by_method.get("exact2d")
            for method in APPROX:
                if method in by_method:
                    _compare(by_method[method], ref)
            cells.extend(by_method[m] for m in spec.methods)
    return cells


COLUMNS = ["d", "n", "method", "trials", "time_mean_s", "time_sd_s", "rel_diff_mean",
           "match_fraction", "zero_exact_skipped", "contended", "depths"]


def _fmt(v, spec: str) -> str:
    return "" if v is None else format(v, spec)


def cell_row(c: CellResult) -> dict:
    approx = c.method in APPROX
    return {
        "d": c.d,
        "n": c.n,
        "method": c.method,
        "trials": c.trials_run,
        "time_mean_s": CENSORED if c.censored else _fmt(c.time_mean, ".6f"),
        "time_sd_s": CENSORED if c.censored else _fmt(c.time_sd, ".6f"),
        "rel_diff_mean": CENSORED if c.censored and approx else _fmt(c.rel_diff_mean, ".5f"),
        "match_fraction": CENSORED if c.censored and approx else _fmt(c.match_fraction, ".2f"),
        "zero_exact_skipped": c.zero_exact_skipped if approx else "",
        "contended": int(c.contended),
        "depths": " ".join(str(v) for v in c.depths),
    }


def write_csv(cells: list[CellResult], path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.DictWriter(fh, fieldnames=COLUMNS)
        w.writeheader()
        for c in cells:
            w.writerow(cell_row(c))


def format_table(cells: list[CellResult]) -> str:
    """Aligned text table: time as "mean (sd)", accuracy as "reldiff (match)"."""
    head = ["d", "n", "method", "time s: mean (sd)", "rel. diff (match)", "skipped"]
    rows = []
    for c in cells:
        if c.censored:
            t = CENSORED
        else:
            t = f"{c.time_mean:.4f} ({c.time_sd:.4f})"
        acc, skip = "", ""
        if c.method in APPROX:
            if c.censored:
                acc = CENSORED
            elif c.match_fraction is not None:
                rd = "n/a" if c.rel_diff_mean is None else f"{c.rel_diff_mean:.5f}"
                acc = f"{rd} ({c.match_fraction:.2f})"
                skip = str(c.zero_exact_skipped)
        if c.contended:
            t += " *"
        rows.append([str(c.d), str(c.n), c.method, t, acc, skip])
    widths = [max(len(r[i]) for r in rows + [head]) for i in range(len(head))]
    lines = ["  ".join(h.rjust(w) for h, w in zip(head, widths))]
    lines.append("  ".join("-" * w for w in widths))
    lines += ["  ".join(v.rjust(w) for v, w in zip(r, widths)) for r in rows]
    if any(c.contended for c in cells):
        lines.append("* timings measured with trials running in parallel (contended)")
    return "\n".join(lines)
