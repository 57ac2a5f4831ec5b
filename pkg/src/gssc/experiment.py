"""Reproducible method-comparison sweeps over noise level or sample count.

A sweep is described by a line-oriented `key = value` config file.  Every
random draw is seeded from the master seed: trial i uses row seed
(seed + i) for its signal, and the sample draw additionally mixes in the
noise level and sample count, so any single CSV row can be reproduced in
isolation.  Signals are shared across sweep points within a trial, so
method curves differ only by the swept quantity.

Outputs: results.csv (one row per method/point/trial), aggregate.csv
(per-point means over trials, computed from the printed 12-digit values so
the two files stay mutually consistent), and timings.csv (wall-clock per
point; kept separate because it is the one non-reproducible output).
"""

from __future__ import annotations

import csv
import os
import re
import time
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .baselines import KrrConfig, krr_grid, sc_product
from .complexes import (SimplicialComplex, canonical_complex, load_complex,
                        load_delta, random_complex, to_chain_complex)
from .errors import FormatError, UnsupportedError
from .hodge import spectral_bases
from .learn import (SynthSpec, eval_chain_on_grid, evaluation_grid,
                    reconstruct_gssc, rmse_ratio, sample_async, synthesize)

KNOWN_METHODS = ("gssc", "gssc_sub", "krr", "sc_product")
DEFAULT_NOISE_LEVELS = (0.001, 0.005, 0.01, 0.05, 0.1)
DEFAULT_SAMPLE_COUNTS = (5, 10, 15, 20, 30, 40)

_CANONICAL = re.compile(r"(rp2|torus|filled_triangle|cycle\(\d+\)|path\(\d+\))")
_RANDOM = re.compile(
    r"random\(\s*(\d+)\s*,\s*([0-9.eE+-]+)\s*,\s*([0-9.eE+-]+)\s*,\s*(\d+)\s*\)")


class ExperimentConfig:
    """Validated sweep description; see module docstring for the file format."""

    def __init__(self, complex="default", methods=KNOWN_METHODS, sweep="noise",
                 noise_levels=DEFAULT_NOISE_LEVELS,
                 sample_counts=DEFAULT_SAMPLE_COUNTS,
                 noise=0.01, samples_per_edge=20, trials=20, seed=0,
                 time_order=3, n_irr=20, n_sol=20, sub_size=15, eta=1.0,
                 lengthscale=1.0, ridge=1e-2, alpha=0.05, beta=0.05):
        self.complex = complex
        self.methods = tuple(methods)
        self.sweep = sweep
        self.noise_levels = tuple(float(v) for v in noise_levels)
        self.sample_counts = tuple(int(v) for v in sample_counts)
        self.noise = float(noise)
        self.samples_per_edge = int(samples_per_edge)
        self.trials = int(trials)
        self.seed = int(seed)
        self.time_order = int(time_order)
        self.n_irr = int(n_irr)
        self.n_sol = int(n_sol)
        self.sub_size = int(sub_size)
        self.eta = float(eta)
        self.lengthscale = float(lengthscale)
        self.ridge = float(ridge)
        self.alpha = float(alpha)
        self.beta = float(beta)
        self._validate()

    def _validate(self):
        for m in self.methods:
            if m not in KNOWN_METHODS:
                raise UnsupportedError(
                    f"unknown method {m!r}; choose from {', '.join(KNOWN_METHODS)}")
        if not self.methods:
            raise FormatError("methods list is empty")
        if self.sweep not in ("noise", "samples"):
            raise FormatError(f"sweep must be 'noise' or 'samples', got {self.sweep!r}")
        if self.sweep == "noise" and not self.noise_levels:
            raise FormatError("noise sweep needs at least one noise level")
        if self.sweep == "samples" and not self.sample_counts:
            raise FormatError("samples sweep needs at least one sample count")
        if any(v < 0 for v in self.noise_levels) or self.noise < 0:
            raise FormatError("noise levels must be >= 0")
        if any(m < 1 for m in self.sample_counts) or self.samples_per_edge < 1:
            raise FormatError("sample counts must be >= 1")
        if self.trials < 1:
            raise FormatError("trials must be >= 1")
        if self.eta <= 0:
            raise FormatError("eta must be positive")
        if self.sub_size < 1:
            raise FormatError("sub_size must be >= 1")

    def points(self):
        """The (noise, samples_per_edge) pairs of the sweep, in sweep order."""
        if self.sweep == "noise":
            return [(sigma, self.samples_per_edge) for sigma in self.noise_levels]
        return [(self.noise, m) for m in self.sample_counts]


_INT_KEYS = {"samples_per_edge", "trials", "seed", "time_order", "n_irr",
             "n_sol", "sub_size"}
_FLOAT_KEYS = {"noise", "eta", "lengthscale", "ridge", "alpha", "beta"}


def parse_config(path):
    """Read a `key = value` config file (# comments, blank lines ignored)."""
    values = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise FormatError(f"expected 'key = value', got {line!r}", lineno)
            key, _, value = line.partition("=")
            key = key.strip()
            value = value.strip()
            try:
                if key == "complex" or key == "sweep":
                    values[key] = value
                elif key == "methods":
                    values[key] = tuple(v.strip() for v in value.split(",") if v.strip())
                elif key == "noise_levels":
                    values[key] = tuple(float(v) for v in value.split(","))
                elif key == "sample_counts":
                    values[key] = tuple(int(v) for v in value.split(","))
                elif key in _INT_KEYS:
                    values[key] = int(value)
                elif key in _FLOAT_KEYS:
                    values[key] = float(value)
                else:
                    raise FormatError(f"unknown config key {key!r}", lineno)
            except ValueError:
                raise FormatError(f"bad value for {key}: {value!r}", lineno)
    return ExperimentConfig(**values)


def default_experiment_complex():
    """The built-in benchmark complex: a dense core plus a genuine 1-cycle.

    A random 2-complex on vertices 0..19 (every triangle of the graph
    filled) is bridged to a hexagonal ring on vertices 20..25.  The ring
    bounds no triangles, so its circulation is exactly harmonic and the
    degree-1 harmonic space is nontrivial; the core supplies enough
    gradient and curl directions for the default basis sizes.
    """
    core = random_complex(20, 0.5, 1.0, seed=11)
    extra = [(20, 21), (21, 22), (22, 23), (23, 24), (24, 25), (20, 25),
             (0, 20)]
    maximal = core.maximal_simplexes() + extra
    return to_chain_complex(SimplicialComplex.from_maximal(maximal, n_vertices=26))


def resolve_complex(spec):
    """Interpret a config `complex` value: default, canonical, random, or path."""
    if spec == "default":
        return default_experiment_complex()
    match = _RANDOM.fullmatch(spec)
    if match:
        sc = random_complex(int(match.group(1)), float(match.group(2)),
                            float(match.group(3)), int(match.group(4)))
        return to_chain_complex(sc)
    if _CANONICAL.fullmatch(spec):
        return canonical_complex(spec)
    if spec.endswith(".scx"):
        return to_chain_complex(load_complex(spec))
    if spec.endswith(".dcx"):
        return load_delta(spec)
    raise FormatError(
        f"cannot interpret complex {spec!r}: expected 'default', a canonical "
        "name, random(n, edge_prob, fill_prob, seed), or a .scx/.dcx path")


def _noise_key(sigma):
    return int(round(sigma * 1e12))


def _fmt(value):
    return f"{value:g}"


def _hyperparams(config, method, bases, sub):
    if method == "gssc":
        return (f"eta={_fmt(config.eta)};n_irr={bases.n_irr};"
                f"n_sol={bases.n_sol};time_order={config.time_order}")
    if method == "gssc_sub":
        return (f"eta={_fmt(config.eta)};n_irr={sub.n_irr};n_sol={sub.n_sol};"
                f"time_order={config.time_order}")
    if method == "krr":
        return f"lengthscale={_fmt(config.lengthscale)};ridge={_fmt(config.ridge)}"
    return (f"lengthscale={_fmt(config.lengthscale)};ridge={_fmt(config.ridge)};"
            f"alpha={_fmt(config.alpha)};beta={_fmt(config.beta)}")


def _run_cell(config, rep, bases, sub, grid, signal, truth, sigma, m, trial):
    """All requested methods on one (sweep point, trial) cell, shared data."""
    row_seed = config.seed + trial
    samples = sample_async(signal, m, sigma,
                           seed=[row_seed, _noise_key(sigma), m])
    krr_est = None
    rmses = {}
    seconds = {}
    for method in config.methods:
        start = time.perf_counter()
        if method == "gssc":
            est, _ = reconstruct_gssc(samples, rep, bases,
                                      config.time_order, config.eta)
            value = rmse_ratio(est, truth, grid)
        elif method == "gssc_sub":
            est, _ = reconstruct_gssc(samples, rep, sub,
                                      config.time_order, config.eta)
            value = rmse_ratio(est, truth, grid)
        elif method == "krr":
            if krr_est is None:
                krr_est = krr_grid(samples, KrrConfig(config.lengthscale,
                                                      config.ridge), grid)
            value = rmse_ratio(krr_est.values, truth, grid)
        else:
            if krr_est is None:
                krr_est = krr_grid(samples, KrrConfig(config.lengthscale,
                                                      config.ridge), grid)
            smoothed = sc_product(krr_est, rep, config.alpha, config.beta)
            value = rmse_ratio(smoothed.values, truth, grid)
        rmses[method] = value
        seconds[method] = time.perf_counter() - start
    return rmses, seconds


def run_experiment(config, out_dir, jobs=1, log=None):
    """Execute the sweep and write results/aggregate/timings CSVs.

    Returns the three file paths.  Output rows appear in deterministic
    order (sweep point, then trial, then method) regardless of `jobs`.
    """
    os.makedirs(out_dir, exist_ok=True)
    rep = resolve_complex(config.complex)
    bases = spectral_bases(rep, 1, config.n_irr, config.n_sol)
    sub = bases.sub(min(config.sub_size, bases.n_irr),
                    min(config.sub_size, bases.n_sol))
    grid = evaluation_grid()
    points = config.points()

    signals = [synthesize(rep, SynthSpec(config.n_irr, config.n_sol,
                                         config.time_order,
                                         seed=[config.seed + trial]))
               for trial in range(config.trials)]
    truths = [eval_chain_on_grid(f, grid) for f in signals]

    cells = [(pi, trial) for pi in range(len(points))
             for trial in range(config.trials)]

    def work(cell):
        pi, trial = cell
        sigma, m = points[pi]
        return _run_cell(config, rep, bases, sub, grid, signals[trial],
                         truths[trial], sigma, m, trial)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(work, cells))
    else:
        outcomes = [work(cell) for cell in cells]

    results = {cell: out for cell, out in zip(cells, outcomes)}

    results_path = os.path.join(out_dir, "results.csv")
    with open(results_path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["method", "noise", "samples_per_edge", "trial",
                         "seed", "rmse", "hyperparams"])
        for pi, (sigma, m) in enumerate(points):
            for trial in range(config.trials):
                rmses, _ = results[(pi, trial)]
                for method in config.methods:
                    writer.writerow([method, _fmt(sigma), m, trial,
                                     config.seed + trial,
                                     f"{rmses[method]:.12g}",
                                     _hyperparams(config, method, bases, sub)])

    aggregate_path = os.path.join(out_dir, "aggregate.csv")
    with open(aggregate_path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["method", "noise", "samples_per_edge",
                         "mean_rmse", "trials"])
        for pi, (sigma, m) in enumerate(points):
            for method in config.methods:
                printed = [float(f"{results[(pi, trial)][0][method]:.12g}")
                           for trial in range(config.trials)]
                writer.writerow([method, _fmt(sigma), m,
                                 f"{sum(printed) / len(printed):.12g}",
                                 config.trials])

    timings_path = os.path.join(out_dir, "timings.csv")
    with open(timings_path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["noise", "samples_per_edge", "seconds"])
        for pi, (sigma, m) in enumerate(points):
            total = sum(sum(results[(pi, trial)][1].values())
                        for trial in range(config.trials))
            writer.writerow([_fmt(sigma), m, f"{total:.3f}"])

    if log is not None:
        log(f"wrote {results_path}, {aggregate_path}, {timings_path}")
    return {"results": results_path, "aggregate": aggregate_path,
            "timings": timings_path}
