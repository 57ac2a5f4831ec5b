"""Command-line front end.

Subcommands: homology, decompose, spectra, synth, sample, reconstruct,
experiment, complex gen.  Global flags --seed, --jobs, --out apply where
they make sense (seeding for synth/sample, parallelism for experiment,
output paths everywhere).

Exit codes: 0 success, 2 file or parse problems (also argparse usage
errors), 3 unsupported requests, 4 numerical failures.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .baselines import KrrConfig  # noqa: F401  (re-exported for scripting)
from .coefficients import (FourierFn, Integer, ModN, Real, load_chain,
                           save_chain)
from .complexes import (random_complex, save_complex, save_delta,
                        to_chain_complex, validate)
from .errors import (FormatError, InfeasibleError, NumericalError,
                     UnsupportedError)
from .experiment import parse_config, resolve_complex, run_experiment
from .hodge import eig_sym, laplacian, spectral_bases
from .homology import homology_Z
from .learn import (SynthSpec, load_samples, reconstruct_gssc, sample_async,
                    save_samples, solve_fundamental, solve_smooth, synthesize)


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="gssc",
        description="Signal processing on simplicial complexes: homology, "
                    "Hodge decompositions, and sampled reconstruction.")
    parser.add_argument("--seed", type=int, default=0,
                        help="master seed for randomized subcommands")
    parser.add_argument("--jobs", type=int, default=1,
                        help="parallel workers for the experiment sweep")
    parser.add_argument("--out", default=None,
                        help="output file or directory, subcommand-dependent")
    # the same flags are accepted after the subcommand; SUPPRESS keeps the
    # subparser from clobbering values parsed at the top level
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--jobs", type=int, default=argparse.SUPPRESS)
    common.add_argument("--out", default=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("homology", help="integer homology of a complex",
                       parents=[common])
    p.add_argument("complex", help="path (.scx/.dcx), canonical name, "
                                   "random(...), or 'default'")
    p.add_argument("-k", type=int, default=None, help="single degree")
    p.add_argument("--all", action="store_true",
                   help="all degrees (default when -k is absent)")

    p = sub.add_parser("decompose", help="decompose a chain signal", parents=[common])
    p.add_argument("complex")
    p.add_argument("signal", help="chain CSV file")
    p.add_argument("-k", type=int, required=True, help="chain degree")
    p.add_argument("--model", choices=("fundamental", "smooth"),
                   default="fundamental")
    p.add_argument("--system", choices=("real", "integer", "mod2", "fourier"),
                   default="real")
    p.add_argument("-p", type=int, choices=(1, 2), default=2)
    p.add_argument("--eta", type=float, default=1.0)
    p.add_argument("--time-order", type=int, default=3,
                   help="Fourier order for --system fourier")

    p = sub.add_parser("spectra", help="Laplacian spectrum of a complex", parents=[common])
    p.add_argument("complex")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--vectors", default=None,
                   help="also write the eigenvector matrix to this CSV")

    p = sub.add_parser("synth", help="draw a random function-valued edge signal", parents=[common])
    p.add_argument("complex")
    p.add_argument("--n-irr", type=int, default=20)
    p.add_argument("--n-sol", type=int, default=20)
    p.add_argument("--time-order", type=int, default=3)

    p = sub.add_parser("sample", help="sample a function-valued signal", parents=[common])
    p.add_argument("complex")
    p.add_argument("signal", help="function-valued chain CSV")
    p.add_argument("-M", "--samples", type=int, required=True,
                   help="samples per edge")
    p.add_argument("--sigma", type=float, default=0.0, help="noise std")
    p.add_argument("--time-order", type=int, default=3)

    p = sub.add_parser("reconstruct", help="fit a signal to sample data", parents=[common])
    p.add_argument("complex")
    p.add_argument("samples", help="sample CSV from the sample subcommand")
    p.add_argument("--time-order", type=int, default=3)
    p.add_argument("--eta", type=float, default=1.0)
    p.add_argument("--n-irr", type=int, default=20)
    p.add_argument("--n-sol", type=int, default=20)
    p.add_argument("--sub-size", type=int, default=0,
                   help="truncate both non-harmonic bases to this size (0 = full)")

    p = sub.add_parser("experiment", help="run a method-comparison sweep", parents=[common])
    p.add_argument("config", help="key = value config file")

    p = sub.add_parser("complex", help="complex utilities", parents=[common])
    csub = p.add_subparsers(dest="complex_command", required=True)
    g = csub.add_parser("gen", help="generate and save a complex",
                        parents=[common])
    g.add_argument("spec", help="canonical name, random(...), or 'default'")

    return parser


def _require_out(args, what):
    if not args.out:
        raise FormatError(f"--out is required: where should the {what} go?")
    return args.out


def _system_for(args):
    name = args.system
    if name == "real":
        return Real()
    if name == "integer":
        return Integer()
    if name == "mod2":
        return ModN(2)
    return FourierFn(args.time_order)


def _cmd_homology(args):
    rep = resolve_complex(args.complex)
    if args.k is not None and not args.all:
        print(f"H_{args.k} = {homology_Z(rep, args.k)}")
    else:
        parts = [f"H_{k} = {homology_Z(rep, k)}" for k in range(rep.dim + 1)]
        print(", ".join(parts))
    return 0


def _cmd_decompose(args):
    import os
    rep = resolve_complex(args.complex)
    system = _system_for(args)
    x = load_chain(args.signal, rep, args.k, system)
    if args.model == "fundamental":
        result = solve_fundamental(x, p=args.p, weights=None)
    else:
        if args.p != 2:
            raise UnsupportedError("the smooth model supports p = 2 only")
        result = solve_smooth(x, eta=args.eta)
    out_dir = args.out or "."
    os.makedirs(out_dir, exist_ok=True)
    for name, part in (("x0", result.x0), ("x1", result.x1),
                       ("x_neg1", result.x_neg1)):
        save_chain(part, os.path.join(out_dir, f"{name}.csv"))
    print(json.dumps({"model": result.model,
                      "objective": result.objective,
                      "residuals": result.residuals}, sort_keys=True))
    return 0


def _cmd_spectra(args):
    import csv
    rep = resolve_complex(args.complex)
    spec = eig_sym(laplacian(rep, args.k))
    if args.out:
        fh = open(args.out, "w", encoding="utf-8", newline="")
    else:
        fh = sys.stdout
    try:
        writer = csv.writer(fh)
        writer.writerow(["index", "eigenvalue"])
        for i, lam in enumerate(spec.eigenvalues):
            writer.writerow([i, repr(float(lam))])
    finally:
        if args.out:
            fh.close()
    if args.vectors:
        np.savetxt(args.vectors, spec.eigenvectors, delimiter=",")
    return 0


def _cmd_synth(args):
    rep = resolve_complex(args.complex)
    out = _require_out(args, "signal CSV")
    spec = SynthSpec(n_irr=args.n_irr, n_sol=args.n_sol,
                     time_order=args.time_order, seed=args.seed)
    f = synthesize(rep, spec)
    save_chain(f, out)
    print(f"wrote {out}: {len(f.values)} edges, order {args.time_order}")
    return 0


def _cmd_sample(args):
    rep = resolve_complex(args.complex)
    out = _require_out(args, "sample CSV")
    f = load_chain(args.signal, rep, 1, FourierFn(args.time_order))
    samples = sample_async(f, args.samples, args.sigma, seed=args.seed)
    save_samples(samples, out)
    print(f"wrote {out}: {samples.n_edges} edges x "
          f"{samples.samples_per_edge} samples, sigma={args.sigma:g}")
    return 0


def _cmd_reconstruct(args):
    rep = resolve_complex(args.complex)
    out = _require_out(args, "estimate CSV")
    samples = load_samples(args.samples, rep.n_cells(1))
    bases = spectral_bases(rep, 1, args.n_irr, args.n_sol)
    if args.sub_size > 0:
        bases = bases.sub(min(args.sub_size, bases.n_irr),
                          min(args.sub_size, bases.n_sol))
    estimate, result = reconstruct_gssc(samples, rep, bases,
                                        time_order=args.time_order,
                                        eta=args.eta)
    save_chain(estimate, out)
    print(json.dumps({"model": result.model,
                      "objective": result.objective,
                      "residuals": result.residuals}, sort_keys=True))
    return 0


def _cmd_experiment(args):
    config = parse_config(args.config)
    paths = run_experiment(config, out_dir=args.out or "results",
                           jobs=args.jobs, log=print)
    del paths
    return 0


def _cmd_complex_gen(args):
    spec = args.spec
    if args.out is None:
        rep = resolve_complex(spec)
        report = validate(rep)
        dims = " ".join(str(rep.n_cells(k)) for k in range(rep.dim + 1))
        print(f"dims {dims} ({'valid' if report.ok else 'INVALID'})")
        return 0
    from .experiment import _RANDOM
    match = _RANDOM.fullmatch(spec)
    if args.out.endswith(".scx"):
        if not match:
            raise UnsupportedError(
                f"{spec!r} is not a simplicial generator; save it as .dcx")
        sc = random_complex(int(match.group(1)), float(match.group(2)),
                            float(match.group(3)), int(match.group(4)))
        save_complex(sc, args.out)
    elif args.out.endswith(".dcx"):
        save_delta(resolve_complex(spec), args.out)
    else:
        raise FormatError(f"unknown output extension for {args.out!r}; "
                          "use .scx or .dcx")
    print(f"wrote {args.out}")
    return 0


_COMMANDS = {
    "homology": _cmd_homology,
    "decompose": _cmd_decompose,
    "spectra": _cmd_spectra,
    "synth": _cmd_synth,
    "sample": _cmd_sample,
    "reconstruct": _cmd_reconstruct,
    "experiment": _cmd_experiment,
}


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "complex":
            return _cmd_complex_gen(args)
        return _COMMANDS[args.command](args)
    except FormatError as exc:
        print(f"gssc: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"gssc: error: {exc}", file=sys.stderr)
        return 2
    except UnsupportedError as exc:
        print(f"gssc: unsupported: {exc}", file=sys.stderr)
        return 3
    except (InfeasibleError, NumericalError, np.linalg.LinAlgError) as exc:
        print(f"gssc: numerical failure: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
