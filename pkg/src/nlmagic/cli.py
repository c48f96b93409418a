"""Experiment runner.

    nlmagic anneal   --L 4 --m 1 --seed 3 --out anneal.csv
    nlmagic ensemble --L 16,32,64 --ell 0.25,0.5,0.75 --samples 100
    nlmagic kitaev   --L 32,64 --out kitaev.csv      (writes kitaev_mu.csv, kitaev_ell.csv)
    nlmagic circuit  --L 200 --periods 100 --realizations 10
    nlmagic quench   --L 200 --gamma 0,0.5,1
    nlmagic selftest

Every command takes ``--seed``, ``--out``, ``--workers``, ``--json`` and
``--config FILE`` (``key = value`` lines; command-line flags win).
Exit codes: 0 success, 1 invariant failure, 2 invalid configuration.
"""
import argparse
import logging
import os
import sys

import numpy as np

from . import selftest
from ._parallel import default_workers
from .anneal import AnnealingSchedule
from .errors import InputError, NLMagicError, ResourceError
from .experiments import (anneal_run, circuit_curves, ensemble_rows, kitaev_ell_rows,
                          kitaev_mu_rows, quench_curve)
from .magic import SRE_CAP
from .output import metadata, write_table

log = logging.getLogger("nlmagic")


def _ints(text):
    return [int(v) for v in str(text).split(",") if v.strip()]


def _floats(text):
    return [float(v) for v in str(text).split(",") if v.strip()]


def _grid(start, stop, step):
    n = int(round((stop - start) / step))
    return [round(start + i * step, 12) for i in range(n + 1)]


def read_config(path):
    """``key = value`` pairs; ``#`` starts a comment, dashes in keys become underscores."""
    out = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise InputError(f"{path}:{lineno}: expected key = value")
            key, val = (s.strip() for s in line.split("=", 1))
            out[key.replace("-", "_")] = val
    return out


def _common(sp):
    sp.add_argument("--seed", type=int, default=0, help="64-bit master seed")
    sp.add_argument("--out", default="-", help="output path ('-' for stdout)")
    sp.add_argument("--workers", type=int, default=None,
                    help="worker processes (default: $NLMAGIC_WORKERS or 1)")
    sp.add_argument("--json", action="store_true", help="write one JSON document instead of CSV")
    sp.add_argument("--config", default=None, help="key = value file; flags override it")


def build_parser():
    parser = argparse.ArgumentParser(prog="nlmagic", description=__doc__.split("\n\n")[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("anneal", help="simulated annealing over the local Gaussian orbit")
    _common(sp)
    sp.add_argument("--L", type=int, default=4)
    sp.add_argument("--m", type=int, default=1)
    sp.add_argument("--run", type=int, default=0, help="index of the random state / chain")
    sp.add_argument("--cap", type=int, default=SRE_CAP, help="largest L for the exact SRE")
    defaults = AnnealingSchedule()
    sp.add_argument("--beta0", type=float, default=defaults.beta0)
    sp.add_argument("--d-beta", type=float, default=defaults.d_beta)
    sp.add_argument("--stages", type=int, default=defaults.stages)
    sp.add_argument("--steps-per-stage", type=int, default=defaults.steps_per_stage)
    sp.add_argument("--eps0", type=float, default=defaults.eps0)
    sp.add_argument("--thin", type=int, default=1, help="write every THIN-th record (last always kept)")

    sp = sub.add_parser("ensemble", help="Haar-ensemble average of the bound density")
    _common(sp)
    sp.add_argument("--L", type=_ints, default=[16, 32, 64, 128])
    sp.add_argument("--ell", type=_floats, default=_grid(0.1, 0.9, 0.1))
    sp.add_argument("--samples", type=int, default=100)
    sp.add_argument("--alpha", type=float, default=2.0)

    sp = sub.add_parser("kitaev", help="Kitaev-chain ground states (mu scan and ell scan)")
    _common(sp)
    sp.add_argument("--L", type=_ints, default=[32, 64, 128], help="sizes for the mu scan")
    sp.add_argument("--mu", type=_floats, default=None, help="explicit mu values")
    sp.add_argument("--mu-min", type=float, default=0.0)
    sp.add_argument("--mu-max", type=float, default=4.0)
    sp.add_argument("--mu-step", type=float, default=0.05)
    sp.add_argument("--ell-L", type=_ints, default=[32, 64, 128, 256], help="sizes for the ell scan")
    sp.add_argument("--mu-critical", type=float, default=2.0)
    sp.add_argument("--t", type=float, default=1.0)
    sp.add_argument("--delta", type=float, default=1.0)
    sp.add_argument("--bc", choices=["open", "periodic"], default="periodic")
    sp.add_argument("--perturb-degenerate", action="store_true",
                    help="shift mu by 1e-8 instead of skipping degenerate ground states")

    sp = sub.add_parser("circuit", help="random brick-wall Gaussian circuits")
    _common(sp)
    sp.add_argument("--L", type=int, default=200)
    sp.add_argument("--periods", type=int, default=100)
    sp.add_argument("--realizations", type=int, default=10)
    sp.add_argument("--alpha", type=_floats, default=[2.0, 3.0, 4.0])

    sp = sub.add_parser("quench", help="Neel-state quench in the XY chain")
    _common(sp)
    sp.add_argument("--L", type=int, default=200)
    sp.add_argument("--gamma", type=_floats, default=[0.0, 0.5, 1.0])
    sp.add_argument("--t-max", type=float, default=None, help="default L/4")
    sp.add_argument("--dt", type=float, default=0.5)
    sp.add_argument("--bc", choices=["open", "periodic"], default="open")

    sp = sub.add_parser("selftest", help="oracle and closed-form consistency checks")
    sp.add_argument("--seed", type=int, default=0)
    return parser


def parse_args(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "config", None):
        conf = read_config(args.config)
        sub = parser._subparsers._group_actions[0].choices[args.command]
        known = {a.dest: a for a in sub._actions}
        unknown = set(conf) - set(known)
        if unknown:
            raise InputError(f"unknown config keys: {sorted(unknown)}")
        defaults = {}
        for key, val in conf.items():
            action = known[key]
            if action.nargs == 0:
                defaults[key] = val.lower() in ("1", "true", "yes", "on")
            else:
                defaults[key] = action.type(val) if action.type else val
        sub.set_defaults(**defaults)
        args = parser.parse_args(argv)
    return args


def _config(args, skip=("out", "json", "config", "workers", "command", "verbose")):
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _derived_path(path, suffix, as_json):
    ext = ".json" if as_json else ".csv"
    if path in (None, "-"):
        return "-"
    root, old = os.path.splitext(path)
    return f"{root}_{suffix}{old or ext}"


def cmd_anneal(args):
    if args.L > args.cap:
        raise ResourceError(f"L={args.L} exceeds the exact-SRE cap {args.cap}")
    if not 1 <= args.m <= args.L - 1:
        raise InputError(f"need 1 <= m <= L - 1, got m={args.m}")
    sched = AnnealingSchedule(args.beta0, args.d_beta, args.stages, args.steps_per_stage, args.eps0)
    traj, _ = anneal_run(args.seed, args.L, args.m, sched, args.run)
    keep = np.arange(0, len(traj), max(1, args.thin))
    if keep[-1] != len(traj) - 1:
        keep = np.r_[keep, len(traj) - 1]
    rows = [(int(traj.step[i]), float(traj.beta[i]), float(traj.m2[i]),
             float(traj.m2[i] - traj.bound), bool(traj.accepted[i])) for i in keep]
    meta = metadata("anneal", _config(args), args.seed, schedule=sched.as_dict(),
                    bound=traj.bound, final_best_gap=traj.final_gap)
    write_table(args.out, meta, ["step", "beta", "m2", "m2_minus_bound", "accepted"], rows, args.json)
    log.info("final best-so-far gap %.3e", traj.final_gap)
    return 0


def cmd_ensemble(args):
    rows = ensemble_rows(args.L, args.ell, args.samples, args.seed, args.alpha, args.workers)
    meta = metadata("ensemble", _config(args), args.seed)
    write_table(args.out, meta, ["L", "ell", "samples", "mean_density", "stderr", "j_thermo"],
                rows, args.json)
    return 0


def cmd_kitaev(args):
    mus = args.mu if args.mu is not None else _grid(args.mu_min, args.mu_max, args.mu_step)
    common = dict(t=args.t, delta=args.delta, bc=args.bc, perturb=args.perturb_degenerate)
    rows_mu = kitaev_mu_rows(args.L, mus, **common)
    rows_ell = kitaev_ell_rows(args.ell_L, args.mu_critical, **common)
    meta = metadata("kitaev", _config(args), args.seed)
    write_table(_derived_path(args.out, "mu", args.json), dict(meta, panel="mu_scan"),
                ["mu", "L", "m2nl", "flag"], rows_mu, args.json)
    write_table(_derived_path(args.out, "ell", args.json), dict(meta, panel="ell_scan"),
                ["ell", "L", "m2nl", "flag"], rows_ell, args.json)
    return 0


def cmd_circuit(args):
    if args.L % 2:
        raise InputError("circuit needs an even L")
    ts, mean, err = circuit_curves(args.L, args.periods, args.realizations, args.alpha,
                                   args.seed, args.workers)
    rows = [(int(t), a, float(mean[i, j]), float(err[i, j]))
            for i, t in enumerate(ts) for j, a in enumerate(args.alpha)]
    meta = metadata("circuit", _config(args), args.seed, time_unit="one even + one odd layer")
    write_table(args.out, meta, ["t", "alpha", "m2nl_mean", "m2nl_stderr"], rows, args.json)
    return 0


def cmd_quench(args):
    if args.L % 2:
        raise InputError("quench needs an even L (Neel state)")
    t_max = args.L / 4 if args.t_max is None else args.t_max
    times = _grid(0.0, t_max, args.dt)
    rows = []
    for g in args.gamma:
        m2, ent = quench_curve(args.L, g, times, args.bc)
        rows.extend((t, g, float(a), float(b)) for t, a, b in zip(times, m2, ent))
    meta = metadata("quench", _config(args), args.seed, t_max=t_max)
    write_table(args.out, meta, ["t", "gamma_an", "m2nl", "entanglement_entropy"], rows, args.json)
    return 0


def cmd_selftest(args):
    return 1 if selftest.run() else 0


COMMANDS = {
    "anneal": cmd_anneal,
    "ensemble": cmd_ensemble,
    "kitaev": cmd_kitaev,
    "circuit": cmd_circuit,
    "quench": cmd_quench,
    "selftest": cmd_selftest,
}


def main(argv=None):
    try:
        args = parse_args(argv)
    except (InputError, OSError) as exc:
        print(f"nlmagic: {exc}", file=sys.stderr)
        return 2
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    if getattr(args, "workers", None) is None and hasattr(args, "workers"):
        args.workers = default_workers()
    try:
        return COMMANDS[args.command](args)
    except (InputError, ResourceError) as exc:
        print(f"nlmagic: {exc}", file=sys.stderr)
        return 2
    except NLMagicError as exc:
        print(f"nlmagic: invariant failure: {exc}", file=sys.stderr)
        return 1
