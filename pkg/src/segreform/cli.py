"""Command-line front end: instance generation, verification runs, checks.

Subcommands
-----------
gen        write a curvature-tensor JSON instance (random / projected / flat)
verify     run an identity verification (pushforward | identity8 | identity9 | moments)
check      run an inequality or metric check (he | kl | thm12 | surface | remark41 | lhe)
moments    evaluate a single sphere moment exactly, optionally against Monte Carlo

Every command emits a canonical-JSON report whose result rows carry explicit
tolerances.  Exit codes: 0 when every reported result passes, 1 on a
mathematical failure, 2 on usage, parse, or precondition errors.  The
default tolerance of verify/check can be overridden with the SEGREFORM_TOL
environment variable.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from . import __version__
from .curvature import (Kaehler11, PreconditionError, TensorValidationError,
                        chern_forms, is_hermite_einstein, load_tensor,
                        mean_curvature, project_to_he, projectively_flat_tensor,
                        random_curvature, segre_forms, strong_flat_tensor,
                        tensor_to_dict)
from .inequalities import (kl_classical, kl_segre, projective_flat_bound,
                           surface_compare)
from .moments import (MomentSpec, moment_diagonal, moment_mc, moment_wick,
                      sample_directions)
from .projective import (gamma_profile, pushforward_segre, verify_slope_identity,
                         verify_slope_identity_general, verify_power_identity)
from .report import Report, canonical_json

DEFAULT_TOL = 1e-9
HE_DETECT_TOL = 1e-9


class UsageError(ValueError):
    pass


def _default_tol():
    env = os.environ.get("SEGREFORM_TOL")
    if env is None:
        return DEFAULT_TOL
    try:
        return float(env)
    except ValueError as exc:
        raise UsageError(f"SEGREFORM_TOL is not a number: {env!r}") from exc


def parse_omega(spec, n):
    """Parse --omega: 'euclidean', inline JSON matrix, or @path to a JSON file.

    Matrix entries are numbers or [re, im] pairs; the result must be
    Hermitian positive definite.
    """
    if spec is None or spec == "euclidean":
        return Kaehler11.euclidean(n)
    text = spec
    if spec.startswith("@"):
        with open(spec[1:], "r", encoding="utf-8") as fh:
            text = fh.read()
    rows = json.loads(text)
    mat = np.zeros((len(rows), len(rows)), dtype=complex)
    for j, row in enumerate(rows):
        if len(row) != len(rows):
            raise UsageError("omega matrix must be square")
        for k, entry in enumerate(row):
            if isinstance(entry, (list, tuple)):
                if len(entry) != 2:
                    raise UsageError(f"omega entry {entry!r} is not a [re, im] pair")
                mat[j, k] = complex(entry[0], entry[1])
            else:
                mat[j, k] = float(entry)
    if mat.shape != (n, n):
        raise UsageError(f"omega is {mat.shape[0]}x{mat.shape[1]}, tensor needs {n}x{n}")
    try:
        w = Kaehler11(mat)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if not w.is_positive_definite():
        raise UsageError("omega must be positive definite")
    return w


def _emit(text, out_path):
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _finish_report(report, out_path):
    _emit(report.dumps(), out_path)
    return 0 if report.all_passed else 1


# ---------------------------------------------------------------------------
# gen
# ---------------------------------------------------------------------------

def cmd_gen(args):
    w = parse_omega(args.omega, args.n)
    if args.strong_flat:
        if args.he is None:
            raise UsageError("--strong-flat needs --he LAMBDA to fix the slope")
        t = strong_flat_tensor(args.n, args.r, w, args.he)
    elif args.flat:
        t = projectively_flat_tensor(args.n, args.r, args.seed, w=w, lam=args.he)
    else:
        t = random_curvature(args.n, args.r, args.seed)
        if args.he is not None:
            t = project_to_he(t, w, args.he)
    _emit(canonical_json(tensor_to_dict(t)), args.out)
    return 0


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def _load_input(args):
    if not args.infile:
        raise UsageError("this command needs --in PATH")
    return load_tensor(args.infile, symmetrize=args.symmetrize)


def _verify_pushforward(args, report):
    t = _load_input(args)
    tol = args.tol
    ks = [args.k] if args.k is not None else list(range(0, t.n + 1))
    segre = segre_forms(chern_forms(t), t.n)
    for k in ks:
        got = pushforward_segre(t, k, method="exact")
        res = (got - segre[k]).max_abs()
        report.add(f"pushforward_vs_segre_k{k}", res, tol, res <= tol)
    if args.samples:
        # batched Monte Carlo: deviation from the Segre form in stderr units
        batches = 8
        per = max(1, args.samples // batches)
        for k in ks:
            if k == 0:
                continue
            vals = [pushforward_segre(t, k, method="mc", samples=per,
                                      seed=args.seed + 1000 * b)
                    for b in range(batches)]
            keys = set(segre[k].coeffs)
            for v in vals:
                keys |= set(v.coeffs)
            worst = 0.0
            for key in keys:
                batch = np.array([v.coeffs.get(key, 0j) for v in vals])
                err = float(np.std(batch)) / math.sqrt(batches) + 1e-12
                worst = max(worst, abs(batch.mean() - segre[k].coeffs.get(key, 0j)) / err)
            report.add(f"pushforward_mc_k{k}_stderr_units", worst, 4.0, worst <= 4.0)


def _verify_identity8(args, report):
    t = _load_input(args)
    w = parse_omega(args.omega, t.n)
    he, lam = is_hermite_einstein(t, w, HE_DETECT_TOL)
    dirs = sample_directions(t.r, args.samples or 20, args.seed)
    if he:
        worst = max(verify_slope_identity(t, w, v) for v in dirs)
        report.add("identity8_residual_max", {"residual": worst, "slope": lam},
                   args.tol, worst <= args.tol)
    else:
        worst = max(verify_slope_identity_general(t, w, v) for v in dirs)
        report.add("identity8_general_residual_max", worst, args.tol, worst <= args.tol)


def _verify_identity9(args, report):
    t = _load_input(args)
    w = parse_omega(args.omega, t.n)
    dirs = sample_directions(t.r, args.samples or 20, args.seed)
    ks = [args.k] if args.k is not None else list(range(1, t.n + 1))
    for k in ks:
        worst = max(verify_power_identity(t, w, v, k) for v in dirs)
        report.add(f"identity9_residual_max_k{k}", worst, args.tol, worst <= args.tol)


def _verify_moments(args, report):
    from itertools import combinations_with_replacement

    r = args.r or 3
    kmax = args.k if args.k is not None else 3
    for k in range(0, kmax + 1):
        for combo in combinations_with_replacement(range(1, r + 1), k):
            mult = [combo.count(l) for l in range(1, r + 1)]
            gap = moment_wick(MomentSpec(r, combo, combo)) - moment_diagonal(r, mult)
            name = "moment_diag_" + ("".join(map(str, combo)) or "0")
            report.add(name, float(gap), 0.0, gap == 0)
    samples = args.samples or 1_000_000
    specs = [MomentSpec(r, (1,), (1,)), MomentSpec(r, (1, 2), (2, 1)),
             MomentSpec(r, (1, 1), (1, 1)), MomentSpec(r, (1,), (2,))]
    if r >= 3:
        specs.append(MomentSpec(r, (1, 2, 3), (3, 2, 1)))
    for i, spec in enumerate(specs):
        exact = complex(moment_wick(spec))
        est, err = moment_mc(spec, samples, args.seed + i)
        units = abs(est - exact) / (err + 1e-15)
        name = f"moment_mc_l{''.join(map(str, spec.lambdas))}_m{''.join(map(str, spec.mus))}"
        report.add(name, units, 4.0, units <= 4.0)


def cmd_verify(args):
    report = Report("verify " + args.kind,
                    {"in": args.infile, "k": args.k, "samples": args.samples,
                     "seed": args.seed, "tol": args.tol,
                     "omega": args.omega or "euclidean", "r": args.r})
    {"pushforward": _verify_pushforward,
     "identity8": _verify_identity8,
     "identity9": _verify_identity9,
     "moments": _verify_moments}[args.kind](args, report)
    return _finish_report(report, args.out)


# ---------------------------------------------------------------------------
# check
# ---------------------------------------------------------------------------

def cmd_check(args):
    t = _load_input(args)
    w = parse_omega(args.omega, t.n)
    report = Report("check " + args.kind,
                    {"in": args.infile, "tol": args.tol,
                     "omega": args.omega or "euclidean", "ell": args.ell,
                     "samples": args.samples, "seed": args.seed})
    if args.kind == "he":
        he, lam = is_hermite_einstein(t, w, args.tol)
        T = mean_curvature(t, w)
        dev = float(np.abs(T - lam * np.eye(t.r)).max())
        report.add("hermite_einstein", {"deviation": dev, "slope": lam},
                   args.tol, he)
    elif args.kind == "kl":
        res = kl_classical(t, w)
        report.add("kl_nonpositive", res, args.tol, res["q"] <= args.tol)
    elif args.kind == "thm12":
        res = kl_segre(t, w)
        report.add("thm12_margin", res, args.tol, res["margin"] >= -args.tol)
        gap = abs(res["rhs"] - res["rhs_chern"])
        report.add("thm12_rhs_agreement", gap, 1e-10, gap <= 1e-10)
    elif args.kind == "surface":
        res = surface_compare(t, w)
        s2_ratio = res["c1_sq"] - res["c2"]
        report.add("surface_eq4_margin", res,
                   args.tol, res["eq4_rhs"] - s2_ratio >= -args.tol)
    elif args.kind == "remark41":
        res = projective_flat_bound(t, w, margin_tol=args.tol)
        report.add("remark41_bound", res, args.tol, res["holds"])
    elif args.kind == "lhe":
        ell = min(args.ell or 1, t.n)
        level = 0
        ok = True
        for k in range(1, ell + 1):
            prof = gamma_profile(t, w, k, samples=args.samples or 2000, seed=args.seed)
            passed = prof["spread"] <= args.tol
            if ok and passed:
                level = k
            ok = ok and passed
            report.add(f"gamma{k}_spread", prof, args.tol, passed)
        report.add("lhe_level", {"level": level, "requested": ell}, args.tol,
                   level >= ell)
    return _finish_report(report, args.out)


# ---------------------------------------------------------------------------
# moments
# ---------------------------------------------------------------------------

def cmd_moments(args):
    lambdas = tuple(args.lambdas or ())
    mus = tuple(args.mus) if args.mus is not None else lambdas
    spec = MomentSpec(args.r, lambdas, mus)
    report = Report("moments",
                    {"r": args.r, "lambdas": list(spec.lambdas),
                     "mus": list(spec.mus), "samples": args.samples,
                     "seed": args.seed})
    exact = moment_wick(spec)
    report.add("exact",
               {"value": float(exact),
                "fraction": f"{exact.numerator}/{exact.denominator}"},
               0.0, True)
    if args.samples:
        est, err = moment_mc(spec, args.samples, args.seed)
        units = abs(est - complex(exact)) / (err + 1e-15)
        report.add("mc_gap_stderr_units",
                   {"estimate_re": float(est.real), "estimate_im": float(est.imag),
                    "stderr": err, "units": units},
                   4.0, units <= 4.0)
    return _finish_report(report, args.out)


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser():
    parser = argparse.ArgumentParser(
        prog="segreform",
        description="Pointwise curvature toolkit: Chern/Segre forms, sphere moments, "
                    "fiber-integration identities, Kobayashi-Luebke checks.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a curvature tensor JSON instance")
    g.add_argument("n", type=int)
    g.add_argument("r", type=int)
    g.add_argument("seed", type=int)
    g.add_argument("--he", type=float, default=None, metavar="LAMBDA",
                   help="project onto the Hermite-Einstein slice with this slope")
    flat = g.add_mutually_exclusive_group()
    flat.add_argument("--flat", action="store_true",
                      help="projectively flat instance (beta tensor Id)")
    flat.add_argument("--strong-flat", action="store_true",
                      help="omega-proportional flat instance (needs --he)")
    g.add_argument("--omega", default=None)
    g.add_argument("--out", default=None)
    g.set_defaults(func=cmd_gen)

    v = sub.add_parser("verify", help="verify an identity against its oracle")
    v.add_argument("kind", choices=["pushforward", "identity8", "identity9", "moments"])
    v.add_argument("--in", dest="infile", default=None)
    v.add_argument("--k", type=int, default=None)
    v.add_argument("--r", type=int, default=None, help="dimension for kind=moments")
    v.add_argument("--samples", type=int, default=None)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--tol", type=float, default=None)
    v.add_argument("--omega", default=None)
    v.add_argument("--symmetrize", action="store_true",
                   help="symmetrize instead of rejecting non-hermitian input")
    v.add_argument("--out", default=None)
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("check", help="run an inequality / metric check")
    c.add_argument("kind", choices=["he", "kl", "thm12", "surface", "remark41", "lhe"])
    c.add_argument("--in", dest="infile", required=True)
    c.add_argument("--omega", default=None)
    c.add_argument("--tol", type=float, default=None)
    c.add_argument("--ell", type=int, default=None, help="level for kind=lhe")
    c.add_argument("--samples", type=int, default=None)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--symmetrize", action="store_true")
    c.add_argument("--out", default=None)
    c.set_defaults(func=cmd_check)

    m = sub.add_parser("moments", help="evaluate one sphere moment")
    m.add_argument("--r", type=int, required=True)
    m.add_argument("--lambdas", type=int, nargs="*", default=None)
    m.add_argument("--mus", type=int, nargs="*", default=None)
    m.add_argument("--samples", type=int, default=None)
    m.add_argument("--seed", type=int, default=0)
    m.add_argument("--out", default=None)
    m.set_defaults(func=cmd_moments)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if hasattr(args, "tol") and args.tol is None:
        args.tol = _default_tol()
    try:
        return args.func(args)
    except json.JSONDecodeError as exc:
        _print_error("parse", f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}")
        return 2
    except TensorValidationError as exc:
        _print_error("validation", str(exc))
        return 2
    except PreconditionError as exc:
        _print_error("precondition", str(exc))
        return 2
    except (FileNotFoundError, ValueError) as exc:
        _print_error("usage", str(exc))
        return 2


def _print_error(kind, message):
    print(canonical_json({"error": {"type": kind, "message": message}}))


if __name__ == "__main__":
    sys.exit(main())
