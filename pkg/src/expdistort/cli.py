"""Command line front end.

    expdistort validate  MODEL [--require-rep]
    expdistort radicals  MODEL
    expdistort phi       MODEL --nprime N (--eval COORDS... | --ray NAME)
    expdistort verify    MODEL --suite {pi,distortion,maximality,separation,decomposition}

MODEL is a JSON path or the name of a bundled fixture.  Exit codes:
0 ok, 2 validation error, 3 configuration error, 4 suite failure.
"""

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import __version__
from .decomposition import DecompositionContext
from .distortion import CLASSIFY_THRESHOLD, classify_distortion, ray_profile
from .exceptions import ExpDistortError, SuiteUnknown, ValidationError
from .io import fixture_names, load_model
from .lengths import PhiContext, phi_build, phi_terms
from .pi_analysis import default_tgrid
from .radicals import (cartan_subalgebra, exponential_radical, lower_central_series,
                       nilpotent_radical, solvable_radical)
from .scalars import GaussianRational
from .suites import SUITES, jsonable, run_suite

EXIT_OK, EXIT_VALIDATION, EXIT_CONFIG, EXIT_SUITE = 0, 2, 3, 4


class ConfigError(Exception):
    pass


def _parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("model", help="model JSON path or bundled fixture name")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--tmax", type=float, default=1e6)
    common.add_argument("--grid-points", type=int, default=33)
    common.add_argument("--threshold", type=float, default=CLASSIFY_THRESHOLD)
    common.add_argument("--output", choices=("json", "csv"), default="json")

    p = argparse.ArgumentParser(prog="expdistort", description=__doc__.split("\n")[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("validate", parents=[common], help="check brackets, rep and subgroups")
    v.add_argument("--require-rep", action="store_true")

    sub.add_parser("radicals", parents=[common], help="radical chain and weighted basis")

    ph = sub.add_parser("phi", parents=[common], help="evaluate the maximal length function")
    ph.add_argument("--nprime", default="N")
    g = ph.add_mutually_exclusive_group(required=True)
    g.add_argument("--eval", nargs="+", metavar="COORD",
                   help="word coordinates: NAME=T pairs applied left to right, or 'identity'")
    g.add_argument("--ray", metavar="NAME", help="basis element for a ray profile")

    ve = sub.add_parser("verify", parents=[common], help="run a verification suite")
    ve.add_argument("--suite", required=True)
    ve.add_argument("--nprime", default="N")
    return p


def _tgrid(args):
    if args.tmax <= 1 or args.grid_points < 4:
        raise ConfigError("--tmax must exceed 1 and --grid-points be at least 4")
    return default_tgrid(args.grid_points, 1.0, args.tmax)


def _load(args):
    try:
        return load_model(args.model)
    except FileNotFoundError as exc:
        raise ConfigError(f"{exc}; bundled fixtures: {', '.join(fixture_names())}") from None


def _header(args, model):
    return {"tool": "expdistort", "version": __version__, "command": args.command,
            "model": model.name, "input_sha256": model.digest, "seed": args.seed,
            "thresholds": {"classify": args.threshold, "tmax": args.tmax,
                           "grid_points": args.grid_points}}


def _dims(sub):
    return {"dim": sub.dim, "basis": [[x.to_quad() for x in v] for v in sub.basis]}


def cmd_validate(args, model):
    if args.require_rep and model.rep is None:
        raise ConfigError("model has no representation (--require-rep)")
    model.validate(require_rep=args.require_rep)
    inter = {}
    for name in sorted(model.subgroups):
        try:
            model.check_intermediate(name)
            inter[name] = True
        except ValidationError as exc:
            inter[name] = str(exc)
    return {"valid": True, "intermediate": inter, "has_rep": model.rep is not None}, EXIT_OK


def cmd_radicals(args, model):
    alg = model.algebra
    alg.validate()
    r = solvable_radical(alg)
    n = nilpotent_radical(alg, r)
    e = exponential_radical(alg, model.levi, r, n)
    r_inf = lower_central_series(alg, r).limit
    h = cartan_subalgebra(alg, r, seed=args.seed)
    out = {"r": _dims(r), "n": _dims(n), "e": _dims(e), "r_inf": _dims(r_inf), "cartan": _dims(h)}
    nprime = model.subgroups.get("N", n)
    try:
        ctx = DecompositionContext(alg, None, nprime, model.semidirect, model.levi, seed=args.seed)
        out["v"] = _dims(ctx.v)
        out["weights"] = list(ctx.weighted.weights)
    except ExpDistortError as exc:
        out["v"] = out["weights"] = None
        out["v_error"] = f"{type(exc).__name__}: {exc}"
    out["dims"] = {k: out[k]["dim"] for k in ("r", "n", "e", "r_inf", "cartan")}
    return out, EXIT_OK


def _context(args, model):
    if model.rep is None:
        raise ConfigError("this command needs a representation")
    model.validate()
    model.check_intermediate(args.nprime)
    return DecompositionContext(model.algebra, model.rep, model.subgroup(args.nprime),
                                model.semidirect, model.levi, seed=args.seed)


def _parse_word(model, items):
    if items == ["identity"]:
        return []
    word = []
    for item in items:
        name, sep, t = item.partition("=")
        if not sep:
            raise ConfigError(f"--eval expects NAME=T pairs, got {item!r}")
        i = model.basis_index(name)
        v = tuple(GaussianRational(1 if j == i else 0) for j in range(model.algebra.dim))
        word.append((v, _scalar(t)))
    return word


def _scalar(text):
    text = text.replace(" ", "")
    try:
        return GaussianRational(Fraction(text))
    except ValueError:
        pass
    try:
        return GaussianRational.from_complex(complex(text))
    except ValueError:
        raise ConfigError(f"cannot parse {text!r} as a number") from None


def cmd_phi(args, model):
    ctx = _context(args, model)
    pctx = PhiContext(ctx)
    phi = phi_build(pctx)
    if args.eval is not None:
        g = model.rep.element(_parse_word(model, args.eval))
        terms = phi_terms(pctx, g)
        return {"nprime": args.nprime, "phi": float(sum(terms)),
                "terms": {"eta": terms[0], "xi": terms[1], "l": terms[2]}}, EXIT_OK
    i = model.basis_index(args.ray)
    eta = tuple(GaussianRational(1 if j == i else 0) for j in range(model.algebra.dim))
    maxw = max(ctx.weighted.weights, default=1)
    prof = ray_profile(phi, model.rep, eta, _tgrid(args), maxw)
    verdict = classify_distortion(prof, args.threshold)
    return {"nprime": args.nprime, "ray": args.ray, "verdict": verdict.to_json(),
            "profile": prof, "powers": [1.0 / w for w in range(1, maxw + 1)]}, EXIT_OK


def cmd_verify(args, model):
    if args.suite not in SUITES:
        raise SuiteUnknown(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)}")
    if model.rep is None:
        raise ConfigError("verification suites need a representation")
    model.validate()
    kw = {"seed": args.seed, "tgrid": _tgrid(args), "threshold": args.threshold}
    if args.suite in ("distortion", "maximality"):
        kw["nprime"] = args.nprime
    report = run_suite(model, args.suite, **kw)
    report["suite"] = args.suite
    report["sampled_fit_note"] = "equivalence and domination are sampled fits, not proofs"
    return report, EXIT_OK if report["ok"] else EXIT_SUITE


COMMANDS = {"validate": cmd_validate, "radicals": cmd_radicals, "phi": cmd_phi, "verify": cmd_verify}


def _emit(args, header, body, out):
    if args.output == "csv":
        w = csv.writer(out, lineterminator="\n")
        prof = body.get("profile") if isinstance(body, dict) else None
        if prof is not None:
            for row in prof.to_csv_rows(body["powers"]):
                w.writerow(row)
        else:
            w.writerow(["key", "value"])
            for k, v in sorted(_flatten(jsonable({**header, **body})).items()):
                w.writerow([k, json.dumps(v)])
        return
    if isinstance(body, dict) and "profile" in body:
        prof = body.pop("profile")
        body["profile"] = {"t": prof.tgrid, "value": prof.values}
    out.write(json.dumps(jsonable({**header, "result": body}), sort_keys=True, indent=2) + "\n")


def _flatten(obj, prefix=""):
    out = {}
    if isinstance(obj, dict):
        for k, v in obj.items():
            out.update(_flatten(v, f"{prefix}{k}."))
    elif isinstance(obj, list) and obj and isinstance(obj[0], (dict, list)):
        for i, v in enumerate(obj):
            out.update(_flatten(v, f"{prefix}{i}."))
    else:
        out[prefix.rstrip(".")] = obj
    return out


def main(argv=None, out=None):
    out = sys.stdout if out is None else out
    args = _parser().parse_args(argv)
    try:
        model = _load(args)
        body, code = COMMANDS[args.command](args, model)
    except (ConfigError, SuiteUnknown) as exc:
        msg = exc.args[0] if exc.args else str(exc)
        print(f"configuration error: {msg}", file=sys.stderr)
        return EXIT_CONFIG
    except ValidationError as exc:
        print(f"validation error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    buf = io.StringIO()
    _emit(args, _header(args, model), body, buf)
    out.write(buf.getvalue())
    return code


if __name__ == "__main__":
    sys.exit(main())
