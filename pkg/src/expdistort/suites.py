"""Verification suites run by ``expdistort verify`` and the acceptance tests."""

import math

import numpy as np

from .decomposition import DecompositionContext, tri_compose, tri_decompose
from .distortion import (CLASSIFY_THRESHOLD, classify_distortion, equivalent,
                         maximality_suite, ray_profile, separation_test)
from .exceptions import NotBetweenRadicals, NotAnIdeal, SuiteUnknown
from .lengths import (PhiContext, ellprime_build, length_compose_f, length_pi,
                      length_pi_sym, length_pullback, nilpotent_word_proxy,
                      phi_build, quotient_map, quotient_proxy)
from .matrix_group import relative_distance, sample_elements
from .pi_analysis import default_tgrid, exdi_verdict, lower_bound_check
from .radicals import exponential_radical

SUITES = ("pi", "distortion", "maximality", "separation", "decomposition")


def intermediate_subgroups(model):
    """Declared subgroups that are valid choices of ``n'``, deduplicated."""
    out, seen = {}, set()
    for name in sorted(model.subgroups):
        sub = model.subgroups[name]
        try:
            model.check_intermediate(name)
        except (NotAnIdeal, NotBetweenRadicals):
            continue
        if sub not in seen:
            seen.add(sub)
            out[name] = sub
    return out


def context(model, nprime, seed=0, prefer=()):
    return DecompositionContext(model.algebra, model.rep, model.subgroup(nprime), model.semidirect,
                                model.levi, seed=seed, prefer=prefer)


def catalog(model, ctx):
    """Length functions expected to be exponentially distorted on ``n'``, plus a power-growth control."""
    rep = model.rep
    e = exponential_radical(model.algebra, model.levi)
    ctx_e = DecompositionContext(model.algebra, rep, e, model.semidirect, model.levi)
    word = nilpotent_word_proxy(ctx_e)
    return [
        length_pi(rep).named("l_pi"),
        length_pi_sym(rep).named("l_pi_sym"),
        ellprime_build(ctx).named("ellprime"),
        length_compose_f(word, "log1p").named("log1p(word proxy)"),
        length_pullback(quotient_proxy, quotient_map(ctx)).named("pullback of quotient proxy"),
        word.named("word proxy"),
    ]


def suite_decomposition(model, seed=0, count=1000, scale=1e3, rtol=1e-9, **_):
    out = {}
    ok = True
    for name in intermediate_subgroups(model):
        ctx = context(model, name, seed)
        worst, exact_eta = 0.0, True
        for g in sample_elements(model.rep, seed, count, scale):
            t = tri_decompose(g, ctx)
            exact_eta = exact_eta and (t.exact or not g.exact)
            worst = max(worst, relative_distance(g, tri_compose(t, ctx)))
        row_ok = worst <= rtol and (exact_eta or not _unipotent(model))
        out[name] = {"worst_relative_error": worst, "exact_eta": exact_eta, "ok": bool(row_ok)}
        ok = ok and row_ok
    return {"ok": bool(ok), "subgroups": out, "samples": count, "scale": scale, "rtol": rtol}


def _unipotent(model):
    from .matrix_group import nilpotency_index
    return all(nilpotency_index(m) is not None for m in model.rep.matrices)


def suite_pi(model, seed=0, tgrid=None, **_):
    verdict = exdi_verdict(model.algebra, model.rep, tgrid=tgrid, seed=seed)
    certs = {}
    if model.rep.is_faithful():
        for name, sub in intermediate_subgroups(model).items():
            certs[name] = lower_bound_check(model.rep, sub, tgrid, seed=seed)
    ok = verdict["verdict"] == "consistent with PI" and all(c["certified"] for c in certs.values())
    return {"ok": bool(ok), "exdi": verdict, "lower_bounds": certs}


def suite_distortion(model, seed=0, tgrid=None, nprime="N", threshold=CLASSIFY_THRESHOLD, **_):
    ctx = context(model, nprime, seed)
    phi = phi_build(PhiContext(ctx))
    maxw = max(ctx.weighted.weights, default=1)
    rows = []
    ok = True
    for v in ctx.nprime.basis:
        verdict = classify_distortion(ray_profile(phi, model.rep, v, tgrid, maxw), threshold)
        good = verdict.kind == "logarithmic"
        rows.append({"direction": [x.to_quad() for x in v], "expect": "logarithmic",
                     "verdict": verdict.to_json(), "ok": good})
        ok = ok and good
    for v, w in zip(ctx.weighted.vectors, ctx.weighted.weights):
        xi = ctx.v.combine(_solve_v(ctx, v))
        if _nilpotent_direction(model, xi):
            verdict = classify_distortion(ray_profile(phi, model.rep, xi, tgrid, maxw), threshold)
            good = verdict.kind == "power" and abs(verdict.exponent - 1.0 / w) <= 0.05
            rows.append({"direction": [x.to_quad() for x in xi], "expect": f"power({1.0 / w:g})",
                         "verdict": verdict.to_json(), "ok": good})
            ok = ok and good
    return {"ok": bool(ok), "nprime": nprime, "rays": rows}


def _solve_v(ctx, z):
    from .linalg import solve
    return solve(ctx.tau_v, z)


def _nilpotent_direction(model, x):
    from .matrix_group import nilpotency_index
    return nilpotency_index(model.rep.rho(x)) is not None


def suite_maximality(model, seed=0, tgrid=None, nprime="N", count=2000, scale=1e6, **_):
    ctx = context(model, nprime, seed)
    phi = phi_build(PhiContext(ctx))
    samples = sample_elements(model.rep, seed, count, scale)
    report = maximality_suite(phi, catalog(model, ctx), samples, model.rep, ctx.nprime, tgrid)
    lp = ellprime_build(ctx)
    d1, d2 = equivalent(lp, phi, samples)
    report["ellprime_equivalent"] = {"ellprime_le_phi": d1.to_json(), "phi_le_ellprime": d2.to_json()}
    report["ok"] = bool(report["ok"] and d1.success and d2.success)
    report["nprime"] = nprime
    return report


def suite_separation(model, seed=0, tgrid=None, count=1500, scale=1e12, **_):
    subs = intermediate_subgroups(model)
    samples = sample_elements(model.rep, seed, count, scale)
    rows = []
    names = sorted(subs)
    for i, a in enumerate(names):
        for b in names[i + 1:]:
            rows.append(separation_test(model, a, b, samples, tgrid, seed))
    return {"ok": all(r["ok"] for r in rows), "pairs": rows}


def run_suite(model, name, **kw):
    fn = {"pi": suite_pi, "distortion": suite_distortion, "maximality": suite_maximality,
          "separation": suite_separation, "decomposition": suite_decomposition}.get(name)
    if fn is None:
        raise SuiteUnknown(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return fn(model, **kw)


def jsonable(obj):
    """Recursively convert numpy scalars/arrays and non-finite floats for JSON output."""
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return jsonable(obj.tolist())
    if isinstance(obj, (np.floating, float)):
        x = float(obj)
        return x if math.isfinite(x) else repr(x)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    return obj


__all__ = ["SUITES", "run_suite", "intermediate_subgroups", "catalog", "context", "jsonable",
           "default_tgrid"]
