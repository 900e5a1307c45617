"""Empirical distortion: ray profiles, growth classification, domination fits.

Domination ``la <~ lb`` is asymptotic, so on finite samples it is tested
by scale: the worst ratio ``la / (1 + lb)`` among samples drawn at
sampler scale at most ``T`` is tracked as ``T`` grows.  If that ratio
keeps growing (log-log slope above ``slope_threshold``) no constant ``C``
works and domination fails; otherwise ``C`` is read off the largest
``lb`` stratum and ``D`` is whatever offset the remaining samples need.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .exceptions import OverflowAtScale, WitnessConstructionFailed
from .linalg import solve, vec
from .pi_analysis import check_tgrid, default_tgrid
from .scalars import GaussianRational

CLASSIFY_THRESHOLD = 0.02
SLOPE_THRESHOLD = 0.15
TOP_QUANTILE = 0.75
STRATA = 8


@dataclass
class RayProfile:
    direction: tuple
    tgrid: np.ndarray
    values: np.ndarray
    eta_norm: float = 1.0
    max_weight: int = 8

    @property
    def reference_log(self):
        return np.log1p(self.tgrid * self.eta_norm)

    def power_reference(self, p):
        return self.tgrid ** p

    def to_csv_rows(self, powers=()):
        header = ["t", "value", "log1p"] + [f"t^{p:g}" for p in powers]
        rows = [header]
        for i, t in enumerate(self.tgrid):
            rows.append([repr(float(t)), repr(float(self.values[i])), repr(float(self.reference_log[i]))]
                        + [repr(float(t ** p)) for p in powers])
        return rows


def ray_profile(ell, rep, eta, tgrid=None, max_weight=8):
    """``l(exp(t eta))`` along a log-spaced grid."""
    t = check_tgrid(default_tgrid() if tgrid is None else tgrid)
    eta = vec(eta)
    values = []
    for s in t:
        v = ell(rep.letter(eta, GaussianRational(float(s))))
        if not math.isfinite(v):
            raise OverflowAtScale(float(t[len(values) - 1]) if values else 0.0)
        values.append(v)
    size = float(np.linalg.norm([complex(x) for x in eta]))
    return RayProfile(eta, t, np.array(values), size, max_weight)


@dataclass
class Verdict:
    kind: str
    exponent: float
    residuals: dict
    model: str
    threshold: float

    @property
    def power(self):
        return self.exponent if self.kind == "power" else None

    def to_json(self):
        return {"kind": self.kind, "exponent": self.exponent, "model": self.model,
                "residuals": self.residuals, "threshold": self.threshold}


def _lin_fit(f, v):
    A = np.stack([f, np.ones_like(f)], axis=1)
    coef, *_ = np.linalg.lstsq(A, v, rcond=None)
    return coef, float(np.sqrt(np.mean((A @ coef - v) ** 2)))


def power_models(max_weight):
    return [1.0 / w for w in range(1, max(max_weight, 1) + 1)]


def classify_distortion(profile, threshold=CLASSIFY_THRESHOLD):
    """``logarithmic``, ``power``, ``bounded`` or ``other``.

    Each model ``f`` (``log(1 + t|eta|)`` or ``t^p`` for ``p`` in
    ``{1, 1/2, ..., 1/max_weight}``) is fitted as ``v ~ A f + B`` with
    ``A > 0``; the residual is the RMS error divided by the range of ``v``.
    The best model wins if its residual is below ``threshold``.  The
    reported exponent is the log-log slope on the upper half of the grid.
    """
    t, v = profile.tgrid, profile.values
    span = float(v.max() - v.min())
    if span <= 1e-9 * (1.0 + float(np.abs(v).max())):
        return Verdict("bounded", 0.0, {}, "constant", threshold)
    models = {"log": profile.reference_log}
    for p in power_models(profile.max_weight):
        models[f"power:{p:.6g}"] = profile.power_reference(p)
    residuals = {}
    for name, f in models.items():
        coef, rms = _lin_fit(f, v)
        residuals[name] = rms / span if coef[0] > 0 else math.inf
    best = min(residuals, key=residuals.get)
    h = len(t) // 2
    tail = v[h:]
    if np.all(tail > 0):
        exponent = float(np.polyfit(np.log(t[h:]), np.log(tail), 1)[0])
    else:
        exponent = float("nan")
    if residuals[best] > threshold:
        return Verdict("other", exponent, residuals, best, threshold)
    kind = "logarithmic" if best == "log" else "power"
    return Verdict(kind, exponent, residuals, best, threshold)


@dataclass
class Domination:
    success: bool
    C: float
    D: float
    slope: float
    strata: list = field(default_factory=list)
    thresholds: dict = field(default_factory=dict)

    def to_json(self):
        return {"success": self.success, "C": self.C, "D": self.D, "slope": self.slope,
                "strata": self.strata, "thresholds": self.thresholds}


def sample_scale(g):
    """Sampler scale of an element: the largest ``|t|`` in its construction word."""
    if g.word:
        return max(abs(complex(t)) for _, t in g.word)
    return math.exp(max(g.log_norm(), 0.0))


def dominates_values(a, b, scale, slope_threshold=SLOPE_THRESHOLD, strata=STRATA, top=TOP_QUANTILE):
    """Fit ``a <= C b + D`` on paired samples with their sampler scales.

    ``C_T = max a / (1 + b)`` over samples of scale at most ``T`` is tracked
    on ``strata`` log-spaced values of ``T`` spanning the upper half of the
    scale range.  Domination fails when ``log C_T`` grows against
    ``log T`` with slope above ``slope_threshold``.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    ls = np.log(np.maximum(np.asarray(scale, dtype=float), 1.0))
    thresholds = {"slope": slope_threshold, "strata": strata, "top_quantile": top}
    if a.size == 0 or np.all(a <= 0):
        return Domination(True, 0.0, 0.0, 0.0, [], thresholds)
    q = np.maximum(a, 0.0) / (1.0 + np.maximum(b, 0.0))
    hi = float(ls.max())
    slope = 0.0
    rows = []
    if hi > 0:
        edges = np.linspace(hi / 2, hi, strata)
        xs, ys = [], []
        for e in edges:
            sel = ls <= e + 1e-12
            if np.any(sel):
                c = float(q[sel].max())
                rows.append({"log_scale": float(e), "max_ratio": c, "count": int(sel.sum())})
                if c > 0:
                    xs.append(float(e))
                    ys.append(math.log(c))
        if len(xs) >= 3 and xs[-1] > xs[0]:
            slope = float(np.polyfit(xs, ys, 1)[0])
    success = slope <= slope_threshold
    pos = b > 0
    if np.any(pos):
        cut = np.quantile(b[pos], top)
        sel = pos & (b >= cut)
        C = float(max(np.max(a[sel] / b[sel]), 0.0))
    else:
        C = 0.0
    D = float(max(0.0, np.max(a - C * b)))
    return Domination(bool(success), C, D, slope, rows, thresholds)


def dominates(la, lb, samples, **kw):
    """``la <~ lb`` fitted on ``samples`` (a list of group elements)."""
    scale = [sample_scale(g) for g in samples]
    return dominates_values(la.evaluate(samples), lb.evaluate(samples), scale, **kw)


def equivalent(la, lb, samples, **kw):
    a, b = la.evaluate(samples), lb.evaluate(samples)
    scale = [sample_scale(g) for g in samples]
    return dominates_values(a, b, scale, **kw), dominates_values(b, a, scale, **kw)


def separation_witness(n1, n2, ctx2):
    """A vector of ``n1`` outside ``n2`` lying in the complement ``v2``.

    Any ``eta`` in ``n1`` but not ``n2`` splits as ``eta' + eta''`` with
    ``eta'`` in ``n2`` and ``eta''`` in ``v2``; ``eta''`` is the witness
    and must itself lie in ``n1`` (this depends on ``v2`` preferring
    vectors of ``n1``).
    """
    candidates = (n1 & n2).complement_in(n1).basis
    if not candidates:
        raise WitnessConstructionFailed("n1 is contained in n2")
    b = ctx2.semidirect.b
    basis = list(n2.basis) + list(ctx2.v.basis)
    for eta in candidates:
        c = solve(basis, eta)
        if c is None:
            raise WitnessConstructionFailed(f"n2 + v2 does not contain {eta}")
        eta2 = ctx2.v.combine(c[n2.dim:])
        if eta2 in n1 and eta2 not in n2 and eta2 in b:
            return eta2
    raise WitnessConstructionFailed("no split eta'' lies in n1; v2 does not prefer n1")


def separation_test(model, name1, name2, samples, tgrid=None, seed=0):
    """Compare the maximal functions for two intermediate subgroups."""
    from .decomposition import DecompositionContext
    from .lengths import PhiContext, phi_build

    alg = model.algebra
    n1, n2 = model.subgroup(name1), model.subgroup(name2)
    ctx1 = DecompositionContext(alg, model.rep, n1, model.semidirect, model.levi, seed=seed)
    ctx2 = DecompositionContext(alg, model.rep, n2, model.semidirect, model.levi, seed=seed,
                                prefer=n1.basis)
    phi1, phi2 = phi_build(PhiContext(ctx1)), phi_build(PhiContext(ctx2))
    d21, d12 = equivalent(phi2, phi1, samples)
    out = {"n1": name1, "n2": name2, "n1_in_n2": n1 <= n2, "n2_in_n1": n2 <= n1,
           "phi2_dominated_by_phi1": d21.to_json(), "phi1_dominated_by_phi2": d12.to_json()}
    expected_21 = n1 <= n2
    expected_12 = n2 <= n1
    ok = d21.success == expected_21 and d12.success == expected_12
    if not n1 <= n2:
        eta = separation_witness(n1, n2, ctx2)
        p2 = classify_distortion(ray_profile(phi2, model.rep, eta, tgrid, _max_weight(ctx2)))
        p1 = classify_distortion(ray_profile(phi1, model.rep, eta, tgrid, _max_weight(ctx2)))
        w = _witness_weight(ctx2, eta)
        ray_ok = (p1.kind == "logarithmic" and p2.kind == "power"
                  and abs(p2.exponent - 1.0 / w) <= 0.05)
        out["witness"] = {"eta": [x.to_quad() for x in eta], "weight": w,
                          "phi1_ray": p1.to_json(), "phi2_ray": p2.to_json(), "ok": ray_ok}
        ok = ok and ray_ok
    out["ok"] = bool(ok)
    return out


def _max_weight(ctx):
    return max(ctx.weighted.weights, default=1)


def _witness_weight(ctx, eta):
    z = ctx._q_of_b(eta)
    coords = ctx.weighted.coordinates(z)
    return max(w for c, w in zip(coords, ctx.weighted.weights) if c)


def gate(ell, rep, nprime, tgrid=None, max_weight=8):
    """Accept ``ell`` into a catalog when it grows at most logarithmically on ``n'`` rays."""
    verdicts = [classify_distortion(ray_profile(ell, rep, v, tgrid, max_weight)) for v in nprime.basis]
    ok = all(v.kind in ("bounded", "logarithmic") for v in verdicts)
    return ok, [v.to_json() for v in verdicts]


def maximality_suite(phi, catalog, samples, rep, nprime, tgrid=None):
    """Every gated catalog member must be fitted-dominated by ``phi``."""
    b = phi.evaluate(samples)
    scale = [sample_scale(g) for g in samples]
    members = []
    for ell in catalog:
        accepted, verdicts = gate(ell, rep, nprime, tgrid)
        row = {"name": ell.name, "accepted": accepted, "ray_verdicts": verdicts}
        if accepted:
            d = dominates_values(ell.evaluate(samples), b, scale)
            row["domination"] = d.to_json()
        members.append(row)
    ok = all(m["domination"]["success"] for m in members if m["accepted"])
    return {"ok": bool(ok), "members": members,
            "note": "sampled-fit domination, not a proof of asymptotic domination"}


__all__ = [
    "RayProfile", "ray_profile", "classify_distortion", "Verdict", "Domination", "dominates",
    "dominates_values", "equivalent", "separation_witness", "separation_test", "gate",
    "maximality_suite", "power_models",
]
