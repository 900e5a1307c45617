"""Checks on the image of the nilpotent radical under a representation.

* nilpotency of ``rho(eta)`` for ``eta`` in ``n`` (exact);
* polynomial growth of ``||exp(t rho(eta))||`` along rays (fitted);
* a witness functional ``f`` with ``<f, 1> = 0``, ``<f, a> = ||a||`` and
  ``<f, a^k> = 0`` for ``k > 1``, which gives the lower bound
  ``log(1 + |eta|) <= l_pi^sym(exp eta) + log(1 + ||f||)``.

Every finite-dimensional matrix algebra satisfies a polynomial identity,
so a faithful matrix fixture is expected to pass.  Only the direction
"PI implies nilpotent image and polynomial growth" is certified; the
converse needs a density hypothesis that matrix data cannot witness.
"""

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import NotNilpotentMatrix, OverflowAtScale, ValidationError, ZeroInput
from .linalg import exact_identity, is_exact, is_zero_matrix, matmul, to_complex, vec
from .matrix_group import nilpotency_index, operator_norm
from .radicals import nilpotent_radical
from .scalars import GaussianRational

POLY_RESIDUAL = 0.1
HALF_SLOPE_GAP = 0.5


def default_tgrid(points=33, tmin=1.0, tmax=1e6):
    return np.logspace(math.log10(tmin), math.log10(tmax), points)


def check_tgrid(tgrid, decades=4):
    t = np.asarray(tgrid, dtype=float)
    if t.ndim != 1 or len(t) < 4 or np.any(np.diff(t) <= 0) or t[0] <= 0:
        raise ValidationError("t-grid must be positive and strictly increasing")
    if math.log10(t[-1] / t[0]) < decades - 1e-9:
        raise ValidationError(f"t-grid spans fewer than {decades} decades")
    return t


def _random_combinations(basis, seed, count):
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count if len(basis) > 1 else 0):
        coeffs = rng.integers(-3, 4, size=len(basis))
        v = None
        for c, b in zip(coeffs, basis):
            term = tuple(GaussianRational(int(c)) * x for x in b)
            v = term if v is None else tuple(p + q for p, q in zip(v, term))
        if any(v):
            out.append(v)
    return out


def check_nilpotent_image(rep, nbasis, seed=0, combinations=8):
    """Exact nilpotency of ``rho(eta)`` on basis vectors and seeded combinations."""
    vectors = list(nbasis.basis) + _random_combinations(nbasis.basis, seed, combinations)
    rows = []
    for v in vectors:
        idx = nilpotency_index(rep.rho(v))
        rows.append({"vector": [x.to_quad() for x in v], "nilpotent": idx is not None, "index": idx})
    return {"all_nilpotent": all(r["nilpotent"] for r in rows), "directions": rows,
            "max_index": max((r["index"] or 0 for r in rows), default=0)}


def ray_log_norms(rep, eta, tgrid):
    """``log ||exp(t rho(eta))||`` on the grid; exact data where possible."""
    from .decomposition import exp_vector

    out = []
    for t in tgrid:
        v = exp_vector(rep, eta, GaussianRational(float(t))).log_norm()
        if not math.isfinite(v):
            raise OverflowAtScale(float(tgrid[len(out) - 1]) if out else 0.0)
        out.append(v)
    return np.array(out)


@dataclass(frozen=True)
class GrowthFit:
    C: float
    alpha: float
    residual: float
    alpha_low: float
    alpha_high: float
    polynomial: bool

    def to_json(self):
        return {"C": self.C, "alpha": self.alpha, "residual": self.residual,
                "alpha_low": self.alpha_low, "alpha_high": self.alpha_high,
                "polynomial": self.polynomial}


def _fit(x, y):
    A = np.stack([x, np.ones_like(x)], axis=1)
    (alpha, logc), *_ = np.linalg.lstsq(A, y, rcond=None)
    resid = float(np.sqrt(np.mean((A @ [alpha, logc] - y) ** 2)))
    return float(alpha), float(logc), resid


def poly_growth_fit(rep, eta, tgrid=None, threshold=POLY_RESIDUAL):
    """Fit ``log ||exp(t rho(eta))|| ~ alpha log(1 + |t eta|) + log C``.

    ``|eta|`` is ``||rho(eta)||``.  The verdict is polynomial when the RMS
    residual is below ``threshold`` and the slopes fitted on the two grid
    halves differ by at most ``HALF_SLOPE_GAP``.
    """
    t = check_tgrid(default_tgrid() if tgrid is None else tgrid)
    y = ray_log_norms(rep, eta, t)
    size = operator_norm(rep.rho(eta))
    x = np.log1p(t * size)
    alpha, logc, resid = _fit(x, y)
    h = len(t) // 2
    lo, _, _ = _fit(x[:h + 1], y[:h + 1])
    hi, _, _ = _fit(x[h:], y[h:])
    poly = resid <= threshold and abs(hi - lo) <= HALF_SLOPE_GAP
    return GrowthFit(math.exp(logc), alpha, resid, lo, hi, bool(poly))


def exdi_verdict(alg, rep, nbasis=None, tgrid=None, seed=0):
    """Nilpotent image plus polynomial growth on ``n`` (or a supplied subspace)."""
    nb = nilpotent_radical(alg) if nbasis is None else nbasis
    nil = check_nilpotent_image(rep, nb, seed=seed)
    fits = [poly_growth_fit(rep, v, tgrid) for v in nb.basis]
    ok = nil["all_nilpotent"] and all(f.polynomial for f in fits)
    return {
        "verdict": "consistent with PI" if ok else "inconsistent with PI",
        "nilpotent_image": nil,
        "growth": [f.to_json() for f in fits],
        "note": "finite-dimensional matrix algebras satisfy a polynomial identity; "
                "only the forward implication is certified",
    }


@dataclass(frozen=True)
class WitnessFunctional:
    """``<f, X> = sum_ij F_ij X_ij``; ``norm`` is the dual (nuclear) norm of ``F``."""

    F: np.ndarray
    norm: float
    index: int
    a_norm: float

    def pair(self, X):
        X = to_complex(X) if is_exact(X) else np.asarray(X, dtype=complex)
        return complex(np.sum(self.F * X))


def witness_functional(a, check_tol=1e-9):
    """Least-norm ``F`` with ``<F, 1> = 0``, ``<F, a> = ||a||``, ``<F, a^k> = 0`` (``k > 1``)."""
    exact = is_exact(a)
    if exact:
        if is_zero_matrix(a):
            raise ZeroInput("witness functional of the zero matrix")
        m = nilpotency_index(a)
        if m is None:
            raise NotNilpotentMatrix("witness functional needs a nilpotent matrix")
        powers, P = [], exact_identity(a.shape[0])
        for _ in range(m):
            powers.append(P)
            P = matmul(P, a)
        M = np.array([[complex(v) for v in p.flat] for p in powers])
        F_unit = _exact_least_norm(powers)
        ac = to_complex(a)
    else:
        ac = np.asarray(a, dtype=complex)
        if not np.any(ac):
            raise ZeroInput("witness functional of the zero matrix")
        d = ac.shape[0]
        powers, P = [], np.eye(d, dtype=complex)
        scale = max(np.abs(ac).max(), 1.0)
        while np.abs(P).max() > 1e-12 * scale ** len(powers):
            powers.append(P)
            P = P @ ac
            if len(powers) > d:
                raise NotNilpotentMatrix("witness functional needs a nilpotent matrix")
        m = len(powers)
        M = np.array([p.ravel() for p in powers])
        rhs = np.zeros(m, dtype=complex)
        rhs[1] = 1.0
        F_unit = np.linalg.lstsq(M, rhs, rcond=None)[0].reshape(ac.shape)
    anorm = operator_norm(ac)
    F = F_unit * anorm
    wf = WitnessFunctional(F, float(np.linalg.norm(F, "nuc")), m, anorm)
    # <f, e^a> = sum_k <f, a^k>/k! = ||a||
    e_a = sum(p / math.factorial(k) for k, p in enumerate(M.reshape((m,) + ac.shape)))
    if abs(wf.pair(e_a) - anorm) > check_tol * max(anorm, 1.0):
        raise ValidationError("witness functional failed its <f, e^a> = ||a|| check")
    return wf


def _exact_least_norm(powers):
    """``conj(M)^T (M conj(M)^T)^-1 e_1`` over the Gaussian rationals."""
    from .linalg import solve

    rows = [tuple(p.flat) for p in powers]
    m = len(rows)
    conj_rows = [tuple(v.conjugate() for v in r) for r in rows]
    gram_cols = [tuple(sum((x * y for x, y in zip(rows[i], conj_rows[j]) if x and y), GaussianRational(0))
                       for i in range(m)) for j in range(m)]
    target = tuple(GaussianRational(1 if i == 1 else 0) for i in range(m))
    y = solve(gram_cols, target)
    flat = [sum((y[j] * conj_rows[j][k] for j in range(m) if y[j]), GaussianRational(0))
            for k in range(len(rows[0]))]
    d = powers[0].shape[0]
    return np.array([complex(v) for v in flat]).reshape(d, d)


def lower_bound_check(rep, nprime, tgrid=None, seed=0, combinations=4):
    """Two-sided certificate ``c1 log(1+|eta|) - d1 <= l_pi^sym(exp eta) <= c2 log(1+|eta|) + d2``.

    Runs along rays ``t * eta`` for the basis of ``nprime`` and a few
    seeded combinations.  The lower bound uses ``c1 = 1`` and
    ``d1 = max log(1 + ||f||)`` from the witness functionals.  For the
    upper bound ``c2`` is the largest slope fitted on the whole grid or its
    upper half, and ``d2`` the smallest offset that makes it hold on every
    sample.  A ray counts as certified when the lower bound holds and the
    slopes of the two grid halves agree within ``HALF_SLOPE_GAP`` (which
    rules out exponential growth).  The single-power verdict of
    :func:`poly_growth_fit` is reported per ray alongside.
    """
    from .decomposition import exp_vector

    t = check_tgrid(default_tgrid() if tgrid is None else tgrid)
    directions = list(nprime.basis) + _random_combinations(nprime.basis, seed, combinations)
    h = len(t) // 2
    rays, xs_all, ys_all = [], [], []
    for v in directions:
        wf = witness_functional(rep.rho(v))
        xs, ys = [], []
        for s in t:
            g = exp_vector(rep, v, GaussianRational(float(s)))
            ys.append(g.log_norm() + g.inverse().log_norm())
            xs.append(math.log1p(s * wf.a_norm))
        xs, ys = np.array(xs), np.array(ys)
        margin = ys + math.log1p(wf.norm) - xs
        lo = _fit(xs[:h + 1], ys[:h + 1])[0]
        hi = _fit(xs[h:], ys[h:])[0]
        full = _fit(xs, ys)[0]
        fit = poly_growth_fit(rep, v, t)
        rays.append({"vector": [x.to_quad() for x in vec(v)], "f_norm": wf.norm,
                     "min_margin": float(margin.min()), "holds": bool(margin.min() >= -1e-9),
                     "slope": max(full, hi), "stable": abs(hi - lo) <= HALF_SLOPE_GAP,
                     "single_power_fit": fit.to_json()})
        xs_all.append(xs)
        ys_all.append(ys)
    c1 = 1.0
    d1 = max((math.log1p(r["f_norm"]) for r in rays), default=0.0)
    c2 = max((r["slope"] for r in rays), default=0.0)
    d2 = max((float(np.max(y - c2 * x)) for x, y in zip(xs_all, ys_all)), default=0.0)
    ok = all(r["holds"] and r["stable"] for r in rays) and all(map(math.isfinite, (d1, c2, d2)))
    return {"certified": bool(ok), "c1": c1, "d1": d1, "c2": float(c2), "d2": max(d2, 0.0), "rays": rays}


__all__ = [
    "default_tgrid", "check_nilpotent_image", "poly_growth_fit", "exdi_verdict",
    "witness_functional", "lower_bound_check", "GrowthFit", "WitnessFunctional",
]
