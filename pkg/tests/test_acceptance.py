"""Acceptance criteria, one test per criterion.

Each test records a ``PASS``/``FAIL`` line (printed in the pytest terminal
summary, or directly when run as a script).  Tolerances are pinned at
module level.  Two criteria are stated with formulas that do not hold as
written; they are kept verbatim as strict expected failures next to a
companion test for the corrected form.  See the decisions ledger.
"""

import functools
import math
import time

import numpy as np
import pytest

from expdistort.cli import main as cli_main
from expdistort.decomposition import DecompositionContext, bch, tri_compose, tri_decompose
from expdistort.distortion import (classify_distortion, dominates_values, equivalent,
                                   ray_profile, sample_scale, separation_test)
from expdistort.io import fixture_names, load_model
from expdistort.lengths import (LengthFunction, PhiContext, length_max_sym, length_pi,
                                length_pi_sym, nilpotent_word_proxy, phi_build)
from expdistort.lie import quotient_algebra
from expdistort.linalg import Subspace, unit_vec
from expdistort.matrix_group import (dyadic, exp_nilpotent, log_unipotent, relative_distance,
                                     sample_elements)
from expdistort.pi_analysis import (check_nilpotent_image, lower_bound_check, poly_growth_fit)
from expdistort.radicals import (exponential_radical, lower_central_series, nilpotent_radical,
                                 solvable_radical)
from expdistort.scalars import GaussianRational as G
from expdistort.suites import intermediate_subgroups, suite_maximality

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:
    ACCEPTANCE_LINES = []

RADICALS_SECONDS = 1.0
ROUND_TRIP_SAMPLES = 1000
ROUND_TRIP_RTOL = 1e-9
ROUND_TRIP_SECONDS = 10.0
BCH_PAIRS = 1000
SUBADDITIVE_PAIRS = 10_000
SUBADDITIVE_SLACK = 1e-10
HEIS_C_MAX = 10.0
HEIS_SECONDS = 10.0
FILIFORM_C_MAX = 10.0
POWER_TOL = 0.05
SEPARATION_RATIO = 0.05
CPLX_C_MAX = 4.0
CPLX_RADIUS = 1e3


def record(criterion, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {criterion}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def _ctx(m, name):
    return DecompositionContext(m.algebra, m.rep, m.subgroup(name), m.semidirect, m.levi)


# 1 ---------------------------------------------------------------------------

def _radicals(name):
    import io
    import json
    out = io.StringIO()
    assert cli_main(["radicals", name], out=out) == 0
    return json.loads(out.getvalue())["result"]


def test_criterion_1_radicals():
    t0 = time.perf_counter()
    checks = []
    h = _radicals("heisenberg3")
    centre = load_model("heisenberg3").algebra.centre()
    checks.append(h["n"]["dim"] == 1 and h["e"]["dim"] == 0
                  and Subspace(3, [tuple(G.from_quad(q) for q in v) for v in h["n"]["basis"]]) == centre)
    for n in range(4, 9):
        r = _radicals(f"filiform{n}")
        got = Subspace(n, [tuple(G.from_quad(q) for q in v) for v in r["n"]["basis"]])
        m = load_model(f"filiform{n}")
        checks.append(got == Subspace(n, [unit_vec(n, j) for j in range(2, n)]) == m.subgroup("N")
                      and r["e"]["dim"] == 0)
    s = _radicals("sixdim")
    m = load_model("sixdim")
    e = exponential_radical(m.algebra, m.levi)
    e_alg, _ = m.algebra.restrict(e)
    q, _ = quotient_algebra(m.algebra, e)
    fp = (lower_central_series(e_alg).dims, lower_central_series(q).dims)
    checks.append(s["e"]["dim"] == 3 and fp == ((3, 1, 0), (3, 1, 0)))
    elapsed = time.perf_counter() - t0
    ok = all(checks) and elapsed < RADICALS_SECONDS * 7
    record(1, ok, f"heisenberg/filiform4-8/sixdim radicals exact, sixdim fingerprint {fp}, "
                  f"{elapsed:.2f}s for 7 fixtures (< {RADICALS_SECONDS}s each)")
    assert ok


# 2 ---------------------------------------------------------------------------

def test_criterion_2_round_trip():
    worst_all, slowest, ok = 0.0, 0.0, True
    for name in fixture_names():
        m = load_model(name)
        ctx = _ctx(m, "N")
        unipotent = all(m.rep.nilpotency_index(unit_vec(m.algebra.dim, i)) is not None
                        for i in range(m.algebra.dim))
        t0 = time.perf_counter()
        for g in sample_elements(m.rep, 0, ROUND_TRIP_SAMPLES, 1e3):
            t = tri_decompose(g, ctx)
            err = relative_distance(g, tri_compose(t, ctx))
            worst_all = max(worst_all, err)
            ok = ok and err <= ROUND_TRIP_RTOL
            if unipotent:
                ok = ok and t.exact and tuple(t.eta) in ctx.nprime
        slowest = max(slowest, time.perf_counter() - t0)
    ok = ok and slowest < ROUND_TRIP_SECONDS
    record(2, ok, f"{ROUND_TRIP_SAMPLES} samples x {len(fixture_names())} fixtures, worst relative "
                  f"error {worst_all:.2e} (<= {ROUND_TRIP_RTOL}), eta exact in n' on unipotent "
                  f"fixtures, slowest fixture {slowest:.1f}s")
    assert ok


# 3 ---------------------------------------------------------------------------

def test_criterion_3_bch_oracle():
    rng = np.random.default_rng(3)
    bad = 0
    for name in ("heisenberg3", "filiform4", "filiform5"):
        m = load_model(name)
        n = m.algebra.dim
        for _ in range(BCH_PAIRS):
            x = tuple(G(int(c), int(d)) / int(k) for c, d, k in
                      zip(rng.integers(-9, 10, n), rng.integers(-3, 4, n), rng.integers(1, 5, n)))
            y = tuple(G(int(c)) / int(k) for c, k in zip(rng.integers(-9, 10, n), rng.integers(1, 5, n)))
            M = exp_nilpotent(m.rep.rho(x)).dot(exp_nilpotent(m.rep.rho(y)))
            bad += m.rep.preimage(log_unipotent(M)) != bch(m.algebra, x, y)
    ok = bad == 0
    record(3, ok, f"bch == log(exp x exp y) exactly on {3 * BCH_PAIRS} pairs "
                  f"(heisenberg3, filiform4, filiform5); mismatches {bad}")
    assert ok


# 4 ---------------------------------------------------------------------------

def test_criterion_4_subadditivity():
    worst, ok = -math.inf, True
    for name in fixture_names():
        rep = load_model(name).rep
        els = sample_elements(rep, 4, SUBADDITIVE_PAIRS, 1e4)
        other = sample_elements(rep, 5, SUBADDITIVE_PAIRS, 1e4)
        for ell in (length_pi(rep), length_pi_sym(rep)):
            lg, lh = ell.evaluate(els), ell.evaluate(other)
            lgh = ell.evaluate([g * h for g, h in zip(els, other)])
            excess = float(np.max(lgh - lg - lh))
            worst = max(worst, excess)
            ok = ok and excess <= SUBADDITIVE_SLACK
    record(4, ok, f"l_pi and l_pi_sym on {SUBADDITIVE_PAIRS} pairs x {len(fixture_names())} "
                  f"fixtures, max l(gh) - l(g) - l(h) = {worst:.2e} (<= {SUBADDITIVE_SLACK})")
    assert ok


# 5 ---------------------------------------------------------------------------

def test_criterion_5_heisenberg_phi():
    t0 = time.perf_counter()
    m = load_model("heisenberg3")
    phi = phi_build(PhiContext(_ctx(m, "N")))

    def target(g):
        M = g.matrix
        return abs(complex(M[0, 1])) + abs(complex(M[1, 2])) + math.log1p(abs(complex(M[0, 2])))

    samples = sample_elements(m.rep, 1, 2000, 1e6)
    cs = [abs(complex(g.matrix[0, 2])) for g in samples]
    d1, d2 = equivalent(phi, LengthFunction(target, {"op": "target"}), samples)
    elapsed = time.perf_counter() - t0
    ok = (d1.success and d2.success and d1.C <= HEIS_C_MAX and d2.C <= HEIS_C_MAX
          and min(cs) <= 1 and max(cs) >= 1e6 and elapsed < HEIS_SECONDS)
    record(5, ok, f"phi ~ |a|+|b|+log(1+|c|) with C = {d1.C:.3g} / {d2.C:.3g} (<= {HEIS_C_MAX}), "
                  f"|c| in [{min(cs):.2g}, {max(cs):.2g}], {elapsed:.1f}s")
    assert ok


# 6 ---------------------------------------------------------------------------

FILIFORM_WEIGHTS = (1, 1, 2, 3, 4)


@functools.lru_cache(maxsize=None)
def _filiform_setup():
    m = load_model("filiform5")
    samples = sample_elements(m.rep, 2, 1500, 1e6)
    scale = [sample_scale(g) for g in samples]
    phi_vals = {k: phi_build(PhiContext(_ctx(m, f"H{k}"))).evaluate(samples) for k in (2, 3, 4)}
    coords = np.array([[abs(complex(c)) for c in m.rep.preimage(log_unipotent(g.matrix))]
                       for g in samples])
    return scale, phi_vals, coords


def _filiform_check(log_indices):
    scale, phi_vals, coords = _filiform_setup()
    rows, ok = [], True
    for k in (2, 3, 4):
        logs = list(log_indices(k))
        powers = [j for j in range(5) if j not in logs]
        target = np.log1p(coords[:, logs].sum(axis=1)) + sum(
            coords[:, j] ** (1.0 / FILIFORM_WEIGHTS[j]) for j in powers)
        d1 = dominates_values(phi_vals[k], target, scale)
        d2 = dominates_values(target, phi_vals[k], scale)
        good = d1.success and d2.success and max(d1.C, d2.C) <= FILIFORM_C_MAX
        rows.append(f"H{k}:{'ok' if good else 'no'}(C={d1.C:.2g}/{d2.C:.2g})")
        ok = ok and good
    return ok, " ".join(rows)


@pytest.mark.xfail(strict=True, reason="formula as stated puts the logarithm on the quotient "
                                       "coordinates; see the decisions ledger")
def test_criterion_6_filiform_formula_as_stated():
    # log on t_j for j <= k, powers for j > k (1-based, so 0-based j < k)
    ok, detail = _filiform_check(lambda k: range(0, k))
    record(6, ok, f"stated filiform formula vs phi_(H_k): {detail}")
    assert ok


def test_criterion_6_filiform_formula_corrected():
    # log on the H_k coordinates e_k..e_4, powers on e_0..e_(k-1)
    ok, detail = _filiform_check(lambda k: range(k, 5))
    record("6 (corrected indices)", ok, f"filiform formula vs phi_(H_k): {detail}")
    assert ok


# 7 ---------------------------------------------------------------------------

def test_criterion_7_classification():
    m = load_model("heisenberg3")
    v = classify_distortion(ray_profile(length_pi(m.rep), m.rep, (G(0), G(0), G(1))))
    ok = v.kind == "logarithmic" and min(r for k, r in v.residuals.items() if k != "log") > v.threshold
    f = load_model("filiform5")
    wp = nilpotent_word_proxy(_ctx(f, "E"))
    exps = []
    for k in range(5):
        vk = classify_distortion(ray_profile(wp, f.rep, unit_vec(5, k), max_weight=4))
        exps.append(round(vk.exponent, 3))
        ok = ok and vk.kind == "power" and abs(vk.exponent - 1.0 / FILIFORM_WEIGHTS[k]) <= POWER_TOL
    record(7, ok, f"heisenberg l_pi e3-ray {v.kind} (power residuals rejected); filiform5 "
                  f"word-proxy ray exponents {exps} vs 1/w +- {POWER_TOL}")
    assert ok


# 8 ---------------------------------------------------------------------------

def test_criterion_8_strict_distortion():
    rows, ok = [], True
    for name in fixture_names():
        m = load_model(name)
        if not m.rep.is_faithful():
            continue
        for sub, nprime in intermediate_subgroups(m).items():
            if nprime.dim == 0:
                continue
            cert = lower_bound_check(m.rep, nprime)
            fits = [poly_growth_fit(m.rep, v) for v in nprime.basis]
            consts = (cert["c1"], cert["d1"], cert["c2"], cert["d2"])
            good = cert["certified"] and all(map(math.isfinite, consts)) and all(f.polynomial for f in fits)
            ok = ok and good
            rows.append(f"{name}/{sub}:{'ok' if good else 'no'}")
    record(8, ok, "two-sided log bound on l_pi_sym along n' rays: " + " ".join(rows))
    assert ok


# 9 ---------------------------------------------------------------------------

def test_criterion_9_maximality():
    rows, ok = [], True
    for name in ("heisenberg3", "filiform5"):
        rep = suite_maximality(load_model(name), count=1500)
        acc = [mm["name"] for mm in rep["members"] if mm["accepted"]]
        eq = rep["ellprime_equivalent"]
        rows.append(f"{name}: {len(acc)} gated members dominated={rep['ok']} "
                    f"l'~phi C={eq['ellprime_le_phi']['C']:.2g}/{eq['phi_le_ellprime']['C']:.2g}")
        ok = ok and rep["ok"] and "ellprime" in acc
    record(9, ok, "; ".join(rows))
    assert ok


# 10 --------------------------------------------------------------------------

def test_criterion_10_separation():
    m = load_model("filiform5")
    samples = sample_elements(m.rep, 2, 1500, 1e12)
    phis = {k: phi_build(PhiContext(_ctx(m, f"H{k}"))) for k in (2, 3, 4)}
    vals = {k: phis[k].evaluate(samples) for k in phis}
    scale = [sample_scale(g) for g in samples]
    relation = {(i, j): dominates_values(vals[i], vals[j], scale).success
                for i in phis for j in phis}
    # H_i contained in H_j  <=>  phi_(H_j) <~ phi_(H_i)  <=>  i >= j
    expected = {(i, j): i <= j for i in phis for j in phis}
    witness = all(separation_test(m, f"H{a}", f"H{b}", samples)["ok"]
                  for a, b in ((2, 3), (2, 4), (3, 4)))
    # the t_3 coordinate of the stated example is the basis element e2 here
    g = m.rep.letter(unit_vec(5, 2), G(10 ** 6))
    ratio = phis[2](g) / phis[3](g)
    ok = relation == expected and witness and ratio < SEPARATION_RATIO
    got = " ".join(f"H{i}<~H{j}" for (i, j), s in sorted(relation.items()) if s and i != j)
    record(10, ok, f"phi_(Hi) <~ phi_(Hj) exactly for {got}; witness rays ok={witness}; "
                   f"phi_H2/phi_H3 at t=1e6 = {ratio:.4f} (< {SEPARATION_RATIO})")
    assert ok


# 11 --------------------------------------------------------------------------

def _cplx_samples():
    m = load_model("cplx")
    rng = np.random.default_rng(0)
    out = []
    for _ in range(2000):
        r = math.exp(rng.uniform(0, math.log(CPLX_RADIUS)))
        th = rng.uniform(0, 2 * math.pi)
        out.append(m.rep.letter((G(1),), dyadic(r * complex(math.cos(th), math.sin(th)))))
    return m, out


def _maxabs(g):
    z = g.word[0][1]
    return max(abs(float(z.re)), abs(float(z.im)))


def _cplx_check(ell, label):
    m, samples = _cplx_samples()
    d1, d2 = equivalent(ell(m.rep), LengthFunction(_maxabs, {"op": "max|x|,|y|"}), samples)
    ok = d1.success and d2.success and max(d1.C, d2.C) <= CPLX_C_MAX
    return ok, f"{label} vs max(|x|,|y|), |z| <= {CPLX_RADIUS:g}: success {d1.success}/{d2.success}, " \
               f"C = {d1.C:.3g}/{d2.C:.3g} (<= {CPLX_C_MAX})"


@pytest.mark.xfail(strict=True, reason="the sum-symmetrised l_pi vanishes on z = t(1 - i); "
                                       "see the decisions ledger")
def test_criterion_11_cplx_as_stated():
    ok, detail = _cplx_check(length_pi_sym, "l_pi_sym = l(g) + l(g^-1)")
    record(11, ok, detail)
    assert ok


def test_criterion_11_cplx_max_symmetrised():
    ok, detail = _cplx_check(lambda rep: length_max_sym(length_pi(rep)), "max(l(g), l(g^-1))")
    record("11 (max-symmetrised)", ok, detail)
    assert ok


# 12 --------------------------------------------------------------------------

def test_criterion_12_pi_checks():
    rows, ok = [], True
    for name in fixture_names():
        m = load_model(name)
        n = nilpotent_radical(m.algebra, solvable_radical(m.algebra))
        nil = check_nilpotent_image(m.rep, n)["all_nilpotent"]
        poly = all(poly_growth_fit(m.rep, v).polynomial for v in n.basis)
        ok = ok and nil and poly
        rows.append(f"{name}:{'ok' if nil and poly else 'no'}")
    diag = poly_growth_fit(load_model("cplx").rep, (G(1),))
    ok = ok and not diag.polynomial
    record(12, ok, f"nilpotent image + polynomial growth on n: {' '.join(rows)}; e^z ray "
                   f"polynomial={diag.polynomial} (residual {diag.residual:.2f})")
    assert ok


if __name__ == "__main__":
    import sys
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
