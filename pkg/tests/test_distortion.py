import numpy as np
import pytest
from hypothesis import given, strategies as st

from expdistort.distortion import (RayProfile, classify_distortion, dominates_values, ray_profile)
from expdistort.lengths import length_pi
from expdistort.pi_analysis import default_tgrid
from expdistort.scalars import GaussianRational as G

T = default_tgrid()


def _profile(values, max_weight=4):
    return RayProfile((1,), T, np.asarray(values, dtype=float), 1.0, max_weight)


def test_classify_log():
    v = classify_distortion(_profile(2.0 * np.log1p(T) + 0.5))
    assert v.kind == "logarithmic"


@pytest.mark.parametrize("w", [1, 2, 3, 4])
def test_classify_power(w):
    v = classify_distortion(_profile(3.0 * T ** (1.0 / w) + 1.0))
    assert v.kind == "power" and v.exponent == pytest.approx(1.0 / w, abs=0.05)


def test_classify_bounded_and_other():
    assert classify_distortion(_profile(np.full_like(T, 7.0))).kind == "bounded"
    assert classify_distortion(_profile(T ** 2)).kind == "other"


@given(st.floats(0.01, 100), st.floats(-50, 50), st.sampled_from(["log", 1, 2, 3]))
def test_classify_affine_invariant(a, b, model):
    base = np.log1p(T) if model == "log" else T ** (1.0 / model)
    assert classify_distortion(_profile(base)).kind == classify_distortion(_profile(a * base + b)).kind


def test_heisenberg_pi_ray(models):
    rep = models("heisenberg3").rep
    v = classify_distortion(ray_profile(length_pi(rep), rep, (G(0), G(0), G(1))))
    assert v.kind == "logarithmic"
    assert v.residuals["power:1"] > v.threshold


def test_domination_linear():
    rng = np.random.default_rng(0)
    scale = np.exp(rng.uniform(0, np.log(1e6), 800))
    b = np.log1p(scale)
    d = dominates_values(2 * b + 3, b, scale)
    assert d.success and d.C == pytest.approx(2.0, rel=0.2)
    assert np.all(2 * b + 3 <= d.C * b + d.D + 1e-9)


def test_domination_fails_for_power_vs_log():
    rng = np.random.default_rng(1)
    scale = np.exp(rng.uniform(0, np.log(1e6), 800))
    assert not dominates_values(np.sqrt(scale), np.log1p(scale), scale).success
    assert dominates_values(np.log1p(scale), np.sqrt(scale), scale).success


def test_sixdim_log_of_word_length_is_not_logarithmic(models):
    # composing log(1 + x) with a word-length-class function gives log log on e-rays
    from expdistort.decomposition import DecompositionContext
    from expdistort.lengths import PhiContext, length_compose_f, phi_build
    m = models("sixdim")
    ctx = DecompositionContext(m.algebra, m.rep, m.subgroup("E"), m.semidirect, m.levi)
    phi = phi_build(PhiContext(ctx))
    naive = length_compose_f(phi, "log1p")
    for v in m.subgroup("E").basis:
        assert classify_distortion(ray_profile(phi, m.rep, v)).kind == "logarithmic"
        assert classify_distortion(ray_profile(naive, m.rep, v)).kind == "other"
