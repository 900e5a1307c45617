"""Estimator-style front ends (``fit`` / ``transform`` / ``predict``)."""

import numpy as np
from sklearn.base import BaseEstimator

from .decomposition import DecompositionContext, tri_decompose
from .distortion import classify_distortion, dominates_values
from .lengths import PhiContext, phi_build, phi_terms
from .radicals import (cartan_subalgebra, exponential_radical, lower_central_series,
                       nilpotent_radical, solvable_radical)
from .validation import check_elements, check_is_fitted, check_model, check_subspace


class RadicalChain(BaseEstimator):
    """Solvable, nilpotent and exponential radicals of a model's algebra.

    Parameters
    ----------
    seed : int
        Seed for the Cartan subalgebra search.
    """

    def __init__(self, seed=0):
        self.seed = seed

    def fit(self, model, y=None):
        model = check_model(model)
        alg = model.algebra
        self.r_ = solvable_radical(alg)
        self.n_ = nilpotent_radical(alg, self.r_)
        self.e_ = exponential_radical(alg, model.levi, self.r_, self.n_)
        self.r_inf_ = lower_central_series(alg, self.r_).limit
        self.cartan_ = cartan_subalgebra(alg, self.r_, seed=self.seed)
        return self

    def summary(self):
        check_is_fitted(self, "r_")
        return {k: getattr(self, k + "_").dim for k in ("r", "n", "e", "r_inf", "cartan")}


class MaximalLengthFunction(BaseEstimator):
    """The function ``phi`` for an intermediate subgroup ``nprime``.

    ``transform`` returns the three terms per element, ``score_samples``
    their sum.
    """

    def __init__(self, nprime="N", seed=0):
        self.nprime = nprime
        self.seed = seed

    def fit(self, model, y=None):
        model = check_model(model, require_rep=True)
        sub = check_subspace(model, self.nprime)
        self.model_ = model
        self.context_ = DecompositionContext(model.algebra, model.rep, sub, model.semidirect,
                                             model.levi, seed=self.seed)
        self.phi_context_ = PhiContext(self.context_)
        self.phi_ = phi_build(self.phi_context_)
        return self

    def transform(self, elements):
        check_is_fitted(self, "phi_")
        elements = check_elements(elements, self.model_.rep)
        return np.array([phi_terms(self.phi_context_, g) for g in elements]).reshape(len(elements), 3)

    def score_samples(self, elements):
        return self.transform(elements).sum(axis=1)

    def decompose(self, elements):
        check_is_fitted(self, "context_")
        return [tri_decompose(g, self.context_) for g in check_elements(elements, self.model_.rep)]


class DistortionClassifier(BaseEstimator):
    """Classify ray profiles as logarithmic / power / bounded / other."""

    def __init__(self, threshold=0.02):
        self.threshold = threshold

    def fit(self, profiles=None, y=None):
        self.fitted_ = True
        return self

    def predict(self, profiles):
        return [classify_distortion(p, self.threshold).kind for p in profiles]

    def predict_verdicts(self, profiles):
        return [classify_distortion(p, self.threshold) for p in profiles]


class DominationFit(BaseEstimator):
    """Fit ``a <= C b + D`` with the scale-stratified slope test."""

    def __init__(self, slope_threshold=0.15, strata=8, top_quantile=0.75):
        self.slope_threshold = slope_threshold
        self.strata = strata
        self.top_quantile = top_quantile

    def fit(self, a, b, scale):
        d = dominates_values(a, b, scale, self.slope_threshold, self.strata, self.top_quantile)
        self.result_ = d
        self.C_, self.D_, self.success_, self.slope_ = d.C, d.D, d.success, d.slope
        return self

    def predict(self, b):
        check_is_fitted(self, "C_")
        return self.C_ * np.asarray(b, dtype=float) + self.D_
