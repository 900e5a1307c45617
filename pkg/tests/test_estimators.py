import numpy as np
import pytest
from sklearn.base import clone

from expdistort.distortion import RayProfile
from expdistort.estimators import (DistortionClassifier, DominationFit, MaximalLengthFunction,
                                   RadicalChain)
from expdistort.exceptions import ValidationError
from expdistort.matrix_group import sample_elements
from expdistort.pi_analysis import default_tgrid


def test_radical_chain_summary():
    est = RadicalChain().fit("sixdim")
    assert est.summary() == {"r": 6, "n": 4, "e": 3, "r_inf": 3, "cartan": 4}


def test_get_params_and_clone():
    est = MaximalLengthFunction(nprime="H3", seed=4)
    assert est.get_params() == {"nprime": "H3", "seed": 4}
    assert clone(est).nprime == "H3"


def test_maximal_length_transform(models):
    m = models("heisenberg3")
    est = MaximalLengthFunction().fit(m)
    els = sample_elements(m.rep, 0, 12, 1e3)
    terms = est.transform(els)
    assert terms.shape == (12, 3)
    assert np.allclose(est.score_samples(els), terms.sum(axis=1))
    assert len(est.decompose(els[:3])) == 3


def test_unfitted_raises():
    with pytest.raises(ValidationError):
        MaximalLengthFunction().transform([])


def test_rejects_foreign_elements(models):
    est = MaximalLengthFunction().fit("heisenberg3")
    with pytest.raises(ValidationError):
        est.transform(sample_elements(models("filiform5").rep, 0, 2, 10))


def test_classifier_and_domination():
    t = default_tgrid()
    profiles = [RayProfile((1,), t, np.log1p(t)), RayProfile((1,), t, np.sqrt(t), max_weight=2)]
    assert DistortionClassifier().fit().predict(profiles) == ["logarithmic", "power"]
    scale = np.logspace(0, 6, 200)
    fit = DominationFit().fit(np.log1p(scale) * 3, np.log1p(scale), scale)
    assert fit.success_ and fit.C_ == pytest.approx(3.0, rel=0.1)
    assert np.all(fit.predict([1.0, 2.0]) >= [3.0, 6.0])
