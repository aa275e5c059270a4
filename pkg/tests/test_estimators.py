import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.pipeline import make_pipeline

from horizonspec.estimators import HorizonTraceTransformer, SpectralInverter

HOLES = np.array([[1.0, 0.0, 0.0], [5.0, 3.0, 0.0], [1.0, 1.0, 0.0], [2.0, 0.7, 0.0]])


def test_get_set_params_and_clone():
    est = HorizonTraceTransformer(k_max=3, method="numeric", n_modes=40)
    assert est.get_params() == {"k_max": 3, "method": "numeric", "n_modes": 40, "basis_size": None}
    twin = clone(est).set_params(k_max=2)
    assert twin.k_max == 2 and est.k_max == 3


def test_closed_form_traces():
    out = HorizonTraceTransformer(k_max=2).fit_transform(HOLES)
    np.testing.assert_allclose(out[1], [84.0, 90.0, 45.0], rtol=1e-14)


def test_pipeline_recovers_parameters():
    pipe = make_pipeline(HorizonTraceTransformer(k_max=2), SpectralInverter(channel=2))
    out = pipe.fit_transform(HOLES)
    np.testing.assert_allclose(out[:, :2], HOLES[:, :2], rtol=1e-12, atol=1e-15)
    np.testing.assert_allclose(out[1], [5.0, 3.0, 9.0, 360 * np.pi], rtol=1e-12)


def test_two_column_input_means_uncharged():
    out = HorizonTraceTransformer().fit_transform(HOLES[:, :2])
    np.testing.assert_allclose(out, HorizonTraceTransformer().fit_transform(HOLES))


def test_numeric_method():
    out = HorizonTraceTransformer(method="numeric", n_modes=60).fit_transform([[1.0, 0.6]])
    np.testing.assert_allclose(out[0], [3.36, 3.6], rtol=1e-4)


def test_unfitted_and_bad_input():
    with pytest.raises(NotFittedError):
        SpectralInverter().transform([[1.0, 1.0]])
    with pytest.raises(ValueError):
        SpectralInverter(channel=3).fit([[1.0, 1.0]])
    with pytest.raises(ValueError):
        HorizonTraceTransformer(method="bogus").fit(HOLES)
    est = HorizonTraceTransformer().fit(HOLES)
    with pytest.raises(ValueError):
        est.transform(HOLES[:, :2])


def test_feature_names():
    assert list(SpectralInverter().get_feature_names_out()) == ["m", "a", "r_plus", "area"]
