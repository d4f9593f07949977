import doctest

import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.pipeline import make_pipeline
from sklearn.preprocessing import FunctionTransformer

import densecoding.estimator
from densecoding.estimator import OUTPUT_NAMES, CapacityTransformer
from densecoding.exceptions import ParameterError

from conftest import ALPHA


def test_docstring_example():
    result = doctest.testmod(densecoding.estimator)
    assert result.failed == 0 and result.attempted > 0


def test_params_round_trip():
    est = CapacityTransformer(channel="pd", alpha=0.6, m=0.2, n=0.3, n_jobs=2)
    assert est.get_params() == {"channel": "pd", "alpha": 0.6, "m": 0.2, "n": 0.3, "n_jobs": 2}
    est.set_params(channel="depol")
    assert clone(est).get_params()["channel"] == "depol"


def test_transform_unprotected():
    X = np.array([[0.5, 0.5], [1.0, 0.0]])
    out = CapacityTransformer(channel="ad").fit_transform(X)
    assert out.shape == (2, 4)
    assert out[0, 0] == pytest.approx(0.8842, abs=5e-4)
    assert out[1, 0] == pytest.approx(2.0, abs=1e-12)
    np.testing.assert_array_equal(out[:, 3], [1.0, 1.0])
    np.testing.assert_allclose(out[:, 0], out[:, 1] - out[:, 2], atol=1e-12)


def test_transform_fixed_and_per_row_strengths():
    fixed = CapacityTransformer(channel="ad", m=0.9, n=0.95).fit_transform([[0.5, 0.5]])
    per_row = CapacityTransformer(channel="ad").fit_transform([[0.5, 0.5, 0.9, 0.95]])
    np.testing.assert_array_equal(fixed, per_row)
    assert fixed[0, 0] == pytest.approx(1.7494, abs=5e-4)
    assert fixed[0, 3] == pytest.approx(0.0031921875)


def test_threads_do_not_change_output():
    X = np.array([[lam, mu] for mu in (0, 0.5, 1) for lam in np.linspace(0, 1, 7)])
    a = CapacityTransformer(channel="depol").fit_transform(X)
    b = CapacityTransformer(channel="depol", n_jobs=3).fit_transform(X)
    np.testing.assert_array_equal(a, b)


def test_validation():
    with pytest.raises(NotFittedError):
        CapacityTransformer().transform([[0.5, 0.5]])
    with pytest.raises(ParameterError):
        CapacityTransformer().fit([[0.5, 0.5, 0.5]])
    est = CapacityTransformer().fit([[0.5, 0.5]])
    with pytest.raises(ParameterError):
        est.transform([[0.5, 0.5, 0.1, 0.1]])
    with pytest.raises(ParameterError):
        est.transform([[1.5, 0.5]])
    with pytest.raises(ValueError):
        est.transform([[np.nan, 0.5]])
    with pytest.raises(ParameterError):
        CapacityTransformer(channel="nope").fit([[0.5, 0.5]])
    with pytest.raises(ParameterError):
        CapacityTransformer(m=1.0).fit([[0.5, 0.5]])


def test_pipeline_and_feature_names():
    to_params = FunctionTransformer(lambda t: np.column_stack([np.exp(-t), np.full(len(t), 0.5)]))
    pipe = make_pipeline(to_params, CapacityTransformer(channel="ad", alpha=ALPHA))
    out = pipe.fit_transform(np.array([[0.0], [np.log(2.0)]]))
    assert out[0, 0] == pytest.approx(2.0, abs=1e-12)
    assert out[1, 0] == pytest.approx(0.8842, abs=5e-4)
    names = CapacityTransformer().fit([[0.5, 0.5]]).get_feature_names_out()
    assert tuple(names) == OUTPUT_NAMES
