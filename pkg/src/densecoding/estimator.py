"""scikit-learn style wrapper that maps parameter rows to capacities.

``CapacityTransformer`` is stateless: ``fit`` only records the input width.
Each input row is either ``(lambda, mu)`` or ``(lambda, mu, m, n)``; the
output row is ``(chi, entropy_avg, entropy_state, success_prob)``. This makes
sweeps usable inside pipelines, ``ColumnTransformer`` and the like.
"""

from concurrent.futures import ThreadPoolExecutor
import math
import os

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .channels import ChannelKind, ChannelParams, check_unit_interval
from .exceptions import ParameterError
from .protection import MeasurementStrengths, evaluate

OUTPUT_NAMES = ("chi", "entropy_avg", "entropy_state", "success_prob")


def resolve_threads(n_jobs):
    if n_jobs is None:
        return 1
    if n_jobs == 0:
        return os.cpu_count() or 1
    if n_jobs < 0:
        raise ParameterError("thread count must be non-negative")
    return int(n_jobs)


class CapacityTransformer(TransformerMixin, BaseEstimator):
    """Dense-coding capacity for each row of channel parameters.

    Parameters
    ----------
    channel : {"ad", "pd", "depol"}
        Noise model.
    alpha : float
        ``|00>`` amplitude of the Bell-like resource state.
    m, n : float or None
        Fixed protection strengths used for two-column input. Leave both as
        None for the unprotected pipeline. Four-column input overrides them
        row by row.
    n_jobs : int or None
        Worker threads; 0 means one per CPU. Output order never depends on it.

    Examples
    --------
    >>> import numpy as np
    >>> est = CapacityTransformer(channel="ad")
    >>> float(est.fit_transform(np.array([[1.0, 0.0]]))[0, 0])
    2.0
    """

    def __init__(self, channel="ad", alpha=math.sqrt(0.5), m=None, n=None, n_jobs=None):
        self.channel = channel
        self.alpha = alpha
        self.m = m
        self.n = n
        self.n_jobs = n_jobs

    def _validate_params(self):
        kind = ChannelKind.parse(self.channel)
        check_unit_interval("alpha", self.alpha)
        strengths = None
        if self.m is not None or self.n is not None:
            strengths = MeasurementStrengths(float(self.m or 0.0), float(self.n or 0.0))
        return kind, strengths

    def fit(self, X, y=None):
        self._validate_params()
        X = check_array(X, dtype=np.float64)
        if X.shape[1] not in (2, 4):
            raise ParameterError(
                f"expected 2 columns (lambda, mu) or 4 (lambda, mu, m, n), got {X.shape[1]}"
            )
        self.n_features_in_ = X.shape[1]
        return self

    def _row(self, kind, strengths, row):
        params = ChannelParams(float(row[0]), float(row[1]))
        if len(row) == 4:
            strengths = MeasurementStrengths(float(row[2]), float(row[3]))
        r = evaluate(kind, params, self.alpha, strengths)
        return r.chi, r.entropy_avg, r.entropy_state, r.success_prob

    def transform(self, X):
        check_is_fitted(self, "n_features_in_")
        kind, strengths = self._validate_params()
        X = check_array(X, dtype=np.float64)
        if X.shape[1] != self.n_features_in_:
            raise ParameterError(
                f"X has {X.shape[1]} columns, the transformer was fitted with {self.n_features_in_}"
            )
        threads = resolve_threads(self.n_jobs)
        if threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                rows = list(pool.map(lambda r: self._row(kind, strengths, r), X))
        else:
            rows = [self._row(kind, strengths, r) for r in X]
        return np.asarray(rows, dtype=np.float64).reshape(len(rows), len(OUTPUT_NAMES))

    def get_feature_names_out(self, input_features=None):
        return np.asarray(OUTPUT_NAMES, dtype=object)
