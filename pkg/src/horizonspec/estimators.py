"""scikit-learn compatible wrappers around the forward and inverse maps.

Rows are black holes. :class:`HorizonTraceTransformer` maps (m, a, e) to
Green's traces and :class:`SpectralInverter` maps traces back to
(m, a, r_plus, area), so the two compose in a ``Pipeline``.
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from . import horizon, inverse


class HorizonTraceTransformer(TransformerMixin, BaseEstimator):
    """(m, a, e) rows -> [gamma_0, gamma_1, ..., gamma_{k_max}] rows.

    Parameters
    ----------
    k_max : int
        Highest equivariant channel to report.
    method : {"closed_form", "numeric"}
        ``numeric`` sums computed eigenvalues with a tail correction.
    n_modes : int
        Eigenvalues per channel for ``method="numeric"``.
    basis_size : int or None
        Galerkin basis size; None means ``2 * n_modes + 16``.
    """

    def __init__(self, k_max=1, method="closed_form", n_modes=60, basis_size=None):
        self.k_max = k_max
        self.method = method
        self.n_modes = n_modes
        self.basis_size = basis_size

    def fit(self, X, y=None):
        X = check_array(X, ensure_min_features=2)
        if X.shape[1] > 3:
            raise ValueError(f"expected columns (m, a[, e]), got {X.shape[1]} columns")
        if self.method not in ("closed_form", "numeric"):
            raise ValueError(f"unknown method {self.method!r}")
        self.n_features_in_ = X.shape[1]
        return self

    def transform(self, X):
        check_is_fitted(self, "n_features_in_")
        X = check_array(X)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(f"X has {X.shape[1]} features, expected {self.n_features_in_}")
        out = np.empty((X.shape[0], self.k_max + 1))
        channels = tuple(range(1, self.k_max + 1))
        for i, row in enumerate(X):
            params = horizon.PhysicalParams(*map(float, row))
            shape = horizon.smarr_from_physical(params)
            if self.method == "numeric":
                traces, _ = inverse.numeric_traces(shape, channels, self.n_modes, self.basis_size)
            else:
                traces = inverse.traces_closed_form(shape, self.k_max)
            out[i, 0] = traces.gamma0
            out[i, 1:] = [traces.equivariant[k] for k in channels]
        return out


class SpectralInverter(TransformerMixin, BaseEstimator):
    """Trace rows [gamma_0, gamma_1, ..., gamma_K] -> [m, a, r_plus, area].

    ``channel`` selects which equivariant column fixes the scale; ``charge``
    is applied to every row.
    """

    def __init__(self, channel=1, charge=0.0):
        self.channel = channel
        self.charge = charge

    def fit(self, X, y=None):
        X = check_array(X, ensure_min_features=2)
        if not 1 <= self.channel < X.shape[1]:
            raise ValueError(f"channel {self.channel} is not a column of X (width {X.shape[1]})")
        self.n_features_in_ = X.shape[1]
        return self

    def transform(self, X):
        check_is_fitted(self, "n_features_in_")
        X = check_array(X)
        out = np.empty((X.shape[0], 4))
        for i, row in enumerate(X):
            traces = inverse.TraceSet(row[0], {k: row[k] for k in range(1, len(row))})
            rep = inverse.physical_from_traces(traces, self.charge, self.channel)
            out[i] = (rep.physical.m, rep.physical.a, rep.r_plus, rep.area)
        return out

    def get_feature_names_out(self, input_features=None):
        return np.array(["m", "a", "r_plus", "area"], dtype=object)
