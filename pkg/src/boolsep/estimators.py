"""scikit-learn style wrappers.

Truth-table transformers take ``X`` of shape ``(n_tables, 2**n)``: one row per
function, entries in ``{-1, 1}`` (``encoding="pm1"``) or ``{0, 1}`` bits
(``encoding="bits"``), columns in input-index order.  They compose with
:class:`sklearn.pipeline.Pipeline`, ``clone`` and ``get_params``.

:class:`ThresholdFunctionClassifier` is different: its ``X`` is a set of
points of ``{-1,1}**n`` and ``y`` their labels, and ``fit`` decides exactly
whether a degree-``d`` sign representation exists.
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .classify import (
    bent_rows,
    max_sac_order,
    monomials,
    monotone_rows,
    pc_degree_rows,
    plateaued_rows,
)
from .core import MAX_VARS, TruthTable
from .influence import flip_counts_rows, sensitivity_rows
from .lp import SignCertificate, sign_representation
from .spectral import entropy_rows, wht_rows


class NotSeparableError(ValueError):
    """No sign representation of the requested degree exists.

    ``certificate`` holds the exact infeasibility witness.
    """

    def __init__(self, message: str, certificate: SignCertificate):
        super().__init__(message)
        self.certificate = certificate


def check_truth_tables(X, encoding: str = "pm1") -> tuple[np.ndarray, int]:
    """Validate a batch of tables; return ``(bits, n)``.

    Rows must have power-of-two length ``2**n`` with ``1 <= n <= 20``.
    """
    if encoding not in ("pm1", "bits"):
        raise ValueError(f"encoding must be 'pm1' or 'bits', got {encoding!r}")
    X = check_array(X, dtype=None, ensure_2d=True)
    size = X.shape[1]
    n = size.bit_length() - 1
    if size != 1 << n or not 1 <= n <= MAX_VARS:
        raise ValueError(f"each row must hold 2**n entries with 1 <= n <= {MAX_VARS}, got {size}")
    if encoding == "pm1":
        if not np.isin(X, (-1, 1)).all():
            raise ValueError("entries must be -1 or 1 for encoding='pm1'")
        bits = (X == -1).astype(np.uint8)
    else:
        if not np.isin(X, (0, 1)).all():
            raise ValueError("entries must be 0 or 1 for encoding='bits'")
        bits = X.astype(np.uint8)
    return bits, n


class _TableTransformer(TransformerMixin, BaseEstimator):
    def __init__(self, encoding: str = "pm1"):
        self.encoding = encoding

    def fit(self, X, y=None):
        _, n = check_truth_tables(X, self.encoding)
        self.n_vars_ = n
        self.n_features_in_ = 1 << n
        return self

    def _bits(self, X) -> np.ndarray:
        check_is_fitted(self, "n_vars_")
        bits, n = check_truth_tables(X, self.encoding)
        if n != self.n_vars_:
            raise ValueError(f"fitted for n={self.n_vars_} variables, got tables with n={n}")
        return bits


class WalshHadamardTransformer(_TableTransformer):
    """Map tables to integer spectra ``W(S) = 2**n f^(S)`` (columns by mask)."""

    def transform(self, X):
        bits = self._bits(X)
        return wht_rows(1 - 2 * bits.astype(np.int64))

    def inverse_transform(self, W):
        check_is_fitted(self, "n_vars_")
        W = check_array(W, dtype=np.int64)
        back = wht_rows(W) >> self.n_vars_
        if self.encoding == "bits":
            return (back == -1).astype(np.uint8)
        return back

    def get_feature_names_out(self, input_features=None):
        check_is_fitted(self, "n_vars_")
        return np.array([f"W[{m}]" for m in range(1 << self.n_vars_)], dtype=object)


class InfluenceTransformer(_TableTransformer):
    """Per-variable influences, optionally followed by the total.

    With ``as_counts=True`` the output holds integer numerators over
    ``2**n`` (exact); otherwise floats.
    """

    def __init__(self, encoding: str = "pm1", include_total: bool = True, as_counts: bool = False):
        super().__init__(encoding)
        self.include_total = include_total
        self.as_counts = as_counts

    def transform(self, X):
        bits = self._bits(X)
        counts = flip_counts_rows(bits)
        if self.include_total:
            counts = np.hstack([counts, counts.sum(axis=1, keepdims=True)])
        if self.as_counts:
            return counts
        return counts / float(1 << self.n_vars_)

    def get_feature_names_out(self, input_features=None):
        check_is_fitted(self, "n_vars_")
        names = [f"Inf_{i}" for i in range(1, self.n_vars_ + 1)]
        if self.include_total:
            names.append("I")
        return np.array(names, dtype=object)


class BooleanClassProfiler(_TableTransformer):
    """Feature matrix of class memberships and spectral statistics.

    Columns: total influence, average sensitivity, Fourier entropy, bent
    (NaN for odd ``n``), plateaued order (NaN if none), SAC, max SAC order
    (NaN if SAC fails), PC degree, monotone.
    """

    feature_names = ("total_influence", "average_sensitivity", "entropy", "bent", "plateaued_order",
                     "sac", "sac_order", "pc_degree", "monotone")

    def transform(self, X):
        bits = self._bits(X)
        n = self.n_vars_
        W = wht_rows(1 - 2 * bits.astype(np.int64))
        scale = float(1 << n)
        flips = flip_counts_rows(bits)
        sac = (flips == 1 << (n - 1)).all(axis=1)
        pl = plateaued_rows(W, n).astype(np.float64)
        pl[pl < 0] = np.nan
        bent = bent_rows(W, n).astype(np.float64) if n % 2 == 0 else np.full(len(bits), np.nan)
        sac_order = np.full(len(bits), np.nan)
        for r in np.flatnonzero(sac):
            k = max_sac_order(TruthTable(n, bits[r]))
            sac_order[r] = np.nan if k is None else k
        return np.column_stack([
            flips.sum(axis=1) / scale,
            sensitivity_rows(bits).sum(axis=1) / scale,
            entropy_rows(W, n),
            bent,
            pl,
            sac.astype(np.float64),
            sac_order,
            pc_degree_rows(W, n).astype(np.float64),
            monotone_rows(bits).astype(np.float64),
        ])

    def get_feature_names_out(self, input_features=None):
        return np.array(self.feature_names, dtype=object)


class ThresholdFunctionClassifier(ClassifierMixin, BaseEstimator):
    """Exact recogniser for degree-``d`` polynomial threshold labelings.

    ``fit`` finds exact rational coefficients ``coef_`` (monomials in
    ``monomials_`` order, constant first) with ``y = sign(p(x))`` and
    ``sign(0) = -1`` on every training point, or raises
    :class:`NotSeparableError` carrying a Farkas witness.

    Parameters
    ----------
    degree : int, default=1
        Maximum monomial degree; ``1`` recognises linear threshold functions.
    exact_only : bool, default=False
        Skip the floating-point LP and use the rational simplex throughout.
    """

    def __init__(self, degree: int = 1, exact_only: bool = False):
        self.degree = degree
        self.exact_only = exact_only

    def _features(self, X) -> np.ndarray:
        cols = []
        for m in self.monomials_:
            idx = [i for i in range(self.n_features_in_) if m >> i & 1]
            cols.append(np.prod(X[:, idx], axis=1) if idx else np.ones(len(X), dtype=np.int64))
        return np.column_stack(cols).astype(np.int64)

    @staticmethod
    def _check_points(X) -> np.ndarray:
        X = check_array(X, dtype=np.int64)
        if not np.isin(X, (-1, 1)).all():
            raise ValueError("points must have coordinates in {-1, 1}")
        return X

    def fit(self, X, y):
        X = self._check_points(X)
        y = np.asarray(y).ravel()
        if len(y) != len(X):
            raise ValueError("X and y have different lengths")
        if not np.isin(y, (-1, 1)).all():
            raise ValueError("labels must be -1 or 1")
        if not 0 <= self.degree <= X.shape[1]:
            raise ValueError(f"degree must lie in [0, {X.shape[1]}]")
        self.n_features_in_ = X.shape[1]
        self.classes_ = np.array([-1, 1])
        self.monomials_ = tuple(monomials(X.shape[1], self.degree))
        cert = sign_representation(self._features(X), y.astype(np.int64), exact_only=self.exact_only)
        self.certificate_ = cert
        if not cert.member:
            raise NotSeparableError(f"labels are not a degree-{self.degree} threshold function", cert)
        self.coef_ = np.array(cert.weights, dtype=object)
        return self

    def decision_function(self, X):
        check_is_fitted(self, "coef_")
        X = self._check_points(X)
        return self._features(X).astype(object) @ self.coef_

    def predict(self, X):
        return np.where(np.array([v > 0 for v in self.decision_function(X)], dtype=bool), 1, -1)

    @property
    def coef_float_(self) -> np.ndarray:
        return np.array([float(Fraction(c)) for c in self.coef_])
