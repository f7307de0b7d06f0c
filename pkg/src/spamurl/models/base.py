"""Shared classifier contract, feature standardization, numeric helpers."""

import numpy as np

from ..errors import NonBinaryLabels

PROB_EPS = 1e-12


def clip_proba(p):
    """Clamp probabilities away from 0/1 before any logarithm."""
    return np.clip(p, PROB_EPS, 1.0 - PROB_EPS)


def as_matrix(X):
    X = np.ascontiguousarray(X, dtype=np.float64)
    if X.ndim == 1:
        X = X.reshape(1, -1)
    return X


def check_binary_labels(y):
    y = np.asarray(y)
    if y.size == 0 or not np.isin(y, (0, 1)).all():
        raise NonBinaryLabels()
    return y.astype(np.int64)


def sigmoid(x):
    x = np.asarray(x, dtype=np.float64)
    out = np.empty_like(x)
    pos = x >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-x[pos]))
    ex = np.exp(x[~pos])
    out[~pos] = ex / (1.0 + ex)
    return out


class Standardizer:
    """Column-wise (x - mean) / std with population std.

    Zero-variance columns transform to exactly 0, whatever the input value,
    so constant training features never blow up on shifted query data.
    """

    def fit(self, X):
        X = as_matrix(X)
        self.mean_ = X.mean(axis=0)
        self.std_ = X.std(axis=0)
        return self

    def transform(self, X):
        X = as_matrix(X)
        safe = np.where(self.std_ > 0.0, self.std_, 1.0)
        out = (X - self.mean_) / safe
        out[:, self.std_ == 0.0] = 0.0
        return out


def standardize_fit_apply(train, apply_to):
    """Fit a Standardizer on `train` and return `apply_to` transformed by it."""
    return Standardizer().fit(train).transform(apply_to)


class Classifier:
    """Uniform contract: fit(X, y, seed), predict_score, predict_label.

    predict_score is monotone in spam confidence (a probability where the
    model defines one); predict_label is 1 exactly when the score reaches
    decision_threshold.
    """

    decision_threshold = 0.5

    def fit(self, X, y, seed=0):
        raise NotImplementedError

    def predict_score(self, X):
        raise NotImplementedError

    def predict_label(self, X):
        score = np.asarray(self.predict_score(X))
        return (score >= self.decision_threshold).astype(np.int64)
