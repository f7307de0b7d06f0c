"""Bernoulli and multinomial naive Bayes with Laplace smoothing.

Both variants score in log space and normalize the binary posterior with
log-sum-exp. The Bernoulli variant binarizes features at a threshold and
scores presence and absence; the multinomial variant treats feature values
as event counts and requires them non-negative.
"""

from dataclasses import dataclass

import numpy as np

from ..errors import NegativeFeature
from .base import Classifier, as_matrix, check_binary_labels


@dataclass
class NaiveBayesParams:
    variant: str = "bernoulli"
    alpha: float = 10.0
    binarize_threshold: float = 0.0


def bernoulli_params(alpha=10.0, binarize_threshold=0.0):
    return NaiveBayesParams("bernoulli", alpha, binarize_threshold)


def multinomial_params(alpha=1.0):
    return NaiveBayesParams("multinomial", alpha)


class NaiveBayes(Classifier):
    def __init__(self, params=None):
        self.params = params if params is not None else NaiveBayesParams()

    @property
    def family(self):
        return "bnb" if self.params.variant == "bernoulli" else "mnb"

    def fit(self, X, y, seed=0):
        X = as_matrix(X)
        y = check_binary_labels(y)
        p = self.params
        counts = np.array([np.sum(y == 0), np.sum(y == 1)], dtype=np.float64)
        self.log_prior_ = np.log(counts / y.size)
        if p.variant == "bernoulli":
            B = (X > p.binarize_threshold).astype(np.float64)
            on = np.vstack([B[y == 0].sum(axis=0), B[y == 1].sum(axis=0)])
            theta = (on + p.alpha) / (counts[:, None] + 2.0 * p.alpha)
            self.feature_log_prob_ = np.log(theta)
            self.feature_log_neg_prob_ = np.log(1.0 - theta)
        else:
            if (X < 0).any():
                raise NegativeFeature()
            totals = np.vstack([X[y == 0].sum(axis=0), X[y == 1].sum(axis=0)])
            theta = (totals + p.alpha) / (totals.sum(axis=1, keepdims=True) + p.alpha * X.shape[1])
            self.feature_log_prob_ = np.log(theta)
        return self

    def _joint_log_likelihood(self, X):
        X = as_matrix(X)
        if self.params.variant == "bernoulli":
            B = (X > self.params.binarize_threshold).astype(np.float64)
            return self.log_prior_ + B @ self.feature_log_prob_.T + (1.0 - B) @ self.feature_log_neg_prob_.T
        if (X < 0).any():
            raise NegativeFeature()
        return self.log_prior_ + X @ self.feature_log_prob_.T

    def predict_score(self, X):
        jll = self._joint_log_likelihood(X)
        top = jll.max(axis=1)
        log_norm = top + np.log(np.exp(jll - top[:, None]).sum(axis=1))
        return np.exp(jll[:, 1] - log_norm)
