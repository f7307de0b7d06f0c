"""Boosted additive models: real-valued stump boosting and gradient boosting.

AdaBoost here is the real-valued (probability-based) variant: each round
fits a depth-1 stump to the weighted data, its contribution per example is
learning_rate * 0.5 * ln(p / (1 - p)) of the stump's weighted positive
probability (clipped), example weights are multiplied by
exp(-learning_rate * z * h) with z in {-1, +1} and renormalized, and the
final score is the sigmoid of the additive sum.

Gradient boosting fits squared-error regression trees to the residual
y - sigmoid(F), starting from the base-rate log-odds; each leaf takes the
one-step update sum(y - p) / sum(p (1 - p)) over its members with the
denominator floored at 1e-12, scaled by the learning rate.
"""

import math
from dataclasses import dataclass

import numpy as np

from .. import kernels
from ..seeding import rng_from
from .base import Classifier, as_matrix, check_binary_labels, clip_proba, sigmoid
from .tree import DecisionTreeParams, grow_classification_tree, grow_tree


@dataclass
class AdaBoostParams:
    n_estimators: int = 90
    learning_rate: float = 1.5


@dataclass
class GradientBoostingParams:
    n_estimators: int = 110
    learning_rate: float = 0.3
    max_depth: int = 9
    subsample: float = 1.0
    min_samples_split: int = 2
    min_samples_leaf: int = 1


def half_log_odds(p):
    """Per-example stump contribution before the learning rate."""
    p = clip_proba(p)
    return 0.5 * np.log(p / (1.0 - p))


class AdaBoost(Classifier):
    family = "adaboost"

    def __init__(self, params=None):
        self.params = params if params is not None else AdaBoostParams()

    def fit(self, X, y, seed=0):
        X = as_matrix(X)
        y = check_binary_labels(y)
        p = self.params
        n = X.shape[0]
        stump_params = DecisionTreeParams(criterion="gini", max_depth=1)
        z = 2.0 * y - 1.0
        w = np.full(n, 1.0 / n)
        self.stumps_ = []
        for _ in range(p.n_estimators):
            stump = grow_classification_tree(X, y, stump_params, sample_weight=w)
            self.stumps_.append(stump)
            h = half_log_odds(stump.predict_value(X))
            w = w * np.exp(-p.learning_rate * z * h)
            w = w / w.sum()
        return self

    def decision_sum(self, X):
        X = as_matrix(X)
        total = np.zeros(X.shape[0])
        for stump in self.stumps_:
            total += self.params.learning_rate * half_log_odds(stump.predict_value(X))
        return total

    def predict_score(self, X):
        return sigmoid(self.decision_sum(X))


class GradientBoosting(Classifier):
    family = "gboost"

    def __init__(self, params=None):
        self.params = params if params is not None else GradientBoostingParams()

    def fit(self, X, y, seed=0):
        X = as_matrix(X)
        y = check_binary_labels(y).astype(np.float64)
        p = self.params
        n = X.shape[0]
        base_rate = float(clip_proba(np.array([y.mean()]))[0])
        self.f0_ = math.log(base_rate / (1.0 - base_rate))
        margin = np.full(n, self.f0_)
        self.trees_ = []
        for i in range(p.n_estimators):
            prob = sigmoid(margin)
            residual = y - prob
            hessian = prob * (1.0 - prob)
            rows = np.arange(n)
            if p.subsample < 1.0:
                rng = rng_from(seed, i)
                size = max(1, int(round(p.subsample * n)))
                rows = np.sort(rng.choice(n, size=size, replace=False))
            tree = grow_tree(
                X[rows], residual[rows], kernels.MSE, p.max_depth,
                p.min_samples_split, p.min_samples_leaf,
                leaf_num=residual[rows], leaf_den=hessian[rows])
            self.trees_.append(tree)
            margin += p.learning_rate * tree.predict_value(X)
        return self

    def decision_sum(self, X):
        X = as_matrix(X)
        total = np.full(X.shape[0], self.f0_)
        for tree in self.trees_:
            total += self.params.learning_rate * tree.predict_value(X)
        return total

    def predict_score(self, X):
        return sigmoid(self.decision_sum(X))
