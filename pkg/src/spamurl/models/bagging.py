"""Bootstrap-aggregated tree ensembles: plain bagging and random forest.

Member randomness comes from a per-estimator stream derived purely from
(master seed, estimator index), so any single member can be refit in
isolation bit-exactly. Both ensembles aggregate by mean member probability.

Draw order within a member stream is fixed: row sample first, then the
feature sample (bagging) or the per-node subsets (forest, preorder).
When bootstrap is off and the sample fraction is 1, the member sees the
training set unchanged, which makes a single-member ensemble coincide with
its base tree exactly.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from ..seeding import rng_from
from .base import Classifier, as_matrix, check_binary_labels
from .tree import DecisionTreeParams, grow_classification_tree


def _default_bagging_base():
    # conventional ensemble base: unrestricted depth, gini impurity
    return DecisionTreeParams(criterion="gini", max_depth=None)


@dataclass
class BaggingParams:
    n_estimators: int = 140
    bootstrap: bool = True
    max_samples: float = 1.0
    max_features: float = 1.0
    base: DecisionTreeParams = field(default_factory=_default_bagging_base)


@dataclass
class RandomForestParams:
    n_estimators: int = 20
    criterion: str = "gini"
    max_depth: int | None = 23
    features_per_split: int | None = None  # None -> ceil(sqrt(d))
    bootstrap: bool = True
    min_samples_split: int = 2
    min_samples_leaf: int = 1


def _sample_rows(rng, n, fraction, bootstrap):
    size = max(1, math.ceil(fraction * n))
    if bootstrap:
        return rng.integers(0, n, size=size)
    if size >= n:
        return np.arange(n)
    return np.sort(rng.choice(n, size=size, replace=False))


class _MeanOfTrees(Classifier):
    def predict_score(self, X):
        X = as_matrix(X)
        scores = np.vstack([t.predict_value(X) for t in self.trees_])
        return scores.mean(axis=0)


class Bagging(_MeanOfTrees):
    family = "bagging"

    def __init__(self, params=None):
        self.params = params if params is not None else BaggingParams()

    def fit(self, X, y, seed=0):
        X = as_matrix(X)
        y = check_binary_labels(y)
        p = self.params
        n, d = X.shape
        n_feats = max(1, math.ceil(p.max_features * d))
        self.trees_ = []
        for i in range(p.n_estimators):
            rng = rng_from(seed, i)
            rows = _sample_rows(rng, n, p.max_samples, p.bootstrap)
            feats = None
            if n_feats < d:
                feats = rng.choice(d, size=n_feats, replace=False)
            tree = grow_classification_tree(X[rows], y[rows], p.base, static_features=feats)
            self.trees_.append(tree)
        return self


class RandomForest(_MeanOfTrees):
    family = "forest"

    def __init__(self, params=None):
        self.params = params if params is not None else RandomForestParams()

    def fit(self, X, y, seed=0):
        X = as_matrix(X)
        y = check_binary_labels(y)
        p = self.params
        n, d = X.shape
        per_split = p.features_per_split if p.features_per_split is not None else math.ceil(math.sqrt(d))
        tree_params = DecisionTreeParams(
            criterion=p.criterion, max_depth=p.max_depth,
            min_samples_split=p.min_samples_split, min_samples_leaf=p.min_samples_leaf)
        self.trees_ = []
        for i in range(p.n_estimators):
            rng = rng_from(seed, i)
            rows = _sample_rows(rng, n, 1.0, p.bootstrap)
            tree = grow_classification_tree(
                X[rows], y[rows], tree_params,
                features_per_split=min(per_split, d), rng=rng)
            self.trees_.append(tree)
        return self
