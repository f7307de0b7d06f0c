"""Stacked ensemble: meta logistic regression over out-of-fold base scores.

Base models are trained per internal stratified fold to produce leak-free
out-of-fold scores for the meta fit, then refit on the full data for
inference. The meta learner is an effectively unpenalized logistic
regression (C = 1e12) on the raw score matrix.
"""

from dataclasses import dataclass, field

import numpy as np

from ..errors import SpamUrlError
from ..seeding import derive_seed
from .base import Classifier, as_matrix, check_binary_labels
from .linear import LogisticRegression, LogisticRegressionParams


def _default_base_families():
    return ("bagging", "forest", "dtree", "gboost")


@dataclass
class StackingParams:
    base_models: tuple = field(default_factory=_default_base_families)
    internal_cv_k: int = 5


class Stacking(Classifier):
    family = "stacking"

    def __init__(self, params=None):
        self.params = params if params is not None else StackingParams()

    def _base_specs(self):
        from .registry import ModelSpec

        specs = []
        for entry in self.params.base_models:
            specs.append(ModelSpec(entry) if isinstance(entry, str) else entry)
        if not specs:
            raise SpamUrlError("stacking needs at least one base model")
        return specs

    def fit(self, X, y, seed=0):
        from ..dataset import stratified_fold_assignment
        from .registry import fit_pipeline

        X = as_matrix(X)
        y = check_binary_labels(y)
        specs = self._base_specs()
        k = self.params.internal_cv_k
        assign = stratified_fold_assignment(y, k, derive_seed(seed, 0))

        oof = np.empty((X.shape[0], len(specs)))
        for f in range(k):
            train = assign != f
            held = assign == f
            for b, spec in enumerate(specs):
                pipe = fit_pipeline(spec, X[train], y[train], seed=derive_seed(seed, 1, b, f))
                oof[held, b] = pipe.predict_score(X[held])

        self.meta_ = LogisticRegression(LogisticRegressionParams(C=1e12)).fit(oof, y)
        self.base_pipelines_ = [
            fit_pipeline(spec, X, y, seed=derive_seed(seed, 2, b))
            for b, spec in enumerate(specs)
        ]
        return self

    def _base_scores(self, X):
        X = as_matrix(X)
        return np.column_stack([pipe.predict_score(X) for pipe in self.base_pipelines_])

    def predict_score(self, X):
        return self.meta_.predict_score(self._base_scores(X))
