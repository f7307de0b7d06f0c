"""Family registry, model specs, and the standardize-then-fit pipeline.

Scaling policy: logistic regression, k-NN and the MLP see standardized
features; trees, naive Bayes and the tree ensembles see raw features.
Stacking manages its own base pipelines.
"""

from dataclasses import dataclass, replace

from ..errors import SpamUrlError
from .bagging import Bagging, BaggingParams, RandomForest, RandomForestParams
from .base import Standardizer
from .boosting import AdaBoost, AdaBoostParams, GradientBoosting, GradientBoostingParams
from .linear import LogisticRegression, LogisticRegressionParams
from .mlp import Mlp, MlpParams
from .naive_bayes import NaiveBayes, NaiveBayesParams, bernoulli_params, multinomial_params
from .neighbors import KNearestNeighbors, KnnParams
from .stacking import Stacking, StackingParams
from .tree import DecisionTree, DecisionTreeParams


@dataclass(frozen=True)
class Family:
    params_cls: type
    default_params: object  # () -> params instance
    build: object  # params -> Classifier
    needs_scaling: bool


FAMILIES = {
    "logreg": Family(LogisticRegressionParams, LogisticRegressionParams, LogisticRegression, True),
    "knn": Family(KnnParams, KnnParams, KNearestNeighbors, True),
    "dtree": Family(DecisionTreeParams, DecisionTreeParams, DecisionTree, False),
    "bnb": Family(
        NaiveBayesParams, bernoulli_params,
        lambda p: NaiveBayes(replace(p, variant="bernoulli")), False),
    "mnb": Family(
        NaiveBayesParams, multinomial_params,
        lambda p: NaiveBayes(replace(p, variant="multinomial")), False),
    "mlp": Family(MlpParams, MlpParams, Mlp, True),
    "bagging": Family(BaggingParams, BaggingParams, Bagging, False),
    "forest": Family(RandomForestParams, RandomForestParams, RandomForest, False),
    "adaboost": Family(AdaBoostParams, AdaBoostParams, AdaBoost, False),
    "gboost": Family(GradientBoostingParams, GradientBoostingParams, GradientBoosting, False),
    "stacking": Family(StackingParams, StackingParams, Stacking, False),
}

ALL_FAMILIES = tuple(FAMILIES)


@dataclass(frozen=True)
class ModelSpec:
    family: str
    params: object = None

    def resolved_params(self):
        fam = lookup_family(self.family)
        return self.params if self.params is not None else fam.default_params()


def lookup_family(name):
    try:
        return FAMILIES[name]
    except KeyError:
        raise SpamUrlError(f"unknown model family {name!r}; choose from {', '.join(ALL_FAMILIES)}") from None


def build_model(spec):
    fam = lookup_family(spec.family)
    return fam.build(spec.resolved_params())


class FittedModel:
    """A trained model plus the standardizer it was fit behind, if any."""

    def __init__(self, spec, standardizer, model):
        self.spec = spec
        self.standardizer = standardizer
        self.model = model

    @property
    def decision_threshold(self):
        return self.model.decision_threshold

    def _prepare(self, X):
        return self.standardizer.transform(X) if self.standardizer is not None else X

    def predict_score(self, X):
        return self.model.predict_score(self._prepare(X))

    def predict_label(self, X):
        return self.model.predict_label(self._prepare(X))


def fit_pipeline(spec, X, y, seed=0):
    standardizer = None
    if lookup_family(spec.family).needs_scaling:
        standardizer = Standardizer().fit(X)
        X = standardizer.transform(X)
    model = build_model(spec)
    model.fit(X, y, seed=seed)
    return FittedModel(spec, standardizer, model)
