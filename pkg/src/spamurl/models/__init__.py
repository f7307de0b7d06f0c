from .bagging import Bagging, BaggingParams, RandomForest, RandomForestParams
from .base import Classifier, Standardizer, standardize_fit_apply
from .boosting import AdaBoost, AdaBoostParams, GradientBoosting, GradientBoostingParams
from .linear import LogisticRegression, LogisticRegressionParams
from .mlp import Mlp, MlpParams
from .naive_bayes import NaiveBayes, NaiveBayesParams, bernoulli_params, multinomial_params
from .neighbors import KNearestNeighbors, KnnParams
from .registry import ALL_FAMILIES, FAMILIES, FittedModel, ModelSpec, build_model, fit_pipeline
from .stacking import Stacking, StackingParams
from .tree import DecisionTree, DecisionTreeParams

__all__ = [
    "ALL_FAMILIES",
    "AdaBoost",
    "AdaBoostParams",
    "Bagging",
    "BaggingParams",
    "Classifier",
    "DecisionTree",
    "DecisionTreeParams",
    "FAMILIES",
    "FittedModel",
    "GradientBoosting",
    "GradientBoostingParams",
    "KNearestNeighbors",
    "KnnParams",
    "LogisticRegression",
    "LogisticRegressionParams",
    "Mlp",
    "MlpParams",
    "ModelSpec",
    "NaiveBayes",
    "NaiveBayesParams",
    "RandomForest",
    "RandomForestParams",
    "Stacking",
    "StackingParams",
    "Standardizer",
    "bernoulli_params",
    "build_model",
    "fit_pipeline",
    "multinomial_params",
    "standardize_fit_apply",
]
