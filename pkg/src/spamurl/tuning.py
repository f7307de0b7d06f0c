"""Random-search hyperparameter tuning scored by cross-validated accuracy.

Trial t draws from a stream derived purely from (seed, t), so trials are
independent, reproducible, and a longer search extends a shorter one with
the same seed without changing its early trials. Failed trials are logged
with their error instead of aborting the search.
"""

import csv
import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import EmptySpace, SpamUrlError
from .evaluation import cross_validate
from .models import ModelSpec
from .models.registry import lookup_family
from .seeding import rng_from


@dataclass(frozen=True)
class Choice:
    values: tuple


@dataclass(frozen=True)
class IntRange:
    lo: int
    hi: int  # inclusive


@dataclass(frozen=True)
class LogUniform:
    lo: float
    hi: float


@dataclass(frozen=True)
class SearchSpace:
    family: str
    dimensions: dict  # parameter name -> distribution, sampled in listed order


def sample_params(space, seed, trial_index):
    """Params object for trial trial_index; pure in (seed, trial_index)."""
    if not space.dimensions:
        raise EmptySpace(f"search space for {space.family!r} has no dimensions")
    rng = rng_from(seed, trial_index)
    sampled = {}
    for name, dist in space.dimensions.items():
        if isinstance(dist, Choice):
            if not dist.values:
                raise EmptySpace(f"empty choice list for {name!r}")
            sampled[name] = dist.values[int(rng.integers(0, len(dist.values)))]
        elif isinstance(dist, IntRange):
            sampled[name] = int(rng.integers(dist.lo, dist.hi + 1))
        elif isinstance(dist, LogUniform):
            sampled[name] = float(math.exp(rng.uniform(math.log(dist.lo), math.log(dist.hi))))
        else:
            raise SpamUrlError(f"unknown distribution type for {name!r}")
    defaults = lookup_family(space.family).default_params()
    return replace(defaults, **sampled), sampled


@dataclass(frozen=True)
class TrialResult:
    trial_index: int
    params: object
    sampled: dict
    fold_accuracies: np.ndarray | None
    mean_accuracy: float | None
    error: str | None


def random_search(data, family, space, n_trials, k, seed):
    """Returns (best TrialResult, full trial log ordered by index)."""
    if n_trials < 1:
        raise SpamUrlError("n_trials must be at least 1")
    trials = []
    for t in range(n_trials):
        params, sampled = sample_params(space, seed, t)
        spec = ModelSpec(family, params)
        try:
            cv = cross_validate(data, spec, k, seed)
            trials.append(TrialResult(t, params, sampled, cv.fold_accuracies, cv.mean_accuracy, None))
        except Exception as exc:  # pathological corners must not kill the search
            trials.append(TrialResult(t, params, sampled, None, None, f"{type(exc).__name__}: {exc}"))
    succeeded = [t for t in trials if t.error is None]
    if not succeeded:
        raise SpamUrlError("all tuning trials failed")
    best = max(succeeded, key=lambda t: (t.mean_accuracy, -t.trial_index))
    return best, trials


def write_trial_log(trials, path):
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(["trial_index", "params", "fold_accuracies", "mean_accuracy", "error"])
        for t in trials:
            params = " ".join(f"{k}={v}" for k, v in t.sampled.items())
            folds = "" if t.fold_accuracies is None else ";".join(repr(a) for a in t.fold_accuracies)
            mean = "" if t.mean_accuracy is None else repr(t.mean_accuracy)
            writer.writerow([t.trial_index, params, folds, mean, t.error or ""])


def default_search_space(family):
    """Per-family spaces centered on the documented default hyperparameters."""
    spaces = {
        "logreg": {"C": LogUniform(1e-2, 1e3), "max_iter": Choice((100, 140, 200))},
        "knn": {"n_neighbors": IntRange(1, 15), "minkowski_p": Choice((1.0, 2.0))},
        "dtree": {"criterion": Choice(("gini", "entropy")), "max_depth": IntRange(5, 30)},
        "bnb": {"alpha": LogUniform(1e-2, 1e2)},
        "mnb": {"alpha": LogUniform(1e-2, 1e2)},
        "mlp": {"l2_alpha": LogUniform(1e-4, 1.0), "learning_rate_init": LogUniform(1e-4, 1e-2)},
        "bagging": {"n_estimators": Choice(tuple(range(20, 201, 20)))},
        "forest": {"n_estimators": IntRange(10, 100), "max_depth": IntRange(10, 30)},
        "adaboost": {"n_estimators": IntRange(30, 150), "learning_rate": LogUniform(0.1, 2.0)},
        "gboost": {
            "n_estimators": IntRange(50, 200),
            "learning_rate": LogUniform(0.05, 1.0),
            "max_depth": IntRange(3, 10),
        },
        "stacking": {"internal_cv_k": IntRange(3, 5)},
    }
    lookup_family(family)
    return SearchSpace(family=family, dimensions=spaces[family])
