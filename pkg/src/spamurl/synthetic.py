"""Synthetic benchmark tasks.

noisy_urlish_task draws 13-column rows shaped like real URL features
(lengths, small counts, flags, an entropy column) and labels them with a
noisy nonlinear rule: threshold bands, flag interactions, and a parity term
that no linear model can express, plus label flips. Tree ensembles beat a
single tree on it, and both beat logistic regression, which is exactly what
it exists to exercise.
"""

import numpy as np

from .seeding import rng_from
from .url_features import FEATURE_NAMES


def sample_urlish_features(n, rng):
    """Rows mimicking the ranges of the 13 URL features (canonical order)."""
    url_length = np.minimum(8 + rng.lognormal(3.2, 0.7, n), 500.0).astype(np.int64)
    num_fragments = rng.poisson(0.15, n)
    contains_hash = (num_fragments >= 1).astype(np.int64)
    has_subscribe = (rng.random(n) < 0.08).astype(np.int64)
    num_digits = rng.poisson(4.0, n)
    non_https = (rng.random(n) < 0.25).astype(np.int64)
    num_words = 1 + rng.poisson(5.0, n)
    entropy = np.minimum(rng.uniform(2.2, 5.4, n), np.log2(np.maximum(url_length, 2)))
    num_params = rng.poisson(1.2, n)
    num_subdomains = rng.poisson(0.8, n)
    num_pct20 = rng.poisson(0.05, n)
    num_at = (rng.random(n) < 0.03).astype(np.int64)
    has_ip = (rng.random(n) < 0.05).astype(np.int64)
    columns = {
        "url_length": url_length,
        "has_subscribe": has_subscribe,
        "contains_hash": contains_hash,
        "num_digits": num_digits,
        "non_https": non_https,
        "num_words": num_words,
        "entropy": entropy,
        "num_params": num_params,
        "num_fragments": num_fragments,
        "num_subdomains": num_subdomains,
        "num_pct20": num_pct20,
        "num_at": num_at,
        "has_ip": has_ip,
    }
    return np.column_stack([columns[name].astype(np.float64) for name in FEATURE_NAMES])


def noisy_urlish_task(n=2000, seed=0, flip_fraction=0.08):
    """(X, y) with the documented noisy nonlinear labeling rule."""
    rng = rng_from(seed)
    X = sample_urlish_features(n, rng)
    cols = {name: X[:, i] for i, name in enumerate(FEATURE_NAMES)}
    score = (
        1.6 * (cols["url_length"] < 60)
        + 2.5 * cols["has_subscribe"]
        + 1.2 * (cols["num_words"] < 5)
        + 1.0 * cols["non_https"]
        + 0.8 * ((cols["num_digits"] >= 6) != (cols["num_params"] >= 2))
        + 0.7 * (cols["entropy"] < 3.4)
        + 1.0 * cols["has_ip"]
    )
    y = (score + rng.normal(0.0, 0.8, n) > 2.6).astype(np.int64)
    flips = rng.random(n) < flip_fraction
    y[flips] = 1 - y[flips]
    return X, y


def linearly_separable(n=200, d=2, margin=1.0, seed=0):
    """Two gaussian blobs separated along the first axis."""
    rng = rng_from(seed)
    y = (rng.random(n) < 0.5).astype(np.int64)
    X = rng.normal(0.0, 1.0, (n, d))
    X[:, 0] += (2.0 * y - 1.0) * (2.0 + margin)
    return X, y
