"""Labeled URL dataset: CSV ingestion, splits, folds, exploratory stats.

CSV input is RFC 4180 (header row required); labels accept case-insensitive
true/false/1/0 with spam = 1. Malformed rows (missing fields, blank URL,
unparseable label) are skipped and counted rather than aborting a load.
"""

import csv
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    AllRowsMalformed,
    DegenerateSplit,
    EmptyDataset,
    EmptyUrl,
    MissingColumn,
    SpamUrlError,
    TooFewExamples,
)
from .seeding import rng_from
from .url_features import FEATURE_NAMES, FeatureVector, extract_features, normalize

_TRUE_LABELS = frozenset({"true", "1"})
_FALSE_LABELS = frozenset({"false", "0"})

_COL_LENGTH = FEATURE_NAMES.index("url_length")
_COL_SUBSCRIBE = FEATURE_NAMES.index("has_subscribe")
_COL_NON_HTTPS = FEATURE_NAMES.index("non_https")
_COL_WORDS = FEATURE_NAMES.index("num_words")

LENGTH_BUCKET_WIDTH = 25
LENGTH_BUCKETS = 20  # [0,25) .. [475,500), plus one overflow bucket
WORDS_BUCKETS = 20  # word counts 0..19, plus one overflow bucket


@dataclass(frozen=True)
class LabeledExample:
    url: str
    label: int
    features: FeatureVector


@dataclass(frozen=True)
class LoadSummary:
    total: int
    kept: int
    skipped: int

    def __str__(self):
        return f"rows total={self.total} kept={self.kept} skipped={self.skipped}"


class Dataset:
    """Immutable feature matrix (n x 13), labels {0,1}, and source URLs."""

    feature_names = FEATURE_NAMES

    def __init__(self, urls, X, y):
        self.urls = list(urls)
        self.X = np.ascontiguousarray(X, dtype=np.float64)
        self.y = np.asarray(y, dtype=np.int64)
        if self.X.shape != (len(self.urls), len(FEATURE_NAMES)) or self.y.shape != (len(self.urls),):
            raise SpamUrlError("inconsistent dataset shapes")

    @property
    def n(self):
        return len(self.urls)

    @property
    def n_spam(self):
        return int(self.y.sum())

    @property
    def spam_ratio(self):
        return self.n_spam / self.n

    def subset(self, indices):
        indices = np.asarray(indices)
        return Dataset([self.urls[i] for i in indices], self.X[indices], self.y[indices])

    def example(self, i):
        row = self.X[i]
        values = [float(v) if name == "entropy" else int(v) for name, v in zip(FEATURE_NAMES, row)]
        return LabeledExample(self.urls[i], int(self.y[i]), FeatureVector(*values))


def dataset_from_urls(urls, labels):
    rows = [extract_features(u).as_tuple() for u in urls]
    return Dataset([normalize(u) for u in urls], np.array(rows, dtype=np.float64), labels)


def parse_label(raw):
    """0/1 for a recognized label text, None otherwise."""
    text = raw.strip().lower()
    if text in _TRUE_LABELS:
        return 1
    if text in _FALSE_LABELS:
        return 0
    return None


def load_csv(path, url_column="url", label_column="is_spam"):
    """Read a labeled URL CSV into a Dataset; returns (dataset, load_summary)."""
    with open(path, newline="", encoding="utf-8", errors="replace") as handle:
        reader = csv.DictReader(handle)
        header = reader.fieldnames
        if header is None or url_column not in header:
            raise MissingColumn(url_column)
        if label_column not in header:
            raise MissingColumn(label_column)

        urls, rows, labels = [], [], []
        total = 0
        for record in reader:
            total += 1
            raw_url = record.get(url_column)
            raw_label = record.get(label_column)
            if raw_url is None or raw_label is None:
                continue
            label = parse_label(raw_label)
            if label is None:
                continue
            try:
                features = extract_features(raw_url)
            except EmptyUrl:
                continue
            urls.append(normalize(raw_url))
            rows.append(features.as_tuple())
            labels.append(label)

    if not urls:
        raise AllRowsMalformed(path)
    data = Dataset(urls, np.array(rows, dtype=np.float64), labels)
    return data, LoadSummary(total=total, kept=len(urls), skipped=total - len(urls))


@dataclass(frozen=True)
class SplitConfig:
    test_fraction: float = 0.2
    seed: int = 0
    stratified: bool = True


def _round_half_up(x):
    return int(math.floor(x + 0.5))


def train_test_split(data, cfg):
    """Deterministic (train, test) partition; stratified keeps the class
    ratio within one example per class."""
    n = data.n
    n_test = _round_half_up(n * cfg.test_fraction)
    if n < 2 or n_test == 0 or n_test == n:
        raise DegenerateSplit(f"cannot split n={n} with test_fraction={cfg.test_fraction}")
    rng = rng_from(cfg.seed)

    if cfg.stratified:
        class_idx = [np.flatnonzero(data.y == c) for c in (0, 1)]
        if any(idx.size == 0 for idx in class_idx):
            raise DegenerateSplit("stratified split requires both classes")
        quota = [idx.size * cfg.test_fraction for idx in class_idx]
        take = [int(math.floor(q)) for q in quota]
        # distribute the remainder by largest fractional part, class 0 on ties
        order = sorted((0, 1), key=lambda c: (-(quota[c] - take[c]), c))
        for c in order:
            if sum(take) >= n_test:
                break
            take[c] += 1
        picks = []
        for c in (0, 1):
            perm = class_idx[c][rng.permutation(class_idx[c].size)]
            picks.append(perm[: take[c]])
        test_idx = np.sort(np.concatenate(picks))
    else:
        test_idx = np.sort(rng.permutation(n)[:n_test])

    mask = np.zeros(n, dtype=bool)
    mask[test_idx] = True
    train_idx = np.flatnonzero(~mask)
    return data.subset(train_idx), data.subset(test_idx)


@dataclass(frozen=True)
class FoldPlan:
    k: int
    fold_assignment: np.ndarray
    seed: int


def stratified_fold_assignment(y, k, seed):
    """Fold index per example; folds are disjoint, cover everything, and
    per-fold class counts stay within 1 of perfect proportionality.

    Each class needs at least 2 examples so no training fold can lose a
    class entirely; leave-one-out on balanced data is therefore allowed.
    """
    y = np.asarray(y)
    n = y.size
    if k < 2:
        raise SpamUrlError(f"need at least 2 folds, got k={k}")
    if k > n:
        raise SpamUrlError(f"k={k} folds exceed {n} examples")
    rng = rng_from(seed)
    assign = np.empty(n, dtype=np.int64)
    fold_sizes = np.zeros(k, dtype=np.int64)
    for c in (0, 1):
        idx = np.flatnonzero(y == c)
        if idx.size < 2:
            raise TooFewExamples(c, k)
        perm = idx[rng.permutation(idx.size)]
        counts = np.full(k, idx.size // k, dtype=np.int64)
        remainder = idx.size % k
        if remainder:
            smallest = np.lexsort((np.arange(k), fold_sizes))[:remainder]
            counts[smallest] += 1
        dealt = 0
        for f in range(k):
            assign[perm[dealt : dealt + counts[f]]] = f
            dealt += counts[f]
        fold_sizes += counts
    return assign


def stratified_kfold(data, k, seed):
    return FoldPlan(k=k, fold_assignment=stratified_fold_assignment(data.y, k, seed), seed=seed)


@dataclass(frozen=True)
class EdaReport:
    n_total: int
    n_spam: int
    spam_ratio: float
    length_histogram: np.ndarray
    subscribe_count: int
    subscribe_spam_count: int
    non_https_count: int
    non_https_spam_count: int
    words_histogram_by_class: np.ndarray  # shape (2, WORDS_BUCKETS + 1)

    def to_text(self):
        lines = [
            f"total urls: {self.n_total}",
            f"spam urls: {self.n_spam} ({self.spam_ratio:.4f})",
            f"contain 'subscribe': {self.subscribe_count} ({self.subscribe_spam_count} spam)",
            f"not https: {self.non_https_count} ({self.non_https_spam_count} spam)",
            "url length histogram (bucket width 25, last bucket 500+):",
        ]
        lines.append("  " + " ".join(str(int(v)) for v in self.length_histogram))
        lines.append("word count histogram by class (counts 0..19, last bucket 20+):")
        lines.append("  ham:  " + " ".join(str(int(v)) for v in self.words_histogram_by_class[0]))
        lines.append("  spam: " + " ".join(str(int(v)) for v in self.words_histogram_by_class[1]))
        return "\n".join(lines)


def eda_report(data):
    if data.n == 0:
        raise EmptyDataset("cannot analyze an empty dataset")
    lengths = data.X[:, _COL_LENGTH].astype(np.int64)
    length_hist = np.bincount(
        np.minimum(lengths // LENGTH_BUCKET_WIDTH, LENGTH_BUCKETS),
        minlength=LENGTH_BUCKETS + 1)
    words = data.X[:, _COL_WORDS].astype(np.int64)
    words_hist = np.zeros((2, WORDS_BUCKETS + 1), dtype=np.int64)
    for c in (0, 1):
        words_hist[c] = np.bincount(
            np.minimum(words[data.y == c], WORDS_BUCKETS), minlength=WORDS_BUCKETS + 1)
    subscribe = data.X[:, _COL_SUBSCRIBE] == 1
    non_https = data.X[:, _COL_NON_HTTPS] == 1
    spam = data.y == 1
    return EdaReport(
        n_total=data.n,
        n_spam=data.n_spam,
        spam_ratio=data.spam_ratio,
        length_histogram=length_hist,
        subscribe_count=int(subscribe.sum()),
        subscribe_spam_count=int((subscribe & spam).sum()),
        non_https_count=int(non_https.sum()),
        non_https_spam_count=int((non_https & spam).sum()),
        words_histogram_by_class=words_hist,
    )
