"""Metric suite and model comparison.

Spam is the positive class throughout. Ratios with zero denominators are
reported as 0 and flagged, so comparison tables render even for degenerate
models. The binary coefficient of determination is computed on hard 0/1
predictions: R^2 = 1 - SS_res/SS_tot = 1 - err / (ybar (1 - ybar)).
"""

import csv
from dataclasses import dataclass

import numpy as np

from .dataset import SplitConfig, stratified_fold_assignment, train_test_split
from .errors import EmptyMatrix, LengthMismatch, NonBinaryLabels, SingleClassTruth, SpamUrlError
from .models import ModelSpec, fit_pipeline
from .seeding import derive_seed

_CV_PATH = 10  # fit-seed namespace for fold fits
_FIT_PATH = 11  # fit-seed namespace for the single-split fit


def _as_binary(values, name):
    arr = np.asarray(values)
    if arr.size and not np.isin(arr, (0, 1)).all():
        raise NonBinaryLabels()
    return arr.astype(np.int64)


@dataclass(frozen=True)
class ConfusionMatrix:
    tp: int
    fp: int
    fn: int
    tn: int

    @property
    def total(self):
        return self.tp + self.fp + self.fn + self.tn

    def to_text(self):
        return (
            f"            pred spam  pred ham\n"
            f"true spam   {self.tp:9d}  {self.fn:8d}\n"
            f"true ham    {self.fp:9d}  {self.tn:8d}"
        )


def confusion(y_true, y_pred):
    t = _as_binary(y_true, "y_true")
    p = _as_binary(y_pred, "y_pred")
    if t.shape != p.shape:
        raise LengthMismatch(f"y_true has {t.size} entries, y_pred has {p.size}")
    return ConfusionMatrix(
        tp=int(((t == 1) & (p == 1)).sum()),
        fp=int(((t == 0) & (p == 1)).sum()),
        fn=int(((t == 1) & (p == 0)).sum()),
        tn=int(((t == 0) & (p == 0)).sum()),
    )


@dataclass(frozen=True)
class ClassificationMetrics:
    accuracy: float
    precision: float
    recall: float
    f1: float
    undefined: tuple  # metric names whose denominator was zero


def classification_metrics(cm):
    if cm.total == 0:
        raise EmptyMatrix("confusion matrix has no entries")
    undefined = []

    def ratio(num, den, name):
        if den == 0:
            undefined.append(name)
            return 0.0
        return num / den

    accuracy = (cm.tp + cm.tn) / cm.total
    precision = ratio(cm.tp, cm.tp + cm.fp, "precision")
    recall = ratio(cm.tp, cm.tp + cm.fn, "recall")
    f1 = ratio(2.0 * precision * recall, precision + recall, "f1")
    return ClassificationMetrics(accuracy, precision, recall, f1, tuple(undefined))


def r_square_binary(y_true, y_pred):
    t = _as_binary(y_true, "y_true")
    p = _as_binary(y_pred, "y_pred")
    if t.shape != p.shape:
        raise LengthMismatch(f"y_true has {t.size} entries, y_pred has {p.size}")
    ybar = t.mean()
    if ybar == 0.0 or ybar == 1.0:
        raise SingleClassTruth()
    ss_res = float(((t - p) ** 2).sum())
    ss_tot = float(((t - ybar) ** 2).sum())
    return 1.0 - ss_res / ss_tot


@dataclass(frozen=True)
class RocCurve:
    points: np.ndarray  # rows of (fpr, tpr, threshold), threshold descending
    auc: float


def roc_and_auc(y_true, scores):
    """ROC swept over distinct score values descending; AUC by trapezoid."""
    t = _as_binary(y_true, "y_true")
    s = np.asarray(scores, dtype=np.float64)
    if t.shape != s.shape:
        raise LengthMismatch(f"y_true has {t.size} entries, scores has {s.size}")
    n_pos = int((t == 1).sum())
    n_neg = t.size - n_pos
    if n_pos == 0 or n_neg == 0:
        raise SingleClassTruth()

    order = np.argsort(-s, kind="stable")
    s_sorted = s[order]
    hits = t[order]
    boundary = np.r_[s_sorted[1:] != s_sorted[:-1], True]
    tp = np.cumsum(hits)[boundary]
    fp = np.cumsum(1 - hits)[boundary]
    fpr = np.r_[0.0, fp / n_neg]
    tpr = np.r_[0.0, tp / n_pos]
    thresholds = np.r_[np.inf, s_sorted[boundary]]
    auc = float(np.sum((fpr[1:] - fpr[:-1]) * (tpr[1:] + tpr[:-1])) / 2.0)
    return RocCurve(points=np.column_stack([fpr, tpr, thresholds]), auc=auc)


def write_roc_csv(roc, path):
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(["threshold", "fpr", "tpr"])
        for fpr, tpr, threshold in roc.points:
            writer.writerow([repr(float(threshold)), repr(float(fpr)), repr(float(tpr))])


@dataclass(frozen=True)
class CrossValidation:
    fold_accuracies: np.ndarray
    mean_accuracy: float
    models: tuple


def cross_validate(data, spec, k, seed, return_models=False):
    """Stratified k-fold accuracy; standardizers and models are fit on the
    training folds only."""
    assign = stratified_fold_assignment(data.y, k, seed)
    accuracies = []
    models = []
    for f in range(k):
        train = assign != f
        held = assign == f
        pipe = fit_pipeline(spec, data.X[train], data.y[train], seed=derive_seed(seed, _CV_PATH, f))
        pred = pipe.predict_label(data.X[held])
        accuracies.append(float((pred == data.y[held]).mean()))
        if return_models:
            models.append(pipe)
    return CrossValidation(
        fold_accuracies=np.array(accuracies),
        mean_accuracy=float(np.mean(accuracies)),
        models=tuple(models),
    )


@dataclass(frozen=True)
class MetricsReport:
    accuracy: float
    precision: float
    recall: float
    f1: float
    r_square: float
    kfold_mean_accuracy: float
    auc: float


@dataclass(frozen=True)
class ModelEvaluation:
    spec: ModelSpec
    metrics: MetricsReport
    confusion: ConfusionMatrix
    roc: RocCurve

    def to_text(self):
        m = self.metrics
        return "\n".join([
            f"model: {self.spec.family}",
            f"accuracy:  {m.accuracy:.4f}",
            f"kfold:     {m.kfold_mean_accuracy:.4f}",
            f"precision: {m.precision:.4f}",
            f"recall:    {m.recall:.4f}",
            f"f1:        {m.f1:.4f}",
            f"r_square:  {m.r_square:.4f}",
            f"auc:       {m.auc:.4f}",
            self.confusion.to_text(),
        ])


def evaluate_model(data, spec, seed, test_fraction=0.2, k=10, stratified=True):
    """The full single-model protocol: one stratified split for the headline
    metrics, plus k-fold cross-validation on the whole dataset."""
    train, test = train_test_split(data, SplitConfig(test_fraction, seed, stratified))
    pipe = fit_pipeline(spec, train.X, train.y, seed=derive_seed(seed, _FIT_PATH))
    pred = pipe.predict_label(test.X)
    score = pipe.predict_score(test.X)
    cm = confusion(test.y, pred)
    frag = classification_metrics(cm)
    roc = roc_and_auc(test.y, score)
    report = MetricsReport(
        accuracy=frag.accuracy,
        precision=frag.precision,
        recall=frag.recall,
        f1=frag.f1,
        r_square=r_square_binary(test.y, pred),
        kfold_mean_accuracy=cross_validate(data, spec, k, seed).mean_accuracy,
        auc=roc.auc,
    )
    return ModelEvaluation(spec=spec, metrics=report, confusion=cm, roc=roc)


@dataclass(frozen=True)
class ComparisonRow:
    name: str
    accuracy: float
    kfold: float
    precision: float
    recall: float
    f1: float
    r_square: float


@dataclass(frozen=True)
class ComparisonTable:
    rows: tuple
    k: int

    def header(self):
        return ("Classifier", "Acc.", f"{self.k} K-fold", "Prec.", "Recall", "F1", "R2")

    def to_csv(self, path):
        with open(path, "w", newline="", encoding="utf-8") as handle:
            writer = csv.writer(handle)
            writer.writerow(self.header())
            for r in self.rows:
                writer.writerow([
                    r.name,
                    repr(r.accuracy), repr(r.kfold), repr(r.precision),
                    repr(r.recall), repr(r.f1), repr(r.r_square),
                ])

    def to_text(self):
        cells = [list(self.header())]
        for r in self.rows:
            cells.append([
                r.name,
                f"{100 * r.accuracy:.2f}%", f"{100 * r.kfold:.2f}%",
                f"{100 * r.precision:.2f}%", f"{100 * r.recall:.2f}%",
                f"{100 * r.f1:.2f}%", f"{r.r_square:.2f}",
            ])
        widths = [max(len(row[i]) for row in cells) for i in range(len(cells[0]))]
        lines = []
        for row in cells:
            lines.append("  ".join(cell.ljust(width) for cell, width in zip(row, widths)).rstrip())
        return "\n".join(lines)


def compare_models(data, specs, seed, test_fraction=0.2, k=10):
    """One Table-style row per spec under a shared split and fold plan."""
    if not specs:
        raise SpamUrlError("no model specs to compare")
    rows = []
    for spec in specs:
        ev = evaluate_model(data, spec, seed, test_fraction=test_fraction, k=k)
        m = ev.metrics
        rows.append(ComparisonRow(
            name=spec.family,
            accuracy=m.accuracy, kfold=m.kfold_mean_accuracy,
            precision=m.precision, recall=m.recall, f1=m.f1, r_square=m.r_square,
        ))
    return ComparisonTable(rows=tuple(rows), k=k)
