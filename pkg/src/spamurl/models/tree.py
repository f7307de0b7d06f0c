"""CART trees grown over the split-search kernels.

One builder serves both the binary classifier (gini/entropy impurity,
optional sample weights, optional per-node random feature subsets) and the
regression trees that gradient boosting fits to residuals (squared-error
splits with externally supplied leaf numerator/denominator payloads).

Determinism rules, identical under both kernel backends:
* per-feature row orders come from one stable argsort of the training
  matrix, so value ties keep ascending row order;
* candidate thresholds are midpoints of consecutive distinct values,
  clamped down when rounding would swallow the upper value;
* gain ties break to the lowest feature index, then lowest threshold;
* nodes are visited preorder, left child first, which also fixes the RNG
  consumption order for random feature subsets.

A node splits whenever a structurally valid candidate exists, even at zero
gain: parity problems (XOR-style label patterns) have no single informative
split yet are carved perfectly two levels deep. Recursion still terminates
because children are strictly smaller.
"""

from dataclasses import dataclass

import numpy as np

from .. import kernels
from .base import Classifier, as_matrix, check_binary_labels

_CRITERION_CODES = {"gini": kernels.GINI, "entropy": kernels.ENTROPY}


@dataclass
class DecisionTreeParams:
    criterion: str = "entropy"
    max_depth: int | None = 22
    min_samples_split: int = 2
    min_samples_leaf: int = 1


class Tree:
    """Grown binary tree as flat arrays; feature -1 marks a leaf."""

    __slots__ = ("feature", "threshold", "left", "right", "value")

    def __init__(self, feature, threshold, left, right, value):
        self.feature = feature
        self.threshold = threshold
        self.left = left
        self.right = right
        self.value = value

    @property
    def n_nodes(self):
        return self.feature.shape[0]

    def apply(self, X):
        """Leaf index reached by every row of X."""
        X = as_matrix(X)
        cur = np.zeros(X.shape[0], dtype=np.int32)
        while True:
            feat = self.feature[cur]
            active = feat >= 0
            if not active.any():
                return cur
            idx = np.flatnonzero(active)
            nodes = cur[idx]
            go_left = X[idx, self.feature[nodes]] <= self.threshold[nodes]
            cur[idx] = np.where(go_left, self.left[nodes], self.right[nodes])

    def predict_value(self, X):
        return self.value[self.apply(X)]


def grow_tree(X, target, criterion, max_depth, min_samples_split, min_samples_leaf,
              sample_weight=None, features_per_split=None, rng=None,
              static_features=None, leaf_num=None, leaf_den=None, kernel=None):
    """Grow a tree; `criterion` is a kernels code (GINI/ENTROPY/MSE).

    Classification: target is y in {0,1}; leaves store the weighted positive
    fraction. Regression (MSE): target is the fit residual; leaves store
    sum(leaf_num)/max(sum(leaf_den), 1e-12) over their members.

    static_features restricts every node to a fixed feature subset;
    features_per_split draws a fresh subset of that pool per node from rng.
    """
    if kernel is None:
        kernel = kernels
    X = as_matrix(X)
    n, d = X.shape
    target = np.asarray(target, dtype=np.float64)
    w = np.ones(n) if sample_weight is None else np.asarray(sample_weight, dtype=np.float64)
    wv = w * target
    is_mse = criterion == kernels.MSE

    order = np.empty((d, n), dtype=np.int32)
    for f in range(d):
        order[f] = np.argsort(X[:, f], kind="stable")
    mask = np.zeros(n, dtype=np.uint8)
    tmp = np.empty(n, dtype=np.int32)
    if static_features is None:
        all_features = np.arange(d, dtype=np.int32)
    else:
        all_features = np.sort(np.asarray(static_features, dtype=np.int32))
    depth_cap = np.inf if max_depth is None else max_depth
    use_subsets = features_per_split is not None and features_per_split < all_features.size

    node_feature, node_threshold, node_left, node_right, node_value = [], [], [], [], []

    stack = [(0, n, 0, -1, False)]
    while stack:
        start, end, depth, parent, is_left = stack.pop()
        idx = len(node_feature)
        if parent >= 0:
            if is_left:
                node_left[parent] = idx
            else:
                node_right[parent] = idx

        rows = order[0, start:end]
        m = end - start
        w_total = float(w[rows].sum())
        wv_total = float(wv[rows].sum())

        if is_mse:
            t_node = target[rows]
            pure = float(t_node.min()) == float(t_node.max())
        else:
            pos = int(np.count_nonzero(target[rows]))
            pure = pos == 0 or pos == m

        best_feature = -1
        if m >= min_samples_split and depth < depth_cap and not pure:
            feats = all_features
            if use_subsets:
                feats = np.sort(rng.choice(all_features, size=features_per_split, replace=False)).astype(np.int32)
            best_feature, best_thr, _ = kernel.best_split(
                X, order, start, end, feats, w, wv, w_total, wv_total,
                criterion, min_samples_leaf)

        if best_feature < 0:
            node_feature.append(-1)
            node_threshold.append(0.0)
            node_left.append(-1)
            node_right.append(-1)
            if is_mse:
                num = float(leaf_num[rows].sum())
                den = float(leaf_den[rows].sum())
                node_value.append(num / max(den, 1e-12))
            else:
                node_value.append(wv_total / w_total)
        else:
            node_feature.append(best_feature)
            node_threshold.append(best_thr)
            node_left.append(-1)
            node_right.append(-1)
            node_value.append(0.0)
            n_left = kernel.partition(X, order, start, end, best_feature, best_thr, mask, tmp)
            stack.append((start + n_left, end, depth + 1, idx, False))
            stack.append((start, start + n_left, depth + 1, idx, True))

    return Tree(
        np.array(node_feature, dtype=np.int32),
        np.array(node_threshold, dtype=np.float64),
        np.array(node_left, dtype=np.int32),
        np.array(node_right, dtype=np.int32),
        np.array(node_value, dtype=np.float64),
    )


def grow_classification_tree(X, y, params, sample_weight=None, features_per_split=None,
                             rng=None, static_features=None, kernel=None):
    return grow_tree(
        X, y, _CRITERION_CODES[params.criterion], params.max_depth,
        params.min_samples_split, params.min_samples_leaf,
        sample_weight=sample_weight, features_per_split=features_per_split,
        rng=rng, static_features=static_features, kernel=kernel)


class DecisionTree(Classifier):
    """Greedy binary CART classifier; predict_score is the leaf positive fraction."""

    family = "dtree"

    def __init__(self, params=None):
        self.params = params if params is not None else DecisionTreeParams()

    def fit(self, X, y, seed=0, sample_weight=None):
        y = check_binary_labels(y)
        self.tree_ = grow_classification_tree(X, y, self.params, sample_weight=sample_weight)
        return self

    def predict_score(self, X):
        return self.tree_.predict_value(X)
