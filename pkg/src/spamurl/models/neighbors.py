"""k-nearest-neighbors with exact, documented tie handling.

Distance ties resolve to the lower training index; vote ties resolve to
label 0, i.e. the decision threshold on the positive-neighbor fraction is
(k // 2 + 1) / k. Expects features standardized by the caller's pipeline.
"""

from dataclasses import dataclass

import numpy as np

from ..errors import EmptyTrainingSet
from .base import Classifier, as_matrix, check_binary_labels


@dataclass
class KnnParams:
    n_neighbors: int = 1
    minkowski_p: float = 2.0


class KNearestNeighbors(Classifier):
    family = "knn"

    def __init__(self, params=None):
        self.params = params if params is not None else KnnParams()

    @property
    def decision_threshold(self):
        k = self.params.n_neighbors
        return (k // 2 + 1) / k

    def fit(self, X, y, seed=0):
        X = as_matrix(X)
        if X.shape[0] == 0:
            raise EmptyTrainingSet("cannot fit k-NN on an empty training set")
        self.train_X_ = X.copy()
        self.train_y_ = check_binary_labels(y)
        return self

    def _distance_block(self, Q):
        """Monotone distance surrogate: squared euclidean for p=2, sum |d|^p otherwise."""
        p = self.params.minkowski_p
        if p == 2.0:
            sq_t = np.einsum("ij,ij->i", self.train_X_, self.train_X_)
            sq_q = np.einsum("ij,ij->i", Q, Q)
            return sq_q[:, None] - 2.0 * (Q @ self.train_X_.T) + sq_t[None, :]
        return np.abs(Q[:, None, :] - self.train_X_[None, :, :]).__pow__(p).sum(axis=2)

    def predict_score(self, X):
        X = as_matrix(X)
        k = self.params.n_neighbors
        n_train = self.train_X_.shape[0]
        if k > n_train:
            raise EmptyTrainingSet(f"k={k} exceeds training size {n_train}")
        out = np.empty(X.shape[0])
        # cap the distance block at ~2e7 doubles
        chunk = max(1, int(2e7 // max(n_train, 1)))
        for lo in range(0, X.shape[0], chunk):
            D = self._distance_block(X[lo : lo + chunk])
            if k == 1:
                nearest = np.argmin(D, axis=1)  # first minimum = lowest index
                out[lo : lo + chunk] = self.train_y_[nearest]
            else:
                for i in range(D.shape[0]):
                    row = D[i]
                    kth = np.partition(row, k - 1)[k - 1]
                    cand = np.flatnonzero(row <= kth)
                    cand = cand[np.lexsort((cand, row[cand]))][:k]
                    out[lo + i] = self.train_y_[cand].sum() / k
        return out
