"""Logistic regression on concatenated node embeddings."""

from __future__ import annotations

import numba
import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin
from sklearn.utils.validation import check_is_fitted

from ..embedding import EmbeddingMatrix
from ..exceptions import DegenerateTrainingError, FeatureError


def pair_features(emb: EmbeddingMatrix, u: int, v: int) -> np.ndarray:
    """``[x_min(u,v) || x_max(u,v)]``; the order of the arguments does not matter."""
    return pair_feature_matrix(emb, np.array([[u, v]]))[0]


def pair_feature_matrix(emb: EmbeddingMatrix, pairs) -> np.ndarray:
    pairs = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
    n = emb.num_nodes
    if pairs.size and (pairs.min() < 0 or pairs.max() >= n):
        raise FeatureError(f"pair refers to a node without an embedding (valid ids 0..{n - 1})")
    lo = pairs.min(axis=1)
    hi = pairs.max(axis=1)
    x = np.asarray(emb.vectors, dtype=np.float64)
    return np.hstack([x[lo], x[hi]])


def log_loss_and_grad(w: np.ndarray, X: np.ndarray, y: np.ndarray, l2: float):
    """Mean log-loss plus ``l2/2 * |w[:-1]|^2``; the last weight is the bias."""
    z = X @ w[:-1] + w[-1]
    # log(1 + exp(-s z)) with s = +-1, computed stably
    s = np.where(y, 1.0, -1.0)
    loss = np.mean(np.logaddexp(0.0, -s * z)) + 0.5 * l2 * w[:-1] @ w[:-1]
    p = 0.5 * (1.0 + np.tanh(0.5 * z))
    r = (p - y) / len(y)
    grad = np.empty_like(w)
    grad[:-1] = X.T @ r + l2 * w[:-1]
    grad[-1] = r.sum()
    return loss, grad


@numba.njit(cache=True)
def _sgd(X, y, w, l2, lr0, epochs, batch, seed):
    n, d = X.shape
    grad = np.empty(d + 1)
    np.random.seed(seed)
    perm = np.arange(n)
    for epoch in range(epochs):
        lr = lr0 / (1.0 + epoch)
        np.random.shuffle(perm)
        for start in range(0, n, batch):
            stop = min(n, start + batch)
            m = stop - start
            for j in range(d + 1):
                grad[j] = 0.0
            for k in range(start, stop):
                i = perm[k]
                z = w[d]
                for j in range(d):
                    z += X[i, j] * w[j]
                r = (0.5 * (1.0 + np.tanh(0.5 * z)) - y[i]) / m
                for j in range(d):
                    grad[j] += r * X[i, j]
                grad[d] += r
            for j in range(d):
                w[j] -= lr * (grad[j] + l2 * w[j])
            w[d] -= lr * grad[d]
    return w


class LinkLogisticRegression(ClassifierMixin, BaseEstimator):
    """L2-regularized logistic regression fitted by mini-batch gradient descent.

    The step size decays as ``lr / (1 + epoch)``. Fitting is deterministic for
    a fixed ``random_state``.
    """

    def __init__(self, l2=1e-4, epochs=500, lr=0.1, batch_size=32, threshold=0.5, random_state=0):
        self.l2 = l2
        self.epochs = epochs
        self.lr = lr
        self.batch_size = batch_size
        self.threshold = threshold
        self.random_state = random_state

    def fit(self, X, y):
        X = np.ascontiguousarray(X, dtype=np.float64)
        y = np.asarray(y).astype(bool)
        if X.ndim != 2 or len(X) != len(y):
            raise ValueError("X must be 2-D with one row per label")
        if y.all() or not y.any():
            raise DegenerateTrainingError("training labels contain a single class")
        w = np.zeros(X.shape[1] + 1)
        w = _sgd(X, y.astype(np.float64), w, float(self.l2), float(self.lr), int(self.epochs),
                 int(self.batch_size), int(self.random_state or 0) % (2**32))
        if not np.isfinite(w).all():
            raise DegenerateTrainingError("logistic regression diverged")
        self.coef_ = w[:-1]
        self.intercept_ = w[-1]
        self.classes_ = np.array([False, True])
        return self

    @property
    def weights(self) -> np.ndarray:
        check_is_fitted(self, "coef_")
        return np.append(self.coef_, self.intercept_)

    def decision_function(self, X):
        check_is_fitted(self, "coef_")
        return np.asarray(X, dtype=np.float64) @ self.coef_ + self.intercept_

    def predict_proba(self, X):
        p = 0.5 * (1.0 + np.tanh(0.5 * self.decision_function(X)))
        return np.column_stack([1.0 - p, p])

    def predict(self, X):
        return self.predict_proba(X)[:, 1] >= self.threshold

    def loss(self, X, y) -> float:
        return log_loss_and_grad(self.weights, np.asarray(X, dtype=np.float64), np.asarray(y, dtype=float), self.l2)[0]


def train_logistic(features, labels, seed: int = 0, **params) -> LinkLogisticRegression:
    return LinkLogisticRegression(random_state=seed, **params).fit(features, labels)
