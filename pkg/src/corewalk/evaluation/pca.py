"""Two-component PCA by power iteration with deflation, for embedding plots."""

from __future__ import annotations

import io

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ..embedding import EmbeddingMatrix
from ..exceptions import DegeneratePCAError


def _power(C: np.ndarray, tol: float, max_iter: int, start: np.ndarray) -> np.ndarray:
    # Iterate with C^4 (normalized) so each sweep squares the eigenvalue
    # ratio twice; the eigenvectors are those of C.
    scale = np.abs(C).max()
    B = C / scale
    B = B @ B
    B = B @ B
    v = start / np.linalg.norm(start)
    for _ in range(max_iter):
        w = B @ v
        norm = np.linalg.norm(w)
        if norm == 0:
            return v
        w /= norm
        if np.linalg.norm(w - v) < tol:
            return w
        v = w
    return v


def _orient(v: np.ndarray) -> np.ndarray:
    nz = np.flatnonzero(np.abs(v) > 1e-12)
    if len(nz) and v[nz[0]] < 0:
        return -v
    return v


def principal_directions(X: np.ndarray, n_components: int = 2, tol: float = 1e-9,
                         max_iter: int = 1000) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Return (mean, components, explained_variance) of the rows of ``X``."""
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2 or len(X) < 2:
        raise DegeneratePCAError("PCA needs at least two rows")
    mean = X.mean(axis=0)
    Xc = X - mean
    C = Xc.T @ Xc / (len(X) - 1)
    total = np.trace(C)
    if total <= 0 or not np.isfinite(total):
        raise DegeneratePCAError("input has zero variance")
    d = C.shape[0]
    components = np.zeros((n_components, d))
    variances = np.zeros(n_components)
    rng = np.random.default_rng(0)
    for i in range(min(n_components, d)):
        start = rng.standard_normal(d)
        start -= components[:i].T @ (components[:i] @ start)
        if np.abs(C).max() <= 1e-14 * total:
            # remaining spectrum is numerically zero: any orthogonal direction
            v = start
        else:
            v = _power(C, tol, max_iter, start)
        v -= components[:i].T @ (components[:i] @ v)
        v /= np.linalg.norm(v)
        v = _orient(v)
        lam = float(v @ C @ v)
        components[i] = v
        variances[i] = lam
        C = C - lam * np.outer(v, v)
    return mean, components, variances


class PowerPCA(TransformerMixin, BaseEstimator):
    def __init__(self, n_components=2, tol=1e-9, max_iter=1000):
        self.n_components = n_components
        self.tol = tol
        self.max_iter = max_iter

    def fit(self, X, y=None):
        if isinstance(X, EmbeddingMatrix):
            X = X.vectors
        self.mean_, self.components_, self.explained_variance_ = principal_directions(
            X, self.n_components, self.tol, self.max_iter)
        return self

    def transform(self, X):
        check_is_fitted(self, "components_")
        if isinstance(X, EmbeddingMatrix):
            X = X.vectors
        return (np.asarray(X, dtype=np.float64) - self.mean_) @ self.components_.T


def pca_project(emb, components: int = 2) -> np.ndarray:
    return PowerPCA(components).fit_transform(emb)


def pca_csv(emb: EmbeddingMatrix, projection: np.ndarray) -> str:
    labels = emb.labels if emb.labels is not None else [str(i) for i in range(emb.num_nodes)]
    buf = io.StringIO()
    buf.write("external_id,pc1,pc2,trained_flag\n")
    for label, (a, b), flag in zip(labels, projection[:, :2], emb.trained_mask):
        buf.write(f"{label},{float(a)!r},{float(b)!r},{int(bool(flag))}\n")
    return buf.getvalue()
