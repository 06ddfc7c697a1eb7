import numpy as np
import pytest

from corewalk.embedding import EmbeddingMatrix
from corewalk.exceptions import DegeneratePCAError, DegenerateTrainingError, FeatureError
from corewalk.evaluation import (LinkLogisticRegression, PowerPCA, f1_score, log_loss_and_grad, pair_features,
                                 pair_feature_matrix, pca_csv, pca_project, principal_directions, train_logistic)
from oracles import max_principal_angle, top_eigvecs


def _emb(x):
    x = np.asarray(x, dtype=np.float64)
    return EmbeddingMatrix(x, np.ones(len(x), dtype=bool))


def test_pair_features():
    emb = _emb([[1, 2], [3, 4]])
    assert list(pair_features(emb, 0, 1)) == [1, 2, 3, 4]
    assert list(pair_features(emb, 1, 0)) == [1, 2, 3, 4]
    assert pair_feature_matrix(_emb(np.zeros((3, 150))), [[0, 2]]).shape == (1, 300)
    with pytest.raises(FeatureError):
        pair_features(emb, 0, 2)


def test_separable_two_points():
    X, y = np.array([[-1.0, 0.0], [1.0, 0.0]]), np.array([False, True])
    model = train_logistic(X, y)
    assert f1_score(model.predict(X), y) == 1.0


def test_single_class_rejected():
    with pytest.raises(DegenerateTrainingError):
        train_logistic(np.ones((3, 2)), [True, True, True])


def test_gradient_check():
    rng = np.random.default_rng(0)
    X, y = rng.normal(size=(5, 3)), np.array([1, 0, 1, 1, 0], dtype=float)
    w = rng.normal(size=4)
    _, grad = log_loss_and_grad(w, X, y, 0.1)
    eps = 1e-6
    numeric = np.array([(log_loss_and_grad(w + eps * e, X, y, 0.1)[0] - log_loss_and_grad(w - eps * e, X, y, 0.1)[0])
                        / (2 * eps) for e in np.eye(4)])
    assert np.linalg.norm(grad - numeric) / np.linalg.norm(grad) < 1e-5


def test_random_labels_give_chance_f1():
    scores = []
    for seed in range(20):
        rng = np.random.default_rng(seed)
        X = rng.normal(size=(400, 10))
        y = rng.permutation(np.repeat([True, False], 200))
        model = train_logistic(X[:300], y[:300], seed=seed, epochs=50)
        scores.append(f1_score(model.predict(X[300:]), y[300:]))
    assert abs(np.mean(scores) - 0.5) < 0.1


def test_fit_reduces_loss_and_matches_sklearn():
    from sklearn.linear_model import LogisticRegression
    rng = np.random.default_rng(1)
    X = rng.normal(size=(300, 4))
    y = X @ np.array([2.0, -1.0, 0.5, 0.0]) + 0.3 * rng.normal(size=300) > 0
    model = LinkLogisticRegression(epochs=200).fit(X, y)
    assert model.loss(X, y) < log_loss_and_grad(np.zeros(5), X, y.astype(float), model.l2)[0]
    ref = LogisticRegression(C=1.0 / (model.l2 * len(X))).fit(X, y)
    assert np.mean(model.predict(X) == y) >= np.mean(ref.predict(X) == y) - 0.02
    again = LinkLogisticRegression(epochs=200).fit(X, y)
    assert np.array_equal(model.weights, again.weights)
    assert model.predict_proba(X).shape == (300, 2)


def test_pca_line():
    t = np.linspace(-1, 1, 50)[:, None]
    X = t @ np.array([[1.0, 2.0, -1.0, 0.5, 3.0]])
    _, _, var = principal_directions(X)
    assert var[1] < 1e-8 * var[0]


def test_pca_2d_reconstruction():
    rng = np.random.default_rng(2)
    X = rng.normal(size=(30, 2)) @ np.array([[3.0, 1.0], [0.0, 0.5]])
    pca = PowerPCA().fit(X)
    Z = pca.transform(X)
    recon = Z @ pca.components_ + pca.mean_
    assert np.abs(recon - X).max() < 1e-9
    np.testing.assert_allclose(pca.components_ @ pca.components_.T, np.eye(2), atol=1e-12)


def test_pca_subspace_matches_eigh():
    rng = np.random.default_rng(3)
    for _ in range(20):
        n, d = int(rng.integers(3, 201)), int(rng.integers(2, 51))
        X = rng.normal(size=(n, d)) * rng.uniform(0.1, 3.0, size=d)
        _, comps, var = principal_directions(X)
        vals, vecs = top_eigvecs(X)
        assert max_principal_angle(comps.T, vecs) < 1e-6
        np.testing.assert_allclose(var, vals, rtol=1e-8)


def test_pca_errors_and_sign():
    with pytest.raises(DegeneratePCAError):
        principal_directions(np.ones((5, 3)))
    with pytest.raises(DegeneratePCAError):
        principal_directions(np.ones((1, 3)))
    rng = np.random.default_rng(4)
    _, comps, _ = principal_directions(rng.normal(size=(40, 6)))
    for c in comps:
        assert c[np.flatnonzero(np.abs(c) > 1e-12)[0]] > 0


def test_pca_csv():
    emb = EmbeddingMatrix(np.array([[0.0, 1.0], [1.0, 0.0], [2.0, 2.0]]), np.array([True, False, True]),
                          ("a", "b", "c"))
    text = pca_csv(emb, pca_project(emb))
    lines = text.splitlines()
    assert lines[0] == "external_id,pc1,pc2,trained_flag"
    assert [line.split(",")[0] for line in lines[1:]] == ["a", "b", "c"]
    assert [line.split(",")[3] for line in lines[1:]] == ["1", "0", "1"]
