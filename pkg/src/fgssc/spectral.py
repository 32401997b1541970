"""Affinity construction, random-walk-Laplacian spectral clustering, and the
permutation-invariant misclassification metric."""

import numpy as np
import scipy.linalg
from scipy.optimize import linear_sum_assignment
from sklearn.cluster import KMeans

from .errors import DisconnectedDegenerate, LengthMismatch


def build_affinity(C):
    """Symmetric nonnegative graph weights W = |C| + |C^T|."""
    C = np.asarray(C, dtype=float)
    if C.ndim != 2 or C.shape[0] != C.shape[1]:
        raise ValueError(f"coefficient matrix must be square, got {C.shape}")
    return np.abs(C) + np.abs(C.T)


def spectral_cluster(W, K, seed=0):
    """Cluster the affinity graph into K groups.

    Embeds points with the K lowest eigenvectors of the random-walk Laplacian
    L_rw = I - Deg^-1 W (computed through the symmetric normalization), then
    runs seeded k-means (k-means++, 100 restarts, 300 iterations, best inertia).
    Zero-degree vertices embed at the origin, are excluded from centroid
    fitting, and take the nearest centroid at the end.
    """
    W = np.asarray(W, dtype=float)
    N = W.shape[0]
    if W.ndim != 2 or W.shape[1] != N:
        raise ValueError(f"affinity must be square, got {W.shape}")
    if not 1 <= K <= N:
        raise ValueError(f"need 1 <= K <= N, got K={K}, N={N}")
    deg = W.sum(axis=1)
    isolated = deg == 0.0
    n_isolated = int(isolated.sum())
    if n_isolated > K:
        raise DisconnectedDegenerate(
            f"{n_isolated} isolated vertices exceed the cluster budget K={K}"
        )
    pos = ~isolated
    n_pos = N - n_isolated
    if n_pos < K:
        raise DisconnectedDegenerate(
            f"only {n_pos} connected vertices for K={K} clusters"
        )
    d_isqrt = 1.0 / np.sqrt(deg[pos])
    L_sym = -d_isqrt[:, None] * W[np.ix_(pos, pos)] * d_isqrt[None, :]
    np.fill_diagonal(L_sym, L_sym.diagonal() + 1.0)
    L_sym = 0.5 * (L_sym + L_sym.T)
    _, vecs = scipy.linalg.eigh(L_sym, subset_by_index=(0, K - 1))
    embedding = np.zeros((N, K))
    embedding[pos] = d_isqrt[:, None] * vecs  # random-walk eigenvectors

    km = KMeans(n_clusters=K, init="k-means++", n_init=100, max_iter=300,
                random_state=int(seed) % (2**32))
    labels = np.empty(N, dtype=int)
    labels[pos] = km.fit_predict(embedding[pos])
    if n_isolated:
        labels[isolated] = km.predict(embedding[isolated])
    return labels


def misclassification(pred, truth):
    """Fraction of wrongly assigned points, minimized over label permutations.

    Exact: solves the optimal assignment on the confusion matrix, which equals
    the brute-force minimum over permutations.
    """
    pred = np.asarray(pred, dtype=int)
    truth = np.asarray(truth, dtype=int)
    if pred.shape != truth.shape or pred.ndim != 1:
        raise LengthMismatch(f"label shapes differ: {pred.shape} vs {truth.shape}")
    if pred.size == 0:
        raise LengthMismatch("empty label vectors")
    if pred.min() < 0 or truth.min() < 0:
        raise ValueError("labels must be nonnegative integers")
    K = int(max(pred.max(), truth.max())) + 1
    confusion = np.zeros((K, K), dtype=np.int64)
    np.add.at(confusion, (pred, truth), 1)
    rows, cols = linear_sum_assignment(confusion, maximize=True)
    return 1.0 - confusion[rows, cols].sum() / pred.size
