"""Synthetic benchmark generators: points on unions of low-dimensional linear
subspaces plus a corruption engine (erasures, sparse additive errors, dense
noise) that keeps full ground truth for scoring."""

from dataclasses import dataclass, field

import numpy as np

from .errors import InfeasibleAssignment


@dataclass
class GroundTruth:
    labels: np.ndarray
    clean_Y: np.ndarray
    error_mask: np.ndarray
    erasure_mask: np.ndarray
    subspace_bases: list


@dataclass(frozen=True)
class CorruptionSpec:
    """p_ers: per-entry erasure probability; p_err: additive-error probability
    on surviving entries; noise_db: SNR in dB (20 means noise rms is 10% of the
    data rms), None for no noise."""

    p_err: float = 0.0
    p_ers: float = 0.0
    noise_db: float | None = None
    seed: int = 0

    def __post_init__(self):
        for name in ("p_err", "p_ers"):
            if not 0.0 <= getattr(self, name) <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1]")


def haar_orthogonal(dim, rng):
    """Haar-distributed real orthogonal matrix: QR of a Gaussian matrix with the
    R diagonal signs folded into Q."""
    G = rng.standard_normal((dim, dim))
    Q, R = np.linalg.qr(G)
    signs = np.sign(np.diag(R))
    signs[signs == 0] = 1.0
    return Q * signs[None, :]


def _orthonormal_columns(dim, k, rng):
    Q, R = np.linalg.qr(rng.standard_normal((dim, k)))
    signs = np.sign(np.diag(R))
    signs[signs == 0] = 1.0
    return Q * signs[None, :]


def gen_model1(theta_deg, n_per_space=35, seed=0):
    """Three 4-dimensional linear subspaces of R^50, each inside the sum of the
    other two, with n_per_space standard-normal points on each.

    The leading basis vectors of the three spaces share a 2-plane with
    consecutive angles theta (so the outer pair is at 2*theta); the remaining
    basis directions come from six mutually orthogonal vectors, the third space
    taking normalized pairwise sums. A Haar-random rotation is applied to
    everything at the end.
    """
    if not 0.0 <= theta_deg <= 60.0:
        raise ValueError("theta must lie in [0, 60] degrees")
    if n_per_space < 5:
        raise ValueError("need at least 5 points per subspace")
    rng = np.random.default_rng(seed)
    D = 50
    theta = np.radians(theta_deg)
    u = np.zeros(D)
    u[0] = 1.0
    v = np.zeros(D)
    v[1] = 1.0
    leading = [
        u,
        np.cos(theta) * u + np.sin(theta) * v,
        np.cos(2 * theta) * u + np.sin(2 * theta) * v,
    ]
    axes = [np.zeros(D) for _ in range(6)]
    for i, a in enumerate(axes):
        a[2 + i] = 1.0
    # space 1 uses axes 0,2,4 of the six; space 2 uses 1,3,5; space 3 the sums
    bases = [
        np.column_stack([leading[0], axes[0], axes[2], axes[4]]),
        np.column_stack([leading[1], axes[1], axes[3], axes[5]]),
        np.column_stack([
            leading[2],
            (axes[0] + axes[1]) / np.sqrt(2.0),
            (axes[2] + axes[3]) / np.sqrt(2.0),
            (axes[4] + axes[5]) / np.sqrt(2.0),
        ]),
    ]
    cols = []
    labels = []
    for l, B in enumerate(bases):
        coeffs = rng.standard_normal((4, n_per_space))
        cols.append(B @ coeffs)
        labels.extend([l] * n_per_space)
    Y = np.hstack(cols)
    R = haar_orthogonal(D, rng)
    Y = R @ Y
    bases = [R @ B for B in bases]
    truth = GroundTruth(
        labels=np.asarray(labels, dtype=int),
        clean_Y=Y.copy(),
        error_mask=np.zeros(Y.shape, dtype=bool),
        erasure_mask=np.zeros(Y.shape, dtype=bool),
        subspace_bases=bases,
    )
    return Y, truth


def gen_model2(D=50, K=7, dim_range=(3, 10), N=200, seed=0):
    """K subspaces of R^D with uniformly random orientations and dimensions
    drawn uniformly from dim_range; N points assigned uniformly at random,
    re-drawn (up to 100 times) until every subspace holds more points than its
    dimension."""
    lo, hi = dim_range
    if lo < 1 or hi < lo or hi > D:
        raise ValueError(f"bad dimension range {dim_range} for D={D}")
    rng = np.random.default_rng(seed)
    dims = rng.integers(lo, hi + 1, size=K)
    bases = [_orthonormal_columns(D, d, rng) for d in dims]
    for _ in range(100):
        assignment = rng.integers(0, K, size=N)
        counts = np.bincount(assignment, minlength=K)
        if np.all(counts > dims):
            break
    else:
        raise InfeasibleAssignment(
            f"could not place {N} points so each of {K} subspaces (dims {dims.tolist()}) "
            "exceeds its dimension"
        )
    Y = np.empty((D, N))
    for j in range(N):
        B = bases[assignment[j]]
        Y[:, j] = B @ rng.standard_normal(B.shape[1])
    truth = GroundTruth(
        labels=assignment.astype(int),
        clean_Y=Y.copy(),
        error_mask=np.zeros(Y.shape, dtype=bool),
        erasure_mask=np.zeros(Y.shape, dtype=bool),
        subspace_bases=bases,
    )
    return Y, truth


@dataclass
class CorruptionTruth:
    """Ground-truth corruption coordinates; the solver never sees error_mask."""

    error_mask: np.ndarray
    erasure_mask: np.ndarray


def corrupt(Y, spec):
    """Apply erasures, sparse additive errors, and dense Gaussian noise.

    Per entry, independently: with probability p_ers the entry is erased
    (zeroed, mask False); otherwise with probability p_err a standard-normal
    error is added. Noise (when noise_db is set) has standard deviation
    rms(Y) * 10^(-noise_db/20) and lands on all surviving entries. Erasure and
    error sets are disjoint by construction. Returns the corrupted matrix, the
    solver-visible trusted mask (erasures only), and the ground-truth masks.
    """
    Y = np.asarray(Y, dtype=float)
    rng = np.random.default_rng(spec.seed)
    erased = rng.random(Y.shape) < spec.p_ers
    errors = ~erased & (rng.random(Y.shape) < spec.p_err)
    out = Y + errors * rng.standard_normal(Y.shape)
    if spec.noise_db is not None:
        sigma = float(np.sqrt(np.mean(Y**2))) * 10.0 ** (-spec.noise_db / 20.0)
        out = out + sigma * rng.standard_normal(Y.shape)
    out[erased] = 0.0
    return out, ~erased, CorruptionTruth(error_mask=errors, erasure_mask=erased)
