"""Shared numerics: the shrinkage operator, data-driven regularization weights,
solver configuration, and the ADMM iterate container."""

from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateData, DimensionMismatch


def shrink(x, eps):
    """Elementwise soft threshold: shift magnitudes toward zero by eps,
    with a dead zone on [-eps, eps]. Works on scalars and arrays alike."""
    x = np.asarray(x, dtype=float)
    out = np.sign(x) * np.maximum(np.abs(x) - eps, 0.0)
    return out if out.ndim else float(out)


def as_data_matrix(Y):
    """Validate and coerce a D x N observation matrix (columns are points)."""
    Y = np.asarray(Y, dtype=float)
    if Y.ndim != 2:
        raise DimensionMismatch(f"data matrix must be 2-D, got shape {Y.shape}")
    D, N = Y.shape
    if D < 1 or N < 2:
        raise DimensionMismatch(f"need D >= 1 and N >= 2, got {D} x {N}")
    if not np.all(np.isfinite(Y)):
        raise ValueError("data matrix contains non-finite entries")
    return Y


def as_mask(mask, shape):
    """Coerce a trusted-entry mask; None means every entry is trusted."""
    if mask is None:
        return np.ones(shape, dtype=bool)
    mask = np.asarray(mask)
    if mask.shape != tuple(shape):
        raise DimensionMismatch(
            f"mask shape {mask.shape} does not match data shape {tuple(shape)}"
        )
    return mask.astype(bool)


def mu_e(Y, mask=None):
    """min over i of max over j != i of the l1 norm of column j, on masked data.

    Equals the second-largest column l1 norm (largest under ties)."""
    Y = as_data_matrix(Y)
    if mask is not None:
        Y = np.where(as_mask(mask, Y.shape), Y, 0.0)
    norms = np.abs(Y).sum(axis=0)
    value = float(np.partition(norms, -2)[-2])
    if value <= 0.0:
        raise DegenerateData("mu_e is zero: at least N-1 masked columns vanish")
    return value


def mu_z(Y, mask=None):
    """min over i of max over j != i of |<y_i, y_j>|, on masked data."""
    Y = as_data_matrix(Y)
    if mask is not None:
        Y = np.where(as_mask(mask, Y.shape), Y, 0.0)
    G = np.abs(Y.T @ Y)
    np.fill_diagonal(G, -np.inf)
    value = float(G.max(axis=1).min())
    if value <= 0.0:
        raise DegenerateData("mu_z is zero: some column is orthogonal to all others")
    return value


@dataclass(frozen=True)
class GreedyConfig:
    """Knobs for the greedy error-requalification stage.

    k0 is the warm-up length before any pruning; alpha0 sets the initial
    threshold from the first error estimate; alpha1/alpha2 drive the
    every-other-iteration decay toward the alpha2 * median(|data|) floor.
    beta is the per-loop decay of the outer-loop variant; gssc_max_iter its
    loop count. max_prune_fraction guards against pruning the mask away.
    """

    k0: int | float = 4  # math.inf blocks pruning forever
    alpha0: float = 0.6
    alpha1: float = 0.95
    alpha2: float = 1.0
    beta: float = 0.9
    refresh_mu: bool = False
    gssc_max_iter: int = 5
    max_prune_fraction: float = 0.95

    def __post_init__(self):
        if self.k0 < 1:
            raise ValueError("k0 must be a positive integer")
        for name in ("alpha0", "alpha1", "alpha2"):
            if getattr(self, name) <= 0.0:
                raise ValueError(f"{name} must be positive")
        if not 0.0 < self.beta < 1.0:
            raise ValueError("beta must lie in (0, 1)")
        if self.gssc_max_iter < 1:
            raise ValueError("gssc_max_iter must be a positive integer")
        if not 0.0 < self.max_prune_fraction <= 1.0:
            raise ValueError("max_prune_fraction must lie in (0, 1]")


@dataclass(frozen=True)
class SolverConfig:
    """Parameters of the self-representation solver.

    lambda_e / lambda_z, when set, bypass the data-driven alpha/mu formulas
    (the escape hatch for degenerate inputs such as all-zero data).
    """

    alpha_e: float = 11.0
    alpha_z: float = 20.0
    rho0: float = 10.0
    mu: float = 1.05
    epsilon: float = 1e-3
    affine: bool = False
    max_iter: int = 200
    greedy: GreedyConfig | None = None
    lambda_e: float | None = None
    lambda_z: float | None = None

    def __post_init__(self):
        if self.alpha_e <= 0.0 or self.alpha_z <= 0.0:
            raise ValueError("alpha_e and alpha_z must be positive")
        if self.rho0 <= 0.0:
            raise ValueError("rho0 must be positive")
        if self.mu < 1.0:
            raise ValueError("mu must be >= 1")
        if self.epsilon <= 0.0:
            raise ValueError("epsilon must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be a positive integer")
        for name in ("lambda_e", "lambda_z"):
            value = getattr(self, name)
            if value is not None and value <= 0.0:
                raise ValueError(f"{name} override must be positive")


def lambdas(config, Y, mask=None):
    """Regularization weights lambda_e = alpha_e / mu_e, lambda_z = alpha_z / mu_z,
    honoring any direct overrides in the config."""
    lam_e = config.lambda_e
    lam_z = config.lambda_z
    if lam_e is None:
        lam_e = config.alpha_e / mu_e(Y, mask)
    if lam_z is None:
        lam_z = config.alpha_z / mu_z(Y, mask)
    return lam_e, lam_z


@dataclass
class SolverState:
    """ADMM iterates; mutated only inside a single solver run."""

    A: np.ndarray
    C: np.ndarray
    E: np.ndarray
    delta: np.ndarray
    Delta: np.ndarray
    rho: float
    k: int = 0


def init_state(D, N, rho0):
    """All-zero iterates with the initial penalty weight."""
    return SolverState(
        A=np.zeros((N, N)),
        C=np.zeros((N, N)),
        E=np.zeros((D, N)),
        delta=np.zeros(N),
        Delta=np.zeros((N, N)),
        rho=float(rho0),
    )
