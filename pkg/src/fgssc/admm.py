"""ADMM loop for the l1 self-representation program

    min ||C||_1 + lambda_e ||chi_Omega . E||_1 + lambda_z/2 ||Y - YA - E||_F^2
    s.t.  A = C - diag(C)   (+ column sums of A equal to 1 in affine mode)

with erasure-aware error updates: untrusted entries carry zero l1 weight and
absorb their full residual, so known-bad coordinates never distort C.
"""

from dataclasses import dataclass, replace

import numpy as np
import scipy.linalg
from scipy.linalg import lapack

from .core import SolverConfig, as_data_matrix, as_mask, init_state, lambdas, shrink
from .errors import SingularSystem

# reciprocal condition estimate below this is treated as singular
RCOND_FLOOR = 1e-14


def _spd_factor(M):
    """Cholesky factorization gated by a reciprocal-condition estimate."""
    anorm = np.linalg.norm(M, 1)
    try:
        factor = scipy.linalg.cho_factor(M, lower=True, check_finite=False)
    except np.linalg.LinAlgError as exc:
        raise SingularSystem(f"A-step system is not positive definite: {exc}") from exc
    rcond, info = lapack.dpocon(factor[0], anorm, uplo="L")
    if info != 0 or not np.isfinite(rcond) or rcond < RCOND_FLOOR:
        raise SingularSystem(f"A-step system is numerically singular (rcond={rcond:.2e})")
    return factor


@dataclass
class AUpdateSolver:
    """Factorized left-hand side of the A-step system

        (lambda_z Y^T Y + rho I [+ rho 11^T]) A = RHS.

    Valid for exactly one (lambda_z, rho, Y) triple; rebuild when rho moves.
    The "woodbury" method factorizes the small D x D (or (D+1) x (D+1))
    matrix Q = V + Yt Yt^T and applies

        inverse = rho^-1 (I - Yt^T Q^-1 Yt),

    an O(D^3 + D N^2) path; "dense" factorizes the N x N system directly.
    """

    lambda_z: float
    rho: float
    affine: bool
    method: str
    gram: np.ndarray  # Yt Yt^T for woodbury, Y^T Y for dense
    _factor: tuple
    _ytil: np.ndarray | None

    @classmethod
    def build(cls, Y, lambda_z, rho, affine, method="auto", gram=None):
        D, N = Y.shape
        dim = D + 1 if affine else D
        if method == "auto":
            method = "woodbury" if dim < N else "dense"
        if method == "woodbury":
            ytil = np.vstack([Y, np.ones((1, N))]) if affine else Y
            if gram is None:
                gram = ytil @ ytil.T
            v = np.full(dim, rho / lambda_z)
            if affine:
                v[-1] = 1.0
            Q = gram + np.diag(v)
            factor = _spd_factor(Q)
            return cls(lambda_z, rho, affine, method, gram, factor, ytil)
        if method == "dense":
            if gram is None:
                gram = Y.T @ Y
            lhs = lambda_z * gram + rho * np.eye(N)
            if affine:
                lhs = lhs + rho
            factor = _spd_factor(lhs)
            return cls(lambda_z, rho, affine, method, gram, factor, None)
        raise ValueError(f"unknown A-step method {method!r}")

    def solve(self, rhs):
        if self.method == "woodbury":
            t = scipy.linalg.cho_solve(self._factor, self._ytil @ rhs, check_finite=False)
            return (rhs - self._ytil.T @ t) / self.rho
        return scipy.linalg.cho_solve(self._factor, rhs, check_finite=False)


def a_step_rhs(Y, C, E, delta, Delta, lambda_z, rho, affine, yty=None):
    """Right-hand side lambda_z Y^T (Y - E) + rho(11^T + C) - 1 delta^T - Delta
    (the 11^T and delta terms only in affine mode)."""
    if yty is None:
        yty = Y.T @ Y
    rhs = lambda_z * (yty - Y.T @ E) + rho * C - Delta
    if affine:
        rhs = rhs + rho - delta[None, :]
    return rhs


def update_a(Y, state, lambda_z, rho, affine, method="auto"):
    """Solve the A-step system for the next A iterate."""
    solver = AUpdateSolver.build(Y, lambda_z, rho, affine, method=method)
    return solver.solve(
        a_step_rhs(Y, state.C, state.E, state.delta, state.Delta, lambda_z, rho, affine)
    )


def update_c(A_new, Delta, rho):
    """Soft-threshold A + Delta/rho at 1/rho and zero the diagonal."""
    J = shrink(A_new + Delta / rho, 1.0 / rho)
    np.fill_diagonal(J, 0.0)
    return J


def update_e(Y, A_new, mask, lambda_e, lambda_z):
    """Trusted residual entries are shrunk at lambda_e/lambda_z; untrusted
    entries absorb the full residual (zero penalty weight)."""
    R = Y - Y @ A_new
    return np.where(mask, shrink(R, lambda_e / lambda_z), R)


def update_multipliers(state, A_new, C_new, rho, affine):
    """Dual ascent on the column-sum residual (affine only) and on A - C."""
    delta = state.delta
    if affine:
        delta = delta + rho * (A_new.sum(axis=0) - 1.0)
    Delta = state.Delta + rho * (A_new - C_new)
    return delta, Delta


def residuals(state_prev, state_new, affine):
    """Max-norm stopping residuals of one iteration."""
    out = {
        "A_minus_C": float(np.abs(state_new.A - state_new.C).max()),
        "A_step": float(np.abs(state_new.A - state_prev.A).max()),
        "E_step": float(np.abs(state_new.E - state_prev.E).max()),
    }
    if affine:
        out["col_sums"] = float(np.abs(state_new.A.sum(axis=0) - 1.0).max())
    return out


def converged(state_prev, state_new, epsilon, affine):
    """True iff every stopping residual is strictly below epsilon."""
    return all(r < epsilon for r in residuals(state_prev, state_new, affine).values())


@dataclass
class SscOutput:
    """Converged coefficient matrix plus the error-compensated data Y - E."""

    C_star: np.ndarray
    Y_out: np.ndarray
    iterations: int
    converged: bool
    residuals: dict


class IterationWorkspace:
    """Caches tied to the current (Y, mask, lambdas): the Gram matrices and the
    factorized A-step solver. Both solver entry points drive their loops through
    this object so the plain and greedy paths perform identical arithmetic."""

    def __init__(self, Y, mask, lambda_e, lambda_z, affine, method="auto"):
        self.affine = affine
        self.method = method
        self.lambda_e = lambda_e
        self.lambda_z = lambda_z
        self.set_data(Y, mask)

    def set_data(self, Y, mask):
        self.Y = Y
        self.mask = mask
        self.yty = Y.T @ Y
        self.solver = None
        self._gram = None

    def set_mask(self, mask):
        # mask only enters the E-update; no cache depends on it
        self.mask = mask

    def set_lambdas(self, lambda_e, lambda_z):
        if lambda_z != self.lambda_z:
            self.solver = None
        self.lambda_e = lambda_e
        self.lambda_z = lambda_z

    def step(self, state, rho):
        """One A -> C -> E -> multiplier cycle at penalty rho; returns the new state."""
        if self.solver is None or self.solver.rho != rho:
            self.solver = AUpdateSolver.build(
                self.Y, self.lambda_z, rho, self.affine, method=self.method, gram=self._gram
            )
            if self.solver.method == "woodbury":
                self._gram = self.solver.gram
            else:
                self._gram = self.yty
        rhs = a_step_rhs(
            self.Y, state.C, state.E, state.delta, state.Delta,
            self.lambda_z, rho, self.affine, yty=self.yty,
        )
        A = self.solver.solve(rhs)
        C = update_c(A, state.Delta, rho)
        E = update_e(self.Y, A, self.mask, self.lambda_e, self.lambda_z)
        delta, Delta = update_multipliers(state, A, C, rho, self.affine)
        return replace(state, A=A, C=C, E=E, delta=delta, Delta=Delta)


def ssc_solve(Y, mask=None, config=None, iter_hook=None):
    """Run the ADMM cycle until the stopping residuals drop below epsilon or
    max_iter is hit. Untrusted entries of Y are zeroed before iterating.

    iter_hook, when given, is called with the state after every iteration
    (diagnostic access to the exact iterates).
    """
    config = config or SolverConfig()
    Y = as_data_matrix(Y)
    mask = as_mask(mask, Y.shape)
    Yw = np.where(mask, Y, 0.0)
    lam_e, lam_z = lambdas(config, Yw, mask)
    D, N = Yw.shape
    ws = IterationWorkspace(Yw, mask, lam_e, lam_z, config.affine)
    state = init_state(D, N, config.rho0)
    done = False
    for k in range(config.max_iter):
        rho = config.rho0 * config.mu**k
        new = ws.step(state, rho)
        done = converged(state, new, config.epsilon, config.affine)
        last = residuals(state, new, config.affine)
        state = new
        state.k = k + 1
        state.rho = config.rho0 * config.mu ** state.k
        if iter_hook is not None:
            iter_hook(state)
        if done:
            break
    return SscOutput(
        C_star=state.C,
        Y_out=Yw - state.E,
        iterations=state.k,
        converged=done,
        residuals=last,
    )
