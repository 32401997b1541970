"""Greedy error re-qualification: entries whose error estimate exceeds a decaying
threshold are moved from "trusted" to "erased", either in an outer loop around the
ADMM solver (gssc_solve) or fused into its iterations (fgssc_solve)."""

import math
from dataclasses import dataclass

import numpy as np

from .admm import IterationWorkspace, converged, residuals, ssc_solve
from .core import GreedyConfig, SolverConfig, as_data_matrix, as_mask, init_state, lambdas
from .errors import MaskExhausted, UnknownModel


@dataclass(frozen=True)
class GreedyTraceRecord:
    """One pruning step: iteration index, threshold, entries removed, residual norms."""

    k: int
    threshold: float
    pruned: int
    residuals: dict


@dataclass
class GsscOutput:
    C_star: np.ndarray
    Y_out: np.ndarray
    mask: np.ndarray
    trace: list


@dataclass
class FgsscOutput:
    C_star: np.ndarray
    mask: np.ndarray
    iterations: int
    converged: bool
    trace: list


def gssc_solve(Y, mask=None, config=None):
    """Outer greedy loop: run the full ADMM solve, threshold the resulting error
    magnitudes, re-qualify offenders as erasures, fill them from the compensated
    output, repeat. The threshold starts at max(alpha1*max(E), alpha2*mxMed) and
    decays by beta every loop."""
    config = config or SolverConfig()
    g = config.greedy or GreedyConfig()
    Y = as_data_matrix(Y)
    mask_k = as_mask(mask, Y.shape).copy()
    Yk = np.where(mask_k, Y, 0.0)
    mx_med = float(np.median(np.abs(Yk), axis=0).max())
    M = math.inf
    trace = []
    out = None
    for k in range(g.gssc_max_iter + 1):
        out = ssc_solve(Yk, mask_k, config)
        E = np.abs(out.Y_out - Yk)
        if k == 0:
            M = max(g.alpha1 * float(E.max()), g.alpha2 * mx_med)
        M = g.beta * M
        prune = mask_k & (E > M)
        mask_k = mask_k & ~prune
        Yk = np.where(mask_k, Yk, out.Y_out)
        trace.append(
            GreedyTraceRecord(k=k, threshold=M, pruned=int(prune.sum()), residuals=out.residuals)
        )
    return GsscOutput(C_star=out.C_star, Y_out=out.Y_out, mask=mask_k, trace=trace)


def fgssc_solve(Y, mask=None, config=None, iter_hook=None):
    """ADMM loop with the greedy stage fused in.

    Pruning is blocked (threshold = inf) for the first k0 iterations; at k0 the
    threshold drops to alpha0 * max|E| and afterwards decays on even iterations
    toward the alpha2 * median(|trusted data|) floor. Iterations are paired:
    after each even iteration past the warm-up, the accumulated error estimate is
    folded into Y on trusted coordinates and E restarts from zero. With no greedy
    config the loop degrades to exactly ssc_solve.
    """
    config = config or SolverConfig()
    g = config.greedy
    Y = as_data_matrix(Y)
    mask = as_mask(mask, Y.shape).copy()
    Yw = np.where(mask, Y, 0.0)
    lam_e, lam_z = lambdas(config, Yw, mask)
    D, N = Y.shape
    ws = IterationWorkspace(Yw, mask, lam_e, lam_z, config.affine)
    state = init_state(D, N, config.rho0)
    if g is not None:
        trusted = np.abs(Yw[mask])
        mx_med = float(np.median(trusted)) if trusted.size else 0.0
    initial_trusted = int(mask.sum())
    M = math.inf
    trace = []
    done = False
    last = {}
    for k in range(config.max_iter):
        rho = config.rho0 * config.mu**k
        pruned = 0
        if g is not None:
            if k == g.k0:
                M = g.alpha0 * float(np.abs(state.E).max())
            elif k > g.k0 and k % 2 == 0:
                M = max(g.alpha1 * M, g.alpha2 * mx_med)
            if math.isfinite(M):
                prune = mask & (np.abs(state.E) > M)
                pruned = int(prune.sum())
                if pruned:
                    mask &= ~prune
                    ws.set_mask(mask)
                    lost = (initial_trusted - int(mask.sum())) / max(initial_trusted, 1)
                    if lost > g.max_prune_fraction:
                        raise MaskExhausted(
                            f"greedy pruning removed {lost:.0%} of trusted entries "
                            f"(budget {g.max_prune_fraction:.0%})"
                        )
        E_prev = state.E
        new = ws.step(state, rho)
        done = converged(state, new, config.epsilon, config.affine)
        last = residuals(state, new, config.affine)
        state = new
        if g is not None and k >= g.k0 and k % 2 == 0:
            # fold the accumulated estimate into Y on untrusted coordinates only:
            # erased/pruned entries take the model's prediction, trusted data is
            # never modified (discard strategy, not value correction)
            Yw = Yw - np.where(mask, 0.0, E_prev)
            state.E = np.zeros_like(state.E)
            ws.set_data(Yw, mask)
            if g.refresh_mu:
                lam_e, lam_z = lambdas(config, Yw, mask)
                ws.set_lambdas(lam_e, lam_z)
        state.k = k + 1
        state.rho = config.rho0 * config.mu ** state.k
        trace.append(GreedyTraceRecord(k=k, threshold=M, pruned=pruned, residuals=last))
        if iter_hook is not None:
            iter_hook(state)
        if done:
            break
    return FgsscOutput(
        C_star=state.C, mask=mask, iterations=state.k, converged=done, trace=trace
    )


# Model II weight schedules: D -> (beta1, beta2, gamma1, gamma2) with
# alpha_e = beta1 + beta2 * P_ers and alpha_z = gamma1 + gamma2 * P_ers^2.
MODEL2_TABLE = {
    15: (5.0, 36.0, 0.7, 29.0),
    25: (5.0, 22.0, 0.8, 10.8),
    50: (7.0, 18.0, 3.0, 6.8),
}


def schedule_alphas(p_ers, model, d=None):
    """(alpha_e, alpha_z) for the benchmark models at erasure rate p_ers.

    model I schedules are linear in p_ers over [0, 0.7] with a fixed alpha_z;
    model II uses the tabulated per-dimension linear/quadratic fits.
    """
    if not 0.0 <= p_ers <= 1.0:
        raise ValueError(f"p_ers must lie in [0, 1], got {p_ers}")
    if model == "modelI_ssc":
        return 5.0 + (24.0 - 5.0) * (p_ers / 0.7), 7.0
    if model == "modelI_fgssc":
        return 11.0 + (22.0 - 11.0) * (p_ers / 0.7), 20.0
    if model == "modelII":
        if d not in MODEL2_TABLE:
            raise UnknownModel(f"no model II parameters for D={d}; known: {sorted(MODEL2_TABLE)}")
        b1, b2, g1, g2 = MODEL2_TABLE[d]
        return b1 + b2 * p_ers, g1 + g2 * p_ers**2
    raise UnknownModel(f"unknown schedule {model!r}")
