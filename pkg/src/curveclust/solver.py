"""Low-rank coefficient solver for the tangent-space self-expression model.

Minimizes  lam * ||W||_*  +  1/2 sum_i w_i B^i w_i^T   s.t.  W 1 = 1
by a linearized alternating direction method with an adaptive penalty:
one singular-value-thresholding step per iteration, followed by multiplier
and penalty updates.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import SolverDivergenceError
from .manifold import GramTensor

__all__ = [
    "SolverConfig",
    "SolverState",
    "SolveReport",
    "gradient_F",
    "svt",
    "update_W",
    "solve",
]


@dataclass(frozen=True)
class SolverConfig:
    lam: float = 0.1
    beta0: float = 0.1
    beta_max: float = 10.0
    rho0: float = 1.1
    eps1: float = 1e-4
    eps2: float = 1e-4
    max_iters: int = 500

    def __post_init__(self):
        if self.lam < 0:
            raise ValueError("lam must be nonnegative")
        if not (0 < self.beta0 <= self.beta_max):
            raise ValueError("need 0 < beta0 <= beta_max")
        if self.rho0 <= 1:
            raise ValueError("rho0 must be > 1")
        if self.eps1 <= 0 or self.eps2 <= 0 or self.max_iters < 1:
            raise ValueError("tolerances and max_iters must be positive")


@dataclass
class SolverState:
    W: np.ndarray
    y: np.ndarray
    beta: float
    eta: float
    iter: int = 0


@dataclass
class SolveReport:
    W: np.ndarray
    iters: int
    primal_residual: float
    converged: bool
    objective_trace: list[float] = field(default_factory=list)
    beta_trace: list[float] = field(default_factory=list)


def linearization_constant(gram: GramTensor, beta0: float = 0.1) -> float:
    """Step-size constant: dominates the smooth-part curvature at every beta.

    The per-row Hessian is B^i plus the rank-one row-sum penalty, so the
    proximal step 1/(eta * beta) is stable only if eta covers ||B^i||_2 / beta
    for the smallest beta the solver will use. A larger constant only shrinks
    the step, so taking the max over the published variants and the
    beta0-scaled spectral norm keeps the convergence condition intact.
    """
    N = gram.N
    fro = max(np.linalg.norm(B, "fro") for B in gram.blocks)
    spec = max(np.linalg.norm(B, 2) for B in gram.blocks)
    return max(fro, spec ** 2, spec / beta0) + N + 1


def gradient_F(state: SolverState, gram: GramTensor) -> np.ndarray:
    """Gradient of the smooth part of the augmented Lagrangian at state.W.

    Row i of the data term is w_i B^i; the remaining terms come from the
    row-sum constraint multiplier and penalty.
    """
    W, y, beta = state.W, state.y, state.beta
    N = gram.N
    if W.shape != (N, N):
        raise ValueError(f"W must be {N}x{N}, got {W.shape}")
    WB = np.einsum("ij,ijk->ik", W, gram.blocks)
    r = W.sum(axis=1) - 1.0
    return WB + y[:, None] + beta * r[:, None]


def svt(M: np.ndarray, tau: float) -> np.ndarray:
    """Singular value thresholding: the proximal operator of tau * ||.||_*."""
    out, _ = _svt_with_values(M, tau)
    return out


def _svt_with_values(M: np.ndarray, tau: float) -> tuple[np.ndarray, np.ndarray]:
    if tau < 0:
        raise ValueError("tau must be nonnegative")
    if not np.all(np.isfinite(M)):
        raise SolverDivergenceError("non-finite input to SVT")
    U, s, Vt = np.linalg.svd(M, full_matrices=False)
    s_thr = np.maximum(s - tau, 0.0)
    return (U * s_thr) @ Vt, s_thr


def update_W(state: SolverState, gram: GramTensor, cfg: SolverConfig) -> np.ndarray:
    """One linearized proximal step: SVT of the gradient step on W."""
    step = 1.0 / (state.eta * state.beta)
    target = state.W - step * gradient_F(state, gram)
    return svt(target, cfg.lam * step)


def _objective(W: np.ndarray, gram: GramTensor, lam: float,
               singular_values: np.ndarray | None = None) -> float:
    if singular_values is None:
        singular_values = np.linalg.svd(W, compute_uv=False)
    fit = 0.5 * float(np.einsum("ij,ijk,ik->", W, gram.blocks, W))
    return lam * float(singular_values.sum()) + fit


def solve(gram: GramTensor, cfg: SolverConfig | None = None) -> SolveReport:
    """Iterate proximal steps until both stopping criteria hold.

    Stops when beta * ||W_new - W|| <= eps1 and ||W 1 - 1|| <= eps2, or at
    max_iters with converged=False. Non-finite iterates abort.
    """
    if cfg is None:
        cfg = SolverConfig()
    N = gram.N
    state = SolverState(
        W=np.zeros((N, N)),
        y=np.zeros(N),
        beta=cfg.beta0,
        eta=linearization_constant(gram, cfg.beta0),
    )
    trace: list[float] = []
    betas: list[float] = []
    converged = False
    primal = np.inf

    for k in range(1, cfg.max_iters + 1):
        step = 1.0 / (state.eta * state.beta)
        target = state.W - step * gradient_F(state, gram)
        W_new, s_thr = _svt_with_values(target, cfg.lam * step)
        if not np.all(np.isfinite(W_new)) or np.linalg.norm(W_new) > 1e12:
            raise SolverDivergenceError(
                f"diverging iterate at iteration {k}", iteration=k, residual=primal
            )

        dW = state.beta * np.linalg.norm(W_new - state.W, "fro")
        r = W_new.sum(axis=1) - 1.0
        primal = float(np.linalg.norm(r))
        crit1 = dW <= cfg.eps1
        crit2 = primal <= cfg.eps2

        state.y = state.y + state.beta * r
        rho = cfg.rho0 if crit1 else 1.0
        state.W = W_new
        state.iter = k
        state.beta = min(cfg.beta_max, rho * state.beta)
        betas.append(state.beta)
        trace.append(_objective(W_new, gram, cfg.lam, s_thr))

        if crit1 and crit2:
            converged = True
            break

    return SolveReport(
        W=state.W,
        iters=state.iter,
        primal_residual=primal,
        converged=converged,
        objective_trace=trace,
        beta_trace=betas,
    )
