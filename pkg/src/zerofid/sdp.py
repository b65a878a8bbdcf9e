"""Operator-splitting solver for small dense semidefinite programs.

Solves

    minimize / maximize   Tr(C X)
    subject to            Tr(A_i X) = b_i   for all i
                          X positive semidefinite

over real symmetric X by Douglas-Rachford splitting: the objective plus the
affine equalities form one prox step (an offset projection onto the affine
subspace, factored once at setup), the PSD cone the other (one
eigendecomposition per iteration), joined by an over-relaxed update.

Hermitian problems are handled through their real symmetric embedding; set
``pairing=True`` on the problem and the iterate is re-symmetrized under the
embedding's block structure after every cone projection. Objective and
right-hand sides must then be posed in embedded semantics (twice the complex
trace); callers divide recovered values by two.
"""

from __future__ import annotations

import warnings
from collections import deque
from dataclasses import dataclass

import numpy as np
import scipy.linalg

SYMMETRY_TOL = 1e-12
RANK_TOL = 1e-10
SETUP_CONSISTENCY_TOL = 1e-6
DIVERGENCE_LIMIT = 1e8


class InfeasibleConstraintsError(ValueError):
    """The affine constraint system is inconsistent at setup."""


@dataclass(frozen=True)
class SdpProblem:
    """A dense SDP in standard primal form over a side x side symmetric variable.

    ``constraints`` is a list of (matrix, scalar) pairs meaning
    Tr(matrix @ X) = scalar. With ``pairing`` the variable is constrained to
    the real embedding of a Hermitian matrix (see module docstring).
    """

    side: int
    objective: np.ndarray
    constraints: list[tuple[np.ndarray, float]]
    sense: str = "minimize"
    pairing: bool = False


@dataclass(frozen=True)
class SdpConfig:
    step: float = 0.5
    relaxation: float = 1.6
    tol: float = 1e-7
    stall_tol: float = 1e-9
    stall_window: int = 50
    max_iterations: int = 200_000


@dataclass(frozen=True)
class SdpSolution:
    x: np.ndarray
    objective_value: float
    primal_residual: float
    dual_residual: float
    iterations: int
    status: str          # solved | infeasible-suspected | max-iterations
    complementarity: float

    def diagnostics(self) -> dict:
        """Summary dict for CLI / log output."""
        return {
            "status": self.status,
            "iterations": self.iterations,
            "primal_residual": self.primal_residual,
            "dual_residual": self.dual_residual,
            "objective": self.objective_value,
        }


def project_psd(s: np.ndarray) -> np.ndarray:
    """Project a symmetric matrix onto the positive semidefinite cone."""
    s = np.asarray(s, dtype=float)
    sym = (s + s.T) / 2
    vals, vecs = np.linalg.eigh(sym)
    if vals[0] >= 0.0:
        return sym
    out = (vecs * np.maximum(vals, 0.0)) @ vecs.T
    return (out + out.T) / 2


def _pair_average(x: np.ndarray) -> np.ndarray:
    """Project onto the subspace of valid Hermitian embeddings.

    Averages x with its conjugation by the block rotation [[0, -I], [I, 0]];
    preserves symmetry and positive semidefiniteness.
    """
    d = x.shape[0] // 2
    a, b = x[:d, :d], x[:d, d:]
    c, e = x[d:, :d], x[d:, d:]
    diag = (a + e) / 2
    off = (b - c) / 2
    return np.block([[diag, off], [-off, diag]])


def _check_symmetric(m: np.ndarray, side: int, what: str) -> np.ndarray:
    m = np.asarray(m, dtype=float)
    if m.shape != (side, side):
        raise ValueError(f"{what} must be {side}x{side}, got {m.shape}")
    if np.max(np.abs(m - m.T)) > SYMMETRY_TOL:
        raise ValueError(f"{what} is not symmetric to {SYMMETRY_TOL:.0e}")
    return (m + m.T) / 2


class _AffineProjector:
    """Projection onto {X : Tr(A_i X) = b_i} with the Gram factor cached.

    Rows are normalized to unit Frobenius norm and rank-filtered at
    construction; dependent rows are dropped with a warning and checked for
    consistency against a particular solution.
    """

    def __init__(self, problem: SdpProblem):
        side = problem.side
        rows = []
        rhs = []
        for i, (mat, b) in enumerate(problem.constraints):
            sym = _check_symmetric(mat, side, f"constraint matrix {i}")
            vec = sym.reshape(-1)
            norm = np.linalg.norm(vec)
            if norm > 0:
                vec = vec / norm
                b = float(b) / norm
            rows.append(vec)
            rhs.append(float(b))
        self.count = len(rows)
        if self.count == 0:
            self.kept = np.empty((0, side * side))
            self.rhs = np.empty(0)
            self.dropped = []
            self._cho = None
            return

        full = np.stack(rows)
        rhs = np.asarray(rhs)
        _, r, piv = scipy.linalg.qr(full.T, mode="economic", pivoting=True)
        diag = np.abs(np.diag(r))
        scale = diag[0] if diag.size and diag[0] > 0 else 1.0
        rank = int(np.sum(diag > RANK_TOL * scale))
        keep = np.sort(piv[:rank])
        self.dropped = sorted(int(i) for i in piv[rank:])
        if self.dropped:
            warnings.warn(
                f"dropping {len(self.dropped)} dependent constraint row(s): {self.dropped}",
                stacklevel=3,
            )
        self.kept = full[keep]
        self.rhs = rhs[keep]
        gram = self.kept @ self.kept.T
        self._cho = scipy.linalg.cho_factor(gram)

        # consistency of the dropped rows against a particular solution
        particular = self.kept.T @ scipy.linalg.cho_solve(self._cho, self.rhs)
        residual = float(np.linalg.norm(full @ particular - rhs))
        if residual > SETUP_CONSISTENCY_TOL:
            raise InfeasibleConstraintsError(
                f"affine constraints are inconsistent: least-squares residual "
                f"{residual:.3e} exceeds {SETUP_CONSISTENCY_TOL:.0e}"
            )

    @property
    def rank(self) -> int:
        return self.kept.shape[0]

    def project(self, vec: np.ndarray) -> np.ndarray:
        if self._cho is None:
            return vec
        gap = self.kept @ vec - self.rhs
        return vec - self.kept.T @ scipy.linalg.cho_solve(self._cho, gap)

    def residual(self, vec: np.ndarray) -> float:
        if self._cho is None:
            return 0.0
        return float(
            np.linalg.norm(self.kept @ vec - self.rhs) / (1 + np.linalg.norm(self.rhs))
        )


def solve(
    problem: SdpProblem,
    config: SdpConfig | None = None,
    initial: np.ndarray | None = None,
) -> SdpSolution:
    """Run the splitting iteration until residuals and objective stall converge.

    Deterministic: identical problem, config, and initial point give an
    identical solution. ``initial`` seeds the internal iterate (default zero);
    a feasible starting matrix dramatically shortens the feasibility phase.
    """
    cfg = SdpConfig() if config is None else config
    if problem.sense not in ("minimize", "maximize"):
        raise ValueError(f"sense must be 'minimize' or 'maximize', got {problem.sense!r}")
    side = problem.side
    c_true = _check_symmetric(problem.objective, side, "objective").reshape(-1)
    sign = 1.0 if problem.sense == "minimize" else -1.0
    c_step = sign * cfg.step * c_true

    affine = _AffineProjector(problem)

    if initial is None:
        z = np.zeros(side * side)
    else:
        z = _check_symmetric(initial, side, "initial point").reshape(-1).copy()

    history: deque[float] = deque(maxlen=cfg.stall_window + 1)
    status = "max-iterations"
    iterations = cfg.max_iterations
    x = z.copy()
    y = z.copy()
    w = z.copy()

    for it in range(1, cfg.max_iterations + 1):
        x = affine.project(z - c_step)
        w = 2 * x - z
        psd = project_psd(w.reshape(side, side))
        if problem.pairing:
            psd = _pair_average(psd)
        y = psd.reshape(-1)
        z = z + cfg.relaxation * (y - x)

        objective = float(c_true @ y)
        history.append(objective)
        primal = affine.residual(y)
        dual = float(np.linalg.norm(x - y) / (1 + np.linalg.norm(y)))

        if not np.isfinite(objective) or primal > DIVERGENCE_LIMIT:
            status = "infeasible-suspected"
            iterations = it
            break
        if max(primal, dual) < cfg.tol and len(history) > cfg.stall_window:
            if abs(history[-1] - history[0]) < cfg.stall_tol:
                status = "solved"
                iterations = it
                break

    x_out = y.reshape(side, side)
    primal = affine.residual(y)
    dual = float(np.linalg.norm(x - y) / (1 + np.linalg.norm(y)))
    slack = (y - w) / cfg.step
    complementarity = abs(float(y @ slack))
    return SdpSolution(
        x=x_out,
        objective_value=float(c_true @ y),
        primal_residual=primal,
        dual_residual=dual,
        iterations=iterations,
        status=status,
        complementarity=complementarity,
    )
