"""Extremal process fidelity at fixed zero-fidelity, over the CPTP set.

Poses the min/max process-fidelity SDPs (objective: overlap with the
maximally entangled state; constraints: fixed zero-fidelity, trace
preservation, positivity), probes the feasible zero-fidelity range, and runs
the bounds sweep that the CSV/figure reports are built from.

Hermitian data is embedded into real symmetric matrices for the solver;
every right-hand side below is therefore twice its complex-trace value, and
recovered objectives are halved.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .channels import Channel, depolarizing, max_entangled
from .fidelity import fidelity_bounds
from .frame import frame_operator
from .linalg import kron, real_embed, unembed
from .sdp import SdpConfig, SdpProblem, SdpSolution, solve

CSV_HEADER = (
    "n,F0,one_minus_F0,theorem1_lower,theorem1_upper,"
    "sdp_min,sdp_max,min_status,max_status"
)

RANGE_TOL = 1e-6


@dataclass(frozen=True)
class BoundsRow:
    n: int
    f0: float
    one_minus_f0: float
    theorem1_lower: float
    theorem1_upper: float
    sdp_min: float
    sdp_max: float
    min_status: str
    max_status: str


def default_config(n: int) -> SdpConfig:
    """Solver settings per qubit count; n = 4 runs with an extended budget."""
    if n >= 4:
        return SdpConfig(tol=1e-7, max_iterations=400_000)
    return SdpConfig()


def _hermitian_basis(d: int) -> list[np.ndarray]:
    """d^2 Hermitian matrices spanning the d x d Hermitians: diagonal units
    plus real and imaginary off-diagonal pairs."""
    mats = []
    for i in range(d):
        m = np.zeros((d, d), dtype=complex)
        m[i, i] = 1.0
        mats.append(m)
    for i in range(d):
        for j in range(i + 1, d):
            re = np.zeros((d, d), dtype=complex)
            re[i, j] = re[j, i] = 1.0
            mats.append(re)
            im = np.zeros((d, d), dtype=complex)
            im[i, j] = 1.0j
            im[j, i] = -1.0j
            mats.append(im)
    return mats


@lru_cache(maxsize=None)
def _embedded_pieces(n: int) -> dict:
    """Embedded objective and constraint blocks shared by every program at this n."""
    d = 2**n
    phi = max_entangled(n)
    phi_proj = np.outer(phi, phi.conj())
    tp_rows = []
    eye = np.eye(d)
    for h in _hermitian_basis(d):
        tp_rows.append((real_embed(kron(h, eye)), 2 * float(np.trace(h).real) / d))
    return {
        "objective": real_embed(phi_proj),
        "frame": real_embed(frame_operator(n).matrix),
        "tp_rows": tp_rows,
    }


def build_fidelity_sdp(n: int, f0: float, sense: str) -> SdpProblem:
    """SDP for the extremal process fidelity at fixed zero-fidelity.

    The variable is the real embedding of the Choi matrix (side 2 d^2); the
    objective embeds the entangled-state projector and the equalities fix the
    zero-fidelity and the trace-preservation marginal.
    """
    if not math.isfinite(f0):
        raise ValueError(f"target zero-fidelity must be finite, got {f0}")
    pieces = _embedded_pieces(n)
    d = 2**n
    constraints = [(pieces["frame"], 2 * d * f0)] + list(pieces["tp_rows"])
    return SdpProblem(
        side=2 * d * d,
        objective=pieces["objective"],
        constraints=constraints,
        sense=sense,
        pairing=True,
    )


def _warm_start(n: int, f0: float) -> np.ndarray:
    """Embedded Choi matrix of the depolarizing channel tuned to the target
    zero-fidelity (feasible whenever the depolarizing family reaches it)."""
    d = 2**n
    q = (1 - f0) * d / (d - 1)
    q = min(max(q, 0.0), d * d / (d * d - 1))
    phi = max_entangled(n)
    chi = (1 - q) * np.outer(phi, phi.conj()) + q * np.eye(d * d) / (d * d)
    return real_embed(chi)


def solve_fidelity_sdp(
    n: int, f0: float, sense: str, config: SdpConfig | None = None
) -> SdpSolution:
    """Pose and solve one extremal-fidelity program; objective is in embedded
    semantics (divide by two for the process fidelity)."""
    problem = build_fidelity_sdp(n, f0, sense)
    cfg = default_config(n) if config is None else config
    return solve(problem, cfg, initial=_warm_start(n, f0))


def _check_f0_feasible(n: int, f0: float) -> None:
    f0_min, f0_max = feasible_f0_range(n)
    if f0 < f0_min - RANGE_TOL or f0 > f0_max + RANGE_TOL:
        raise ValueError(
            f"zero-fidelity {f0} is infeasible for n={n}; "
            f"the feasible range is [{f0_min:.10g}, {f0_max:.10g}]"
        )


def min_process_fidelity(n: int, f0: float, config: SdpConfig | None = None) -> float:
    """Smallest process fidelity among channels with the given zero-fidelity."""
    _check_f0_feasible(n, f0)
    return solve_fidelity_sdp(n, f0, "minimize", config).objective_value / 2


def max_process_fidelity(n: int, f0: float, config: SdpConfig | None = None) -> float:
    """Largest process fidelity among channels with the given zero-fidelity."""
    _check_f0_feasible(n, f0)
    return solve_fidelity_sdp(n, f0, "maximize", config).objective_value / 2


@lru_cache(maxsize=None)
def feasible_f0_range(n: int) -> tuple[float, float]:
    """Attainable zero-fidelity interval over CPTP channels.

    The upper end is 1 (identity channel); the lower end is found by
    minimizing the zero-fidelity itself under the CPTP constraints alone.
    """
    pieces = _embedded_pieces(n)
    d = 2**n
    problem = SdpProblem(
        side=2 * d * d,
        objective=pieces["frame"],
        constraints=list(pieces["tp_rows"]),
        sense="minimize",
        pairing=True,
    )
    chi0 = real_embed(depolarizing(n, 1.0).choi)
    sol = solve(problem, default_config(n), initial=chi0)
    if sol.status != "solved":
        raise RuntimeError(
            f"feasibility probe for n={n} did not converge: {sol.diagnostics()}"
        )
    return sol.objective_value / (2 * d), 1.0


def choi_from_solution(sol: SdpSolution, n: int) -> Channel:
    """Recover the complex Choi matrix from a solved embedded program."""
    return Channel(n=n, choi=unembed(sol.x))


def bounds_row(n: int, f0: float, config: SdpConfig | None = None) -> BoundsRow:
    """Solve both extremal programs for one grid cell."""
    lower, upper = fidelity_bounds(f0)
    values = {}
    statuses = {}
    for sense in ("minimize", "maximize"):
        try:
            sol = solve_fidelity_sdp(n, f0, sense, config)
            values[sense] = sol.objective_value / 2
            statuses[sense] = sol.status
        except ValueError as exc:
            values[sense] = math.nan
            statuses[sense] = f"infeasible-at-setup ({exc})"
    return BoundsRow(
        n=n,
        f0=f0,
        one_minus_f0=1 - f0,
        theorem1_lower=lower,
        theorem1_upper=upper,
        sdp_min=values["minimize"],
        sdp_max=values["maximize"],
        min_status=statuses["minimize"],
        max_status=statuses["maximize"],
    )


def sweep(
    n_values: list[int], f0_grid: list[float], config: SdpConfig | None = None
) -> list[BoundsRow]:
    """One BoundsRow per (n, f0) pair, ordered by n then f0."""
    if not n_values or not f0_grid:
        raise ValueError("sweep needs at least one qubit count and one grid point")
    rows = []
    for n in sorted(set(int(v) for v in n_values)):
        for f0 in sorted(set(float(v) for v in f0_grid)):
            rows.append(bounds_row(n, f0, config))
    return rows


def format_csv(rows: list[BoundsRow]) -> str:
    """Render rows under the fixed header, floats at 10 significant digits."""
    lines = [CSV_HEADER]
    for r in rows:
        lines.append(
            f"{r.n},{r.f0:.10g},{r.one_minus_f0:.10g},{r.theorem1_lower:.10g},"
            f"{r.theorem1_upper:.10g},{r.sdp_min:.10g},{r.sdp_max:.10g},"
            f"{r.min_status},{r.max_status}"
        )
    return "\n".join(lines) + "\n"
