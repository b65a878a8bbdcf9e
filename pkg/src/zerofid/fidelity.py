"""Zero-fidelity, process fidelity, the linear bounds between them, and a
shot-based zero-fidelity estimator.

The zero-fidelity is the average survival probability of the d^2 SIC product
states; two independent routes are provided (a literal channel-application sum
and a frame-operator trace) as a cross-check on each other. Fidelities are
reported as raw floats, never clamped.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channels import Channel, SicEnsemble, apply_channel, max_entangled, sic_states
from .frame import FrameOperator


@dataclass(frozen=True)
class FidelityReport:
    f0: float
    f: float
    f_avg: float
    lower_bound: float
    upper_bound: float


@dataclass(frozen=True)
class ShotEstimate:
    """Sampled zero-fidelity: mean of Bernoulli survival outcomes."""

    mean: float
    std_error: float
    shots: int
    seed: int


def zero_fidelity_direct(c: Channel, ensemble: SicEnsemble | None = None) -> float:
    """Average survival probability over the SIC product states.

    Each term is computed by literally applying the channel to the state's
    projector; this is the slow reference route. An alternative ensemble
    (e.g. a locally rotated one) can be supplied for invariance checks.
    """
    ens = sic_states(c.n) if ensemble is None else ensemble
    total = 0.0
    for psi in ens.states:
        rho = np.outer(psi, psi.conj())
        out = apply_channel(c, rho)
        total += float(np.real(psi.conj() @ out @ psi))
    return total / len(ens)


def zero_fidelity_choi(c: Channel, frame: FrameOperator) -> float:
    """Zero-fidelity as Tr(chi * frame) / d; the fast route."""
    if frame.n != c.n:
        raise ValueError(f"frame operator is for n={frame.n}, channel has n={c.n}")
    return float(np.real(np.einsum("ij,ji->", c.choi, frame.matrix))) / c.dim


def process_fidelity(c: Channel) -> float:
    """Overlap of the Choi state with the maximally entangled state."""
    phi = max_entangled(c.n)
    return float(np.real(phi.conj() @ c.choi @ phi))


def average_fidelity(c: Channel) -> float:
    """Haar-average state fidelity, (d F + 1) / (d + 1)."""
    d = c.dim
    return (d * process_fidelity(c) + 1) / (d + 1)


def fidelity_bounds(f0: float) -> tuple[float, float]:
    """Linear bounds on the process fidelity at a given zero-fidelity.

    Returns (1 - 1.5*(1 - f0), f0); the lower bound may be negative for
    small f0.
    """
    return 1 - 1.5 * (1 - f0), f0


def fidelity_report(c: Channel, frame: FrameOperator | None = None) -> FidelityReport:
    """All fidelity figures for one channel in a single report."""
    f0 = zero_fidelity_direct(c) if frame is None else zero_fidelity_choi(c, frame)
    f = process_fidelity(c)
    lower, upper = fidelity_bounds(f0)
    return FidelityReport(
        f0=f0, f=f, f_avg=average_fidelity(c), lower_bound=lower, upper_bound=upper
    )


def survival_probabilities(c: Channel) -> np.ndarray:
    """Survival probability of every SIC product state, in multi-index order."""
    ens = sic_states(c.n)
    probs = np.empty(len(ens))
    for i, psi in enumerate(ens.states):
        out = apply_channel(c, np.outer(psi, psi.conj()))
        probs[i] = float(np.real(psi.conj() @ out @ psi))
    return probs


def estimate_zero_fidelity(c: Channel, shots: int, seed: int) -> ShotEstimate:
    """Monte Carlo zero-fidelity estimate with shot noise.

    Each shot draws a SIC state uniformly and a Bernoulli outcome with its
    survival probability; the mean of outcomes estimates the zero-fidelity.
    Deterministic for a fixed seed.
    """
    if shots < 1:
        raise ValueError(f"shots must be >= 1, got {shots}")
    probs = survival_probabilities(c)
    rng = np.random.default_rng(seed)
    ks = rng.integers(0, len(probs), size=shots)
    outcomes = (rng.random(shots) < probs[ks]).astype(float)
    mean = float(outcomes.mean())
    std_error = float(outcomes.std(ddof=1) / np.sqrt(shots)) if shots > 1 else 0.0
    return ShotEstimate(mean=mean, std_error=std_error, shots=shots, seed=seed)
