"""Numerical verification suite: frame-operator spectral structure, witness
positivity, and the fidelity bounds on random channels."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channels import max_entangled, random_cptp, sic_states, validate_cptp
from .fidelity import fidelity_bounds, process_fidelity, zero_fidelity_choi, zero_fidelity_direct
from .frame import (
    FrameOperator,
    eigenvalue_multiplicity,
    entangled_eigvector_residual,
    frame_operator,
    overlap_gram,
    synthesis_matrix,
    witness_check,
)
from .linalg import hermitian_eig, kron


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _corrupted_frame(n: int) -> FrameOperator:
    """Frame operator with an off-by-one index injected into its final term.

    Debug-only negative control: pairs the last state's transposed projector
    with the next state's projector, which breaks the spectral structure the
    checks assert.
    """
    ens = sic_states(n)
    d = 2**n
    g = np.zeros((d * d, d * d), dtype=complex)
    count = len(ens)
    for i in range(count):
        left = np.outer(ens.states[i], ens.states[i].conj())
        j = (i + 1) % count if i == count - 1 else i
        right = np.outer(ens.states[j], ens.states[j].conj())
        g += kron(left.T, right)
    return FrameOperator(n=n, matrix=g, spectrum=hermitian_eig(g))


def spectral_checks(n: int, op: FrameOperator, tol: float = 1e-9) -> list[CheckResult]:
    """Frame-operator structure at one qubit count."""
    d = 2**n
    results = []

    trace_dev = abs(float(np.trace(op.matrix).real) - d * d)
    results.append(
        CheckResult(f"n={n} frame trace = d^2", trace_dev <= tol, f"deviation {trace_dev:.3e}")
    )

    top_mult = eigenvalue_multiplicity(op.spectrum, d)
    second_mult = eigenvalue_multiplicity(op.spectrum, d / 3)
    results.append(
        CheckResult(
            f"n={n} spectrum multiplicities (d x1, d/3 x3n)",
            top_mult == 1 and second_mult == 3 * n,
            f"found {top_mult} at {d}, {second_mult} at {d / 3:.6f} (want 1 and {3 * n})",
        )
    )

    residual = entangled_eigvector_residual(n, op)
    results.append(
        CheckResult(
            f"n={n} entangled state is the top eigenvector",
            residual < tol,
            f"residual {residual:.3e}",
        )
    )

    synth = synthesis_matrix(n)
    fact_dev = float(np.max(np.abs(synth @ synth.conj().T - op.matrix)))
    results.append(
        CheckResult(
            f"n={n} factorization frame = S S†", fact_dev < 1e-10, f"deviation {fact_dev:.3e}"
        )
    )

    gram_eigs = np.sort(np.linalg.eigvalsh(overlap_gram(n)))[::-1]
    spec_dev = float(np.max(np.abs(gram_eigs - op.spectrum.eigenvalues)))
    results.append(
        CheckResult(
            f"n={n} spectrum matches Gram-matrix spectrum",
            spec_dev < tol,
            f"max eigenvalue deviation {spec_dev:.3e}",
        )
    )

    witness = witness_check(n, op)
    results.append(
        CheckResult(
            f"n={n} bound witnesses PSD",
            witness.min_eig_a >= -tol and witness.min_eig_b >= -tol,
            f"min eigs {witness.min_eig_a:.3e}, {witness.min_eig_b:.3e}",
        )
    )
    orth_ok = (
        abs(witness.orth_overlap) < tol and abs(witness.orth_top_eigenvalue - d / 3) < 1e-6
    )
    results.append(
        CheckResult(
            f"n={n} orthogonal component (top eig d/3, no entangled overlap)",
            orth_ok,
            f"top {witness.orth_top_eigenvalue:.9f}, overlap {witness.orth_overlap:.3e}",
        )
    )
    return results


def random_channel_checks(
    n: int, op: FrameOperator, channels: int, seed: int, tol: float = 1e-9
) -> list[CheckResult]:
    """Fidelity bounds, route equivalence, and witness trace identities on a
    seeded random-channel ensemble (environment dims cycling 1, d, d^2)."""
    d = 2**n
    env_dims = (1, d, d * d)
    worst_lower = np.inf
    worst_upper = np.inf
    worst_route = 0.0
    all_cptp = True
    for i in range(channels):
        c = random_cptp(n, env_dims[i % 3], seed + i)
        all_cptp = all_cptp and validate_cptp(c, 1e-8).passed
        f = process_fidelity(c)
        f0 = zero_fidelity_choi(c, op)
        lower, upper = fidelity_bounds(f0)
        worst_lower = min(worst_lower, f - lower)
        worst_upper = min(worst_upper, upper - f)
        worst_route = max(worst_route, abs(zero_fidelity_direct(c) - f0))
    results = [
        CheckResult(f"n={n} random channels valid CPTP", all_cptp, f"{channels} channels"),
        CheckResult(
            f"n={n} fidelity bounds on {channels} random channels",
            worst_lower >= -tol and worst_upper >= -tol,
            f"worst lower margin {worst_lower:.3e}, worst upper margin {worst_upper:.3e}",
        ),
        CheckResult(
            f"n={n} route equivalence (direct vs frame trace)",
            worst_route < 1e-10,
            f"max deviation {worst_route:.3e}",
        ),
    ]
    return results


def witness_trace_checks(
    n: int, op: FrameOperator, channels: int, seed: int, tol: float = 1e-9
) -> CheckResult:
    """Tr(chi * witness) must equal the corresponding bound gap exactly."""
    d = 2**n
    phi = max_entangled(n)
    proj = np.outer(phi, phi.conj())
    witness_a = proj - (3 / (2 * d)) * op.matrix + 0.5 * np.eye(d * d)
    witness_b = op.matrix / d - proj
    worst = 0.0
    for i in range(channels):
        c = random_cptp(n, (1, d, d * d)[i % 3], seed + i)
        f = process_fidelity(c)
        f0 = zero_fidelity_choi(c, op)
        lower, _ = fidelity_bounds(f0)
        tr_a = float(np.real(np.einsum("ij,ji->", c.choi, witness_a)))
        tr_b = float(np.real(np.einsum("ij,ji->", c.choi, witness_b)))
        worst = max(worst, abs(tr_a - (f - lower)), abs(tr_b - (f0 - f)))
    return CheckResult(
        f"n={n} witness traces equal bound gaps on {channels} channels",
        worst < tol,
        f"max deviation {worst:.3e}",
    )


def run_verification(
    n_max: int, channels: int = 200, seed: int = 0, tol: float = 1e-9,
    corrupt_frame: bool = False,
) -> list[CheckResult]:
    """Full check list for n = 1..n_max; exit-code material for the CLI."""
    if not 1 <= n_max <= 4:
        raise ValueError(f"n_max must be between 1 and 4, got {n_max}")
    results: list[CheckResult] = []
    for n in range(1, n_max + 1):
        op = _corrupted_frame(n) if corrupt_frame else frame_operator(n)
        results.extend(spectral_checks(n, op, tol))
        results.extend(random_channel_checks(n, op, channels, seed, tol))
        results.append(witness_trace_checks(n, op, min(channels, 100), seed, tol))
    return results
