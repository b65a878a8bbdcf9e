"""The frame operator of the conjugate-pair SIC frame and its spectral checks.

The d^2 vectors conj(psi_k) ⊗ psi_k form a frame on the doubled space. Its
frame operator (sum of transposed projector ⊗ projector) turns the
zero-fidelity into a Choi-matrix trace, its synthesis matrix factorizes it,
and its Gram matrix is the Kronecker power of the 4x4 single-qubit overlap
matrix. The witness operators below certify the linear bounds between
zero-fidelity and process fidelity.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channels import SicEnsemble, max_entangled, sic_states
from .linalg import Spectrum, hermitian_eig, kron


@dataclass(frozen=True)
class FrameOperator:
    """The d^2 x d^2 frame operator with its spectrum cached at build time."""

    n: int
    matrix: np.ndarray
    spectrum: Spectrum

    @property
    def dim(self) -> int:
        return 2**self.n


@dataclass(frozen=True)
class WitnessReport:
    """Minimum eigenvalues of the two bound witnesses plus the orthogonal-component checks."""

    min_eig_a: float
    min_eig_b: float
    orth_top_eigenvalue: float
    orth_overlap: float
    passed: bool


def _frame_matrix(ensemble: SicEnsemble) -> np.ndarray:
    d = 2**ensemble.n
    g = np.zeros((d * d, d * d), dtype=complex)
    for psi in ensemble.states:
        proj = np.outer(psi, psi.conj())
        g += kron(proj.T, proj)
    return g


def frame_operator(n: int, ensemble: SicEnsemble | None = None) -> FrameOperator:
    """Build the frame operator by direct summation over the d^2 rank-1 terms."""
    ens = sic_states(n) if ensemble is None else ensemble
    matrix = _frame_matrix(ens)
    return FrameOperator(n=n, matrix=matrix, spectrum=hermitian_eig(matrix))


def synthesis_matrix(n: int) -> np.ndarray:
    """The d^2 x d^2 matrix whose k-th column is conj(psi_k) ⊗ psi_k.

    The frame operator equals S S†, and S† S is the frame's Gram matrix.
    """
    ens = sic_states(n)
    return np.stack([np.kron(psi.conj(), psi) for psi in ens.states], axis=1)


def overlap_gram(n: int) -> np.ndarray:
    """Gram matrix of the frame: entries |<psi_k|psi_k'>|^2, real d^2 x d^2."""
    states = sic_states(n).states
    return np.abs(states.conj() @ states.T) ** 2


def single_qubit_gram() -> np.ndarray:
    """The 4x4 overlap matrix of the tetrahedron: ones on the diagonal, 1/3 off."""
    return np.full((4, 4), 1 / 3) + np.diag(np.full(4, 2 / 3))


def entangled_eigvector_residual(n: int, op: FrameOperator | None = None) -> float:
    """2-norm residual of the claim that the maximally entangled state is the
    top eigenvector of the frame operator with eigenvalue d."""
    op = frame_operator(n) if op is None else op
    phi = max_entangled(n)
    d = 2**n
    return float(np.linalg.norm(op.matrix @ phi - d * phi))


def witness_check(n: int, op: FrameOperator | None = None, tol: float = 1e-9) -> WitnessReport:
    """Build the two bound witnesses explicitly and report their minimum eigenvalues.

    The lower-bound witness is |phi><phi| - (3/2d)*frame + I/2 and the
    upper-bound witness is frame/d - |phi><phi|; both must be positive
    semidefinite for the linear bounds to hold on every channel. Also checks
    the orthogonal component frame - d|phi><phi|: it must be orthogonal to
    the entangled state and have top eigenvalue d/3.
    """
    op = frame_operator(n) if op is None else op
    d = 2**n
    phi = max_entangled(n)
    proj = np.outer(phi, phi.conj())
    witness_a = proj - (3 / (2 * d)) * op.matrix + 0.5 * np.eye(d * d)
    witness_b = op.matrix / d - proj
    min_a = float(hermitian_eig(witness_a).eigenvalues[-1])
    min_b = float(hermitian_eig(witness_b).eigenvalues[-1])
    perp = op.matrix - d * proj
    orth_top = float(hermitian_eig(perp).eigenvalues[0])
    orth_overlap = float(np.real(phi.conj() @ perp @ phi))
    return WitnessReport(
        min_eig_a=min_a,
        min_eig_b=min_b,
        orth_top_eigenvalue=orth_top,
        orth_overlap=orth_overlap,
        passed=min_a >= -tol and min_b >= -tol,
    )


def eigenvalue_multiplicity(spectrum: Spectrum, value: float, tol: float = 1e-6) -> int:
    """Count eigenvalues within ``tol`` of ``value``."""
    return int(np.sum(np.abs(spectrum.eigenvalues - value) <= tol))
