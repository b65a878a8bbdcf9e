"""Dense complex linear algebra kernels.

Kronecker products, partial traces, Hermitian eigendecomposition, and the
real symmetric embedding of Hermitian matrices used by the SDP solver.
All functions are pure; matrices are plain numpy arrays.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

HERMITIAN_TOL = 1e-10

# Largest matrix side this toolkit ever needs is 512 (4-qubit real embedding);
# anything past this guard is a bug in the caller, not a workload.
_MAX_SIDE = 1 << 16


@dataclass(frozen=True)
class Spectrum:
    """Eigendecomposition of a Hermitian matrix.

    Eigenvalues are real and sorted descending; column i of ``eigenvectors``
    pairs with ``eigenvalues[i]`` and the columns are orthonormal.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product a ⊗ b with an overflow guard on the result shape."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.ndim != 2 or b.ndim != 2:
        raise ValueError("kron expects 2-d arrays")
    if a.shape[0] * b.shape[0] > _MAX_SIDE or a.shape[1] * b.shape[1] > _MAX_SIDE:
        raise ValueError(
            f"kron result {a.shape[0] * b.shape[0]}x{a.shape[1] * b.shape[1]} "
            f"exceeds the supported side {_MAX_SIDE}"
        )
    return np.kron(a, b)


def partial_trace(
    m: np.ndarray, dim_first: int, dim_second: int, which: str = "first"
) -> np.ndarray:
    """Trace out one subsystem of an operator on a bipartite space.

    ``m`` must be square with side ``dim_first * dim_second`` in the usual
    Kronecker ordering (first subsystem major). ``which`` names the traced
    subsystem; the result acts on the remaining one.
    """
    m = np.asarray(m)
    side = dim_first * dim_second
    if m.ndim != 2 or m.shape != (side, side):
        raise ValueError(
            f"expected a {side}x{side} matrix for subsystem dims "
            f"({dim_first}, {dim_second}), got {m.shape}"
        )
    t = m.reshape(dim_first, dim_second, dim_first, dim_second)
    if which == "first":
        return np.trace(t, axis1=0, axis2=2)
    if which == "second":
        return np.trace(t, axis1=1, axis2=3)
    raise ValueError(f"which must be 'first' or 'second', got {which!r}")


def hermiticity_deviation(h: np.ndarray) -> float:
    """Max entrywise deviation of h from its conjugate transpose."""
    h = np.asarray(h)
    return float(np.max(np.abs(h - h.conj().T))) if h.size else 0.0


def _require_hermitian(h: np.ndarray, tol: float) -> np.ndarray:
    h = np.asarray(h, dtype=complex)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {h.shape}")
    dev = hermiticity_deviation(h)
    if dev > tol:
        raise ValueError(
            f"matrix is not Hermitian: max deviation {dev:.3e} exceeds tolerance {tol:.1e}"
        )
    # kill accumulated roundoff from Kronecker chains before decomposing
    return (h + h.conj().T) / 2


def hermitian_eig(h: np.ndarray, tol: float = HERMITIAN_TOL) -> Spectrum:
    """Eigendecomposition of a Hermitian matrix, eigenvalues descending.

    Inputs within ``tol`` of Hermitian are symmetrized as (H + H†)/2 first;
    anything farther off is rejected.
    """
    sym = _require_hermitian(h, tol)
    vals, vecs = np.linalg.eigh(sym)
    return Spectrum(eigenvalues=vals[::-1], eigenvectors=vecs[:, ::-1])


def real_embed(h: np.ndarray, tol: float = HERMITIAN_TOL) -> np.ndarray:
    """Map a Hermitian matrix to its real symmetric [[Re, -Im], [Im, Re]] form.

    The embedding doubles the side, preserves positive semidefiniteness, and
    duplicates every eigenvalue; traces double.
    """
    sym = _require_hermitian(h, tol)
    re, im = sym.real, sym.imag
    return np.block([[re, -im], [im, re]])


def unembed(x: np.ndarray) -> np.ndarray:
    """Recover the Hermitian matrix from its real embedding (inverse of real_embed).

    Averages the redundant blocks, so small asymmetries in ``x`` are projected out.
    """
    x = np.asarray(x, dtype=float)
    if x.ndim != 2 or x.shape[0] != x.shape[1] or x.shape[0] % 2:
        raise ValueError(f"expected a square matrix of even side, got shape {x.shape}")
    d = x.shape[0] // 2
    re = (x[:d, :d] + x[d:, d:]) / 2
    im = (x[d:, :d] - x[:d, d:]) / 2
    h = re + 1j * im
    return (h + h.conj().T) / 2
