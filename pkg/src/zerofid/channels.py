"""SIC ensembles, the maximally entangled state, and Choi-form channels.

Channels act on n qubits (d = 2^n) and are stored as their Choi matrix
chi = (I ⊗ E)(|phi><phi|) on the doubled space, with the first tensor factor
the reference copy and the second the channel output. All transposes and
conjugations are taken in the computational basis throughout.
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass
from functools import reduce
from itertools import product

import numpy as np

from .linalg import hermiticity_deviation, kron, partial_trace

MAX_QUBITS = 4

KRAUS_TOL = 1e-9
UNITARY_TOL = 1e-9


def _check_qubits(n: int) -> None:
    if not isinstance(n, (int, np.integer)) or not 1 <= n <= MAX_QUBITS:
        raise ValueError(f"qubit count must be an integer in [1, {MAX_QUBITS}], got {n!r}")


@dataclass(frozen=True)
class SicEnsemble:
    """The d^2 tensor-product SIC states for n qubits, one per row of ``states``.

    Row ordering follows the multi-index k = k_1...k_n with the first qubit's
    index varying slowest, matching Kronecker-product ordering.
    """

    n: int
    states: np.ndarray

    def __len__(self) -> int:
        return self.states.shape[0]


@dataclass(frozen=True)
class Channel:
    """An n-qubit CPTP map stored as its trace-one Choi matrix."""

    n: int
    choi: np.ndarray

    @property
    def dim(self) -> int:
        return 2**self.n


@dataclass(frozen=True)
class CptpReport:
    """Complete-positivity / trace-preservation check results."""

    min_eigenvalue: float
    trace_pres_deviation: float
    tol: float
    passed: bool


def single_qubit_sic() -> np.ndarray:
    """The canonical tetrahedron: four qubit states with pairwise overlap-squared 1/3."""
    states = np.zeros((4, 2), dtype=complex)
    states[0] = (1.0, 0.0)
    for j in range(3):
        states[j + 1] = (1 / np.sqrt(3), np.sqrt(2 / 3) * np.exp(2j * np.pi * j / 3))
    return states


def sic_states(n: int) -> SicEnsemble:
    """All d^2 tensor products of the canonical single-qubit tetrahedron."""
    _check_qubits(n)
    base = single_qubit_sic()
    rows = [
        reduce(np.kron, (base[k] for k in multi))
        for multi in product(range(4), repeat=n)
    ]
    return SicEnsemble(n=n, states=np.stack(rows))


def max_entangled(n: int) -> np.ndarray:
    """The maximally entangled state (1/sqrt(d)) sum_x |x>|x> as a d^2 vector."""
    _check_qubits(n)
    d = 2**n
    vec = np.zeros(d * d, dtype=complex)
    vec[np.arange(d) * d + np.arange(d)] = 1 / np.sqrt(d)
    return vec


def channel_from_kraus(n: int, kraus: list[np.ndarray]) -> Channel:
    """Build the Choi matrix of the channel with the given Kraus operators."""
    _check_qubits(n)
    d = 2**n
    ops = [np.asarray(k, dtype=complex) for k in kraus]
    if not ops or any(k.shape != (d, d) for k in ops):
        raise ValueError(f"Kraus operators must all be {d}x{d}")
    closure = sum(k.conj().T @ k for k in ops)
    dev = np.max(np.abs(closure - np.eye(d)))
    if dev > KRAUS_TOL:
        raise ValueError(
            f"Kraus set is not trace preserving: sum K†K deviates from I by {dev:.3e}"
        )
    phi = max_entangled(n)
    eye = np.eye(d)
    choi = np.zeros((d * d, d * d), dtype=complex)
    for k in ops:
        v = kron(eye, k) @ phi
        choi += np.outer(v, v.conj())
    return Channel(n=n, choi=choi)


def depolarizing(n: int, p: float) -> Channel:
    """Depolarizing channel: Choi matrix (1-p)|phi><phi| + p I/d^2."""
    _check_qubits(n)
    if not 0 <= p <= 1:
        raise ValueError(f"depolarizing strength must lie in [0, 1], got {p}")
    d = 2**n
    phi = max_entangled(n)
    choi = (1 - p) * np.outer(phi, phi.conj()) + p * np.eye(d * d) / (d * d)
    return Channel(n=n, choi=choi)


def random_cptp(n: int, env_dim: int, seed: int) -> Channel:
    """Sample a random channel via a Haar isometry into a d*env_dim environment.

    env_dim = 1 yields a Haar-random unitary channel; env_dim >= d^2 covers
    the full CPTP set. Deterministic for a fixed seed.
    """
    _check_qubits(n)
    if env_dim < 1:
        raise ValueError(f"environment dimension must be >= 1, got {env_dim}")
    d = 2**n
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((d * env_dim, d)) + 1j * rng.standard_normal((d * env_dim, d))
    q, r = np.linalg.qr(g)
    # fix the R-diagonal phases so the isometry is Haar distributed
    diag = np.diagonal(r).copy()
    diag[diag == 0] = 1.0
    iso = q * (diag / np.abs(diag)).conj()
    kraus = [iso.reshape(d, env_dim, d)[:, e, :] for e in range(env_dim)]
    return Channel(n=n, choi=channel_from_kraus(n, kraus).choi)


def apply_channel(c: Channel, rho: np.ndarray) -> np.ndarray:
    """Apply the channel to a density matrix: d * Tr_1(chi (rho^T ⊗ I))."""
    rho = np.asarray(rho, dtype=complex)
    d = c.dim
    if rho.shape != (d, d):
        raise ValueError(f"state must be {d}x{d}, got {rho.shape}")
    lifted = c.choi @ kron(rho.T, np.eye(d))
    return d * partial_trace(lifted, d, d, "first")


def conjugate_by_unitary(c: Channel, u: np.ndarray) -> Channel:
    """Compose with the inverse unitary, giving fidelities with respect to u.

    Returns the Choi matrix of u† ∘ E, so process fidelity of the result is
    the fidelity of E to the target unitary u.
    """
    u = np.asarray(u, dtype=complex)
    d = c.dim
    if u.shape != (d, d):
        raise ValueError(f"unitary must be {d}x{d}, got {u.shape}")
    dev = np.max(np.abs(u.conj().T @ u - np.eye(d)))
    if dev > UNITARY_TOL:
        raise ValueError(f"matrix is not unitary: U†U deviates from I by {dev:.3e}")
    rot = kron(np.eye(d), u.conj().T)
    return Channel(n=c.n, choi=rot @ c.choi @ rot.conj().T)


def validate_cptp(c: Channel, tol: float = 1e-8) -> CptpReport:
    """Report the minimum Choi eigenvalue and the Tr_2 marginal deviation from I/d."""
    d = c.dim
    sym = (c.choi + c.choi.conj().T) / 2
    min_eig = float(np.linalg.eigvalsh(sym)[0])
    herm_dev = hermiticity_deviation(c.choi)
    marginal = partial_trace(c.choi, d, d, "second")
    tp_dev = float(np.max(np.abs(marginal - np.eye(d) / d)))
    passed = min_eig >= -tol and tp_dev <= tol and herm_dev <= tol
    return CptpReport(
        min_eigenvalue=min_eig, trace_pres_deviation=tp_dev, tol=tol, passed=passed
    )


def channel_to_dict(c: Channel) -> dict:
    """JSON-serializable form with exact keys n / choi_real / choi_imag."""
    return {
        "n": int(c.n),
        "choi_real": c.choi.real.tolist(),
        "choi_imag": c.choi.imag.tolist(),
    }


def channel_from_dict(data: dict) -> Channel:
    """Rebuild a Channel from its JSON form, validating shape and field names."""
    for key in ("n", "choi_real", "choi_imag"):
        if key not in data:
            raise ValueError(f"channel object is missing required field {key!r}")
    n = data["n"]
    _check_qubits(n)
    d = 2**n
    re = np.asarray(data["choi_real"], dtype=float)
    im = np.asarray(data["choi_imag"], dtype=float)
    if re.shape != (d * d, d * d) or im.shape != (d * d, d * d):
        raise ValueError(
            f"choi_real/choi_imag must be {d * d}x{d * d} for n={n}, "
            f"got {re.shape} and {im.shape}"
        )
    return Channel(n=n, choi=re + 1j * im)


def save_channel(c: Channel, path: str) -> None:
    """Write a channel to a JSON file (atomically: temp file + rename)."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            json.dump(channel_to_dict(c), fh)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def load_channel(path: str) -> Channel:
    """Read a channel from its JSON file form."""
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(f"malformed channel file {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ValueError(f"malformed channel file {path}: expected a JSON object")
    return channel_from_dict(data)
