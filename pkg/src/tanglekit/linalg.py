"""Dense complex linear algebra for small multi-qubit systems.

Qubit convention used throughout the package: qubit 0 is the *most
significant* bit of a computational-basis index, i.e. the basis state
|q0 q1 ... q_{n-1}> sits at index q0*2^(n-1) + q1*2^(n-2) + ... + q_{n-1}.

All values are immutable after construction and safe to share between
threads; random sampling takes an explicit integer seed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

# A "complex matrix" in this package is simply a 2-d complex128 ndarray.
ComplexMatrix = np.ndarray

NORM_ATOL = 1e-12
HERM_ATOL = 1e-10
EIG_NEG_ATOL = 1e-10

__all__ = [
    "ComplexMatrix",
    "StateVector",
    "DensityMatrix",
    "EigenSystem",
    "kron",
    "partial_trace",
    "hermitian_eig",
    "matrix_sqrt_psd",
    "haar_random_pure",
    "permute_qubits",
    "reduced_density",
]


def _as_complex_array(data, name: str) -> np.ndarray:
    arr = np.asarray(data, dtype=np.complex128)
    if not (np.all(np.isfinite(arr.real)) and np.all(np.isfinite(arr.imag))):
        raise ValueError(f"{name} contains non-finite entries")
    return arr


def _n_qubits_from_dim(dim: int, name: str) -> int:
    n = int(dim).bit_length() - 1
    if dim < 2 or 2**n != dim:
        raise ValueError(f"{name} dimension {dim} is not a power of two >= 2")
    return n


@dataclass(frozen=True)
class StateVector:
    """Normalized pure n-qubit state, amplitudes in computational basis order."""

    amplitudes: np.ndarray
    n_qubits: int

    def __init__(self, amplitudes) -> None:
        amps = _as_complex_array(amplitudes, "amplitudes").reshape(-1)
        n = _n_qubits_from_dim(amps.size, "state vector")
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > NORM_ATOL:
            raise ValueError(f"state vector norm {norm!r} deviates from 1 beyond {NORM_ATOL}")
        amps = amps.copy()
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)
        object.__setattr__(self, "n_qubits", n)

    def density(self) -> "DensityMatrix":
        """Projector |psi><psi| as a DensityMatrix."""
        return DensityMatrix(np.outer(self.amplitudes, self.amplitudes.conj()))


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, unit-trace density operator on n qubits.

    Hermiticity and trace are validated on construction; positive
    semidefiniteness is a mathematical guarantee of the constructors in this
    package and can be checked explicitly with :meth:`validate_psd`.
    """

    matrix: np.ndarray
    n_qubits: int

    def __init__(self, matrix) -> None:
        mat = _as_complex_array(matrix, "density matrix")
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ValueError(f"density matrix must be square, got shape {mat.shape}")
        n = _n_qubits_from_dim(mat.shape[0], "density matrix")
        if np.max(np.abs(mat - mat.conj().T)) > 1e-12:
            raise ValueError("density matrix is not Hermitian within 1e-12")
        tr = mat.trace()
        if abs(tr - 1.0) > 1e-12:
            raise ValueError(f"density matrix trace {tr!r} deviates from 1 beyond 1e-12")
        mat = mat.copy()
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)
        object.__setattr__(self, "n_qubits", n)

    def validate_psd(self, atol: float = EIG_NEG_ATOL) -> None:
        """Raise if any eigenvalue lies below ``-atol``."""
        lo = float(np.linalg.eigvalsh(self.matrix)[0])
        if lo < -atol:
            raise ValueError(f"density matrix has eigenvalue {lo} below -{atol}")


@dataclass(frozen=True)
class EigenSystem:
    """Eigendecomposition of a Hermitian matrix, eigenvalues descending."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray  # orthonormal columns, one per eigenvalue


def kron(a: ComplexMatrix, b: ComplexMatrix) -> ComplexMatrix:
    """Tensor (Kronecker) product of two matrices."""
    return np.kron(np.asarray(a, dtype=np.complex128), np.asarray(b, dtype=np.complex128))


def _validate_keep(keep: Iterable[int], n: int) -> tuple[int, ...]:
    keep_t = tuple(int(q) for q in keep)
    if not keep_t:
        raise ValueError("keep must name at least one qubit")
    if len(set(keep_t)) != len(keep_t):
        raise ValueError(f"keep indices must be distinct, got {keep_t}")
    for q in keep_t:
        if q < 0 or q >= n:
            raise ValueError(f"qubit index {q} out of range for {n} qubits")
    return keep_t


def _partial_trace_raw(mat: np.ndarray, n: int, keep: Sequence[int]) -> np.ndarray:
    """Partial trace over the complement of ``keep``; output qubit j is keep[j]."""
    traced = [q for q in range(n) if q not in keep]
    dk, dt = 2 ** len(keep), 2 ** len(traced)
    t = mat.reshape((2,) * (2 * n))
    order = [*keep, *traced, *(n + q for q in keep), *(n + q for q in traced)]
    t = t.transpose(order).reshape(dk, dt, dk, dt)
    return np.trace(t, axis1=1, axis2=3)


def partial_trace(rho: DensityMatrix, keep: Iterable[int]) -> DensityMatrix:
    """Reduced state on the (ordered) qubit subset ``keep``."""
    keep_t = _validate_keep(keep, rho.n_qubits)
    if len(keep_t) == rho.n_qubits:
        # nothing traced out; still honors the requested qubit order
        perm = keep_t
        t = rho.matrix.reshape((2,) * (2 * rho.n_qubits))
        order = [*perm, *(rho.n_qubits + q for q in perm)]
        return DensityMatrix(t.transpose(order).reshape(rho.matrix.shape))
    return DensityMatrix(_partial_trace_raw(rho.matrix, rho.n_qubits, keep_t))


def reduced_density(psi: StateVector, keep: Iterable[int]) -> DensityMatrix:
    """Reduced state of a pure state without forming the full projector."""
    keep_t = _validate_keep(keep, psi.n_qubits)
    return DensityMatrix(_reduced_from_vec(psi.amplitudes, psi.n_qubits, keep_t))


def _reduced_from_vec(vec: np.ndarray, n: int, keep: Sequence[int]) -> np.ndarray:
    traced = [q for q in range(n) if q not in keep]
    t = vec.reshape((2,) * n).transpose([*keep, *traced])
    m = t.reshape(2 ** len(keep), 2 ** len(traced))
    return m @ m.conj().T


def hermitian_eig(h: ComplexMatrix) -> EigenSystem:
    """Eigendecomposition of a Hermitian matrix, eigenvalues sorted descending."""
    mat = _as_complex_array(h, "matrix")
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValueError(f"matrix must be square, got shape {mat.shape}")
    if np.max(np.abs(mat - mat.conj().T)) > HERM_ATOL:
        raise ValueError(f"matrix is not Hermitian within {HERM_ATOL}")
    vals, vecs = np.linalg.eigh(mat)
    vals = vals[::-1].copy()
    vecs = vecs[:, ::-1].copy()
    vals.setflags(write=False)
    vecs.setflags(write=False)
    return EigenSystem(eigenvalues=vals, eigenvectors=vecs)


def matrix_sqrt_psd(m: ComplexMatrix) -> ComplexMatrix:
    """Hermitian PSD square root; eigenvalues below -1e-8 are rejected,
    smaller negatives (numerical drift) are clamped to zero."""
    eig = hermitian_eig(m)
    lo = float(eig.eigenvalues[-1])
    if lo < -1e-8:
        raise ValueError(f"matrix has significantly negative eigenvalue {lo}")
    lam = np.clip(eig.eigenvalues, 0.0, None)
    v = eig.eigenvectors
    return (v * np.sqrt(lam)) @ v.conj().T


def haar_random_pure(n_qubits: int, seed: int) -> StateVector:
    """Haar-random pure state on ``n_qubits`` qubits (1..6), reproducible.

    Stream order: a PCG64 generator seeded with ``seed`` first draws the
    2^n real parts, then the 2^n imaginary parts, as standard normals; the
    resulting complex vector is normalized.
    """
    if not 1 <= n_qubits <= 6:
        raise ValueError(f"n_qubits must lie in [1, 6], got {n_qubits}")
    rng = np.random.default_rng(seed)
    dim = 2**n_qubits
    re = rng.standard_normal(dim)
    im = rng.standard_normal(dim)
    vec = re + 1j * im
    vec /= np.linalg.norm(vec)
    return StateVector(vec)


def permute_qubits(psi: StateVector, perm: Sequence[int]) -> StateVector:
    """Relabel qubits: output qubit j is input qubit perm[j]."""
    n = psi.n_qubits
    perm_t = tuple(int(p) for p in perm)
    if sorted(perm_t) != list(range(n)):
        raise ValueError(f"perm must be a permutation of 0..{n - 1}, got {perm_t}")
    t = psi.amplitudes.reshape((2,) * n).transpose(perm_t)
    return StateVector(t.reshape(-1))
