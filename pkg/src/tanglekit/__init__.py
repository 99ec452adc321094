"""tanglekit: multiqubit tangles, convex roofs and monogamy inequality audits."""

from tanglekit.linalg import (
    ComplexMatrix,
    DensityMatrix,
    EigenSystem,
    StateVector,
    haar_random_pure,
    hermitian_eig,
    kron,
    matrix_sqrt_psd,
    partial_trace,
    permute_qubits,
    reduced_density,
)

__version__ = "0.1.0"

__all__ = [
    "ComplexMatrix",
    "DensityMatrix",
    "EigenSystem",
    "StateVector",
    "haar_random_pure",
    "hermitian_eig",
    "kron",
    "matrix_sqrt_psd",
    "partial_trace",
    "permute_qubits",
    "reduced_density",
    "__version__",
]
