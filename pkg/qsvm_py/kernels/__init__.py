from .inner import ClassicalKernelParams, KernelMatrix, KernelFamilies
from .gram import (
    Kernel,
    quantum_gram,
    quantum_cross_gram,
    classical_gram,
    kernel_descriptor,
    gram_matrix,
    cross_gram_matrix,
    min_eigenvalue,
)
from .io import gram_csv_text, write_gram_csv, read_gram_csv


__all__ = [
    "ClassicalKernelParams",
    "KernelMatrix",
    "KernelFamilies",
    "Kernel",
    "quantum_gram",
    "quantum_cross_gram",
    "classical_gram",
    "kernel_descriptor",
    "gram_matrix",
    "cross_gram_matrix",
    "min_eigenvalue",
    "gram_csv_text",
    "write_gram_csv",
    "read_gram_csv",
]
