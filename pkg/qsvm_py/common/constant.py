import os

CPU_NUM = os.cpu_count() or 1

# Defines that should never be changed
PAULI_SYMBOLS = "IXYZ"

# Dense 2^n x 2^n matrices are only built up to this many qubits
DENSE_QUBIT_LIMIT = 10

# Alpha values above this are support vectors
SUPPORT_THRESHOLD = 1e-8

# Plain-text format versions
MODEL_FORMAT_VERSION = 1
SPLIT_FORMAT_VERSION = 1

# Significant digits written for every real number in text outputs
FLOAT_DIGITS = 17
