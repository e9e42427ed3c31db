__version__ = "0.1.0"

from qsvm_py.qsim import PauliString, EncodingSpec, encode, kernel_value
from qsvm_py.kernels import ClassicalKernelParams, KernelMatrix, gram_matrix
from qsvm_py.svm import SvmModel, solve_dual
