"""
Exact arithmetic for restricted W(1)-modules over F_p.

- ff_linalg: matrices and subspaces over F_p
- witt_algebra: the restricted Witt algebra W(1)
- gmodules: module constructors, functors and simple-module identification
- module_structure: spinning, socles and composition series
- tensor_pipeline: the tensor square of the natural module and its chains
"""

from witt_tensor.algebra.ff_linalg import Subspace, kernel, rank, rref
from witt_tensor.algebra.gmodules import (
    GradedGModule,
    adjoint_module,
    identify_simple,
    kronecker_tensor,
    natural_module,
    simple_module,
    tensor_square_natural,
    verma_module,
)
from witt_tensor.algebra.module_structure import composition_series, minimal_submodules, socle, spin
from witt_tensor.algebra.tensor_pipeline import TensorDecomposition, build_decomposition
from witt_tensor.algebra.witt_algebra import WittAlgebra

__all__ = [
    "GradedGModule",
    "Subspace",
    "TensorDecomposition",
    "WittAlgebra",
    "adjoint_module",
    "build_decomposition",
    "composition_series",
    "identify_simple",
    "kernel",
    "kronecker_tensor",
    "minimal_submodules",
    "natural_module",
    "rank",
    "rref",
    "simple_module",
    "socle",
    "spin",
    "tensor_square_natural",
    "verma_module",
]
