"""
Witt Tensor: composition series of A(1) ⊗ A(1) for the restricted Witt algebra W(1).

Run every check for one prime with run_verification(p); the command-line
entry point lives in witt_tensor.main.
"""

from witt_tensor.graph import run_verification
from witt_tensor.schemas import CompositionReport, SimpleLabel, VerificationConfig, VerificationReport

__all__ = [
    "CompositionReport",
    "SimpleLabel",
    "VerificationConfig",
    "VerificationReport",
    "run_verification",
]
