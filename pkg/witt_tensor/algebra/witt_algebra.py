"""
The restricted Witt algebra W(1) over F_p.

Basis e_i = x^(i+1) d/dx for -1 <= i <= p-2, bracket [e_i, e_j] = (j-i) e_(i+j)
(zero when i+j leaves the range) and p-map e_0^[p] = e_0, e_i^[p] = 0 otherwise.
Structure constants are computed by formula; nothing is tabulated.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np

from witt_tensor.algebra.ff_linalg import matrix_power, validate_prime, zeros
from witt_tensor.errors import IndexOutOfRangeError
from witt_tensor.schemas import CheckResult, CheckStatus, VerificationPhase

Term = Tuple[int, Optional[int]]


@dataclass(frozen=True)
class WittAlgebra:
    """W(1) for a fixed prime p > 3; carries p for every module built over it."""
    p: int

    def __post_init__(self):
        validate_prime(self.p)

    # ------------------------------------------------------------------
    # basis and grading
    # ------------------------------------------------------------------

    @property
    def dim(self) -> int:
        return self.p

    @property
    def indices(self) -> range:
        return range(-1, self.p - 1)

    @property
    def bplus_indices(self) -> range:
        """Generating subset of b+ = g_0 + g^+."""
        return range(0, self.p - 1)

    def check_index(self, i: int) -> int:
        if not -1 <= i <= self.p - 2:
            raise IndexOutOfRangeError(f"e_{i} is not a basis element of W(1) for p={self.p}")
        return i

    def position(self, i: int) -> int:
        """Array position of e_i in the basis (e_-1, ..., e_(p-2))."""
        return self.check_index(i) + 1

    def basis_name(self, i: int) -> str:
        return f"e_{self.check_index(i)}"

    # ------------------------------------------------------------------
    # structure constants
    # ------------------------------------------------------------------

    def bracket(self, i: int, j: int) -> Term:
        """[e_i, e_j] as (coefficient, index); (0, None) when it vanishes."""
        self.check_index(i)
        self.check_index(j)
        if not -1 <= i + j <= self.p - 2:
            return 0, None
        coeff = (j - i) % self.p
        if coeff == 0:
            return 0, None
        return coeff, i + j

    def pmap(self, i: int) -> Term:
        """e_i^[p] as (coefficient, index)."""
        self.check_index(i)
        if i == 0:
            return 1, 0
        return 0, None

    def ad_matrix(self, i: int) -> np.ndarray:
        """Matrix of ad(e_i) in the basis (e_-1, ..., e_(p-2)); column k is [e_i, e_(k-1)]."""
        m = zeros(self.p, self.p)
        for j in self.indices:
            coeff, k = self.bracket(i, j)
            if k is not None:
                m[self.position(k), self.position(j)] = coeff
        return m

    def derivation_matrix(self, i: int) -> np.ndarray:
        """Matrix of e_i on A(1) = F_p[x]/(x^p) in the basis 1, x, ..., x^(p-1): x^j -> j x^(j+i)."""
        self.check_index(i)
        m = zeros(self.p, self.p)
        for j in range(self.p):
            if 0 <= j + i <= self.p - 1 and j % self.p:
                m[j + i, j] = j % self.p
        return m

    def term_matrix(self, term: Term, representation) -> np.ndarray:
        """coeff * representation(index) for a (coeff, index) term, zero matrix for (0, None)."""
        coeff, index = term
        if index is None:
            size = representation(0).shape[0]
            return zeros(size, size)
        return np.mod(coeff * representation(index), self.p)

    # ------------------------------------------------------------------
    # self verification
    # ------------------------------------------------------------------

    def _nested_bracket(self, i: int, j: int, k: int) -> Dict[int, int]:
        """[e_i, [e_j, e_k]] as a sparse coefficient map."""
        out: Dict[int, int] = defaultdict(int)
        c1, m = self.bracket(j, k)
        if m is None:
            return out
        c2, n = self.bracket(i, m)
        if n is not None:
            out[n] = (out[n] + c1 * c2) % self.p
        return out

    def antisymmetry_failures(self) -> List[Tuple[int, int]]:
        failures = []
        for i in self.indices:
            for j in self.indices:
                c_ij, k_ij = self.bracket(i, j)
                c_ji, k_ji = self.bracket(j, i)
                if k_ij != k_ji or (c_ij + c_ji) % self.p:
                    failures.append((i, j))
        return failures

    def jacobi_failures(self) -> List[Tuple[int, int, int]]:
        failures = []
        for i in self.indices:
            for j in self.indices:
                for k in self.indices:
                    total: Dict[int, int] = defaultdict(int)
                    for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                        for index, coeff in self._nested_bracket(a, b, c).items():
                            total[index] = (total[index] + coeff) % self.p
                    if any(total.values()):
                        failures.append((i, j, k))
        return failures

    def grading_failures(self) -> List[Tuple[int, int]]:
        return [
            (i, j) for i in self.indices for j in self.indices
            if self.bracket(i, j)[1] not in (None, i + j)
        ]

    def restrictedness_failures(self) -> List[int]:
        """Indices i with ad(e_i)^p != ad(e_i^[p])."""
        return [
            i for i in self.indices
            if not np.array_equal(
                matrix_power(self.ad_matrix(i), self.p, self.p),
                self.term_matrix(self.pmap(i), self.ad_matrix),
            )
        ]

    def pmap_oracle_failures(self) -> List[int]:
        """Indices i where rho(e_i)^p on A(1) differs from rho(e_i^[p])."""
        return [
            i for i in self.indices
            if not np.array_equal(
                matrix_power(self.derivation_matrix(i), self.p, self.p),
                self.term_matrix(self.pmap(i), self.derivation_matrix),
            )
        ]

    def verify_structure(self) -> List[CheckResult]:
        """Machine-check the presentation of W(1); failures become report entries."""
        suites = [
            ("witt.antisymmetry", self.antisymmetry_failures, f"{self.p ** 2} pairs"),
            ("witt.jacobi", self.jacobi_failures, f"{self.p ** 3} triples"),
            ("witt.grading", self.grading_failures, f"{self.p ** 2} pairs"),
            ("witt.restrictedness", self.restrictedness_failures, "ad(e_i)^p = ad(e_i^[p])"),
            ("witt.pmap_oracle", self.pmap_oracle_failures, "rho(e_i)^p on A(1)"),
        ]
        results = []
        for name, suite, scope in suites:
            failures = suite()
            results.append(CheckResult(
                name=name,
                phase=VerificationPhase.STRUCTURE,
                status=CheckStatus.FAIL if failures else CheckStatus.PASS,
                detail=f"failed at {failures[:5]}" if failures else scope,
            ))
        return results
