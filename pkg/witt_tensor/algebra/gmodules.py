"""
Restricted W(1)-modules given by action matrices.

A GradedGModule stores rho(e_i) for every basis element e_i of W(1), an
optional integer degree per basis vector, optional basis names, and an
embedding into the module it was derived from (so vectors of submodules and
quotients can be written back as polynomials in x1, x2). Every constructor
validates Lie compatibility, restrictedness and grading before returning.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from witt_tensor.algebra.ff_linalg import (
    Subspace,
    commutator,
    format_vector,
    identity,
    kernel,
    matmul,
    matrix_power,
    quotient_map,
    zeros,
)
from witt_tensor.algebra.witt_algebra import WittAlgebra
from witt_tensor.errors import (
    DimensionMismatchError,
    IdentificationError,
    IncompleteWeightDecompositionError,
    IndexOutOfRangeError,
    ModuleAxiomError,
    NotInvariantError,
)
from witt_tensor.schemas import SimpleLabel

logger = logging.getLogger(__name__)


# ============================================================================
# MODULE TYPE
# ============================================================================

@dataclass(frozen=True, eq=False)
class GradedGModule:
    """A finite-dimensional restricted W(1)-module."""
    algebra: WittAlgebra
    action: Tuple[np.ndarray, ...]
    name: str
    degrees: Optional[Tuple[int, ...]] = None
    basis_names: Optional[Tuple[str, ...]] = None
    embedding: Optional[np.ndarray] = None
    root_names: Optional[Tuple[str, ...]] = None

    @property
    def p(self) -> int:
        return self.algebra.p

    @property
    def dim(self) -> int:
        return self.action[0].shape[0]

    def rho(self, i: int) -> np.ndarray:
        return self.action[self.algebra.position(i)]

    def act(self, i: int, v: np.ndarray) -> np.ndarray:
        return matmul(self.rho(i), np.asarray(v, dtype=np.int64), self.p)

    def act_word(self, word: Sequence[int], v: np.ndarray) -> np.ndarray:
        """Apply e_(word[-1]) first, then ..., then e_(word[0])."""
        for i in reversed(word):
            v = self.act(i, v)
        return v

    # ------------------------------------------------------------------
    # grading helpers
    # ------------------------------------------------------------------

    def degree_values(self) -> List[int]:
        return sorted(set(self.degrees)) if self.degrees is not None else []

    def homogeneous_component(self, degree: int) -> Subspace:
        if self.degrees is None:
            raise DimensionMismatchError(f"{self.name} carries no grading")
        return Subspace.coordinate(
            self.p, self.dim, (k for k, d in enumerate(self.degrees) if d == degree)
        )

    def degree_of(self, v: np.ndarray) -> Optional[int]:
        """Degree of a homogeneous nonzero vector; None if v is zero or mixes degrees."""
        if self.degrees is None:
            return None
        support = {self.degrees[k] for k in np.flatnonzero(np.mod(v, self.p))}
        return support.pop() if len(support) == 1 else None

    # ------------------------------------------------------------------
    # display
    # ------------------------------------------------------------------

    def lift(self, v: np.ndarray) -> np.ndarray:
        """Representative of v in the root module this one was derived from."""
        if self.embedding is None:
            return np.mod(np.asarray(v, dtype=np.int64), self.p)
        return matmul(self.embedding, np.asarray(v, dtype=np.int64), self.p)

    def describe(self, v: np.ndarray) -> str:
        names = self.root_names if self.embedding is not None else self.basis_names
        if names is None:
            names = tuple(f"b{k}" for k in range(self.dim))
        return format_vector(self.lift(v), names, self.p)

    # ------------------------------------------------------------------
    # invariants
    # ------------------------------------------------------------------

    def lie_compatibility_failures(self) -> List[Tuple[int, int]]:
        failures = []
        for i in self.algebra.indices:
            for j in self.algebra.indices:
                if j <= i:
                    continue
                expected = self.algebra.term_matrix(self.algebra.bracket(i, j), self.rho)
                if not np.array_equal(commutator(self.rho(i), self.rho(j), self.p), expected):
                    failures.append((i, j))
        return failures

    def restrictedness_failures(self) -> List[int]:
        return [
            i for i in self.algebra.indices
            if not np.array_equal(
                matrix_power(self.rho(i), self.p, self.p),
                self.algebra.term_matrix(self.algebra.pmap(i), self.rho),
            )
        ]

    def grading_failures(self) -> List[Tuple[int, int, int]]:
        """(i, row, col) with a nonzero entry of rho(e_i) not shifting degree by i."""
        if self.degrees is None:
            return []
        degrees = np.asarray(self.degrees)
        failures = []
        for i in self.algebra.indices:
            rows, cols = np.nonzero(self.rho(i))
            bad = degrees[rows] != degrees[cols] + i
            failures.extend((i, int(r), int(c)) for r, c in zip(rows[bad], cols[bad]))
        return failures

    def validate(self) -> "GradedGModule":
        n = self.dim
        if len(self.action) != self.algebra.dim:
            raise ModuleAxiomError(f"{self.name}: expected {self.algebra.dim} action matrices")
        if any(m.shape != (n, n) for m in self.action):
            raise DimensionMismatchError(f"{self.name}: action matrices must be {n}x{n}")
        if self.degrees is not None and len(self.degrees) != n:
            raise DimensionMismatchError(f"{self.name}: {len(self.degrees)} degrees for dim {n}")
        if failures := self.lie_compatibility_failures():
            raise ModuleAxiomError(f"{self.name}: Lie compatibility fails for pairs {failures[:5]}")
        if failures := self.restrictedness_failures():
            raise ModuleAxiomError(f"{self.name}: rho(e_i)^p != rho(e_i^[p]) for i in {failures}")
        if failures := self.grading_failures():
            raise ModuleAxiomError(f"{self.name}: grading violated at {failures[:5]}")
        logger.debug("[MODULES] validated %s (dim %d)", self.name, n)
        return self


def build_module(
    algebra: WittAlgebra,
    action: Sequence[np.ndarray],
    name: str,
    degrees: Optional[Sequence[int]] = None,
    basis_names: Optional[Sequence[str]] = None,
    embedding: Optional[np.ndarray] = None,
    root_names: Optional[Sequence[str]] = None,
) -> GradedGModule:
    """Freeze the matrices and validate every module axiom."""
    frozen = []
    for m in action:
        m = np.mod(np.asarray(m, dtype=np.int64), algebra.p)
        m.setflags(write=False)
        frozen.append(m)
    return GradedGModule(
        algebra=algebra,
        action=tuple(frozen),
        name=name,
        degrees=tuple(int(d) for d in degrees) if degrees is not None else None,
        basis_names=tuple(basis_names) if basis_names is not None else None,
        embedding=embedding,
        root_names=tuple(root_names) if root_names is not None else None,
    ).validate()


def monomial_name(a: int, b: Optional[int] = None) -> str:
    """x^a for one variable, x1^a x2^b for two."""
    def power(var: str, e: int) -> str:
        return "" if e == 0 else (var if e == 1 else f"{var}^{e}")

    if b is None:
        return power("x", a) or "1"
    return (power("x1", a) + power("x2", b)) or "1"


def _check_weight_label(algebra: WittAlgebra, lam: int) -> int:
    if not 0 <= lam <= algebra.p - 1:
        raise IndexOutOfRangeError(f"lambda={lam} outside 0..{algebra.p - 1}")
    return lam


# ============================================================================
# CONSTRUCTORS
# ============================================================================

def natural_module(algebra: WittAlgebra) -> GradedGModule:
    """A(1) = F_p[x]/(x^p) with e_k . x^j = j x^(j+k)."""
    p = algebra.p
    return build_module(
        algebra,
        [algebra.derivation_matrix(i) for i in algebra.indices],
        name="A(1)",
        degrees=range(p),
        basis_names=[monomial_name(j) for j in range(p)],
    )


def verma_module(algebra: WittAlgebra, lam: int) -> GradedGModule:
    """Z(lambda) with e_k . m_j = (j + k + 1 + (k + 1) lambda) m_(j+k)."""
    p = algebra.p
    _check_weight_label(algebra, lam)
    action = []
    for k in algebra.indices:
        m = zeros(p, p)
        for j in range(p):
            if 0 <= j + k <= p - 1:
                m[j + k, j] = (j + k + 1 + (k + 1) * lam) % p
        action.append(m)
    return build_module(
        algebra, action, name=f"Z({lam})", degrees=range(p),
        basis_names=[f"m{j}" for j in range(p)],
    )


def simple_module(algebra: WittAlgebra, lam: int) -> GradedGModule:
    """
    L(lambda): Z(lambda) itself for 1 <= lambda <= p-2, the trivial quotient of
    Z(0), and Z(p-1) modulo its trivial submodule span{m_0}.
    """
    p = algebra.p
    _check_weight_label(algebra, lam)
    z = verma_module(algebra, lam)
    if lam == 0:
        maximal = Subspace.coordinate(p, p, range(p - 1))
        return quotient_module(z, maximal, name="L(0)")
    if lam == p - 1:
        trivial = Subspace.coordinate(p, p, [0])
        return quotient_module(z, trivial, name=f"L({lam})")
    return build_module(
        algebra, z.action, name=f"L({lam})", degrees=z.degrees,
        basis_names=z.basis_names,
    )


def adjoint_module(algebra: WittAlgebra) -> GradedGModule:
    """W(1) acting on itself by ad, degrees i on e_i."""
    return build_module(
        algebra,
        [algebra.ad_matrix(i) for i in algebra.indices],
        name="adjoint",
        degrees=list(algebra.indices),
        basis_names=[algebra.basis_name(i) for i in algebra.indices],
    )


def tensor_index(a: int, b: int, p: int) -> int:
    """Position of x1^a x2^b in the lexicographic monomial order."""
    return a * p + b


def tensor_square_natural(algebra: WittAlgebra) -> GradedGModule:
    """
    A_(2) = F_p[x1, x2]/(x1^p, x2^p) with e_j f = x1^(j+1) df/dx1 + x2^(j+1) df/dx2.

    The derivation formula is cross-checked against the Kronecker sum
    rho(e) (x) I + I (x) rho(e) of two copies of A(1).
    """
    p = algebra.p
    n = p * p
    action = []
    for j in algebra.indices:
        m = zeros(n, n)
        for a in range(p):
            for b in range(p):
                col = tensor_index(a, b, p)
                if a and 0 <= a + j <= p - 1:
                    m[tensor_index(a + j, b, p), col] += a
                if b and 0 <= b + j <= p - 1:
                    m[tensor_index(a, b + j, p), col] += b
        action.append(m % p)
    natural = natural_module(algebra)
    kron = kronecker_tensor(natural, natural)
    for j, m in zip(algebra.indices, action):
        if not np.array_equal(m, kron.rho(j)):
            raise ModuleAxiomError(f"A_(2): derivation and Kronecker actions differ for e_{j}")
    names = [monomial_name(a, b) for a in range(p) for b in range(p)]
    return build_module(
        algebra, action, name="A_(2)",
        degrees=[a + b for a in range(p) for b in range(p)],
        basis_names=names,
    )


# ============================================================================
# FUNCTORS
# ============================================================================

def kronecker_tensor(left: GradedGModule, right: GradedGModule, name: Optional[str] = None) -> GradedGModule:
    """left (x) right with rho(e) (x) I + I (x) rho(e); degrees add."""
    if left.algebra != right.algebra:
        raise DimensionMismatchError("modules over different algebras")
    algebra = left.algebra
    i_left, i_right = identity(left.dim), identity(right.dim)
    action = [
        np.mod(np.kron(left.rho(i), i_right) + np.kron(i_left, right.rho(i)), algebra.p)
        for i in algebra.indices
    ]
    degrees = None
    if left.degrees is not None and right.degrees is not None:
        degrees = [a + b for a in left.degrees for b in right.degrees]
    names = None
    if left.basis_names is not None and right.basis_names is not None:
        names = [f"{a}⊗{b}" for a in left.basis_names for b in right.basis_names]
    return build_module(
        algebra, action, name=name or f"{left.name}⊗{right.name}",
        degrees=degrees, basis_names=names,
    )


def direct_sum(left: GradedGModule, right: GradedGModule, name: Optional[str] = None) -> GradedGModule:
    if left.algebra != right.algebra:
        raise DimensionMismatchError("modules over different algebras")
    algebra = left.algebra
    n1, n2 = left.dim, right.dim
    action = []
    for i in algebra.indices:
        m = zeros(n1 + n2, n1 + n2)
        m[:n1, :n1] = left.rho(i)
        m[n1:, n1:] = right.rho(i)
        action.append(m)
    degrees = None
    if left.degrees is not None and right.degrees is not None:
        degrees = list(left.degrees) + list(right.degrees)
    names = None
    if left.basis_names is not None and right.basis_names is not None:
        names = list(left.basis_names) + list(right.basis_names)
    return build_module(
        algebra, action, name=name or f"{left.name}⊕{right.name}",
        degrees=degrees, basis_names=names,
    )


def invariance_failures(m: GradedGModule, s: Subspace) -> List[int]:
    """Indices i with rho(e_i)(s) not contained in s."""
    if s.dim == 0:
        return []
    return [
        i for i in m.algebra.indices
        if not s.contains_all(matmul(s.basis, m.rho(i).T, m.p))
    ]


def _require_invariant(m: GradedGModule, s: Subspace) -> None:
    if s.ambient_dim != m.dim or s.p != m.p:
        raise DimensionMismatchError(f"subspace of F_{s.p}^{s.ambient_dim} in {m.name} (dim {m.dim})")
    if failures := invariance_failures(m, s):
        raise NotInvariantError(f"subspace of {m.name} is not stable under e_i for i in {failures}")


def _root_view(m: GradedGModule) -> Tuple[np.ndarray, Optional[Tuple[str, ...]]]:
    if m.embedding is not None:
        return m.embedding, m.root_names
    return identity(m.dim), m.basis_names


def submodule(m: GradedGModule, s: Subspace, name: Optional[str] = None) -> GradedGModule:
    """
    The submodule s of m in the coordinates of its RREF basis.

    The coordinates of a vector of s are its entries at the pivot columns,
    so rho restricted to s is (rho @ basis^T)[pivots].
    """
    _require_invariant(m, s)
    p = m.p
    pivots = list(s.pivots)
    action = [matmul(m.rho(i), s.basis.T, p)[pivots, :] for i in m.algebra.indices]
    degrees = None
    if m.degrees is not None:
        row_degrees = [m.degree_of(row) for row in s.basis]
        if all(d is not None for d in row_degrees):
            degrees = row_degrees
    names = None
    if m.basis_names is not None:
        names = [format_vector(row, m.basis_names, p) for row in s.basis]
    root, root_names = _root_view(m)
    return build_module(
        m.algebra, action, name=name or f"sub({m.name}, dim {s.dim})",
        degrees=degrees, basis_names=names,
        embedding=matmul(root, s.basis.T, p), root_names=root_names,
    )


def quotient_module(m: GradedGModule, s: Subspace, name: Optional[str] = None) -> GradedGModule:
    """
    m / s on the non-pivot coordinates of s; s must be invariant.

    The quotient keeps the grading only when s is a graded subspace, that is
    when every RREF row of s is homogeneous.
    """
    _require_invariant(m, s)
    p = m.p
    q, section = quotient_map(m.dim, s)
    action = [matmul(matmul(q, m.rho(i), p), section, p) for i in m.algebra.indices]
    free = s.non_pivots()
    degrees = None
    if m.degrees is not None and all(m.degree_of(row) is not None for row in s.basis):
        degrees = [m.degrees[j] for j in free]
    names = [m.basis_names[j] for j in free] if m.basis_names is not None else None
    root, root_names = _root_view(m)
    return build_module(
        m.algebra, action, name=name or f"{m.name}/(dim {s.dim})",
        degrees=degrees, basis_names=names,
        embedding=matmul(root, section, p), root_names=root_names,
    )


# ============================================================================
# WEIGHTS AND IDENTIFICATION
# ============================================================================

def weight_space(m: GradedGModule, weight: int) -> Subspace:
    """Eigenspace of rho(e_0) for the eigenvalue weight."""
    return kernel(np.mod(m.rho(0) - weight * identity(m.dim), m.p), m.p)


def weight_decomposition(m: GradedGModule) -> Dict[int, Subspace]:
    """
    Eigenspaces of rho(e_0) for every weight in F_p.

    rho(e_0)^p = rho(e_0) makes rho(e_0) diagonalizable over F_p, so the
    eigenspaces always fill the module for a validated module.
    """
    spaces = {weight: weight_space(m, weight) for weight in range(m.p)}
    total = sum(space.dim for space in spaces.values())
    if total != m.dim:
        raise IncompleteWeightDecompositionError(
            f"{m.name}: weight spaces have total dimension {total}, module has {m.dim}"
        )
    return spaces


def weight_dims(m: GradedGModule) -> List[int]:
    spaces = weight_decomposition(m)
    return [spaces[weight].dim for weight in range(m.p)]


def identify_simple(m: GradedGModule) -> SimpleLabel:
    """
    Label of a simple module from the e_0-weight of its vector killed by e_-1.

    The caller certifies simplicity; this only checks that the kernel of
    rho(e_-1) is a line of weight vectors and that the dimension matches.
    """
    p = m.p
    if m.dim == 0:
        raise IdentificationError(f"{m.name} is the zero module")
    if m.dim == 1:
        if any(rho.any() for rho in m.action):
            raise IdentificationError(f"{m.name}: a 1-dimensional restricted module of W(1) must be trivial")
        return SimpleLabel.from_lowest_weight(p, 0)
    lowest = kernel(m.rho(-1), p)
    if lowest.dim != 1:
        raise IdentificationError(f"{m.name}: ker e_-1 has dimension {lowest.dim}, expected 1")
    v = lowest.basis[0]
    image = m.act(0, v)
    mu = int(image[lowest.pivots[0]])
    if not np.array_equal(image, np.mod(mu * v, p)):
        raise IdentificationError(f"{m.name}: the vector killed by e_-1 is not an e_0-weight vector")
    label = SimpleLabel.from_lowest_weight(p, mu)
    if label.dim != m.dim:
        raise IdentificationError(
            f"{m.name}: lowest weight {mu} names {label.notation()} of dimension {label.dim}, module has {m.dim}"
        )
    return label
