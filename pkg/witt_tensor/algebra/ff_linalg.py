"""
Exact dense linear algebra over the prime field F_p.

Matrices are NumPy int64 arrays holding canonical residues 0..p-1. Every
function reduces its output mod p, so callers never see a non-canonical
entry. Elimination is deterministic (leftmost pivot column, topmost row),
which makes every normal form reproducible bit for bit.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, List, Sequence, Tuple

import numpy as np

from witt_tensor.errors import DimensionMismatchError, InvalidPrimeError

MAX_PRIME = 2 ** 31

# Largest integer float64 represents exactly; dot products bounded by this go through BLAS.
_FLOAT_EXACT = 2 ** 53
_INT_SAFE = 2 ** 62


# ============================================================================
# PRIME FIELD CONTEXT
# ============================================================================

def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def validate_prime(p: int, max_prime: int = MAX_PRIME) -> int:
    """Return p if it is a prime with 3 < p < max_prime, else raise InvalidPrimeError."""
    if isinstance(p, bool) or not isinstance(p, (int, np.integer)):
        raise InvalidPrimeError(f"{p!r} is not an integer")
    p = int(p)
    if not is_prime(p):
        raise InvalidPrimeError(f"{p} is not prime")
    if p <= 3:
        raise InvalidPrimeError(f"p={p}: characteristic p > 3 required")
    if p >= max_prime:
        raise InvalidPrimeError(f"p={p} exceeds the supported bound {max_prime}")
    return p


def inverse(a: int, p: int) -> int:
    a = int(a) % p
    if a == 0:
        raise ZeroDivisionError("0 has no inverse in F_p")
    return pow(a, p - 2, p)


def as_matrix(entries, p: int) -> np.ndarray:
    """Coerce nested lists or arrays to a canonical int64 matrix."""
    return np.mod(np.asarray(entries, dtype=np.int64), p)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=np.int64)


def matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Exact product mod p; works for matrix-matrix and matrix-vector shapes."""
    if a.shape[-1] != b.shape[0]:
        raise DimensionMismatchError(f"cannot multiply {a.shape} by {b.shape}")
    inner = a.shape[-1]
    bound = max(inner, 1) * (p - 1) ** 2
    if bound < _FLOAT_EXACT:
        product = a.astype(np.float64) @ b.astype(np.float64)
        return np.mod(np.rint(product).astype(np.int64), p)
    chunk = max(1, _INT_SAFE // ((p - 1) ** 2))
    out = np.zeros(a.shape[:-1] + b.shape[1:], dtype=np.int64)
    for start in range(0, inner, chunk):
        out = np.mod(out + a[..., start:start + chunk] @ b[start:start + chunk], p)
    return out


def matrix_power(m: np.ndarray, exponent: int, p: int) -> np.ndarray:
    """Square-and-multiply power of a square matrix mod p."""
    result = identity(m.shape[0])
    base = np.mod(m, p)
    while exponent:
        if exponent & 1:
            result = matmul(result, base, p)
        exponent >>= 1
        if exponent:
            base = matmul(base, base, p)
    return result


def commutator(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    return np.mod(matmul(a, b, p) - matmul(b, a, p), p)


# ============================================================================
# ROW REDUCTION
# ============================================================================

def rref(m: np.ndarray, p: int) -> Tuple[np.ndarray, int, List[int]]:
    """
    Reduced row-echelon form of m over F_p.

    Returns:
        (R, rank, pivot_columns) where R has the same shape as m.
    """
    a = np.mod(np.asarray(m, dtype=np.int64), p).copy()
    rows, cols = a.shape
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nonzero = np.flatnonzero(a[r:, c])
        if nonzero.size == 0:
            continue
        pivot_row = r + int(nonzero[0])
        if pivot_row != r:
            a[[r, pivot_row]] = a[[pivot_row, r]]
        a[r] = np.mod(a[r] * inverse(a[r, c], p), p)
        column = a[:, c].copy()
        column[r] = 0
        if column.any():
            a = np.mod(a - np.outer(column, a[r]), p)
        pivots.append(c)
        r += 1
    return a, r, pivots


def rank(m: np.ndarray, p: int) -> int:
    return rref(m, p)[1]


# ============================================================================
# SUBSPACES
# ============================================================================

@dataclass(frozen=True, eq=False)
class Subspace:
    """
    A subspace of F_p^n stored as its canonical RREF basis (rows).

    Two Subspace values spanning the same vectors have identical bases, so
    equality and hashing compare the basis bytes.
    """
    p: int
    ambient_dim: int
    basis: np.ndarray
    pivots: Tuple[int, ...] = field(default=())

    def __post_init__(self):
        self.basis.setflags(write=False)

    @classmethod
    def span(cls, vectors, p: int, ambient_dim: int) -> "Subspace":
        """Canonical subspace spanned by the given vectors (rows)."""
        m = np.asarray(vectors, dtype=np.int64)
        if m.size == 0:
            return cls.zero(p, ambient_dim)
        m = m.reshape(-1, ambient_dim) if m.ndim == 1 else m
        if m.shape[1] != ambient_dim:
            raise DimensionMismatchError(f"vectors of length {m.shape[1]} in F_p^{ambient_dim}")
        reduced, r, pivots = rref(m, p)
        return cls(p, ambient_dim, reduced[:r].copy(), tuple(pivots))

    @classmethod
    def zero(cls, p: int, ambient_dim: int) -> "Subspace":
        return cls(p, ambient_dim, zeros(0, ambient_dim), ())

    @classmethod
    def full(cls, p: int, ambient_dim: int) -> "Subspace":
        return cls(p, ambient_dim, identity(ambient_dim), tuple(range(ambient_dim)))

    @classmethod
    def coordinate(cls, p: int, ambient_dim: int, indices: Iterable[int]) -> "Subspace":
        """Span of the standard basis vectors e_j for j in indices."""
        chosen = sorted(set(indices))
        basis = zeros(len(chosen), ambient_dim)
        for row, j in enumerate(chosen):
            basis[row, j] = 1
        return cls(p, ambient_dim, basis, tuple(chosen))

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def non_pivots(self) -> List[int]:
        taken = set(self.pivots)
        return [j for j in range(self.ambient_dim) if j not in taken]

    def reduce(self, v: np.ndarray) -> np.ndarray:
        """Remainder of v (or of each row of a matrix) modulo this subspace."""
        v = np.mod(np.asarray(v, dtype=np.int64), self.p)
        if self.dim == 0:
            return v
        return np.mod(v - matmul(v[..., list(self.pivots)], self.basis, self.p), self.p)

    def coordinates(self, v: np.ndarray) -> np.ndarray:
        """Coordinates of v (assumed to lie in the subspace) in the RREF basis."""
        return np.mod(np.asarray(v, dtype=np.int64)[..., list(self.pivots)], self.p)

    def contains_all(self, vectors: np.ndarray) -> bool:
        vectors = np.asarray(vectors, dtype=np.int64)
        if vectors.size == 0:
            return True
        return not self.reduce(vectors).any()

    def is_subspace_of(self, other: "Subspace") -> bool:
        _check_compatible(self, other)
        return self.dim <= other.dim and other.contains_all(self.basis)

    def sort_key(self) -> Tuple[int, Tuple[int, ...]]:
        return self.dim, tuple(int(x) for x in self.basis.ravel())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.p == other.p and self.ambient_dim == other.ambient_dim
                and np.array_equal(self.basis, other.basis))

    def __hash__(self) -> int:
        return hash((self.p, self.ambient_dim, self.basis.tobytes()))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim}, p={self.p})"


def _check_compatible(a: Subspace, b: Subspace) -> None:
    if a.p != b.p or a.ambient_dim != b.ambient_dim:
        raise DimensionMismatchError(
            f"subspaces of F_{a.p}^{a.ambient_dim} and F_{b.p}^{b.ambient_dim}"
        )


def kernel(m: np.ndarray, p: int) -> Subspace:
    """Right null space {v : m v = 0} in canonical form."""
    m = np.asarray(m, dtype=np.int64)
    cols = m.shape[1]
    reduced, r, pivots = rref(m, p)
    taken = set(pivots)
    free = [j for j in range(cols) if j not in taken]
    if not free:
        return Subspace.zero(p, cols)
    basis = zeros(len(free), cols)
    for row, f in enumerate(free):
        basis[row, f] = 1
        for k, c in enumerate(pivots):
            basis[row, c] = (-reduced[k, f]) % p
    return Subspace.span(basis, p, cols)


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    _check_compatible(a, b)
    return Subspace.span(np.vstack([a.basis, b.basis]), a.p, a.ambient_dim)


def annihilator(a: Subspace) -> np.ndarray:
    """Rows c with c . v = 0 for all v in a; a is exactly their common kernel."""
    if a.dim == 0:
        return identity(a.ambient_dim)
    return kernel(a.basis, a.p).basis


def subspace_intersect(a: Subspace, b: Subspace) -> Subspace:
    _check_compatible(a, b)
    constraints = np.vstack([annihilator(a), annihilator(b)])
    if constraints.shape[0] == 0:
        return Subspace.full(a.p, a.ambient_dim)
    return kernel(constraints, a.p)


def contains(a: Subspace, v: np.ndarray) -> bool:
    v = np.asarray(v, dtype=np.int64)
    if v.shape[-1] != a.ambient_dim:
        raise DimensionMismatchError(f"vector of length {v.shape[-1]} in F_p^{a.ambient_dim}")
    return a.contains_all(v.reshape(1, -1))


def quotient_map(ambient: int, s: Subspace) -> Tuple[np.ndarray, np.ndarray]:
    """
    Projection q: F^n -> F^(n - dim s) with kernel s and a section with q @ section = I.

    Quotient coordinates are the non-pivot columns of s; the section sends the
    k-th quotient basis vector to the corresponding standard basis vector.
    """
    if s.ambient_dim != ambient:
        raise DimensionMismatchError(f"subspace of F_p^{s.ambient_dim} in quotient of F_p^{ambient}")
    free = s.non_pivots()
    q = zeros(len(free), ambient)
    section = zeros(ambient, len(free))
    for k, j in enumerate(free):
        q[k, j] = 1
        section[j, k] = 1
        for row, c in enumerate(s.pivots):
            q[k, c] = (-s.basis[row, j]) % s.p
    return q, section


def relative_subspace(outer: Subspace, inner: Subspace) -> Subspace:
    """Express inner (contained in outer) in the coordinates of outer's basis."""
    _check_compatible(outer, inner)
    if not inner.is_subspace_of(outer):
        raise DimensionMismatchError("inner subspace is not contained in outer subspace")
    return Subspace.span(outer.coordinates(inner.basis), outer.p, outer.dim)


# ============================================================================
# INCREMENTAL ECHELON FORM
# ============================================================================

class EchelonBuilder:
    """
    Grows an RREF basis one vector at a time.

    The basis is kept fully reduced, so reducing a new vector is a single
    product with the pivot coordinates.
    """

    def __init__(self, p: int, ambient_dim: int):
        self.p = p
        self.ambient_dim = ambient_dim
        self.rows = zeros(0, ambient_dim)
        self.pivots: List[int] = []

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def reduce(self, v: np.ndarray) -> np.ndarray:
        v = np.mod(np.asarray(v, dtype=np.int64), self.p)
        if not self.pivots:
            return v
        return np.mod(v - matmul(v[self.pivots], self.rows, self.p), self.p)

    def insert(self, v: np.ndarray) -> np.ndarray | None:
        """Add v; returns the new normalized basis row, or None when v is already spanned."""
        w = self.reduce(v)
        nonzero = np.flatnonzero(w)
        if nonzero.size == 0:
            return None
        c = int(nonzero[0])
        w = np.mod(w * inverse(w[c], self.p), self.p)
        if self.pivots:
            column = self.rows[:, c].copy()
            if column.any():
                self.rows = np.mod(self.rows - np.outer(column, w), self.p)
        position = int(np.searchsorted(self.pivots, c))
        self.rows = np.insert(self.rows, position, w, axis=0)
        self.pivots.insert(position, c)
        return w

    def to_subspace(self) -> Subspace:
        return Subspace(self.p, self.ambient_dim, self.rows.copy(), tuple(self.pivots))


# ============================================================================
# ENUMERATION
# ============================================================================

def projective_points(k: int, p: int) -> Iterator[np.ndarray]:
    """Representatives of the lines of F_p^k: first nonzero coordinate equal to 1."""
    for lead in range(k):
        for tail in itertools.product(range(p), repeat=k - lead - 1):
            v = np.zeros(k, dtype=np.int64)
            v[lead] = 1
            v[lead + 1:] = tail
            yield v


def projective_point_count(k: int, p: int) -> int:
    return (p ** k - 1) // (p - 1)


def format_vector(v: Sequence[int], names: Sequence[str], p: int) -> str:
    """Render a coordinate vector as a linear combination of named basis vectors."""
    terms = []
    for coeff, name in zip(v, names):
        coeff = int(coeff) % p
        if coeff == 0:
            continue
        if coeff == 1:
            terms.append(name)
        elif coeff == p - 1:
            terms.append(f"-{name}")
        else:
            terms.append(f"{coeff}*{name}")
    if not terms:
        return "0"
    return " + ".join(terms).replace("+ -", "- ")
