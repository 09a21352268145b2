"""
Structural algorithms for restricted W(1)-modules.

Everything here rests on two facts: e_-1 acts nilpotently and e_0
semisimply on a restricted module. So every nonzero submodule contains an
e_0-weight vector killed by e_-1, and the minimal submodules are found by
spinning the lines of the weight components of ker e_-1.
"""

from __future__ import annotations

import logging
import random
from collections import Counter
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from witt_tensor.algebra.ff_linalg import (
    EchelonBuilder,
    Subspace,
    kernel,
    matmul,
    projective_point_count,
    projective_points,
    rank,
    subspace_intersect,
    subspace_sum,
)
from witt_tensor.algebra.gmodules import (
    GradedGModule,
    identify_simple,
    quotient_module,
    submodule,
    weight_dims,
    weight_space,
)
from witt_tensor.errors import EnumerationBudgetError, HomogeneityError
from witt_tensor.schemas import CompositionReport, SimpleLabel

logger = logging.getLogger(__name__)

DEFAULT_ENUMERATION_CAP = 5


# ============================================================================
# SPINNING
# ============================================================================

def spin(m: GradedGModule, generators: Iterable[np.ndarray],
         indices: Optional[Sequence[int]] = None) -> Subspace:
    """
    Smallest subspace containing the generators and stable under rho(e_i), i in indices.

    indices defaults to the whole algebra; pass algebra.bplus_indices for u(b+).v.
    """
    indices = list(m.algebra.indices if indices is None else indices)
    builder = EchelonBuilder(m.p, m.dim)
    queue = []
    for v in generators:
        row = builder.insert(v)
        if row is not None:
            queue.append(row)
    if not indices:
        return builder.to_subspace()
    stacked = np.vstack([m.rho(i) for i in indices])
    while queue:
        images = matmul(stacked, queue.pop(), m.p).reshape(len(indices), m.dim)
        for image in images:
            row = builder.insert(image)
            if row is not None:
                queue.append(row)
    return builder.to_subspace()


def degree_dims(m: GradedGModule, s: Subspace) -> Dict[int, int]:
    """Dimension per degree of a graded subspace (its RREF rows are homogeneous)."""
    counts: Counter = Counter()
    for row in s.basis:
        d = m.degree_of(row)
        if d is None:
            raise HomogeneityError(f"{m.name}: subspace is not graded")
        counts[d] += 1
    return dict(counts)


def graded_part(m: GradedGModule, s: Subspace, degree: int) -> Subspace:
    """s_d for a graded subspace s."""
    rows = [row for row in s.basis if m.degree_of(row) == degree]
    return Subspace.span(rows, m.p, m.dim) if rows else Subspace.zero(m.p, m.dim)


def graded_bplus_spin_dims(m: GradedGModule, v: np.ndarray) -> Dict[int, int]:
    """
    dim u(b+)_l.v per degree i+l for a homogeneous v of degree i.

    Degrees from i to the top degree of m are all present; empty ones map to 0.
    """
    i = m.degree_of(v)
    if i is None:
        raise HomogeneityError(f"{m.name}: vector is zero or not homogeneous")
    dims = degree_dims(m, spin(m, [v], m.algebra.bplus_indices))
    return {d: dims.get(d, 0) for d in range(i, max(m.degree_values()) + 1)}


# ============================================================================
# LOWEST WEIGHT VECTORS
# ============================================================================

def kernel_weight_components(m: GradedGModule) -> Dict[int, Subspace]:
    """Nonzero pieces ker e_-1 intersected with each e_0-weight space."""
    lowest = kernel(m.rho(-1), m.p)
    components = {}
    for weight in range(m.p):
        piece = subspace_intersect(lowest, weight_space(m, weight))
        if piece.dim:
            components[weight] = piece
    return components


def lowest_weight_vectors(m: GradedGModule) -> List[Tuple[Optional[int], int, Subspace]]:
    """
    (degree, weight, space) for every nonzero intersection of ker e_-1 with a
    weight space and, on graded modules, with a homogeneous component.
    """
    out = []
    for weight, piece in kernel_weight_components(m).items():
        if m.degrees is None:
            out.append((None, weight, piece))
            continue
        for d in m.degree_values():
            part = subspace_intersect(piece, m.homogeneous_component(d))
            if part.dim:
                out.append((d, weight, part))
    return sorted(out, key=lambda item: (item[0] if item[0] is not None else -1, item[1]))


def kernel_in_degree(m: GradedGModule, degree: int) -> Subspace:
    """ker e_-1 intersected with the degree component."""
    return subspace_intersect(kernel(m.rho(-1), m.p), m.homogeneous_component(degree))


# ============================================================================
# MINIMAL SUBMODULES, SOCLE, SIMPLICITY
# ============================================================================

def minimal_submodules(m: GradedGModule, enumeration_cap: int = DEFAULT_ENUMERATION_CAP) -> List[Subspace]:
    """
    All minimal submodules, sorted by (dim, flattened RREF basis).

    Each weight component W of ker e_-1 is enumerated projectively, so the
    work per component is (p^dim W - 1)/(p - 1) spins.
    """
    if m.dim == 0:
        return []
    candidates = set()
    for weight, piece in kernel_weight_components(m).items():
        if piece.dim > enumeration_cap:
            raise EnumerationBudgetError(
                f"{m.name}: weight {weight} component of ker e_-1 has dimension {piece.dim} "
                f"({projective_point_count(piece.dim, m.p)} lines), cap is {enumeration_cap}"
            )
        for point in projective_points(piece.dim, m.p):
            candidates.add(spin(m, [matmul(point, piece.basis, m.p)]))
    ordered = sorted(candidates, key=Subspace.sort_key)
    minimal = [
        s for s in ordered
        if not any(t.dim < s.dim and t.is_subspace_of(s) for t in ordered)
    ]
    logger.debug("[STRUCTURE] %s: %d spins, %d minimal", m.name, len(ordered), len(minimal))
    return minimal


def socle(m: GradedGModule, enumeration_cap: int = DEFAULT_ENUMERATION_CAP) -> Subspace:
    total = Subspace.zero(m.p, m.dim)
    for s in minimal_submodules(m, enumeration_cap):
        total = subspace_sum(total, s)
    return total


def is_simple(m: GradedGModule, enumeration_cap: int = DEFAULT_ENUMERATION_CAP) -> bool:
    minimal = minimal_submodules(m, enumeration_cap)
    return len(minimal) == 1 and minimal[0].dim == m.dim


def is_indecomposable_via_socle(m: GradedGModule, enumeration_cap: int = DEFAULT_ENUMERATION_CAP) -> bool:
    """
    True when the socle is simple, which certifies indecomposability.

    False is inconclusive in general; a module with a non-simple socle may
    still be indecomposable.
    """
    return len(minimal_submodules(m, enumeration_cap)) == 1


# ============================================================================
# COMPOSITION SERIES
# ============================================================================

def composition_series(
    m: GradedGModule,
    enumeration_cap: int = DEFAULT_ENUMERATION_CAP,
    rng: Optional[random.Random] = None,
    name: Optional[str] = None,
) -> CompositionReport:
    """
    Composition series built bottom-up: take a minimal submodule of the
    current quotient, identify it, divide it out, repeat.

    The first minimal submodule in canonical order is taken, or a random one
    when rng is given; the factor multiset does not depend on the choice.
    """
    current = m
    bottom_up: List[SimpleLabel] = []
    while current.dim:
        candidates = minimal_submodules(current, enumeration_cap)
        chosen = rng.choice(candidates) if rng is not None else candidates[0]
        label = identify_simple(submodule(current, chosen))
        bottom_up.append(label)
        current = quotient_module(current, chosen)
    report = CompositionReport.from_factors(name or m.name, m.p, list(reversed(bottom_up)))
    logger.info("[SERIES] %s: %s", report.module_name, " ⊃ ".join(map(str, report.chain)))
    return report


def stability_failures(m: GradedGModule, shuffles: int, seed: int,
                       enumeration_cap: int = DEFAULT_ENUMERATION_CAP) -> List[int]:
    """Shuffle indices whose randomized series has a different factor multiset."""
    reference = composition_series(m, enumeration_cap).factor_multiset()
    failures = []
    for k in range(shuffles):
        rng = random.Random(seed * 1_000_003 + k)
        if composition_series(m, enumeration_cap, rng=rng).factor_multiset() != reference:
            failures.append(k)
    return failures


def head_lowest_weight(m: GradedGModule, v: np.ndarray,
                       enumeration_cap: int = DEFAULT_ENUMERATION_CAP) -> int:
    """Lowest weight of the top factor of the cyclic submodule generated by v."""
    cyclic = submodule(m, spin(m, [v]), name=f"<{m.describe(v)}>")
    return composition_series(cyclic, enumeration_cap).factors[0].lowest_weight


# ============================================================================
# GRADED PROPERTIES
# ============================================================================

def injectivity_failures(m: GradedGModule, shifts: Sequence[int] = (1, 2)) -> List[Tuple[int, int]]:
    """(s, n) with e_s: M_n -> M_(n+s) not injective, for n > 0 and n + s < p."""
    failures = []
    degrees = np.asarray(m.degrees)
    for s in shifts:
        for n in range(1, m.p - s):
            cols = np.flatnonzero(degrees == n)
            if cols.size == 0:
                continue
            block = m.rho(s)[:, cols]
            if rank(block, m.p) != cols.size:
                failures.append((s, n))
    return failures


def surjectivity_failures(m: GradedGModule, v: Subspace, start: int, l_values: Iterable[int]) -> List[int]:
    """l with e_-1(V_(l+start+1)) != V_(l+start) for a graded submodule V."""
    failures = []
    for l in l_values:
        upper = graded_part(m, v, l + start + 1)
        lower = graded_part(m, v, l + start)
        image = Subspace.span(matmul(upper.basis, m.rho(-1).T, m.p), m.p, m.dim) if upper.dim else upper
        if image != lower:
            failures.append(l)
    return failures


def nonzero_weights_equidimensional(m: GradedGModule) -> bool:
    """All weight spaces with nonzero weight have the same dimension."""
    dims = weight_dims(m)
    return len(set(dims[1:])) <= 1
