"""
Tests for spinning, minimal submodules and composition series.
"""

import random

import numpy as np
import pytest

from witt_tensor.algebra.ff_linalg import Subspace, subspace_sum
from witt_tensor.algebra.gmodules import direct_sum, simple_module, tensor_index, verma_module
from witt_tensor.algebra.module_structure import (
    composition_series,
    degree_dims,
    graded_bplus_spin_dims,
    head_lowest_weight,
    injectivity_failures,
    is_indecomposable_via_socle,
    is_simple,
    kernel_weight_components,
    lowest_weight_vectors,
    minimal_submodules,
    nonzero_weights_equidimensional,
    socle,
    spin,
    stability_failures,
    surjectivity_failures,
)
from witt_tensor.errors import EnumerationBudgetError, HomogeneityError


def basis_vector(n: int, k: int) -> np.ndarray:
    v = np.zeros(n, dtype=np.int64)
    v[k] = 1
    return v


# ============================================================================
# SPINNING
# ============================================================================

class TestSpin:
    """Test cyclic submodules."""

    @pytest.mark.unit
    def test_top_monomial_generates_everything(self, natural5):
        """Test that e_-1 lowers x^4 down to 1."""
        assert spin(natural5, [basis_vector(5, 4)]).dim == 5

    @pytest.mark.unit
    def test_constants_are_stable(self, natural5):
        """Test that 1 spans a submodule."""
        assert spin(natural5, [basis_vector(5, 0)]) == Subspace.coordinate(5, 5, [0])

    @pytest.mark.unit
    def test_bplus_spin(self, natural5):
        """Test u(b+).x = span{x, ..., x^4}."""
        s = spin(natural5, [basis_vector(5, 1)], natural5.algebra.bplus_indices)
        assert s == Subspace.coordinate(5, 5, [1, 2, 3, 4])
        assert graded_bplus_spin_dims(natural5, basis_vector(5, 1)) == {1: 1, 2: 1, 3: 1, 4: 1}

    @pytest.mark.unit
    def test_empty_index_set(self, natural5):
        """Test that spinning under no operators returns the span of the generators."""
        assert spin(natural5, [basis_vector(5, 2)], []).dim == 1


class TestGradedHelpers:
    """Test graded dimension bookkeeping."""

    @pytest.mark.unit
    def test_degree_dims(self, natural5):
        """Test dimensions per degree of a graded subspace."""
        s = Subspace.coordinate(5, 5, [1, 3])
        assert degree_dims(natural5, s) == {1: 1, 3: 1}

    @pytest.mark.unit
    def test_mixed_degrees_rejected(self, natural5):
        """Test that 1 + x is not homogeneous."""
        with pytest.raises(HomogeneityError):
            degree_dims(natural5, Subspace.span([[1, 1, 0, 0, 0]], 5, 5))

    @pytest.mark.unit
    def test_injectivity(self, natural5, a2_5):
        """Test e_1, e_2 injective on positive degrees of A(1) and A_(2)."""
        assert injectivity_failures(natural5) == []
        assert injectivity_failures(a2_5) == []

    @pytest.mark.unit
    def test_surjectivity_on_natural(self, natural5):
        """Test e_-1: x^(l+1) -> (l+1) x^l is onto below degree p."""
        assert surjectivity_failures(natural5, Subspace.full(5, 5), 0, range(0, 4)) == []

    @pytest.mark.unit
    def test_equal_nonzero_weights(self, natural5, a2_5):
        """Test that nonzero weight spaces share a dimension."""
        assert nonzero_weights_equidimensional(natural5)
        assert nonzero_weights_equidimensional(a2_5)


# ============================================================================
# LOWEST WEIGHT VECTORS
# ============================================================================

class TestLowestWeightVectors:
    """Test the weight components of ker e_-1."""

    @pytest.mark.unit
    def test_natural_module(self, natural5):
        """Test that only the constants are killed by e_-1."""
        components = kernel_weight_components(natural5)
        assert list(components) == [0]
        assert components[0] == Subspace.coordinate(5, 5, [0])
        [(degree, weight, space)] = lowest_weight_vectors(natural5)
        assert (degree, weight, space.dim) == (0, 0, 1)

    @pytest.mark.unit
    def test_symmetric_top_level(self, decomposition7):
        """Test that the degree 2 lowest weight line of A_s+ is the class of x1x2 and degree 5 has none."""
        top = decomposition7.sym_plus
        found = {degree: (weight, space) for degree, weight, space in lowest_weight_vectors(top)}
        assert 5 not in found
        weight, space = found[2]
        assert (weight, space.dim) == (2, 1)
        lifted = subspace_sum(Subspace.span([top.lift(space.basis[0])], 7, 49), decomposition7.sym_prime)
        x1x2 = basis_vector(49, tensor_index(1, 1, 7))
        assert lifted.contains_all(x1x2.reshape(1, -1))

    @pytest.mark.unit
    def test_antisymmetric_top_level(self, decomposition7):
        """Test that the degree 3 lowest weight line of A_a+ is the class of x1^2x2 - x1x2^2."""
        top = decomposition7.alt_plus
        found = {degree: (weight, space) for degree, weight, space in lowest_weight_vectors(top)}
        weight, space = found[3]
        assert (weight, space.dim) == (3, 1)
        lifted = subspace_sum(Subspace.span([top.lift(space.basis[0])], 7, 49), decomposition7.alt_prime)
        w = basis_vector(49, tensor_index(2, 1, 7)) - basis_vector(49, tensor_index(1, 2, 7))
        assert lifted.contains_all(np.mod(w, 7).reshape(1, -1))


# ============================================================================
# MINIMAL SUBMODULES AND SIMPLICITY
# ============================================================================

class TestMinimalSubmodules:
    """Test enumeration of minimal submodules."""

    @pytest.mark.unit
    def test_natural_has_simple_socle(self, natural5):
        """Test that the constants are the unique minimal submodule of A(1)."""
        minimal = minimal_submodules(natural5)
        assert minimal == [Subspace.coordinate(5, 5, [0])]
        assert socle(natural5) == minimal[0]
        assert is_indecomposable_via_socle(natural5)
        assert not is_simple(natural5)

    @pytest.mark.unit
    def test_simple_modules(self, algebra7):
        """Test that L(λ) is simple for every λ."""
        for lam in range(7):
            assert is_simple(simple_module(algebra7, lam))

    @pytest.mark.unit
    def test_semisimple_sum_has_many_lines(self, algebra5):
        """Test that L(0) ⊕ L(0) has p + 1 minimal submodules."""
        trivial = simple_module(algebra5, 0)
        total = direct_sum(trivial, trivial)
        assert len(minimal_submodules(total)) == 6
        assert not is_indecomposable_via_socle(total)
        assert socle(total).dim == 2

    @pytest.mark.unit
    def test_non_isomorphic_sum(self, algebra5):
        """Test that L(1) ⊕ L(2) has two minimal submodules and so no simple socle."""
        total = direct_sum(simple_module(algebra5, 1), simple_module(algebra5, 2))
        minimal = minimal_submodules(total)
        assert [s.dim for s in minimal] == [5, 5]
        assert not is_indecomposable_via_socle(total)
        assert socle(total).dim == 10
        assert not is_simple(total)

    @pytest.mark.unit
    def test_enumeration_cap(self, algebra5):
        """Test that a component larger than the cap raises."""
        trivial = simple_module(algebra5, 0)
        with pytest.raises(EnumerationBudgetError):
            minimal_submodules(direct_sum(trivial, trivial), enumeration_cap=1)

    @pytest.mark.unit
    def test_canonical_order(self, algebra5):
        """Test that results are sorted by dimension, then basis."""
        trivial = simple_module(algebra5, 0)
        minimal = minimal_submodules(direct_sum(trivial, trivial))
        keys = [s.sort_key() for s in minimal]
        assert keys == sorted(keys)


# ============================================================================
# COMPOSITION SERIES
# ============================================================================

class TestCompositionSeries:
    """Test generic composition series."""

    @pytest.mark.unit
    def test_natural_module(self, natural5):
        """Test A(1) ⊃ F ⊃ 0 with factors L(p-1), L(0)."""
        report = composition_series(natural5)
        assert report.chain == [5, 1, 0]
        assert [label.highest_weight for label in report.factors] == [4, 0]
        assert report.grothendieck == [1, 0, 0, 0, 1]

    @pytest.mark.unit
    def test_verma_zero(self, algebra7):
        """Test Z(0) with a trivial top over a p-1 dimensional submodule."""
        report = composition_series(verma_module(algebra7, 0))
        assert report.factor_multiset() == (0, 6)
        assert report.factors[0].highest_weight == 0

    @pytest.mark.unit
    def test_random_choices_keep_factors(self, natural5, a2_5):
        """Test Jordan-Hölder stability under shuffled choices."""
        assert stability_failures(natural5, shuffles=3, seed=0) == []
        assert stability_failures(a2_5, shuffles=2, seed=1) == []

    @pytest.mark.unit
    def test_random_series_agrees(self, algebra5):
        """Test that a random choice among many minimal submodules gives the same factors."""
        trivial = simple_module(algebra5, 0)
        total = direct_sum(trivial, trivial)
        report = composition_series(total, rng=random.Random(4))
        assert report.factor_multiset() == (0, 0)

    @pytest.mark.integration
    @pytest.mark.parametrize("seed", [3, 4, 7, 8, 9])
    def test_random_series_on_graded_module(self, a2_5, seed):
        """Test randomized series of A_(2) whose minimal submodules mix degrees."""
        report = composition_series(a2_5, rng=random.Random(seed))
        assert report.grothendieck == [2, 1, 1, 1, 2]
        assert report.chain[0] == 25

    @pytest.mark.integration
    def test_tensor_square_vector(self, a2_5):
        """Test [A] = [2, 1, 1, 1, 2] for p = 5."""
        report = composition_series(a2_5)
        assert report.grothendieck == [2, 1, 1, 1, 2]
        assert report.module_dim == 25

    @pytest.mark.unit
    def test_head_lowest_weight(self, natural5):
        """Test that the head of A(1) is L⁻(1)."""
        assert head_lowest_weight(natural5, basis_vector(5, 4)) == 1
        assert head_lowest_weight(natural5, basis_vector(5, 0)) == 0
