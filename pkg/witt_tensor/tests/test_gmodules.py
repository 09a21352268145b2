"""
Tests for module constructors, functors and identification of simple modules.
"""

import numpy as np
import pytest

from witt_tensor.algebra.ff_linalg import Subspace
from witt_tensor.algebra.gmodules import (
    adjoint_module,
    build_module,
    direct_sum,
    identify_simple,
    kronecker_tensor,
    monomial_name,
    natural_module,
    quotient_module,
    simple_module,
    submodule,
    tensor_index,
    verma_module,
    weight_decomposition,
    weight_dims,
    weight_space,
)
from witt_tensor.algebra.module_structure import composition_series
from witt_tensor.algebra.witt_algebra import WittAlgebra
from witt_tensor.errors import IdentificationError, IndexOutOfRangeError, ModuleAxiomError, NotInvariantError
from witt_tensor.schemas import SimpleLabel


# ============================================================================
# CONSTRUCTORS
# ============================================================================

class TestNaturalModule:
    """Test A(1) = F_p[x]/(x^p)."""

    @pytest.mark.unit
    def test_shape_and_grading(self, natural5):
        """Test dimension, degrees and basis names."""
        assert natural5.dim == 5
        assert natural5.degrees == (0, 1, 2, 3, 4)
        assert natural5.basis_names == ("1", "x", "x^2", "x^3", "x^4")

    @pytest.mark.unit
    def test_action(self, natural5):
        """Test e_1 x^2 = 2 x^3 and e_-1 kills constants."""
        x2 = np.array([0, 0, 1, 0, 0])
        assert natural5.act(1, x2).tolist() == [0, 0, 0, 2, 0]
        assert not natural5.act(-1, np.array([1, 0, 0, 0, 0])).any()

    @pytest.mark.unit
    def test_act_word_applies_last_letter_first(self, natural5):
        """Test e_-1 e_1 x = 2 e_0 x = 2x."""
        x = np.array([0, 1, 0, 0, 0])
        assert natural5.act_word((-1, 1), x).tolist() == [0, 2, 0, 0, 0]

    @pytest.mark.unit
    def test_equals_verma_of_top_weight(self, algebra7):
        """Test A(1) = Z(p-1) as action matrices."""
        natural = natural_module(algebra7)
        z = verma_module(algebra7, 6)
        for i in algebra7.indices:
            assert np.array_equal(natural.rho(i), z.rho(i))

    @pytest.mark.unit
    def test_describe(self, natural5):
        """Test rendering of vectors as polynomials."""
        assert natural5.describe(np.array([0, 1, 0, 0, 3])) == "x + 3*x^4"


class TestSimpleModules:
    """Test L(λ) and the L(λ) = L⁻(μ) correspondence."""

    @pytest.mark.unit
    @pytest.mark.parametrize("p", [5, 7])
    def test_dimensions_and_labels(self, p):
        """Test dim L(λ) and that identification recovers λ."""
        algebra = WittAlgebra(p)
        for lam in range(p):
            module = simple_module(algebra, lam)
            label = identify_simple(module)
            assert label.highest_weight == lam
            assert module.dim == label.dim

    @pytest.mark.unit
    def test_special_labels(self, algebra5):
        """Test L(0) = L⁻(0) is trivial and L(4) = L⁻(1) has dimension p - 1."""
        trivial = simple_module(algebra5, 0)
        assert trivial.dim == 1
        assert not any(rho.any() for rho in trivial.action)
        top = simple_module(algebra5, 4)
        assert top.dim == 4
        assert identify_simple(top).lowest_weight == 1

    @pytest.mark.unit
    def test_weight_out_of_range(self, algebra5):
        """Test that λ must lie in 0..p-1."""
        with pytest.raises(IndexOutOfRangeError):
            simple_module(algebra5, 5)
        with pytest.raises(IndexOutOfRangeError):
            verma_module(algebra5, -1)

    @pytest.mark.unit
    def test_adjoint_is_simple_of_weight_p_minus_2(self, algebra7):
        """Test that the adjoint module identifies as L(p-2)."""
        label = identify_simple(adjoint_module(algebra7))
        assert label == SimpleLabel.from_highest_weight(7, 5)

    @pytest.mark.unit
    def test_identification_rejects_non_simple(self, natural5):
        """Test that A(1) itself is refused: its lowest weight names L(0) of dimension 1."""
        with pytest.raises(IdentificationError):
            identify_simple(natural5)


class TestTensorSquare:
    """Test A_(2) = A(1) ⊗ A(1)."""

    @pytest.mark.unit
    def test_matches_kronecker_sum(self, natural5, a2_5):
        """Test the derivation formula against the Kronecker sum."""
        kron = kronecker_tensor(natural5, natural5)
        assert a2_5.dim == 25
        for i in natural5.algebra.indices:
            assert np.array_equal(a2_5.rho(i), kron.rho(i))

    @pytest.mark.unit
    def test_monomial_layout(self, a2_5):
        """Test index a*p + b and the degree a + b of x1^a x2^b."""
        k = tensor_index(2, 3, 5)
        assert k == 13
        assert a2_5.basis_names[k] == "x1^2x2^3"
        assert a2_5.degrees[k] == 5

    @pytest.mark.unit
    def test_weight_dims(self, a2_5):
        """Test that every weight space of A_(2) has dimension p."""
        assert weight_dims(a2_5) == [5] * 5


# ============================================================================
# FUNCTORS
# ============================================================================

class TestSubmoduleAndQuotient:
    """Test submodules, quotients and their invariance guard."""

    @pytest.mark.unit
    def test_constants_submodule(self, natural5):
        """Test that the constants form a trivial submodule."""
        constants = Subspace.coordinate(5, 5, [0])
        sub = submodule(natural5, constants)
        assert sub.dim == 1
        assert identify_simple(sub).highest_weight == 0

    @pytest.mark.unit
    def test_quotient_by_constants(self, natural5):
        """Test A(1)/F = L(p-1) and that vectors lift back to polynomials."""
        quotient = quotient_module(natural5, Subspace.coordinate(5, 5, [0]), name="A(1)/F")
        assert quotient.dim == 4
        assert quotient.degrees == (1, 2, 3, 4)
        assert identify_simple(quotient).highest_weight == 4
        assert quotient.describe(np.array([1, 0, 0, 0])) == "x"

    @pytest.mark.unit
    def test_quotient_by_mixed_line_drops_grading(self, algebra5, natural5):
        """Test A(1) ⊕ L(0) modulo span{1 + 1'}, a submodule whose vector mixes degrees 0 and 4."""
        total = direct_sum(natural5, simple_module(algebra5, 0))
        assert total.degrees == (0, 1, 2, 3, 4, 4)
        line = Subspace.span([[1, 0, 0, 0, 0, 1]], 5, 6)
        quotient = quotient_module(total, line)
        assert quotient.degrees is None
        assert quotient.dim == 5
        assert composition_series(quotient).factor_multiset() == (0, 4)

    @pytest.mark.unit
    def test_quotient_by_graded_line_keeps_grading(self, algebra5, natural5):
        """Test that dividing out the constants of A(1) ⊕ L(0) keeps the degrees."""
        total = direct_sum(natural5, simple_module(algebra5, 0))
        quotient = quotient_module(total, Subspace.coordinate(5, 6, [0]))
        assert quotient.degrees == (1, 2, 3, 4, 4)

    @pytest.mark.unit
    def test_not_invariant(self, natural5):
        """Test that span{x^(p-1)} is rejected."""
        with pytest.raises(NotInvariantError):
            submodule(natural5, Subspace.coordinate(5, 5, [4]))

    @pytest.mark.unit
    def test_direct_sum(self, algebra5):
        """Test dimensions and degrees of L(0) ⊕ L(0)."""
        trivial = simple_module(algebra5, 0)
        total = direct_sum(trivial, trivial)
        assert total.dim == 2
        assert weight_dims(total) == [2, 0, 0, 0, 0]


class TestValidation:
    """Test that constructors reject broken actions."""

    @pytest.mark.unit
    def test_lie_compatibility_violation(self, natural5):
        """Test that zeroing rho(e_1) breaks [e_-1, e_1] = 2 e_0."""
        action = list(natural5.action)
        action[natural5.algebra.position(1)] = np.zeros((5, 5), dtype=np.int64)
        with pytest.raises(ModuleAxiomError, match="Lie compatibility"):
            build_module(natural5.algebra, action, name="broken")

    @pytest.mark.unit
    def test_grading_violation(self, natural5):
        """Test that a wrong degree vector is caught."""
        with pytest.raises(ModuleAxiomError, match="grading"):
            build_module(natural5.algebra, natural5.action, name="regraded", degrees=[0, 2, 1, 3, 4])

    @pytest.mark.unit
    def test_action_matrices_are_frozen(self, natural5):
        """Test that stored matrices are read-only."""
        with pytest.raises(ValueError):
            natural5.rho(0)[0, 0] = 1


# ============================================================================
# WEIGHTS AND NAMES
# ============================================================================

class TestWeights:
    """Test e_0-weight spaces."""

    @pytest.mark.unit
    def test_natural_weights(self, natural5):
        """Test that x^j spans the weight j space."""
        assert weight_space(natural5, 3) == Subspace.coordinate(5, 5, [3])
        spaces = weight_decomposition(natural5)
        assert sum(space.dim for space in spaces.values()) == 5


class TestMonomialName:
    """Test basis naming."""

    @pytest.mark.unit
    def test_names(self):
        """Test one- and two-variable monomials."""
        assert monomial_name(0) == "1"
        assert monomial_name(1) == "x"
        assert monomial_name(3) == "x^3"
        assert monomial_name(0, 0) == "1"
        assert monomial_name(1, 2) == "x1x2^2"
        assert monomial_name(0, 1) == "x2"
