"""Tests for the projective algebra sl(m+1)."""

from fractions import Fraction

import pytest

from veccoh.polyfields import Poly, VectorField, lie_bracket
from veccoh.slstructure import (
    SlElement,
    abstract_bracket,
    basis,
    basis_weights,
    embed,
    euler_field,
    from_coordinates,
    structure_constants,
    verify_embedding,
    verify_grading,
    verify_jacobi,
    weight,
)


class TestBasis:
    """Test the basis order and grading."""

    @pytest.mark.parametrize("m,dim", [(2, 8), (3, 15)])
    def test_dimension(self, m, dim):
        """Test dim sl(m+1) = m^2 + 2m."""
        assert len(basis(m)) == dim
        assert len(basis_weights(m)) == dim

    def test_small_m_rejected(self):
        """Test that m < 2 is rejected."""
        with pytest.raises(ValueError):
            basis(1)

    def test_order(self):
        """Test translations, then matrix units row-major, then covectors."""
        elems = basis(2)
        assert elems[0] == SlElement.translation(2, 0)
        assert elems[2 + 1 * 2 + 0] == SlElement.matrix_unit(2, 1, 0)
        assert elems[-1] == SlElement.covector(2, 1)
        assert [weight(e) for e in elems] == basis_weights(2)

    def test_coordinates_round_trip(self):
        """Test from_coordinates against coordinates."""
        coords = [Fraction(n, 3) for n in range(8)]
        assert from_coordinates(2, coords).coordinates() == coords
        with pytest.raises(ValueError):
            from_coordinates(2, coords[:-1])

    def test_mixed_element_has_no_weight(self):
        """Test that inhomogeneous elements are rejected."""
        with pytest.raises(ValueError):
            weight(SlElement.translation(2, 0) + SlElement.covector(2, 0))


class TestEmbedding:
    """Test the realisation as polynomial vector fields."""

    def test_translation_field(self):
        """Test h* = -h^i d_i."""
        assert embed(SlElement.translation(2, 1)) == VectorField.coordinate(2, 1).scale(-1)

    def test_identity_is_minus_euler(self):
        """Test that the identity of gl(m) embeds as -E."""
        assert embed(SlElement.identity(3)) == -euler_field(3)

    def test_covector_field(self, x2):
        """Test α* = α(x) x^i d_i."""
        x, y = x2
        assert embed(SlElement.covector(2, 1)) == VectorField([x * y, y * y])

    @pytest.mark.parametrize("m,pairs", [(2, 28), (3, 105)])
    def test_homomorphism(self, m, pairs):
        """Test that embed preserves brackets on every basis pair."""
        report = verify_embedding(m)
        assert report.passed
        assert report.checked == pairs
        assert report.counterexample is None

    def test_grading(self):
        """Test that the Euler field grades the embedded basis."""
        assert verify_grading(2).passed
        assert verify_grading(3).checked == 15

    def test_jacobi(self):
        """Test the Jacobi identity on basis triples."""
        report = verify_jacobi(2)
        assert report.passed
        assert report.checked == 56


class TestBracket:
    """Test the abstract bracket."""

    def test_translation_covector(self):
        """Test [h, α] = α(h)·1 + h⊗α."""
        bracket = abstract_bracket(SlElement.translation(2, 0), SlElement.covector(2, 0))
        assert bracket.A == ((2, 0), (0, 1))
        assert not any(bracket.h) and not any(bracket.alpha)

    def test_antisymmetry(self):
        """Test [a, b] = -[b, a] on the basis."""
        elems = basis(2)
        for a in elems:
            for b in elems:
                assert abstract_bracket(a, b) == -abstract_bracket(b, a)

    def test_structure_constants(self):
        """Test that structure constants reproduce the bracket."""
        m = 2
        elems = basis(m)
        constants = structure_constants(m)
        for (a, b), coeffs in constants.items():
            assert a < b
            total = SlElement.zero(m)
            for c, v in coeffs.items():
                total = total + elems[c].scale(v)
            assert total == abstract_bracket(elems[a], elems[b])

    def test_dimension_mismatch(self):
        """Test that elements of different algebras do not bracket."""
        with pytest.raises(ValueError):
            abstract_bracket(SlElement.zero(2), SlElement.zero(3))

    def test_embedded_bracket_of_covector_and_translation(self):
        """Test a bracket that lands in gl(m) through the fields."""
        h = embed(SlElement.translation(2, 0))
        alpha = embed(SlElement.covector(2, 0))
        expected = embed(abstract_bracket(SlElement.translation(2, 0), SlElement.covector(2, 0)))
        assert lie_bracket(h, alpha) == expected
        assert expected.components[0] == Poly.variable(2, 0).scale(-2)
