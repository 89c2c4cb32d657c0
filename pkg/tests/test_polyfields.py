"""Tests for polynomials and polynomial vector fields."""

from fractions import Fraction

import pytest

from veccoh.exactlinalg import DimensionMismatchError
from veccoh.polyfields import (
    Poly,
    VectorField,
    dtr,
    format_field,
    format_poly,
    jacobian,
    lie_bracket,
    monomial_exponents,
    parse_field,
    parse_poly,
    partial,
    trace_div,
)
from veccoh.slstructure import SlElement, embed
from veccoh.testing import random_poly, random_vector_field


class TestPoly:
    """Test Poly arithmetic."""

    def test_zero_coefficients_dropped(self):
        """Test that zero coefficients are not stored."""
        f = Poly(2, {(1, 0): 0, (0, 1): 2})
        assert dict(f.terms) == {(0, 1): Fraction(2)}

    def test_bad_exponent_raises(self):
        """Test that exponents must match the variable count."""
        with pytest.raises(DimensionMismatchError):
            Poly(2, {(1, 0, 0): 1})

    def test_arithmetic(self, x2):
        """Test ring operations."""
        x, y = x2
        f = (x + y) ** 2
        assert f == x * x + (x * y).scale(2) + y * y
        assert f - f == 0
        assert (x - y) * (x + y) == x ** 2 - y ** 2
        assert 3 * x == x.scale(3)

    def test_mixed_variable_counts_raise(self):
        """Test that polynomials on different spaces do not combine."""
        with pytest.raises(DimensionMismatchError):
            Poly.variable(2, 0) + Poly.variable(3, 0)

    def test_degree_and_homogeneity(self, x2):
        """Test degree bookkeeping."""
        x, y = x2
        assert Poly.zero(2).degree() == -1
        assert Poly.constant(2, 5).degree() == 0
        assert (x * y + x).degree() == 2
        assert (x * y).is_homogeneous()
        assert not (x * y + x).is_homogeneous()
        assert (x + Poly.constant(2, 7)).constant_term() == 7

    def test_partial_derivatives(self, x2):
        """Test formal differentiation."""
        x, y = x2
        f = x ** 3 * y
        assert partial(f, 0) == (x ** 2 * y).scale(3)
        assert f.partial(1) == x ** 3
        assert f.derivative((2, 1)) == x.scale(6)
        assert f.derivative((0, 2)).is_zero()

    def test_evaluate(self, x2):
        """Test exact evaluation."""
        x, y = x2
        assert (x * y + y).evaluate([Fraction(1, 2), 3]) == Fraction(9, 2)
        with pytest.raises(DimensionMismatchError):
            x.evaluate([1])

    def test_monomial_exponents(self):
        """Test the ordered enumeration of monomials."""
        assert monomial_exponents(2, 2) == [(2, 0), (1, 1), (0, 2)]
        assert monomial_exponents(3, 0) == [(0, 0, 0)]
        assert len(monomial_exponents(3, 2)) == 6


class TestVectorField:
    """Test vector fields and their brackets."""

    def test_bracket_of_linear_fields(self, x2):
        """Test [x1 d2, x2 d1] = x1 d1 - x2 d2."""
        x, y = x2
        zero = Poly.zero(2)
        X = VectorField([zero, x])
        Y = VectorField([y, zero])
        assert lie_bracket(X, Y) == VectorField([x, -y])

    def test_bracket_is_antisymmetric_and_jacobi(self, rng):
        """Test the Lie algebra axioms on random fields."""
        X, Y, Z = (random_vector_field(2, 2, rng) for _ in range(3))
        assert lie_bracket(X, Y) == -lie_bracket(Y, X)
        jacobi = (
            lie_bracket(X, lie_bracket(Y, Z))
            + lie_bracket(Y, lie_bracket(Z, X))
            + lie_bracket(Z, lie_bracket(X, Y))
        )
        assert jacobi.is_zero()

    def test_apply_is_derivation(self, rng, x2):
        """Test the Leibniz rule for X.(fg)."""
        x, y = x2
        X = random_vector_field(2, 2, rng)
        f, g = x * y + y, x ** 2
        assert X.apply(f * g) == X.apply(f) * g + f * X.apply(g)

    def test_jacobian_and_divergence(self, x2):
        """Test DX and tr(DX)."""
        x, y = x2
        X = VectorField([x * y, y ** 2])
        DX = jacobian(X)
        assert DX[0] == (y, x)
        assert DX[1] == (Poly.zero(2), y.scale(2))
        assert trace_div(X) == y.scale(3)

    def test_divergence_of_projective_field(self, x2):
        """Test that the covector field of e^1 has divergence 3 x1 on R^2."""
        x, _ = x2
        field = embed(SlElement.covector(2, 0))
        assert trace_div(field) == x.scale(3)
        assert dtr(field).coefficients() == [Poly.constant(2, 3), Poly.zero(2)]

    def test_euler_and_coordinate(self):
        """Test the named constructors."""
        E = VectorField.euler(3)
        assert trace_div(E) == 3
        assert VectorField.coordinate(3, 1).apply(Poly.variable(3, 1)) == 1

    def test_field_dimension_checks(self):
        """Test that components must live on the field's own space."""
        with pytest.raises(DimensionMismatchError):
            VectorField([Poly.variable(3, 0), Poly.zero(3)])
        with pytest.raises(DimensionMismatchError):
            VectorField.euler(2) + VectorField.euler(3)


class TestTextSyntax:
    """Test the textual polynomial and field syntax."""

    def test_format_poly(self, x2):
        """Test rendering of terms in descending order."""
        x, y = x2
        assert format_poly(x ** 2 - y.scale(Fraction(3, 2))) == "1 * x1^2 + -3/2 * x2"
        assert format_poly(Poly.zero(2)) == "0"

    def test_parse_poly(self, x2):
        """Test parsing with minus signs and fractions."""
        x, y = x2
        assert parse_poly("x1^2 - 3/2 * x2", 2) == x ** 2 - y.scale(Fraction(3, 2))
        assert parse_poly("2 * x1 * x2 + 1", 2) == (x * y).scale(2) + Poly.constant(2, 1)
        assert parse_poly("0", 2).is_zero()

    @pytest.mark.parametrize(
        "text",
        ["x1-x2", "x1 -x2", "x1 - x2", "x1 + -x2", "-x2+x1", "x1 + -1 * x2", "(x1-x2)"],
    )
    def test_parse_poly_signed_terms(self, text, x2):
        """Test that a sign starts a term whatever the spacing."""
        x, y = x2
        assert parse_poly(text, 2) == x - y

    def test_parse_poly_signs_inside_a_term(self, x2):
        """Test that signs after * or another sign stay in their term."""
        x, y = x2
        assert parse_poly("x1^2 -3*x2", 2) == x ** 2 - y.scale(3)
        assert parse_poly("x1 * -2 * x2", 2) == (x * y).scale(-2)
        assert parse_poly("x1 - -x2", 2) == x + y

    def test_formatted_poly_parses_back(self, rng):
        """Test that rendered polynomials, negative terms included, parse back."""
        f = random_poly(2, 3, rng, terms=5) - Poly.constant(2, Fraction(7, 3))
        assert parse_poly(format_poly(f), 2) == f

    def test_parse_poly_out_of_range(self):
        """Test that variables beyond m are rejected."""
        with pytest.raises(DimensionMismatchError):
            parse_poly("x3", 2)

    def test_parse_field(self, x2):
        """Test parsing a field with parenthesised components."""
        x, y = x2
        X = parse_field("(x1 + x2) d1 + x2 d2", 2)
        assert X == VectorField([x + y, y])
        assert parse_field("d2", 2) == VectorField.coordinate(2, 1)

    def test_field_format_parses_back(self, rng):
        """Test that rendered fields parse to the same field."""
        X = random_vector_field(2, 2, rng)
        assert parse_field(format_field(X), 2) == X
