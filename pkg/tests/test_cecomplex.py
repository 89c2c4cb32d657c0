"""Tests for Chevalley-Eilenberg cochains, the differential and cohomology."""

from fractions import Fraction

import pytest

from veccoh import ModuleSpec
from veccoh.cecomplex import (
    Cochain,
    FieldAlgebra,
    NotACocycleError,
    WeightError,
    ce_differential,
    class_coordinates,
    cohomology_dim,
    differential_at,
    differential_matrix,
    is_coboundary,
    module_weight,
    sl_algebra,
    truncated_cohomology_dim,
    weight_basis,
)
from veccoh.diffops import DiffOp, lie_derivative_op, monomial_weight
from veccoh.exactlinalg import DimensionMismatchError, SparseMatrix
from veccoh.expected import expected_dim
from veccoh.modules import create_module
from veccoh.polyfields import Poly, VectorField, trace_div
from veccoh.slstructure import basis, embed, structure_constants
from veccoh.testing import random_diffop

FUNCTIONS_K0 = ModuleSpec(2, "function", 0, 0, 0)
CONTRACTIONS_K0 = ModuleSpec(2, "multivector", 1, 0, 0)
WEDGES_K0 = ModuleSpec(2, "form", 0, 1, 0)


def _table_cells():
    """Every tabulated (spec, u, expected) for m in {2, 3} and k <= 2; open cells are left out."""
    cells = []
    for m in (2, 3):
        for k in (0, 1, 2):
            pairs = [("function", 0, 0)] + [
                (species, p, q) for species in ("multivector", "form") for p in range(m + 1) for q in range(m + 1)
            ]
            for species, p, q in pairs:
                spec = ModuleSpec(m, species, p, q, k)
                for u in (0, 1):
                    expected, _ = expected_dim(spec, u)
                    if expected is None:
                        continue
                    marks = [pytest.mark.slow] if m == 3 or k == 2 else []
                    cells.append(pytest.param(spec, u, expected, marks=marks, id=f"{spec.tag()}-H{u}"))
    return cells


def _coboundary_of(D):
    """The 1-cochain X ↦ L_X D on the sl(3) basis."""
    return Cochain.from_function(sl_algebra(2), D.spec, 1, lambda X: lie_derivative_op(X, D))


class TestFieldAlgebra:
    """Test finite field families."""

    def test_sl_algebra(self):
        """Test the cached sl(3) family."""
        algebra = sl_algebra(2)
        assert algebra.dim == 8
        assert algebra.m == 2
        assert algebra.weights == [-1, -1, 0, 0, 0, 0, 1, 1]
        assert sl_algebra(2) is algebra

    def test_from_fields_recovers_structure_constants(self):
        """Test solving for the structure constants of the embedded basis."""
        algebra = FieldAlgebra.from_fields([embed(e) for e in basis(2)])
        assert algebra.structure == structure_constants(2)
        assert algebra.weights == [-1, -1, 0, 0, 0, 0, 1, 1]

    def test_bracket_lookup(self):
        """Test ordered and reversed bracket lookups."""
        algebra = sl_algebra(2)
        for (a, b), coeffs in algebra.structure.items():
            assert algebra.bracket(a, b) == coeffs
            assert algebra.bracket(b, a) == {c: -v for c, v in coeffs.items()}
        assert algebra.bracket(3, 3) == {}

    def test_dependent_fields_rejected(self):
        """Test that a dependent family is rejected."""
        E = VectorField.euler(2)
        with pytest.raises(ValueError):
            FieldAlgebra.from_fields([E, E.scale(2)])

    def test_open_family_rejected(self):
        """Test that a family not closed under the bracket is rejected."""
        x = Poly.variable(2, 0)
        zero = Poly.zero(2)
        with pytest.raises(ValueError):
            FieldAlgebra.from_fields([VectorField.coordinate(2, 0), VectorField([x * x, zero])])

    def test_inhomogeneous_family_has_no_weights(self):
        """Test that mixed-degree fields carry no grading."""
        x = Poly.variable(2, 0)
        one = Poly.constant(2, 1)
        zero = Poly.zero(2)
        algebra = FieldAlgebra.from_fields([VectorField([one + x, zero])])
        assert algebra.weights is None
        with pytest.raises(WeightError):
            weight_basis(FUNCTIONS_K0, 0, algebra=algebra)


class TestCochain:
    """Test cochain storage and arithmetic."""

    def test_value_is_alternating(self):
        """Test permutation signs and repeated arguments."""
        D = DiffOp.identity(FUNCTIONS_K0)
        c = Cochain(FUNCTIONS_K0, 2, {(1, 4): D})
        assert c.value((1, 4)) == D
        assert c.value((4, 1)) == -D
        assert c.value((1, 1)).is_zero()
        assert c.value((0, 2)).is_zero()
        with pytest.raises(DimensionMismatchError):
            c.value((1,))

    def test_unsorted_arguments_rejected(self):
        """Test that stored argument tuples must be increasing."""
        with pytest.raises(DimensionMismatchError):
            Cochain(FUNCTIONS_K0, 2, {(4, 1): DiffOp.identity(FUNCTIONS_K0)})

    def test_value_spec_checked(self):
        """Test that values must live in the cochain's module."""
        other = ModuleSpec(2, "function", 0, 0, 1)
        with pytest.raises(DimensionMismatchError):
            Cochain(FUNCTIONS_K0, 0, {(): DiffOp.identity(other)})

    def test_arithmetic_and_monomials(self):
        """Test linear structure and coordinate round trip."""
        D = DiffOp.identity(FUNCTIONS_K0)
        c = Cochain(FUNCTIONS_K0, 1, {(0,): D, (3,): D.scale(2)})
        assert (c - c).is_zero()
        assert c.scale(3) == c + c + c
        assert Cochain.from_monomials(FUNCTIONS_K0, 1, c.monomials()) == c

    def test_weight_split(self):
        """Test grouping coordinates by L_E-weight."""
        spec = ModuleSpec(2, "function", 0, 0, 1)
        x = Poly.variable(2, 0)
        c = Cochain(spec, 1, {(0,): DiffOp.identity(spec), (6,): DiffOp.identity(spec).multiply(x)})
        split = c.weight_split(sl_algebra(2), create_module(spec))
        assert sorted(split) == [0, 1]


class TestDifferential:
    """Test the coboundary operator."""

    def test_zero_cochain_differential_is_lie_derivative(self, rng):
        """Test (∂D)(X) = L_X D."""
        spec = ModuleSpec(2, "multivector", 1, 0, 1)
        D = random_diffop(spec, 2, rng)
        assert ce_differential(Cochain(spec, 0, {(): D})) == _coboundary_of(D)

    @pytest.mark.parametrize(
        "spec",
        [ModuleSpec(2, "function", 0, 0, 1), ModuleSpec(2, "form", 0, 1, 1)],
        ids=lambda s: s.tag(),
    )
    def test_differential_squares_to_zero(self, spec, rng):
        """Test ∂∂ = 0 on a random 1-cochain."""
        D1 = random_diffop(spec, 1, rng, terms=2)
        D2 = random_diffop(spec, 1, rng, terms=2)
        c = Cochain(spec, 1, {(2,): D1, (6,): D2})
        assert ce_differential(ce_differential(c)).is_zero()

    def test_coboundary_is_closed_pointwise(self, rng):
        """Test that ∂∂D vanishes both pointwise and on the basis."""
        spec = ModuleSpec(2, "function", 0, 0, 1)
        D = random_diffop(spec, 1, rng)
        module = create_module(spec)
        fields = sl_algebra(2).fields
        c = _coboundary_of(D)

        def evaluate(X):
            return lie_derivative_op(X, D)

        assert differential_at(evaluate, [fields[0], fields[7]], module).is_zero()
        assert ce_differential(c).is_zero()

    def test_module_mismatch(self):
        """Test that a module for another spec is rejected."""
        c = Cochain(FUNCTIONS_K0, 0, {(): DiffOp.identity(FUNCTIONS_K0)})
        with pytest.raises(DimensionMismatchError):
            ce_differential(c, module=create_module(CONTRACTIONS_K0))


class TestWeights:
    """Test weights and weight blocks."""

    @pytest.mark.parametrize(
        "spec,key",
        [
            (ModuleSpec(2, "function", 0, 0, 1), ((2, 0), (0, 1), (), ())),
            (ModuleSpec(2, "multivector", 2, 1, 1), ((0, 1), (0, 0), (0, 1), (0,))),
            (ModuleSpec(2, "form", 0, 2, 1), ((1, 1), (1, 0), (), (0, 1))),
        ],
    )
    def test_module_weight_matches_closed_form(self, spec, key):
        """Test the L_E eigenvalue against |β| - |γ| + s(p - q)."""
        assert module_weight(DiffOp.monomial(spec, key)) == monomial_weight(spec, key)

    def test_module_weight_needs_monomial(self):
        """Test that sums of monomials have no single weight."""
        spec = ModuleSpec(2, "function", 0, 0, 1)
        x = Poly.variable(2, 0)
        with pytest.raises(WeightError):
            module_weight(DiffOp.identity(spec).multiply(x + Poly.constant(2, 1)))

    def test_weight_block_contents(self):
        """Test the weight-zero 1-cochains of multiplication operators."""
        block = weight_basis(FUNCTIONS_K0, 1)
        # gl(2) with constants, covectors with linear functions
        assert len(block) == 4 + 2 * 2
        assert all(block.index[key] == i for i, key in enumerate(block.basis))

    def test_reverse_order(self):
        """Test that reverse flips the enumeration."""
        forward = weight_basis(FUNCTIONS_K0, 1).basis
        assert weight_basis(FUNCTIONS_K0, 1, reverse=True).basis == forward[::-1]

    def test_matrix_dump(self, tmp_path):
        """Test that dumped matrices parse back."""
        M = differential_matrix(FUNCTIONS_K0, 0, dump_dir=tmp_path)
        path = tmp_path / f"{FUNCTIONS_K0.tag()}_0.mtx"
        assert path.exists()
        assert SparseMatrix.from_mtx(path.read_text()) == M


class TestCohomology:
    """Test cohomology dimensions on small modules."""

    @pytest.mark.parametrize(
        "spec,u,expected",
        [
            (FUNCTIONS_K0, 0, 1),
            (FUNCTIONS_K0, 1, 1),
            (CONTRACTIONS_K0, 0, 0),
            (CONTRACTIONS_K0, 1, 1),
            (WEDGES_K0, 1, 1),
        ],
        ids=["functions-H0", "functions-H1", "contraction-H0", "contraction-H1", "wedge-H1"],
    )
    def test_order_zero_dimensions(self, spec, u, expected):
        """Test dim H^u for order-zero modules of sl(3)."""
        assert cohomology_dim(spec, u) == expected

    def test_threads_and_order_do_not_matter(self):
        """Test that pooled ranks and reversed enumeration agree."""
        assert cohomology_dim(FUNCTIONS_K0, 1, threads=2, reverse=True) == cohomology_dim(FUNCTIONS_K0, 1)

    def test_negative_degree(self):
        """Test that negative degrees are rejected."""
        with pytest.raises(ValueError):
            cohomology_dim(FUNCTIONS_K0, -1)

    def test_truncated_invariants(self):
        """Test that only constants are invariant among functions of degree <= 1."""
        assert truncated_cohomology_dim(FUNCTIONS_K0, 0, 1) == 1

    @pytest.mark.parametrize("u", [0, 1])
    def test_truncation_agrees_with_weight_reduction(self, u):
        """Test that the degree <= 4 complex gives the weight-zero answer."""
        assert truncated_cohomology_dim(FUNCTIONS_K0, u, 4) == cohomology_dim(FUNCTIONS_K0, u)


class TestCohomologyTables:
    """Test H^0 and H^1 against the known tables for m in {2, 3} and k <= 2."""

    @pytest.mark.parametrize("spec,u,expected", _table_cells())
    def test_cell(self, spec, u, expected):
        """Test one tabulated cohomology dimension."""
        assert cohomology_dim(spec, u) == expected

    def test_cells_cover_the_two_dimensional_form_classes(self):
        """Test that the table reaches q = p + 1 and q = p + 2 forms with k >= 1."""
        cells = {}
        for param in _table_cells():
            spec, u, expected = param.values
            cells[(spec.species, spec.q - spec.p, spec.k, u)] = expected
        assert cells[("form", 1, 1, 1)] == 2
        assert cells[("form", 2, 2, 1)] == 1
        assert cells[("form", 2, 0, 1)] == 0
        assert cells[("multivector", -1, 0, 1)] == 1
        assert cells[("multivector", -1, 2, 1)] == 0


class TestCoboundaries:
    """Test primitives and class coordinates."""

    def test_coboundary_has_witness(self, rng):
        """Test that ∂D is recognised with a valid primitive."""
        spec = ModuleSpec(2, "function", 0, 0, 1)
        D = random_diffop(spec, 2, rng)
        c = _coboundary_of(D)
        witness = is_coboundary(c)
        assert witness is not None
        assert ce_differential(witness) == c

    def test_divergence_is_not_exact(self):
        """Test that X ↦ tr(DX) is a cocycle but not a coboundary."""
        identity = DiffOp.identity(FUNCTIONS_K0)
        algebra = sl_algebra(2)
        c = Cochain.from_function(algebra, FUNCTIONS_K0, 1, lambda X: identity.multiply(trace_div(X)))
        assert ce_differential(c).is_zero()
        assert is_coboundary(c) is None
        assert class_coordinates(c.scale(Fraction(5, 2)), [c]) == [Fraction(5, 2)]

    def test_non_cocycle_rejected(self):
        """Test that primitives are only sought for cocycles."""
        c = Cochain(FUNCTIONS_K0, 1, {(0,): DiffOp.identity(FUNCTIONS_K0)})
        with pytest.raises(NotACocycleError):
            is_coboundary(c)

    def test_degree_zero_rejected(self):
        """Test that 0-cochains have no primitive."""
        with pytest.raises(ValueError):
            is_coboundary(Cochain(FUNCTIONS_K0, 0, {(): DiffOp.identity(FUNCTIONS_K0)}))
