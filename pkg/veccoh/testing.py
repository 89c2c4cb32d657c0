"""
Testing utilities: seeded random objects and identity checks.

Generators take an explicit ``random.Random`` so that a seed fixes every
object drawn. Verification helpers return a list of error messages, empty
when every identity holds exactly.
"""

import random
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence

from .diffops import DiffOp, OperatorKey, SymbolTensor, hom_bases
from .modules import CoefficientModule
from .protocols import ModuleElement
from .polyfields import Exponent, Poly, VectorField, lie_bracket, monomial_exponents
from .tensorfields import PolyForm, PolyMultiVector, basis_tuples
from .types import ModuleSpec

COEFFICIENTS = (-3, -2, -1, 1, 2, 3, Fraction(1, 2), Fraction(-1, 3))


class IdentityCheckError(AssertionError):
    """Raised by :func:`assert_no_errors` when a verification helper reports failures."""

    def __init__(self, message: str, errors: List[str]):
        super().__init__(message)
        self.errors = errors


def _coefficient(rng: random.Random) -> Fraction:
    return Fraction(rng.choice(COEFFICIENTS))


def random_poly(m: int, max_degree: int, rng: random.Random, terms: int = 3) -> Poly:
    """
    A polynomial with up to ``terms`` monomials of degree <= ``max_degree``.

    Example:
        >>> f = random_poly(2, 3, random.Random(7))
    """
    exponents: List[Exponent] = [e for d in range(max_degree + 1) for e in monomial_exponents(m, d)]
    chosen = rng.sample(exponents, min(terms, len(exponents)))
    return Poly(m, {e: _coefficient(rng) for e in chosen})


def random_vector_field(m: int, max_degree: int, rng: random.Random, terms: int = 2) -> VectorField:
    return VectorField([random_poly(m, max_degree, rng, terms) for _ in range(m)])


def _random_components(m: int, degree: int, max_degree: int, rng: random.Random) -> Dict:
    bases = basis_tuples(m, degree)
    chosen = rng.sample(bases, rng.randint(1, len(bases)))
    return {I: random_poly(m, max_degree, rng) for I in chosen}


def random_multivector(m: int, degree: int, max_degree: int, rng: random.Random) -> PolyMultiVector:
    return PolyMultiVector(m, degree, _random_components(m, degree, max_degree, rng))


def random_form(m: int, degree: int, max_degree: int, rng: random.Random) -> PolyForm:
    return PolyForm(m, degree, _random_components(m, degree, max_degree, rng))


def _random_hom(spec: ModuleSpec, orders: Sequence[int], max_degree: int, rng: random.Random, terms: int) -> Dict[OperatorKey, Poly]:
    sources, targets = hom_bases(spec)
    keys = [
        (gamma, I, J)
        for r in orders
        for gamma in monomial_exponents(spec.m, r)
        for I in sources
        for J in targets
    ]
    chosen = rng.sample(keys, min(terms, len(keys)))
    return {key: random_poly(spec.m, max_degree, rng, 2) for key in chosen}


def random_diffop(spec: ModuleSpec, max_degree: int, rng: random.Random, terms: int = 4) -> DiffOp:
    """A random operator of order <= spec.k with coefficients of degree <= ``max_degree``."""
    spec = spec.with_level("operator")
    return DiffOp(spec, _random_hom(spec, range(spec.k + 1), max_degree, rng, terms))


def random_symbol(spec: ModuleSpec, max_degree: int, rng: random.Random, terms: int = 4) -> SymbolTensor:
    spec = spec.with_level("symbol")
    return SymbolTensor(spec, _random_hom(spec, [spec.k], max_degree, rng, terms))


def verify_module_action(
    module: CoefficientModule, X: VectorField, Y: VectorField, v: ModuleElement
) -> List[str]:
    """
    Check that ``module`` is a representation on one sample.

    Verifies L_{[X,Y]} v = L_X L_Y v - L_Y L_X v and linearity in the field.

    Returns:
        List of error messages (empty if both identities hold)
    """
    errors: List[str] = []
    act = module.act
    lhs = act(lie_bracket(X, Y), v)  # type: ignore[arg-type]
    rhs = act(X, act(Y, v)) - act(Y, act(X, v))  # type: ignore[arg-type]
    if lhs != rhs:
        errors.append(f"L_[X,Y] differs from [L_X, L_Y] in {module.spec.tag()}")
    if act(X + Y, v) != act(X, v) + act(Y, v):  # type: ignore[arg-type]
        errors.append(f"action is not additive in the field in {module.spec.tag()}")
    return errors


def verify_lie_algebra_action(
    module: CoefficientModule,
    fields: Sequence[VectorField],
    samples: Sequence[ModuleElement],
    limit: Optional[int] = None,
) -> List[str]:
    """
    Run :func:`verify_module_action` over every pair of ``fields`` and every sample.

    ``limit`` caps the number of field pairs checked.
    """
    errors: List[str] = []
    pairs = list(combinations(range(len(fields)), 2))
    if limit is not None:
        pairs = pairs[:limit]
    for a, b in pairs:
        for n, v in enumerate(samples):
            for error in verify_module_action(module, fields[a], fields[b], v):
                errors.append(f"fields ({a}, {b}), sample {n}: {error}")
    return errors


def assert_no_errors(errors: List[str], what: str = "identity check") -> None:
    """
    Raise :class:`IdentityCheckError` when ``errors`` is non-empty.

    Example:
        >>> assert_no_errors(verify_module_action(module, X, Y, D))
    """
    if errors:
        raise IdentityCheckError(f"{what} failed with {len(errors)} error(s)", errors)
