"""
Cocycles built from the divergence X ↦ tr(DX), and the map χ.

χ turns a gl(m)-invariant γ and an sl(m)-invariant family of constant
symbols into an sl(m+1)-cochain:

    χ(γ ⊗ I)(X_1, …, X_{t+u}) = (-1)^t / (t! u! (m+1)^u)
        Σ_ν sign(ν) γ(DX_ν1, …, DX_νt)(I(dtrDX_ν(t+1), …, dtrDX_ν(t+u)))

The sum is taken over shuffles, which gives the same value since both γ and
I are alternating. The named families are the first-cohomology generators on
multivectors (div, id_times, iota_dc) and on forms (c0, c01, c10, c2).
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from typing import Callable, Dict, List, Literal, Optional, Sequence, Tuple

from .cecomplex import (
    Cochain,
    FieldAlgebra,
    class_coordinates,
    ce_differential,
    differential_at,
    is_coboundary,
    sl_algebra,
)
from .diffops import DiffOp, InternalConsistencyError, SymbolTensor, lift_symbol, lie_derivative_op
from .modules import CoefficientModule, SymbolModule, create_module
from .polyfields import Poly, VectorField, dtr, jacobian, trace_div, unit_exponent
from .slstructure import SlElement, embed
from .tensorfields import (
    Covector,
    PolyForm,
    PolyMultiVector,
    basis_tuples,
    exterior_derivative,
    interior_product,
    sort_with_sign,
    wedge,
)
from .types import ModuleSpec, SpecError

logger = logging.getLogger(__name__)

Args = Tuple[int, ...]
InvariantFamily = Callable[[Sequence[Covector]], SymbolTensor]
FamilyTag = Literal["div", "id_times", "iota_dc", "c0", "c01", "c10", "c2"]
FAMILY_TAGS: Tuple[str, ...] = ("div", "id_times", "iota_dc", "c0", "c01", "c10", "c2")
GammaTag = Literal["one", "trace"]


class FamilyError(ValueError):
    """Raised when a family or invariant does not fit the requested module."""


# -- invariants ------------------------------------------------------------------

def _symbol_spec(m: int, species: str, p: int, q: int, k: int) -> ModuleSpec:
    try:
        return ModuleSpec(m, species, p, q, k, "symbol")  # type: ignore[arg-type]
    except SpecError as exc:
        raise FamilyError(str(exc)) from exc


def invariant_I(variant: str, m: int, p: int, q: int, alphas: Sequence[Covector]) -> SymbolTensor:
    """
    The contraction invariants on multivectors.

    I0(α_1, …, α_r): T ↦ ι_{α_1} ⋯ ι_{α_r} T with r = p - q.
    I1(α_1, …, α_r): T ↦ ι_η ι_{α_1} ⋯ ι_{α_r} T with r = p - q - 1.

    Raises:
        FamilyError: On an unknown variant, p < q or the wrong number of covectors
    """
    if variant not in ("I0", "I1"):
        raise FamilyError(f"unknown variant {variant!r}")
    arity = p - q if variant == "I0" else p - q - 1
    if arity < 0:
        raise FamilyError(f"{variant} needs p - q >= {0 if variant == 'I0' else 1}, got p={p}, q={q}")
    if len(alphas) != arity:
        raise FamilyError(f"{variant} takes {arity} covectors, got {len(alphas)}")
    spec = _symbol_spec(m, "multivector", p, q, 0 if variant == "I0" else 1)
    zero = (0,) * m
    coefficients: Dict[Tuple, Poly] = {}
    for I in basis_tuples(m, p):
        T = PolyMultiVector.basis_element(m, I)
        for alpha in reversed(alphas):
            T = interior_product(alpha, T)
        if variant == "I0":
            for J, c in T.items():
                coefficients[(zero, I, J)] = c
            continue
        for l in range(m):
            for J, c in interior_product(Covector.unit(m, l), T).items():
                coefficients[(unit_exponent(m, l), I, J)] = c
    return SymbolTensor(spec, coefficients)


def _wedge_all(m: int, alphas: Sequence[Covector]) -> PolyForm:
    total = PolyForm.function(Poly.constant(m, 1))
    for alpha in alphas:
        total = wedge(total, alpha.as_form())
    return total


def invariant_J(variant: str, m: int, p: int, q: int, alphas: Sequence[Covector]) -> SymbolTensor:
    """
    The wedge invariants on forms.

    J0(α_1, …, α_r): ω ↦ α_1 ∧ ⋯ ∧ α_r ∧ ω with r = q - p.
    J1(α_1, …, α_r): ω ↦ η ∧ α_1 ∧ ⋯ ∧ α_r ∧ ω with r = q - p - 1.

    Raises:
        FamilyError: On an unknown variant or a degree/arity mismatch
    """
    if variant not in ("J0", "J1"):
        raise FamilyError(f"unknown variant {variant!r}")
    arity = q - p if variant == "J0" else q - p - 1
    if arity < 0:
        raise FamilyError(f"{variant} needs q - p >= {0 if variant == 'J0' else 1}, got p={p}, q={q}")
    if len(alphas) != arity:
        raise FamilyError(f"{variant} takes {arity} covectors, got {len(alphas)}")
    spec = _symbol_spec(m, "form", p, q, 0 if variant == "J0" else 1)
    prefix = _wedge_all(m, alphas)
    zero = (0,) * m
    coefficients: Dict[Tuple, Poly] = {}
    for I in basis_tuples(m, p):
        omega = PolyForm.basis_element(m, I)
        if variant == "J0":
            for J, c in wedge(prefix, omega).items():
                coefficients[(zero, I, J)] = c
            continue
        for l in range(m):
            image = wedge(wedge(Covector.unit(m, l).as_form(), prefix), omega)
            for J, c in image.items():
                coefficients[(unit_exponent(m, l), I, J)] = c
    return SymbolTensor(spec, coefficients)


def invariant_family(variant: str, m: int, p: int, q: int) -> InvariantFamily:
    """The invariant ``variant`` with (m, p, q) fixed, as a function of the covectors."""
    build = invariant_I if variant in ("I0", "I1") else invariant_J
    return lambda alphas: build(variant, m, p, q, alphas)


@dataclass
class InvarianceReport:
    """
    Outcome of :func:`verify_invariance`.

    ``trace_scalar`` is λ with (Id · Φ) = λ Φ when the trace part acts by a scalar.
    """

    passed: bool
    checked: int
    trace_scalar: Optional[Fraction] = None
    counterexample: Optional[str] = None


def _defect(
    family: InvariantFamily, module: CoefficientModule, m: int, arity: int, i: int, j: int
) -> Dict[Args, SymbolTensor]:
    """(E^i_j · Φ)(e^c) = L_{A*} Φ(e^c) - Σ_s Φ(…, A·e^{c_s}, …) on increasing tuples c."""
    field = embed(SlElement.matrix_unit(m, i, j))
    out: Dict[Args, SymbolTensor] = {}
    for c in combinations(range(m), arity):
        covs = [Covector.unit(m, a) for a in c]
        value = module.act(field, family(covs))
        for s, a in enumerate(c):
            # A·e^a = -e^a A, nonzero only for a = i
            if a == i:
                moved = covs[:s] + [Covector.unit(m, j)] + covs[s + 1:]
                value = value + family(moved)
        out[c] = value
    return out


def verify_invariance(family: InvariantFamily, m: int, arity: int) -> InvarianceReport:
    """
    Check sl(m)-invariance of a family of constant symbols.

    Traceless matrix units and differences of diagonal units must act by
    zero; the identity must act by a scalar, which is reported.
    """
    sample = family([Covector.unit(m, a) for a in range(arity)])
    module = SymbolModule(sample.spec)
    checked = 0
    diagonal: List[Dict[Args, SymbolTensor]] = []
    for i in range(m):
        for j in range(m):
            defect = _defect(family, module, m, arity, i, j)
            checked += 1
            if i == j:
                diagonal.append(defect)
                continue
            bad = [c for c, v in defect.items() if not v.is_zero()]
            if bad:
                return InvarianceReport(False, checked, None, f"E^{i + 1}_{j + 1} on covectors {bad[0]}")
    for i in range(m - 1):
        for c in diagonal[i]:
            if diagonal[i][c] != diagonal[i + 1][c]:
                return InvarianceReport(
                    False, checked, None, f"E^{i + 1}_{i + 1} - E^{i + 2}_{i + 2} on covectors {c}"
                )
    scalar: Optional[Fraction] = None
    for c in combinations(range(m), arity):
        covs = [Covector.unit(m, a) for a in c]
        phi = family(covs).monomials()
        total = sum((diag[c] for diag in diagonal[1:]), diagonal[0][c]).monomials()
        for key, v in phi.items():
            ratio = Fraction(total.get(key, 0)) / Fraction(v)
            if scalar is None:
                scalar = ratio
            elif ratio != scalar:
                return InvarianceReport(False, checked, None, f"identity does not act by a scalar on {c}")
        if set(total) - set(phi):
            return InvarianceReport(False, checked, None, f"identity does not act by a scalar on {c}")
    return InvarianceReport(True, checked, scalar if scalar is not None else Fraction(0))


# -- the map χ ------------------------------------------------------------------

def _det(rows: Sequence[Sequence[Poly]], m: int) -> Poly:
    n = len(rows)
    if n == 0:
        return Poly.constant(m, 1)
    total = Poly.zero(m)
    for perm in permutations(range(n)):
        sign, _ = sort_with_sign(perm)
        term = Poly.constant(m, sign)
        for r, col in enumerate(perm):
            term = term * rows[r][col]
            if not term:
                break
        total = total + term
    return total


@dataclass
class GlCochain:
    """
    Element of Λ^t(gl(m)*) ⊗ Λ^u(ℝᵐ*, V) with V a constant-symbol space.

    ``values`` maps (increasing gl-index tuple, increasing covector tuple) to
    the value on the corresponding basis elements; gl index ``i*m + j`` is E^i_j.
    """

    t: int
    u: int
    value_spec: ModuleSpec
    values: Dict[Tuple[Args, Args], SymbolTensor]

    @classmethod
    def product(cls, gamma: GammaTag, family: InvariantFamily, m: int, u: int) -> "GlCochain":
        """γ ⊗ I for γ = 1 (t = 0) or γ = trace (t = 1)."""
        if gamma == "one":
            gl_part: Dict[Args, int] = {(): 1}
        elif gamma == "trace":
            gl_part = {(i * m + i,): 1 for i in range(m)}
        else:
            raise FamilyError(f"unknown gl invariant {gamma!r}")
        values: Dict[Tuple[Args, Args], SymbolTensor] = {}
        spec: Optional[ModuleSpec] = None
        for c in combinations(range(m), u):
            value = family([Covector.unit(m, a) for a in c])
            spec = value.spec
            for g, coeff in gl_part.items():
                if not value.is_zero():
                    values[(g, c)] = value.scale(coeff)
        if spec is None:
            raise FamilyError(f"no covector tuples of length {u} in dimension {m}")
        return cls(0 if gamma == "one" else 1, u, spec, values)


def chi(G: GlCochain, fields: Sequence[VectorField]) -> SymbolTensor:
    """
    Evaluate χ(G) on ``t + u`` vector fields.

    Raises:
        FamilyError: If the number of fields is not t + u
    """
    n = G.t + G.u
    if len(fields) != n:
        raise FamilyError(f"χ of a ({G.t}, {G.u}) cochain takes {n} fields, got {len(fields)}")
    m = G.value_spec.m
    mats = [jacobian(X) for X in fields]
    forms = [dtr(X).coefficients() for X in fields]
    total = SymbolTensor(G.value_spec)
    for S in combinations(range(n), G.t):
        rest = tuple(i for i in range(n) if i not in S)
        sign, _ = sort_with_sign(S + rest)
        for (g, c), value in G.values.items():
            P = [[mats[s][gi // m][gi % m] for gi in g] for s in S]
            Q = [[forms[s][ci] for ci in c] for s in rest]
            coeff = _det(P, m) * _det(Q, m)
            if coeff:
                total = total + value.multiply(coeff).scale(sign)
    return total.scale(Fraction((-1) ** G.t, (m + 1) ** G.u))


def chi_cochain(G: GlCochain, algebra: Optional[FieldAlgebra] = None) -> Cochain:
    """χ(G) restricted to the basis of sl(m+1)."""
    algebra = algebra or sl_algebra(G.value_spec.m)
    return Cochain.from_function(algebra, G.value_spec, G.t + G.u, lambda *Xs: chi(G, Xs))


# -- named cocycle families ----------------------------------------------------------

FAMILY_RULES = {
    "div": ("function", 0, 0),
    "id_times": ("multivector", 0, 0),
    "iota_dc": ("multivector", 1, 0),
    "c0": ("form", 0, 0),
    "c01": ("form", 0, 1),
    "c10": ("form", 0, 1),
    "c2": ("form", 0, 2),
}


@dataclass(frozen=True)
class NamedCocycleFamily:
    """
    A named 1-cocycle X ↦ c(X) with values in the operator module ``spec``.

    The offsets in the compatibility rules are (p - q) for multivectors and
    (q - p) for forms; c01 and c2 contain d and need k >= 1.
    """

    tag: str
    spec: ModuleSpec

    def __post_init__(self) -> None:
        rule = FAMILY_RULES.get(self.tag)
        if rule is None:
            raise FamilyError(f"unknown family {self.tag!r}; expected one of {', '.join(FAMILY_TAGS)}")
        species, mv_offset, form_offset = rule
        spec = self.spec
        if spec.level != "operator":
            raise FamilyError("named cocycles take values in operator modules")
        if spec.species != species:
            raise FamilyError(f"{self.tag} needs species {species}, got {spec.species}")
        if species == "multivector" and spec.p - spec.q != mv_offset:
            raise FamilyError(f"{self.tag} needs p - q = {mv_offset}, got p={spec.p}, q={spec.q}")
        if species == "form" and spec.q - spec.p != form_offset:
            raise FamilyError(f"{self.tag} needs q = p + {form_offset}, got p={spec.p}, q={spec.q}")
        if self.tag in ("c01", "c2") and spec.k < 1:
            raise FamilyError(f"{self.tag} contains d and needs k >= 1")


def _wedge_operator(spec: ModuleSpec, prefix: PolyForm, with_d: bool) -> DiffOp:
    """ω ↦ prefix ∧ ω, or prefix ∧ dω when ``with_d``."""
    m = spec.m
    zero = (0,) * m
    coefficients: Dict[Tuple, Poly] = {}
    fronts = [((l,), unit_exponent(m, l)) for l in range(m)] if with_d else [((), zero)]
    for I in basis_tuples(m, spec.p):
        for front, gamma in fronts:
            for K, f in prefix.items():
                sign, J = sort_with_sign(K + front + I)
                if sign == 0:
                    continue
                key = (gamma, I, J)
                term = f if sign > 0 else -f
                coefficients[key] = coefficients[key] + term if key in coefficients else term
    return DiffOp(spec, coefficients)


def _interior_operator(spec: ModuleSpec, alpha: PolyForm) -> DiffOp:
    """T ↦ ι_α T for a polynomial 1-form α."""
    zero = (0,) * spec.m
    coefficients: Dict[Tuple, Poly] = {}
    for I in basis_tuples(spec.m, spec.p):
        for J, c in interior_product(alpha, PolyMultiVector.basis_element(spec.m, I)).items():
            coefficients[(zero, I, J)] = c
    return DiffOp(spec, coefficients)


def divergence(X: VectorField, xi: Optional[Covector] = None) -> Poly:
    """tr(DX), plus the closed-form pairing ξ(X) when ``xi`` is given."""
    g = trace_div(X)
    return g + xi.pair(X) if xi is not None else g


def named_cocycle(fam: NamedCocycleFamily, X: VectorField, xi: Optional[Covector] = None) -> DiffOp:
    """
    Value of a named cocycle on one vector field.

    With ``xi`` the divergence γ(X) = tr(DX) is replaced by γ(X) + ξ(X).
    """
    spec = fam.spec
    if X.m != spec.m:
        raise FamilyError(f"field on R^{X.m} for a family over R^{spec.m}")
    g = divergence(X, xi)
    dg = exterior_derivative(PolyForm.function(g))
    if fam.tag in ("div", "id_times", "c0"):
        return DiffOp.identity(spec).multiply(g)
    if fam.tag == "iota_dc":
        return _interior_operator(spec, dg)
    if fam.tag == "c01":
        return _wedge_operator(spec, PolyForm.function(g), with_d=True)
    if fam.tag == "c10":
        return _wedge_operator(spec, dg, with_d=False)
    return _wedge_operator(spec, dg, with_d=True)


def named_cochain(
    fam: NamedCocycleFamily, algebra: Optional[FieldAlgebra] = None, xi: Optional[Covector] = None
) -> Cochain:
    algebra = algebra or sl_algebra(fam.spec.m)
    return Cochain.from_function(algebra, fam.spec, 1, lambda X: named_cocycle(fam, X, xi))


def cocycle_defect(
    fam: NamedCocycleFamily, X: VectorField, Y: VectorField, module: Optional[CoefficientModule] = None
) -> DiffOp:
    """L_X c(Y) - L_Y c(X) - c([X, Y]) on arbitrary polynomial fields."""
    module = module or create_module(fam.spec)
    return differential_at(lambda Z: named_cocycle(fam, Z), [X, Y], module)  # type: ignore[return-value]


def verify_cocycle(
    fam: NamedCocycleFamily, pairs: Sequence[Tuple[VectorField, VectorField]] = ()
) -> List[str]:
    """
    Check the cocycle identity on all sl(m+1) basis pairs and on the given pairs.

    Returns:
        List of error messages (empty if the identity holds everywhere)
    """
    errors: List[str] = []
    module = create_module(fam.spec)
    if not ce_differential(named_cochain(fam), module=module).is_zero():
        errors.append(f"{fam.tag}: cocycle identity fails on sl({fam.spec.m + 1}) basis pairs")
    for n, (X, Y) in enumerate(pairs):
        if not cocycle_defect(fam, X, Y, module).is_zero():
            errors.append(f"{fam.tag}: cocycle identity fails on random pair {n}")
    return errors


def iota_witness(spec: ModuleSpec) -> DiffOp:
    """T ↦ Σ_i ι_{dx^i} ∂_i T in D^k(Λ^{q+1}, Λ^q), k >= 1."""
    if spec.species != "multivector" or spec.p != spec.q + 1 or spec.k < 1 or spec.level != "operator":
        raise FamilyError(f"the contraction witness lives in D^k(Λ^(q+1), Λ^q) with k >= 1, not {spec.tag()}")
    coefficients: Dict[Tuple, Poly] = {}
    for I in basis_tuples(spec.m, spec.p):
        T = PolyMultiVector.basis_element(spec.m, I)
        for l in range(spec.m):
            for J, c in interior_product(Covector.unit(spec.m, l), T).items():
                coefficients[(unit_exponent(spec.m, l), I, J)] = c
    return DiffOp(spec, coefficients)


# -- connecting homomorphism ----------------------------------------------------------

def at_origin(D: DiffOp) -> DiffOp:
    """Keep only the constant terms of every coefficient."""
    m = D.spec.m
    return DiffOp(D.spec, {key: Poly.constant(m, c.constant_term()) for key, c in D.coefficients.items()})


def connecting_term(m: int, p: int, q: int, i: int, alphas: Sequence[Covector]) -> DiffOp:
    """
    One term (-1)^i L_{α_i*} lift(I1(α_0, …, α̂_i, …))|_{x=0} of the origin evaluation.

    Each term equals (m + 1) I0(α_0, …) as an order-0 operator.
    """
    rest = list(alphas[:i]) + list(alphas[i + 1:])
    lifted = lift_symbol(invariant_I("I1", m, p, q, rest))
    field = embed(SlElement((0,) * m, ((0,) * m,) * m, alphas[i].components))
    term = at_origin(lie_derivative_op(field, lifted))
    return term if i % 2 == 0 else -term


@dataclass
class ThetaResult:
    """θ computed modulo coboundaries and by evaluation at the origin."""

    value: Fraction
    origin_value: Fraction
    degree: int


def _theta_families(species: str, m: int, p: int, q: int) -> Tuple[InvariantFamily, InvariantFamily, int]:
    if species == "multivector":
        if p <= q:
            raise FamilyError(f"θ on multivectors needs p > q, got p={p}, q={q}")
        return invariant_family("I1", m, p, q), invariant_family("I0", m, p, q), p - q
    if species == "form":
        if q <= p:
            raise FamilyError(f"θ on forms needs q > p, got p={p}, q={q}")
        return invariant_family("J1", m, p, q), invariant_family("J0", m, p, q), q - p
    raise FamilyError(f"θ is defined for multivectors and forms, not {species!r}")


def theta_details(m: int, p: int, q: int, a: int, species: str = "multivector") -> ThetaResult:
    """
    Connecting-homomorphism constant of 0 → D^0 → D^1 → S^1 → 0.

    Builds c1 = χ(γ ⊗ I1), lifts it to D^1, takes ∂ and checks that the result is
    D^0-valued, then reads λ off against χ(γ ⊗ I0) modulo coboundaries. The value is
    cross-checked by evaluating at x = 0 on arguments where weight-zero
    coboundaries vanish: (α_0*, …) for a = 0 and (Id*, α_0*, …) for a = 1.

    Raises:
        FamilyError: If (species, p, q, a) admits no such constant
        InternalConsistencyError: If an intermediate is not what the construction guarantees
    """
    if a not in (0, 1):
        raise FamilyError(f"a must be 0 or 1, got {a}")
    upper, lower, b = _theta_families(species, m, p, q)
    gamma: GammaTag = "one" if a == 0 else "trace"
    algebra = sl_algebra(m)

    c1 = chi_cochain(GlCochain.product(gamma, upper, m, b - 1), algebra)
    op1 = c1.spec.with_level("operator")
    lifted = c1.map_values(lift_symbol, op1)
    boundary = ce_differential(lifted, algebra, create_module(op1))
    if any(v.order > 0 for v in boundary.values.values()):
        raise InternalConsistencyError("∂ of the lifted cochain keeps first-order terms")
    op0 = op1.with_level("operator", 0)
    boundary0 = boundary.map_values(lambda v: v.with_order_bound(0), op0)

    c0 = chi_cochain(GlCochain.product(gamma, lower, m, b), algebra)
    generator = c0.map_values(lift_symbol, op0)
    module0 = create_module(op0)
    coords = class_coordinates(boundary0, [generator], algebra, module0)
    if coords is None:
        raise InternalConsistencyError("∂ lift(c1) is not a multiple of χ(γ ⊗ I0) modulo coboundaries")
    value = coords[0]

    first_cov = m + m * m
    covs = tuple(first_cov + s for s in range(b))
    alphas = [Covector.unit(m, s) for s in range(b)]
    base = lift_symbol(lower(alphas))
    if a == 0:
        at_zero = at_origin(boundary0.value(covs))
        factor = 1
    else:
        at_zero = DiffOp(op0)
        for i in range(m):
            at_zero = at_zero + at_origin(boundary0.value((m + i * m + i,) + covs))
        factor = m
    origin_value = _proportionality(at_zero, base.scale(factor))
    if origin_value != value:
        raise InternalConsistencyError(f"θ modulo coboundaries is {value}, at the origin {origin_value}")
    logger.info("θ(%s, m=%d, p=%d, q=%d, a=%d) = %s", species, m, p, q, a, value)
    return ThetaResult(value, origin_value, boundary.u)


def _proportionality(value: DiffOp, base: DiffOp) -> Fraction:
    if value.is_zero():
        return Fraction(0)
    vm, bm = value.monomials(), base.monomials()
    if set(vm) != set(bm):
        raise InternalConsistencyError("origin value is not proportional to the invariant")
    ratios = {Fraction(vm[k]) / Fraction(bm[k]) for k in bm}
    if len(ratios) != 1:
        raise InternalConsistencyError("origin value is not proportional to the invariant")
    return ratios.pop()


def theta_constant(m: int, p: int, q: int, a: int, species: str = "multivector") -> Fraction:
    """The constant λ with θ(γ ⊗ I1) = λ · γ ⊗ I0 in cohomology; see :func:`theta_details`."""
    return theta_details(m, p, q, a, species).value


# -- closed-form perturbation ----------------------------------------------------------

@dataclass
class PerturbationResult:
    """
    Effect of replacing tr(DX) by tr(DX) + ξ(X) in a form family.

    ``coordinates`` is the class of the perturbed cocycle in terms of the
    original one; ``constant_witness`` tells whether the difference is the
    coboundary of a constant-coefficient operator.
    """

    tag: str
    coordinates: Optional[List[Fraction]]
    witness: Optional[Cochain]
    constant_witness: bool


def closed_form_perturbation(fam: NamedCocycleFamily, xi: Covector) -> PerturbationResult:
    if fam.spec.species != "form":
        raise FamilyError("closed-form perturbations are defined for the form families")
    algebra = sl_algebra(fam.spec.m)
    module = create_module(fam.spec)
    original = named_cochain(fam, algebra)
    perturbed = named_cochain(fam, algebra, xi)
    coordinates = class_coordinates(perturbed, [original], algebra, module)
    witness = is_coboundary(perturbed - original, algebra, module)
    constant = witness is not None and all(
        c.degree() <= 0 for v in witness.values.values() for c in v.coefficients.values()
    )
    return PerturbationResult(fam.tag, coordinates, witness, constant)

