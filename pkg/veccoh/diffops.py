"""
Linear differential operators between multivector fields or forms, and their symbols.

An operator D in D^k(source, target) is kept in the normal form

    (D T)_J = Σ_{|γ| <= k} Σ_I A^{γ,I,J} ∂^γ T_I

with γ a derivative exponent vector, I a source basis tuple and J a target
basis tuple. A symbol in S^k stores the |γ| = k layer, γ now read as the
exponent of the symbol variable η.
"""

import logging
from itertools import product
from math import comb
from typing import Dict, Iterator, List, Mapping, Optional, Tuple, TypeVar, Union

from .exactlinalg import DimensionMismatchError
from .polyfields import (
    Exponent,
    Poly,
    PolyMatrix,
    Scalar,
    VectorField,
    format_poly,
    jacobian,
    monomial_exponents,
)
from .tensorfields import (
    Basis,
    PolyForm,
    PolyMultiVector,
    basis_tuples,
    gl_action_on_basis,
)
from .types import ModuleSpec

logger = logging.getLogger(__name__)

OperatorKey = Tuple[Exponent, Basis, Basis]
MonomialKey = Tuple[Exponent, Exponent, Basis, Basis]
FieldLike = Union[PolyMultiVector, PolyForm, Poly]


class InternalConsistencyError(RuntimeError):
    """An identity that holds by construction failed; this signals a bug, not bad input."""


def hom_bases(spec: ModuleSpec) -> Tuple[List[Basis], List[Basis]]:
    """Source and target wedge bases of the Hom part of ``spec``."""
    return basis_tuples(spec.m, spec.p), basis_tuples(spec.m, spec.q)


def _kind(spec: ModuleSpec) -> str:
    return "covector" if spec.species == "form" else "vector"


def rho_matrix(spec: ModuleSpec, degree: int, A: PolyMatrix) -> Dict[Tuple[Basis, Basis], Poly]:
    """
    Matrix of the canonical gl(m) action on the degree-``degree`` wedge basis.

    Returns:
        Mapping ``(out, in) -> entry`` of ρ(A), nonzero entries only
    """
    out: Dict[Tuple[Basis, Basis], Poly] = {}
    for basis in basis_tuples(spec.m, degree):
        for target, entry in gl_action_on_basis(_kind(spec), basis, A).items():
            out[(target, basis)] = entry
    return out


def monomial_weight(spec: ModuleSpec, key: MonomialKey) -> int:
    """L_E eigenvalue of the monomial x^β ∂^γ ⊗ (I -> J): |β| - |γ| + s(p - q)."""
    beta, gamma, _, _ = key
    return sum(beta) - sum(gamma) + spec.hom_sign * (spec.p - spec.q)


def _leq(gamma: Exponent) -> Iterator[Tuple[Exponent, int]]:
    """All β <= γ componentwise, with the multinomial factor C(γ, β)."""
    for beta in product(*(range(g + 1) for g in gamma)):
        factor = 1
        for g, b in zip(gamma, beta):
            factor *= comb(g, b)
        yield tuple(beta), factor


def _shift(exp: Exponent, i: int, delta: int = 1) -> Exponent:
    out = list(exp)
    out[i] += delta
    return tuple(out)


class _Accumulator:
    """Sparse sum of polynomial-coefficient terms keyed by operator keys."""

    def __init__(self) -> None:
        self.terms: Dict[OperatorKey, Poly] = {}

    def add(self, key: OperatorKey, value: Poly) -> None:
        if not value:
            return
        prev = self.terms.get(key)
        total = value if prev is None else prev + value
        if total:
            self.terms[key] = total
        else:
            del self.terms[key]


T = TypeVar("T", bound="_HomTensor")


class _HomTensor:
    """Storage shared by operators and symbols: (γ, I, J) -> polynomial."""

    __slots__ = ("spec", "_coefficients")
    level = "operator"

    def __init__(self, spec: ModuleSpec, coefficients: Optional[Mapping[OperatorKey, Poly]] = None):
        if spec.level != self.level:
            raise DimensionMismatchError(f"{type(self).__name__} needs a {self.level}-level spec")
        self.spec = spec
        cleaned: Dict[OperatorKey, Poly] = {}
        for key, coeff in (coefficients or {}).items():
            gamma, I, J = tuple(key[0]), tuple(key[1]), tuple(key[2])
            self._check_key(gamma, I, J)
            if coeff.num_vars != spec.m:
                raise DimensionMismatchError("coefficient lives in the wrong number of variables")
            if coeff:
                cleaned[(gamma, I, J)] = coeff
        self._coefficients = cleaned

    def _check_key(self, gamma: Exponent, I: Basis, J: Basis) -> None:
        m = self.spec.m
        if len(gamma) != m or any(g < 0 for g in gamma):
            raise DimensionMismatchError(f"bad derivative exponent {gamma} for m={m}")
        for tup, deg in ((I, self.spec.p), (J, self.spec.q)):
            if len(tup) != deg or list(tup) != sorted(set(tup)) or not all(0 <= i < m for i in tup):
                raise DimensionMismatchError(f"bad basis tuple {tup} for degree {deg}")

    @classmethod
    def zero(cls: type, spec: ModuleSpec):  # type: ignore[no-untyped-def]
        return cls(spec)

    @classmethod
    def from_monomials(cls: type, spec: ModuleSpec, monomials: Mapping[MonomialKey, Scalar]):  # type: ignore[no-untyped-def]
        grouped: Dict[OperatorKey, Dict[Exponent, Scalar]] = {}
        for (beta, gamma, I, J), c in monomials.items():
            grouped.setdefault((gamma, I, J), {})[beta] = c
        return cls(spec, {key: Poly(spec.m, terms) for key, terms in grouped.items()})

    @classmethod
    def monomial(cls: type, spec: ModuleSpec, key: MonomialKey, coeff: Scalar = 1):  # type: ignore[no-untyped-def]
        beta, gamma, I, J = key
        return cls(spec, {(gamma, I, J): Poly.monomial(beta, coeff)})

    @property
    def coefficients(self) -> Mapping[OperatorKey, Poly]:
        return self._coefficients

    def coefficient(self, gamma: Exponent, I: Basis, J: Basis) -> Poly:
        return self._coefficients.get((tuple(gamma), tuple(I), tuple(J)), Poly.zero(self.spec.m))

    def items(self) -> Iterator[Tuple[OperatorKey, Poly]]:
        return iter(sorted(self._coefficients.items()))

    def is_zero(self) -> bool:
        return not self._coefficients

    def monomials(self) -> Dict[MonomialKey, Scalar]:
        """Expansion in the monomial basis x^β ∂^γ ⊗ (I -> J)."""
        out: Dict[MonomialKey, Scalar] = {}
        for (gamma, I, J), coeff in self._coefficients.items():
            for beta, c in coeff.items():
                out[(beta, gamma, I, J)] = c
        return out

    def _same(self: T, other: T) -> None:
        if type(self) is not type(other) or self.spec != other.spec:
            raise DimensionMismatchError(f"cannot combine elements of {self.spec} and {other.spec}")

    def _new(self: T, coefficients: Mapping[OperatorKey, Poly]) -> T:
        return type(self)(self.spec, coefficients)

    def __add__(self: T, other: T) -> T:
        self._same(other)
        out = dict(self._coefficients)
        for key, c in other._coefficients.items():
            out[key] = out[key] + c if key in out else c
        return self._new(out)

    def __neg__(self: T) -> T:
        return self._new({k: -c for k, c in self._coefficients.items()})

    def __sub__(self: T, other: T) -> T:
        return self + (-other)

    def scale(self: T, c: Scalar) -> T:
        return self._new({k: v.scale(c) for k, v in self._coefficients.items()})

    def multiply(self: T, f: Poly) -> T:
        """Left multiplication of every coefficient by ``f``."""
        return self._new({k: f * v for k, v in self._coefficients.items()})

    def __eq__(self, other: object) -> bool:
        if type(self) is not type(other):
            return NotImplemented
        return self.spec == other.spec and self._coefficients == other._coefficients  # type: ignore[attr-defined]

    def __hash__(self) -> int:
        return hash((self.spec, frozenset(self._coefficients.items())))

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.spec.tag()}: {format_operator(self)})"


class DiffOp(_HomTensor):
    """Element of D^k(source, target) in normal form."""

    __slots__ = ()
    level = "operator"

    def _check_key(self, gamma: Exponent, I: Basis, J: Basis) -> None:
        super()._check_key(gamma, I, J)
        if sum(gamma) > self.spec.k:
            raise DimensionMismatchError(f"derivative order {sum(gamma)} exceeds bound {self.spec.k}")

    @classmethod
    def identity(cls, spec: ModuleSpec) -> "DiffOp":
        if spec.p != spec.q:
            raise DimensionMismatchError("identity needs equal source and target degree")
        zero = (0,) * spec.m
        one = Poly.constant(spec.m, 1)
        return cls(spec, {(zero, I, I): one for I in basis_tuples(spec.m, spec.p)})

    @property
    def order(self) -> int:
        """Largest derivative order actually present; -1 for the zero operator."""
        return max((sum(g) for g, _, _ in self._coefficients), default=-1)

    def with_order_bound(self, k: int) -> "DiffOp":
        """The same operator seen inside D^k."""
        return DiffOp(self.spec.with_level("operator", k), self._coefficients)


class SymbolTensor(_HomTensor):
    """Element of S^k(source, target): coefficients homogeneous of degree k in η."""

    __slots__ = ()
    level = "symbol"

    def _check_key(self, gamma: Exponent, I: Basis, J: Basis) -> None:
        super()._check_key(gamma, I, J)
        if sum(gamma) != self.spec.k:
            raise DimensionMismatchError(f"η-degree {sum(gamma)} differs from {self.spec.k}")

    def is_constant(self) -> bool:
        return all(c.degree() <= 0 for c in self._coefficients.values())


def apply(D: DiffOp, T: FieldLike) -> FieldLike:
    """
    Apply an operator to a field of its source species.

    Functions may be passed as a bare :class:`Poly` and come back as one.

    Raises:
        DimensionMismatchError: If ``T`` does not match the source of ``D``
    """
    spec = D.spec
    bare = isinstance(T, Poly)
    if bare:
        if spec.p != 0 or spec.species == "form":
            raise DimensionMismatchError("a bare polynomial is only a degree-0 multivector field")
        T = PolyMultiVector(T.num_vars, 0, {(): T})
    expected = PolyForm if spec.species == "form" else PolyMultiVector
    if not isinstance(T, expected) or T.degree != spec.p or T.m != spec.m:
        raise DimensionMismatchError(f"field does not match the source of {spec.tag()}")
    out: Dict[Basis, Poly] = {}
    for (gamma, I, J), A in D.coefficients.items():
        source = T.component(I)
        if not source:
            continue
        term = A * source.derivative(gamma)
        if term:
            out[J] = out[J] + term if J in out else term
    result = expected(spec.m, spec.q, out)
    if bare:
        return result.component(())
    return result


def _hom_action(spec: ModuleSpec, DX: PolyMatrix) -> Tuple[Dict[Basis, List[Tuple[Basis, Poly]]], Dict[Basis, List[Tuple[Basis, Poly]]]]:
    """ρ(DX) on the target indexed by input tuple, and on the source indexed by output tuple."""
    tgt_by_in: Dict[Basis, List[Tuple[Basis, Poly]]] = {}
    for (j_out, j_in), r in rho_matrix(spec, spec.q, DX).items():
        tgt_by_in.setdefault(j_in, []).append((j_out, r))
    src_by_out: Dict[Basis, List[Tuple[Basis, Poly]]] = {}
    for (i_out, i_in), r in rho_matrix(spec, spec.p, DX).items():
        src_by_out.setdefault(i_out, []).append((i_in, r))
    return tgt_by_in, src_by_out


def _lie_terms(X: VectorField, spec: ModuleSpec, coefficients: Mapping[OperatorKey, Poly]) -> _Accumulator:
    """Coefficients of L_X ∘ D - D ∘ L_X before the order check."""
    tgt_by_in, src_by_out = _hom_action(spec, jacobian(X))

    acc = _Accumulator()
    for (gamma, I, J), A in coefficients.items():
        # X.(A ∂^γ T_I)
        acc.add((gamma, I, J), X.apply(A))
        for l, xl in enumerate(X.components):
            if xl:
                acc.add((_shift(gamma, l), I, J), xl * A)
        # -ρ(DX) on the target
        for j_out, r in tgt_by_in.get(J, ()):
            acc.add((gamma, I, j_out), -(r * A))
        for beta, factor in _leq(gamma):
            delta = tuple(g - b for g, b in zip(gamma, beta))
            # -A ∂^γ(X^l ∂_l T_I)
            for l, xl in enumerate(X.components):
                dxl = xl.derivative(delta)
                if dxl:
                    acc.add((_shift(beta, l), I, J), -(A * dxl).scale(factor))
            # +A ∂^γ(ρ(DX) T)_I
            for i_in, r in src_by_out.get(I, ()):
                dr = r.derivative(delta)
                if dr:
                    acc.add((beta, i_in, J), (A * dr).scale(factor))
    return acc


def lie_derivative_op(X: VectorField, D: DiffOp) -> DiffOp:
    """
    L_X D = L_X ∘ D - D ∘ L_X, normalised back to Σ A ∂^γ form.

    Raises:
        DimensionMismatchError: If X and D live on different ℝᵐ
        InternalConsistencyError: If the order k+1 layer does not cancel
    """
    if X.m != D.spec.m:
        raise DimensionMismatchError(f"field on R^{X.m} acting on operators over R^{D.spec.m}")
    acc = _lie_terms(X, D.spec, D.coefficients)
    overflow = [key for key in acc.terms if sum(key[0]) > D.spec.k]
    if overflow:
        raise InternalConsistencyError(f"order {D.spec.k + 1} terms survive in L_X D: {overflow[:3]}")
    return DiffOp(D.spec, acc.terms)


def principal_symbol(D: DiffOp) -> SymbolTensor:
    """The |γ| = k layer of D as an element of S^k."""
    k = D.spec.k
    top = {key: c for key, c in D.coefficients.items() if sum(key[0]) == k}
    return SymbolTensor(D.spec.with_level("symbol"), top)


def symbol_lie_derivative(X: VectorField, S: SymbolTensor) -> SymbolTensor:
    """
    Induced Vect action on principal symbols.

    Transport of coefficients, the gl(m) action of DX on both Hom slots, and
    the dual action of DX on the symbol variable η.
    """
    spec = S.spec
    if X.m != spec.m:
        raise DimensionMismatchError(f"field on R^{X.m} acting on symbols over R^{spec.m}")
    DX = jacobian(X)
    tgt_by_in, src_by_out = _hom_action(spec, DX)
    acc = _Accumulator()
    for (gamma, I, J), A in S.coefficients.items():
        acc.add((gamma, I, J), X.apply(A))
        for j_out, r in tgt_by_in.get(J, ()):
            acc.add((gamma, I, j_out), -(r * A))
        for i_in, r in src_by_out.get(I, ()):
            acc.add((gamma, i_in, J), A * r)
        for l, g in enumerate(gamma):
            if not g:
                continue
            for i in range(spec.m):
                entry = DX[i][l]
                if entry:
                    acc.add((_shift(_shift(gamma, l, -1), i), I, J), -(entry * A).scale(g))
    return SymbolTensor(spec, acc.terms)


def lift_symbol(S: SymbolTensor) -> DiffOp:
    """Section of σ: the same coefficients with ∂ in place of η and no lower-order terms."""
    return DiffOp(S.spec.with_level("operator"), S.coefficients)


def weight_monomials(spec: ModuleSpec, weight: int) -> List[MonomialKey]:
    """
    Every monomial basis key of ``spec`` with L_E-weight ``weight``, sorted.

    Operators range over |γ| = 0..k, symbols over |γ| = k only.
    """
    m = spec.m
    sources, targets = hom_bases(spec)
    orders = [spec.k] if spec.level == "symbol" else range(spec.k + 1)
    keys: List[MonomialKey] = []
    shift = spec.hom_sign * (spec.p - spec.q)
    for r in orders:
        poly_degree = weight + r - shift
        if poly_degree < 0:
            continue
        for gamma in monomial_exponents(m, r):
            for beta in monomial_exponents(m, poly_degree):
                for I in sources:
                    for J in targets:
                        keys.append((beta, gamma, I, J))
    keys.sort()
    logger.debug("%s: %d monomials of weight %d", spec.tag(), len(keys), weight)
    return keys


def format_operator(D: _HomTensor) -> str:
    """Render ``(A) * d^γ [I -> J]`` terms joined by ``+``; 1-based axis names."""
    prefix = "dx" if D.spec.species == "form" else "d"
    var = "eta" if isinstance(D, SymbolTensor) else "d"
    parts = []
    for (gamma, I, J), A in D.items():
        deriv = "*".join(f"{var}{i + 1}^{g}" if g > 1 else f"{var}{i + 1}" for i, g in enumerate(gamma) if g)
        src = "^".join(f"{prefix}{i + 1}" for i in I) or "1"
        tgt = "^".join(f"{prefix}{i + 1}" for i in J) or "1"
        head = f"({format_poly(A)})" + (f" * {deriv}" if deriv else "")
        parts.append(f"{head} [{src} -> {tgt}]")
    return " + ".join(parts) if parts else "0"


def degree_monomials(spec: ModuleSpec, max_degree: int) -> List[MonomialKey]:
    """Every monomial basis key of ``spec`` with coefficient degree |β| <= ``max_degree``, sorted."""
    sources, targets = hom_bases(spec)
    orders = [spec.k] if spec.level == "symbol" else range(spec.k + 1)
    keys: List[MonomialKey] = []
    for r in orders:
        for gamma in monomial_exponents(spec.m, r):
            for d in range(max_degree + 1):
                for beta in monomial_exponents(spec.m, d):
                    keys.extend((beta, gamma, I, J) for I in sources for J in targets)
    keys.sort()
    return keys
