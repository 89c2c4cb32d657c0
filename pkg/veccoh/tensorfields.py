"""
Skew-symmetric contravariant tensor fields and differential forms on ℝᵐ.

Both species are stored on strictly increasing index tuples with polynomial
coefficients. They are kept as distinct types: Λ^p and Ω_p are different
modules of Vect(ℝᵐ).
"""

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, TypeVar, Union

from .exactlinalg import DimensionMismatchError
from .polyfields import (
    Poly,
    PolyMatrix,
    Scalar,
    VectorField,
    format_poly,
    jacobian,
    parse_poly,
)

Basis = Tuple[int, ...]


class DegreeError(ValueError):
    """Raised when a degree constraint (0 <= p <= m, p >= 1 for contraction) fails."""


def sort_with_sign(indices: Sequence[int]) -> Tuple[int, Basis]:
    """
    Sort an index sequence, tracking the permutation sign.

    Returns:
        ``(sign, sorted_tuple)``; sign is 0 when an index repeats.
    """
    seq = list(indices)
    if len(set(seq)) != len(seq):
        return 0, ()
    sign = 1
    for i in range(1, len(seq)):
        j = i
        while j > 0 and seq[j - 1] > seq[j]:
            seq[j - 1], seq[j] = seq[j], seq[j - 1]
            sign = -sign
            j -= 1
    return sign, tuple(seq)


def gl_action_on_basis(
    kind: str, basis: Basis, A: PolyMatrix
) -> Dict[Basis, Poly]:
    """
    ρ(A) applied to a wedge basis element, as a derivation.

    ``kind`` is "vector" (e_i ↦ Σ_j A[j][i] e_j) or "covector"
    (e^i ↦ -Σ_j A[i][j] e^j, the dual action).
    """
    out: Dict[Basis, Poly] = {}
    for s, i in enumerate(basis):
        m = len(A)
        for j in range(m):
            entry = A[j][i] if kind == "vector" else -A[i][j]
            if not entry:
                continue
            replaced = list(basis)
            replaced[s] = j
            sign, key = sort_with_sign(replaced)
            if sign == 0:
                continue
            term = entry if sign > 0 else -entry
            prev = out.get(key)
            total = term if prev is None else prev + term
            if total:
                out[key] = total
            else:
                out.pop(key, None)
    return out


F = TypeVar("F", bound="_SkewField")


class _SkewField:
    """Shared storage and linear structure of multivector fields and forms."""

    __slots__ = ("m", "degree", "_components")
    kind = "vector"

    def __init__(self, m: int, degree: int, components: Optional[Mapping[Basis, Poly]] = None):
        if not 0 <= degree <= m:
            raise DegreeError(f"degree {degree} outside 0..{m}")
        self.m = m
        self.degree = degree
        cleaned: Dict[Basis, Poly] = {}
        for key, coeff in (components or {}).items():
            key = tuple(key)
            if len(key) != degree or list(key) != sorted(set(key)) or not all(0 <= i < m for i in key):
                raise DimensionMismatchError(f"index tuple {key} is not strictly increasing in 0..{m - 1}")
            if coeff.num_vars != m:
                raise DimensionMismatchError("coefficient lives in the wrong number of variables")
            if coeff:
                cleaned[key] = coeff
        self._components = cleaned

    @classmethod
    def zero(cls: type, m: int, degree: int):  # type: ignore[no-untyped-def]
        return cls(m, degree)

    @classmethod
    def basis_element(cls: type, m: int, indices: Sequence[int], coeff: Union[Poly, Scalar] = 1):  # type: ignore[no-untyped-def]
        sign, key = sort_with_sign(indices)
        if sign == 0:
            return cls(m, len(indices))
        poly = coeff if isinstance(coeff, Poly) else Poly.constant(m, coeff)
        return cls(m, len(key), {key: poly.scale(sign)})

    @property
    def components(self) -> Mapping[Basis, Poly]:
        return self._components

    def component(self, key: Basis) -> Poly:
        return self._components.get(tuple(key), Poly.zero(self.m))

    def items(self) -> Iterator[Tuple[Basis, Poly]]:
        return iter(sorted(self._components.items()))

    def is_zero(self) -> bool:
        return not self._components

    def _check(self: F, other: F) -> None:
        if type(self) is not type(other):
            raise DimensionMismatchError(f"cannot combine {type(self).__name__} and {type(other).__name__}")
        if (self.m, self.degree) != (other.m, other.degree):
            raise DimensionMismatchError(
                f"degree/dimension mismatch: ({self.m}, {self.degree}) vs ({other.m}, {other.degree})"
            )

    def _new(self: F, components: Mapping[Basis, Poly]) -> F:
        return type(self)(self.m, self.degree, components)

    def __add__(self: F, other: F) -> F:
        self._check(other)
        out = dict(self._components)
        for key, c in other._components.items():
            out[key] = out[key] + c if key in out else c
        return self._new(out)

    def __neg__(self: F) -> F:
        return self._new({k: -c for k, c in self._components.items()})

    def __sub__(self: F, other: F) -> F:
        return self + (-other)

    def scale(self: F, c: Scalar) -> F:
        return self._new({k: v.scale(c) for k, v in self._components.items()})

    def multiply(self: F, f: Poly) -> F:
        return self._new({k: f * v for k, v in self._components.items()})

    def map_coefficients(self: F, fn) -> F:  # type: ignore[no-untyped-def]
        return self._new({k: fn(v) for k, v in self._components.items()})

    def __eq__(self, other: object) -> bool:
        if type(self) is not type(other):
            return NotImplemented
        return (self.m, self.degree, self._components) == (other.m, other.degree, other._components)  # type: ignore[attr-defined]

    def __hash__(self) -> int:
        return hash((type(self).__name__, self.m, self.degree, frozenset(self._components.items())))

    def _gl_term(self: F, X: VectorField) -> F:
        """ρ(DX) applied to this field, coefficientwise."""
        DX = jacobian(X)
        out: Dict[Basis, Poly] = {}
        for key, coeff in self._components.items():
            for target, entry in gl_action_on_basis(self.kind, key, DX).items():
                term = entry * coeff
                out[target] = out[target] + term if target in out else term
        return self._new(out)

    def lie_derivative(self: F, X: VectorField) -> F:
        """L_X f = X.f - ρ(DX) f."""
        if X.m != self.m:
            raise DimensionMismatchError(f"field on R^{X.m} acting on R^{self.m}")
        transported = self.map_coefficients(X.apply)
        return transported - self._gl_term(X)


class PolyMultiVector(_SkewField):
    """Multivector field T = Σ T^I ∂_{i1}∧…∧∂_{ip} with polynomial coefficients."""

    __slots__ = ()
    kind = "vector"

    @classmethod
    def from_field(cls, X: VectorField) -> "PolyMultiVector":
        return cls(X.m, 1, {(i,): c for i, c in enumerate(X.components)})

    def __repr__(self) -> str:
        return f"PolyMultiVector({format_skew(self)})"


class PolyForm(_SkewField):
    """Differential form ω = Σ ω_I dx^{i1}∧…∧dx^{ip} with polynomial coefficients."""

    __slots__ = ()
    kind = "covector"

    @classmethod
    def function(cls, f: Poly) -> "PolyForm":
        return cls(f.num_vars, 0, {(): f})

    def coefficients(self) -> List[Poly]:
        """Components of a 1-form as a list indexed by axis."""
        if self.degree != 1:
            raise DegreeError("coefficients() is defined for 1-forms")
        return [self.component((i,)) for i in range(self.m)]

    def __repr__(self) -> str:
        return f"PolyForm({format_skew(self)})"


@dataclass(frozen=True)
class Covector:
    """Constant covector α = α_i e^i ∈ ℝᵐ*."""

    components: Tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "components", tuple(Fraction(c) for c in self.components))

    @property
    def m(self) -> int:
        return len(self.components)

    @classmethod
    def unit(cls, m: int, i: int) -> "Covector":
        return cls(tuple(1 if j == i else 0 for j in range(m)))

    def as_form(self) -> PolyForm:
        m = self.m
        return PolyForm(m, 1, {(i,): Poly.constant(m, c) for i, c in enumerate(self.components) if c})

    def pair(self, X: VectorField) -> Poly:
        """ξ(X) = ξ_i X^i."""
        total = Poly.zero(self.m)
        for c, xi in zip(self.components, X.components):
            if c:
                total = total + xi.scale(c)
        return total


OneFormLike = Union[Covector, PolyForm]


def as_one_form(alpha: OneFormLike) -> PolyForm:
    if isinstance(alpha, Covector):
        return alpha.as_form()
    if alpha.degree != 1:
        raise DegreeError(f"expected a 1-form, got degree {alpha.degree}")
    return alpha


def lie_derivative_mv(X: VectorField, T: PolyMultiVector) -> PolyMultiVector:
    return T.lie_derivative(X)


def lie_derivative_form(X: VectorField, omega: PolyForm) -> PolyForm:
    return omega.lie_derivative(X)


def interior_product(alpha: OneFormLike, T: PolyMultiVector) -> PolyMultiVector:
    """
    Contract a multivector field with a 1-form.

    ι_α(∂_{i1}∧…∧∂_{ip}) = Σ_s (-1)^(s-1) α_{is} ∂_{i1}∧…(omit s)…∧∂_{ip}

    Raises:
        DegreeError: If T has degree 0
        DimensionMismatchError: If α and T live on different ℝᵐ
    """
    if T.degree == 0:
        raise DegreeError("cannot contract a degree-0 multivector")
    form = as_one_form(alpha)
    if form.m != T.m:
        raise DimensionMismatchError(f"1-form on R^{form.m} against multivector on R^{T.m}")
    coeffs = form.coefficients()
    out: Dict[Basis, Poly] = {}
    for key, c in T.components.items():
        for s, i in enumerate(key):
            a = coeffs[i]
            if not a:
                continue
            rest = key[:s] + key[s + 1:]
            term = a * c
            if s % 2:
                term = -term
            out[rest] = out[rest] + term if rest in out else term
    return PolyMultiVector(T.m, T.degree - 1, out)


def exterior_derivative(omega: PolyForm) -> PolyForm:
    """d(f dx^I) = Σ_j ∂_j f dx^j ∧ dx^I."""
    if omega.degree == omega.m:
        return PolyForm(omega.m, omega.m)
    out: Dict[Basis, Poly] = {}
    for key, f in omega.components.items():
        for j in range(omega.m):
            df = f.partial(j)
            if not df:
                continue
            sign, new = sort_with_sign((j,) + key)
            if sign == 0:
                continue
            term = df if sign > 0 else -df
            out[new] = out[new] + term if new in out else term
    return PolyForm(omega.m, omega.degree + 1, out)


def wedge(alpha: PolyForm, omega: PolyForm) -> PolyForm:
    """
    Exterior product α ∧ ω.

    Raises:
        DegreeError: If the degrees add up to more than m
    """
    if alpha.m != omega.m:
        raise DimensionMismatchError(f"forms on R^{alpha.m} and R^{omega.m}")
    degree = alpha.degree + omega.degree
    if degree > alpha.m:
        raise DegreeError(f"wedge of degrees {alpha.degree} and {omega.degree} exceeds m={alpha.m}")
    out: Dict[Basis, Poly] = {}
    for k1, c1 in alpha.components.items():
        for k2, c2 in omega.components.items():
            sign, key = sort_with_sign(k1 + k2)
            if sign == 0:
                continue
            term = c1 * c2
            if sign < 0:
                term = -term
            out[key] = out[key] + term if key in out else term
    return PolyForm(alpha.m, degree, out)


def basis_tuples(m: int, degree: int) -> List[Basis]:
    """Strictly increasing index tuples of the given length, lexicographically."""
    return list(combinations(range(m), degree))


# -- textual syntax ---------------------------------------------------------

def format_skew(field: _SkewField) -> str:
    """``P * dx1^dx2`` for forms, ``P * d1^d2`` for multivectors, ``+``-joined."""
    prefix = "dx" if isinstance(field, PolyForm) else "d"
    parts = []
    for key, c in field.items():
        frame = "^".join(f"{prefix}{i + 1}" for i in key)
        parts.append(f"({format_poly(c)}) * {frame}" if frame else f"({format_poly(c)})")
    return " + ".join(parts) if parts else "0"


def parse_skew(text: str, m: int, degree: int, species: str) -> _SkewField:
    """Parse the format produced by :func:`format_skew`."""
    cls = PolyForm if species == "form" else PolyMultiVector
    prefix = "dx" if species == "form" else "d"
    components: Dict[Basis, Poly] = {}
    for raw in re.split(r"\+(?![^()]*\))", text):
        raw = raw.strip()
        if not raw or raw == "0":
            continue
        if degree == 0:
            body, frame = raw, ""
        else:
            body, _, frame = raw.rpartition("*")
        indices = [int(tok.strip()[len(prefix):]) - 1 for tok in frame.split("^") if tok.strip()]
        sign, key = sort_with_sign(indices)
        if sign == 0:
            continue
        poly = parse_poly(body.strip() or "1", m).scale(sign)
        components[key] = components[key] + poly if key in components else poly
    return cls(m, degree, components)
