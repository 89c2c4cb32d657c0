"""
Multivariate polynomials over ℚ and polynomial vector fields on ℝᵐ.

Axes are 0-based in the API. The textual syntax used by the CLI names the
variables ``x1 ... xm`` and the coordinate fields ``d1 ... dm``.
"""

import re
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from .exactlinalg import DimensionMismatchError

Exponent = Tuple[int, ...]
Scalar = Union[int, Fraction]


def monomial_exponents(m: int, degree: int) -> List[Exponent]:
    """All exponent vectors of total ``degree`` in ``m`` variables, in lexicographic order."""
    out = []
    for combo in combinations_with_replacement(range(m), degree):
        exp = [0] * m
        for i in combo:
            exp[i] += 1
        out.append(tuple(exp))
    return sorted(out, reverse=True)


def unit_exponent(m: int, i: int) -> Exponent:
    return tuple(1 if j == i else 0 for j in range(m))


class Poly:
    """
    Polynomial in ``num_vars`` variables with rational coefficients.

    Immutable; only nonzero coefficients are stored, keyed by exponent vector.
    """

    __slots__ = ("num_vars", "_terms", "_hash")

    def __init__(self, num_vars: int, terms: Optional[Mapping[Exponent, Scalar]] = None):
        self.num_vars = num_vars
        cleaned: Dict[Exponent, Fraction] = {}
        for exp, coeff in (terms or {}).items():
            if len(exp) != num_vars or any(e < 0 for e in exp):
                raise DimensionMismatchError(f"bad exponent {exp} for {num_vars} variables")
            if coeff:
                cleaned[tuple(exp)] = Fraction(coeff)
        self._terms = cleaned
        self._hash: Optional[int] = None

    @classmethod
    def _raw(cls, num_vars: int, terms: Dict[Exponent, Fraction]) -> "Poly":
        # terms already validated and free of zeros
        obj = cls.__new__(cls)
        obj.num_vars = num_vars
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, m: int) -> "Poly":
        return cls._raw(m, {})

    @classmethod
    def constant(cls, m: int, c: Scalar) -> "Poly":
        return cls(m, {(0,) * m: c})

    @classmethod
    def variable(cls, m: int, i: int) -> "Poly":
        if not 0 <= i < m:
            raise DimensionMismatchError(f"axis {i} out of range for m={m}")
        return cls._raw(m, {unit_exponent(m, i): Fraction(1)})

    @classmethod
    def monomial(cls, exp: Exponent, coeff: Scalar = 1) -> "Poly":
        return cls(len(exp), {exp: coeff})

    @property
    def terms(self) -> Mapping[Exponent, Fraction]:
        return self._terms

    def items(self) -> Iterator[Tuple[Exponent, Fraction]]:
        return iter(sorted(self._terms.items(), reverse=True))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * self.num_vars, Fraction(0))

    def _check(self, other: "Poly") -> None:
        if self.num_vars != other.num_vars:
            raise DimensionMismatchError(
                f"polynomials in {self.num_vars} and {other.num_vars} variables"
            )

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        if not other._terms:
            return self
        out = dict(self._terms)
        for exp, c in other._terms.items():
            new = out.get(exp, 0) + c
            if new:
                out[exp] = new
            else:
                out.pop(exp, None)
        return Poly._raw(self.num_vars, out)

    def __neg__(self) -> "Poly":
        return Poly._raw(self.num_vars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def scale(self, c: Scalar) -> "Poly":
        if not c:
            return Poly.zero(self.num_vars)
        c = Fraction(c)
        return Poly._raw(self.num_vars, {e: v * c for e, v in self._terms.items()})

    def __mul__(self, other: Union["Poly", Scalar]) -> "Poly":
        if not isinstance(other, Poly):
            return self.scale(other)
        self._check(other)
        out: Dict[Exponent, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                exp = tuple(a + b for a, b in zip(e1, e2))
                new = out.get(exp, 0) + c1 * c2
                if new:
                    out[exp] = new
                else:
                    out.pop(exp, None)
        return Poly._raw(self.num_vars, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        result = Poly.constant(self.num_vars, 1)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Poly):
            return self.num_vars == other.num_vars and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == Poly.constant(self.num_vars, other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num_vars, frozenset(self._terms.items())))
        return self._hash

    def partial(self, i: int) -> "Poly":
        """Formal partial derivative along axis ``i`` (0-based)."""
        if not 0 <= i < self.num_vars:
            raise DimensionMismatchError(f"axis {i} out of range for m={self.num_vars}")
        out: Dict[Exponent, Fraction] = {}
        for exp, c in self._terms.items():
            if exp[i]:
                new = list(exp)
                new[i] -= 1
                out[tuple(new)] = c * exp[i]
        return Poly._raw(self.num_vars, out)

    def derivative(self, exp: Exponent) -> "Poly":
        """Apply ∂^exp (one partial per unit of each exponent)."""
        result = self
        for i, n in enumerate(exp):
            for _ in range(n):
                if not result:
                    return result
                result = result.partial(i)
        return result

    def evaluate(self, point: Sequence[Scalar]) -> Fraction:
        if len(point) != self.num_vars:
            raise DimensionMismatchError("point dimension differs from number of variables")
        total = Fraction(0)
        for exp, c in self._terms.items():
            term = c
            for x, e in zip(point, exp):
                if e:
                    term *= Fraction(x) ** e
            total += term
        return total

    def __repr__(self) -> str:
        return f"Poly({format_poly(self)})"


def partial(f: Poly, i: int) -> Poly:
    """∂_i f for a 0-based axis index."""
    return f.partial(i)


class VectorField:
    """Polynomial vector field X = Σ X^i ∂_i on ℝᵐ."""

    __slots__ = ("components",)

    def __init__(self, components: Sequence[Poly]):
        comps = tuple(components)
        if not comps:
            raise DimensionMismatchError("a vector field needs at least one component")
        m = len(comps)
        for c in comps:
            if c.num_vars != m:
                raise DimensionMismatchError(
                    f"component in {c.num_vars} variables for a field on R^{m}"
                )
        self.components: Tuple[Poly, ...] = comps

    @property
    def m(self) -> int:
        return len(self.components)

    @classmethod
    def zero(cls, m: int) -> "VectorField":
        return cls([Poly.zero(m)] * m)

    @classmethod
    def coordinate(cls, m: int, i: int) -> "VectorField":
        """The constant field ∂_i."""
        return cls([Poly.constant(m, 1 if j == i else 0) for j in range(m)])

    @classmethod
    def euler(cls, m: int) -> "VectorField":
        """E = x^i ∂_i."""
        return cls([Poly.variable(m, i) for i in range(m)])

    def _check(self, other: "VectorField") -> None:
        if self.m != other.m:
            raise DimensionMismatchError(f"fields on R^{self.m} and R^{other.m}")

    def __add__(self, other: "VectorField") -> "VectorField":
        self._check(other)
        return VectorField([a + b for a, b in zip(self.components, other.components)])

    def __sub__(self, other: "VectorField") -> "VectorField":
        self._check(other)
        return VectorField([a - b for a, b in zip(self.components, other.components)])

    def __neg__(self) -> "VectorField":
        return VectorField([-a for a in self.components])

    def scale(self, c: Scalar) -> "VectorField":
        return VectorField([a.scale(c) for a in self.components])

    def multiply(self, f: Poly) -> "VectorField":
        return VectorField([f * a for a in self.components])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, VectorField):
            return NotImplemented
        return self.components == other.components

    def __hash__(self) -> int:
        return hash(self.components)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def apply(self, f: Poly) -> Poly:
        """Directional derivative X.f = X^i ∂_i f."""
        total = Poly.zero(self.m)
        for i, xi in enumerate(self.components):
            if xi:
                df = f.partial(i)
                if df:
                    total = total + xi * df
        return total

    def __repr__(self) -> str:
        return f"VectorField({format_field(self)})"


PolyMatrix = Tuple[Tuple[Poly, ...], ...]


def lie_bracket(X: VectorField, Y: VectorField) -> VectorField:
    """[X, Y]^i = X.Y^i - Y.X^i."""
    X._check(Y)
    return VectorField([X.apply(yi) - Y.apply(xi) for xi, yi in zip(X.components, Y.components)])


def jacobian(X: VectorField) -> PolyMatrix:
    """DX with entry (i, j) = ∂_j X^i."""
    return tuple(tuple(xi.partial(j) for j in range(X.m)) for xi in X.components)


def trace_div(X: VectorField) -> Poly:
    """tr(DX), the divergence of X."""
    total = Poly.zero(X.m)
    for i, xi in enumerate(X.components):
        total = total + xi.partial(i)
    return total


def dtr(X: VectorField) -> "PolyForm":
    """The exterior differential of tr(DX), as a 1-form."""
    from .tensorfields import exterior_derivative, PolyForm

    return exterior_derivative(PolyForm.function(trace_div(X)))


# -- textual syntax ---------------------------------------------------------

def _format_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_monomial(exp: Exponent, c: Fraction) -> str:
    factors = [f"x{i + 1}" if e == 1 else f"x{i + 1}^{e}" for i, e in enumerate(exp) if e]
    if not factors:
        return _format_coeff(c)
    return " * ".join([_format_coeff(c)] + factors)


def format_poly(f: Poly) -> str:
    """Render ``c * x1^a1 ... xm^am`` terms joined by ``+``."""
    if f.is_zero():
        return "0"
    return " + ".join(format_monomial(e, c) for e, c in f.items())


def format_field(X: VectorField) -> str:
    parts = [f"({format_poly(c)}) d{i + 1}" for i, c in enumerate(X.components) if c]
    return " + ".join(parts) if parts else "0"


_TERM_SPLIT = re.compile(r"\+(?![^()]*\))")
# a sign starts a new term unless it follows an operator or another sign
_SIGNED_TERM_SPLIT = re.compile(r"(?<=[^-+*/^])(?=[+-])")
_FACTOR = re.compile(r"^x(\d+)(?:\^(\d+))?$")


def parse_poly(text: str, m: int) -> Poly:
    """
    Parse the textual polynomial syntax.

    Terms are separated by ``+`` or ``-`` (``x1 - x2``, ``x1 + -3/2 * x2``);
    a term is ``*``-separated factors, each a rational constant (``-3/2``)
    or a power ``x<i>`` / ``x<i>^<n>``.
    """
    text = re.sub(r"\s+", "", text)
    if text.startswith("(") and text.endswith(")"):
        text = text[1:-1]
    terms: Dict[Exponent, Fraction] = {}
    for raw in _SIGNED_TERM_SPLIT.split(text or "0"):
        raw = raw.lstrip("+")
        if not raw:
            continue
        coeff = Fraction(1)
        exp = [0] * m
        for factor in raw.split("*"):
            sign = 1
            while factor[:1] in ("-", "+"):
                if factor[0] == "-":
                    sign = -sign
                factor = factor[1:]
            coeff *= sign
            match = _FACTOR.match(factor)
            if match:
                axis = int(match.group(1)) - 1
                if not 0 <= axis < m:
                    raise DimensionMismatchError(f"variable x{axis + 1} out of range for m={m}")
                exp[axis] += int(match.group(2) or 1)
            elif factor:
                coeff *= Fraction(factor)
        key = tuple(exp)
        terms[key] = terms.get(key, Fraction(0)) + coeff
    return Poly(m, terms)


def parse_field(text: str, m: int) -> VectorField:
    """Parse ``P1 d1 + ... + Pm dm`` where each ``Pi`` is a polynomial, parenthesised if compound."""
    comps = [Poly.zero(m) for _ in range(m)]
    for raw in _TERM_SPLIT.split(text):
        raw = raw.strip()
        if not raw:
            continue
        match = re.match(r"^(.*?)\s*\*?\s*d(\d+)$", raw)
        if not match:
            raise ValueError(f"cannot parse field term {raw!r}")
        axis = int(match.group(2)) - 1
        if not 0 <= axis < m:
            raise DimensionMismatchError(f"d{axis + 1} out of range for m={m}")
        body = match.group(1).strip() or "1"
        if body == "-":
            body = "-1"
        comps[axis] = comps[axis] + parse_poly(body, m)
    return VectorField(comps)