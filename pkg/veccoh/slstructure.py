"""
The projective Lie algebra sl(m+1, ℝ) as a graded algebra and as polynomial vector fields.

Elements are triples (h, A, α) in ℝᵐ ⊕ gl(m, ℝ) ⊕ ℝᵐ* of degrees -1, 0, 1.
The basis order is fixed and stable:

    translations e_0 … e_{m-1},
    matrix units E^i_j, row-major (i outer, j inner),
    covectors e^0 … e^{m-1}.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from .polyfields import Poly, Scalar, VectorField, lie_bracket

logger = logging.getLogger(__name__)

Vector = Tuple[Fraction, ...]
Matrix = Tuple[Tuple[Fraction, ...], ...]


def _vec(values: Sequence[Scalar]) -> Vector:
    return tuple(Fraction(v) for v in values)


def _mat(rows: Sequence[Sequence[Scalar]]) -> Matrix:
    return tuple(_vec(row) for row in rows)


@dataclass(frozen=True)
class SlElement:
    """
    Element h + A + α of sl(m+1, ℝ) = ℝᵐ ⊕ gl(m, ℝ) ⊕ ℝᵐ*.

    Attributes:
        h: Degree -1 part, a vector of ℝᵐ
        A: Degree 0 part, an m×m matrix with A[i][j] = A^i_j
        alpha: Degree +1 part, a covector of ℝᵐ*
    """

    h: Vector
    A: Matrix
    alpha: Vector

    def __post_init__(self) -> None:
        h, A, alpha = _vec(self.h), _mat(self.A), _vec(self.alpha)
        m = len(h)
        if len(alpha) != m or len(A) != m or any(len(row) != m for row in A):
            raise ValueError(f"inconsistent shapes: |h|={m}, A is {len(A)} rows, |α|={len(alpha)}")
        object.__setattr__(self, "h", h)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "alpha", alpha)

    @property
    def m(self) -> int:
        return len(self.h)

    @classmethod
    def zero(cls, m: int) -> "SlElement":
        return cls((0,) * m, ((0,) * m,) * m, (0,) * m)

    @classmethod
    def translation(cls, m: int, i: int) -> "SlElement":
        return cls(tuple(1 if j == i else 0 for j in range(m)), ((0,) * m,) * m, (0,) * m)

    @classmethod
    def matrix_unit(cls, m: int, i: int, j: int) -> "SlElement":
        A = [[1 if (r, c) == (i, j) else 0 for c in range(m)] for r in range(m)]
        return cls((0,) * m, A, (0,) * m)  # type: ignore[arg-type]

    @classmethod
    def identity(cls, m: int) -> "SlElement":
        """The identity of gl(m), i.e. -E under :func:`embed`."""
        A = [[1 if r == c else 0 for c in range(m)] for r in range(m)]
        return cls((0,) * m, A, (0,) * m)  # type: ignore[arg-type]

    @classmethod
    def covector(cls, m: int, i: int) -> "SlElement":
        return cls((0,) * m, ((0,) * m,) * m, tuple(1 if j == i else 0 for j in range(m)))

    def __add__(self, other: "SlElement") -> "SlElement":
        return SlElement(
            tuple(a + b for a, b in zip(self.h, other.h)),
            tuple(tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(self.A, other.A)),
            tuple(a + b for a, b in zip(self.alpha, other.alpha)),
        )

    def scale(self, c: Scalar) -> "SlElement":
        return SlElement(
            tuple(c * a for a in self.h),
            tuple(tuple(c * a for a in row) for row in self.A),
            tuple(c * a for a in self.alpha),
        )

    def __neg__(self) -> "SlElement":
        return self.scale(-1)

    def __sub__(self, other: "SlElement") -> "SlElement":
        return self + (-other)

    def is_zero(self) -> bool:
        return not any(self.coordinates())

    def coordinates(self) -> List[Fraction]:
        """Coordinates in the order of :func:`basis`."""
        return list(self.h) + [a for row in self.A for a in row] + list(self.alpha)


def basis(m: int) -> List[SlElement]:
    """
    The m² + 2m basis elements of sl(m+1) in the documented order.

    Raises:
        ValueError: If m < 2
    """
    if m < 2:
        raise ValueError(f"m must be at least 2, got {m}")
    out = [SlElement.translation(m, i) for i in range(m)]
    out += [SlElement.matrix_unit(m, i, j) for i in range(m) for j in range(m)]
    out += [SlElement.covector(m, i) for i in range(m)]
    return out


def basis_weights(m: int) -> List[int]:
    return [-1] * m + [0] * (m * m) + [1] * m


def from_coordinates(m: int, coords: Sequence[Scalar]) -> SlElement:
    if len(coords) != m * m + 2 * m:
        raise ValueError(f"expected {m * m + 2 * m} coordinates, got {len(coords)}")
    h = coords[:m]
    A = [coords[m + i * m: m + (i + 1) * m] for i in range(m)]
    alpha = coords[m + m * m:]
    return SlElement(h, A, alpha)  # type: ignore[arg-type]


def weight(e: SlElement) -> int:
    """
    Grading degree of a homogeneous element.

    Raises:
        ValueError: If ``e`` is zero or mixes degrees
    """
    parts = [
        w for w, present in (
            (-1, any(e.h)),
            (0, any(a for row in e.A for a in row)),
            (1, any(e.alpha)),
        ) if present
    ]
    if len(parts) != 1:
        raise ValueError(f"element is not homogeneous: degrees {parts}")
    return parts[0]


def embed(e: SlElement) -> VectorField:
    """
    Realise ``e`` as a polynomial vector field on ℝᵐ.

    h* = -h^i ∂_i, A* = -A^i_j x^j ∂_i and α* = α(x) x^i ∂_i.
    """
    m = e.m
    xs = [Poly.variable(m, i) for i in range(m)]
    alpha_x = Poly.zero(m)
    for a, x in zip(e.alpha, xs):
        if a:
            alpha_x = alpha_x + x.scale(a)
    comps = []
    for i in range(m):
        comp = Poly.constant(m, -e.h[i])
        for j in range(m):
            if e.A[i][j]:
                comp = comp - xs[j].scale(e.A[i][j])
        if alpha_x:
            comp = comp + alpha_x * xs[i]
        comps.append(comp)
    return VectorField(comps)


def _matmul(A: Matrix, B: Matrix) -> List[List[Fraction]]:
    m = len(A)
    return [[sum((A[i][k] * B[k][j] for k in range(m)), Fraction(0)) for j in range(m)] for i in range(m)]


def _h_alpha(h: Vector, alpha: Vector) -> List[List[Fraction]]:
    """[h, α] = α(h)·1 + h⊗α, with (h⊗α)^i_j = h^i α_j."""
    m = len(h)
    pairing = sum((a * b for a, b in zip(alpha, h)), Fraction(0))
    return [[(pairing if i == j else 0) + h[i] * alpha[j] for j in range(m)] for i in range(m)]


def abstract_bracket(e1: SlElement, e2: SlElement) -> SlElement:
    """
    Graded bracket of sl(m+1).

    [A, A'] is the matrix commutator, [A, h] = Ah, [A, α] = -αA,
    [h, h'] = [α, α'] = 0 and [h, α] = α(h)·1 + h⊗α.
    """
    if e1.m != e2.m:
        raise ValueError(f"elements of sl({e1.m + 1}) and sl({e2.m + 1})")
    m = e1.m
    h = [
        sum((e1.A[i][j] * e2.h[j] - e2.A[i][j] * e1.h[j] for j in range(m)), Fraction(0))
        for i in range(m)
    ]
    ab, ba = _matmul(e1.A, e2.A), _matmul(e2.A, e1.A)
    h1a2, h2a1 = _h_alpha(e1.h, e2.alpha), _h_alpha(e2.h, e1.alpha)
    A = [[ab[i][j] - ba[i][j] + h1a2[i][j] - h2a1[i][j] for j in range(m)] for i in range(m)]
    alpha = [
        sum((e1.alpha[i] * e2.A[i][j] - e2.alpha[i] * e1.A[i][j] for i in range(m)), Fraction(0))
        for j in range(m)
    ]
    return SlElement(h, A, alpha)  # type: ignore[arg-type]


def structure_constants(m: int) -> Dict[Tuple[int, int], Dict[int, Fraction]]:
    """[b_a, b_b] = Σ_c s[a, b][c] b_c for a < b, nonzero entries only."""
    elems = basis(m)
    out: Dict[Tuple[int, int], Dict[int, Fraction]] = {}
    for a, b in combinations(range(len(elems)), 2):
        coords = abstract_bracket(elems[a], elems[b]).coordinates()
        nonzero = {c: v for c, v in enumerate(coords) if v}
        if nonzero:
            out[(a, b)] = nonzero
    return out


def euler_field(m: int) -> VectorField:
    """E = x^i ∂_i, which is embed of minus the identity of gl(m)."""
    return VectorField.euler(m)


@dataclass
class StructureReport:
    """Outcome of an exhaustive check over basis pairs or triples."""

    m: int
    checked: int
    passed: bool
    counterexample: Optional[Tuple[int, ...]] = None


def verify_embedding(m: int) -> StructureReport:
    """Check that embed is a Lie algebra homomorphism on every unordered basis pair."""
    elems = basis(m)
    fields = [embed(e) for e in elems]
    checked = 0
    for a, b in combinations(range(len(elems)), 2):
        checked += 1
        if lie_bracket(fields[a], fields[b]) != embed(abstract_bracket(elems[a], elems[b])):
            logger.warning("embedding fails on basis pair (%d, %d)", a, b)
            return StructureReport(m, checked, False, (a, b))
    logger.debug("embedding verified on %d pairs for m=%d", checked, m)
    return StructureReport(m, checked, True)


def verify_grading(m: int) -> StructureReport:
    """Check [E, e*] = weight(e) e* for every basis element e."""
    E = euler_field(m)
    elems = basis(m)
    for a, (e, w) in enumerate(zip(elems, basis_weights(m))):
        field = embed(e)
        if lie_bracket(E, field) != field.scale(w):
            return StructureReport(m, a + 1, False, (a,))
    return StructureReport(m, len(elems), True)


def verify_jacobi(m: int) -> StructureReport:
    """Check the Jacobi identity of abstract_bracket on every basis triple."""
    elems = basis(m)
    zero = SlElement.zero(m)
    checked = 0
    for a, b, c in combinations(range(len(elems)), 3):
        checked += 1
        x, y, z = elems[a], elems[b], elems[c]
        total = (
            abstract_bracket(x, abstract_bracket(y, z))
            + abstract_bracket(y, abstract_bracket(z, x))
            + abstract_bracket(z, abstract_bracket(x, y))
        )
        if total != zero:
            return StructureReport(m, checked, False, (a, b, c))
    return StructureReport(m, checked, True)
