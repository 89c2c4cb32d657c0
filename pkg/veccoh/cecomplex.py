"""
Chevalley-Eilenberg cochains of finite families of polynomial vector fields.

The main family is sl(m+1) embedded in Vect(ℝᵐ). Cochains take values in an
operator or symbol module. Since L_E with E = x^i ∂_i acts diagonally on
basis cochains, the complex splits into finite weight blocks, and cohomology
is computed on the weight-zero block.

A basis cochain is a pair (σ, key): σ is a strictly increasing tuple of
algebra indices and key a module monomial. Its L_E-weight is the module
weight of ``key`` minus the sum of the algebra weights along σ.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from pathlib import Path
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple, Union

from .diffops import (
    DiffOp,
    InternalConsistencyError,
    MonomialKey,
    SymbolTensor,
    degree_monomials,
)
from .exactlinalg import DimensionMismatchError, SparseMatrix, rank, ranks, solve
from .modules import CoefficientModule, DictActionCache, Element, create_module
from .protocols import ModuleElement
from .polyfields import Scalar, VectorField, lie_bracket
from .slstructure import basis, basis_weights, embed, euler_field, structure_constants
from .tensorfields import sort_with_sign
from .types import ModuleSpec

logger = logging.getLogger(__name__)

Args = Tuple[int, ...]
CochainKey = Tuple[Args, MonomialKey]
Coordinates = Dict[CochainKey, Fraction]


class NotACocycleError(ValueError):
    """Raised when an operation needs a cocycle and ∂c != 0."""


class WeightError(ValueError):
    """Raised for weight queries that have no answer (non-monomials, ungraded families)."""


# -- field families ----------------------------------------------------------

@dataclass
class FieldAlgebra:
    """
    Finite family of vector fields closed under the bracket.

    Attributes:
        fields: Basis fields b_0 … b_{n-1}
        structure: [b_a, b_b] = Σ_c structure[(a, b)][c] b_c for a < b
        weights: ad(E)-eigenvalue of each basis field, or None if ungraded
        name: Label used in logs
    """

    fields: List[VectorField]
    structure: Dict[Tuple[int, int], Dict[int, Fraction]]
    weights: Optional[List[int]] = None
    name: str = "fields"
    _preimages: Dict[int, List[Tuple[int, int, Fraction]]] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        self._preimages = {}
        for (a, b), coeffs in sorted(self.structure.items()):
            for c, s in coeffs.items():
                self._preimages.setdefault(c, []).append((a, b, s))

    @property
    def m(self) -> int:
        return self.fields[0].m

    @property
    def dim(self) -> int:
        return len(self.fields)

    def bracket_preimages(self, c: int) -> List[Tuple[int, int, Fraction]]:
        """Triples (a, b, s), a < b, with s the b_c-coefficient of [b_a, b_b]."""
        return self._preimages.get(c, [])

    def bracket(self, a: int, b: int) -> Dict[int, Fraction]:
        if a == b:
            return {}
        if a < b:
            return dict(self.structure.get((a, b), {}))
        return {c: -s for c, s in self.structure.get((b, a), {}).items()}

    @classmethod
    def from_fields(cls, fields: Sequence[VectorField], name: str = "fields") -> "FieldAlgebra":
        """
        Find the structure constants of a bracket-closed family.

        Raises:
            ValueError: If the fields are dependent or not closed under the bracket
        """
        fields = list(fields)
        brackets = {
            (a, b): lie_bracket(fields[a], fields[b]) for a, b in combinations(range(len(fields)), 2)
        }
        index: Dict[Tuple[int, Tuple[int, ...]], int] = {}

        def coords(X: VectorField) -> Dict[int, Fraction]:
            out: Dict[int, Fraction] = {}
            for i, comp in enumerate(X.components):
                for exp, c in comp.items():
                    out[index.setdefault((i, exp), len(index))] = c
            return out

        columns = [coords(X) for X in fields]
        targets = {pair: coords(Y) for pair, Y in brackets.items()}
        M = SparseMatrix.from_columns(len(index), columns)
        if rank(M) != len(fields):
            raise ValueError("the fields are linearly dependent")
        structure: Dict[Tuple[int, int], Dict[int, Fraction]] = {}
        for pair, target in targets.items():
            rhs = [target.get(r, Fraction(0)) for r in range(len(index))]
            x = solve(M, rhs)
            if x is None:
                raise ValueError(f"the family is not closed under the bracket: [{pair[0]}, {pair[1]}]")
            nonzero = {c: v for c, v in enumerate(x) if v}
            if nonzero:
                structure[pair] = nonzero
        return cls(fields, structure, _homogeneous_weights(fields), name)


def _homogeneous_weights(fields: Sequence[VectorField]) -> Optional[List[int]]:
    weights = []
    for X in fields:
        degrees = {sum(exp) for comp in X.components for exp, _ in comp.items()}
        if len(degrees) != 1:
            return None
        weights.append(degrees.pop() - 1)
    return weights


@lru_cache(maxsize=None)
def sl_algebra(m: int) -> FieldAlgebra:
    """sl(m+1) embedded in Vect(ℝᵐ), in the documented basis order."""
    return FieldAlgebra(
        [embed(e) for e in basis(m)], structure_constants(m), basis_weights(m), name=f"sl{m + 1}"
    )


# -- cochains ----------------------------------------------------------------

def element_type(spec: ModuleSpec) -> type:
    return DiffOp if spec.level == "operator" else SymbolTensor


class Cochain:
    """
    Alternating u-cochain with values in the module named by ``spec``.

    Only strictly increasing argument tuples are stored; :meth:`value`
    handles arbitrary orders with the permutation sign.
    """

    __slots__ = ("spec", "u", "_values")

    def __init__(self, spec: ModuleSpec, u: int, values: Optional[Mapping[Args, Element]] = None):
        if u < 0:
            raise ValueError(f"cochain degree must be nonnegative, got {u}")
        self.spec = spec
        self.u = u
        cleaned: Dict[Args, Element] = {}
        for args, v in (values or {}).items():
            args = tuple(args)
            if len(args) != u or list(args) != sorted(set(args)):
                raise DimensionMismatchError(f"argument tuple {args} is not strictly increasing of length {u}")
            if v.spec != spec:
                raise DimensionMismatchError(f"value in {v.spec.tag()} for a cochain in {spec.tag()}")
            if not v.is_zero():
                cleaned[args] = v
        self._values = cleaned

    @classmethod
    def from_function(
        cls, algebra: FieldAlgebra, spec: ModuleSpec, u: int, fn: Callable[..., Element]
    ) -> "Cochain":
        """Restrict a cochain given on arbitrary fields to the basis of ``algebra``."""
        values = {
            args: fn(*(algebra.fields[i] for i in args)) for args in combinations(range(algebra.dim), u)
        }
        return cls(spec, u, values)

    @classmethod
    def from_monomials(cls, spec: ModuleSpec, u: int, coords: Mapping[CochainKey, Scalar]) -> "Cochain":
        grouped: Dict[Args, Dict[MonomialKey, Scalar]] = {}
        for (args, key), c in coords.items():
            if c:
                grouped.setdefault(args, {})[key] = c
        etype = element_type(spec)
        return cls(spec, u, {args: etype.from_monomials(spec, mons) for args, mons in grouped.items()})

    @property
    def values(self) -> Mapping[Args, Element]:
        return self._values

    def zero_value(self) -> Element:
        return element_type(self.spec)(self.spec)

    def value(self, args: Sequence[int]) -> Element:
        sign, key = sort_with_sign(args)
        if len(args) != self.u:
            raise DimensionMismatchError(f"{len(args)} arguments for a {self.u}-cochain")
        v = self._values.get(key) if sign else None
        if v is None:
            return self.zero_value()
        return v if sign > 0 else -v

    def monomials(self) -> Coordinates:
        out: Coordinates = {}
        for args, v in self._values.items():
            for key, c in v.monomials().items():
                out[(args, key)] = Fraction(c)
        return out

    def is_zero(self) -> bool:
        return not self._values

    def _check(self, other: "Cochain") -> None:
        if (self.spec, self.u) != (other.spec, other.u):
            raise DimensionMismatchError(
                f"cannot combine a {self.u}-cochain in {self.spec.tag()} with a {other.u}-cochain in {other.spec.tag()}"
            )

    def __add__(self, other: "Cochain") -> "Cochain":
        self._check(other)
        out = dict(self._values)
        for args, v in other._values.items():
            out[args] = out[args] + v if args in out else v
        return Cochain(self.spec, self.u, out)

    def __neg__(self) -> "Cochain":
        return Cochain(self.spec, self.u, {a: -v for a, v in self._values.items()})

    def __sub__(self, other: "Cochain") -> "Cochain":
        return self + (-other)

    def scale(self, c: Scalar) -> "Cochain":
        return Cochain(self.spec, self.u, {a: v.scale(c) for a, v in self._values.items()})

    def map_values(self, fn: Callable[[Element], Element], spec: ModuleSpec) -> "Cochain":
        """Apply a linear map between modules valuewise, e.g. a symbol lift."""
        return Cochain(spec, self.u, {a: fn(v) for a, v in self._values.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Cochain):
            return NotImplemented
        return (self.spec, self.u, self._values) == (other.spec, other.u, other._values)

    def __repr__(self) -> str:
        return f"Cochain(u={self.u}, {self.spec.tag()}, {len(self._values)} nonzero values)"

    def weight_split(self, algebra: FieldAlgebra, module: CoefficientModule) -> Dict[int, Coordinates]:
        """Monomial coordinates grouped by L_E-weight."""
        weights = _require_weights(algebra)
        out: Dict[int, Coordinates] = {}
        for (args, key), c in self.monomials().items():
            w = module.closed_form_weight(key) - sum(weights[i] for i in args)
            out.setdefault(w, {})[(args, key)] = c
        return out


def _require_weights(algebra: FieldAlgebra) -> List[int]:
    if algebra.weights is None:
        raise WeightError(f"{algebra.name} carries no grading")
    return algebra.weights


# -- the differential -----------------------------------------------------------

def _accumulate(out: Coordinates, key: CochainKey, value: Fraction) -> None:
    total = out.get(key, Fraction(0)) + value
    if total:
        out[key] = total
    else:
        out.pop(key, None)


def _basis_differential(
    args: Args, key: MonomialKey, algebra: FieldAlgebra, module: CoefficientModule
) -> Coordinates:
    """∂ of the basis cochain (args, key), as coordinates of a (u+1)-cochain."""
    out: Coordinates = {}
    present = set(args)
    # Σ_i (-1)^i L_{X_i} c(…X̂_i…)
    for a in range(algebra.dim):
        if a in present:
            continue
        tau = tuple(sorted(args + (a,)))
        sign = -1 if tau.index(a) % 2 else 1
        for image_key, v in module.act_on_monomial(algebra.fields[a], key).items():
            _accumulate(out, (tau, image_key), sign * Fraction(v))
    # Σ_{i<j} (-1)^{i+j} c([X_i, X_j], …); c(b_c, rest) picks the sign of moving c into place
    for pos, c in enumerate(args):
        rest = args[:pos] + args[pos + 1:]
        rest_set = set(rest)
        base = -1 if pos % 2 else 1
        for a, b, s in algebra.bracket_preimages(c):
            if a in rest_set or b in rest_set:
                continue
            tau = tuple(sorted(rest + (a, b)))
            i, j = tau.index(a), tau.index(b)
            sign = base if (i + j) % 2 == 0 else -base
            _accumulate(out, (tau, key), sign * s)
    return out


def _resolve(spec: ModuleSpec, algebra: Optional[FieldAlgebra], module: Optional[CoefficientModule]):  # type: ignore[no-untyped-def]
    if algebra is None:
        algebra = sl_algebra(spec.m)
    if module is None:
        module = create_module(spec, enable_cache=True, cache=DictActionCache())
    elif module.spec != spec:
        raise DimensionMismatchError(f"module {module.spec.tag()} does not match {spec.tag()}")
    return algebra, module


def ce_differential(
    c: Cochain, algebra: Optional[FieldAlgebra] = None, module: Optional[CoefficientModule] = None
) -> Cochain:
    """
    Chevalley-Eilenberg coboundary of ``c`` on the basis of ``algebra``.

    (∂c)(X_0, …, X_u) = Σ_i (-1)^i L_{X_i} c(…X̂_i…)
                        + Σ_{i<j} (-1)^{i+j} c([X_i, X_j], …X̂_i…X̂_j…)

    Args:
        c: Cochain to differentiate
        algebra: Field family; sl(m+1) when omitted
        module: Module giving the action; built from ``c.spec`` when omitted

    Returns:
        The (u+1)-cochain ∂c
    """
    algebra, module = _resolve(c.spec, algebra, module)
    out: Coordinates = {}
    for (args, key), coeff in c.monomials().items():
        for target, v in _basis_differential(args, key, algebra, module).items():
            _accumulate(out, target, coeff * v)
    return Cochain.from_monomials(c.spec, c.u + 1, out)


def differential_at(
    cochain_fn: Callable[..., Element], fields: Sequence[VectorField], module: CoefficientModule
) -> Element:
    """
    Evaluate (∂c)(X_0, …, X_u) for a cochain given as a function on arbitrary fields.

    ``cochain_fn`` must be alternating and take u fields.
    """
    fields = list(fields)
    total = module.zero()
    for i, X in enumerate(fields):
        term = module.act(X, cochain_fn(*(fields[:i] + fields[i + 1:])))
        total = total + term if i % 2 == 0 else total - term
    for i, j in combinations(range(len(fields)), 2):
        rest = [f for k, f in enumerate(fields) if k not in (i, j)]
        term = cochain_fn(lie_bracket(fields[i], fields[j]), *rest)
        total = total + term if (i + j) % 2 == 0 else total - term
    return total


# -- weights and blocks ----------------------------------------------------------

def module_weight(v: ModuleElement, module: Optional[CoefficientModule] = None) -> int:
    """
    Eigenvalue of L_E on a monomial module element, computed from the action itself.

    Raises:
        WeightError: If ``v`` is not a single monomial
        InternalConsistencyError: If L_E v is not a multiple of v
    """
    mons = v.monomials()
    if len(mons) != 1:
        raise WeightError(f"expected a monomial, got {len(mons)} terms")
    if module is None:
        module = create_module(v.spec)
    (key, c), = mons.items()
    image = module.act(euler_field(v.spec.m), v).monomials()  # type: ignore[arg-type]
    if not image:
        return 0
    if set(image) != {key}:
        raise InternalConsistencyError(f"L_E does not act diagonally on {key}")
    ratio = Fraction(image[key]) / Fraction(c)
    if ratio.denominator != 1:
        raise InternalConsistencyError(f"non-integral weight {ratio}")
    return int(ratio)


@dataclass
class WeightBlock:
    """Basis of the u-cochains of a fixed L_E-weight."""

    spec: ModuleSpec
    u: int
    weight: int
    basis: List[CochainKey]

    def __post_init__(self) -> None:
        self.index: Dict[CochainKey, int] = {key: i for i, key in enumerate(self.basis)}

    def __len__(self) -> int:
        return len(self.basis)


def weight_basis(
    spec: ModuleSpec,
    u: int,
    weight: int = 0,
    algebra: Optional[FieldAlgebra] = None,
    module: Optional[CoefficientModule] = None,
    reverse: bool = False,
) -> WeightBlock:
    """
    Enumerate every basis cochain (σ, key) of degree u and L_E-weight ``weight``.

    Order is lexicographic in (σ, β, γ, I, J); ``reverse`` flips it.
    """
    algebra, module = _resolve(spec, algebra, module)
    weights = _require_weights(algebra)
    per_weight: Dict[int, List[MonomialKey]] = {}
    out: List[CochainKey] = []
    for args in combinations(range(algebra.dim), u):
        target = weight + sum(weights[i] for i in args)
        if target not in per_weight:
            per_weight[target] = module.monomials_of_weight(target)
        out.extend((args, key) for key in per_weight[target])
    if reverse:
        out.reverse()
    logger.debug("weight block %s u=%d w=%d: %d basis cochains", spec.tag(), u, weight, len(out))
    return WeightBlock(spec, u, weight, out)


def weight_zero_basis(spec: ModuleSpec, u: int, algebra: Optional[FieldAlgebra] = None) -> WeightBlock:
    return weight_basis(spec, u, 0, algebra)


def _matrix_between(
    source: Sequence[CochainKey],
    target_index: Mapping[CochainKey, int],
    algebra: FieldAlgebra,
    module: CoefficientModule,
    strict: bool = True,
) -> SparseMatrix:
    columns: List[Dict[int, Fraction]] = []
    for args, key in source:
        column: Dict[int, Fraction] = {}
        for target, v in _basis_differential(args, key, algebra, module).items():
            row = target_index.get(target)
            if row is None:
                if strict:
                    raise InternalConsistencyError(f"∂ leaves the target block at {target}")
                continue
            column[row] = v
        columns.append(column)
    return SparseMatrix.from_columns(len(target_index), columns)


def differential_matrix(
    spec: ModuleSpec,
    u: int,
    weight: int = 0,
    algebra: Optional[FieldAlgebra] = None,
    module: Optional[CoefficientModule] = None,
    reverse: bool = False,
    dump_dir: Optional[Union[str, Path]] = None,
) -> SparseMatrix:
    """
    Matrix of ∂ from the weight block of degree u to the one of degree u+1.

    Args:
        spec: Coefficient module
        u: Source degree
        weight: L_E-weight of both blocks
        algebra: Field family; sl(m+1) when omitted
        module: Module instance to reuse (and its action cache)
        reverse: Enumerate both blocks in reverse order
        dump_dir: If given, write the matrix as ``{spec.tag()}_{u}.mtx`` there

    Returns:
        SparseMatrix with one column per source basis cochain
    """
    algebra, module = _resolve(spec, algebra, module)
    source = weight_basis(spec, u, weight, algebra, module, reverse)
    target = weight_basis(spec, u + 1, weight, algebra, module, reverse)
    M = _matrix_between(source.basis, target.index, algebra, module)
    logger.debug("∂_%d on %s: %dx%d, nnz=%d", u, spec.tag(), M.rows, M.cols, M.nnz)
    if dump_dir is not None:
        write_matrix_dump(M, spec, u, dump_dir)
    return M


def write_matrix_dump(M: SparseMatrix, spec: ModuleSpec, u: int, directory: Union[str, Path]) -> Path:
    path = Path(directory) / f"{spec.tag()}_{u}.mtx"
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(M.to_mtx())
    logger.info("wrote %s", path)
    return path


# -- cohomology --------------------------------------------------------------------

def cohomology_dim(
    spec: ModuleSpec,
    u: int,
    algebra: Optional[FieldAlgebra] = None,
    threads: int = 1,
    reverse: bool = False,
    dump_dir: Optional[Union[str, Path]] = None,
) -> int:
    """
    dim H^u of the weight-zero subcomplex: dim ker ∂_u - rank ∂_{u-1}.

    The two ranks are independent and run in a thread pool when ``threads > 1``.
    """
    if u < 0:
        raise ValueError(f"cohomology degree must be nonnegative, got {u}")
    algebra, module = _resolve(spec, algebra, None)
    d_u = differential_matrix(spec, u, 0, algebra, module, reverse, dump_dir)
    matrices = [d_u]
    if u > 0:
        matrices.append(differential_matrix(spec, u - 1, 0, algebra, module, reverse, dump_dir))
    results = ranks(matrices, threads)
    prev = results[1] if u > 0 else 0
    dim = d_u.cols - results[0] - prev
    logger.info("H^%d(%s, %s) = %d", u, algebra.name, spec.tag(), dim)
    return dim


def truncated_cohomology_dim(
    spec: ModuleSpec, u: int, max_degree: int, algebra: Optional[FieldAlgebra] = None
) -> int:
    """
    Cohomology of the full polynomial complex cut at coefficient degree ``max_degree``.

    dim ker(∂_u on C^u_{≤d}) - dim(∂(C^{u-1}_{≤d}) ∩ C^u_{≤d}), no weight reduction.
    The family must raise coefficient degree by at most one.
    """
    algebra, module = _resolve(spec, algebra, None)

    def cochains(degree: int, bound: int) -> List[CochainKey]:
        keys = degree_monomials(spec, bound)
        return [(args, key) for args in combinations(range(algebra.dim), degree) for key in keys]

    def index(keys: Sequence[CochainKey]) -> Dict[CochainKey, int]:
        return {key: i for i, key in enumerate(keys)}

    source = cochains(u, max_degree)
    d_u = _matrix_between(source, index(cochains(u + 1, max_degree + 1)), algebra, module)
    kernel = d_u.cols - rank(d_u)
    if u == 0:
        return kernel
    rows = cochains(u, max_degree + 1)
    d_prev = _matrix_between(cochains(u - 1, max_degree), index(rows), algebra, module)
    top = {row: i for i, row in enumerate(r for r, (_, key) in enumerate(rows) if sum(key[0]) == max_degree + 1)}
    top_rows = SparseMatrix(
        len(top), d_prev.cols, {(top[r], c): v for (r, c), v in d_prev.entries.items() if r in top}
    )
    image = rank(d_prev) - rank(top_rows)
    return kernel - image


def _check_cocycle(c: Cochain, algebra: FieldAlgebra, module: CoefficientModule, label: str = "cochain") -> None:
    if not ce_differential(c, algebra, module).is_zero():
        raise NotACocycleError(f"{label} of degree {c.u} in {c.spec.tag()} is not a cocycle")


def is_coboundary(
    c: Cochain, algebra: Optional[FieldAlgebra] = None, module: Optional[CoefficientModule] = None
) -> Optional[Cochain]:
    """
    Find b with ∂b = c, weight component by weight component.

    Returns:
        A witness (u-1)-cochain, or None when c is not a coboundary

    Raises:
        NotACocycleError: If ∂c != 0
        ValueError: If c has degree 0
    """
    if c.u == 0:
        raise ValueError("degree-0 cochains have no primitives")
    algebra, module = _resolve(c.spec, algebra, module)
    _check_cocycle(c, algebra, module)
    witness: Coordinates = {}
    for w, coords in sorted(c.weight_split(algebra, module).items()):
        source = weight_basis(c.spec, c.u - 1, w, algebra, module)
        target = weight_basis(c.spec, c.u, w, algebra, module)
        M = _matrix_between(source.basis, target.index, algebra, module)
        rhs = [Fraction(0)] * len(target)
        for key, v in coords.items():
            rhs[target.index[key]] = v
        x = solve(M, rhs)
        if x is None:
            logger.debug("weight %d component of %r is not exact", w, c)
            return None
        for i, v in enumerate(x):
            if v:
                witness[source.basis[i]] = v
    return Cochain.from_monomials(c.spec, c.u - 1, witness)


@dataclass
class ClassDecomposition:
    """c = Σ coordinates[i] · generators[i] + ∂ witness."""

    coordinates: List[Fraction]
    witness: Optional[Cochain]


def class_decomposition(
    c: Cochain,
    generators: Sequence[Cochain],
    algebra: Optional[FieldAlgebra] = None,
    module: Optional[CoefficientModule] = None,
) -> Optional[ClassDecomposition]:
    """
    Express the class of ``c`` in terms of generator cocycles.

    Solves one joint system over every weight that occurs, so the
    coordinates are shared across weight components.

    Raises:
        NotACocycleError: If ``c`` or a generator is not a cocycle
    """
    algebra, module = _resolve(c.spec, algebra, module)
    _check_cocycle(c, algebra, module)
    for i, g in enumerate(generators):
        if (g.spec, g.u) != (c.spec, c.u):
            raise DimensionMismatchError(f"generator {i} lives in another cochain space")
        _check_cocycle(g, algebra, module, f"generator {i}")

    splits = [c.weight_split(algebra, module)] + [g.weight_split(algebra, module) for g in generators]
    weights = sorted({w for split in splits for w in split})
    row_index: Dict[CochainKey, int] = {}
    blocks: List[Tuple[WeightBlock, Dict[CochainKey, int]]] = []
    for w in weights:
        target = weight_basis(c.spec, c.u, w, algebra, module)
        for key in target.basis:
            row_index[key] = len(row_index)
        if c.u > 0:
            blocks.append((weight_basis(c.spec, c.u - 1, w, algebra, module), target.index))

    columns: List[Dict[int, Fraction]] = []
    for g in generators:
        columns.append({row_index[key]: v for key, v in g.monomials().items()})
    witness_keys: List[CochainKey] = []
    for source, target_index in blocks:
        M = _matrix_between(source.basis, target_index, algebra, module)
        offset = row_index[next(iter(target_index))] if target_index else 0
        for col in M.column_vectors():
            columns.append({offset + r: v for r, v in col.items()})
        witness_keys.extend(source.basis)

    rhs = [Fraction(0)] * len(row_index)
    for key, v in c.monomials().items():
        rhs[row_index[key]] = v
    x = solve(SparseMatrix.from_columns(len(row_index), columns), rhs)
    if x is None:
        return None
    n = len(generators)
    witness = None
    if c.u > 0:
        coords = {witness_keys[i]: v for i, v in enumerate(x[n:]) if v}
        witness = Cochain.from_monomials(c.spec, c.u - 1, coords)
    return ClassDecomposition(list(x[:n]), witness)


def class_coordinates(
    c: Cochain,
    generators: Sequence[Cochain],
    algebra: Optional[FieldAlgebra] = None,
    module: Optional[CoefficientModule] = None,
) -> Optional[List[Fraction]]:
    """Coordinates λ with c = Σ λ_i g_i + ∂b, or None if c is outside their span mod coboundaries."""
    decomposition = class_decomposition(c, generators, algebra, module)
    return None if decomposition is None else decomposition.coordinates
