"""
veccoh - exact cohomology of sl(m+1) acting on differential operators.

Polynomial vector fields, multivectors and forms over the rationals, operators
between them in normal form, and the Chevalley-Eilenberg complex of the
projective algebra sl(m+1) with coefficients in those operators.
"""

from .types import (
    ModuleSpec,
    SpecError,
    CheckResult,
    RunReport,
    CohomologyCell,
    RuntimeConfig,
)

from .protocols import ModuleElement, ActionCache

from .exactlinalg import SparseMatrix, DimensionMismatchError, rank, nullspace_dim, solve
from .polyfields import Poly, VectorField, lie_bracket, jacobian, trace_div, dtr
from .tensorfields import (
    PolyMultiVector,
    PolyForm,
    Covector,
    DegreeError,
    interior_product,
    exterior_derivative,
    wedge,
)
from .diffops import (
    DiffOp,
    SymbolTensor,
    InternalConsistencyError,
    apply,
    lie_derivative_op,
    principal_symbol,
    symbol_lie_derivative,
    lift_symbol,
)
from .modules import (
    CoefficientModule,
    OperatorModule,
    SymbolModule,
    CachedCoefficientModule,
    DictActionCache,
    create_module,
)
from .slstructure import SlElement, basis, embed, abstract_bracket, verify_embedding
from .cecomplex import (
    Cochain,
    FieldAlgebra,
    NotACocycleError,
    WeightError,
    sl_algebra,
    ce_differential,
    cohomology_dim,
    is_coboundary,
    class_coordinates,
)
from .cocycles import (
    FamilyError,
    NamedCocycleFamily,
    chi,
    invariant_I,
    invariant_J,
    named_cocycle,
    theta_constant,
)

__all__ = [
    "ModuleSpec",
    "SpecError",
    "CheckResult",
    "RunReport",
    "CohomologyCell",
    "RuntimeConfig",
    "ModuleElement",
    "ActionCache",
    "SparseMatrix",
    "DimensionMismatchError",
    "rank",
    "nullspace_dim",
    "solve",
    "Poly",
    "VectorField",
    "lie_bracket",
    "jacobian",
    "trace_div",
    "dtr",
    "PolyMultiVector",
    "PolyForm",
    "Covector",
    "DegreeError",
    "interior_product",
    "exterior_derivative",
    "wedge",
    "DiffOp",
    "SymbolTensor",
    "InternalConsistencyError",
    "apply",
    "lie_derivative_op",
    "principal_symbol",
    "symbol_lie_derivative",
    "lift_symbol",
    "CoefficientModule",
    "OperatorModule",
    "SymbolModule",
    "CachedCoefficientModule",
    "DictActionCache",
    "create_module",
    "SlElement",
    "basis",
    "embed",
    "abstract_bracket",
    "verify_embedding",
    "Cochain",
    "FieldAlgebra",
    "NotACocycleError",
    "WeightError",
    "sl_algebra",
    "ce_differential",
    "cohomology_dim",
    "is_coboundary",
    "class_coordinates",
    "FamilyError",
    "NamedCocycleFamily",
    "chi",
    "invariant_I",
    "invariant_J",
    "named_cocycle",
    "theta_constant",
]

__version__ = "0.1.0"
