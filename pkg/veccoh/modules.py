"""
Coefficient modules of the Chevalley-Eilenberg complex.

A coefficient module bundles a :class:`ModuleSpec` with the Vect action on its
elements and the enumeration of its monomial basis by L_E-weight. Operator
modules D^k and symbol modules S^k share this interface, and a cached
wrapper memoises the action on monomials, which dominates the cost of
building differential matrices.
"""

import logging
import threading
from abc import ABC, abstractmethod
from typing import Dict, Hashable, List, Mapping, Optional, Union

from .diffops import (
    DiffOp,
    MonomialKey,
    SymbolTensor,
    lie_derivative_op,
    monomial_weight,
    symbol_lie_derivative,
    weight_monomials,
)
from .polyfields import Scalar, VectorField
from .protocols import ActionCache, MonomialCoordinates
from .types import ModuleSpec

logger = logging.getLogger(__name__)

Element = Union[DiffOp, SymbolTensor]


class CoefficientModule(ABC):
    """
    Abstract base class for Vect(ℝᵐ)-modules used as cochain coefficients.
    """

    spec: ModuleSpec

    @abstractmethod
    def zero(self) -> Element:
        """The zero element."""
        pass

    @abstractmethod
    def act(self, X: VectorField, v: Element) -> Element:
        """
        Lie derivative of a module element along a vector field.

        Args:
            X: Polynomial vector field on ℝᵐ
            v: Element of this module

        Returns:
            L_X v, again an element of this module
        """
        pass

    @abstractmethod
    def monomial_element(self, key: MonomialKey, coeff: Scalar = 1) -> Element:
        """The element ``coeff`` times the monomial ``key``."""
        pass

    @abstractmethod
    def from_monomials(self, coordinates: Mapping[MonomialKey, Scalar]) -> Element:
        """Assemble an element from monomial coordinates."""
        pass

    def act_on_monomial(self, X: VectorField, key: MonomialKey) -> MonomialCoordinates:
        """Monomial coordinates of L_X applied to the monomial ``key``."""
        return self.act(X, self.monomial_element(key)).monomials()

    def monomials_of_weight(self, weight: int) -> List[MonomialKey]:
        """Sorted monomial keys with L_E-eigenvalue ``weight``."""
        return weight_monomials(self.spec, weight)

    def closed_form_weight(self, key: MonomialKey) -> int:
        return monomial_weight(self.spec, key)


class BaseCoefficientModule(CoefficientModule):
    """Shared constructor and element assembly for operator and symbol modules."""

    element_type: type = DiffOp

    def __init__(self, spec: ModuleSpec):
        """
        Initialize a module for ``spec``.

        Raises:
            ValueError: If the spec level does not match the element type
        """
        if spec.level != self.element_type.level:
            raise ValueError(f"{type(self).__name__} needs a {self.element_type.level}-level spec")
        self.spec = spec

    def zero(self) -> Element:
        return self.element_type(self.spec)

    def monomial_element(self, key: MonomialKey, coeff: Scalar = 1) -> Element:
        return self.element_type.monomial(self.spec, key, coeff)

    def from_monomials(self, coordinates: Mapping[MonomialKey, Scalar]) -> Element:
        return self.element_type.from_monomials(self.spec, coordinates)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.spec.tag()})"


class OperatorModule(BaseCoefficientModule):
    """D^k(source, target) with L_X D = L_X ∘ D - D ∘ L_X."""

    element_type = DiffOp

    def act(self, X: VectorField, v: Element) -> Element:
        return lie_derivative_op(X, v)  # type: ignore[arg-type]


class SymbolModule(BaseCoefficientModule):
    """S^k(source, target) with the induced action on principal symbols."""

    element_type = SymbolTensor

    def act(self, X: VectorField, v: Element) -> Element:
        return symbol_lie_derivative(X, v)  # type: ignore[arg-type]


class DictActionCache:
    """In-memory ActionCache; safe to share between threads."""

    def __init__(self) -> None:
        self._data: Dict[Hashable, MonomialCoordinates] = {}
        self._lock = threading.Lock()
        self.hits = 0
        self.misses = 0

    def get(self, key: Hashable) -> Optional[MonomialCoordinates]:
        with self._lock:
            value = self._data.get(key)
            if value is None:
                self.misses += 1
            else:
                self.hits += 1
            return value

    def set(self, key: Hashable, value: MonomialCoordinates) -> None:
        with self._lock:
            self._data[key] = value

    def clear(self) -> None:
        with self._lock:
            self._data.clear()
            self.hits = self.misses = 0

    def __len__(self) -> int:
        return len(self._data)


class CachedCoefficientModule(CoefficientModule):
    """
    Coefficient module with a cache in front of the action on monomials.

    Wraps another module and answers :meth:`act_on_monomial` from an
    :class:`ActionCache` when possible.
    """

    def __init__(self, inner: CoefficientModule, cache: Optional[ActionCache] = None):
        """
        Initialize cached module.

        Args:
            inner: Module doing the actual computation
            cache: Optional ActionCache instance
        """
        self.inner = inner
        self.spec = inner.spec
        self.cache = cache

    def zero(self) -> Element:
        return self.inner.zero()

    def act(self, X: VectorField, v: Element) -> Element:
        return self.inner.act(X, v)

    def monomial_element(self, key: MonomialKey, coeff: Scalar = 1) -> Element:
        return self.inner.monomial_element(key, coeff)

    def from_monomials(self, coordinates: Mapping[MonomialKey, Scalar]) -> Element:
        return self.inner.from_monomials(coordinates)

    def act_on_monomial(self, X: VectorField, key: MonomialKey) -> MonomialCoordinates:
        if self.cache is None:
            return self.inner.act_on_monomial(X, key)
        cache_key = (self.spec, X, key)
        cached = self.cache.get(cache_key)
        if cached is not None:
            return cached
        value = self.inner.act_on_monomial(X, key)
        self.cache.set(cache_key, value)
        return value

    def __repr__(self) -> str:
        return f"CachedCoefficientModule({self.inner!r})"


def create_module(
    spec: ModuleSpec,
    enable_cache: bool = False,
    cache: Optional[ActionCache] = None,
) -> CoefficientModule:
    """
    Factory function to create the coefficient module of a spec.

    Args:
        spec: Module specification; its level selects operators or symbols
        enable_cache: Whether to memoise the action on monomials
        cache: Optional ActionCache (required if enable_cache is True)

    Returns:
        CoefficientModule instance

    Raises:
        ValueError: If enable_cache is True but cache is None
    """
    module: CoefficientModule
    module = OperatorModule(spec) if spec.level == "operator" else SymbolModule(spec)
    if enable_cache:
        if cache is None:
            raise ValueError("cache must be provided when enable_cache is True")
        logger.debug("caching the action of %s", spec.tag())
        return CachedCoefficientModule(module, cache=cache)
    return module
