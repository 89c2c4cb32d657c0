"""
Protocol definitions for coefficient-module elements and action caches.

These protocols describe what the cochain machinery needs from a module
element and from a cache of the Vect action, independently of the concrete
operator or symbol classes.
"""

from typing import Dict, Hashable, Optional, Protocol, Tuple, TypeVar

from .types import ModuleSpec

E = TypeVar("E", bound="ModuleElement")

MonomialCoordinates = Dict[Tuple, object]


class ModuleElement(Protocol):
    """
    Protocol for elements of a coefficient module.

    DiffOp and SymbolTensor conform to it; a cochain stores one element per
    argument tuple.
    """

    spec: ModuleSpec

    def __add__(self: E, other: E) -> E:
        ...

    def __sub__(self: E, other: E) -> E:
        ...

    def scale(self: E, c: object) -> E:
        """Multiply by a rational scalar."""
        ...

    def is_zero(self) -> bool:
        ...

    def monomials(self) -> MonomialCoordinates:
        """
        Coordinates in the module's monomial basis.

        Returns:
            Mapping from monomial key to its nonzero rational coefficient
        """
        ...


class ActionCache(Protocol):
    """
    Protocol for caches of the module action on monomials.

    Keys are ``(vector field, monomial key)`` pairs; values are monomial
    coordinates of the acted-on element.
    """

    def get(self, key: Hashable) -> Optional[MonomialCoordinates]:
        """Get cached coordinates by key."""
        ...

    def set(self, key: Hashable, value: MonomialCoordinates) -> None:
        """Store coordinates."""
        ...

    def clear(self) -> None:
        """Drop all cached values."""
        ...
