"""
Core type definitions shared across the workbench.

Report records are TypedDict definitions so they serialise to JSON as-is.
``ModuleSpec`` names a coefficient module and is hashable so it can key caches.
"""

from dataclasses import dataclass
from typing import TypedDict, Literal, Optional, List, Any, Dict

Species = Literal["multivector", "form", "function"]
Level = Literal["operator", "symbol"]

SPECIES: tuple = ("multivector", "form", "function")
LEVELS: tuple = ("operator", "symbol")


class SpecError(ValueError):
    """Raised when a module specification or a runtime setting is invalid."""


@dataclass(frozen=True)
class ModuleSpec:
    """
    Coefficient module D^k(source, target) or S^k(source, target) over ℝᵐ.

    Attributes:
        m: Dimension of the base space (at least 2)
        species: "multivector" (Λ^p), "form" (Ω_p) or "function" (C^∞, p = q = 0)
        p: Source degree
        q: Target degree
        k: Order bound (operator level) or exact homogeneity in η (symbol level)
        level: "operator" for D^k, "symbol" for S^k
    """

    m: int
    species: Species
    p: int
    q: int
    k: int
    level: Level = "operator"

    def __post_init__(self) -> None:
        if self.m < 2:
            raise SpecError(f"m must be at least 2, got {self.m}")
        if self.species not in SPECIES:
            raise SpecError(f"unknown species {self.species!r}")
        if self.level not in LEVELS:
            raise SpecError(f"unknown level {self.level!r}")
        if not (0 <= self.p <= self.m and 0 <= self.q <= self.m):
            raise SpecError(
                f"degrees must satisfy 0 <= p, q <= m, got p={self.p}, q={self.q}, m={self.m}"
            )
        if self.k < 0:
            raise SpecError(f"order bound must be nonnegative, got {self.k}")
        if self.species == "function" and (self.p, self.q) != (0, 0):
            raise SpecError("function species requires p = q = 0")

    @property
    def hom_sign(self) -> int:
        """+1 when the module weight grows with p - q, -1 for forms."""
        return -1 if self.species == "form" else 1

    def with_level(self, level: Level, k: Optional[int] = None) -> "ModuleSpec":
        """Return the same module pair at another level (and optionally order)."""
        return ModuleSpec(self.m, self.species, self.p, self.q, self.k if k is None else k, level)

    def tag(self) -> str:
        """Stable file-name tag, e.g. ``multivector_m2_p1_q0_k1_operator``."""
        return f"{self.species}_m{self.m}_p{self.p}_q{self.q}_k{self.k}_{self.level}"


class CheckResult(TypedDict):
    """One scored check of a run report."""

    name: str
    computed: Any
    expected: Any  # None when no theorem covers the case
    citation: Optional[str]
    match: Optional[bool]  # exact equality; None when expected is None


class RunReport(TypedDict):
    """Result of one CLI command."""

    command: str
    params: Dict[str, Any]
    checks: List[CheckResult]
    seed: Optional[int]
    elapsed_ms: int


class CohomologyCell(TypedDict):
    """Parameters of one cell of the dimension tables."""

    species: Species
    m: int
    p: int
    q: int
    k: int
    u: int


class RuntimeConfig(TypedDict):
    """Settings read from the environment."""

    threads: int
    dump_dir: Optional[str]
