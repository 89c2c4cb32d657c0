"""
Expected dimensions and constants, as data.

Cohomology entries are keyed by (species, relation, k bucket, u). The relation
compares the degrees in the direction where cohomology can live: p - q for
multivectors and functions, q - p for forms. Cells that no theorem covers
map to ``None`` and are reported without a verdict.
"""

from fractions import Fraction
from typing import Dict, Optional, Tuple

from .types import ModuleSpec

Expectation = Tuple[Optional[int], Optional[str]]

OPPOSITE, DIAGONAL, SHIFT1, SHIFT2, FAR = "opposite", "diagonal", "shift1", "shift2", "far"

MV_VANISHING = "multivectors, p < q: cohomology vanishes for every k"
MV_DIAGONAL = "multivectors, p = q: cohomology is the gl(m)-invariant exterior algebra (1, trace)"
MV_ORDER_ZERO = "multivectors, p > q, k = 0: invariant exterior algebra shifted by p - q"
MV_HIGHER = "multivectors, p > q, k >= 1: cohomology vanishes"
FORM_VANISHING = "forms, p > q: cohomology vanishes for every k"
FORM_DIAGONAL = "forms, p = q: cohomology is the gl(m)-invariant exterior algebra (1, trace)"
FORM_H1 = "forms, first cohomology: R if q = p or q = p + 2, R^2 if q = p + 1, k large enough"
FORM_ORDER_ZERO = "forms, p < q, k = 0: invariant exterior algebra shifted by q - p"
THETA_MV = "connecting homomorphism on multivectors: (-1)^a (p - q)(m + 1)"
THETA_FORM = "connecting homomorphism on forms vanishes"

_K0, _K1 = "0", ">=1"

_TABLE: Dict[Tuple[str, str, str, int], Expectation] = {}


def _fill(species: str, relation: str, buckets: Tuple[str, ...], u: int, value: Optional[int], citation: Optional[str]) -> None:
    for bucket in buckets:
        _TABLE[(species, relation, bucket, u)] = (value, citation if value is not None else None)


_BOTH = (_K0, _K1)
for _u in (0, 1):
    _fill("multivector", OPPOSITE, _BOTH, _u, 0, MV_VANISHING)
    _fill("multivector", DIAGONAL, _BOTH, _u, 1, MV_DIAGONAL)
    for _rel in (SHIFT1, SHIFT2, FAR):
        _fill("multivector", _rel, (_K1,), _u, 0, MV_HIGHER)
    _fill("form", OPPOSITE, _BOTH, _u, 0, FORM_VANISHING)
    _fill("form", DIAGONAL, _BOTH, _u, 1, FORM_DIAGONAL)
    # H^0 of D^k(Ω_p, Ω_q) with p < q is left open
    for _rel in (SHIFT1, SHIFT2, FAR):
        _fill("form", _rel, _BOTH, 0, None, None)

_fill("multivector", SHIFT1, (_K0,), 0, 0, MV_ORDER_ZERO)
_fill("multivector", SHIFT1, (_K0,), 1, 1, MV_ORDER_ZERO)
for _rel in (SHIFT2, FAR):
    _fill("multivector", _rel, (_K0,), 0, 0, MV_ORDER_ZERO)
    _fill("multivector", _rel, (_K0,), 1, 0, MV_ORDER_ZERO)

_fill("form", SHIFT1, (_K0,), 1, 1, FORM_ORDER_ZERO)
_fill("form", SHIFT1, (_K1,), 1, 2, FORM_H1)
_fill("form", SHIFT2, (_K0,), 1, 0, FORM_ORDER_ZERO)
_fill("form", SHIFT2, (_K1,), 1, 1, FORM_H1)
_fill("form", FAR, _BOTH, 1, 0, FORM_H1)


def relation(species: str, p: int, q: int) -> str:
    delta = q - p if species == "form" else p - q
    if delta < 0:
        return OPPOSITE
    return (DIAGONAL, SHIFT1, SHIFT2)[delta] if delta <= 2 else FAR


def k_bucket(k: int) -> str:
    return _K0 if k == 0 else _K1


def expected_dim(spec: ModuleSpec, u: int) -> Expectation:
    """
    Expected dim H^u(sl(m+1), spec) with its citation, or (None, None).

    Symbol-level specs and degrees u >= 2 have no table entry.
    """
    if spec.level != "operator":
        return None, None
    species = "multivector" if spec.species == "function" else spec.species
    key = (species, relation(species, spec.p, spec.q), k_bucket(spec.k), u)
    return _TABLE.get(key, (None, None))


def expected_theta(species: str, m: int, p: int, q: int, a: int) -> Tuple[Fraction, str]:
    if species == "form":
        return Fraction(0), THETA_FORM
    return Fraction((-1) ** a * (p - q) * (m + 1)), THETA_MV
