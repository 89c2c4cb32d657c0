"""
Command-line front end.

    veccoh structure --m 2
    veccoh cocycle --family c2 --m 2 --p 0 --q 2 --trials 50
    veccoh cohomology --species mv --m 2 --p 1 --q 1 --k 1 --u 1
    veccoh theta --species mv --m 2 --p 1 --q 0 --a 0
    veccoh report --m 2 --max-k 2 --json

Exit codes: 0 when every check matches, 1 on a mismatch, 2 on a usage error.
"""

import argparse
import logging
import random
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from math import comb
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from . import __version__
from .cecomplex import cohomology_dim, is_coboundary
from .cocycles import (
    FAMILY_RULES,
    FAMILY_TAGS,
    FamilyError,
    NamedCocycleFamily,
    iota_witness,
    named_cochain,
    named_cocycle,
    theta_details,
    verify_cocycle,
)
from .config import load_runtime_config
from .diffops import InternalConsistencyError
from .expected import expected_dim, expected_theta
from .modules import create_module
from .report import exit_code, make_check, make_report, render_json, render_markdown
from .slstructure import verify_embedding, verify_grading, verify_jacobi
from .testing import random_vector_field
from .types import CheckResult, CohomologyCell, ModuleSpec, RunReport, SpecError
from .validation import PYDANTIC_AVAILABLE, validate_module_spec, validate_run_report

logger = logging.getLogger(__name__)

SPECIES_ALIASES = {"mv": "multivector", "multivector": "multivector", "form": "form", "function": "function"}
FAMILY_ALIASES = {"iota": "iota_dc"}
SOFT_MAX_M = 3
WITNESS_TRIALS = 20


def _check_m(m: int) -> None:
    if m < 2:
        raise SpecError(f"m must be at least 2, got {m}")
    if m > SOFT_MAX_M:
        logger.warning("m=%d is above %d; expect long runtimes", m, SOFT_MAX_M)


def build_module_spec(m: int, species: str, p: int, q: int, k: int, level: str = "operator") -> ModuleSpec:
    """
    ModuleSpec from command-line values, validated by pydantic when it is installed.

    Raises:
        SpecError: If the values do not name a module
    """
    fields = {"m": m, "species": SPECIES_ALIASES.get(species, species), "p": p, "q": q, "k": k, "level": level}
    if not PYDANTIC_AVAILABLE:
        return ModuleSpec(**fields)  # type: ignore[arg-type]
    try:
        return validate_module_spec(fields)
    except ValueError as exc:
        raise SpecError(str(exc)) from exc


# -- commands ------------------------------------------------------------------------

def cmd_structure(m: int) -> RunReport:
    """Embedding homomorphism, grading and Jacobi checks for sl(m+1)."""
    _check_m(m)
    dim = m * m + 2 * m
    embedding = verify_embedding(m)
    grading = verify_grading(m)
    jacobi = verify_jacobi(m)
    checks = [
        make_check("embedding is a homomorphism", embedding.passed, True, "sl(m+1) realised by polynomial fields"),
        make_check("basis pairs checked", embedding.checked, comb(dim, 2), "all unordered basis pairs"),
        make_check("grading by the Euler field", grading.passed, True, "degrees -1, 0, 1"),
        make_check("jacobi identity", jacobi.passed, True, "all basis triples"),
    ]
    for name, rep in (("embedding", embedding), ("grading", grading), ("jacobi", jacobi)):
        if rep.counterexample is not None:
            logger.error("%s fails on basis indices %s", name, rep.counterexample)
    return make_report("structure", {"m": m}, checks)


def family_spec(tag: str, m: int, p: Optional[int], q: Optional[int], k: int) -> NamedCocycleFamily:
    """Fill in the degrees a family forces and build it."""
    tag = FAMILY_ALIASES.get(tag, tag)
    if tag not in FAMILY_RULES:
        raise FamilyError(f"unknown family {tag!r}; expected one of {', '.join(FAMILY_TAGS)} or iota")
    species, mv_offset, form_offset = FAMILY_RULES[tag]
    offset = form_offset if species == "form" else mv_offset
    if species == "form":
        if p is None:
            p = 0 if q is None else q - offset
        if q is None:
            q = p + offset
    else:
        if q is None:
            q = 0 if p is None else p - offset
        if p is None:
            p = q + offset
    return NamedCocycleFamily(tag, build_module_spec(m, species, p, q, k))


def cmd_cocycle(
    family: str,
    m: int,
    p: Optional[int] = None,
    q: Optional[int] = None,
    k: int = 1,
    trials: int = 50,
    max_deg: int = 3,
    seed: int = 0,
) -> RunReport:
    """Cocycle identity on sl basis pairs and on seeded random pairs."""
    _check_m(m)
    fam = family_spec(family, m, p, q, k)
    rng = random.Random(seed)
    pairs = [
        (random_vector_field(m, max_deg, rng), random_vector_field(m, max_deg, rng)) for _ in range(trials)
    ]
    errors = verify_cocycle(fam, pairs)
    for error in errors:
        logger.error("%s", error)
    basis_failed = any("basis" in e for e in errors)
    checks: List[CheckResult] = [
        make_check("cocycle on sl basis pairs", not basis_failed, True, "named first-cohomology generator"),
        make_check("random pairs failing", len(errors) - int(basis_failed), 0, "identity extends to Vect"),
    ]
    if fam.tag == "iota_dc" and fam.spec.k >= 1:
        checks.extend(_witness_checks(fam, rng, max_deg))
    params = {"family": fam.tag, "m": m, "p": fam.spec.p, "q": fam.spec.q, "k": k, "trials": trials, "max_deg": max_deg}
    return make_report("cocycle", params, checks, seed)


def _witness_checks(fam: NamedCocycleFamily, rng: random.Random, max_deg: int) -> List[CheckResult]:
    witness = iota_witness(fam.spec)
    module = create_module(fam.spec)
    bad = 0
    for _ in range(WITNESS_TRIALS):
        X = random_vector_field(fam.spec.m, max_deg, rng)
        if module.act(X, witness) != named_cocycle(fam, X):
            bad += 1
    exact = is_coboundary(named_cochain(fam)) is not None
    return [
        make_check("contraction witness, random fields failing", bad, 0, "coboundary of T -> sum_i i(dx^i) d_i T"),
        make_check("class is exact on sl(m+1)", exact, True, "coboundary of T -> sum_i i(dx^i) d_i T"),
    ]


def cmd_cohomology(
    species: str,
    m: int,
    p: int,
    q: int,
    k: int,
    u: int,
    level: str = "operator",
    threads: int = 1,
    dump_dir: Optional[str] = None,
) -> RunReport:
    _check_m(m)
    spec = build_module_spec(m, species, p, q, k, level)
    check = _cohomology_check(spec, u, threads, dump_dir)
    params = {"species": spec.species, "m": m, "p": p, "q": q, "k": k, "u": u, "level": level}
    return make_report("cohomology", params, [check])


def _cohomology_check(spec: ModuleSpec, u: int, threads: int = 1, dump_dir: Optional[str] = None) -> CheckResult:
    computed = cohomology_dim(spec, u, threads=threads, dump_dir=dump_dir)
    expected, citation = expected_dim(spec, u)
    return make_check(f"H^{u} {spec.tag()}", computed, expected, citation)


def cmd_theta(species: str, m: int, p: int, q: int, a: int = 0) -> RunReport:
    _check_m(m)
    species = SPECIES_ALIASES.get(species, species)
    result = theta_details(m, p, q, a, species)
    expected, citation = expected_theta(species, m, p, q, a)
    checks = [
        make_check("theta modulo coboundaries", result.value, expected, citation),
        make_check("theta at the origin", result.origin_value, expected, citation),
    ]
    return make_report("theta", {"species": species, "m": m, "p": p, "q": q, "a": a}, checks)


def report_cells(m: int, max_k: int, degrees: Sequence[int] = (0, 1)) -> List[CohomologyCell]:
    """Every cell of the tables, ordered by (species, p, q, k, u)."""
    return [
        {"species": species, "m": m, "p": p, "q": q, "k": k, "u": u}  # type: ignore[typeddict-item]
        for species in ("multivector", "form")
        for p in range(m + 1)
        for q in range(m + 1)
        for k in range(max_k + 1)
        for u in degrees
    ]


def cmd_report(m: int, max_k: int, threads: int = 1, dump_dir: Optional[str] = None) -> RunReport:
    """dim H^0 and dim H^1 for every (species, p, q, k), scored against the tables."""
    _check_m(m)
    if max_k < 0:
        raise SpecError(f"max-k must be nonnegative, got {max_k}")
    cells = report_cells(m, max_k)

    def run(cell: CohomologyCell) -> CheckResult:
        spec = build_module_spec(cell["m"], cell["species"], cell["p"], cell["q"], cell["k"])
        return _cohomology_check(spec, cell["u"], dump_dir=dump_dir)

    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        checks = list(pool.map(run, cells))
    logger.info("report m=%d max_k=%d: %d cells", m, max_k, len(checks))
    return make_report("report", {"m": m, "max_k": max_k}, checks)


# -- argument parsing ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    output = common.add_mutually_exclusive_group()
    output.add_argument("--json", action="store_true", help="print the report as JSON")
    output.add_argument("--markdown", action="store_true", help="print the report as markdown (default)")
    common.add_argument("--dump-matrices", metavar="DIR", help="write differential matrices to DIR")
    common.add_argument("--no-timing", action="store_true", help="record elapsed_ms as 0")
    common.add_argument("-v", "--verbose", action="count", default=0, help="more logging (repeatable)")
    common.add_argument("--quiet", action="store_true", help="only log errors")

    parser = argparse.ArgumentParser(prog="veccoh", description="Exact cohomology of sl(m+1) on differential operators")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("structure", parents=[common], help="check the sl(m+1) embedding")
    p.add_argument("--m", type=int, required=True)

    p = sub.add_parser("cocycle", parents=[common], help="verify a named cocycle family")
    p.add_argument("--family", required=True, help=f"one of {', '.join(FAMILY_TAGS)}, iota")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--p", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--max-deg", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("cohomology", parents=[common], help="dim H^u of one coefficient module")
    p.add_argument("--species", required=True, choices=sorted(SPECIES_ALIASES))
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--p", type=int, default=0)
    p.add_argument("--q", type=int, default=0)
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--u", type=int, default=1)
    p.add_argument("--level", choices=("operator", "symbol"), default="operator")

    p = sub.add_parser("theta", parents=[common], help="connecting-homomorphism constant")
    p.add_argument("--species", required=True, choices=("mv", "multivector", "form"))
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--a", type=int, default=0, choices=(0, 1))

    p = sub.add_parser("report", parents=[common], help="full H^0/H^1 tables")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--max-k", type=int, default=2)
    return parser


def _configure_logging(verbose: int, quiet: bool) -> None:
    if quiet:
        level = logging.ERROR
    else:
        level = (logging.WARNING, logging.INFO)[verbose] if verbose < 2 else logging.DEBUG
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)


def _dispatch(args: argparse.Namespace, threads: int, dump_dir: Optional[str]) -> RunReport:
    commands: Dict[str, Callable[[], RunReport]] = {
        "structure": lambda: cmd_structure(args.m),
        "cocycle": lambda: cmd_cocycle(
            args.family, args.m, args.p, args.q, args.k, args.trials, args.max_deg, args.seed
        ),
        "cohomology": lambda: cmd_cohomology(
            args.species, args.m, args.p, args.q, args.k, args.u, args.level, threads, dump_dir
        ),
        "theta": lambda: cmd_theta(args.species, args.m, args.p, args.q, args.a),
        "report": lambda: cmd_report(args.m, args.max_k, threads, dump_dir),
    }
    return commands[args.command]()


def run(argv: Optional[Sequence[str]] = None) -> Tuple[int, Optional[RunReport]]:
    """Parse, run and print; returns the exit code and the report (None on usage errors)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (exc.code if isinstance(exc.code, int) else 2), None
    _configure_logging(args.verbose, args.quiet)

    start = time.perf_counter()
    try:
        config = load_runtime_config()
        dump_dir = args.dump_matrices or config["dump_dir"]
        report = _dispatch(args, config["threads"], dump_dir)
    except (SpecError, FamilyError) as exc:
        print(f"veccoh {args.command}: error: {exc}", file=sys.stderr)
        return 2, None
    except InternalConsistencyError as exc:
        logger.error("internal consistency check failed: %s", exc)
        return 1, None
    report["elapsed_ms"] = 0 if args.no_timing else int((time.perf_counter() - start) * 1000)

    if PYDANTIC_AVAILABLE:
        validate_run_report(dict(report))
    print(render_json(report) if args.json else render_markdown(report), end="")
    code = exit_code(report)
    logger.info("%s finished with exit code %d", args.command, code)
    return code, report


def main(argv: Optional[Sequence[str]] = None) -> int:
    return run(argv)[0]


if __name__ == "__main__":
    sys.exit(main())
