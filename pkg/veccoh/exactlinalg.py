"""
Exact sparse linear algebra over the rationals.

Scalars are ``fractions.Fraction``. Matrices are immutable; every elimination
works on private copies of the rows, so the functions here are safe to call
from several threads at once.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

logger = logging.getLogger(__name__)

Rational = Fraction
SparseVector = Dict[int, Fraction]


class DimensionMismatchError(ValueError):
    """Raised when operands do not have compatible shapes."""


@dataclass(frozen=True)
class SparseMatrix:
    """
    Immutable sparse matrix with rational entries.

    Only nonzero entries are stored, keyed by ``(row, col)`` with 0-based indices.
    """

    rows: int
    cols: int
    entries: Mapping[Tuple[int, int], Fraction] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise DimensionMismatchError("matrix dimensions must be nonnegative")
        cleaned: Dict[Tuple[int, int], Fraction] = {}
        for (r, c), value in self.entries.items():
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise DimensionMismatchError(
                    f"entry ({r}, {c}) outside a {self.rows}x{self.cols} matrix"
                )
            value = Fraction(value)
            if value != 0:
                cleaned[(r, c)] = value
        object.__setattr__(self, "entries", MappingProxyType(cleaned))

    @classmethod
    def from_dense(cls, data: Sequence[Sequence[object]]) -> "SparseMatrix":
        """Build a matrix from a list of rows (ints, Fractions or "a/b" strings)."""
        n_rows = len(data)
        n_cols = len(data[0]) if n_rows else 0
        entries: Dict[Tuple[int, int], Fraction] = {}
        for r, row in enumerate(data):
            if len(row) != n_cols:
                raise DimensionMismatchError("not all rows are of equal length")
            for c, value in enumerate(row):
                entries[(r, c)] = Fraction(value)  # type: ignore[arg-type]
        return cls(n_rows, n_cols, entries)

    @classmethod
    def from_columns(cls, n_rows: int, columns: Sequence[Mapping[int, Fraction]]) -> "SparseMatrix":
        """Build a matrix whose c-th column is the sparse vector ``columns[c]``."""
        entries = {(r, c): v for c, col in enumerate(columns) for r, v in col.items()}
        return cls(n_rows, len(columns), entries)

    @classmethod
    def identity(cls, n: int) -> "SparseMatrix":
        return cls(n, n, {(i, i): Fraction(1) for i in range(n)})

    @property
    def nnz(self) -> int:
        return len(self.entries)

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(self.cols, self.rows, {(c, r): v for (r, c), v in self.entries.items()})

    def row_vectors(self) -> List[SparseVector]:
        out: List[SparseVector] = [{} for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def column_vectors(self) -> List[SparseVector]:
        out: List[SparseVector] = [{} for _ in range(self.cols)]
        for (r, c), v in self.entries.items():
            out[c][r] = v
        return out

    def to_dense(self) -> List[List[Fraction]]:
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def matvec(self, x: Sequence[Fraction]) -> List[Fraction]:
        if len(x) != self.cols:
            raise DimensionMismatchError(f"vector of length {len(x)} for {self.cols} columns")
        out = [Fraction(0)] * self.rows
        for (r, c), v in self.entries.items():
            out[r] += v * x[c]
        return out

    def matmul(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.cols != other.rows:
            raise DimensionMismatchError(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        right_rows = other.row_vectors()
        acc: Dict[Tuple[int, int], Fraction] = {}
        for (r, k), v in self.entries.items():
            for c, w in right_rows[k].items():
                acc[(r, c)] = acc.get((r, c), Fraction(0)) + v * w
        return SparseMatrix(self.rows, other.cols, acc)

    def permute_rows(self, order: Sequence[int]) -> "SparseMatrix":
        """Return the matrix whose row i is row ``order[i]`` of this one."""
        position = {old: new for new, old in enumerate(order)}
        return SparseMatrix(
            self.rows, self.cols, {(position[r], c): v for (r, c), v in self.entries.items()}
        )

    def scale_row(self, row: int, factor: Fraction) -> "SparseMatrix":
        return SparseMatrix(
            self.rows,
            self.cols,
            {(r, c): (v * factor if r == row else v) for (r, c), v in self.entries.items()},
        )

    def to_mtx(self) -> str:
        """Render the debug dump format: header ``rows cols nnz``, then sorted entries."""
        lines = [f"{self.rows} {self.cols} {self.nnz}"]
        for (r, c) in sorted(self.entries):
            v = self.entries[(r, c)]
            lines.append(f"{r} {c} {v.numerator}/{v.denominator}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_mtx(cls, text: str) -> "SparseMatrix":
        lines = [line for line in text.splitlines() if line.strip()]
        n_rows, n_cols, nnz = (int(tok) for tok in lines[0].split())
        entries: Dict[Tuple[int, int], Fraction] = {}
        for line in lines[1:]:
            r, c, value = line.split()
            entries[(int(r), int(c))] = Fraction(value)
        if len(entries) != nnz:
            raise DimensionMismatchError(f"header announces {nnz} entries, found {len(entries)}")
        return cls(n_rows, n_cols, entries)


class _Echelon:
    """
    Incremental row echelon form keyed by leading column.

    Every stored row has leading entry 1 at its key and no entries left of it.
    """

    def __init__(self) -> None:
        self.pivots: Dict[int, Tuple[SparseVector, Fraction]] = {}

    def reduce(self, vec: SparseVector, rhs: Fraction = Fraction(0)) -> Tuple[SparseVector, Fraction]:
        vec = dict(vec)
        while vec:
            lead = min(vec)
            pivot = self.pivots.get(lead)
            if pivot is None:
                break
            factor = vec[lead]
            prow, prhs = pivot
            for c, v in prow.items():
                new = vec.get(c, Fraction(0)) - factor * v
                if new:
                    vec[c] = new
                else:
                    vec.pop(c, None)
            rhs -= factor * prhs
        return vec, rhs

    def insert(self, vec: SparseVector, rhs: Fraction = Fraction(0)) -> Optional[bool]:
        """
        Reduce and store a row.

        Returns:
            True if the row raised the rank, False if it reduced to 0 = 0,
            None if it reduced to the inconsistent 0 = rhs with rhs != 0.
        """
        vec, rhs = self.reduce(vec, rhs)
        if not vec:
            return False if rhs == 0 else None
        lead = min(vec)
        inv = 1 / vec[lead]
        self.pivots[lead] = ({c: v * inv for c, v in vec.items()}, rhs * inv)
        return True


def _sparsity_order(vectors: Sequence[SparseVector]) -> List[int]:
    # fewest nonzeros first, lowest index on ties
    return sorted(range(len(vectors)), key=lambda i: (len(vectors[i]), i))


def rank(M: SparseMatrix) -> int:
    """
    Rank of ``M`` over ℚ.

    Eliminates along the shorter side, feeding vectors sparsest first.
    """
    vectors = M.column_vectors() if M.cols < M.rows else M.row_vectors()
    echelon = _Echelon()
    result = 0
    for i in _sparsity_order(vectors):
        if vectors[i] and echelon.insert(vectors[i]):
            result += 1
    logger.debug("rank of %dx%d matrix (nnz=%d): %d", M.rows, M.cols, M.nnz, result)
    return result


def nullspace_dim(M: SparseMatrix) -> int:
    """Dimension of the kernel of ``M`` acting on column vectors."""
    return M.cols - rank(M)


def solve(M: SparseMatrix, b: Sequence[Fraction]) -> Optional[List[Fraction]]:
    """
    Find some ``x`` with ``M x = b``.

    Free variables are set to zero, so the answer is deterministic.

    Args:
        M: Coefficient matrix
        b: Right-hand side, one entry per row of ``M``

    Returns:
        A solution vector, or None when the system is inconsistent

    Raises:
        DimensionMismatchError: If ``len(b) != M.rows``
    """
    if len(b) != M.rows:
        raise DimensionMismatchError(f"right-hand side of length {len(b)} for {M.rows} rows")
    rows = M.row_vectors()
    echelon = _Echelon()
    for i in _sparsity_order(rows):
        rhs = Fraction(b[i])
        if not rows[i]:
            if rhs != 0:
                return None
            continue
        if echelon.insert(rows[i], rhs) is None:
            return None
    x = [Fraction(0)] * M.cols
    for lead in sorted(echelon.pivots, reverse=True):
        prow, prhs = echelon.pivots[lead]
        x[lead] = prhs - sum((v * x[c] for c, v in prow.items() if c != lead), Fraction(0))
    return x


def ranks(matrices: Iterable[SparseMatrix], threads: int = 1) -> List[int]:
    """Ranks of several matrices, optionally in a thread pool; order is preserved."""
    matrices = list(matrices)
    if threads <= 1 or len(matrices) <= 1:
        return [rank(M) for M in matrices]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(rank, matrices))
