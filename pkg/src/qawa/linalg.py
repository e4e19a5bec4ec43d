"""
Exact linear algebra over the rationals on sparse rows.

Vectors and rows are ``dict[int, Fraction]`` with no zero entries.  The
matrices met in this package are small (a few hundred rows) and very
sparse, so plain Gaussian elimination on dictionaries is enough.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

SparseVec = dict[int, Fraction]


class SingularMatrixError(ArithmeticError):
    pass


def _axpy(target: SparseVec, coeff: Fraction, row: SparseVec) -> None:
    for k, v in row.items():
        s = target.get(k, 0) + coeff * v
        if s:
            target[k] = s
        else:
            target.pop(k, None)


class Echelon:
    """Incremental row echelon form of a set of sparse vectors.

    Each stored row is normalized to have pivot entry 1 and carries a record
    of how it was built from the inserted vectors, so solving and
    independence queries share one elimination.
    """

    def __init__(self):
        self.rows: dict[int, SparseVec] = {}      # pivot -> reduced row
        self.combos: dict[int, SparseVec] = {}    # pivot -> combination of inputs
        self.count = 0

    def _reduce(self, vec: SparseVec, combo: SparseVec) -> None:
        # Pivots are eliminated in increasing order; eliminating pivot p
        # can only introduce columns > p, never re-create p.
        while True:
            hits = [k for k in vec if k in self.rows]
            if not hits:
                return
            p = min(hits)
            c = -vec[p]
            _axpy(vec, c, self.rows[p])
            _axpy(combo, c, self.combos[p])

    def insert(self, vec: SparseVec) -> bool:
        """Add a vector; return False if it was dependent on earlier ones."""
        index = self.count
        self.count += 1
        vec = dict(vec)
        combo: SparseVec = {index: Fraction(1)}
        self._reduce(vec, combo)
        if not vec:
            return False
        p = min(vec)
        inv = 1 / vec[p]
        self.rows[p] = {k: v * inv for k, v in vec.items()}
        self.combos[p] = {k: v * inv for k, v in combo.items()}
        return True

    @property
    def rank(self) -> int:
        return len(self.rows)

    def express(self, target: SparseVec) -> SparseVec:
        """Coefficients ``c`` with ``sum_j c_j * inserted_j == target``.

        Raises :class:`SingularMatrixError` if target is outside the span.
        """
        vec = dict(target)
        combo: SparseVec = {}
        self._reduce(vec, combo)
        if vec:
            raise SingularMatrixError("vector is not in the span")
        return {k: -v for k, v in combo.items() if v}


def solve_columns(columns: Sequence[SparseVec], target: SparseVec) -> SparseVec:
    """Solve ``sum_j c_j columns[j] = target`` for a square independent set."""
    ech = Echelon()
    for col in columns:
        if not ech.insert(col):
            raise SingularMatrixError("columns are linearly dependent")
    return ech.express(target)


def inverse(matrix: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    """Inverse of a dense square matrix given as a list of rows."""
    n = len(matrix)
    # Solve M^T y = e_k via the rows of M as "columns".
    ech = Echelon()
    for row in matrix:
        if len(row) != n:
            raise ValueError("matrix is not square")
        if not ech.insert({j: Fraction(v) for j, v in enumerate(row) if v}):
            raise SingularMatrixError("matrix is singular")
    # express(e_k) gives y with sum_i y_i M[i] = e_k, i.e. y^T M = e_k^T,
    # so y is row k of M^{-1}.
    out = []
    for k in range(n):
        y = ech.express({k: Fraction(1)})
        out.append([y.get(i, Fraction(0)) for i in range(n)])
    return out


def nullspace(rows: Sequence[SparseVec], ncols: int) -> list[SparseVec]:
    """Basis of ``{x : row . x = 0 for every row}``."""
    pivots: dict[int, SparseVec] = {}
    for r in rows:
        vec = dict(r)
        while True:
            hits = [k for k in vec if k in pivots]
            if not hits:
                break
            p = min(hits)
            _axpy(vec, -vec[p], pivots[p])
        if vec:
            p = min(vec)
            inv = 1 / vec[p]
            vec = {k: v * inv for k, v in vec.items()}
            # keep pivot rows fully reduced against each other
            for q, other in pivots.items():
                if p in other:
                    _axpy(other, -other[p], vec)
            pivots[p] = vec
    basis = []
    for free in range(ncols):
        if free in pivots:
            continue
        x: SparseVec = {free: Fraction(1)}
        for p, row in pivots.items():
            if free in row:
                x[p] = -row[free]
        basis.append(x)
    return basis
