"""Exact rational matrices and the triangular inversion used to swap bases."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


class SingularSystemError(ArithmeticError):
    pass


@dataclass(frozen=True, init=False)
class RationalMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[Fraction, ...], ...]

    def __init__(self, entries: Sequence[Sequence]):
        grid = tuple(tuple(Fraction(v) for v in row) for row in entries)
        if not grid or not grid[0]:
            raise ValueError("matrix must have at least one row and one column")
        width = len(grid[0])
        if any(len(row) != width for row in grid):
            raise ValueError("matrix rows must all have the same length")
        object.__setattr__(self, "entries", grid)
        object.__setattr__(self, "rows", len(grid))
        object.__setattr__(self, "cols", width)

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def lower_from_rows(cls, rows: Sequence[Sequence]) -> "RationalMatrix":
        """Stack ragged rows (row n has n entries) into a square lower-triangular matrix."""
        n = len(rows)
        grid = []
        for i, row in enumerate(rows):
            if len(row) != i + 1:
                raise ValueError(f"row {i + 1} must have {i + 1} entries, got {len(row)}")
            grid.append(list(row) + [0] * (n - i - 1))
        return cls(grid)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        return RationalMatrix(
            [
                [sum((self[i, k] * other[k, j] for k in range(self.cols)), Fraction(0)) for j in range(other.cols)]
                for i in range(self.rows)
            ]
        )

    def is_lower_triangular(self) -> bool:
        return self.rows == self.cols and all(
            self[i, j] == 0 for i in range(self.rows) for j in range(i + 1, self.cols)
        )


def lower_triangular_inverse(M: RationalMatrix) -> RationalMatrix:
    """Inverse of a square lower-triangular matrix by forward substitution."""
    if not M.is_lower_triangular():
        raise ValueError("matrix must be square and lower-triangular")
    n = M.rows
    for i in range(n):
        if M[i, i] == 0:
            raise SingularSystemError(f"zero diagonal entry at row {i + 1}")
    inv = [[Fraction(0)] * n for _ in range(n)]
    for j in range(n):
        inv[j][j] = 1 / M[j, j]
        for i in range(j + 1, n):
            s = sum((M[i, k] * inv[k][j] for k in range(j, i)), Fraction(0))
            inv[i][j] = -s / M[i, i]
    return RationalMatrix(inv)


def triangular_invert(M: RationalMatrix, rhs_index: int) -> list[Fraction]:
    """Invert the triangular change of basis I_n = sum_k x[n][k] J_k.

    Row ``n`` of ``M`` (1-based) holds the coefficients x_{1,n}..x_{n,n}.
    Returns y_{1,n}..y_{n,n} with J_n = sum_k y_{k,n} I_k for n = rhs_index.
    """
    if not 1 <= rhs_index <= M.rows:
        raise ValueError(f"rhs_index must lie in 1..{M.rows}")
    inv = lower_triangular_inverse(M)
    return [inv[rhs_index - 1, k] for k in range(rhs_index)]


def forward_substitute(M: RationalMatrix, y_rows: Sequence[Sequence[Fraction]]) -> RationalMatrix:
    """Compose the coefficient rows ``y`` with ``M``; returns the matrix Y @ M.

    When ``y_rows`` came from :func:`triangular_invert` this is the identity.
    """
    n = len(y_rows)
    Y = RationalMatrix.lower_from_rows(y_rows)
    sub = RationalMatrix([[M[i, j] for j in range(n)] for i in range(n)])
    return Y @ sub
