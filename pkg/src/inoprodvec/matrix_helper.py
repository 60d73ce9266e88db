from __future__ import annotations

import logging
from itertools import combinations
from typing import Any, Callable, Iterator, List, Sequence, Tuple

import numpy as np
import scipy.linalg

from .numeric_helper import EXACT, FLOAT, GaussianRational

logger = logging.getLogger(__name__)

Matrix = List[List[Any]]


class InoMatrixHelper:
    """Small dense linear algebra over the exact and float coefficient fields."""

    @staticmethod
    def bareiss_det(
        rows: Sequence[Sequence[Any]],
        zero: Any,
        one: Any,
        is_zero: Callable[[Any], bool],
        exquo: Callable[[Any, Any], Any],
    ) -> Any:
        """
        Fraction-free determinant (Bareiss). Works over any integral domain
        given its zero test and exact division, e.g. Gaussian rationals or
        univariate polynomials.
        """
        M = [list(r) for r in rows]
        n = len(M)
        if n == 0:
            return one
        sign = 1
        prev = one
        for k in range(n - 1):
            if is_zero(M[k][k]):
                for i in range(k + 1, n):
                    if not is_zero(M[i][k]):
                        M[k], M[i] = M[i], M[k]
                        sign = -sign
                        break
                else:
                    return zero
            pivot = M[k][k]
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    M[i][j] = exquo(pivot * M[i][j] - M[i][k] * M[k][j], prev)
            prev = pivot
        det = M[n - 1][n - 1]
        return -det if sign < 0 else det

    @staticmethod
    def expansion_det(rows: Sequence[Sequence[Any]], one: Any, zero: Any) -> Any:
        """
        Division-free determinant by Laplace expansion along rows, memoized on
        the set of used columns. Needs only +, - and *, so it works for entries
        in any commutative ring (bivariate or multivariate polynomials).
        """
        n = len(rows)
        partial = {0: one}
        for r in range(n):
            nxt = {}
            for mask, sub in partial.items():
                for j in range(n):
                    if mask >> j & 1:
                        continue
                    pos = bin(mask & ((1 << j) - 1)).count("1")
                    term = rows[r][j] * sub
                    if (r + pos) % 2:
                        term = -term
                    key = mask | (1 << j)
                    nxt[key] = nxt[key] + term if key in nxt else term
            partial = nxt
        return partial.get((1 << n) - 1, zero)

    @staticmethod
    def det(rows: Sequence[Sequence[Any]], field=EXACT) -> Any:
        """Exact Bareiss determinant, or partially pivoted LU (LAPACK) in the float domain."""
        if field.exact:
            return InoMatrixHelper.bareiss_det(
                [[field.coerce(v) for v in r] for r in rows],
                field.zero,
                field.one,
                lambda v: not v,
                lambda a, b: a / b,
            )
        if len(rows) == 0:
            return 1 + 0j
        return complex(np.linalg.det(np.array(rows, dtype=complex)))

    @staticmethod
    def rref(rows: Sequence[Sequence[Any]], field=EXACT) -> Tuple[Matrix, List[int]]:
        """Reduced row echelon form over the exact field; returns (matrix, pivot columns)."""
        M = [[field.coerce(v) for v in r] for r in rows]
        if not M:
            return M, []
        n_rows, n_cols = len(M), len(M[0])
        pivots: List[int] = []
        r = 0
        for c in range(n_cols):
            pivot_row = next((i for i in range(r, n_rows) if M[i][c]), None)
            if pivot_row is None:
                continue
            M[r], M[pivot_row] = M[pivot_row], M[r]
            inv = field.one / M[r][c]
            M[r] = [v * inv for v in M[r]]
            for i in range(n_rows):
                if i != r and M[i][c]:
                    f = M[i][c]
                    M[i] = [a - f * b for a, b in zip(M[i], M[r])]
            pivots.append(c)
            r += 1
            if r == n_rows:
                break
        return M, pivots

    @staticmethod
    def singular_values(rows: Sequence[Sequence[Any]]) -> np.ndarray:
        A = np.array([[FLOAT.coerce(v) for v in r] for r in rows], dtype=complex)
        if A.size == 0:
            return np.zeros(0)
        return np.linalg.svd(A, compute_uv=False)

    @staticmethod
    def rank(rows: Sequence[Sequence[Any]], field=EXACT, tol: float = 1e-8) -> int:
        """Exact rank, or the number of singular values above tol * largest singular value."""
        if not rows or not rows[0]:
            return 0
        if field.exact:
            return len(InoMatrixHelper.rref(rows, field)[1])
        s = InoMatrixHelper.singular_values(rows)
        if s.size == 0 or s[0] == 0.0:
            return 0
        return int(np.sum(s > tol * s[0]))

    @staticmethod
    def null_space(rows: Sequence[Sequence[Any]], field=EXACT, tol: float = 1e-8) -> List[List[Any]]:
        """Basis of {v : rows · v = 0}; exact basis vectors or orthonormal float columns."""
        if field.exact:
            M, pivots = InoMatrixHelper.rref(rows, field)
            n_cols = len(rows[0])
            free = [c for c in range(n_cols) if c not in pivots]
            basis = []
            for fc in free:
                v = [field.zero] * n_cols
                v[fc] = field.one
                for r, pc in enumerate(pivots):
                    v[pc] = -M[r][fc]
                basis.append(v)
            return basis
        A = np.array([[FLOAT.coerce(v) for v in r] for r in rows], dtype=complex)
        N = scipy.linalg.null_space(A, rcond=tol)
        return [list(map(complex, N[:, i])) for i in range(N.shape[1])]

    @staticmethod
    def minors(rows: Sequence[Sequence[Any]], size: int, field=EXACT) -> Iterator[Tuple[Tuple[int, ...], Tuple[int, ...], Any]]:
        """Yields (row indices, column indices, determinant) for every size x size minor."""
        n_rows, n_cols = len(rows), len(rows[0]) if rows else 0
        for ri in combinations(range(n_rows), size):
            for ci in combinations(range(n_cols), size):
                sub = [[rows[r][c] for c in ci] for r in ri]
                yield ri, ci, InoMatrixHelper.det(sub, field)

    @staticmethod
    def to_exact(rows: Sequence[Sequence[Any]]) -> Matrix:
        return [[GaussianRational.coerce(v) for v in r] for r in rows]
