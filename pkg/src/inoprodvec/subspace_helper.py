"""
Subspace pairs (D, E) of C^m ⊗ C^n given by hyperplane coefficient matrices,
the linear-form matrix whose kernel carries y, and the polynomials it induces.

A hyperplane vector A (an m x n matrix) cuts out {z : sum_ij A_ij z_ij = 0}.
x ⊗ y lies in D iff sum_j y_j L_j(x) = 0 for every D row, with
L_j(x) = sum_i A_ij x_i; the E rows use the conjugate x̄ in place of x.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .matrix_helper import InoMatrixHelper
from .numeric_helper import EXACT, FLOAT, DomainError, InoNumericHelper
from .poly_helper import BiPoly
from .util_helper import ProdVecError

logger = logging.getLogger(__name__)

HyperplaneMatrix = Tuple[Tuple[Any, ...], ...]


class PairValidationError(ProdVecError):
    """Malformed, mis-shaped or linearly dependent hyperplane vectors."""
    kind = "validation"


class RegimeError(ProdVecError):
    """The pair is outside the boundary regime k + l = m + n - 2."""
    kind = "regime"


def regime_message(m: int, n: int, k: int, l: int) -> str:
    target = m + n - 2
    if k + l < target:
        return (f"k + l = {k + l} < m + n - 2 = {target}: infinitely many product vectors "
                f"(InfiniteRegime), nothing to count")
    return (f"k + l = {k + l} > m + n - 2 = {target}: no product vectors for generic D and E "
            f"(GenericallyEmptyRegime)")


@dataclass(frozen=True)
class SubspacePair:
    """D and E by their orthogonal complements: D = {z : <A, z> = 0 for A in d_perp}, E likewise."""

    m: int
    n: int
    d_perp: Tuple[HyperplaneMatrix, ...]
    e_perp: Tuple[HyperplaneMatrix, ...]
    field: Any = EXACT

    @classmethod
    def create(
        cls,
        m: int,
        n: int,
        d_perp: Sequence[Sequence[Sequence[Any]]],
        e_perp: Sequence[Sequence[Sequence[Any]]],
        field=EXACT,
        check_independent: bool = True,
    ) -> "SubspacePair":
        if m < 2 or n < 2:
            raise PairValidationError(f"❌ need m, n >= 2, got m={m}, n={n}")

        def _matrix(vec: Sequence[Any], label: str) -> HyperplaneMatrix:
            flat = list(vec)
            if len(flat) == m and all(isinstance(r, (list, tuple)) for r in flat):
                if any(len(r) != n for r in flat):
                    raise PairValidationError(f"❌ {label}: rows must have {n} entries")
                flat = [v for r in flat for v in r]
            if len(flat) != m * n:
                raise PairValidationError(f"❌ {label}: expected {m * n} coefficients, got {len(flat)}")
            try:
                vals = [field.coerce(v) for v in flat]
            except (TypeError, ValueError, ZeroDivisionError) as e:
                raise PairValidationError(f"❌ {label}: {e}") from e
            return tuple(tuple(vals[i * n:(i + 1) * n]) for i in range(m))

        dp = tuple(_matrix(v, f"D_perp[{s}]") for s, v in enumerate(d_perp))
        ep = tuple(_matrix(v, f"E_perp[{t}]") for t, v in enumerate(e_perp))
        if len(dp) > m * n or len(ep) > m * n:
            raise PairValidationError(f"❌ at most mn = {m * n} hyperplane vectors per subspace")

        pair = cls(m, n, dp, ep, field)
        if check_independent:
            for label, vecs in (("D_perp", dp), ("E_perp", ep)):
                if vecs and InoMatrixHelper.rank([pair._flat(v) for v in vecs], field) < len(vecs):
                    raise PairValidationError(f"❌ {label} vectors are linearly dependent")
        return pair

    @staticmethod
    def _flat(matrix: HyperplaneMatrix) -> List[Any]:
        return [v for row in matrix for v in row]

    @property
    def k(self) -> int:
        return len(self.d_perp)

    @property
    def l(self) -> int:
        return len(self.e_perp)

    @property
    def dim_d(self) -> int:
        return self.m * self.n - self.k

    @property
    def dim_e(self) -> int:
        return self.m * self.n - self.l

    def approx(self) -> "SubspacePair":
        if not self.field.exact:
            return self
        conv = lambda vs: tuple(tuple(tuple(FLOAT.coerce(v) for v in row) for row in A) for A in vs)
        return SubspacePair(self.m, self.n, conv(self.d_perp), conv(self.e_perp), FLOAT)

    def recombined(self, d_mix: Sequence[Sequence[Any]], e_mix: Sequence[Sequence[Any]]) -> "SubspacePair":
        """Same subspaces, hyperplane vectors replaced by the rows of d_mix · D_perp and e_mix · E_perp."""

        def _mix(mix, vecs):
            out = []
            for coeffs in mix:
                acc = [[self.field.zero] * self.n for _ in range(self.m)]
                for c, A in zip(coeffs, vecs):
                    c = self.field.coerce(c)
                    for i in range(self.m):
                        for j in range(self.n):
                            acc[i][j] = acc[i][j] + c * A[i][j]
                out.append(acc)
            return out

        return SubspacePair.create(self.m, self.n, _mix(d_mix, self.d_perp), _mix(e_mix, self.e_perp), self.field)

    # -----------------------
    # membership
    # -----------------------
    def _pairing(self, A: HyperplaneMatrix, x: Sequence[Any], y: Sequence[Any]) -> Any:
        acc = 0
        for i in range(self.m):
            for j in range(self.n):
                acc = acc + A[i][j] * x[i] * y[j]
        return acc

    def residuals(self, x: Sequence[complex], y: Sequence[complex]) -> Tuple[float, float]:
        """
        (max_s |<A_s, x⊗y>|, max_t |<B_t, x̄⊗y>|), each term relative to the
        largest coefficient of its hyperplane vector.
        """
        x = [complex(v) for v in x]
        y = [complex(v) for v in y]
        xb = [v.conjugate() for v in x]

        def _res(vecs, xv):
            worst = 0.0
            for A in vecs:
                Af = [[complex(v) for v in row] for row in A]
                scale = max(abs(v) for row in Af for v in row) or 1.0
                worst = max(worst, abs(self._pairing(Af, xv, y)) / scale)
            return worst

        return _res(self.d_perp, x), _res(self.e_perp, xb)

    def contains_exact(self, x: Sequence[Any], y: Sequence[Any]) -> bool:
        """x⊗y ∈ D and x̄⊗y ∈ E, decided exactly (exact domain only)."""
        if not self.field.exact:
            raise DomainError("exact membership needs the exact domain")
        x = [self.field.coerce(v) for v in x]
        y = [self.field.coerce(v) for v in y]
        xb = [v.conjugate() for v in x]
        return all(self._pairing(A, x, y) == 0 for A in self.d_perp) and all(
            self._pairing(B, xb, y) == 0 for B in self.e_perp
        )

    # -----------------------
    # JSON
    # -----------------------
    def to_json(self) -> dict:
        enc = InoNumericHelper.encode_scalar
        return {
            "m": self.m,
            "n": self.n,
            "D_perp": [[enc(v) for v in self._flat(A)] for A in self.d_perp],
            "E_perp": [[enc(v) for v in self._flat(B)] for B in self.e_perp],
        }

    @classmethod
    def from_json(cls, data: Dict[str, Any], field=EXACT) -> "SubspacePair":
        """
        Reads {"m", "n", "D_perp", "E_perp"}; "D_span" / "E_span" (spanning
        vectors of D, E) are accepted instead and turned into complements.
        """
        try:
            m, n = int(data["m"]), int(data["n"])
        except (KeyError, TypeError, ValueError) as e:
            raise PairValidationError(f"❌ pair needs integer 'm' and 'n': {e}") from e

        def _decode(vecs, label):
            if not isinstance(vecs, list):
                raise PairValidationError(f"❌ {label} must be a list of vectors")
            try:
                return [[InoNumericHelper.decode_scalar(v, field) for v in vec] for vec in vecs]
            except (TypeError, ValueError, ZeroDivisionError) as e:
                raise PairValidationError(f"❌ {label}: {e}") from e

        def _side(perp_key, span_key):
            if perp_key in data and span_key in data:
                raise PairValidationError(f"❌ give either {perp_key} or {span_key}, not both")
            if span_key in data:
                span = _decode(data[span_key], span_key)
                return InoSubspaceHelper.complement_of_span(span, m, n, field)
            return _decode(data.get(perp_key, []), perp_key)

        return cls.create(m, n, _side("D_perp", "D_span"), _side("E_perp", "E_span"), field)


@dataclass(frozen=True)
class LinearForm:
    """sum_i cx[i] x_i + sum_i cxbar[i] x̄_i"""

    cx: Tuple[Any, ...]
    cxbar: Tuple[Any, ...]

    def eval(self, x: Sequence[Any], xbar: Sequence[Any]) -> Any:
        acc = 0
        for c, v in zip(self.cx, x):
            acc = acc + c * v
        for c, v in zip(self.cxbar, xbar):
            acc = acc + c * v
        return acc


@dataclass(frozen=True)
class LinearFormMatrix:
    """(m+n-2) x n grid of linear forms; D rows (in x) first, then E rows (in x̄)."""

    m: int
    n: int
    k: int
    rows: Tuple[Tuple[LinearForm, ...], ...]
    field: Any = EXACT

    @property
    def l(self) -> int:
        return len(self.rows) - self.k

    def evaluate(self, x: Sequence[Any], xbar: Optional[Sequence[Any]] = None, field=None) -> List[List[Any]]:
        """Scalar matrix L(x, x̄); x̄ defaults to the conjugate of x."""
        field = field or self.field
        x = [field.coerce(v) for v in x]
        xbar = [field.conj(v) for v in x] if xbar is None else [field.coerce(v) for v in xbar]
        if field is self.field:
            rows = self.rows
        else:
            rows = [[LinearForm(tuple(field.coerce(c) for c in f.cx), tuple(field.coerce(c) for c in f.cxbar)) for f in r]
                    for r in self.rows]
        return [[f.eval(x, xbar) for f in r] for r in rows]

    def evaluate_chart(self, z: Any, field=None) -> List[List[Any]]:
        """L at x = (z, 1) (m = 2)."""
        field = field or self.field
        return self.evaluate([z, field.one], field=field)

    def entry_poly(self, q: int, j: int) -> BiPoly:
        """Entry (q, j) after x1 -> z, x̄1 -> w, x2 = x̄2 = 1 (m = 2)."""
        f = self.rows[q][j]
        if q < self.k:
            return BiPoly([[f.cx[1]], [f.cx[0]]], 1, 0, self.field)
        return BiPoly([[f.cxbar[1], f.cxbar[0]]], 0, 1, self.field)

    def to_json(self) -> dict:
        enc = InoNumericHelper.encode_scalar
        return {
            "m": self.m,
            "n": self.n,
            "k": self.k,
            "rows": [
                [{"x": [enc(c) for c in f.cx], "xbar": [enc(c) for c in f.cxbar]} for f in r]
                for r in self.rows
            ],
        }


class MultiPoly:
    """
    Sparse polynomial in x_1..x_m, x̄_1..x̄_m (the conjugates treated as
    independent variables): {exponent tuple of length 2m: coefficient}.
    """

    __slots__ = ("m", "terms", "field")

    def __init__(self, m: int, terms: Optional[Dict[Tuple[int, ...], Any]] = None, field=EXACT) -> None:
        self.m = m
        self.field = field
        self.terms = {e: c for e, c in (terms or {}).items() if c != 0}

    @classmethod
    def constant(cls, m: int, c: Any, field=EXACT) -> "MultiPoly":
        return cls(m, {(0,) * (2 * m): field.coerce(c)}, field)

    @classmethod
    def from_linear_form(cls, m: int, form: LinearForm, field=EXACT) -> "MultiPoly":
        terms: Dict[Tuple[int, ...], Any] = {}
        for i, c in enumerate(form.cx):
            e = [0] * (2 * m)
            e[i] = 1
            terms[tuple(e)] = c
        for i, c in enumerate(form.cxbar):
            e = [0] * (2 * m)
            e[m + i] = 1
            terms[tuple(e)] = c
        return cls(m, terms, field)

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out[e] + c if e in out else c
        return MultiPoly(self.m, out, self.field)

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.m, {e: -c for e, c in self.terms.items()}, self.field)

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + (-other)

    def __mul__(self, other: "MultiPoly") -> "MultiPoly":
        out: Dict[Tuple[int, ...], Any] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out[e] + c1 * c2 if e in out else c1 * c2
        return MultiPoly(self.m, out, self.field)

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def eval(self, x: Sequence[Any], xbar: Optional[Sequence[Any]] = None) -> Any:
        x = list(x)
        xbar = [InoNumericHelper.conj(v) for v in x] if xbar is None else list(xbar)
        vals = x + xbar
        acc = 0
        for e, c in self.terms.items():
            t = c
            for v, p in zip(vals, e):
                if p:
                    t = t * v ** p
            acc = acc + t
        return acc

    def dehomogenize(self, dz: int, dw: int) -> BiPoly:
        """m = 2: substitute x1 -> z, x̄1 -> w, x2 = x̄2 = 1."""
        if self.m != 2:
            raise DomainError("chart substitution is defined for m = 2")
        terms: Dict[Tuple[int, int], Any] = {}
        for (a1, a2, b1, b2), c in self.terms.items():
            terms[(a1, b1)] = terms[(a1, b1)] + c if (a1, b1) in terms else c
        return BiPoly.from_terms(terms, dz, dw, self.field)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.m == other.m and self.terms == other.terms

    def __repr__(self) -> str:
        return f"MultiPoly(m={self.m}, {len(self.terms)} terms)"


class InoSubspaceHelper:
    @staticmethod
    def complement_of_span(span: Sequence[Sequence[Any]], m: int, n: int, field=EXACT) -> List[List[Any]]:
        """Hyperplane vectors A (flattened, row-major) with sum A_ij v_ij = 0 for every spanning vector v."""
        if not span:
            # D is {0}: every coordinate functional
            return [[field.one if t == s else field.zero for t in range(m * n)] for s in range(m * n)]
        if any(len(v) != m * n for v in span):
            raise PairValidationError(f"❌ spanning vectors need {m * n} coefficients")
        basis = InoMatrixHelper.null_space(span, field)
        logger.debug(f"span of {len(span)} vectors -> {len(basis)} hyperplane vectors")
        return basis

    @staticmethod
    def build_linear_system(pair: SubspacePair) -> LinearFormMatrix:
        m, n, k, l = pair.m, pair.n, pair.k, pair.l
        if k + l != m + n - 2:
            raise RegimeError(f"❌ {regime_message(m, n, k, l)}")
        f = pair.field
        zeros = tuple(f.zero for _ in range(m))
        rows = []
        for A in pair.d_perp:
            rows.append(tuple(LinearForm(tuple(A[i][j] for i in range(m)), zeros) for j in range(n)))
        for B in pair.e_perp:
            rows.append(tuple(LinearForm(zeros, tuple(B[i][j] for i in range(m))) for j in range(n)))
        return LinearFormMatrix(m, n, k, tuple(rows), f)

    @staticmethod
    def det_poly_2xn(L: LinearFormMatrix) -> BiPoly:
        """det L with x1 -> z, x̄1 -> w, x2 = x̄2 = 1, of formal bidegree (k, l)."""
        if L.m != 2:
            raise DomainError(f"❌ det_poly_2xn needs m = 2, got m = {L.m}")
        f = L.field
        grid = [[L.entry_poly(q, j) for j in range(L.n)] for q in range(L.n)]
        one = BiPoly([[f.one]], 0, 0, f)
        P = InoMatrixHelper.expansion_det(grid, one, BiPoly([[f.zero]], L.k, L.l, f))
        # every term is a product of k entries linear in z and l linear in w
        return BiPoly(P.grid, L.k, L.l, f)

    @staticmethod
    def det_poly_from_minors(L: LinearFormMatrix) -> BiPoly:
        """
        P as a sum of n x n minors of the stacked 2n x n matrix of the rows'
        x1- and x2-coefficients: choosing the x1 part in a set S of rows
        contributes z^|S ∩ D| w^|S ∩ E| times that minor.
        """
        if L.m != 2:
            raise DomainError(f"❌ det_poly_from_minors needs m = 2, got m = {L.m}")
        f, n, k = L.field, L.n, L.k
        top = [[(fm.cx if q < k else fm.cxbar)[0] for fm in L.rows[q]] for q in range(n)]
        bottom = [[(fm.cx if q < k else fm.cxbar)[1] for fm in L.rows[q]] for q in range(n)]
        terms: Dict[Tuple[int, int], Any] = {}
        for mask in range(1 << n):
            rows = [top[q] if mask >> q & 1 else bottom[q] for q in range(n)]
            minor = InoMatrixHelper.det(rows, f)
            if minor == 0:
                continue
            a = sum(1 for q in range(k) if mask >> q & 1)
            b = sum(1 for q in range(k, n) if mask >> q & 1)
            terms[(a, b)] = terms[(a, b)] + minor if (a, b) in terms else minor
        return BiPoly.from_terms(terms, k, L.l, f)

    @staticmethod
    def minors_system(L: LinearFormMatrix) -> List[MultiPoly]:
        """All n x n minors of L as polynomials in x, x̄ (row subsets in lexicographic order)."""
        f, m, n = L.field, L.m, L.n
        polys = [[MultiPoly.from_linear_form(m, fm, f) for fm in r] for r in L.rows]
        one = MultiPoly.constant(m, 1, f)
        zero = MultiPoly(m, {}, f)
        out = []
        for rs in combinations(range(len(polys)), n):
            out.append(InoMatrixHelper.expansion_det([polys[r] for r in rs], one, zero))
        logger.debug(f"minors_system: {len(out)} minors of size {n}")
        return out

    @staticmethod
    def chart_point_check(L: LinearFormMatrix, x: Sequence[Any], tol: float = 1e-8) -> int:
        """Rank of L(x, x̄); exact when L and x are exact, otherwise SVD rank at relative tol."""
        if all(v == 0 for v in x):
            raise ProdVecError("❌ chart point must be nonzero")
        if L.field.exact and not any(isinstance(v, (float, complex)) for v in x):
            return InoMatrixHelper.rank(L.evaluate(x), EXACT)
        return InoMatrixHelper.rank(L.evaluate(x, field=FLOAT), FLOAT, tol)

    @staticmethod
    def random_recombination(pair: SubspacePair, rng: np.random.Generator) -> SubspacePair:
        """Replaces each complement basis by a random invertible integer recombination of itself."""

        def _mix(size):
            while True:
                M = rng.integers(-3, 4, size=(size, size)).tolist()
                if size == 0 or InoMatrixHelper.det(M, EXACT) != 0:
                    return M

        return pair.recombined(_mix(pair.k), _mix(pair.l))
