"""
Dense univariate / bivariate polynomials, Sylvester matrices and resultants.

Polynomials carry a *formal* degree next to their actual support. Sylvester
matrices are always built from formal degrees, so the resultant of two
polynomials "of degree at most d" has a fixed shape even when leading
coefficients vanish.
"""
from __future__ import annotations

import logging
from typing import Any, List, Optional, Sequence, Tuple

import numpy as np

from .matrix_helper import InoMatrixHelper
from .numeric_helper import EXACT, FLOAT, DomainError, GaussianRational, InoNumericHelper
from .util_helper import ProdVecError

logger = logging.getLogger(__name__)


class DegenerateSylvesterError(ProdVecError):
    """Both operands have formal degree zero."""
    kind = "validation"


def _field_for(values: Sequence[Any], field):
    if field is not None:
        return field
    for v in values:
        if isinstance(v, (complex, float)):
            return FLOAT
    return EXACT


class UniPoly:
    """Univariate polynomial c_0 + c_1 z + ... with a formal degree >= its actual degree."""

    __slots__ = ("_c", "_formal", "field")

    def __init__(self, coeffs: Sequence[Any] = (), formal_degree: Optional[int] = None, field=None) -> None:
        field = _field_for(coeffs, field)
        cs = [field.coerce(c) for c in coeffs]
        last = max((i for i, c in enumerate(cs) if c != 0), default=-1)
        self.field = field
        if last < 0:
            self._c: Tuple[Any, ...] = (field.zero,)
            self._formal = 0
            return
        fd = last if formal_degree is None else int(formal_degree)
        if fd < last:
            raise ProdVecError(f"formal degree {fd} below actual degree {last}")
        self._c = tuple(cs[: last + 1]) + (field.zero,) * (fd - last)
        self._formal = fd

    # -----------------------
    # construction
    # -----------------------
    @classmethod
    def zero(cls, field=EXACT) -> "UniPoly":
        return cls((), field=field)

    @classmethod
    def constant(cls, c: Any, field=EXACT) -> "UniPoly":
        return cls((c,), field=field)

    def with_formal_degree(self, formal_degree: int) -> "UniPoly":
        if self.is_zero():
            return self
        return UniPoly(self._c[: self.degree + 1], formal_degree, self.field)

    # -----------------------
    # properties
    # -----------------------
    @property
    def formal_degree(self) -> int:
        return self._formal

    @property
    def degree(self) -> int:
        """Actual degree; -1 for the zero polynomial."""
        for i in range(len(self._c) - 1, -1, -1):
            if self._c[i] != 0:
                return i
        return -1

    @property
    def coeffs(self) -> Tuple[Any, ...]:
        """Coefficients indexed 0..formal_degree."""
        return self._c

    def coeff(self, i: int) -> Any:
        return self._c[i] if 0 <= i < len(self._c) else self.field.zero

    @property
    def leading(self) -> Any:
        d = self.degree
        return self._c[d] if d >= 0 else self.field.zero

    def is_zero(self) -> bool:
        return self.degree < 0

    def max_magnitude(self) -> float:
        return max((abs(c) for c in self._c), default=0.0)

    def is_identically_zero(self, scale: Optional[float] = None) -> bool:
        """Exact test in the exact domain; |c| <= zero_rel * scale for every c in the float domain."""
        if self.field.exact:
            return self.is_zero()
        if scale is None:
            scale = self.max_magnitude()
        return all(self.field.is_zero(c, scale) for c in self._c)

    # -----------------------
    # ring operations
    # -----------------------
    def _lift(self, other: Any) -> "UniPoly":
        if isinstance(other, UniPoly):
            if other.field is not self.field:
                raise DomainError("polynomials over different coefficient domains")
            return other
        return UniPoly.constant(other, self.field)

    def __add__(self, other: Any) -> "UniPoly":
        o = self._lift(other)
        n = max(len(self._c), len(o._c))
        cs = [self.coeff(i) + o.coeff(i) for i in range(n)]
        return UniPoly(cs, max(self._formal, o._formal) if any(c != 0 for c in cs) else None, self.field)

    __radd__ = __add__

    def __neg__(self) -> "UniPoly":
        return UniPoly([-c for c in self._c], self._formal, self.field)

    def __sub__(self, other: Any) -> "UniPoly":
        return self + (-self._lift(other))

    def __rsub__(self, other: Any) -> "UniPoly":
        return self._lift(other) - self

    def __mul__(self, other: Any) -> "UniPoly":
        if not isinstance(other, UniPoly):
            return self.scale(other)
        o = self._lift(other)
        if self.is_zero() or o.is_zero():
            return UniPoly.zero(self.field)
        a, b = self._c[: self.degree + 1], o._c[: o.degree + 1]
        out = [self.field.zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
        return UniPoly(out, self._formal + o._formal, self.field)

    __rmul__ = __mul__

    def scale(self, c: Any) -> "UniPoly":
        c = self.field.coerce(c)
        return UniPoly([c * x for x in self._c], self._formal if c != 0 else None, self.field)

    def __pow__(self, e: int) -> "UniPoly":
        out = UniPoly.constant(1, self.field)
        for _ in range(e):
            out = out * self
        return out

    def eval(self, x: Any) -> Any:
        """Horner evaluation; exact in the exact domain."""
        acc = self.field.zero
        for c in reversed(self._c):
            acc = acc * x + c
        return acc

    __call__ = eval

    def derivative(self) -> "UniPoly":
        cs = [i * self._c[i] for i in range(1, len(self._c))]
        return UniPoly(cs, max(self._formal - 1, 0) if any(c != 0 for c in cs) else None, self.field)

    def divmod(self, divisor: "UniPoly") -> Tuple["UniPoly", "UniPoly"]:
        d = self._lift(divisor)
        if d.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        dd = d.degree
        rem = list(self._c[: self.degree + 1])
        if len(rem) <= dd:
            return UniPoly.zero(self.field), UniPoly(rem, field=self.field)
        lead_inv = self.field.one / d.leading
        quot = [self.field.zero] * (len(rem) - dd)
        for i in range(len(rem) - 1, dd - 1, -1):
            c = rem[i] * lead_inv
            quot[i - dd] = c
            if c == 0:
                continue
            for j in range(dd + 1):
                rem[i - dd + j] = rem[i - dd + j] - c * d._c[j]
            rem[i] = self.field.zero
        return UniPoly(quot, field=self.field), UniPoly(rem[:dd] if dd > 0 else [], field=self.field)

    def __floordiv__(self, other: "UniPoly") -> "UniPoly":
        return self.divmod(other)[0]

    def __mod__(self, other: "UniPoly") -> "UniPoly":
        return self.divmod(other)[1]

    def exquo(self, divisor: "UniPoly") -> "UniPoly":
        """Exact quotient; in the exact domain a nonzero remainder is an error."""
        q, r = self.divmod(divisor)
        if self.field.exact and not r.is_zero():
            raise ProdVecError("polynomial division is not exact")
        return q

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        return self.scale(self.field.one / self.leading)

    def conj(self) -> "UniPoly":
        return UniPoly([self.field.conj(c) for c in self._c], self._formal, self.field)

    def approx(self) -> "UniPoly":
        if not self.field.exact:
            return self
        return UniPoly([FLOAT.coerce(c) for c in self._c], self._formal, FLOAT)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, UniPoly):
            return NotImplemented
        n = max(self.degree, other.degree) + 1
        return all(self.coeff(i) == other.coeff(i) for i in range(n))

    def __repr__(self) -> str:
        terms = [f"({c})*z^{i}" for i, c in enumerate(self._c) if c != 0]
        return f"UniPoly[{self._formal}]({' + '.join(terms) or '0'})"

    def to_json(self) -> dict:
        return {"d": self._formal, "c": [InoNumericHelper.encode_scalar(c) for c in self._c]}

    @classmethod
    def from_json(cls, data: dict, field=EXACT) -> "UniPoly":
        cs = [InoNumericHelper.decode_scalar(v, field) for v in data["c"]]
        return cls(cs, data.get("d"), field)


class BiPoly:
    """Bivariate polynomial sum c[p][q] z^p w^q of formal bidegree at most (dz, dw)."""

    __slots__ = ("_c", "dz", "dw", "field")

    def __init__(self, grid: Sequence[Sequence[Any]], dz: Optional[int] = None, dw: Optional[int] = None, field=None) -> None:
        flat = [v for row in grid for v in row]
        field = _field_for(flat, field)
        rows = [[field.coerce(v) for v in row] for row in grid]
        gz = len(rows) - 1
        gw = max((len(r) for r in rows), default=1) - 1
        dz = max(gz, 0) if dz is None else int(dz)
        dw = max(gw, 0) if dw is None else int(dw)
        c = [[field.zero] * (dw + 1) for _ in range(dz + 1)]
        for p, row in enumerate(rows):
            for q, v in enumerate(row):
                if v == 0:
                    continue
                if p > dz or q > dw:
                    raise ProdVecError(f"coefficient of z^{p} w^{q} exceeds bidegree ({dz},{dw})")
                c[p][q] = v
        self._c = tuple(tuple(r) for r in c)
        self.dz = dz
        self.dw = dw
        self.field = field

    @classmethod
    def from_terms(cls, terms: dict, dz: int, dw: int, field=EXACT) -> "BiPoly":
        """Builds from {(p, q): coefficient}."""
        grid = [[field.zero] * (dw + 1) for _ in range(dz + 1)]
        for (p, q), v in terms.items():
            grid[p][q] = field.coerce(v)
        return cls(grid, dz, dw, field)

    @property
    def grid(self) -> Tuple[Tuple[Any, ...], ...]:
        return self._c

    @property
    def formal_bidegree(self) -> Tuple[int, int]:
        return self.dz, self.dw

    def coeff(self, p: int, q: int) -> Any:
        if 0 <= p <= self.dz and 0 <= q <= self.dw:
            return self._c[p][q]
        return self.field.zero

    def actual_bidegree(self) -> Tuple[int, int]:
        pz = max((p for p in range(self.dz + 1) for q in range(self.dw + 1) if self._c[p][q] != 0), default=-1)
        qw = max((q for p in range(self.dz + 1) for q in range(self.dw + 1) if self._c[p][q] != 0), default=-1)
        return pz, qw

    def is_zero(self) -> bool:
        return all(v == 0 for row in self._c for v in row)

    def max_magnitude(self) -> float:
        return max((abs(v) for row in self._c for v in row), default=0.0)

    def is_identically_zero(self, scale: Optional[float] = None) -> bool:
        if self.field.exact:
            return self.is_zero()
        if scale is None:
            scale = self.max_magnitude()
        return all(self.field.is_zero(v, scale) for row in self._c for v in row)

    def eval(self, z: Any, w: Any) -> Any:
        acc = self.field.zero
        for p in range(self.dz, -1, -1):
            row = self.field.zero
            for q in range(self.dw, -1, -1):
                row = row * w + self._c[p][q]
            acc = acc * z + row
        return acc

    __call__ = eval

    def eval_scale(self, z: complex, w: complex) -> float:
        """sum |c_pq| |z|^p |w|^q, the magnitude against which eval(z, w) is judged."""
        az, aw = abs(z), abs(w)
        return sum(abs(self._c[p][q]) * az ** p * aw ** q for p in range(self.dz + 1) for q in range(self.dw + 1))

    def derivative_z(self) -> "BiPoly":
        grid = [[p * self._c[p][q] for q in range(self.dw + 1)] for p in range(1, self.dz + 1)]
        return BiPoly(grid or [[self.field.zero]], max(self.dz - 1, 0), self.dw, self.field)

    def derivative_w(self) -> "BiPoly":
        grid = [[q * self._c[p][q] for q in range(1, self.dw + 1)] or [self.field.zero] for p in range(self.dz + 1)]
        return BiPoly(grid, self.dz, max(self.dw - 1, 0), self.field)

    def coeffs_in_w(self) -> List[UniPoly]:
        """P as a polynomial in w: entry q is the UniPoly in z multiplying w^q (formal degree dz)."""
        return [UniPoly([self._c[p][q] for p in range(self.dz + 1)], self.dz, self.field) for q in range(self.dw + 1)]

    def substitute_z(self, z0: Any) -> UniPoly:
        return UniPoly([u.eval(z0) for u in self.coeffs_in_w()], self.dw, self.field)

    def profile_z(self) -> UniPoly:
        """The univariate polynomial in z when P does not involve w."""
        if any(self._c[p][q] != 0 for p in range(self.dz + 1) for q in range(1, self.dw + 1)):
            raise ProdVecError("polynomial depends on w")
        return UniPoly([self._c[p][0] for p in range(self.dz + 1)], self.dz, self.field)

    def profile_w(self) -> UniPoly:
        """The univariate polynomial in w when P does not involve z."""
        if any(self._c[p][q] != 0 for p in range(1, self.dz + 1) for q in range(self.dw + 1)):
            raise ProdVecError("polynomial depends on z")
        return UniPoly([self._c[0][q] for q in range(self.dw + 1)], self.dw, self.field)

    def _check(self, other: "BiPoly") -> None:
        if other.field is not self.field:
            raise DomainError("polynomials over different coefficient domains")

    def __add__(self, other: "BiPoly") -> "BiPoly":
        self._check(other)
        dz, dw = max(self.dz, other.dz), max(self.dw, other.dw)
        grid = [[self.coeff(p, q) + other.coeff(p, q) for q in range(dw + 1)] for p in range(dz + 1)]
        return BiPoly(grid, dz, dw, self.field)

    def __neg__(self) -> "BiPoly":
        return BiPoly([[-v for v in row] for row in self._c], self.dz, self.dw, self.field)

    def __sub__(self, other: "BiPoly") -> "BiPoly":
        return self + (-other)

    def __mul__(self, other: Any) -> "BiPoly":
        if not isinstance(other, BiPoly):
            return self.scale(other)
        self._check(other)
        dz, dw = self.dz + other.dz, self.dw + other.dw
        grid = [[self.field.zero] * (dw + 1) for _ in range(dz + 1)]
        for p1 in range(self.dz + 1):
            for q1 in range(self.dw + 1):
                a = self._c[p1][q1]
                if a == 0:
                    continue
                for p2 in range(other.dz + 1):
                    for q2 in range(other.dw + 1):
                        b = other._c[p2][q2]
                        if b != 0:
                            grid[p1 + p2][q1 + q2] = grid[p1 + p2][q1 + q2] + a * b
        return BiPoly(grid, dz, dw, self.field)

    __rmul__ = __mul__

    def scale(self, c: Any) -> "BiPoly":
        c = self.field.coerce(c)
        return BiPoly([[c * v for v in row] for row in self._c], self.dz, self.dw, self.field)

    def approx(self) -> "BiPoly":
        if not self.field.exact:
            return self
        return BiPoly([[FLOAT.coerce(v) for v in row] for row in self._c], self.dz, self.dw, FLOAT)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BiPoly):
            return NotImplemented
        dz, dw = max(self.dz, other.dz), max(self.dw, other.dw)
        return all(self.coeff(p, q) == other.coeff(p, q) for p in range(dz + 1) for q in range(dw + 1))

    def __repr__(self) -> str:
        terms = [f"({v})*z^{p}*w^{q}" for p, row in enumerate(self._c) for q, v in enumerate(row) if v != 0]
        return f"BiPoly[{self.dz},{self.dw}]({' + '.join(terms) or '0'})"

    def to_json(self) -> dict:
        return {
            "dz": self.dz,
            "dw": self.dw,
            "c": [[InoNumericHelper.encode_scalar(v) for v in row] for row in self._c],
        }

    @classmethod
    def from_json(cls, data: dict, field=EXACT) -> "BiPoly":
        grid = [[InoNumericHelper.decode_scalar(v, field) for v in row] for row in data["c"]]
        return cls(grid, data.get("dz"), data.get("dw"), field)


class InoPolyHelper:
    # -----------------------
    # Sylvester matrix and resultants
    # -----------------------
    @staticmethod
    def _sylvester_rows(f: Sequence[Any], g: Sequence[Any], zero: Any) -> List[List[Any]]:
        """f, g given low -> high with lengths formal_degree + 1."""
        m, n = len(f) - 1, len(g) - 1
        if m == 0 and n == 0:
            raise DegenerateSylvesterError("Sylvester matrix needs a positive formal degree")
        size = m + n
        f_lead, g_lead = list(reversed(f)), list(reversed(g))
        rows = []
        for i in range(n):
            rows.append([zero] * i + f_lead + [zero] * (size - m - 1 - i))
        for i in range(m):
            rows.append([zero] * i + g_lead + [zero] * (size - n - 1 - i))
        return rows

    @staticmethod
    def sylvester_matrix(f: UniPoly, g: UniPoly) -> List[List[Any]]:
        """
        (m+n) x (m+n) matrix: n shifted rows of f's coefficients (leading first),
        then m shifted rows of g's, where m, n are the FORMAL degrees.
        """
        if f.field is not g.field:
            raise DomainError("polynomials over different coefficient domains")
        return InoPolyHelper._sylvester_rows(f.coeffs, g.coeffs, f.field.zero)

    @staticmethod
    def resultant(f: UniPoly, g: UniPoly) -> Any:
        return InoMatrixHelper.det(InoPolyHelper.sylvester_matrix(f, g), f.field)

    @staticmethod
    def resultant_degree_bound(P: BiPoly, Q: BiPoly) -> int:
        # Q's w-degree many rows of P, P's w-degree many rows of Q
        return Q.dw * P.dz + P.dw * Q.dz

    @staticmethod
    def resultant_w(P: BiPoly, Q: BiPoly, method: Optional[str] = None) -> UniPoly:
        """
        Res_w(P, Q) as a UniPoly in z, treating P and Q as polynomials in w
        with coefficients in k[z] and using their formal w-degrees.

        method "sylvester" (default in the exact domain) takes the fraction-free
        determinant of the Sylvester matrix over k[z]; "interpolate" (default in
        the float domain) evaluates scalar resultants at sample points of z and
        interpolates.
        """
        if P.field is not Q.field:
            raise DomainError("polynomials over different coefficient domains")
        if P.dw == 0 and Q.dw == 0:
            raise DegenerateSylvesterError("both polynomials are constant in w")
        field = P.field
        if method is None:
            method = "sylvester" if field.exact else "interpolate"
        bound = InoPolyHelper.resultant_degree_bound(P, Q)

        if method == "interpolate":
            return InoPolyHelper._resultant_w_interpolated(P, Q, bound)
        if method != "sylvester":
            raise ProdVecError(f"unknown resultant method {method!r}")
        if not field.exact:
            raise DomainError("Sylvester-over-k[z] resultants need the exact domain")

        rows = InoPolyHelper._sylvester_rows(P.coeffs_in_w(), Q.coeffs_in_w(), UniPoly.zero(field))
        R = InoMatrixHelper.bareiss_det(
            rows,
            UniPoly.zero(field),
            UniPoly.constant(1, field),
            lambda p: p.is_zero(),
            lambda a, b: a.exquo(b),
        )
        if R.degree > bound:
            raise ProdVecError(f"resultant degree {R.degree} exceeds its bound {bound}")
        logger.debug(f"Res_w: bidegrees {P.formal_bidegree}/{Q.formal_bidegree}, degree {R.degree} (bound {bound})")
        return R.with_formal_degree(bound)

    @staticmethod
    def _resultant_w_interpolated(P: BiPoly, Q: BiPoly, bound: int) -> UniPoly:
        field = P.field
        count = bound + 1
        if field.exact:
            xs = [GaussianRational(i) for i in range(count)]
        else:
            xs = [complex(np.exp(2j * np.pi * i / count)) for i in range(count)]
        # formal w-degrees are kept even where a specialised polynomial vanishes
        pw, qw = P.coeffs_in_w(), Q.coeffs_in_w()
        values = [
            InoMatrixHelper.det(
                InoPolyHelper._sylvester_rows([u.eval(x) for u in pw], [u.eval(x) for u in qw], field.zero),
                field,
            )
            for x in xs
        ]
        R = InoPolyHelper.interpolate(xs, values, field)
        return R.with_formal_degree(bound)

    @staticmethod
    def interpolate(xs: Sequence[Any], ys: Sequence[Any], field=EXACT) -> UniPoly:
        """Polynomial of degree < len(xs) through (xs[i], ys[i])."""
        n = len(xs)
        if field.exact:
            coef = [field.coerce(y) for y in ys]
            xs = [field.coerce(x) for x in xs]
            for j in range(1, n):
                for i in range(n - 1, j - 1, -1):
                    coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
            p = UniPoly.constant(coef[n - 1], field)
            for i in range(n - 2, -1, -1):
                p = p * UniPoly((-xs[i], 1), field=field) + coef[i]
            return p
        V = np.vander(np.array(xs, dtype=complex), n, increasing=True)
        c = np.linalg.solve(V, np.array(ys, dtype=complex))
        return UniPoly([complex(v) for v in c], field=FLOAT)

    @staticmethod
    def conjugate_poly(P: BiPoly) -> BiPoly:
        """Q with Q[p][q] = conj(P[q][p]), i.e. Q(z, w) = conj(P(conj w, conj z))."""
        f = P.field
        grid = [[f.conj(P.coeff(q, p)) for q in range(P.dz + 1)] for p in range(P.dw + 1)]
        return BiPoly(grid, P.dw, P.dz, f)

    @staticmethod
    def bezout_cofactors(f: UniPoly, g: UniPoly) -> Tuple[UniPoly, UniPoly, Any]:
        """
        (A, B, Res(f, g)) with A f + B g = Res(f, g), deg A < formal deg g and
        deg B < formal deg f. The cofactor vector is the last column of the
        Sylvester matrix's cofactor matrix (Cramer's rule).
        """
        field = f.field
        S = InoPolyHelper.sylvester_matrix(f, g)
        N = len(S)
        m, n = f.formal_degree, g.formal_degree
        u = []
        for i in range(N):
            sub = [row[: N - 1] for r, row in enumerate(S) if r != i]
            cof = InoMatrixHelper.det(sub, field)
            u.append(cof if (i + N - 1) % 2 == 0 else -cof)
        A = UniPoly([u[n - 1 - p] for p in range(n)], field=field) if n else UniPoly.zero(field)
        B = UniPoly([u[n + m - 1 - p] for p in range(m)], field=field) if m else UniPoly.zero(field)
        res = InoMatrixHelper.det(S, field)
        return A, B, res

    # -----------------------
    # gcd and square-free parts
    # -----------------------
    @staticmethod
    def gcd(a: UniPoly, b: UniPoly) -> UniPoly:
        """Monic gcd by the Euclidean algorithm (exact domain)."""
        while not b.is_zero():
            a, b = b, (a % b).monic()
        return a.monic()

    @staticmethod
    def square_free_decomposition(p: UniPoly) -> List[Tuple[UniPoly, int]]:
        """Yun's algorithm: [(a_i, i)] with p = lc * prod a_i^i, each a_i square-free and monic."""
        if p.is_zero():
            raise ProdVecError("square-free decomposition of the zero polynomial")
        out: List[Tuple[UniPoly, int]] = []
        if p.degree == 0:
            return out
        dp = p.derivative()
        a0 = InoPolyHelper.gcd(p, dp)
        b = p.exquo(a0)
        c = dp.exquo(a0)
        d = c - b.derivative()
        i = 1
        while b.degree > 0:
            a = InoPolyHelper.gcd(b, d)
            b = b.exquo(a)
            c = d.exquo(a)
            d = c - b.derivative()
            if a.degree > 0:
                out.append((a.monic(), i))
            i += 1
        return out
