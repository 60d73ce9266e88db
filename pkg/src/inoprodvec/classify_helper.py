"""
Regime trichotomy, upper bounds, the elimination stage shared with the
counter, and the genericity test of (D, E).

The genericity test: eliminate w from P(z, w) = Q(z, w) = 0 with
Q(z, w) = conj(P(conj w, conj z)); if Res_w(P, Q) vanishes identically the
pair is not generic. Otherwise, at every root z of the resultant (and at the
point x = (1, 0)) some (n-1) x (n-1) minor of L(z, conj z) must be nonzero.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field as dc_field
from enum import Enum
from math import comb
from typing import Any, Dict, List, Optional, Tuple

from .config_helper import Tolerances
from .matrix_helper import InoMatrixHelper
from .numeric_helper import EXACT, FLOAT, DomainError, GaussianRational, InoNumericHelper
from .poly_helper import BiPoly, InoPolyHelper, UniPoly
from .root_helper import InoRootHelper, RootCluster
from .subspace_helper import InoSubspaceHelper, LinearFormMatrix, RegimeError, SubspacePair, regime_message
from .util_helper import InoUtilHelper, ProdVecError, ino_err, ino_ok

logger = logging.getLogger(__name__)

INFINITY = "inf"


class IndeterminateError(ProdVecError):
    """A tolerance test landed in its ambiguous band."""
    kind = "indeterminate"


class Regime(str, Enum):
    INFINITE = "InfiniteRegime"
    BOUNDARY = "Boundary"
    EMPTY = "GenericallyEmptyRegime"


@dataclass(frozen=True)
class RegimeReport:
    m: int
    n: int
    k: int
    l: int
    regime: Regime
    existence_coefficient: int

    @property
    def existence_nonzero(self) -> bool:
        return self.existence_coefficient != 0

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "k": self.k,
            "l": self.l,
            "regime": self.regime.value,
            "existence_coefficient": self.existence_coefficient,
            "existence_nonzero": self.existence_nonzero,
        }


@dataclass(frozen=True)
class Verdict:
    status: str
    reason: Optional[str] = None

    IN_U = "InU"
    NOT_IN_U = "NotInU"
    INDETERMINATE = "Indeterminate"

    @classmethod
    def in_u(cls) -> "Verdict":
        return cls(cls.IN_U)

    @classmethod
    def not_in_u(cls, reason: str) -> "Verdict":
        return cls(cls.NOT_IN_U, reason)

    @classmethod
    def indeterminate(cls, detail: str) -> "Verdict":
        return cls(cls.INDETERMINATE, detail)

    @property
    def is_in_u(self) -> bool:
        return self.status == self.IN_U

    def __str__(self) -> str:
        return f"{self.status}({self.reason})" if self.reason else self.status

    def to_json(self) -> dict:
        return {"verdict": self.status, "reason": self.reason}


@dataclass(frozen=True)
class MinorWitness:
    """The largest (n-1) x (n-1) minor of L at a point, relative to (entry scale)^(n-1)."""

    point: str
    rows: Tuple[int, ...]
    cols: Tuple[int, ...]
    value: Any
    relative: float

    def to_json(self) -> dict:
        return {
            "point": self.point,
            "rows": list(self.rows),
            "cols": list(self.cols),
            "value": InoNumericHelper.encode_scalar(self.value),
            "relative": self.relative,
        }


@dataclass(frozen=True)
class RangeObstruction:
    obstructed: bool
    count: int
    dim_d: int
    dim_e: int
    explanation: str

    def to_json(self) -> dict:
        return {
            "obstructed": self.obstructed,
            "count": self.count,
            "dim_D": self.dim_d,
            "dim_E": self.dim_e,
            "explanation": self.explanation,
        }


@dataclass(frozen=True)
class Elimination:
    """Everything the classifier and the counter share for one pair (m = 2, k + l = n)."""

    pair: SubspacePair
    L: LinearFormMatrix
    P: BiPoly
    Q: BiPoly
    R: Optional[UniPoly]
    resultant_zero: bool
    resultant_degree: Optional[int]
    roots: Tuple[RootCluster, ...]
    segre: bool

    def point(self, cluster: RootCluster) -> Any:
        """The root as a scalar of the pair's field when exact, else a complex."""
        if cluster.exact is not None and self.pair.field.exact:
            return cluster.exact
        return cluster.center


@dataclass(frozen=True)
class ClassificationReport:
    regime: RegimeReport
    verdict: Optional[Verdict]
    bounds: Dict[str, Optional[int]]
    resultant_degree: Optional[int] = None
    roots_checked: int = 0
    witnesses: Tuple[MinorWitness, ...] = dc_field(default_factory=tuple)
    range_obstruction: Optional[RangeObstruction] = None

    def to_json(self) -> dict:
        out = self.regime.to_json()
        out.update(self.verdict.to_json() if self.verdict else {"verdict": None, "reason": None})
        out["bounds"] = dict(self.bounds)
        out["resultant_degree"] = self.resultant_degree
        out["roots_checked"] = self.roots_checked
        out["witnesses"] = [w.to_json() for w in self.witnesses]
        out["range_obstruction"] = self.range_obstruction.to_json() if self.range_obstruction else None
        return out


def point_label(z: Any) -> str:
    if isinstance(z, GaussianRational):
        return str(z)
    z = complex(z)
    return f"{z.real:.12g}{z.imag:+.12g}i"


class InoClassifyHelper:
    # -----------------------
    # regimes and bounds
    # -----------------------
    @staticmethod
    def existence_coefficient(m: int, k: int, l: int) -> int:
        """sum over r + s = m - 1 of (-1)^r C(k, r) C(l, s)"""
        return sum((-1) ** r * comb(k, r) * comb(l, m - 1 - r) for r in range(m))

    @staticmethod
    def kiem_regime(m: int, n: int, k: int, l: int) -> RegimeReport:
        if not (0 <= k <= m * n and 0 <= l <= m * n):
            raise ProdVecError(f"❌ need 0 <= k, l <= mn = {m * n}, got k={k}, l={l}")
        target = m + n - 2
        if k + l < target:
            regime = Regime.INFINITE
        elif k + l == target:
            regime = Regime.BOUNDARY
        else:
            regime = Regime.EMPTY
        return RegimeReport(m, n, k, l, regime, InoClassifyHelper.existence_coefficient(m, k, l))

    @staticmethod
    def _check_dims(m: int, n: int) -> None:
        if m < 2 or n < 2:
            raise ProdVecError(f"❌ need m, n >= 2, got m={m}, n={n}")

    @staticmethod
    def milnor_bound(m: int, n: int) -> int:
        InoClassifyHelper._check_dims(m, n)
        return n * (2 * n - 1) ** (2 * m - 2)

    @staticmethod
    def segre_degree(m: int, n: int) -> int:
        InoClassifyHelper._check_dims(m, n)
        return comb(m + n - 2, m - 1)

    @staticmethod
    def k2l2_bound(k: int, l: int) -> int:
        if k < 0 or l < 0:
            raise ProdVecError(f"❌ need k, l >= 0, got k={k}, l={l}")
        return k * k + l * l

    @staticmethod
    def bounds(m: int, n: int, k: int, l: int) -> Dict[str, Optional[int]]:
        """Applicable bounds for a boundary cell; k2l2 only for m = 2, segre only when k·l = 0."""
        milnor = InoClassifyHelper.milnor_bound(m, n)
        k2l2 = InoClassifyHelper.k2l2_bound(k, l) if m == 2 else None
        segre = InoClassifyHelper.segre_degree(m, n) if k * l == 0 else None
        if segre is not None:
            effective = segre
        elif k2l2 is not None:
            effective = k2l2
        else:
            effective = milnor
        return {"milnor": milnor, "k2l2": k2l2, "segre": segre, "effective": effective}

    @staticmethod
    def bounds_table(m: int, n: int) -> List[Dict[str, Optional[int]]]:
        InoClassifyHelper._check_dims(m, n)
        total = m + n - 2
        rows = []
        for k in range(total + 1):
            l = total - k
            if k > m * n or l > m * n:
                continue
            rows.append({"k": k, "l": l, **InoClassifyHelper.bounds(m, n, k, l)})
        return rows

    @staticmethod
    def range_obstruction(count: int, pair: SubspacePair) -> RangeObstruction:
        if count is None or count < 0:
            raise ProdVecError("❌ range obstruction needs a certified finite count")
        dim_d, dim_e = pair.dim_d, pair.dim_e
        reasons = []
        if count < dim_d:
            reasons.append(f"only {count} product vectors but the dimension of D is {dim_d}: "
                           f"no collection of product vectors spans D")
        if count < dim_e:
            reasons.append(f"only {count} partial conjugates but the dimension of E is {dim_e}: "
                           f"they cannot span E")
        if reasons:
            return RangeObstruction(True, count, dim_d, dim_e, "; ".join(reasons))
        return RangeObstruction(False, count, dim_d, dim_e,
                                f"{count} product vectors can match dim D = {dim_d} and dim E = {dim_e}")

    # -----------------------
    # elimination
    # -----------------------
    @staticmethod
    def _input_scale(pair: SubspacePair) -> float:
        return max((abs(v) for A in pair.d_perp + pair.e_perp for row in A for v in row), default=0.0) or 1.0

    @staticmethod
    def _vanishes(p: UniPoly, scale: float, tol: Tolerances) -> bool:
        if p.field.exact:
            return p.is_zero()
        return all(abs(c) <= tol.zero_rel * scale for c in p.coeffs)

    @staticmethod
    def eliminate(pair: SubspacePair, tolerances: Optional[Tolerances] = None) -> Elimination:
        tol = tolerances or Tolerances()
        L = InoSubspaceHelper.build_linear_system(pair)
        if pair.m != 2:
            raise DomainError(f"❌ elimination needs m = 2, got m = {pair.m}")
        n, k, l = pair.n, pair.k, pair.l
        P = InoSubspaceHelper.det_poly_2xn(L)
        Q = InoPolyHelper.conjugate_poly(P)
        p_scale = InoClassifyHelper._input_scale(pair) ** n

        if k * l == 0:
            # P involves a single variable; its roots are the candidates directly
            profile = P.profile_z() if l == 0 else P.profile_w()
            if InoClassifyHelper._vanishes(profile, p_scale, tol):
                logger.info("univariate profile vanishes identically")
                return Elimination(pair, L, P, Q, None, True, None, (), True)
            clusters = InoRootHelper.roots(profile, tol.cluster)
            if l != 0:
                clusters = [
                    RootCluster(c.center.conjugate(), c.radius, c.multiplicity, c.residual,
                                c.exact.conjugate() if c.exact is not None else None)
                    for c in clusters
                ]
                clusters.sort(key=lambda c: (c.center.real, c.center.imag))
            degree = n * profile.degree
            logger.debug(f"univariate path: profile degree {profile.degree}, {len(clusters)} roots")
            return Elimination(pair, L, P, Q, None, False, degree, tuple(clusters), True)

        R = InoPolyHelper.resultant_w(P, Q)
        if InoClassifyHelper._vanishes(R, p_scale ** n, tol):
            logger.info("Res_w(P, Q) vanishes identically")
            return Elimination(pair, L, P, Q, R, True, None, (), False)
        clusters = InoRootHelper.roots(R, tol.cluster)
        logger.debug(f"resultant degree {R.degree} (bound {k * k + l * l}), {len(clusters)} distinct roots")
        return Elimination(pair, L, P, Q, R, False, R.degree, tuple(clusters), False)

    # -----------------------
    # rank tests
    # -----------------------
    @staticmethod
    def minor_witness(matrix: List[List[Any]], label: str, exact: bool) -> MinorWitness:
        """Largest (n-1)-minor in magnitude (first nonzero one when exact)."""
        n = len(matrix[0])
        size = n - 1
        field = EXACT if exact else FLOAT
        if not exact:
            matrix = [[complex(v) for v in r] for r in matrix]
        scale = max(abs(v) for r in matrix for v in r)
        best: Optional[MinorWitness] = None
        for rows, cols, value in InoMatrixHelper.minors(matrix, size, field):
            rel = abs(value) / scale ** size if scale else 0.0
            if exact and value != 0:
                return MinorWitness(label, rows, cols, value, rel)
            if best is None or rel > best.relative:
                best = MinorWitness(label, rows, cols, value, rel)
        return best

    @staticmethod
    def rank_status(matrix: List[List[Any]], label: str, exact: bool, tol: Tolerances) -> Tuple[str, MinorWitness]:
        """("ok" | "deficient" | "ambiguous", witness) for "some (n-1)-minor is nonzero"."""
        w = InoClassifyHelper.minor_witness(matrix, label, exact)
        if exact:
            return ("ok" if w.value != 0 else "deficient"), w
        if w.relative <= tol.tol_minor:
            return "deficient", w
        if w.relative <= tol.tol_minor * tol.minor_band:
            return "ambiguous", w
        return "ok", w

    @staticmethod
    def decide(elim: Elimination, tolerances: Optional[Tolerances] = None) -> Tuple[Verdict, Tuple[MinorWitness, ...]]:
        tol = tolerances or Tolerances()
        if elim.resultant_zero:
            return Verdict.not_in_u("ResultantIdenticallyZero"), ()
        L, exact_pair = elim.L, elim.pair.field.exact
        points: List[Tuple[str, List[Any], bool]] = []
        for c in elim.roots:
            z = elim.point(c)
            exact = isinstance(z, GaussianRational)
            points.append((point_label(z), [z, EXACT.one if exact else 1.0], exact))
        points.append((INFINITY, [1, 0], exact_pair))

        witnesses, deficient, ambiguous = [], [], []
        for label, x, exact in points:
            M = L.evaluate(x) if exact else L.evaluate(x, field=FLOAT)
            status, w = InoClassifyHelper.rank_status(M, label, exact, tol)
            witnesses.append(w)
            if status == "deficient":
                deficient.append(label)
            elif status == "ambiguous":
                ambiguous.append(label)

        if deficient:
            logger.info(f"all (n-1)-minors vanish at {deficient[0]}")
            return Verdict.not_in_u(f"RankDefectAtRoot({deficient[0]})"), tuple(witnesses)
        if ambiguous:
            raise IndeterminateError(f"❌ (n-1)-minors at {ambiguous[0]} fall in the ambiguous band "
                                     f"({tol.tol_minor:g} .. {tol.tol_minor * tol.minor_band:g})")
        return Verdict.in_u(), tuple(witnesses)

    # -----------------------
    # reports
    # -----------------------
    @staticmethod
    def classify(pair: SubspacePair, tolerances: Optional[Tolerances] = None) -> ClassificationReport:
        """Raising variant of algorithm1_classify."""
        regime = InoClassifyHelper.kiem_regime(pair.m, pair.n, pair.k, pair.l)
        if regime.regime is not Regime.BOUNDARY:
            raise RegimeError(f"❌ {regime_message(pair.m, pair.n, pair.k, pair.l)}")
        elim = InoClassifyHelper.eliminate(pair, tolerances)
        verdict, witnesses = InoClassifyHelper.decide(elim, tolerances)
        return ClassificationReport(
            regime,
            verdict,
            InoClassifyHelper.bounds(pair.m, pair.n, pair.k, pair.l),
            elim.resultant_degree,
            len(elim.roots),
            witnesses,
        )

    @staticmethod
    def algorithm1_classify(pair: SubspacePair, tolerances: Optional[Tolerances] = None) -> dict:
        regime = InoClassifyHelper.kiem_regime(pair.m, pair.n, pair.k, pair.l)
        bounds = InoClassifyHelper.bounds(pair.m, pair.n, pair.k, pair.l) if regime.regime is Regime.BOUNDARY else {}
        try:
            report = InoClassifyHelper.classify(pair, tolerances)
        except IndeterminateError as e:
            report = ClassificationReport(regime, Verdict.indeterminate(str(e)), bounds)
            return ino_err(str(e), error_kind="indeterminate", report=report)
        except ProdVecError as e:
            return ino_err(str(e), error_kind=InoUtilHelper.error_kind(e),
                           report=ClassificationReport(regime, None, bounds))
        return ino_ok(f"✅ {report.verdict}", report=report)
