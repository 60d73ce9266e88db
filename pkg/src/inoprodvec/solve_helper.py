"""
Counting product vectors x⊗y ∈ D with x̄⊗y ∈ E for m = 2.

Candidates are the roots z of the eliminated polynomial; a candidate survives
when P(z, conj z) = 0, and then y spans the kernel of L(z, 1). The point
x = (1, 0) lies outside the chart x2 = 1 and is checked on its own.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field as dc_field
from typing import Any, List, Optional, Sequence, Tuple

import numpy as np

from .classify_helper import (
    INFINITY,
    Elimination,
    IndeterminateError,
    InoClassifyHelper,
    MinorWitness,
    RangeObstruction,
    Verdict,
    point_label,
)
from .config_helper import Tolerances
from .matrix_helper import InoMatrixHelper
from .numeric_helper import EXACT, FLOAT, DomainError, GaussianRational, InoNumericHelper
from .poly_helper import BiPoly
from .root_helper import InoRootHelper
from .subspace_helper import InoSubspaceHelper, SubspacePair
from .util_helper import InoUtilHelper, ProdVecError, ino_err, ino_ok

logger = logging.getLogger(__name__)


class RankError(ProdVecError):
    """L(x) does not have rank exactly n - 1: `defect` is "full" or "deficient"."""

    kind = "validation"

    def __init__(self, msg: str, defect: str, rank: int) -> None:
        super().__init__(msg)
        self.defect = defect
        self.rank = rank


@dataclass(frozen=True)
class ProductVectorSolution:
    x: Tuple[complex, ...]
    y: Tuple[complex, ...]
    residual_d: float
    residual_e: float
    rank_certificate: MinorWitness
    at_infinity: bool = False

    def to_json(self) -> dict:
        enc = InoNumericHelper.encode_scalar
        return {
            "x": [enc(v) for v in self.x],
            "y": [enc(v) for v in self.y],
            "residual_D": self.residual_d,
            "residual_E": self.residual_e,
            "at_infinity": self.at_infinity,
            "rank_certificate": self.rank_certificate.to_json(),
        }


@dataclass(frozen=True)
class CountCertificate:
    m: int
    n: int
    k: int
    l: int
    verdict: Verdict
    count: Optional[int]
    solutions: Tuple[ProductVectorSolution, ...]
    resultant_degree: Optional[int]
    k2l2_bound: int
    bound_applies: bool
    chart_at_infinity: bool
    rejected_candidates: int = 0
    caveat: Optional[str] = None
    range_obstruction: Optional[RangeObstruction] = None
    witnesses: Tuple[MinorWitness, ...] = dc_field(default_factory=tuple)

    def to_json(self) -> dict:
        out = {"m": self.m, "n": self.n, "k": self.k, "l": self.l}
        out.update(self.verdict.to_json())
        out.update({
            "count": self.count,
            "k2l2_bound": self.k2l2_bound,
            "bound_applies": self.bound_applies,
            "resultant_degree": self.resultant_degree,
            "chart_at_infinity": self.chart_at_infinity,
            "rejected_candidates": self.rejected_candidates,
            "caveat": self.caveat,
            "solutions": [s.to_json() for s in self.solutions],
            "range_obstruction": self.range_obstruction.to_json() if self.range_obstruction else None,
        })
        return out


class InoSolveHelper:
    # -----------------------
    # projective points
    # -----------------------
    @staticmethod
    def normalize(v: Sequence[Any]) -> Tuple[complex, ...]:
        """Unit vector whose first non-negligible coordinate is real positive."""
        a = np.array([complex(c) for c in v], dtype=complex)
        norm = np.linalg.norm(a)
        if norm == 0.0:
            raise ProdVecError("❌ cannot normalize the zero vector")
        a = a / norm
        lead = next(c for c in a if abs(c) > 1e-12)
        a = a * (abs(lead) / lead)
        return tuple(complex(c) for c in a)

    @staticmethod
    def projective_distance(u: Sequence[complex], v: Sequence[complex]) -> float:
        """sqrt(1 - |<u, v>|^2) for unit vectors."""
        ip = abs(np.vdot(np.array(u, dtype=complex), np.array(v, dtype=complex)))
        return math.sqrt(max(0.0, 1.0 - ip * ip))

    @staticmethod
    def dedup(solutions: Sequence[ProductVectorSolution], tol: float = 1e-6) -> List[ProductVectorSolution]:
        kept: List[ProductVectorSolution] = []
        for s in solutions:
            if any(
                InoSolveHelper.projective_distance(s.x, t.x) < tol and InoSolveHelper.projective_distance(s.y, t.y) < tol
                for t in kept
            ):
                continue
            kept.append(s)
        return kept

    # -----------------------
    # candidate tests
    # -----------------------
    @staticmethod
    def conjugate_consistent(P: BiPoly, z: Any, tol: Tolerances) -> bool:
        """P(z, conj z) = 0, exactly for exact z, else relative to sum |c_pq| |z|^(p+q)."""
        if isinstance(z, GaussianRational) and P.field.exact:
            return not P.eval(z, z.conjugate())
        Pf = P.approx()
        z = complex(z)
        value = abs(Pf.eval(z, z.conjugate()))
        scale = Pf.eval_scale(z, z.conjugate())
        ratio = value / scale if scale else 0.0
        if ratio <= tol.tol_conj:
            return True
        if ratio <= tol.tol_conj * tol.conj_band:
            raise IndeterminateError(
                f"❌ conjugate consistency at z = {point_label(z)} is ambiguous (relative |P| = {ratio:.3g})"
            )
        return False

    @staticmethod
    def polish_conjugate_root(P: BiPoly, z: complex, iters: int = 5) -> complex:
        """Real Newton on (Re, Im) of P(a + ib, a - ib); keeps the best iterate."""
        Pf = P.approx()
        Pz, Pw = Pf.derivative_z(), Pf.derivative_w()

        def _res(c: complex) -> float:
            s = Pf.eval_scale(c, c.conjugate())
            return abs(Pf.eval(c, c.conjugate())) / s if s else 0.0

        best, best_res = z, _res(z)
        for _ in range(iters):
            zb = z.conjugate()
            F = Pf.eval(z, zb)
            dz, dw = Pz.eval(z, zb), Pw.eval(z, zb)
            da, db = dz + dw, 1j * (dz - dw)
            J = np.array([[da.real, db.real], [da.imag, db.imag]])
            if abs(np.linalg.det(J)) < 1e-300:
                break
            step = np.linalg.solve(J, -np.array([F.real, F.imag]))
            z = complex(z.real + step[0], z.imag + step[1])
            res = _res(z)
            if res < best_res:
                best, best_res = z, res
            if best_res == 0.0:
                break
        return best

    @staticmethod
    def null_space_y(Lx: Sequence[Sequence[Any]], tol_rank: float = 1e-8) -> Tuple[complex, ...]:
        """Unit y spanning the kernel of the n x n matrix Lx, which must have rank n - 1."""
        n = len(Lx[0])
        exact = all(isinstance(v, GaussianRational) for r in Lx for v in r)
        field = EXACT if exact else FLOAT
        rows = Lx if exact else [[complex(v) for v in r] for r in Lx]
        rank = InoMatrixHelper.rank(rows, field, tol_rank)
        if rank == n:
            raise RankError(f"❌ matrix has full rank {n}: no y", "full", rank)
        if rank < n - 1:
            raise RankError(f"❌ matrix rank {rank} < {n - 1}: y is not unique", "deficient", rank)
        basis = InoMatrixHelper.null_space(rows, field, tol_rank)
        if len(basis) != 1:
            raise RankError(f"❌ kernel dimension {len(basis)} != 1", "deficient", n - len(basis))
        y = InoSolveHelper.normalize(basis[0])
        A = np.array([[complex(v) for v in r] for r in Lx], dtype=complex)
        scale = float(np.max(np.abs(A))) or 1.0
        resid = float(np.max(np.abs(A @ np.array(y))))
        if resid > 1e-9 * scale:
            logger.warning(f"kernel residual {resid:.3g} above 1e-9 x {scale:.3g}")
        return y

    # -----------------------
    # pipeline
    # -----------------------
    @staticmethod
    def _solution(pair: SubspacePair, L, x_point: Sequence[Any], label: str, exact: bool,
                  tol: Tolerances, at_infinity: bool = False) -> ProductVectorSolution:
        Lx = L.evaluate(x_point) if exact else L.evaluate(x_point, field=FLOAT)
        y = InoSolveHelper.null_space_y(Lx, tol.tol_rank)
        x = InoSolveHelper.normalize(x_point)
        res_d, res_e = pair.residuals(x, y)
        witness = InoClassifyHelper.minor_witness(Lx, label, exact)
        return ProductVectorSolution(x, y, res_d, res_e, witness, at_infinity)

    @staticmethod
    def certify(pair: SubspacePair, tolerances: Optional[Tolerances] = None) -> CountCertificate:
        """Raising variant of count_product_vectors_2xn."""
        tol = tolerances or Tolerances()
        if pair.m != 2:
            raise DomainError(f"❌ counting is implemented for m = 2 only, got m = {pair.m}")
        elim: Elimination = InoClassifyHelper.eliminate(pair, tol)
        verdict, witnesses = InoClassifyHelper.decide(elim, tol)
        n, k, l = pair.n, pair.k, pair.l
        bound = InoClassifyHelper.k2l2_bound(k, l)

        if elim.resultant_zero:
            return CountCertificate(
                2, n, k, l, verdict, None, (), None, bound, False, False,
                caveat="resultant vanishes identically: the solution set is infinite or undetermined",
                witnesses=witnesses,
            )

        solutions: List[ProductVectorSolution] = []
        rejected = 0
        unbounded_at: Optional[str] = None
        for cluster in elim.roots:
            z = elim.point(cluster)
            exact = isinstance(z, GaussianRational)
            if not elim.segre and not InoSolveHelper.conjugate_consistent(elim.P, z, tol):
                rejected += 1
                continue
            if not exact:
                z = InoSolveHelper.polish_conjugate_root(elim.P, complex(z))
            label = point_label(z)
            try:
                solutions.append(InoSolveHelper._solution(pair, elim.L, [z, EXACT.one if exact else 1.0], label, exact, tol))
            except RankError as e:
                if e.defect == "full":
                    logger.debug(f"candidate {label} rejected: L has full rank")
                    rejected += 1
                else:
                    unbounded_at = unbounded_at or label

        chart_at_infinity = False
        exact_pair = pair.field.exact
        L_inf = elim.L.evaluate([1, 0]) if exact_pair else elim.L.evaluate([1, 0], field=FLOAT)
        rank_inf = InoMatrixHelper.rank(L_inf, EXACT if exact_pair else FLOAT, tol.tol_rank)
        if rank_inf == n - 1:
            solutions.append(InoSolveHelper._solution(pair, elim.L, [1, 0], INFINITY, exact_pair, tol, True))
            chart_at_infinity = True
        elif rank_inf < n - 1:
            unbounded_at = unbounded_at or INFINITY

        solutions = InoSolveHelper.dedup(solutions, tol.dedup)
        caveat = None
        count: Optional[int] = len(solutions)
        if unbounded_at is not None:
            count = None
            caveat = f"kernel of L has dimension >= 2 at {unbounded_at}: infinitely many product vectors"
        elif not verdict.is_in_u:
            caveat = "pair is not generic: the finite count is reported without the k^2 + l^2 guarantee"
        elif count > bound:
            logger.warning(f"certified count {count} exceeds k^2 + l^2 = {bound}")

        for s in solutions:
            if max(s.residual_d, s.residual_e) > tol.residual:
                logger.warning(f"solution residuals {s.residual_d:.3g}/{s.residual_e:.3g} above {tol.residual:g}")

        obstruction = InoClassifyHelper.range_obstruction(count, pair) if count is not None else None
        logger.info(f"count {count}, verdict {verdict}, {rejected} rejected candidates")
        return CountCertificate(
            2, n, k, l, verdict, count, tuple(solutions), elim.resultant_degree, bound,
            verdict.is_in_u and count is not None, chart_at_infinity, rejected, caveat, obstruction, witnesses,
        )

    @staticmethod
    def count_product_vectors_2xn(pair: SubspacePair, tolerances: Optional[Tolerances] = None) -> dict:
        try:
            cert = InoSolveHelper.certify(pair, tolerances)
        except ProdVecError as e:
            return ino_err(str(e), error_kind=InoUtilHelper.error_kind(e), certificate=None)
        return ino_ok(f"✅ {cert.count} product vectors, {cert.verdict}", certificate=cert)

    # -----------------------
    # independent oracle
    # -----------------------
    @staticmethod
    def _profile_bound(P: BiPoly) -> float:
        """Cauchy bound of the polynomial whose t-th coefficient is sum_{p+q=t} |c_pq|."""
        groups = [0.0] * (P.dz + P.dw + 1)
        for p in range(P.dz + 1):
            for q in range(P.dw + 1):
                groups[p + q] += abs(P.coeff(p, q))
        top = max((t for t, g in enumerate(groups) if g > 0), default=0)
        if top == 0:
            return 1.0
        return 1.0 + max(groups[:top]) / groups[top]

    @staticmethod
    def brute_force_count_2xn(
        pair: SubspacePair,
        grid_density: int = 48,
        newton_iters: int = 60,
        tolerances: Optional[Tolerances] = None,
    ) -> int:
        """
        Counts solutions without solving the resultant: Newton on
        (Re, Im) of P(z, conj z) from a Cartesian and a log-polar grid of
        starting points, then clustering and the rank test at each limit.
        """
        tol = tolerances or Tolerances()
        if pair.m != 2:
            raise DomainError(f"❌ brute force counting needs m = 2, got m = {pair.m}")
        L = InoSubspaceHelper.build_linear_system(pair)
        P = InoSubspaceHelper.det_poly_2xn(L).approx()
        n = pair.n

        radius = InoSolveHelper._profile_bound(P)
        if pair.k * pair.l != 0:
            R = InoClassifyHelper.eliminate(pair, tol).R
            if R is not None and not R.is_zero():
                radius = max(radius, InoRootHelper.cauchy_bound(R))
        radius = 1.5 * max(radius, 1.0)

        C = np.array([[complex(v) for v in row] for row in P.grid], dtype=complex)
        dz, dw = P.dz, P.dw
        ep, eq = np.arange(dz + 1), np.arange(dw + 1)
        Cz = C[1:] * ep[1:, None]
        Cw = C[:, 1:] * eq[None, 1:]
        absC = np.abs(C)

        def _eval(z):
            w = np.conj(z)
            Zp = z[:, None] ** ep[None, :]
            Wq = w[:, None] ** eq[None, :]
            val = np.einsum("np,pq,nq->n", Zp, C, Wq)
            Pz = np.einsum("np,pq,nq->n", Zp[:, :dz], Cz, Wq)
            Pw = np.einsum("np,pq,nq->n", Zp, Cw, Wq[:, :dw])
            scale = np.einsum("np,pq,nq->n", np.abs(Zp), absC, np.abs(Wq))
            return val, Pz, Pw, scale

        side = np.linspace(-radius, radius, grid_density)
        cart = (side[:, None] + 1j * side[None, :]).ravel()
        radii = np.geomspace(radius * 1e-3, radius, grid_density)
        angles = (np.arange(grid_density) + 0.5) * 2 * np.pi / grid_density
        polar = (radii[:, None] * np.exp(1j * angles[None, :])).ravel()
        z = np.concatenate([cart, polar, [0j]])
        alive = np.ones(z.shape, dtype=bool)

        for _ in range(newton_iters):
            val, Pz, Pw, _scale = _eval(z)
            da, db = Pz + Pw, 1j * (Pz - Pw)
            j00, j01, j10, j11 = da.real, db.real, da.imag, db.imag
            det = j00 * j11 - j01 * j10
            ok = alive & (np.abs(det) > 1e-300)
            with np.errstate(divide="ignore", invalid="ignore"):
                sa = np.where(ok, (-j11 * val.real + j01 * val.imag) / det, 0.0)
                sb = np.where(ok, (j10 * val.real - j00 * val.imag) / det, 0.0)
            step = sa + 1j * sb
            big = np.abs(step) > radius
            step[big] = step[big] / np.abs(step[big]) * radius
            z = z + step
            alive &= np.isfinite(z) & (np.abs(z) < 4 * radius)
            z[~alive] = 0j

        val, _, _, scale = _eval(z)
        with np.errstate(divide="ignore", invalid="ignore"):
            rel = np.where(scale > 0, np.abs(val) / scale, 0.0)
        converged = [complex(c) for c in z[alive & (rel <= 1e-11)]]
        logger.debug(f"oracle: {len(converged)} of {z.size} starts converged (radius {radius:.3g})")
        if not converged:
            logger.warning("oracle: no Newton start converged")

        count = 0
        for group in InoRootHelper._cluster(converged, tol.cluster):
            centre = complex(np.mean(group))
            Lx = L.evaluate([centre, 1.0], field=FLOAT)
            if InoMatrixHelper.rank(Lx, FLOAT, tol.tol_rank) == n - 1:
                count += 1
        L_inf = L.evaluate([1, 0], field=FLOAT)
        if InoMatrixHelper.rank(L_inf, FLOAT, tol.tol_rank) == n - 1:
            count += 1
        return count
