from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np

from .numeric_helper import FLOAT, GaussianRational, InoNumericHelper
from .poly_helper import InoPolyHelper, UniPoly
from .util_helper import ProdVecError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RootCluster:
    """A root (or a tight group of roots) of a univariate polynomial."""

    center: complex
    radius: float
    multiplicity: int
    residual: float
    exact: Optional[GaussianRational] = None

    @property
    def is_exact(self) -> bool:
        return self.exact is not None

    def to_json(self) -> dict:
        return {
            "center": InoNumericHelper.encode_scalar(self.center),
            "radius": self.radius,
            "multiplicity": self.multiplicity,
            "residual": self.residual,
            "exact": InoNumericHelper.encode_scalar(self.exact) if self.exact is not None else None,
        }


class InoRootHelper:
    @staticmethod
    def relative_residual(coeffs: Sequence[complex], z: complex) -> float:
        """|p(z)| / sum |c_i| |z|^i, the backward error of z as a root of p."""
        value = 0j
        scale = 0.0
        az = abs(z)
        for i in range(len(coeffs) - 1, -1, -1):
            value = value * z + coeffs[i]
            scale = scale * az + abs(coeffs[i])
        if scale == 0.0:
            return 0.0
        return abs(value) / scale

    @staticmethod
    def cauchy_bound(p: UniPoly) -> float:
        """1 + max |c_i| / |c_lead|; every root has modulus below it."""
        d = p.degree
        if d <= 0:
            return 1.0
        c = [abs(complex(v)) for v in p.coeffs[: d + 1]]
        return 1.0 + max(c[:d]) / c[d]

    @staticmethod
    def _float_coeffs(p: UniPoly) -> List[complex]:
        return [complex(c) for c in p.coeffs[: p.degree + 1]]

    @staticmethod
    def _newton_float(coeffs: Sequence[complex], z: complex, iters: int = 8) -> complex:
        dcoeffs = [i * coeffs[i] for i in range(1, len(coeffs))]
        best, best_res = z, InoRootHelper.relative_residual(coeffs, z)
        for _ in range(iters):
            d = np.polyval(dcoeffs[::-1], z) if dcoeffs else 0j
            if d == 0:
                break
            z = z - np.polyval(list(coeffs)[::-1], z) / d
            res = InoRootHelper.relative_residual(coeffs, z)
            if res < best_res:
                best, best_res = complex(z), res
            if best_res == 0.0:
                break
        return best

    @staticmethod
    def _newton_exact_eval(p: UniPoly, dp: UniPoly, z: complex, iters: int = 4) -> complex:
        """Newton steps whose p(z) / p'(z) is evaluated exactly at the binary value of z."""
        for _ in range(iters):
            zq = GaussianRational.from_complex_exact(z)
            d = dp.eval(zq)
            if not d:
                break
            step = complex(p.eval(zq) / d)
            z = z - step
            if abs(step) <= 1e-17 * max(1.0, abs(z)):
                break
        return complex(z)

    @staticmethod
    def _square_free_roots(a: UniPoly, multiplicity: int, snap_denominator: int) -> List[RootCluster]:
        coeffs = InoRootHelper._float_coeffs(a)
        raw = np.roots(coeffs[::-1]) if a.degree > 0 else []
        da = a.derivative()
        out = []
        for r in raw:
            z = InoRootHelper._newton_exact_eval(a, da, complex(r))
            snapped = InoNumericHelper.snap(z, snap_denominator)
            if not a.eval(snapped):
                out.append(RootCluster(complex(snapped), 0.0, multiplicity, 0.0, snapped))
                continue
            res = InoRootHelper.relative_residual(coeffs, z)
            dz = abs(np.polyval([complex(c) for c in da.coeffs[::-1]], z)) if da.degree >= 0 else 0.0
            scale = sum(abs(c) * abs(z) ** i for i, c in enumerate(coeffs))
            radius = res * scale / dz if dz else float(np.finfo(float).eps) ** 0.5 * max(1.0, abs(z))
            out.append(RootCluster(z, float(radius), multiplicity, res, None))
        return out

    @staticmethod
    def _cluster(points: Sequence[complex], tol: float) -> List[List[complex]]:
        groups: List[List[complex]] = []
        for z in sorted(points, key=lambda c: (c.real, c.imag)):
            for g in groups:
                centre = sum(g) / len(g)
                if abs(z - centre) <= tol * max(1.0, abs(centre)):
                    g.append(z)
                    break
            else:
                groups.append([z])
        return groups

    @staticmethod
    def roots(
        p: UniPoly,
        cluster_tol: float = 1e-6,
        snap_denominator: int = 1_000_000,
    ) -> List[RootCluster]:
        """
        All roots of p with multiplicity, sorted by (Re, Im).

        Exact input is split into square-free factors first, so every returned
        cluster is a single well-conditioned root; roots that are Gaussian
        rationals are recovered exactly. Float input is solved directly and
        nearby roots are grouped.
        """
        if p.is_identically_zero():
            raise ProdVecError("❌ cannot find roots of the zero polynomial")
        if p.degree <= 0:
            return []

        if p.field.exact:
            clusters: List[RootCluster] = []
            for a, mult in InoPolyHelper.square_free_decomposition(p):
                clusters.extend(InoRootHelper._square_free_roots(a, mult, snap_denominator))
        else:
            coeffs = InoRootHelper._float_coeffs(p)
            top = max(abs(c) for c in coeffs)
            # leading coefficients lost in rounding are a degree drop, not huge roots
            while len(coeffs) > 1 and abs(coeffs[-1]) <= FLOAT.zero_rel * top:
                coeffs.pop()
            raw = [complex(r) for r in np.roots(coeffs[::-1])] if len(coeffs) > 1 else []
            polished = [InoRootHelper._newton_float(coeffs, z) for z in raw]
            clusters = []
            for g in InoRootHelper._cluster(polished, cluster_tol):
                centre = complex(sum(g) / len(g))
                if len(g) == 1:
                    centre = g[0]
                radius = max(abs(z - centre) for z in g)
                res = InoRootHelper.relative_residual(coeffs, centre)
                clusters.append(RootCluster(centre, float(radius), len(g), res, None))

        clusters.sort(key=lambda c: (c.center.real, c.center.imag))
        logger.debug(f"roots: degree {p.degree} -> {len(clusters)} clusters, "
                     f"{sum(1 for c in clusters if c.is_exact)} exact")
        return clusters
